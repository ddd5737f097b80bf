use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

/// Rational from a machine integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`, reduced. Panics if `d == 0`.
pub fn rat2(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"-4/9"`, `"12"`, `"+3/6"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = num.strip_prefix('+').unwrap_or(num);
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Gcd of the numerators (non-negative).
pub fn numerator_gcd<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter().fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

pub fn to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale both down to keep the quotient representable
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Exact integer `k`-th root of a non-negative integer, if it exists.
pub fn exact_int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 1 {
            return exact_int_root(&-n, k).map(|r| -r);
        }
        return None;
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// Exact rational `k`-th root, if it exists.
pub fn exact_rational_root(q: &BigRational, k: u32) -> Option<BigRational> {
    let n = exact_int_root(q.numer(), k)?;
    let d = exact_int_root(q.denom(), k)?;
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let q = parse_rational("-4/9").unwrap();
        assert_eq!(q, rat2(-4, 9));
        assert_eq!(format_rational(&q), "-4/9");
        assert_eq!(format_rational(&parse_rational("6/3").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(exact_rational_root(&rat2(16, 81), 4), Some(rat2(2, 3)));
        assert_eq!(exact_rational_root(&rat(-8), 3), Some(rat(-2)));
        assert_eq!(exact_rational_root(&rat(-4), 2), None);
        assert_eq!(exact_rational_root(&rat(2), 2), None);
    }

    #[test]
    fn canonical_form_is_stable() {
        let q = BigRational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(q.denom(), &BigInt::from(2));
        let again = BigRational::new(q.numer().clone(), q.denom().clone());
        assert_eq!(again, q);
        assert_eq!(BigRational::zero().denom(), &BigInt::one());
    }
}
