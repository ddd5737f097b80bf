//! Sparse polynomials in ℚ[α, X, Y], enough to state the Dickson degree-4
//! factorization with α an indeterminate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::rat;

/// Exponent vector (α, X, Y).
pub type Monomial = [u32; 3];

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn constant(c: BigRational) -> MPoly {
        let mut p = MPoly::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(rat(n))
    }

    pub fn alpha() -> MPoly {
        MPoly::var(0)
    }

    pub fn x() -> MPoly {
        MPoly::var(1)
    }

    pub fn y() -> MPoly {
        MPoly::var(2)
    }

    fn var(i: usize) -> MPoly {
        let mut e = [0; 3];
        e[i] = 1;
        let mut p = MPoly::zero();
        p.add_term(e, BigRational::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        let mut out = MPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    /// Renames X to Y (the polynomial must not involve Y).
    pub fn x_to_y(&self) -> MPoly {
        let mut out = MPoly::zero();
        for (m, v) in &self.terms {
            assert_eq!(m[2], 0, "polynomial already involves Y");
            out.add_term([m[0], 0, m[1]], v.clone());
        }
        out
    }

    /// Substitutes α ↦ c·α.
    pub fn scale_alpha(&self, c: &BigRational) -> MPoly {
        let mut out = MPoly::zero();
        for (m, v) in &self.terms {
            let mut f = v.clone();
            for _ in 0..m[0] {
                f *= c;
            }
            out.add_term(*m, f);
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, v) in &o.terms {
            out.add_term(*m, v.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self + &(-o)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (a, u) in &self.terms {
            for (b, v) in &o.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], u * v);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["alpha", "X", "Y"];
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut mono: Vec<String> = Vec::new();
            for (i, e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => mono.push(names[i].to_string()),
                    _ => mono.push(format!("{}^{}", names[i], e)),
                }
            }
            let neg = c < &BigRational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            let body = match (mono.is_empty(), a.is_one()) {
                (true, _) => a.to_string(),
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", a, mono.join("*")),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// D_{n,α}(X) with α symbolic, by the three-term recurrence.
pub fn dickson_symbolic(n: usize) -> MPoly {
    let x = MPoly::x();
    let a = MPoly::alpha();
    let mut prev = MPoly::int(2);
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = &(&x * &cur) - &(&a * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Left and right sides of D_{4,α}(X) + ¼ D_{4,2α}(Y) = (X² − XY + ½Y² − 2α)(X² + XY + ½Y² − 2α).
pub fn dickson4_identity() -> (MPoly, MPoly) {
    let d4 = dickson_symbolic(4);
    let quarter = BigRational::new(1.into(), 4.into());
    let lhs = &d4 + &d4.scale_alpha(&rat(2)).x_to_y().scale(&quarter);
    let (x, y, a) = (MPoly::x(), MPoly::y(), MPoly::alpha());
    let half = BigRational::new(1.into(), 2.into());
    let common = &(&(&x * &x) + &(&y * &y).scale(&half)) - &a.scale(&rat(2));
    let xy = &x * &y;
    let rhs = &(&common - &xy) * &(&common + &xy);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dickson_four_symbolic() {
        let d = dickson_symbolic(4);
        assert_eq!(d.coeff([0, 4, 0]), rat(1));
        assert_eq!(d.coeff([1, 2, 0]), rat(-4));
        assert_eq!(d.coeff([2, 0, 0]), rat(2));
        assert_eq!(d.term_count(), 3);
    }

    #[test]
    fn identity_holds() {
        let (l, r) = dickson4_identity();
        assert_eq!(l, r);
        assert_eq!(l.coeff([0, 0, 4]), BigRational::new(1.into(), 4.into()));
        assert_eq!(l.coeff([1, 0, 2]), rat(-2));
        assert_eq!(l.coeff([2, 0, 0]), rat(4));
    }
}
