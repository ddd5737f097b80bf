//! Named polynomials: Chebyshev and Dickson polynomials, the exceptional
//! degree 7 and 13 pairs, the genus-0 families and the quadratic factor of
//! T_n(X) + T_n(Y).

pub mod symbolic;

use std::fmt;
use std::str::FromStr;

use crate::arith::{nf_automorphism, rat, Field, FieldAutomorphism, NFElement};
use crate::bipoly::{factor_bi, separated, BiPoly};
use crate::error::{AlgebraError, Result};
use crate::poly::{branch_loci_equal, critical_value_poly, factor_q, roots, squarefree_part, UniPoly};

/// T_n over ℚ, normalized by T_n(X + 1/X) = X^n + X^{-n}.
pub fn chebyshev(n: usize) -> UniPoly {
    let q = Field::rationals();
    dickson(n, &q.one())
}

/// D_{n,α}, normalized by D_{n,α}(X + α/X) = X^n + (α/X)^n.
pub fn dickson(n: usize, alpha: &NFElement) -> UniPoly {
    let k = alpha.field();
    let x = UniPoly::x(k);
    let mut prev = UniPoly::constant(k.from_int(2));
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = &(&x * &cur) - &prev.scale(alpha);
        prev = cur;
        cur = next;
    }
    cur
}

/// Which named pair.
#[allow(non_camel_case_types)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    /// h1 = X(X+1)^3(X+a+3)^3, branch cycle orders 2, 3, 7.
    Deg7_237,
    /// h1 = X^4(X-2)^2(X-a), branch cycle orders 2, 4, 7.
    Deg7_247,
    /// The degree-13 pair over the quartic Gauss-period field.
    Deg13_2313,
    /// (D_{4,α}, -1/4 D_{4,2α}) for a given α.
    Dickson4(NFElement),
    /// The same pair with α an indeterminate.
    Dickson4Symbolic,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Deg7_237 => write!(f, "deg7-237"),
            FamilyTag::Deg7_247 => write!(f, "deg7-247"),
            FamilyTag::Deg13_2313 => write!(f, "deg13-2313"),
            FamilyTag::Dickson4(a) => write!(f, "dickson4:{a}"),
            FamilyTag::Dickson4Symbolic => write!(f, "dickson4"),
        }
    }
}

impl FromStr for FamilyTag {
    type Err = AlgebraError;

    /// Accepts `deg7-237`, `deg7-247`, `deg13-2313`, `dickson4` and
    /// `dickson4:<rational>`. The degrees 11, 15, 21 and 31 are known to
    /// exist but have no explicit data here.
    fn from_str(s: &str) -> Result<FamilyTag> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "deg7-237" | "deg7_237" => return Ok(FamilyTag::Deg7_237),
            "deg7-247" | "deg7_247" => return Ok(FamilyTag::Deg7_247),
            "deg13-2313" | "deg13_2313" | "deg13" => return Ok(FamilyTag::Deg13_2313),
            "dickson4" => return Ok(FamilyTag::Dickson4Symbolic),
            _ => {}
        }
        if let Some(a) = s.strip_prefix("dickson4:") {
            let q = Field::rationals();
            let a = crate::parse::parse_element(a, &q)?;
            return Ok(FamilyTag::Dickson4(a));
        }
        if let Some(d) = s.strip_prefix("deg") {
            let d: usize = d
                .split(['-', '_'])
                .next()
                .unwrap_or("")
                .parse()
                .map_err(|_| AlgebraError::Parse(format!("unknown family tag '{s}'")))?;
            return Err(match d {
                11 | 15 | 21 | 31 => AlgebraError::DataUnavailable(d),
                _ => AlgebraError::BadParameters(format!("no exceptional pair of degree {d}")),
            });
        }
        Err(AlgebraError::Parse(format!("unknown family tag '{s}'")))
    }
}

/// A pair (h1, h2) with equal branch loci and h1(X) - h2(Y) reducible.
#[derive(Clone, Debug)]
pub struct NamedPair {
    pub h1: UniPoly,
    pub h2: UniPoly,
    pub field: Field,
    /// Finite nonzero branch point of h1 (zero for the Dickson pairs).
    pub gamma: NFElement,
    pub tag: FamilyTag,
}

/// ℚ(a) with a^2 + a + 2 = 0.
pub fn deg7_field() -> Field {
    Field::from_rational_coeffs(vec![rat(2), rat(1), rat(1)], "a").expect("irreducible")
}

/// Minimal polynomial of a = ζ + ζ^3 + ζ^9, ζ a primitive 13th root of unity.
pub const DEG13_MINPOLY: [i64; 5] = [3, -4, 2, 1, 1];

/// ℚ(a) with a = ζ_13 + ζ_13^3 + ζ_13^9.
pub fn deg13_field() -> Field {
    Field::from_rational_coeffs(DEG13_MINPOLY.iter().map(|&c| rat(c)).collect(), "a").expect("irreducible")
}

/// Normalization of the linear factor in the degree-13 h1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deg13Normalization {
    /// h1 = X^3(X - 27)(X^3 + c2 X^2 + c1 X + c0/3)^3.
    Minus27,
    /// h1 = X^3(X - 9)(X^3 + c2/3 X^2 + c1/9 X + c0/81)^3.
    Minus9,
}

/// The degree-13 h1 in either normalization.
pub fn deg13_h1(norm: Deg13Normalization) -> UniPoly {
    let k = deg13_field();
    let a = k.generator();
    let cubic = |c: [i64; 4]| -> NFElement {
        let mut acc = k.zero();
        for e in c.iter().rev() {
            acc = &(&acc * &a) + &k.from_int(*e);
        }
        acc
    };
    // coefficients listed from a^0 to a^3
    let c2 = cubic([51, -29, -12, -16]);
    let c1 = cubic([-618, -25, -96, 16]);
    let c0 = cubic([-53112, 58408, 29148, 21872]);
    let (root, s2, s1, s0) = match norm {
        Deg13Normalization::Minus27 => (27, 1, 1, 3),
        Deg13Normalization::Minus9 => (9, 3, 9, 81),
    };
    let inv = |n: i64| k.from_int(n).inv().expect("nonzero");
    let cub = UniPoly::new(&k, vec![&c0 * &inv(s0), &c1 * &inv(s1), &c2 * &inv(s2), k.one()]);
    let x3 = UniPoly::monomial(k.one(), 3);
    let lin = UniPoly::from_ints(&k, &[-root, 1]);
    &(&x3 * &lin) * &cub.pow(3)
}

/// The unique involution of a field with cyclic Galois group of even
/// order, which for the fields used here is complex conjugation.
pub fn conjugation(k: &Field) -> Result<FieldAutomorphism> {
    let g = k.generator();
    for r in roots(&k.minpoly().to_field(k)?) {
        if r == g {
            continue;
        }
        let s = nf_automorphism(k, &r)?;
        if s.compose(&s).is_identity() {
            return Ok(s);
        }
    }
    Err(AlgebraError::PreconditionViolated(format!("no involution of {k}")))
}

/// Unique finite nonzero branch point.
pub fn nonzero_branch_point(h: &UniPoly) -> Result<NFElement> {
    let sq = squarefree_part(&critical_value_poly(h));
    let x = UniPoly::x(h.field());
    let rest = sq.exact_div(&x).unwrap_or(sq);
    if rest.degree() != 1 {
        return Err(AlgebraError::PreconditionViolated(format!(
            "expected one nonzero branch point, found {}",
            rest.degree()
        )));
    }
    Ok(-rest.monic().coeff(0))
}

/// h2 = γ/γ̄ · h̄1.
fn conjugate_partner(h1: &UniPoly) -> Result<(UniPoly, NFElement)> {
    let k = h1.field();
    let sigma = conjugation(k)?;
    let gamma = nonzero_branch_point(h1)?;
    let ratio = &gamma / &sigma.apply(&gamma);
    Ok((sigma.apply_poly(h1).scale(&ratio), gamma))
}

fn pair_from_h1(h1: UniPoly, tag: FamilyTag) -> Result<NamedPair> {
    let (h2, gamma) = conjugate_partner(&h1)?;
    Ok(NamedPair {
        field: h1.field().clone(),
        h1,
        h2,
        gamma,
        tag,
    })
}

/// The named exceptional or Dickson pair.
pub fn exceptional_pair(tag: &FamilyTag) -> Result<NamedPair> {
    match tag {
        FamilyTag::Deg7_237 => pair_from_h1(genus0_p(Genus0::P3)?, tag.clone()),
        FamilyTag::Deg7_247 => {
            let k = deg7_field();
            let a = k.generator();
            let h1 = &(&UniPoly::monomial(k.one(), 4) * &UniPoly::from_ints(&k, &[-2, 1]).pow(2))
                * &(&UniPoly::x(&k) - &UniPoly::constant(a));
            pair_from_h1(h1, tag.clone())
        }
        FamilyTag::Deg13_2313 => deg13_pair(Deg13Normalization::Minus27),
        FamilyTag::Dickson4(a) => Ok(dickson_pair(a)),
        FamilyTag::Dickson4Symbolic => Err(AlgebraError::BadParameters(
            "the symbolic Dickson pair has no numeric coefficients".into(),
        )),
    }
}

/// The degree-13 pair built from h1 in the given normalization.
pub fn deg13_pair(norm: Deg13Normalization) -> Result<NamedPair> {
    pair_from_h1(deg13_h1(norm), FamilyTag::Deg13_2313)
}

/// Explicit data for a degree: the degree-7 and degree-13 pairs, and
/// DataUnavailable for the degrees whose polynomials are not on file.
pub fn exceptional_pairs_of_degree(n: usize) -> Result<Vec<NamedPair>> {
    match n {
        7 => Ok(vec![
            exceptional_pair(&FamilyTag::Deg7_237)?,
            exceptional_pair(&FamilyTag::Deg7_247)?,
        ]),
        13 => Ok(vec![exceptional_pair(&FamilyTag::Deg13_2313)?]),
        11 | 15 | 21 | 31 => Err(AlgebraError::DataUnavailable(n)),
        _ => Ok(Vec::new()),
    }
}

/// (D_{4,α}, -1/4 D_{4,2α}).
pub fn dickson_pair(alpha: &NFElement) -> NamedPair {
    let k = alpha.field().clone();
    let h1 = dickson(4, alpha);
    let two_a = alpha + alpha;
    let quarter = k.from_int(-4).inv().expect("nonzero");
    let h2 = dickson(4, &two_a).scale(&quarter);
    NamedPair {
        h1,
        h2,
        gamma: k.zero(),
        field: k,
        tag: FamilyTag::Dickson4(alpha.clone()),
    }
}

/// The genus-0 polynomials P1(a, b), P2, P3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genus0 {
    P1(u32, u32),
    P2,
    P3,
}

pub fn genus0_p(which: Genus0) -> Result<UniPoly> {
    match which {
        Genus0::P1(a, b) => {
            if num_integer::gcd(a, b) != 1 || a + b < 4 || a == 0 || b == 0 {
                return Err(AlgebraError::BadParameters(format!(
                    "P1 needs gcd(a, b) = 1 and a + b >= 4, got ({a}, {b})"
                )));
            }
            let q = Field::rationals();
            Ok(&UniPoly::monomial(q.one(), a as usize) * &UniPoly::q(&[-1, 1]).pow(b))
        }
        Genus0::P2 => Ok(UniPoly::q(&[0, 0, 0, 40, 5, 1])),
        Genus0::P3 => {
            let k = deg7_field();
            let a = k.generator();
            let x = UniPoly::x(&k);
            let l1 = UniPoly::from_ints(&k, &[1, 1]);
            let l2 = &x + &UniPoly::constant(&a + &k.from_int(3));
            Ok(&(&x * &l1.pow(3)) * &l2.pow(3))
        }
    }
}

/// K = ℚ(c), c = 2cos(π/d), and H = X^2 - cXY + Y^2 - (4 - c^2).
pub struct ChebyshevH {
    pub h: BiPoly,
    pub field: Field,
    pub c: NFElement,
}

pub fn chebyshev_h(d: usize) -> Result<ChebyshevH> {
    if d < 3 {
        return Err(AlgebraError::BadParameters(format!(
            "chebyshev_H needs d >= 3, got {d}"
        )));
    }
    let target = 2.0 * (std::f64::consts::PI / d as f64).cos();
    let td = &chebyshev(d) + &UniPoly::q(&[2]);
    let fl = factor_q(&td);
    let (best, _) = fl
        .factors
        .iter()
        .map(|(g, _)| {
            let v = g.coeffs().iter().rev().fold(0.0, |acc, c| {
                acc * target + crate::arith::rational::to_f64(&c.rational_part())
            });
            (g.clone(), v.abs())
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("T_d + 2 is not constant");
    let (field, c) = if best.degree() == 1 {
        let q = Field::rationals();
        let c = -best.coeff(0);
        (q, c)
    } else {
        let k = Field::new(&best, "c")?;
        let c = k.generator();
        (k, c)
    };
    let k = &field;
    let row = |v: Vec<NFElement>| UniPoly::new(k, v);
    let c2 = &c * &c;
    let h = BiPoly::new(
        k,
        vec![
            row(vec![&c2 - &k.from_int(4), k.zero(), k.one()]),
            row(vec![k.zero(), -&c]),
            row(vec![k.one()]),
        ],
    );
    Ok(ChebyshevH { h, field, c })
}

/// One named check in a family report.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub tag: String,
    pub field: String,
    pub factor_degrees: Vec<usize>,
    pub checks: Vec<Check>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

/// Factor X-degrees expected for h1(X) - h2(Y).
fn expected_degrees(tag: &FamilyTag) -> Vec<usize> {
    match tag {
        FamilyTag::Deg7_237 | FamilyTag::Deg7_247 => vec![3, 4],
        FamilyTag::Deg13_2313 => vec![4, 9],
        _ => vec![2, 2],
    }
}

/// Runs the bivariate oracle on the pair and checks its documented shape.
pub fn verify_family(tag: &FamilyTag) -> Result<FamilyReport> {
    if *tag == FamilyTag::Dickson4Symbolic {
        let (l, r) = symbolic::dickson4_identity();
        let mut rep = FamilyReport {
            tag: tag.to_string(),
            field: "Q(alpha)".into(),
            factor_degrees: vec![2, 2],
            checks: Vec::new(),
        };
        rep.check("dickson4 identity", l == r, format!("{l} = {r}"));
        return Ok(rep);
    }
    let pair = exceptional_pair(tag)?;
    pair_report(&pair)
}

/// Report for an arbitrary named pair.
pub fn pair_report(pair: &NamedPair) -> Result<FamilyReport> {
    let mut rep = FamilyReport {
        tag: pair.tag.to_string(),
        field: pair.field.to_string(),
        factor_degrees: Vec::new(),
        checks: Vec::new(),
    };
    rep.check(
        "equal degrees",
        pair.h1.degree() == pair.h2.degree(),
        format!("{} and {}", pair.h1.degree(), pair.h2.degree()),
    );
    rep.check(
        "branch loci equal",
        branch_loci_equal(&pair.h1, &pair.h2),
        String::new(),
    );
    let f = separated(&pair.h1, &pair.h2)?;
    let fl = factor_bi(&f)?;
    let mut degs = fl.degrees_x();
    degs.sort();
    rep.factor_degrees = degs.clone();
    rep.check("factorization expands back", fl.expand() == f, String::new());
    let expected = expected_degrees(&pair.tag);
    rep.check(
        "factor degrees",
        degs == expected,
        format!("found {degs:?}, expected {expected:?}"),
    );
    if let FamilyTag::Dickson4(a) = &pair.tag {
        let k = &pair.field;
        let half = k.from_int(2).inv().expect("nonzero");
        let two_a = a + a;
        let quad = |s: i64| {
            BiPoly::new(
                k,
                vec![
                    UniPoly::new(k, vec![-&two_a, k.zero(), half.clone()]),
                    UniPoly::new(k, vec![k.zero(), k.from_int(s)]),
                    UniPoly::constant(k.one()),
                ],
            )
        };
        let ok = crate::bipoly::divides_bi(&quad(-1), &f) && crate::bipoly::divides_bi(&quad(1), &f);
        rep.check("explicit quadratic factors", ok, String::new());
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_small() {
        assert_eq!(chebyshev(2), UniPoly::q(&[-2, 0, 1]));
        assert_eq!(chebyshev(4), UniPoly::q(&[2, 0, -4, 0, 1]));
        assert_eq!(chebyshev(1), UniPoly::q(&[0, 1]));
    }

    #[test]
    fn dickson_small() {
        let q = Field::rationals();
        assert_eq!(dickson(5, &q.zero()), UniPoly::q(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(dickson(3, &q.one()), chebyshev(3));
    }

    #[test]
    fn dickson_pairs() {
        let q = Field::rationals();
        let p = dickson_pair(&q.one());
        assert_eq!(p.h1, UniPoly::q(&[2, 0, -4, 0, 1]));
        assert_eq!(
            p.h2,
            UniPoly::q(&[-8, 0, 8, 0, -1]).scale(&q.from_int(4).inv().unwrap())
        );
        let p0 = dickson_pair(&q.zero());
        assert_eq!(p0.h2, UniPoly::monomial(q.from_int(-4).inv().unwrap(), 4));
    }

    #[test]
    fn genus0() {
        assert_eq!(genus0_p(Genus0::P2).unwrap(), UniPoly::q(&[0, 0, 0, 40, 5, 1]));
        assert_eq!(genus0_p(Genus0::P1(1, 3)).unwrap(), UniPoly::q(&[0, -1, 3, -3, 1]));
        assert!(matches!(
            genus0_p(Genus0::P1(2, 2)),
            Err(AlgebraError::BadParameters(_))
        ));
    }

    #[test]
    fn chebyshev_h_fields() {
        let h3 = chebyshev_h(3).unwrap();
        assert!(h3.field.is_rationals());
        assert_eq!(h3.c.rational_part(), rat(1));
        let h4 = chebyshev_h(4).unwrap();
        assert_eq!(h4.field.minpoly(), UniPoly::q(&[-2, 0, 1]));
        assert_eq!(h4.h.coeff(0, 0), h4.field.from_int(-2));
        let h6 = chebyshev_h(6).unwrap();
        assert_eq!(h6.field.minpoly(), UniPoly::q(&[-3, 0, 1]));
    }

    #[test]
    fn tags() {
        assert_eq!("deg7-237".parse::<FamilyTag>().unwrap(), FamilyTag::Deg7_237);
        assert!(matches!(
            "deg11".parse::<FamilyTag>(),
            Err(AlgebraError::DataUnavailable(11))
        ));
        assert!(matches!(
            exceptional_pairs_of_degree(31),
            Err(AlgebraError::DataUnavailable(31))
        ));
    }

    #[test]
    fn deg7_pair_shape() {
        let p = exceptional_pair(&FamilyTag::Deg7_237).unwrap();
        assert_eq!(p.h1.degree(), 7);
        assert!(branch_loci_equal(&p.h1, &p.h2));
        assert!(!p.gamma.is_zero());
    }
}
