use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::zassenhaus::factor_squarefree_primitive;
use super::{interpolate, UniPoly};
use crate::arith::{Field, NFElement};

/// `unit * prod(factor^multiplicity)`, factors monic.
#[derive(Clone, PartialEq, Eq)]
pub struct FactorList {
    pub unit: NFElement,
    pub factors: Vec<(UniPoly, usize)>,
}

impl FactorList {
    pub fn expand(&self) -> UniPoly {
        let k = self.unit.field().clone();
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        if acc.is_zero() {
            return UniPoly::zero(&k);
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count_with_multiplicity(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.count_with_multiplicity() == 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree(), *m))
            .collect();
        v.sort();
        v
    }

    fn sort(&mut self) {
        self.factors
            .sort_by(|(a, ma), (b, mb)| a.canonical_key().cmp(&b.canonical_key()).then(ma.cmp(mb)));
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(format!("({})", self.unit));
        }
        for (p, m) in &self.factors {
            if *m == 1 {
                parts.push(format!("({p})"));
            } else {
                parts.push(format!("({p})^{m}"));
            }
        }
        write!(f, "{}", parts.join(" * "))
    }
}

impl fmt::Debug for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Yun's squarefree decomposition: f = lc * prod a_i^i with monic,
/// squarefree, pairwise coprime a_i. Panics on the zero polynomial.
pub fn squarefree_decomposition(f: &UniPoly) -> FactorList {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    let unit = f.lc();
    let mut factors = Vec::new();
    if f.degree() > 0 {
        let f = f.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).unwrap();
        let c = df.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            let nb = b.exact_div(&a).unwrap();
            let nc = d.exact_div(&a).unwrap();
            d = &nc - &nb.derivative();
            b = nb;
            if a.degree() > 0 {
                factors.push((a, i));
            }
            i += 1;
        }
    }
    // Yun order: ascending multiplicity
    FactorList { unit, factors }
}

/// Irreducible factors of a monic squarefree polynomial over Q.
fn factor_squarefree_q(f: &UniPoly) -> Vec<UniPoly> {
    let q = f.field().clone();
    let mut out = Vec::new();
    let (_, mut z) = f.primitive_integer().expect("rational polynomial");
    if z[0].is_zero() {
        out.push(UniPoly::x(&q));
        z.remove(0);
    }
    if z.len() <= 1 {
        return out;
    }
    for g in factor_squarefree_primitive(&z) {
        let qs: Vec<BigRational> = g.into_iter().map(BigRational::from_integer).collect();
        out.push(UniPoly::from_rationals(&q, qs).monic());
    }
    out
}

/// Complete factorization over Q. Panics on the zero polynomial.
pub fn factor_q(f: &UniPoly) -> FactorList {
    assert!(f.field().is_rationals(), "factor_q needs a polynomial over Q");
    let sq = squarefree_decomposition(f);
    let mut factors = Vec::new();
    for (a, m) in sq.factors {
        for g in factor_squarefree_q(&a) {
            factors.push((g, m));
        }
    }
    let mut out = FactorList { unit: sq.unit, factors };
    out.sort();
    out
}

/// Norm N(x) = prod over conjugates of g, for g over a number field, by
/// interpolation of element norms.
fn norm_poly(g: &UniPoly) -> UniPoly {
    let k = g.field();
    let q = Field::rationals();
    let n = g.degree() * k.degree();
    let xs: Vec<NFElement> = (0..=n as i64).map(|i| q.from_int(i)).collect();
    let ys: Vec<NFElement> = xs
        .iter()
        .map(|x| {
            let v = g.eval(&k.from_rational(x.rational_part()));
            q.from_rational(v.norm())
        })
        .collect();
    interpolate(&q, &xs, &ys)
}

/// Factors a monic squarefree polynomial over a number field (Trager).
fn factor_squarefree_nf(f: &UniPoly) -> Vec<UniPoly> {
    let k = f.field().clone();
    if f.degree() <= 1 {
        return vec![f.clone()];
    }
    let alpha = k.generator();
    for step in 0.. {
        let s = match step {
            0 => 0i64,
            _ if step % 2 == 1 => (step as i64 + 1) / 2,
            _ => -(step as i64 / 2),
        };
        let shift = &alpha * &k.from_int(-s);
        let g = f.shift(&shift);
        let n = norm_poly(&g);
        if !n.is_squarefree() {
            continue;
        }
        let fl = factor_q(&n);
        if fl.factors.len() == 1 {
            return vec![f.clone()];
        }
        let back = &alpha * &k.from_int(s);
        let mut out = Vec::new();
        let mut rest = g.clone();
        for (ni, _) in &fl.factors {
            let nk = ni.to_field(&k).expect("rational polynomial");
            let h = rest.gcd(&nk);
            if h.degree() > 0 {
                rest = rest.exact_div(&h).unwrap();
                out.push(h.shift(&back));
            }
        }
        return out;
    }
    unreachable!()
}

/// Complete factorization over a number field by the norm method.
pub fn factor_nf(f: &UniPoly) -> FactorList {
    if f.field().is_rationals() {
        return factor_q(f);
    }
    let sq = squarefree_decomposition(f);
    let mut factors = Vec::new();
    for (a, m) in sq.factors {
        for g in factor_squarefree_nf(&a) {
            factors.push((g.monic(), m));
        }
    }
    let mut out = FactorList { unit: sq.unit, factors };
    out.sort();
    out
}

/// Factorization over the polynomial's own coefficient field.
pub fn factor(f: &UniPoly) -> FactorList {
    factor_nf(f)
}

/// Rational roots with multiplicity, ascending.
pub fn rational_roots(f: &UniPoly) -> Vec<BigRational> {
    let mut out = Vec::new();
    if f.is_zero() || f.degree() == 0 {
        return out;
    }
    let q = Field::rationals();
    let fq = match f.to_field(&q) {
        Ok(p) => p,
        Err(_) => return out,
    };
    for (g, m) in factor_q(&fq).factors {
        if g.degree() == 1 {
            let r = -g.coeff(0).rational_part();
            for _ in 0..m {
                out.push(r.clone());
            }
        }
    }
    out.sort();
    out
}

/// Distinct roots in the coefficient field, in canonical order.
pub fn roots(f: &UniPoly) -> Vec<NFElement> {
    if f.degree() == 0 {
        return Vec::new();
    }
    let mut out: Vec<NFElement> = factor_nf(f)
        .factors
        .into_iter()
        .filter(|(g, _)| g.degree() == 1)
        .map(|(g, _)| -g.coeff(0))
        .collect();
    out.sort();
    out
}

/// Integer content helper re-exported for tests.
#[allow(dead_code)]
pub(crate) fn int_poly(f: &UniPoly) -> Vec<BigInt> {
    f.primitive_integer().unwrap().1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, rat2};

    fn q(v: &[i64]) -> UniPoly {
        UniPoly::q(v)
    }

    #[test]
    fn squarefree_examples() {
        let f = &q(&[-1, 1]).pow(2) * &q(&[2, 1]);
        let sq = squarefree_decomposition(&f);
        assert_eq!(sq.factors, vec![(q(&[2, 1]), 1), (q(&[-1, 1]), 2)]);
        let sq = squarefree_decomposition(&q(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(sq.factors, vec![(q(&[0, 1]), 5)]);
        assert_eq!(sq.expand(), q(&[0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn factor_q_examples() {
        let fl = factor_q(&q(&[4, 0, 0, 0, 1]));
        assert_eq!(fl.factors.len(), 2);
        assert!(fl.factors.contains(&(q(&[2, -2, 1]), 1)));
        assert!(fl.factors.contains(&(q(&[2, 2, 1]), 1)));
        assert!(factor_q(&q(&[-2, 0, 1])).is_irreducible());
        let fl = factor_q(&q(&[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(fl.degrees(), vec![1, 1, 2, 2]);
        assert_eq!(fl.expand(), q(&[-1, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn factor_nf_examples() {
        let k = Field::from_rational_coeffs(vec![rat(2), rat(1), rat(1)], "a").unwrap();
        let f = UniPoly::from_ints(&k, &[2, 1, 1]);
        let fl = factor_nf(&f);
        assert_eq!(fl.degrees(), vec![1, 1]);
        let a = k.generator();
        let x = UniPoly::x(&k);
        let r1 = &x - &UniPoly::constant(a.clone());
        let r2 = &x + &UniPoly::constant(&a + &k.one());
        assert!(fl.factors.iter().any(|(g, _)| *g == r1));
        assert!(fl.factors.iter().any(|(g, _)| *g == r2));

        let s2 = Field::from_rational_coeffs(vec![rat(-2), rat(0), rat(1)], "s").unwrap();
        assert_eq!(factor_nf(&UniPoly::from_ints(&s2, &[-2, 0, 1])).degrees(), vec![1, 1]);
        assert!(factor_nf(&UniPoly::from_ints(&s2, &[1, 0, 1])).is_irreducible());
    }

    #[test]
    fn roots() {
        assert_eq!(rational_roots(&q(&[-4, 0, 1])), vec![rat(-2), rat(2)]);
        assert_eq!(rational_roots(&q(&[-1, 2])), vec![rat2(1, 2)]);
        assert!(rational_roots(&q(&[1, 0, 1])).is_empty());
    }
}
