//! Dense univariate polynomials over Q or a number field.

mod branch;
mod factor;
pub(crate) mod modp;
pub(crate) mod reduce;
pub(crate) mod zassenhaus;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::rational::rat;
use crate::arith::{Field, NFElement};
use crate::error::{AlgebraError, Result};

pub use branch::{branch_loci_equal, critical_value_poly, simply_branched, CriticalValues};
pub(crate) use branch::{squarefree_part, unify as unify_fields};
pub use factor::{factor, factor_nf, factor_q, rational_roots, roots, squarefree_decomposition, FactorList};

/// Polynomial with coefficients low to high; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<NFElement>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<NFElement>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field.one())
    }

    pub fn constant(c: NFElement) -> UniPoly {
        let f = c.field().clone();
        UniPoly::new(&f, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `c * x^n`.
    pub fn monomial(c: NFElement, n: usize) -> UniPoly {
        let f = c.field().clone();
        let mut v = vec![f.zero(); n];
        v.push(c);
        UniPoly::new(&f, v)
    }

    /// `a*x + b`.
    pub fn linear(a: NFElement, b: NFElement) -> UniPoly {
        let f = a.field().clone();
        UniPoly::new(&f, vec![b, a])
    }

    pub fn from_rationals(field: &Field, coeffs: Vec<BigRational>) -> UniPoly {
        let v = coeffs.into_iter().map(|c| field.from_rational(c)).collect();
        UniPoly::new(field, v)
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::from_rationals(field, coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Integer polynomial over Q.
    pub fn q(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints(&Field::rationals(), coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[NFElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<NFElement> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> NFElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> NFElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn scale(&self, c: &NFElement) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// All coefficients rational (so the polynomial is defined over Q).
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn rational_coeffs(&self) -> Option<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.as_rational()).collect()
    }

    /// Re-expresses a polynomial with rational coefficients over `k`.
    pub fn to_field(&self, k: &Field) -> Result<UniPoly> {
        if self.field == *k {
            return Ok(self.clone());
        }
        let qs = self
            .rational_coeffs()
            .ok_or_else(|| AlgebraError::FieldMismatch(self.field.label().into(), k.label().into()))?;
        Ok(UniPoly::from_rationals(k, qs))
    }

    pub fn try_add(&self, o: &UniPoly) -> Result<UniPoly> {
        self.field.ensure_same(&o.field)?;
        Ok(self + o)
    }

    pub fn try_sub(&self, o: &UniPoly) -> Result<UniPoly> {
        self.field.ensure_same(&o.field)?;
        Ok(self - o)
    }

    pub fn try_mul(&self, o: &UniPoly) -> Result<UniPoly> {
        self.field.ensure_same(&o.field)?;
        Ok(self * o)
    }

    /// Euclidean division.
    pub fn divrem(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.field.ensure_same(&b.field)?;
        if b.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let db = b.degree();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((UniPoly::zero(&self.field), self.clone()));
        }
        let inv = b.lc().inv()?;
        let mut q = vec![self.field.zero(); r.len() - db];
        for k in (db..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = &r[k] * &inv;
            for j in 0..db {
                if !b.coeffs[j].is_zero() {
                    let t = &c * &b.coeffs[j];
                    r[k - db + j] -= &t;
                }
            }
            r[k] = self.field.zero();
            q[k - db] = c;
        }
        r.truncate(db);
        Ok((UniPoly::new(&self.field, q), UniPoly::new(&self.field, r)))
    }

    pub fn rem(&self, b: &UniPoly) -> UniPoly {
        self.divrem(b).expect("nonzero divisor").1
    }

    /// Exact quotient when `b` divides `self`.
    pub fn exact_div(&self, b: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(b).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, f: &UniPoly) -> bool {
        !self.is_zero() && f.rem(self).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        if reduce::certainly_coprime(self, o) {
            return UniPoly::one(&self.field);
        }
        if self.degree().min(o.degree()) >= 4 {
            if let Some(g) = reduce::modular_gcd(self, o) {
                return g;
            }
        }
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn xgcd(&self, o: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let k = &self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UniPoly::one(k), UniPoly::zero(k));
        let (mut t0, mut t1) = (UniPoly::zero(k), UniPoly::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> UniPoly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_int(i as i64))
            .collect();
        UniPoly::new(&self.field, v)
    }

    pub fn eval(&self, x: &NFElement) -> NFElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> NFElement {
        self.eval(&self.field.from_rational(x.clone()))
    }

    /// `self(h(x))` by Horner's rule.
    pub fn compose(&self, h: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * h) + &UniPoly::constant(c.clone());
        }
        acc
    }

    pub fn try_compose(&self, h: &UniPoly) -> Result<UniPoly> {
        self.field.ensure_same(&h.field)?;
        Ok(self.compose(h))
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &NFElement) -> UniPoly {
        // Taylor shift by repeated synthetic division
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += &t;
            }
        }
        UniPoly::new(&self.field, a)
    }

    /// `self(c * x)`.
    pub fn scale_var(&self, c: &NFElement) -> UniPoly {
        let mut p = self.field.one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &p);
            p = &p * c;
        }
        UniPoly::new(&self.field, v)
    }

    /// Resultant Res(self, o) over the coefficient field.
    pub fn resultant(&self, o: &UniPoly) -> NFElement {
        let k = &self.field;
        if self.is_zero() || o.is_zero() {
            return k.zero();
        }
        let mut a = self.clone();
        let mut b = o.clone();
        let mut acc = k.one();
        loop {
            let (da, db) = (a.degree(), b.degree());
            if db == 0 {
                return &acc * &b.lc().pow(da as u64);
            }
            if da < db {
                if (da * db) % 2 == 1 {
                    acc = -acc;
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return k.zero();
            }
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc = &acc * &b.lc().pow((da - r.degree()) as u64);
            a = b;
            b = r;
        }
    }

    /// Discriminant with the convention Res(f, f') = (-1)^{n(n-1)/2} lc * disc.
    pub fn discriminant(&self) -> NFElement {
        let n = self.degree();
        let r = self.resultant(&self.derivative());
        let mut d = &r / &self.lc();
        if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
            d = -d;
        }
        d
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Drops the trailing coefficients: `self mod x^n`.
    pub fn truncate(&self, n: usize) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().take(n).cloned().collect())
    }

    /// For a polynomial over Q: the content-free integer polynomial with
    /// positive leading coefficient, and the scalar `c` with self = c * result.
    pub fn primitive_integer(&self) -> Option<(BigRational, Vec<num_bigint::BigInt>)> {
        let qs = self.rational_coeffs()?;
        if qs.is_empty() {
            return Some((BigRational::zero(), Vec::new()));
        }
        let l = crate::arith::rational::denominator_lcm(&qs);
        let scaled: Vec<num_bigint::BigInt> = qs
            .iter()
            .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = scaled
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
        if scaled.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = scaled.iter().map(|x| x / &g).collect();
        Some((BigRational::new(g, l), prim))
    }

    pub fn display_with(&self, var: &str) -> String {
        format_poly(&self.coeffs, var)
    }

    /// Coefficient vector compared highest-degree first; used for stable sorting.
    pub fn canonical_key(&self) -> impl Ord + '_ {
        (self.coeffs.len(), self.coeffs.iter().rev().collect::<Vec<_>>())
    }
}

pub(crate) fn format_coeff_product(c: &NFElement, mono: &str) -> (bool, String) {
    if mono.is_empty() {
        let s = c.display();
        return match s.strip_prefix('-') {
            Some(rest) if c.term_count() == 1 => (true, rest.to_string()),
            _ if c.term_count() > 1 => (false, format!("({s})")),
            _ => (false, s),
        };
    }
    if c.term_count() == 1 {
        let s = c.display();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if body == "1" {
            (neg, mono.to_string())
        } else {
            (neg, format!("{body}*{mono}"))
        }
    } else {
        (false, format!("({})*{}", c.display(), mono))
    }
}

pub(crate) fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (neg, body)) in terms.into_iter().enumerate() {
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    s
}

fn format_poly(coeffs: &[NFElement], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(format_coeff_product(c, &mono));
    }
    join_terms(terms)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut v = long.coeffs.clone();
        for (x, y) in v.iter_mut().zip(&short.coeffs) {
            *x += y;
        }
        UniPoly::new(&self.field, v)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = self.coeffs.clone();
        v.resize(n, self.field.zero());
        for (x, y) in v.iter_mut().zip(&o.coeffs) {
            *x -= y;
        }
        UniPoly::new(&self.field, v)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut v = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    let t = x * y;
                    v[i + j] += &t;
                }
            }
        }
        UniPoly::new(&self.field, v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: &UniPoly) -> UniPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// Newton interpolation over a field: the unique polynomial of degree
/// < n through the n points (distinct xs).
pub fn interpolate(field: &Field, xs: &[NFElement], ys: &[NFElement]) -> UniPoly {
    let n = xs.len();
    let mut dd: Vec<NFElement> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - j];
            dd[i] = &num / &den;
        }
    }
    let mut acc = UniPoly::zero(field);
    for i in (0..n).rev() {
        let lin = UniPoly::linear(field.one(), -&xs[i]);
        acc = &(&acc * &lin) + &UniPoly::constant(dd[i].clone());
    }
    acc
}

/// Product of polynomials.
pub fn product<'a>(field: &Field, ps: impl IntoIterator<Item = &'a UniPoly>) -> UniPoly {
    ps.into_iter().fold(UniPoly::one(field), |acc, p| &acc * p)
}
