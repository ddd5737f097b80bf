use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::qslice;
use super::rational::{format_rational, rat};
use crate::error::{AlgebraError, Result};
use crate::poly::UniPoly;

/// A simple number field Q(α) = Q[x]/(m(x)), m monic irreducible.
#[derive(Debug)]
pub struct NumberField {
    minpoly: Vec<BigRational>,
    label: String,
    generator: String,
}

impl NumberField {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// Shared handle to a number field. Two handles with the same minimal
/// polynomial compare equal.
#[derive(Clone)]
pub struct Field(Arc<NumberField>);

static RATIONALS: OnceLock<Field> = OnceLock::new();

impl Field {
    /// The rational numbers, as the degree-1 field Q[x]/(x).
    pub fn rationals() -> Field {
        RATIONALS
            .get_or_init(|| {
                Field(Arc::new(NumberField {
                    minpoly: vec![BigRational::zero(), BigRational::one()],
                    label: "Q".into(),
                    generator: "a".into(),
                }))
            })
            .clone()
    }

    /// Builds Q(α) from a monic minimal polynomial over Q. The generator is
    /// printed as `generator`. Degree-1 input yields `Field::rationals()`.
    pub fn new(minpoly: &UniPoly, generator: &str) -> Result<Field> {
        if !minpoly.field().is_rationals() {
            return Err(AlgebraError::BadMinpoly);
        }
        let coeffs: Vec<BigRational> = minpoly.coeffs().iter().map(|c| c.rational_part()).collect();
        Self::from_rational_coeffs(coeffs, generator)
    }

    pub fn from_rational_coeffs(mut coeffs: Vec<BigRational>, generator: &str) -> Result<Field> {
        qslice::trim(&mut coeffs);
        if coeffs.len() < 2 || !coeffs.last().unwrap().is_one() {
            return Err(AlgebraError::BadMinpoly);
        }
        if coeffs.len() == 2 {
            return Ok(Field::rationals());
        }
        let q = Field::rationals();
        let p = UniPoly::from_rationals(&q, coeffs.clone());
        let fl = crate::poly::factor_q(&p);
        if fl.factors.len() != 1 || fl.factors[0].1 != 1 {
            return Err(AlgebraError::Reducible(fl.to_string()));
        }
        let label = format!("Q({generator})");
        Ok(Field(Arc::new(NumberField {
            minpoly: coeffs,
            label,
            generator: generator.to_string(),
        })))
    }

    /// Parses a minimal polynomial written in `generator`, e.g. `"a^2+a+2"`.
    pub fn parse(minpoly: &str, generator: &str) -> Result<Field> {
        let q = Field::rationals();
        let p = crate::parse::parse_poly(minpoly, &q, generator)?;
        Field::new(&p, generator)
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn generator_name(&self) -> &str {
        &self.0.generator
    }

    /// Minimal polynomial coefficients, low to high, monic.
    pub fn minpoly_coeffs(&self) -> &[BigRational] {
        &self.0.minpoly
    }

    pub fn minpoly(&self) -> UniPoly {
        UniPoly::from_rationals(&Field::rationals(), self.0.minpoly.clone())
    }

    pub fn zero(&self) -> NFElement {
        NFElement {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> NFElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> NFElement {
        self.from_rational(rat(n))
    }

    pub fn from_rational(&self, q: BigRational) -> NFElement {
        let mut e = self.zero();
        e.coeffs[0] = q;
        e
    }

    /// The generator α (for Q, the number 0 is never useful so this returns 0).
    pub fn generator(&self) -> NFElement {
        let mut e = self.zero();
        if self.degree() > 1 {
            e.coeffs[1] = BigRational::one();
        }
        e
    }

    /// Element from coefficients in the power basis; reduces if longer than the degree.
    pub fn element(&self, coeffs: Vec<BigRational>) -> NFElement {
        NFElement::reduced(self, coeffs)
    }

    pub fn ensure_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch(
                self.label().to_string(),
                other.label().to_string(),
            ))
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.minpoly == other.0.minpoly
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.minpoly.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rationals() {
            return write!(f, "Q");
        }
        let m = self.minpoly();
        write!(
            f,
            "Q({}), {} = 0",
            self.generator_name(),
            m.display_with(self.generator_name())
        )
    }
}

/// Element of a number field in the power basis 1, α, …, α^{d-1}.
#[derive(Clone)]
pub struct NFElement {
    field: Field,
    coeffs: Vec<BigRational>,
}

impl NFElement {
    fn reduced(field: &Field, mut coeffs: Vec<BigRational>) -> NFElement {
        let d = field.degree();
        let m = field.minpoly_coeffs();
        if coeffs.len() > d {
            for k in (d..coeffs.len()).rev() {
                if coeffs[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut coeffs[k]);
                for j in 0..d {
                    if !m[j].is_zero() {
                        coeffs[k - d + j] -= &c * &m[j];
                    }
                }
            }
        }
        coeffs.resize(d, BigRational::zero());
        NFElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Constant coefficient in the power basis (the value itself when rational).
    pub fn rational_part(&self) -> BigRational {
        self.coeffs[0].clone()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn try_add(&self, o: &NFElement) -> Result<NFElement> {
        self.field.ensure_same(&o.field)?;
        Ok(self + o)
    }

    pub fn try_sub(&self, o: &NFElement) -> Result<NFElement> {
        self.field.ensure_same(&o.field)?;
        Ok(self - o)
    }

    pub fn try_mul(&self, o: &NFElement) -> Result<NFElement> {
        self.field.ensure_same(&o.field)?;
        Ok(self * o)
    }

    pub fn try_div(&self, o: &NFElement) -> Result<NFElement> {
        self.field.ensure_same(&o.field)?;
        Ok(self * &o.inv()?)
    }

    pub fn inv(&self) -> Result<NFElement> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.field.is_rationals() {
            return Ok(self.field.from_rational(self.coeffs[0].recip()));
        }
        let inv = qslice::inverse_mod(&self.coeffs, self.field.minpoly_coeffs())
            .expect("nonzero element of a field is invertible");
        Ok(NFElement::reduced(&self.field, inv))
    }

    pub fn pow(&self, mut e: u64) -> NFElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
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

    /// Field norm down to Q: product of all conjugates.
    pub fn norm(&self) -> BigRational {
        if self.field.is_rationals() {
            return self.coeffs[0].clone();
        }
        qslice::resultant(self.field.minpoly_coeffs(), &self.coeffs)
    }

    /// Approximate complex value under the embedding sending α to `root`.
    pub fn to_complex(&self, root: (f64, f64)) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            let (re, im) = acc;
            acc = (
                re * root.0 - im * root.1 + super::rational::to_f64(c),
                re * root.1 + im * root.0,
            );
        }
        acc
    }

    /// Formats with the field's generator name, e.g. `3*a + 1/2`.
    pub fn display(&self) -> String {
        let g = self.field.generator_name();
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => g.to_string(),
                _ => format!("{g}^{i}"),
            };
            let body = if mono.is_empty() {
                format_rational(&a)
            } else if a.is_one() {
                mono
            } else {
                format!("{}*{}", format_rational(&a), mono)
            };
            terms.push((neg, body));
        }
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

    /// Number of nonzero power-basis coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}
impl Eq for NFElement {}

impl Hash for NFElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for NFElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on power-basis coefficients, highest first. Only meaningful
/// for canonical sorting.
impl Ord for NFElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

fn check(a: &NFElement, b: &NFElement) {
    debug_assert!(a.field == b.field, "field mismatch: {} vs {}", a.field, b.field);
}

impl Add for &NFElement {
    type Output = NFElement;
    fn add(self, o: &NFElement) -> NFElement {
        check(self, o);
        NFElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &NFElement {
    type Output = NFElement;
    fn sub(self, o: &NFElement) -> NFElement {
        check(self, o);
        NFElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &NFElement {
    type Output = NFElement;
    fn mul(self, o: &NFElement) -> NFElement {
        check(self, o);
        let d = self.field.degree();
        if d == 1 {
            return NFElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &o.coeffs[0]],
            };
        }
        if o.is_rational() {
            let c = &o.coeffs[0];
            return NFElement {
                field: self.field.clone(),
                coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            };
        }
        if self.is_rational() {
            return o * self;
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        NFElement::reduced(&self.field, prod)
    }
}

impl Div for &NFElement {
    type Output = NFElement;
    /// Panics on division by zero; use `try_div` for a fallible version.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &NFElement) -> NFElement {
        self * &o.inv().expect("division by zero in number field")
    }
}

impl Neg for &NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        NFElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for NFElement {
            type Output = NFElement;
            fn $m(self, o: NFElement) -> NFElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&NFElement> for NFElement {
            type Output = NFElement;
            fn $m(self, o: &NFElement) -> NFElement {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        -&self
    }
}

impl AddAssign<&NFElement> for NFElement {
    fn add_assign(&mut self, o: &NFElement) {
        check(self, o);
        for (x, y) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *x += y;
        }
    }
}

impl SubAssign<&NFElement> for NFElement {
    fn sub_assign(&mut self, o: &NFElement) {
        check(self, o);
        for (x, y) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *x -= y;
        }
    }
}

impl MulAssign<&NFElement> for NFElement {
    fn mul_assign(&mut self, o: &NFElement) {
        *self = &*self * o;
    }
}

/// Arithmetic selector for `nf_arith`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfOp {
    Add,
    Sub,
    Mul,
    Inv,
    Div,
}

/// Checked field arithmetic; `Inv` ignores `v`.
pub fn nf_arith(op: NfOp, u: &NFElement, v: &NFElement) -> Result<NFElement> {
    match op {
        NfOp::Add => u.try_add(v),
        NfOp::Sub => u.try_sub(v),
        NfOp::Mul => u.try_mul(v),
        NfOp::Inv => u.inv(),
        NfOp::Div => u.try_div(v),
    }
}

/// Builds Q(α) from its minimal polynomial; see [`Field::new`].
pub fn nf_new(minpoly: &UniPoly, generator: &str) -> Result<Field> {
    Field::new(minpoly, generator)
}

/// Ring automorphism of a number field, determined by the image of α.
#[derive(Clone, Debug)]
pub struct FieldAutomorphism {
    field: Field,
    powers: Vec<NFElement>,
}

impl FieldAutomorphism {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generator_image(&self) -> &NFElement {
        if self.powers.len() > 1 {
            &self.powers[1]
        } else {
            &self.powers[0]
        }
    }

    pub fn apply(&self, x: &NFElement) -> NFElement {
        let mut acc = self.field.zero();
        for (c, p) in x.coeffs.iter().zip(&self.powers) {
            if !c.is_zero() {
                acc += &(p * &self.field.from_rational(c.clone()));
            }
        }
        acc
    }

    pub fn apply_poly(&self, p: &UniPoly) -> UniPoly {
        UniPoly::new(&self.field, p.coeffs().iter().map(|c| self.apply(c)).collect())
    }

    pub fn compose(&self, other: &FieldAutomorphism) -> FieldAutomorphism {
        nf_automorphism(&self.field, &self.apply(other.generator_image()))
            .expect("composition of automorphisms is an automorphism")
    }

    pub fn is_identity(&self) -> bool {
        self.field.degree() == 1 || *self.generator_image() == self.field.generator()
    }
}

/// The automorphism of `k` sending the generator to `gen_image`.
pub fn nf_automorphism(k: &Field, gen_image: &NFElement) -> Result<FieldAutomorphism> {
    k.ensure_same(gen_image.field())?;
    let m = k.minpoly_coeffs();
    let mut val = k.zero();
    for c in m.iter().rev() {
        val = &(&val * gen_image) + &k.from_rational(c.clone());
    }
    if !val.is_zero() {
        return Err(AlgebraError::NotARoot(gen_image.display()));
    }
    let d = k.degree();
    let mut powers = Vec::with_capacity(d);
    let mut p = k.one();
    for _ in 0..d {
        powers.push(p.clone());
        p = &p * gen_image;
    }
    Ok(FieldAutomorphism {
        field: k.clone(),
        powers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat2;

    fn qa() -> Field {
        Field::from_rational_coeffs(vec![rat(2), rat(1), rat(1)], "a").unwrap()
    }

    #[test]
    fn defining_relation() {
        let k = qa();
        let a = k.generator();
        let sq = &a * &a;
        assert_eq!(sq, -&a - k.from_int(2));
        assert_eq!(sq.display(), "-a - 2");
    }

    #[test]
    fn sqrt2() {
        let k = Field::from_rational_coeffs(vec![rat(-2), rat(0), rat(1)], "s").unwrap();
        let s = k.generator();
        assert_eq!(&s * &s, k.from_int(2));
        assert_eq!(s.norm(), rat(-2));
    }

    #[test]
    fn inverse_and_rational() {
        let q = Field::rationals();
        assert_eq!(q.from_int(2).inv().unwrap(), q.from_rational(rat2(1, 2)));
        let k = qa();
        let x = &k.generator() + &k.from_int(3);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(k.zero().inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Field::from_rational_coeffs(vec![rat(-1), rat(0), rat(1)], "a"),
            Err(AlgebraError::Reducible(_))
        ));
        assert!(Field::from_rational_coeffs(vec![rat(-1), rat(1)], "a")
            .unwrap()
            .is_rationals());
        assert_eq!(
            Field::from_rational_coeffs(vec![rat(1), rat(2)], "a").unwrap_err(),
            AlgebraError::BadMinpoly
        );
    }

    #[test]
    fn automorphisms() {
        let k = qa();
        let a = k.generator();
        let conj = nf_automorphism(&k, &(-&a - k.one())).unwrap();
        assert_eq!(conj.apply(&conj.apply(&a)), a);
        assert!(nf_automorphism(&k, &a).unwrap().is_identity());
        assert!(matches!(
            nf_automorphism(&k, &(&a + &k.one())),
            Err(AlgebraError::NotARoot(_))
        ));
    }

    #[test]
    fn mismatch() {
        let k = qa();
        let q = Field::rationals();
        assert!(matches!(
            nf_arith(NfOp::Add, &k.one(), &q.one()),
            Err(AlgebraError::FieldMismatch(_, _))
        ));
    }
}
