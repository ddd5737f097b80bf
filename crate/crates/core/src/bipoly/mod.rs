//! Bivariate polynomials F(X, Y) stored as polynomials in X with
//! coefficients in K[Y].

mod factor;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{Field, NFElement};
use crate::error::{AlgebraError, Result};
use crate::poly::{interpolate, join_terms, UniPoly};

pub use factor::{factor_bi, factor_bi_skipping, is_irreducible_bi, BiFactorList};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: Field,
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(field: &Field, mut coeffs: Vec<UniPoly>) -> BiPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> BiPoly {
        BiPoly::new(field, Vec::new())
    }

    pub fn constant(c: NFElement) -> BiPoly {
        let k = c.field().clone();
        BiPoly::new(&k, vec![UniPoly::constant(c)])
    }

    /// f(X).
    pub fn from_x(f: &UniPoly) -> BiPoly {
        let k = f.field();
        BiPoly::new(k, f.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    /// g(Y).
    pub fn from_y(g: &UniPoly) -> BiPoly {
        BiPoly::new(g.field(), vec![g.clone()])
    }

    /// Builds from a dense table `rows[i][j]` = coefficient of X^i Y^j.
    pub fn from_table(field: &Field, rows: Vec<Vec<NFElement>>) -> BiPoly {
        BiPoly::new(field, rows.into_iter().map(|r| UniPoly::new(field, r)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficients of X^i, as polynomials in Y.
    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_x(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn deg_y(&self) -> usize {
        self.coeffs.iter().map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn coeff_x(&self, i: usize) -> UniPoly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(&self.field))
    }

    pub fn coeff(&self, i: usize, j: usize) -> NFElement {
        self.coeffs
            .get(i)
            .map(|c| c.coeff(j))
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient in X, a polynomial in Y.
    pub fn lc_x(&self) -> UniPoly {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(&self.field))
    }

    /// Leading scalar: top Y-coefficient of the top X-coefficient.
    pub fn lc(&self) -> NFElement {
        self.lc_x().lc()
    }

    pub fn scale(&self, c: &NFElement) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_y(&self, p: &UniPoly) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c * p).collect())
    }

    /// F(X, y0).
    pub fn eval_y(&self, y0: &NFElement) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| c.eval(y0)).collect())
    }

    /// F(x0, Y).
    pub fn eval_x(&self, x0: &NFElement) -> UniPoly {
        let mut acc = UniPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(x0) + c;
        }
        acc
    }

    pub fn eval(&self, x0: &NFElement, y0: &NFElement) -> NFElement {
        self.eval_y(y0).eval(x0)
    }

    /// F(X, Y + c).
    pub fn shift_y(&self, c: &NFElement) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|p| p.shift(c)).collect())
    }

    /// Exchanges the roles of X and Y.
    pub fn transpose(&self) -> BiPoly {
        let dy = self.deg_y();
        let mut rows = vec![vec![self.field.zero(); self.coeffs.len()]; dy + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, e) in c.coeffs().iter().enumerate() {
                rows[j][i] = e.clone();
            }
        }
        if self.is_zero() {
            return self.clone();
        }
        BiPoly::from_table(&self.field, rows)
    }

    pub fn derivative_x(&self) -> BiPoly {
        BiPoly::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&self.field.from_int(i as i64)))
                .collect(),
        )
    }

    /// H(p(X), q(Y)).
    pub fn substitute(&self, px: &UniPoly, qy: &UniPoly) -> BiPoly {
        let inner: Vec<UniPoly> = self.coeffs.iter().map(|c| c.compose(qy)).collect();
        let mut acc = BiPoly::zero(&self.field);
        let pxb = BiPoly::from_x(px);
        for c in inner.iter().rev() {
            acc = &(&acc * &pxb) + &BiPoly::from_y(c);
        }
        acc
    }

    /// Content with respect to X: monic gcd of the coefficients in K[Y].
    pub fn content_y(&self) -> UniPoly {
        let mut g = UniPoly::zero(&self.field);
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.degree() == 0 && !g.is_zero() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by a polynomial in Y (must be exact).
    pub fn div_y(&self, p: &UniPoly) -> Option<BiPoly> {
        let v: Option<Vec<UniPoly>> = self.coeffs.iter().map(|c| c.exact_div(p)).collect();
        v.map(|v| BiPoly::new(&self.field, v))
    }

    pub fn primitive_part(&self) -> BiPoly {
        let c = self.content_y();
        if c.is_zero() || c.degree() == 0 {
            return self.clone();
        }
        self.div_y(&c).expect("content divides")
    }

    /// Exact quotient self / b, or None.
    pub fn exact_div(&self, b: &BiPoly) -> Option<BiPoly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let db = b.deg_x();
        if self.deg_x() < db {
            return None;
        }
        let lb = b.lc_x();
        let mut r = self.coeffs.clone();
        let mut q = vec![UniPoly::zero(&self.field); r.len() - db];
        for k in (db..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = r[k].exact_div(&lb)?;
            for j in 0..=db {
                let t = &c * &b.coeffs[j];
                r[k - db + j] = &r[k - db + j] - &t;
            }
            q[k - db] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(BiPoly::new(&self.field, q))
    }

    /// Pseudo-remainder lc(b)^(dA-dB+1) * self mod b, in X.
    pub fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg_x();
        let lb = b.lc_x();
        let mut r = self.clone();
        while !r.is_zero() && r.deg_x() >= db {
            let shift = r.deg_x() - db;
            let lr = r.lc_x();
            let mut t = vec![UniPoly::zero(&self.field); shift];
            t.extend(b.coeffs.iter().map(|c| c * &lr));
            let tb = BiPoly::new(&self.field, t);
            r = &r.mul_y(&lb) - &tb;
        }
        r
    }

    /// Gcd in K[X, Y] of polynomials primitive in X (primitive PRS),
    /// normalized to leading scalar 1.
    pub fn gcd(&self, o: &BiPoly) -> BiPoly {
        let ca = self.content_y();
        let cb = o.content_y();
        let cont = ca.gcd(&cb);
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.deg_x() < b.deg_x() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg_x() == 0 {
                a = BiPoly::constant(self.field.one());
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        let g = a.mul_y(&cont);
        g.normalized()
    }

    /// Scales so the leading scalar is 1.
    pub fn normalized(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        self.scale(&l.inv().expect("nonzero"))
    }

    /// Discriminant in X as a polynomial in Y (by interpolation).
    pub fn disc_x(&self) -> UniPoly {
        let n = self.deg_x();
        assert!(n >= 1, "disc_x needs degX >= 1");
        let k = &self.field;
        let bound = (2 * n - 1) * self.deg_y() + 1;
        let lc = self.lc_x();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut t = 0i64;
        while xs.len() < bound {
            let tv = k.from_int(t);
            t += 1;
            if lc.eval(&tv).is_zero() {
                continue;
            }
            ys.push(self.eval_y(&tv).discriminant());
            xs.push(tv);
        }
        interpolate(k, &xs, &ys)
    }

    /// Expands to a dense table rows[i][j].
    pub fn to_table(&self) -> Vec<Vec<NFElement>> {
        let dy = self.deg_y();
        self.coeffs
            .iter()
            .map(|c| (0..=dy).map(|j| c.coeff(j)).collect())
            .collect()
    }

    /// Applies a map to every coefficient.
    pub fn map_coeffs(&self, field: &Field, f: impl Fn(&NFElement) -> NFElement) -> BiPoly {
        BiPoly::new(
            field,
            self.coeffs
                .iter()
                .map(|c| UniPoly::new(field, c.coeffs().iter().map(&f).collect()))
                .collect(),
        )
    }

    /// Re-expresses a rational bivariate polynomial over `k`.
    pub fn to_field(&self, k: &Field) -> Result<BiPoly> {
        if self.field == *k {
            return Ok(self.clone());
        }
        let v: Result<Vec<UniPoly>> = self.coeffs.iter().map(|c| c.to_field(k)).collect();
        Ok(BiPoly::new(k, v?))
    }

    pub fn display_with(&self, x: &str, y: &str) -> String {
        let mut terms = Vec::new();
        for i in (0..self.coeffs.len()).rev() {
            for j in (0..self.coeffs[i].coeffs().len()).rev() {
                let c = &self.coeffs[i].coeffs()[j];
                if c.is_zero() {
                    continue;
                }
                let mut mono = Vec::new();
                match i {
                    0 => {}
                    1 => mono.push(x.to_string()),
                    _ => mono.push(format!("{x}^{i}")),
                }
                match j {
                    0 => {}
                    1 => mono.push(y.to_string()),
                    _ => mono.push(format!("{y}^{j}")),
                }
                terms.push(crate::poly::format_coeff_product(c, &mono.join("*")));
            }
        }
        join_terms(terms)
    }
}

/// f(X) - g(Y).
pub fn separated(f: &UniPoly, g: &UniPoly) -> Result<BiPoly> {
    let (f, g) = crate::poly::unify_fields(f, g)
        .ok_or_else(|| AlgebraError::FieldMismatch(f.field().label().into(), g.field().label().into()))?;
    Ok(&BiPoly::from_x(&f) - &BiPoly::from_y(&g))
}

/// Exact divisibility test H | F.
pub fn divides_bi(h: &BiPoly, f: &BiPoly) -> bool {
    if h.is_zero() {
        return false;
    }
    let (h, f) = if h.field() == f.field() {
        (h.clone(), f.clone())
    } else if let Ok(f2) = f.to_field(h.field()) {
        (h.clone(), f2)
    } else if let Ok(h2) = h.to_field(f.field()) {
        (h2, f.clone())
    } else {
        return false;
    };
    if h.deg_x() == 0 {
        // divisibility by a polynomial in Y alone
        let c = h.coeff_x(0);
        return f.div_y(&c).is_some();
    }
    f.exact_div(&h).is_some()
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("X", "Y"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("X", "Y"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| &self.coeff_x(i) + &o.coeff_x(i)).collect();
        BiPoly::new(&self.field, v)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| &self.coeff_x(i) - &o.coeff_x(i)).collect();
        BiPoly::new(&self.field, v)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut v = vec![UniPoly::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = &v[i + j] + &(a * b);
                }
            }
        }
        BiPoly::new(&self.field, v)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, o: BiPoly) -> BiPoly {
        &self + &o
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, o: BiPoly) -> BiPoly {
        &self - &o
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, o: BiPoly) -> BiPoly {
        &self * &o
    }
}
