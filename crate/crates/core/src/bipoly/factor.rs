//! Bivariate factorization: specialize Y = y0, factor over the coefficient
//! field, lift in powers of (Y - y0), recombine and certify by division.

use std::fmt;

use super::BiPoly;
use crate::arith::NFElement;
use crate::error::{AlgebraError, Result};
use crate::poly::{factor_nf, UniPoly};

/// `unit * prod(factor^multiplicity)`, every factor with leading scalar 1.
#[derive(Clone, PartialEq, Eq)]
pub struct BiFactorList {
    pub unit: NFElement,
    pub factors: Vec<(BiPoly, usize)>,
}

impl BiFactorList {
    pub fn expand(&self) -> BiPoly {
        let mut acc = BiPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }

    pub fn count_with_multiplicity(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.count_with_multiplicity() == 1
    }

    /// X-degrees of the factors, with multiplicity, ascending.
    pub fn degrees_x(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.deg_x(), *m))
            .collect();
        v.sort();
        v
    }
}

impl fmt::Display for BiFactorList {
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

impl fmt::Debug for BiFactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Candidate order 0, 1, -1, 2, -2, ...
fn specialization_points(bound: i64) -> impl Iterator<Item = i64> {
    (0..=2 * bound).map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
}

/// Complete factorization of F over its coefficient field.
pub fn factor_bi(f: &BiPoly) -> Result<BiFactorList> {
    factor_bi_skipping(f, 0)
}

/// As `factor_bi`, but lifting from the (skip+1)-th good specialization
/// point instead of the first; the result must not depend on the choice.
pub fn factor_bi_skipping(f: &BiPoly, skip: usize) -> Result<BiFactorList> {
    if f.is_zero() {
        return Err(AlgebraError::PreconditionViolated(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let unit = f.lc();
    let mut out: Vec<(BiPoly, usize)> = Vec::new();
    let c = f.content_y();
    let prim = if c.degree() > 0 {
        for (p, m) in factor_nf(&c).factors {
            out.push((BiPoly::from_y(&p), m));
        }
        f.div_y(&c).expect("content divides")
    } else {
        f.clone()
    };
    if prim.deg_x() >= 1 {
        for (part, m) in squarefree_bi(&prim) {
            for g in factor_squarefree_bi(&part, skip)? {
                out.push((g.normalized(), m));
            }
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        (a.deg_x(), a.deg_y(), a.to_string(), ma).cmp(&(b.deg_x(), b.deg_y(), b.to_string(), mb))
    });
    Ok(BiFactorList { unit, factors: out })
}

/// True iff F is irreducible over its coefficient field.
pub fn is_irreducible_bi(f: &BiPoly) -> Result<bool> {
    Ok(factor_bi(f)?.is_irreducible())
}

fn good_point(p: &BiPoly, y0: i64) -> bool {
    let k = p.field();
    let v = k.from_int(y0);
    !p.lc_x().eval(&v).is_zero() && p.eval_y(&v).is_squarefree()
}

/// Squarefree decomposition in X of a polynomial primitive in X.
fn squarefree_bi(f: &BiPoly) -> Vec<(BiPoly, usize)> {
    let quick = 2 * (f.deg_x() + f.deg_y()) as i64;
    if specialization_points(quick).any(|y0| good_point(f, y0)) {
        return vec![(f.clone(), 1)];
    }
    let d = f.derivative_x();
    let a0 = f.gcd(&d);
    if a0.deg_x() == 0 {
        return vec![(f.clone(), 1)];
    }
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = d.exact_div(&a0).expect("gcd divides derivative");
    let mut dd = &c - &b.derivative_x();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg_x() > 0 {
        let a = b.gcd(&dd);
        let nb = b.exact_div(&a).expect("gcd divides");
        let nc = dd.exact_div(&a).expect("gcd divides");
        dd = &nc - &nb.derivative_x();
        b = nb;
        if a.deg_x() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Factors a polynomial that is primitive and squarefree in X.
fn factor_squarefree_bi(p: &BiPoly, skip: usize) -> Result<Vec<BiPoly>> {
    let k = p.field().clone();
    let (dx, dy) = (p.deg_x(), p.deg_y());
    if dx == 1 {
        return Ok(vec![p.clone()]);
    }
    if dy == 0 {
        let u = p.eval_y(&k.zero());
        return Ok(factor_nf(&u)
            .factors
            .into_iter()
            .map(|(g, _)| BiPoly::from_x(&g))
            .collect());
    }
    let bound = 10 * (dx + dy) as i64;
    let y0 = specialization_points(bound)
        .filter(|&y| good_point(p, y))
        .nth(skip)
        .ok_or(AlgebraError::NoGoodSpecialization(bound))?;
    let y0e = k.from_int(y0);
    let u = p.eval_y(&y0e);
    let fl = factor_nf(&u);
    if fl.factors.len() == 1 {
        return Ok(vec![p.clone()]);
    }
    let us: Vec<UniPoly> = fl.factors.into_iter().map(|(g, _)| g).collect();
    let pt = p.shift_y(&y0e);
    let prec = dy + 2;
    let lifted = hensel_lift(&pt, &us, prec);
    let found = recombine(&pt, lifted, prec);
    let back = -&y0e;
    Ok(found.into_iter().map(|g| g.shift_y(&back)).collect())
}

/// Power series in t with coefficients in K[X], truncated to `prec` terms.
type Series = Vec<UniPoly>;

fn series_of(p: &BiPoly, prec: usize) -> Series {
    let tp = p.transpose();
    (0..prec)
        .map(|k| {
            if p.is_zero() {
                UniPoly::zero(p.field())
            } else {
                tp.coeff_x(k)
            }
        })
        .collect()
}

fn series_mul(a: &Series, b: &Series, prec: usize) -> Series {
    let k = a[0].field().clone();
    let mut out = vec![UniPoly::zero(&k); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// Lifts the monic factorization of P(X, 0) to a factorization of
/// lc(t)^(-1) P(X, t) modulo t^prec, each lifted factor monic in X.
fn hensel_lift(p: &BiPoly, us: &[UniPoly], prec: usize) -> Vec<Series> {
    let k = p.field().clone();
    let r = us.len();
    let lc = p.lc_x();
    // inverse of lc(t) as a power series
    let l0inv = lc.coeff(0).inv().expect("good specialization");
    let mut inv: Vec<NFElement> = vec![l0inv.clone()];
    for n in 1..prec {
        let mut s = k.zero();
        for j in 1..=n {
            let t = &lc.coeff(j) * &inv[n - j];
            s += &t;
        }
        inv.push(-&(&s * &l0inv));
    }
    let ps = series_of(p, prec);
    let fhat: Series = (0..prec)
        .map(|n| {
            let mut acc = UniPoly::zero(&k);
            for a in 0..=n {
                if !ps[n - a].is_zero() {
                    acc = &acc + &ps[n - a].scale(&inv[a]);
                }
            }
            acc
        })
        .collect();

    // partial-fraction cofactors: sigma_i = (prod_{j != i} u_j)^{-1} mod u_i
    let sigmas: Vec<UniPoly> = (0..r)
        .map(|i| {
            let others = us
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(UniPoly::one(&k), |acc, (_, u)| &acc * u);
            let (g, s, _) = others.rem(&us[i]).xgcd(&us[i]);
            debug_assert!(g.degree() == 0);
            s
        })
        .collect();

    let mut lifted: Vec<Series> = us
        .iter()
        .map(|u| {
            let mut s = vec![UniPoly::zero(&k); prec];
            s[0] = u.clone();
            s
        })
        .collect();
    // prefix products q[j][n] = [t^n](U_0 ... U_j)
    let mut q: Vec<Series> = vec![vec![UniPoly::zero(&k); prec]; r];
    let coeff_n = |q: &Vec<Series>, lifted: &Vec<Series>, j: usize, n: usize| -> UniPoly {
        if j == 0 {
            return lifted[0][n].clone();
        }
        let mut acc = UniPoly::zero(&k);
        for a in 0..=n {
            let x = &q[j - 1][a];
            let y = &lifted[j][n - a];
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &(x * y);
            }
        }
        acc
    };
    for j in 0..r {
        q[j][0] = coeff_n(&q, &lifted, j, 0);
    }
    for n in 1..prec {
        for j in 0..r {
            q[j][n] = coeff_n(&q, &lifted, j, n);
        }
        let e = &fhat[n] - &q[r - 1][n];
        if e.is_zero() {
            continue;
        }
        for i in 0..r {
            lifted[i][n] = (&sigmas[i] * &e).rem(&us[i]);
        }
        for j in 0..r {
            q[j][n] = coeff_n(&q, &lifted, j, n);
        }
    }
    lifted
}

fn series_to_bipoly(s: &Series, field: &crate::arith::Field) -> BiPoly {
    // s[n] is the coefficient of t^n, a polynomial in X
    let dx = s.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let rows: Vec<Vec<NFElement>> = (0..dx).map(|i| s.iter().map(|c| c.coeff(i)).collect()).collect();
    BiPoly::from_table(field, rows)
}

fn recombine(p: &BiPoly, mut lifted: Vec<Series>, prec: usize) -> Vec<BiPoly> {
    let k = p.field().clone();
    let mut result = Vec::new();
    let mut rem = p.clone();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let dyr = rem.deg_y();
        let lcs: Series = {
            let l = rem.lc_x();
            (0..prec).map(|n| UniPoly::constant(l.coeff(n))).collect()
        };
        let mut hit = None;
        for subset in combinations(lifted.len(), s) {
            let mut g = lcs.clone();
            for &i in &subset {
                g = series_mul(&g, &lifted[i], prec);
            }
            // a true factor times a cofactor of lc has Y-degree <= dyr
            if g.iter().skip(dyr + 1).any(|c| !c.is_zero()) {
                continue;
            }
            let cand = series_to_bipoly(&g, &k).primitive_part();
            if let Some(qt) = rem.exact_div(&cand) {
                hit = Some((subset, cand, qt));
                break;
            }
        }
        match hit {
            Some((subset, cand, qt)) => {
                result.push(cand);
                rem = qt;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => s += 1,
        }
    }
    if rem.deg_x() >= 1 {
        result.push(rem.primitive_part());
    }
    result
}

/// All k-subsets of 0..n in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::parse::parse_bi;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn difference_of_squares() {
        let f = parse_bi("X^2 - Y^2", &q()).unwrap();
        let fl = factor_bi(&f).unwrap();
        assert_eq!(fl.degrees_x(), vec![1, 1]);
        assert_eq!(fl.expand(), f);
    }

    #[test]
    fn x4_plus_4y4() {
        let f = parse_bi("X^4 + 4*Y^4", &q()).unwrap();
        let fl = factor_bi(&f).unwrap();
        let a = parse_bi("X^2 - 2*X*Y + 2*Y^2", &q()).unwrap();
        let b = parse_bi("X^2 + 2*X*Y + 2*Y^2", &q()).unwrap();
        assert_eq!(fl.factors.len(), 2);
        assert!(fl.factors.iter().any(|(g, _)| *g == a));
        assert!(fl.factors.iter().any(|(g, _)| *g == b));
    }

    #[test]
    fn content_and_powers() {
        let f = parse_bi("(Y^2 - 1)*(X - Y)^2*(X^2 + Y)", &q()).unwrap();
        let fl = factor_bi(&f).unwrap();
        assert_eq!(fl.expand(), f);
        assert_eq!(fl.count_with_multiplicity(), 5);
    }

    #[test]
    fn irreducible_over_q_not_over_i() {
        let f = parse_bi("X^2 + Y^2", &q()).unwrap();
        assert!(is_irreducible_bi(&f).unwrap());
        let qi = Field::parse("i^2+1", "i").unwrap();
        let fi = f.to_field(&qi).unwrap();
        assert!(!is_irreducible_bi(&fi).unwrap());
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
