//! Functional decomposition: right factors, complete decompositions, Ritt
//! moves and recognition of powers and Dickson polynomials.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::arith::{Field, NFElement};
use crate::error::{AlgebraError, Result};
use crate::poly::{roots, UniPoly};

/// The linear polynomial a*X + b, a != 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    pub a: NFElement,
    pub b: NFElement,
}

impl LinearMap {
    pub fn new(a: NFElement, b: NFElement) -> LinearMap {
        assert!(!a.is_zero(), "linear map with zero slope");
        LinearMap { a, b }
    }

    pub fn identity(k: &Field) -> LinearMap {
        LinearMap::new(k.one(), k.zero())
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::linear(self.a.clone(), self.b.clone())
    }

    /// self ∘ other.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(&self.a * &other.a, &(&self.a * &other.b) + &self.b)
    }

    pub fn inverse(&self) -> LinearMap {
        let ai = self.a.inv().expect("nonzero slope");
        let b = -&(&self.b * &ai);
        LinearMap::new(ai, b)
    }

    /// self ∘ p.
    pub fn apply_left(&self, p: &UniPoly) -> UniPoly {
        &p.scale(&self.a) + &UniPoly::constant(self.b.clone())
    }

    /// p ∘ self.
    pub fn apply_right(&self, p: &UniPoly) -> UniPoly {
        p.compose(&self.to_poly())
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly().display_with("X"))
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A complete decomposition f = f_1 ∘ ℓ_1 ∘ f_2 ∘ ℓ_2 ∘ ... ∘ f_r. In
/// canonical form every f_i after the first is monic with zero constant
/// term and all ℓ_i are the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Decomposition {
    pub factors: Vec<UniPoly>,
    pub normalization: Vec<LinearMap>,
}

impl Decomposition {
    fn canonical(factors: Vec<UniPoly>) -> Decomposition {
        let k = factors[0].field().clone();
        let normalization = (1..factors.len()).map(|_| LinearMap::identity(&k)).collect();
        Decomposition { factors, normalization }
    }

    pub fn compose(&self) -> UniPoly {
        let mut acc = self.factors[0].clone();
        for (i, f) in self.factors.iter().enumerate().skip(1) {
            let inner = self.normalization[i - 1].apply_left(f);
            acc = acc.compose(&inner);
        }
        acc
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.degree()).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Composition of the last `k` factors.
    pub fn tail(&self, k: usize) -> UniPoly {
        let r = self.factors.len();
        let mut acc = self.factors[r - k].clone();
        for f in &self.factors[r - k + 1..] {
            acc = acc.compose(f);
        }
        acc
    }
}

/// Monic with zero constant term: the representative of p up to μ∘p.
pub fn left_normalize(p: &UniPoly) -> UniPoly {
    let c = p.coeff(0);
    (p - &UniPoly::constant(c)).monic()
}

/// Writes f = g ∘ h with deg h = d, h monic and h(0) = 0, if possible.
pub fn right_factor(f: &UniPoly, d: usize) -> Option<(UniPoly, UniPoly)> {
    let n = f.degree();
    if d == 0 || !n.is_multiple_of(d) || d >= n || d <= 1 {
        return None;
    }
    let r = n / d;
    let k = f.field().clone();
    let fm = f.monic();
    // h ≈ fm^(1/r) from the top coefficients of fm
    let mut h = UniPoly::monomial(k.one(), d);
    let rinv = k.from_int(r as i64).inv().expect("char 0");
    for j in 1..d {
        let hr = h.pow(r as u32);
        let c = &fm.coeff(n - j) - &hr.coeff(n - j);
        let mut v = h.coeffs().to_vec();
        v[d - j] = &c * &rinv;
        h = UniPoly::new(&k, v);
    }
    let g = h_adic_expansion(f, &h)?;
    Some((g, h))
}

/// Writes f = Σ g_i h^i with constant g_i; None if some digit is not constant.
fn h_adic_expansion(f: &UniPoly, h: &UniPoly) -> Option<UniPoly> {
    let k = f.field();
    let mut digits = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.divrem(h).ok()?;
        if r.degree() > 0 {
            return None;
        }
        digits.push(r.coeff(0));
        rest = q;
    }
    Some(UniPoly::new(k, digits))
}

/// Smallest-degree right factor, which is necessarily indecomposable.
fn smallest_right_factor(f: &UniPoly) -> Option<(UniPoly, UniPoly)> {
    let n = f.degree();
    (2..n).filter(|d| n.is_multiple_of(*d)).find_map(|d| right_factor(f, d))
}

pub fn is_indecomposable(f: &UniPoly) -> bool {
    f.degree() >= 2 && smallest_right_factor(f).is_none()
}

fn greedy_chain(f: &UniPoly) -> Vec<UniPoly> {
    match smallest_right_factor(f) {
        None => vec![f.clone()],
        Some((g, h)) => {
            let mut c = greedy_chain(&g);
            c.push(h);
            c
        }
    }
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// Swaps adjacent coprime-degree indecomposables g ∘ h = g' ∘ h' when possible.
pub fn ritt_move(g: &UniPoly, h: &UniPoly) -> Option<(UniPoly, UniPoly)> {
    let (dg, dh) = (g.degree(), h.degree());
    if dg < 2 || dh < 2 || gcd_usize(dg, dh) != 1 {
        return None;
    }
    right_factor(&g.compose(h), dg)
}

fn chain_key(c: &[UniPoly]) -> (Vec<usize>, Vec<String>) {
    (
        c.iter().map(|f| f.degree()).collect(),
        c.iter().map(|f| f.to_string()).collect(),
    )
}

/// All complete decompositions up to linear insertion, in canonical form.
pub fn complete_decompositions(f: &UniPoly) -> Vec<Decomposition> {
    assert!(f.degree() >= 2, "decomposition needs degree >= 2");
    let start = greedy_chain(f);
    let mut seen: HashSet<Vec<UniPoly>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(chain) = queue.pop_front() {
        for i in 0..chain.len().saturating_sub(1) {
            if let Some((g2, h2)) = ritt_move(&chain[i], &chain[i + 1]) {
                let mut next = chain.clone();
                next[i] = g2;
                next[i + 1] = h2;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    let mut chains: Vec<Vec<UniPoly>> = seen.into_iter().collect();
    chains.sort_by_key(|c| chain_key(c));
    chains.into_iter().map(Decomposition::canonical).collect()
}

/// True iff every complete decomposition of f ends in a tail equal to v up
/// to linear insertion.
pub fn is_right_unique(f: &UniPoly, v: &UniPoly) -> Result<bool> {
    let n = f.degree();
    let d = v.degree();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(AlgebraError::NotAFactor(v.to_string()));
    }
    if d == 1 || d == n {
        if d == n && linearly_related(f, v, false).is_none() {
            return Err(AlgebraError::NotAFactor(v.to_string()));
        }
        return Ok(true);
    }
    let (_, h) = right_factor(f, d).ok_or_else(|| AlgebraError::NotAFactor(v.to_string()))?;
    if linearly_related(&h, v, false).is_none() {
        return Err(AlgebraError::NotAFactor(v.to_string()));
    }
    for dec in complete_decompositions(f) {
        let mut deg = 1;
        let mut k = 0;
        while deg < d && k < dec.len() {
            deg *= dec.factors[dec.len() - 1 - k].degree();
            k += 1;
        }
        if deg != d {
            return Ok(false);
        }
        if linearly_related(&dec.tail(k), v, false).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Right-unique, and the tail is not linearly related over K to X^{p^2}
/// or T_{p^2} when deg v = p^2.
pub fn is_strongly_unique(f: &UniPoly, v: &UniPoly) -> Result<bool> {
    if !is_right_unique(f, v)? {
        return Ok(false);
    }
    let d = v.degree();
    let p = (2..=d).find(|p| d.is_multiple_of(*p)).unwrap_or(d);
    if p * p == d && (recognize_power(v).is_some() || recognize_dickson(v).is_some()) {
        return Ok(false);
    }
    Ok(true)
}

/// p(X - s) with the X^{n-1} coefficient removed; returns (centered, s) so
/// that p = centered ∘ (X + s).
fn center(p: &UniPoly) -> (UniPoly, NFElement) {
    let n = p.degree();
    let k = p.field();
    let s = &p.coeff(n - 1) / &(&p.lc() * &k.from_int(n as i64));
    (p.shift(&-&s), s)
}

/// f = c (X - b)^n + e, returned as (μ = cX + e, n, ν = X - b).
pub fn recognize_power(f: &UniPoly) -> Option<(LinearMap, usize, LinearMap)> {
    let n = f.degree();
    if n < 2 {
        return None;
    }
    let k = f.field();
    let (cen, s) = center(f);
    let c = f.lc();
    let e = cen.coeff(0);
    let expect = &UniPoly::monomial(c.clone(), n) + &UniPoly::constant(e.clone());
    (cen == expect).then(|| (LinearMap::new(c, e), n, LinearMap::new(k.one(), s)))
}

/// f = μ ∘ D_{n,α} ∘ ν with α != 0.
pub fn recognize_dickson(f: &UniPoly) -> Option<(LinearMap, usize, NFElement, LinearMap)> {
    let n = f.degree();
    if n < 2 {
        return None;
    }
    let k = f.field();
    let (cen, s) = center(f);
    let c = f.lc();
    let alpha = -&(&cen.coeff(n - 2) / &(&c * &k.from_int(n as i64)));
    if alpha.is_zero() {
        return None;
    }
    let d = crate::families::dickson(n, &alpha);
    let e = &cen.coeff(0) - &(&c * &d.coeff(0));
    let expect = &d.scale(&c) + &UniPoly::constant(e.clone());
    (cen == expect).then(|| (LinearMap::new(c, e), n, alpha, LinearMap::new(k.one(), s)))
}

/// All f = h ∘ h1 with deg h >= 2, h1 monic with h1(0) = 0; (f, X) first,
/// then by increasing deg h.
pub fn left_factors(f: &UniPoly) -> Vec<(UniPoly, UniPoly)> {
    let n = f.degree();
    let k = f.field();
    let mut out = vec![(f.clone(), UniPoly::x(k))];
    let mut ds: Vec<usize> = (2..n).filter(|d| n.is_multiple_of(*d)).collect();
    ds.sort_by(|a, b| b.cmp(a));
    for d in ds {
        if let Some((g, h)) = right_factor(f, d) {
            out.push((g, h));
        }
    }
    out
}

/// f = μ ∘ g ∘ ν over the coefficient field (μ = id when `right_only`).
pub fn linearly_related(f: &UniPoly, g: &UniPoly, right_only: bool) -> Option<(LinearMap, LinearMap)> {
    let (f, g) = crate::poly::unify_fields(f, g)?;
    let n = f.degree();
    if n != g.degree() || n < 1 {
        return None;
    }
    let k = f.field().clone();
    if right_only {
        return right_related(&f, &g).map(|nu| (LinearMap::identity(&k), nu));
    }
    if n == 1 {
        // any two linear polynomials are related by μ alone
        let mu = LinearMap::new(&f.lc() / &g.lc(), &f.coeff(0) - &(&(&f.lc() / &g.lc()) * &g.coeff(0)));
        return Some((mu, LinearMap::identity(&k)));
    }
    // normal forms: p = μ_p ∘ p̂ ∘ (X + s_p) with p̂ monic, centered, p̂(0) = 0
    let (fc, sf) = center(&f);
    let (gc, sg) = center(&g);
    let fh = left_normalize(&fc);
    let gh = left_normalize(&gc);
    // f̂_i = λ^{i-n} ĝ_i
    let lambdas: Vec<NFElement> = match (0..n).find(|&i| !gh.coeff(i).is_zero()) {
        None => vec![k.one()],
        Some(i) => {
            if fh.coeff(i).is_zero() {
                return None;
            }
            let ratio = &gh.coeff(i) / &fh.coeff(i);
            let m = n - i;
            let p = &UniPoly::monomial(k.one(), m) - &UniPoly::constant(ratio);
            one_first(roots(&p))
        }
    };
    for lam in lambdas {
        let ok = (0..n).all(|i| {
            let li = lam.pow((n - i) as u64);
            &fh.coeff(i) * &li == gh.coeff(i)
        });
        if !ok {
            continue;
        }
        // f = μ_f ∘ f̂ ∘ (X + s_f),  ĝ = μ_g^{-1} ∘ g ∘ (X - s_g),  f̂ = λ^{-n} ĝ(λX)
        let mu_f = LinearMap::new(fc.lc(), fc.coeff(0));
        let mu_g = LinearMap::new(gc.lc(), gc.coeff(0));
        let scale = LinearMap::new(lam.pow(n as u64).inv().unwrap(), k.zero());
        let mu = mu_f.compose(&scale).compose(&mu_g.inverse());
        let nu = LinearMap::new(lam.clone(), &(&lam * &sf) - &sg);
        debug_assert_eq!(mu.apply_left(&nu.apply_right(&g)), f);
        return Some((mu, nu));
    }
    None
}

fn one_first(mut v: Vec<NFElement>) -> Vec<NFElement> {
    if let Some(i) = v.iter().position(|r| r.is_one()) {
        let one = v.remove(i);
        v.insert(0, one);
    }
    v
}

fn right_related(f: &UniPoly, g: &UniPoly) -> Option<LinearMap> {
    let n = f.degree();
    let k = f.field().clone();
    let p = &UniPoly::monomial(g.lc(), n) - &UniPoly::constant(f.lc());
    for lam in one_first(roots(&p)) {
        let lp = lam.pow((n - 1) as u64);
        let num = &f.coeff(n - 1) - &(&g.coeff(n - 1) * &lp);
        let den = &(&g.lc() * &k.from_int(n as i64)) * &lp;
        let beta = &num / &den;
        let nu = LinearMap::new(lam, beta);
        if nu.apply_right(g) == *f {
            return Some(nu);
        }
    }
    None
}

/// Independent enumeration of all complete decompositions by recursion on
/// right factors; used to cross-check the Ritt-move closure.
pub fn decompositions_by_recursion(f: &UniPoly) -> BTreeSet<Vec<String>> {
    fn rec(f: &UniPoly) -> Vec<Vec<UniPoly>> {
        let n = f.degree();
        let mut out = Vec::new();
        for d in (2..n).filter(|d| n.is_multiple_of(*d)) {
            if let Some((g, h)) = right_factor(f, d) {
                if !is_indecomposable(&h) {
                    continue;
                }
                for mut c in rec(&g) {
                    c.push(h.clone());
                    out.push(c);
                }
            }
        }
        if out.is_empty() {
            out.push(vec![f.clone()]);
        }
        out
    }
    rec(f)
        .into_iter()
        .map(|c| c.iter().map(|p| p.to_string()).collect())
        .collect()
}
