//! Integer fiber scans: which a in [-N, N] make f(X) - a reducible over Q.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::rat;
use crate::decompose::{complete_decompositions, is_indecomposable, left_factors};
use crate::error::{AlgebraError, Result};
use crate::poly::modp;
use crate::poly::{factor_q, rational_roots};
use crate::{BigRational, Field, UniPoly};

/// Largest degree of an iterate accepted by [`stability_scan`].
pub const MAX_ITERATE_DEGREE: usize = 64;

fn poly_text<S: Serializer>(f: &UniPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

/// An integer value reached by a left factor at a rational point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predicted {
    pub a: i64,
    /// Left factors f1 (f = f1 ∘ f2) with a ∈ f1(Q).
    pub sources: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    #[serde(serialize_with = "poly_text")]
    pub f: UniPoly,
    pub n: i64,
    pub reducible: Vec<i64>,
    pub predicted: Vec<Predicted>,
    pub residual: Vec<i64>,
    pub factorizations: usize,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub scan: ScanReport,
    /// Some complete decomposition of f has a factor of degree 2 or 4, so an
    /// infinite residual is allowed.
    pub through_degree_2_or_4: bool,
    /// Left factors of degree 5 whose sampled cycle types rule out every
    /// solvable transitive group of degree 5.
    pub degree5_nonsolvable: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    #[serde(serialize_with = "poly_text")]
    pub f: UniPoly,
    pub iterations: usize,
    pub n: i64,
    pub base: Vec<i64>,
    pub iterate: Vec<i64>,
    pub difference: Vec<i64>,
}

fn check_input(f: &UniPoly, n: i64) -> Result<UniPoly> {
    let fq = f
        .to_field(&Field::rationals())
        .map_err(|_| AlgebraError::BadParameters("scans need f over Q".into()))?;
    if fq.degree() < 2 {
        return Err(AlgebraError::BadParameters("deg f must be at least 2".into()));
    }
    if n < 1 {
        return Err(AlgebraError::BadParameters("N must be at least 1".into()));
    }
    Ok(fq)
}

fn minus(f: &UniPoly, a: i64) -> UniPoly {
    let k = f.field();
    f - &UniPoly::constant(k.from_int(a))
}

/// Sorted a ∈ [-N, N] with f(X) - a reducible, multiplicity counted.
fn reducible_values(f: &UniPoly, n: i64) -> Vec<i64> {
    (-n..=n)
        .into_par_iter()
        .filter(|&a| factor_q(&minus(f, a)).count_with_multiplicity() > 1)
        .collect()
}

/// Exhaustive scan of the fibers f(X) - a for |a| <= N.
pub fn scan_red(f: &UniPoly, n: i64) -> Result<ScanReport> {
    let f = check_input(f, n)?;
    let start = Instant::now();
    let reducible = reducible_values(&f, n);
    Ok(ScanReport {
        f,
        n,
        reducible,
        predicted: Vec::new(),
        residual: Vec::new(),
        factorizations: (2 * n + 1) as usize,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Left factors of degree >= 2, one per right-linear class.
pub fn nonlinear_left_factors(f: &UniPoly) -> Vec<UniPoly> {
    let mut out: Vec<UniPoly> = left_factors(f).into_iter().map(|(g, _)| g).collect();
    out.sort_by_key(|g| g.degree());
    out
}

/// Integers in [-N, N] of the form f1(q), q ∈ Q, with provenance.
pub fn predicted_red(f: &UniPoly, n: i64) -> Result<Vec<Predicted>> {
    let f = check_input(f, n)?;
    let lefts = nonlinear_left_factors(&f);
    let names: Vec<String> = lefts.iter().map(|g| g.to_string()).collect();
    Ok((-n..=n)
        .into_par_iter()
        .filter_map(|a| {
            let sources: Vec<String> = lefts
                .iter()
                .zip(&names)
                .filter(|(g, _)| !rational_roots(&minus(g, a)).is_empty())
                .map(|(_, s)| s.clone())
                .collect();
            (!sources.is_empty()).then_some(Predicted { a, sources })
        })
        .collect())
}

/// Scan plus prediction; residual = scanned minus predicted.
pub fn full_scan(f: &UniPoly, n: i64) -> Result<ScanReport> {
    let mut report = scan_red(f, n)?;
    let start = Instant::now();
    report.predicted = predicted_red(f, n)?;
    let predicted: BTreeSet<i64> = report.predicted.iter().map(|p| p.a).collect();
    report.residual = report
        .reducible
        .iter()
        .copied()
        .filter(|a| !predicted.contains(a))
        .collect();
    report.factorizations += (2 * n + 1) as usize * nonlinear_left_factors(&report.f).len();
    report.elapsed_ms += start.elapsed().as_millis();
    Ok(report)
}

/// Residual with the flags that decide whether it must be finite.
pub fn residual_analysis(f: &UniPoly, n: i64, seed: u64) -> Result<ResidualReport> {
    let scan = full_scan(f, n)?;
    let through_degree_2_or_4 = complete_decompositions(&scan.f)
        .iter()
        .any(|d| d.factors.iter().any(|p| p.degree() == 2 || p.degree() == 4));
    let degree5_nonsolvable = nonlinear_left_factors(&scan.f)
        .into_iter()
        .filter(|g| g.degree() == 5 && is_indecomposable(g))
        .filter(|g| nonsolvable_quintic_signature(&cycle_types(g, 200, seed)))
        .map(|g| g.to_string())
        .collect();
    Ok(ResidualReport {
        scan,
        through_degree_2_or_4,
        degree5_nonsolvable,
    })
}

/// Cycle types that no solvable transitive subgroup of S5 contains.
fn nonsolvable_quintic_signature(types: &[Vec<usize>]) -> bool {
    types
        .iter()
        .any(|t| matches!(t.as_slice(), [1, 1, 3] | [2, 3] | [1, 1, 1, 2]))
}

fn rational_mod(q: &BigRational, p: u64) -> Option<u64> {
    let d = modp::reduce_big(q.denom(), p);
    (d != 0).then(|| modp::mulmod(modp::reduce_big(q.numer(), p), modp::inv(d, p), p))
}

/// Degree patterns of f(X) - a mod p at random unramified (a, p), each sorted.
pub fn cycle_types(f: &UniPoly, trials: usize, seed: u64) -> Vec<Vec<usize>> {
    let coeffs = match f.rational_coeffs() {
        Some(c) if f.degree() >= 1 => c,
        _ => return Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    let mut attempts = 0;
    while out.len() < trials && attempts < 50 * trials {
        attempts += 1;
        let p = modp::next_prime(rng.gen_range(200..20000));
        let Some(mut v) = coeffs.iter().map(|c| rational_mod(c, p)).collect::<Option<Vec<u64>>>() else {
            continue;
        };
        if v.last() == Some(&0) {
            continue;
        }
        let a = rng.gen_range(0..p);
        v[0] = (v[0] + p - a) % p;
        if !modp::is_squarefree(&v, p) {
            continue;
        }
        let mut t = modp::factor_degrees(&v, p);
        t.sort();
        out.push(t);
    }
    out
}

/// Red of the n-th iterate minus Red of f, both on [-N, N].
pub fn stability_scan(f: &UniPoly, iterations: usize, n: i64) -> Result<StabilityReport> {
    let f = check_input(f, n)?;
    if iterations < 2 {
        return Err(AlgebraError::BadParameters("need at least two iterations".into()));
    }
    let degree = f.degree().checked_pow(iterations as u32).unwrap_or(usize::MAX);
    if degree > MAX_ITERATE_DEGREE {
        return Err(AlgebraError::SizeLimit(format!(
            "iterate degree {degree} exceeds {MAX_ITERATE_DEGREE}"
        )));
    }
    let mut it = f.clone();
    for _ in 1..iterations {
        it = f.compose(&it);
    }
    let base = reducible_values(&f, n);
    let iterate = reducible_values(&it, n);
    let base_set: BTreeSet<i64> = base.iter().copied().collect();
    let difference = iterate.iter().copied().filter(|a| !base_set.contains(a)).collect();
    Ok(StabilityReport {
        f,
        iterations,
        n,
        base,
        iterate,
        difference,
    })
}

/// Integer rational points a = f(q) with |a| <= N, by direct evaluation at
/// q = u / v with small |u|, v. Used as an independent check of predictions.
pub fn values_by_search(f: &UniPoly, n: i64, height: i64) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for v in 1..=height {
        for u in -height..=height {
            let q = rat(u) / rat(v);
            let y = f.eval_rational(&q).rational_part();
            if y.is_integer() && y.abs() <= rat(n) {
                out.insert(y.to_integer().to_i64().unwrap());
            }
        }
    }
    out
}
