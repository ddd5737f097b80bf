//! Monodromy evidence from factorization patterns of f(X) - a mod p.

use std::collections::{BTreeMap, BTreeSet};

use sepred_core::scan::cycle_types;
use sepred_core::UniPoly;
use serde::Serialize;

use crate::error::Result;
use crate::group::PermGroup;

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub trials: usize,
    /// Observed cycle types with their counts.
    pub cycle_types: Vec<(Vec<usize>, usize)>,
    /// (candidate name, every observed type occurs in the candidate).
    pub consistent: Vec<(String, bool)>,
}

pub fn cycle_types_of(g: &PermGroup) -> Result<BTreeSet<Vec<usize>>> {
    Ok(g.elements()?.iter().map(|x| x.cycle_type()).collect())
}

/// Samples `trials` unramified specializations; heuristic evidence only.
pub fn monodromy_probe(
    f: &UniPoly,
    trials: usize,
    seed: u64,
    candidates: &[(String, PermGroup)],
) -> Result<ProbeReport> {
    let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for t in cycle_types(f, trials.max(1), seed) {
        *counts.entry(t).or_insert(0) += 1;
    }
    let mut consistent = Vec::new();
    for (name, g) in candidates {
        let types = cycle_types_of(g)?;
        consistent.push((
            name.clone(),
            g.degree() == f.degree() && counts.keys().all(|t| types.contains(t)),
        ));
    }
    Ok(ProbeReport {
        trials,
        cycle_types: counts.into_iter().collect(),
        consistent,
    })
}
