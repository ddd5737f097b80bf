//! Wreath and direct products.

use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Largest point count a product action may produce.
pub const DEFAULT_MAX_POINTS: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WreathAction {
    Imprimitive,
    Product,
}

/// A ≀ B with A of degree m and B of degree d.
///
/// Imprimitive: point j*m + i is point i of block j. Product: the tuple
/// (x_0, ..., x_{d-1}) is the point sum x_k m^k.
pub fn wreath(a: &PermGroup, b: &PermGroup, action: WreathAction, max_points: usize) -> Result<PermGroup> {
    let (m, d) = (a.degree(), b.degree());
    match action {
        WreathAction::Imprimitive => {
            let n = m * d;
            if n > max_points {
                return Err(GroupError::SizeLimit(format!("{n} points exceed {max_points}")));
            }
            let mut gens = Vec::new();
            for j in 0..d {
                let place: Vec<usize> = (j * m..(j + 1) * m).collect();
                gens.extend(a.generators().iter().map(|g| g.embed(n, &place)));
            }
            for s in b.generators() {
                let images = (0..n).map(|p| s.apply(p / m) * m + p % m).collect();
                gens.push(Perm::from_images(images)?);
            }
            PermGroup::new(n, gens)
        }
        WreathAction::Product => {
            let n = (m as u128)
                .checked_pow(d as u32)
                .filter(|&n| n <= max_points as u128)
                .ok_or_else(|| GroupError::SizeLimit(format!("{m}^{d} points exceed {max_points}")))?
                as usize;
            let digits = |p: usize| -> Vec<usize> {
                let mut v = Vec::with_capacity(d);
                let mut p = p;
                for _ in 0..d {
                    v.push(p % m);
                    p /= m;
                }
                v
            };
            let number = |v: &[usize]| v.iter().rev().fold(0, |acc, &x| acc * m + x);
            let mut gens = Vec::new();
            for k in 0..d {
                for g in a.generators() {
                    let images = (0..n)
                        .map(|p| {
                            let mut v = digits(p);
                            v[k] = g.apply(v[k]);
                            number(&v)
                        })
                        .collect();
                    gens.push(Perm::from_images(images)?);
                }
            }
            for s in b.generators() {
                let images = (0..n)
                    .map(|p| {
                        let v = digits(p);
                        let mut w = vec![0; d];
                        for k in 0..d {
                            w[s.apply(k)] = v[k];
                        }
                        number(&w)
                    })
                    .collect();
                gens.push(Perm::from_images(images)?);
            }
            PermGroup::new(n, gens)
        }
    }
}

/// A × B acting on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (m, n) = (a.degree(), b.degree());
    let mut gens: Vec<Perm> = a
        .generators()
        .iter()
        .map(|g| g.direct_sum(&Perm::identity(n)))
        .collect();
    gens.extend(b.generators().iter().map(|g| Perm::identity(m).direct_sum(g)));
    PermGroup::new(m + n, gens).unwrap()
}

/// {(g, ..., g)} acting on k disjoint copies of the points of A.
pub fn diagonal(a: &PermGroup, k: usize) -> PermGroup {
    let m = a.degree();
    let gens = a
        .generators()
        .iter()
        .map(|g| {
            let images = (0..m * k).map(|p| (p / m) * m + g.apply(p % m)).collect();
            Perm::from_images(images).unwrap()
        })
        .collect();
    PermGroup::new(m * k, gens).unwrap()
}
