//! Elementary abelian groups F_q^r as coordinate vector spaces.

use serde::Serialize;

use crate::group::PermGroup;

#[derive(Clone, Debug, Serialize)]
pub struct ElemAbelianModule {
    pub q: u64,
    /// Length of the coordinate vectors.
    pub ambient: usize,
    /// Reduced row echelon basis.
    pub basis: Vec<Vec<u64>>,
    /// Group permuting the coordinates, when the module carries one.
    #[serde(skip)]
    pub acting: Option<PermGroup>,
}

fn inv_mod(a: u64, q: u64) -> u64 {
    let mut r = 1;
    let mut b = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

impl ElemAbelianModule {
    /// Span of `vectors` in F_q^ambient.
    pub fn span(q: u64, ambient: usize, vectors: &[Vec<u64>]) -> ElemAbelianModule {
        let mut m = ElemAbelianModule {
            q,
            ambient,
            basis: Vec::new(),
            acting: None,
        };
        for v in vectors {
            m.add_vector(v);
        }
        m
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let q = self.q;
        let mut w: Vec<u64> = v.iter().map(|x| x % q).collect();
        for row in &self.basis {
            let pivot = row.iter().position(|&x| x != 0).unwrap();
            let c = w[pivot];
            if c != 0 {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = (*wi + q - c * ri % q) % q;
                }
            }
        }
        w
    }

    /// Adds v to the span; returns whether the rank grew.
    pub fn add_vector(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let q = self.q;
        let mut w = self.reduce(v);
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pivot], q);
        for x in w.iter_mut() {
            *x = *x * inv % q;
        }
        for row in self.basis.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (ri, wi) in row.iter_mut().zip(&w) {
                    *ri = (*ri + q - c * wi % q) % q;
                }
            }
        }
        self.basis.push(w);
        self.basis.sort_by_key(|r| r.iter().position(|&x| x != 0));
        true
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> u128 {
        (self.q as u128).pow(self.rank() as u32)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_submodule_of(&self, other: &ElemAbelianModule) -> bool {
        self.q == other.q && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &ElemAbelianModule) -> bool {
        self.q == other.q && self.ambient == other.ambient && self.basis == other.basis
    }

    /// All elements; only for small modules.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; self.ambient]];
        for row in &self.basis {
            let mut next = Vec::with_capacity(out.len() * self.q as usize);
            for v in &out {
                for c in 0..self.q {
                    next.push(v.iter().zip(row).map(|(a, b)| (a + c * b) % self.q).collect());
                }
            }
            out = next;
        }
        out
    }

    /// Closed under the coordinate action of the acting group.
    pub fn is_invariant(&self) -> bool {
        let Some(g) = &self.acting else {
            return true;
        };
        g.generators().iter().all(|s| {
            self.basis.iter().all(|v| {
                let mut w = vec![0u64; self.ambient];
                for (i, &x) in v.iter().enumerate() {
                    w[s.apply(i)] = x;
                }
                self.contains(&w)
            })
        })
    }
}

/// I_d(q): vectors of F_q^d with coordinate sum zero, with S_d permuting
/// coordinates.
pub fn augmentation_module(d: usize, q: u64) -> ElemAbelianModule {
    let vectors: Vec<Vec<u64>> = (0..d.saturating_sub(1))
        .map(|i| {
            let mut v = vec![0u64; d];
            v[i] = 1;
            v[i + 1] = q - 1;
            v
        })
        .collect();
    let mut m = ElemAbelianModule::span(q, d, &vectors);
    m.acting = Some(PermGroup::symmetric(d));
    m
}
