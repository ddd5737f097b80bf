//! Block systems of transitive groups.

use std::collections::BTreeSet;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// A partition of the points, blocks sorted and listed by least element.
pub type Partition = Vec<Vec<usize>>;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }

    fn partition(&mut self) -> Partition {
        let n = self.0.len();
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            blocks[r].push(x);
        }
        blocks.into_iter().filter(|b| !b.is_empty()).collect()
    }
}

/// Finest block system with a and b in the same block.
pub fn minimal_block_system(g: &PermGroup, a: usize, b: usize) -> Partition {
    let mut uf = UnionFind((0..g.degree()).collect());
    uf.union(a, b);
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        for s in g.generators() {
            let (u, v) = (s.apply(x), s.apply(y));
            if uf.union(u, v) {
                queue.push((u, v));
            }
        }
    }
    uf.partition()
}

fn join(p: &Partition, q: &Partition, n: usize) -> Partition {
    let mut uf = UnionFind((0..n).collect());
    for b in p.iter().chain(q) {
        for w in b.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    uf.partition()
}

/// All nontrivial block systems of a transitive group, by increasing block size.
pub fn block_systems(g: &PermGroup) -> Vec<Partition> {
    let n = g.degree();
    let mut found: BTreeSet<Partition> = BTreeSet::new();
    for b in 1..n {
        let p = minimal_block_system(g, 0, b);
        if p.len() > 1 {
            found.insert(p);
        }
    }
    loop {
        let current: Vec<Partition> = found.iter().cloned().collect();
        let mut grew = false;
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let p = join(&current[i], &current[j], n);
                if p.len() > 1 && found.insert(p) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<Partition> = found.into_iter().collect();
    out.sort_by_key(|p| (p[0].len(), p.clone()));
    out
}

pub fn is_primitive(g: &PermGroup) -> bool {
    g.is_transitive() && (1..g.degree()).all(|b| minimal_block_system(g, 0, b).len() == 1)
}

pub fn is_invariant(g: &PermGroup, p: &Partition) -> bool {
    let mut index = vec![usize::MAX; g.degree()];
    for (i, b) in p.iter().enumerate() {
        for &x in b {
            index[x] = i;
        }
    }
    if index.contains(&usize::MAX) {
        return false;
    }
    g.generators().iter().all(|s| {
        p.iter().all(|b| {
            let target = index[s.apply(b[0])];
            b.iter().all(|&x| index[s.apply(x)] == target)
        })
    })
}

/// The permutation induced on the blocks by each of `perms`.
pub fn block_action(perms: &[Perm], p: &Partition) -> Result<Vec<Perm>> {
    let n = perms.first().map(|g| g.degree()).unwrap_or(0);
    let mut index = vec![0usize; n];
    for (i, b) in p.iter().enumerate() {
        for &x in b {
            index[x] = i;
        }
    }
    perms
        .iter()
        .map(|s| {
            let images = p.iter().map(|b| index[s.apply(b[0])]).collect();
            Perm::from_images(images).map_err(|_| GroupError::NotInvariant)
        })
        .collect()
}

/// Kernel of the action on the blocks of `p`.
pub fn block_kernel(g: &PermGroup, p: &Partition) -> Result<PermGroup> {
    if !is_invariant(g, p) {
        return Err(GroupError::NotInvariant);
    }
    let images = block_action(g.generators(), p)?;
    g.kernel(&images, p.len())
}

/// Set stabilizer of the block of `p` containing `x`.
pub fn block_stabilizer(g: &PermGroup, p: &Partition, x: usize) -> Result<PermGroup> {
    if !is_invariant(g, p) {
        return Err(GroupError::NotInvariant);
    }
    let images = block_action(g.generators(), p)?;
    let m = p.len();
    let i = p.iter().position(|b| b.contains(&x)).unwrap();
    let sums: Vec<Perm> = g
        .generators()
        .iter()
        .zip(&images)
        .map(|(a, b)| a.direct_sum(b))
        .collect();
    let n = g.degree();
    let big = PermGroup::new(n + m, sums)?;
    let stab = big.pointwise_stabilizer(&[n + i]);
    let points: Vec<usize> = (0..n).collect();
    PermGroup::new(
        n,
        stab.generators().iter().map(|s| s.restrict(&points).unwrap()).collect(),
    )
}

/// Blocks of consecutive points 0..size, size..2 size, ...
pub fn consecutive_blocks(n: usize, size: usize) -> Partition {
    (0..n / size).map(|j| (j * size..(j + 1) * size).collect()).collect()
}
