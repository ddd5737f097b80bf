//! Subgroups of S_8 containing the 8-cycle (0 1 ... 7), up to conjugacy, and
//! the two-action scan over the solvable ones.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::{self, Partition};
use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Perm;

const N: usize = 8;
const FACT8: usize = 40320;

pub fn full_cycle() -> Perm {
    Perm::from_images((0..N).map(|i| (i + 1) % N).collect()).unwrap()
}

/// Invariants recorded for each enumerated group; the transitive-group
/// catalog numbering is not reproduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub order: u128,
    pub transitive: bool,
    pub primitive: bool,
    pub solvable: bool,
    /// Block size of each nontrivial block system.
    pub block_sizes: Vec<usize>,
    pub abelianization: u128,
    /// (cycle type, count) over all elements.
    pub cycle_types: Vec<(Vec<usize>, usize)>,
}

pub fn fingerprint(g: &PermGroup) -> Result<Fingerprint> {
    let mut types: HashMap<Vec<usize>, usize> = HashMap::new();
    for x in g.elements()? {
        *types.entry(x.cycle_type()).or_insert(0) += 1;
    }
    let mut cycle_types: Vec<(Vec<usize>, usize)> = types.into_iter().collect();
    cycle_types.sort();
    Ok(Fingerprint {
        order: g.order(),
        transitive: g.is_transitive(),
        primitive: blocks::is_primitive(g),
        solvable: g.is_solvable(),
        block_sizes: blocks::block_systems(g).iter().map(|p| p[0].len()).collect(),
        abelianization: g.order() / g.derived_subgroup().order(),
        cycle_types,
    })
}

#[derive(Clone, Debug)]
pub struct Deg8Group {
    pub group: PermGroup,
    pub fingerprint: Fingerprint,
}

/// x with x a x^-1 = b for full cycles a, b, x(0) = 0.
fn cycle_conjugator(a: &Perm, b: &Perm) -> Perm {
    let mut images = vec![0; N];
    let (mut u, mut v) = (0usize, 0usize);
    for _ in 0..N {
        images[u] = v;
        u = a.apply(u);
        v = b.apply(v);
    }
    Perm::from_images(images).unwrap()
}

/// Both groups contain the fixed 8-cycle c. A conjugator x with x H1 x^-1 =
/// H2 sends some 8-cycle of H1 to c, and is unique up to ⟨c⟩ ≤ H2 once that
/// 8-cycle is chosen.
pub fn conjugate_containing_cycle(h1: &PermGroup, h2: &PermGroup) -> Result<Option<Perm>> {
    if h1.order() != h2.order() {
        return Ok(None);
    }
    let c = full_cycle();
    for a in h1.elements()?.iter().filter(|a| a.is_full_cycle()) {
        let x = cycle_conjugator(a, &c);
        if h1.generators().iter().all(|g| h2.contains(&g.conjugate_by(&x))) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

struct Catalog {
    groups: Vec<Deg8Group>,
    by_print: HashMap<Fingerprint, Vec<usize>>,
    seen: HashSet<Vec<u64>>,
}

impl Catalog {
    /// Adds g unless it is conjugate to a known group; returns whether new.
    fn offer(&mut self, g: PermGroup) -> Result<bool> {
        let mut key: Vec<u64> = g.elements()?.iter().map(|x| x.rank()).collect();
        key.sort_unstable();
        if !self.seen.insert(key) {
            return Ok(false);
        }
        let print = fingerprint(&g)?;
        if let Some(ids) = self.by_print.get(&print) {
            for &i in ids {
                if conjugate_containing_cycle(&g, &self.groups[i].group)?.is_some() {
                    return Ok(false);
                }
            }
        }
        self.by_print.entry(print.clone()).or_default().push(self.groups.len());
        self.groups.push(Deg8Group {
            group: g,
            fingerprint: print,
        });
        Ok(true)
    }
}

/// All subgroups of S_8 containing (0 1 ... 7), one per S_8-conjugacy
/// class, sorted by order.
pub fn enumerate_deg8_full_cycle() -> Result<Vec<Deg8Group>> {
    let mut catalog = Catalog {
        groups: Vec::new(),
        by_print: HashMap::new(),
        seen: HashSet::new(),
    };
    catalog.offer(PermGroup::cyclic(N))?;
    let s8_order = FACT8 as u128;
    let mut have_s8 = false;
    let mut next = 0;
    while next < catalog.groups.len() {
        let h = catalog.groups[next].group.clone();
        next += 1;
        if h.order() == s8_order {
            continue;
        }
        let elements = h.elements()?;
        let mut covered = vec![false; FACT8];
        let mut reps = Vec::new();
        for r in 0..FACT8 {
            if covered[r] {
                continue;
            }
            let g = Perm::unrank(N, r as u64);
            for x in &elements {
                covered[g.compose(x).rank() as usize] = true;
            }
            if !h.contains(&g) {
                reps.push(g);
            }
        }
        let overgroups: Vec<PermGroup> = reps.par_iter().map(|g| h.with(std::slice::from_ref(g))).collect();
        for k in overgroups {
            if k.order() == s8_order {
                if !have_s8 {
                    have_s8 = true;
                    catalog.offer(k)?;
                }
                continue;
            }
            catalog.offer(k)?;
        }
    }
    let mut out = catalog.groups;
    out.sort_by_key(|g| (g.fingerprint.order, g.fingerprint.block_sizes.clone()));
    Ok(out)
}

/// A small group with elements numbered 0..order, identity first.
struct Indexed {
    elements: Vec<Perm>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

impl Indexed {
    fn new(g: &PermGroup) -> Result<Indexed> {
        let mut elements = g.elements()?;
        let id = Perm::identity(g.degree());
        elements.retain(|x| *x != id);
        elements.insert(0, id);
        let index: HashMap<Perm, u16> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u16))
            .collect();
        let n = elements.len();
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = index[&elements[i].compose(&elements[j])];
            }
        }
        let inv = elements.iter().map(|x| index[&x.inverse()]).collect();
        Ok(Indexed { elements, mul, inv })
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    fn empty(&self) -> Bits {
        vec![0; self.len().div_ceil(64)]
    }

    fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.m(acc, a))
    }

    fn conj(&self, g: usize, x: usize) -> usize {
        self.m(self.m(g, x), self.inv[g] as usize)
    }

    fn subset(&self, keep: impl Fn(&Perm) -> bool) -> Bits {
        let mut b = self.empty();
        for (i, x) in self.elements.iter().enumerate() {
            if keep(x) {
                set(&mut b, i);
            }
        }
        b
    }

    fn conjugate_set(&self, s: &Bits, g: usize) -> Bits {
        let mut out = self.empty();
        for x in (0..self.len()).filter(|&x| bit(s, x)) {
            set(&mut out, self.conj(g, x));
        }
        out
    }

    /// All subgroups whose order divides `target`, by cyclic extension.
    fn subgroups_dividing(&self, target: usize) -> Vec<Bits> {
        let mut trivial = self.empty();
        set(&mut trivial, 0);
        let mut all: HashSet<Bits> = HashSet::from([trivial.clone()]);
        let mut layer = vec![(trivial, Vec::<usize>::new())];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for (s, gens) in &layer {
                let size = count(s);
                let mut covered = s.clone();
                for x in 0..self.len() {
                    if bit(&covered, x) {
                        continue;
                    }
                    // mark the coset xS
                    for y in (0..self.len()).filter(|&y| bit(s, y)) {
                        set(&mut covered, self.m(x, y));
                    }
                    if !gens.iter().all(|&g| bit(s, self.conj(x, g))) {
                        continue;
                    }
                    let Some(p) = (2..=target / size).find(|&p| bit(s, self.pow(x, p))) else {
                        continue;
                    };
                    if (2..p).any(|d| p % d == 0) || !target.is_multiple_of(size * p) {
                        continue;
                    }
                    let mut t = self.empty();
                    let mut xk = 0;
                    for _ in 0..p {
                        for y in (0..self.len()).filter(|&y| bit(s, y)) {
                            set(&mut t, self.m(xk, y));
                        }
                        xk = self.m(xk, x);
                    }
                    if all.insert(t.clone()) {
                        let mut g2 = gens.clone();
                        g2.push(x);
                        next.push((t, g2));
                    }
                }
            }
            layer = next;
        }
        all.into_iter().collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoActionConfig {
    pub group_order: u128,
    /// Generators of the second point stabilizer.
    pub stabilizer: Vec<String>,
    pub conjugate_to_first: bool,
    pub resolved_by: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoActionScan {
    pub groups_examined: usize,
    /// Orders of groups too large for the element table.
    pub skipped: Vec<u128>,
    /// Unresolved pairs with conjugate stabilizers: f(X) - f(Y) up to
    /// linear substitution, which is the diagonal case.
    pub diagonal_only: usize,
    pub second_actions: usize,
    pub intransitive_pairs: usize,
    pub survivors: Vec<TwoActionConfig>,
    pub configurations: Vec<TwoActionConfig>,
}

/// Overgroups of a point stabilizer: stabilizers of the blocks through the
/// point, for the action of the indexed group on `points` given per element.
fn block_overgroups(ix: &Indexed, action: &[Perm]) -> Result<Vec<Bits>> {
    let gens: Vec<Perm> = action.to_vec();
    let image = PermGroup::new(action[0].degree(), gens)?;
    let mut out = Vec::new();
    for p in blocks::block_systems(&image) {
        let b0: &Vec<usize> = p.iter().find(|b| b.contains(&0)).unwrap();
        out.push(ix.subset_by_index(|i| {
            b0.contains(&action[i].apply(0)) && b0.iter().all(|x| b0.contains(&action[i].apply(*x)))
        }));
    }
    Ok(out)
}

impl Indexed {
    fn subset_by_index(&self, keep: impl Fn(usize) -> bool) -> Bits {
        let mut b = self.empty();
        for i in 0..self.len() {
            if keep(i) {
                set(&mut b, i);
            }
        }
        b
    }

    /// Action of every element on the left cosets of `y`, coset of 1 = point 0.
    fn coset_action(&self, y: &Bits) -> Vec<Perm> {
        let n = self.len();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for h in (0..n).filter(|&h| bit(y, h)) {
                coset_of[self.m(g, h)] = id;
            }
        }
        (0..n)
            .map(|g| Perm::from_images(reps.iter().map(|&r| coset_of[self.m(g, r)]).collect()).unwrap())
            .collect()
    }
}

fn product_is_proper(x: &Bits, y: &Bits, order: usize) -> bool {
    count(x) * count(y) / count(&and(x, y)) < order
}

/// Largest group order handled by [`two_action_scan`].
pub const SCAN_MAX_ORDER: u128 = 2000;

/// For each enumerated group H of order at most [`SCAN_MAX_ORDER`] and each faithful transitive
/// degree-8 action H/Y in which some element acts as an 8-cycle in both
/// actions: when the point stabilizer X = H_0 is intransitive on H/Y, look
/// for overgroups X ≤ X', Y ≤ Y' (not both equal, both proper) keeping X'
/// intransitive on H/Y'. Pairs without such overgroups are survivors.
pub fn two_action_scan(groups: &[Deg8Group]) -> Result<TwoActionScan> {
    let mut report = TwoActionScan {
        groups_examined: 0,
        skipped: Vec::new(),
        diagonal_only: 0,
        second_actions: 0,
        intransitive_pairs: 0,
        survivors: Vec::new(),
        configurations: Vec::new(),
    };
    for entry in groups {
        if entry.fingerprint.order > SCAN_MAX_ORDER {
            report.skipped.push(entry.fingerprint.order);
            continue;
        }
        report.groups_examined += 1;
        let h = &entry.group;
        let ix = Indexed::new(h)?;
        let order = ix.len();
        let x = ix.subset(|g| g.apply(0) == 0);
        let natural: Vec<Perm> = ix.elements.clone();
        let x_over = block_overgroups(&ix, &natural)?;
        let cycles: Vec<usize> = (0..order).filter(|&i| ix.elements[i].is_full_cycle()).collect();
        for y in ix
            .subgroups_dividing(order / N)
            .into_iter()
            .filter(|y| count(y) == order / N)
        {
            let conjugates: Vec<Bits> = (0..order).map(|g| ix.conjugate_set(&y, g)).collect();
            let core = conjugates.iter().skip(1).fold(conjugates[0].clone(), |a, b| and(&a, b));
            if count(&core) != 1 {
                continue;
            }
            let regular_cycle = cycles.iter().any(|&c| {
                let c4 = ix.pow(c, 4);
                conjugates.iter().all(|s| !bit(s, c4))
            });
            if !regular_cycle {
                continue;
            }
            report.second_actions += 1;
            if !product_is_proper(&x, &y, order) {
                continue;
            }
            report.intransitive_pairs += 1;
            let y_over = block_overgroups(&ix, &ix.coset_action(&y))?;
            let mut xs = vec![x.clone()];
            xs.extend(x_over.iter().cloned());
            let mut ys = vec![y.clone()];
            ys.extend(y_over.iter().cloned());
            let mut resolved_by = None;
            'search: for (i, xp) in xs.iter().enumerate() {
                for (j, yp) in ys.iter().enumerate() {
                    if (i, j) != (0, 0) && product_is_proper(xp, yp, order) {
                        resolved_by = Some((count(xp), count(yp)));
                        break 'search;
                    }
                }
            }
            let gens: Vec<String> = (0..order)
                .filter(|&i| bit(&y, i))
                .map(|i| ix.elements[i].to_string())
                .collect();
            let config = TwoActionConfig {
                group_order: order as u128,
                stabilizer: gens,
                conjugate_to_first: conjugates.contains(&x),
                resolved_by,
            };
            if config.resolved_by.is_none() {
                if config.conjugate_to_first {
                    report.diagonal_only += 1;
                } else {
                    report.survivors.push(config.clone());
                }
            }
            report.configurations.push(config);
        }
    }
    Ok(report)
}

/// Block systems of an enumerated group, for reports.
pub fn systems(g: &PermGroup) -> Vec<Partition> {
    blocks::block_systems(g)
}
