//! Permutation groups with a Schreier–Sims stabilizer chain.

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use crate::error::{GroupError, Result};
use crate::perm::Perm;

/// Element sets are only materialized up to this order.
pub const MAX_ENUMERATION: u128 = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// transversal[b] maps `point` to b.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(n: usize, point: usize) -> Level {
        let mut transversal = vec![None; n];
        transversal[point] = Some(Perm::identity(n));
        Level {
            point,
            gens: Vec::new(),
            transversal,
            orbit: vec![point],
        }
    }
}

/// A base and strong generating set.
#[derive(Clone, Debug)]
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(n: usize, gens: &[Perm], prefix: &[usize]) -> StabChain {
        let mut chain = StabChain { n, levels: Vec::new() };
        for p in prefix {
            chain.levels.push(Level::new(n, *p));
        }
        for g in gens.iter().filter(|g| !g.is_identity()) {
            let l = match chain.levels.iter().position(|lv| g.apply(lv.point) != lv.point) {
                Some(l) => l,
                None => chain.new_level(g),
            };
            chain.levels[l].gens.push(g.clone());
        }
        for l in 0..chain.levels.len() {
            chain.rebuild_orbit(l);
        }
        let mut i = chain.levels.len();
        while i > 0 {
            let l = i - 1;
            match chain.failing_schreier_generator(l) {
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        chain.new_level(&h);
                    }
                    chain.levels[j].gens.push(h);
                    for m in 0..=j {
                        chain.rebuild_orbit(m);
                    }
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
        chain
    }

    fn new_level(&mut self, g: &Perm) -> usize {
        let point = (0..self.n).find(|&x| g.apply(x) != x).expect("nontrivial element");
        self.levels.push(Level::new(self.n, point));
        self.levels.len() - 1
    }

    /// Generators of the stabilizer of the base points before level l.
    fn level_gens(&self, l: usize) -> impl Iterator<Item = &Perm> {
        self.levels[l..].iter().flat_map(|lv| lv.gens.iter())
    }

    fn rebuild_orbit(&mut self, l: usize) {
        let n = self.n;
        let point = self.levels[l].point;
        let gens: Vec<Perm> = self.level_gens(l).cloned().collect();
        let mut transversal: Vec<Option<Perm>> = vec![None; n];
        transversal[point] = Some(Perm::identity(n));
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let b = orbit[k];
            let ub = transversal[b].clone().unwrap();
            for s in &gens {
                let c = s.apply(b);
                if transversal[c].is_none() {
                    transversal[c] = Some(s.compose(&ub));
                    orbit.push(c);
                }
            }
            k += 1;
        }
        self.levels[l].transversal = transversal;
        self.levels[l].orbit = orbit;
    }

    fn failing_schreier_generator(&self, l: usize) -> Option<(Perm, usize)> {
        let lv = &self.levels[l];
        for &b in &lv.orbit {
            let ub = lv.transversal[b].as_ref().unwrap();
            for s in self.level_gens(l) {
                let c = s.apply(b);
                let uc = lv.transversal[c].as_ref().unwrap();
                let sch = uc.inverse().compose(s).compose(ub);
                if sch.is_identity() {
                    continue;
                }
                if let Some(res) = self.sift_from(l + 1, &sch) {
                    return Some(res);
                }
            }
        }
        None
    }

    /// Sifts g through levels i..; returns the nontrivial residue and the
    /// level at which it stuck.
    fn sift_from(&self, i: usize, g: &Perm) -> Option<(Perm, usize)> {
        let mut h = g.clone();
        for j in i..self.levels.len() {
            let lv = &self.levels[j];
            let b = h.apply(lv.point);
            match &lv.transversal[b] {
                Some(u) => h = u.inverse().compose(&h),
                None => return Some((h, j)),
            }
        }
        (!h.is_identity()).then_some((h, self.levels.len()))
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.sift_from(0, g).is_none()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Strong generators of the stabilizer of the first k base points.
    pub fn stabilizer_gens(&self, k: usize) -> Vec<Perm> {
        if k >= self.levels.len() {
            return Vec::new();
        }
        self.level_gens(k).cloned().collect()
    }

    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.n)];
        for lv in self.levels.iter().rev() {
            let reps: Vec<&Perm> = lv.orbit.iter().map(|&b| lv.transversal[b].as_ref().unwrap()).collect();
            let mut next = Vec::with_capacity(out.len() * reps.len());
            for u in reps {
                for g in &out {
                    next.push(u.compose(g));
                }
            }
            out = next;
        }
        out
    }

    /// A uniformly distributed element from a stream of random indices.
    pub fn element_from(&self, mut pick: impl FnMut(usize) -> usize) -> Perm {
        let mut g = Perm::identity(self.n);
        for lv in self.levels.iter().rev() {
            let b = lv.orbit[pick(lv.orbit.len())];
            g = lv.transversal[b].as_ref().unwrap().compose(&g);
        }
        g
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.order() == other.order() && self.gens.iter().all(|g| other.contains(g))
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            gens: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    /// Generators given in cycle notation, e.g. ["(0 1 2 3)", "(0 2)"].
    pub fn parse(degree: usize, gens: &[&str]) -> Result<PermGroup> {
        let gens = gens
            .iter()
            .map(|s| Perm::parse(degree, s))
            .collect::<Result<Vec<Perm>>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).unwrap());
            gens.push(Perm::from_cycles(n, &[&(0..n).collect::<Vec<_>>()]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> PermGroup {
        let gens = (2..n).map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).unwrap()).collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let c: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![Perm::from_cycles(n, &[&c]).unwrap()]).unwrap()
    }

    /// Dihedral group of order 2n on the vertices of an n-gon.
    pub fn dihedral(n: usize) -> PermGroup {
        let r = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        let s = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        PermGroup::new(n, vec![r, s]).unwrap()
    }

    /// AGL_1(q) = {x -> ax + b} on Z/q, q prime.
    pub fn agl1(q: usize) -> PermGroup {
        let t = Perm::from_images((0..q).map(|x| (x + 1) % q).collect()).unwrap();
        let g = primitive_root(q);
        let m = Perm::from_images((0..q).map(|x| x * g % q).collect()).unwrap();
        PermGroup::new(q, vec![t, m]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.gens, &[]))
    }

    /// A fresh chain whose base starts with `prefix`.
    pub fn chain_with_base(&self, prefix: &[usize]) -> StabChain {
        StabChain::build(self.degree, &self.gens, prefix)
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn check_degree(&self, g: &Perm) -> Result<()> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                got: g.degree(),
            });
        }
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn elements(&self) -> Result<Vec<Perm>> {
        if self.order() > MAX_ENUMERATION {
            return Err(GroupError::SizeLimit(format!(
                "order {} exceeds {MAX_ENUMERATION}",
                self.order()
            )));
        }
        let mut v = self.chain().elements();
        v.sort();
        Ok(v)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .gens
                .iter()
                .all(|g| self.gens.iter().all(|x| self.contains(&x.conjugate_by(g))))
    }

    /// ⟨self, extra⟩.
    pub fn with(&self, extra: &[Perm]) -> PermGroup {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens).unwrap()
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let chain = self.chain_with_base(points);
        PermGroup::new(self.degree, chain.stabilizer_gens(points.len())).unwrap()
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            for g in &self.gens {
                let y = g.apply(out[i]);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Normal closure of `elements` in self.
    pub fn normal_closure(&self, elements: &[Perm]) -> PermGroup {
        let mut n = PermGroup::new(self.degree, elements.to_vec()).unwrap();
        let mut queue: VecDeque<Perm> = n.gens.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = x.conjugate_by(g);
                if !n.contains(&y) {
                    n = n.with(std::slice::from_ref(&y));
                    queue.push_back(y);
                }
            }
        }
        n
    }

    /// [A, B]: the normal closure in ⟨A, B⟩ of the commutators of generators.
    pub fn commutator_subgroup(a: &PermGroup, b: &PermGroup) -> PermGroup {
        let mut comms = Vec::new();
        for x in &a.gens {
            for y in &b.gens {
                let c = Perm::commutator(x, y);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        a.with(&b.gens).normal_closure(&comms)
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        PermGroup::commutator_subgroup(self, self)
    }

    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut out = vec![self.clone()];
        loop {
            let last = out.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            out.push(next);
        }
        out
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|a| self.gens.iter().all(|b| a * b == b * a))
    }

    /// Lower central series G = γ1 > γ2 > ... until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut out = vec![self.clone()];
        loop {
            let last = out.last().unwrap();
            let next = PermGroup::commutator_subgroup(last, self);
            if next.order() == last.order() {
                break;
            }
            out.push(next);
        }
        out
    }

    /// Intersection by enumeration of the smaller group.
    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup> {
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = PermGroup::trivial(self.degree);
        for g in small.elements()? {
            if big.contains(&g) && !out.contains(&g) {
                out = out.with(&[g]);
            }
        }
        Ok(out)
    }

    /// Subgroup of elements satisfying `keep`, assuming they form a subgroup.
    pub fn filter_subgroup(&self, keep: impl Fn(&Perm) -> bool) -> Result<PermGroup> {
        let mut out = PermGroup::trivial(self.degree);
        for g in self.elements()? {
            if keep(&g) && !out.contains(&g) {
                out = out.with(&[g]);
            }
        }
        Ok(out)
    }

    /// Kernel of the homomorphism sending generator i to images[i], where
    /// the images act on m points.
    pub fn kernel(&self, images: &[Perm], m: usize) -> Result<PermGroup> {
        if images.len() != self.gens.len() {
            return Err(GroupError::HypothesisFailed("one image per generator required".into()));
        }
        let n = self.degree;
        let sums: Vec<Perm> = self.gens.iter().zip(images).map(|(g, h)| g.direct_sum(h)).collect();
        let big = PermGroup::new(n + m, sums)?;
        let extra: Vec<usize> = (n..n + m).collect();
        let stab = big.pointwise_stabilizer(&extra);
        let gens = stab
            .gens
            .iter()
            .map(|g| g.restrict(&(0..n).collect::<Vec<_>>()).unwrap())
            .collect();
        PermGroup::new(n, gens)
    }

    /// Sorted element set, used as an equality key.
    pub fn element_key(&self) -> Result<BTreeSet<u64>> {
        Ok(self.elements()?.iter().map(|g| g.rank()).collect())
    }
}

fn primitive_root(q: usize) -> usize {
    if q <= 2 {
        return 1;
    }
    (2..q)
        .find(|&g| {
            let mut x = 1;
            (1..q - 1).all(|_| {
                x = x * g % q;
                x != 1
            })
        })
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(PermGroup::symmetric(8).order(), 40320);
        assert_eq!(PermGroup::alternating(6).order(), 360);
        assert_eq!(PermGroup::dihedral(4).order(), 8);
        assert_eq!(PermGroup::agl1(5).order(), 20);
        assert_eq!(PermGroup::symmetric(12).order(), 479001600);
    }

    #[test]
    fn membership_and_elements() {
        let d4 = PermGroup::dihedral(4);
        assert!(d4.contains(&Perm::parse(4, "(0 2)").unwrap()));
        assert!(!d4.contains(&Perm::parse(4, "(0 1)").unwrap()));
        assert_eq!(d4.elements().unwrap().len(), 8);
    }

    #[test]
    fn stabilizers_and_kernels() {
        let s5 = PermGroup::symmetric(5);
        assert_eq!(s5.pointwise_stabilizer(&[0, 1]).order(), 6);
        // sign homomorphism S4 -> S2
        let s4 = PermGroup::symmetric(4);
        let sign: Vec<Perm> = s4
            .generators()
            .iter()
            .map(|g| {
                if g.cycles().len() % 2 == 0 {
                    Perm::identity(2)
                } else {
                    Perm::parse(2, "(0 1)").unwrap()
                }
            })
            .collect();
        // (0 1) is odd, (0 1 2 3) is odd
        let k = s4.kernel(&sign, 2).unwrap();
        assert_eq!(k.order(), 12);
    }

    #[test]
    fn series() {
        let s4 = PermGroup::symmetric(4);
        let orders: Vec<u128> = s4.derived_series().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(s4.is_solvable());
        assert!(!PermGroup::symmetric(5).is_solvable());
        let lcs: Vec<u128> = PermGroup::dihedral(4)
            .lower_central_series()
            .iter()
            .map(|g| g.order())
            .collect();
        assert_eq!(lcs, vec![8, 2, 1]);
    }
}
