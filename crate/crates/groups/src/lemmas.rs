//! Subdirect products, socles and the lemmas on subgroups of AGL_1(q) ≀ S_d.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::blocks::{self, consecutive_blocks, Partition};
use crate::error::{GroupError, Result};
use crate::group::{PermGroup, MAX_ENUMERATION};
use crate::module::ElemAbelianModule;
use crate::perm::Perm;

fn block_fixing(k: &PermGroup, p: &Partition) -> Result<()> {
    let all: usize = p.iter().map(|b| b.len()).sum();
    if all != k.degree() || !blocks::is_invariant(k, p) {
        return Err(GroupError::NotInvariant);
    }
    for g in k.generators() {
        for b in p {
            if !b.iter().all(|x| b.contains(&g.apply(*x))) {
                return Err(GroupError::NotInvariant);
            }
        }
    }
    Ok(())
}

/// K ≤ ∏ Sym(block) is diagonal when every projection to a block is injective.
pub fn is_diagonal_subdirect(k: &PermGroup, partition: &Partition) -> Result<bool> {
    block_fixing(k, partition)?;
    Ok(partition.iter().all(|b| k.pointwise_stabilizer(b).order() == 1))
}

/// Projection of K to the points of `block`, as a group on 0..block.len().
pub fn projection(k: &PermGroup, block: &[usize]) -> Result<PermGroup> {
    let gens = k
        .generators()
        .iter()
        .map(|g| g.restrict(block).ok_or(GroupError::NotInvariant))
        .collect::<Result<Vec<Perm>>>()?;
    PermGroup::new(block.len(), gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SocleContext {
    /// Subdirect power of AGL_1(q), q prime, on consecutive blocks of size q.
    Agl1(usize),
    /// Subdirect power of S_4 on consecutive blocks of size 4.
    S4,
}

/// x -> a x + b on Z/q from a permutation of 0..q.
pub fn affine_parts(g: &Perm, q: usize) -> Option<(usize, usize)> {
    let b = g.apply(0);
    let a = (g.apply(1 % q) + q - b) % q;
    (a != 0 && (0..q).all(|x| g.apply(x) == (a * x + b) % q)).then_some((a, b))
}

/// For g ∈ AGL_1(q) ≀ S_d on d consecutive blocks of size q: the block
/// permutation and the multiplier and shift on each block.
pub fn wreath_parts(g: &Perm, q: usize) -> Option<(Perm, Vec<(usize, usize)>)> {
    let d = g.degree() / q;
    let mut pi = Vec::with_capacity(d);
    let mut parts = Vec::with_capacity(d);
    for j in 0..d {
        let target = g.apply(j * q) / q;
        let local: Vec<usize> = (0..q)
            .map(|x| {
                let y = g.apply(j * q + x);
                (y / q == target).then_some(y % q)
            })
            .collect::<Option<Vec<usize>>>()?;
        parts.push(affine_parts(&Perm::from_images(local).ok()?, q)?);
        pi.push(target);
    }
    Some((Perm::from_images(pi).ok()?, parts))
}

/// Image of g in S_d ⋉ (F_q^*)^d acting on the pairs (j, u), u ≠ 0.
fn multiplier_action(g: &Perm, q: usize) -> Option<Perm> {
    let (pi, parts) = wreath_parts(g, q)?;
    let d = pi.degree();
    let m = q - 1;
    let images = (0..d * m)
        .map(|p| {
            let (j, u) = (p / m, p % m + 1);
            pi.apply(j) * m + (parts[j].0 * u % q) - 1
        })
        .collect();
    Perm::from_images(images).ok()
}

/// G ∩ C_q^d for G ≤ AGL_1(q) ≀ S_d, as a permutation group.
pub fn base_intersection(g: &PermGroup, q: usize) -> Result<PermGroup> {
    let d = g.degree() / q;
    let images = g
        .generators()
        .iter()
        .map(|s| multiplier_action(s, q))
        .collect::<Option<Vec<Perm>>>()
        .ok_or_else(|| GroupError::HypothesisFailed(format!("not inside AGL_1({q}) wreath S_{d}")))?;
    if images.is_empty() {
        return Ok(PermGroup::trivial(g.degree()));
    }
    g.kernel(&images, d * (q - 1))
}

/// Translation vector in F_q^d of an element of C_q^d.
pub fn translation_vector(g: &Perm, q: usize) -> Vec<u64> {
    (0..g.degree() / q)
        .map(|j| ((g.apply(j * q) + q - j * q) % q) as u64)
        .collect()
}

/// Coordinates in F_2^{2n} of an element of V_4^n; V_4 acts as x -> x xor c.
fn klein_vector(g: &Perm) -> Vec<u64> {
    (0..g.degree() / 4)
        .flat_map(|j| {
            let c = g.apply(4 * j) - 4 * j;
            [(c & 1) as u64, ((c >> 1) & 1) as u64]
        })
        .collect()
}

/// Action of S_4 on its three pairings {{0, t}, rest}, t = 1, 2, 3.
fn pairing_action(g: &Perm) -> Perm {
    let images = (1..4)
        .map(|t| {
            let (a, b) = (g.apply(0), g.apply(t));
            let partner = if a == 0 {
                b
            } else if b == 0 {
                a
            } else {
                6 - a - b
            };
            partner - 1
        })
        .collect();
    Perm::from_images(images).unwrap()
}

/// soc(K) = K ∩ C_p^{rn} for subdirect powers of AGL_1(q) or S_4 whose
/// projections contain C_q, respectively A_4.
pub fn socle_solvable(k: &PermGroup, context: SocleContext) -> Result<ElemAbelianModule> {
    let size = match context {
        SocleContext::Agl1(q) => q,
        SocleContext::S4 => 4,
    };
    if size == 0 || !k.degree().is_multiple_of(size) {
        return Err(GroupError::HypothesisFailed(format!(
            "degree {} is not a multiple of {size}",
            k.degree()
        )));
    }
    let p = consecutive_blocks(k.degree(), size);
    block_fixing(k, &p).map_err(|_| GroupError::HypothesisFailed("K must fix every block".into()))?;
    for (j, b) in p.iter().enumerate() {
        let proj = projection(k, b)?;
        match context {
            SocleContext::Agl1(q) => {
                if !proj.generators().iter().all(|g| affine_parts(g, q).is_some()) {
                    return Err(GroupError::HypothesisFailed(format!(
                        "projection {j} is not inside AGL_1({q})"
                    )));
                }
                if proj.order() % q as u128 != 0 {
                    return Err(GroupError::HypothesisFailed(format!(
                        "projection {j} does not contain C_{q}"
                    )));
                }
            }
            SocleContext::S4 => {
                if proj.order() % 12 != 0 {
                    return Err(GroupError::HypothesisFailed(format!(
                        "projection {j} does not contain A_4"
                    )));
                }
            }
        }
    }
    match context {
        SocleContext::Agl1(q) => {
            let base = base_intersection(k, q)?;
            let vs: Vec<Vec<u64>> = base.generators().iter().map(|g| translation_vector(g, q)).collect();
            Ok(ElemAbelianModule::span(q as u64, p.len(), &vs))
        }
        SocleContext::S4 => {
            let n = p.len();
            let images: Vec<Perm> = k
                .generators()
                .iter()
                .map(|g| {
                    let parts: Vec<Perm> = p.iter().map(|b| pairing_action(&g.restrict(b).unwrap())).collect();
                    parts.iter().skip(1).fold(parts[0].clone(), |acc, x| acc.direct_sum(x))
                })
                .collect();
            let base = if images.is_empty() {
                PermGroup::trivial(k.degree())
            } else {
                k.kernel(&images, 3 * n)?
            };
            let vs: Vec<Vec<u64>> = base.generators().iter().map(klein_vector).collect();
            Ok(ElemAbelianModule::span(2, 2 * n, &vs))
        }
    }
}

/// Conjugacy classes by enumeration; one representative per class.
pub fn class_representatives(g: &PermGroup) -> Result<Vec<Perm>> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut reps = Vec::new();
    for x in g.elements()? {
        if seen.contains(&x) {
            continue;
        }
        reps.push(x.clone());
        let mut stack = vec![x.clone()];
        seen.insert(x);
        while let Some(y) = stack.pop() {
            for s in g.generators() {
                let z = y.conjugate_by(s);
                if seen.insert(z.clone()) {
                    stack.push(z);
                }
            }
        }
    }
    Ok(reps)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Minimal normal subgroups: the minimal members among the normal closures
/// of elements of prime order.
pub fn minimal_normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut closures: Vec<PermGroup> = Vec::new();
    for x in class_representatives(g)? {
        if !is_prime(x.order()) {
            continue;
        }
        let n = g.normal_closure(&[x]);
        if !closures.contains(&n) {
            closures.push(n);
        }
    }
    let minimal = closures
        .iter()
        .filter(|n| !closures.iter().any(|m| m.order() < n.order() && m.is_subgroup_of(n)))
        .cloned()
        .collect();
    Ok(minimal)
}

/// soc(G) as the subgroup generated by all minimal normal subgroups.
pub fn brute_force_socle(g: &PermGroup) -> Result<PermGroup> {
    let gens: Vec<Perm> = minimal_normal_subgroups(g)?
        .iter()
        .flat_map(|n| n.generators().to_vec())
        .collect();
    PermGroup::new(g.degree(), gens)
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    pub q: usize,
    pub d: usize,
    pub g_q_order: u128,
    pub n_q_order: u128,
    pub index: u128,
    pub index_divides_q: bool,
    /// σ is a qd-cycle and gcd(d, q) = 1, so G_q = N_q is asserted too.
    pub second_part_applies: bool,
    pub equal: bool,
    pub holds: bool,
}

/// Checks [G_q : N_q] | q, and G_q = N_q when σ is a qd-cycle with gcd(d, q) = 1.
pub fn verify_index_lemma(g: &PermGroup, n: &PermGroup, sigma: &Perm, q: usize) -> Result<IndexReport> {
    let fail = |m: &str| GroupError::HypothesisFailed(m.to_string());
    if q < 2 || !g.degree().is_multiple_of(q) {
        return Err(fail("degree must be a multiple of the prime q"));
    }
    g.check_degree(sigma)?;
    let d = g.degree() / q;
    if !g.generators().iter().all(|s| wreath_parts(s, q).is_some()) {
        return Err(fail("G is not inside AGL_1(q) wreath S_d"));
    }
    if !n.is_normal_in(g) {
        return Err(fail("N is not a normal subgroup of G"));
    }
    if !n.contains(sigma) {
        return Err(fail("sigma is not in N"));
    }
    let (pi, _) = wreath_parts(sigma, q).ok_or_else(|| fail("sigma is not inside AGL_1(q) wreath S_d"))?;
    if !pi.is_full_cycle() {
        return Err(fail("sigma does not map to a d-cycle"));
    }
    let sd = sigma.pow(d as u64);
    match wreath_parts(&sd, q) {
        Some((p, parts)) if p.is_identity() && parts.iter().all(|&(a, _)| a == 1) => {}
        _ => return Err(fail("sigma^d is not in C_q^d")),
    }
    let gq = base_intersection(g, q)?.order();
    let nq = base_intersection(n, q)?.order();
    let index = gq / nq;
    let index_divides_q = gq % nq == 0 && (q as u128).is_multiple_of(index);
    let second_part_applies = sigma.is_full_cycle() && num_integer::gcd(d, q) == 1;
    let equal = gq == nq;
    Ok(IndexReport {
        q,
        d,
        g_q_order: gq,
        n_q_order: nq,
        index,
        index_divides_q,
        second_part_applies,
        equal,
        holds: index_divides_q && (!second_part_applies || equal),
    })
}

/// (p, a) with |G| = p^a, if G is a nontrivial p-group.
pub fn prime_power(order: u128) -> Option<(u128, u32)> {
    if order < 2 {
        return None;
    }
    let p = (2..=order).find(|d| order.is_multiple_of(*d))?;
    let mut m = order;
    let mut a = 0;
    while m.is_multiple_of(p) {
        m /= p;
        a += 1;
    }
    (m == 1).then_some((p, a))
}

/// Length of the lower central series of a p-group.
pub fn nilpotency_class(q: &PermGroup) -> Result<usize> {
    if q.order() == 1 {
        return Ok(0);
    }
    prime_power(q.order()).ok_or(GroupError::NotPGroup(q.order()))?;
    let series = q.lower_central_series();
    if series.last().unwrap().order() != 1 {
        return Err(GroupError::NotPGroup(q.order()));
    }
    Ok(series.len() - 1)
}

/// A Sylow p-subgroup, grown one normalizing element at a time.
pub fn sylow_subgroup(g: &PermGroup, p: u128) -> Result<PermGroup> {
    let mut target = 1u128;
    let mut m = g.order();
    while m.is_multiple_of(p) {
        m /= p;
        target *= p;
    }
    let elements = g.elements()?;
    let mut sylow = PermGroup::trivial(g.degree());
    while sylow.order() < target {
        let x = elements
            .iter()
            .find(|x| {
                !sylow.contains(x)
                    && sylow.contains(&x.pow(p as u64))
                    && sylow.generators().iter().all(|s| sylow.contains(&s.conjugate_by(x)))
            })
            .expect("a p-element normalizing a non-Sylow p-subgroup exists")
            .clone();
        sylow = sylow.with(&[x]);
    }
    Ok(sylow)
}

#[derive(Clone, Debug, Serialize)]
pub struct LargenessReport {
    pub blocks: Partition,
    pub kernel_order: u128,
    pub socle_order: u128,
    pub socle_cyclic: bool,
    /// |ker ∩ ∏ soc(Mon(g))|.
    pub kernel_socle_order: u128,
    pub full: bool,
    pub cyclic_alternative: bool,
    pub large: bool,
    pub named_exception: Option<String>,
}

/// Elements g_j of G with g_j(block 0) = block j.
fn block_transversal(g: &PermGroup, p: &Partition) -> Result<Vec<Perm>> {
    let images = blocks::block_action(g.generators(), p)?;
    let mut reps: Vec<Option<Perm>> = vec![None; p.len()];
    reps[0] = Some(Perm::identity(g.degree()));
    let mut queue = vec![0usize];
    while let Some(j) = queue.pop() {
        for (s, img) in g.generators().iter().zip(&images) {
            let k = img.apply(j);
            if reps[k].is_none() {
                reps[k] = Some(s.compose(reps[j].as_ref().unwrap()));
                queue.push(k);
            }
        }
    }
    reps.into_iter()
        .collect::<Option<Vec<Perm>>>()
        .ok_or(GroupError::NotInvariant)
}

/// Named small cases where no large kernel is expected.
pub fn named_exception(g: &PermGroup) -> Option<String> {
    let n = g.degree() as u128;
    let series: Vec<u128> = g.derived_series().iter().map(|h| h.order()).collect();
    let has_full_cycle = g.elements().ok()?.iter().any(|x| x.is_full_cycle());
    match (g.degree(), series.as_slice()) {
        (8, [48, 24, 8, 2, 1]) => return Some("GL_2(3) on 8 points, no Ritt move".into()),
        (12, [72, 12, 4, 1]) => return Some("C_3 x S_4 on 12 points, with a Ritt move".into()),
        _ => {}
    }
    if has_full_cycle && g.order() == n {
        return Some("cyclic: linearly equivalent to a monomial".into());
    }
    if has_full_cycle && g.order() == 2 * n && !g.is_abelian() {
        return Some("dihedral: linearly equivalent to a Chebyshev polynomial".into());
    }
    None
}

/// Tests the two large-kernel alternatives for G_2 = Mon(f ∘ g), deg f = p,
/// deg g = q, on a block system with p blocks of size q.
pub fn largeness_check(g2: &PermGroup, p: usize, q: usize) -> Result<LargenessReport> {
    if g2.degree() != p * q || !g2.is_transitive() {
        return Err(GroupError::NoBlocks(q));
    }
    let part = blocks::block_systems(g2)
        .into_iter()
        .find(|s| s.len() == p && s[0].len() == q)
        .ok_or(GroupError::NoBlocks(q))?;
    let kernel = blocks::block_kernel(g2, &part)?;
    let stab = blocks::block_stabilizer(g2, &part, part[0][0])?;
    let component = projection(&stab, &part[0])?;
    let soc = brute_force_socle(&component)?;
    let socle_order = soc.order();
    let socle_cyclic = prime_power(socle_order).map(|(_, a)| a == 1).unwrap_or(false);
    let reps = block_transversal(g2, &part)?;
    let n = g2.degree();
    let mut gens = Vec::new();
    for s in soc.generators() {
        let s0 = s.embed(n, &part[0]);
        gens.extend(reps.iter().map(|t| s0.conjugate_by(t)));
    }
    let e = PermGroup::new(n, gens)?;
    if e.order() > MAX_ENUMERATION {
        return Err(GroupError::SizeLimit(format!("socle power of order {}", e.order())));
    }
    let inside = e.filter_subgroup(|x| g2.contains(x))?;
    let kernel_socle_order = inside.order();
    let full = kernel_socle_order == e.order();
    let cyclic_alternative = socle_cyclic && kernel_socle_order >= socle_order.pow(p as u32 - 1);
    Ok(LargenessReport {
        blocks: part,
        kernel_order: kernel.order(),
        socle_order,
        socle_cyclic,
        kernel_socle_order,
        full,
        cyclic_alternative,
        large: full || cyclic_alternative,
        named_exception: named_exception(g2),
    })
}

/// H1 intransitive on G/H2, i.e. |H1 H2| < |G|.
pub fn two_action_reducibility(g: &PermGroup, h1: &PermGroup, h2: &PermGroup) -> Result<bool> {
    if !h1.is_subgroup_of(g) || !h2.is_subgroup_of(g) {
        return Err(GroupError::HypothesisFailed("H1 and H2 must be subgroups of G".into()));
    }
    let meet = h1.intersection(h2)?.order();
    Ok(h1.order() * h2.order() / meet < g.order())
}

/// Histogram of element orders; a cheap isomorphism invariant.
pub fn order_statistics(g: &PermGroup) -> Result<BTreeMap<u64, usize>> {
    let mut out = BTreeMap::new();
    for x in g.elements()? {
        *out.entry(x.order()).or_insert(0) += 1;
    }
    Ok(out)
}
