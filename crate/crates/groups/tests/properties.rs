use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepred_core::families::chebyshev;
use sepred_core::UniPoly;
use sepred_groups::blocks::consecutive_blocks;
use sepred_groups::lemmas::*;
use sepred_groups::probe::monodromy_probe;
use sepred_groups::wreath::*;
use sepred_groups::*;

fn units(q: usize) -> Vec<usize> {
    (1..q).collect()
}

fn inverse_mod(a: usize, q: usize) -> usize {
    (1..q).find(|x| a * x % q == 1).unwrap()
}

/// (j, x) -> (pi(j), a_j x + b_j) on d blocks of size q.
fn wreath_element(q: usize, pi: &[usize], parts: &[(usize, usize)]) -> Perm {
    let d = pi.len();
    let images = (0..d * q).map(|i| {
        let (j, x) = (i / q, i % q);
        let (a, b) = parts[j];
        pi[j] * q + (a * x + b) % q
    });
    Perm::from_images(images.collect()).unwrap()
}

fn random_parts(rng: &mut ChaCha8Rng, q: usize, d: usize) -> Vec<(usize, usize)> {
    (0..d)
        .map(|_| (*units(q).choose(rng).unwrap(), rng.gen_range(0..q)))
        .collect()
}

fn random_d_cycle(rng: &mut ChaCha8Rng, d: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d).collect();
    order.shuffle(rng);
    let mut pi = vec![0; d];
    for k in 0..d {
        pi[order[k]] = order[(k + 1) % d];
    }
    pi
}

/// σ mapping to a d-cycle with σ^d ∈ C_q^d.
fn random_sigma(rng: &mut ChaCha8Rng, q: usize, d: usize) -> Perm {
    let pi = random_d_cycle(rng, d);
    let mut parts = random_parts(rng, q, d);
    let prod = parts[..d - 1].iter().fold(1, |acc, &(a, _)| acc * a % q);
    parts[d - 1].0 = inverse_mod(prod, q);
    wreath_element(q, &pi, &parts)
}

/// G ∩ C_q^d by enumeration: elements fixing every block and acting on each
/// as a translation.
fn base_by_enumeration(g: &PermGroup, q: usize) -> u128 {
    let d = g.degree() / q;
    g.elements()
        .unwrap()
        .iter()
        .filter(|x| {
            (0..d).all(|j| {
                let shift = (x.apply(j * q) + q - j * q) % q;
                (0..q).all(|t| x.apply(j * q + t) == j * q + (t + shift) % q)
            })
        })
        .count() as u128
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn index_lemma_on_random_instances(seed in any::<u64>(), qi in 0usize..3, d in 1usize..=5, extra in 0usize..3) {
        let q = [2, 3, 5][qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = random_sigma(&mut rng, q, d);
        let mut gens = vec![sigma.clone()];
        for _ in 0..extra {
            let mut pi: Vec<usize> = (0..d).collect();
            pi.shuffle(&mut rng);
            let parts = random_parts(&mut rng, q, d);
            gens.push(wreath_element(q, &pi, &parts));
        }
        let g = PermGroup::new(q * d, gens).unwrap();
        let n = g.normal_closure(std::slice::from_ref(&sigma));
        let r = verify_index_lemma(&g, &n, &sigma, q).unwrap();
        prop_assert!(r.holds, "{r:?}");
        if g.order() <= 20_000 {
            prop_assert_eq!(r.g_q_order, base_by_enumeration(&g, q));
            prop_assert_eq!(r.n_q_order, base_by_enumeration(&n, q));
        }
    }

    #[test]
    fn socle_matches_minimal_normal_subgroups(seed in any::<u64>(), qi in 0usize..3, k in 1usize..=3, extra in 0usize..3) {
        let q = [2, 3, 5][qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let id: Vec<usize> = (0..k).collect();
        let translations: Vec<(usize, usize)> = (0..k).map(|_| (1, rng.gen_range(1..q))).collect();
        let mut gens = vec![wreath_element(q, &id, &translations)];
        for _ in 0..extra {
            let parts = random_parts(&mut rng, q, k);
            gens.push(wreath_element(q, &id, &parts));
        }
        let g = PermGroup::new(q * k, gens).unwrap();
        prop_assume!(g.order() <= 2000);
        let soc = socle_solvable(&g, SocleContext::Agl1(q)).unwrap();
        let brute = brute_force_socle(&g).unwrap();
        prop_assert_eq!(soc.size(), brute.order());
        for x in brute.generators() {
            prop_assert!(soc.contains(&translation_vector(x, q)));
        }
        let parts = consecutive_blocks(q * k, q);
        if is_diagonal_subdirect(&brute, &parts).unwrap() {
            prop_assert!(is_diagonal_subdirect(&g, &parts).unwrap());
        }
    }
}

#[test]
fn socles_of_s4_powers() {
    let s4 = PermGroup::symmetric(4);
    let a4 = PermGroup::alternating(4);
    let swap = Perm::parse(8, "(0 1)(4 5)").unwrap();
    let groups = vec![
        (direct_product(&s4, &s4), 16),
        (diagonal(&s4, 2), 4),
        (direct_product(&a4, &a4), 16),
        (direct_product(&a4, &a4).with(&[swap]), 16),
        (diagonal(&a4, 3), 4),
    ];
    for (g, size) in groups {
        let soc = socle_solvable(&g, SocleContext::S4).unwrap();
        let brute = brute_force_socle(&g).unwrap();
        assert_eq!(soc.size(), size);
        assert_eq!(brute.order(), size);
        let parts = consecutive_blocks(g.degree(), 4);
        if is_diagonal_subdirect(&brute, &parts).unwrap() {
            assert!(is_diagonal_subdirect(&g, &parts).unwrap());
        }
    }
}

fn rank_of_base(g: &PermGroup, q: usize) -> u32 {
    let order = base_intersection(g, q).unwrap().order();
    prime_power(order).map_or(0, |(_, a)| a)
}

#[test]
fn sylow_class_bounds_base_rank() {
    let c2 = PermGroup::cyclic(2);
    let c3 = PermGroup::cyclic(3);
    let im = WreathAction::Imprimitive;
    let c2c2 = wreath(&c2, &c2, im, 100).unwrap();
    // d = q^r blocks in every case
    let towers = vec![
        (c2c2.clone(), 2),
        (wreath(&c2, &c2c2, im, 100).unwrap(), 2),
        (wreath(&c3, &c3, im, 100).unwrap(), 3),
        (wreath(&PermGroup::agl1(3), &c3, im, 100).unwrap(), 3),
        (wreath(&c2, &PermGroup::cyclic(4), im, 100).unwrap(), 2),
        (
            wreath(&PermGroup::cyclic(5), &PermGroup::cyclic(5), im, 100).unwrap(),
            5,
        ),
    ];
    for (g, q) in towers {
        assert!(g
            .elements()
            .unwrap()
            .iter()
            .any(|x| wreath_parts(x, q).is_some_and(|(pi, _)| pi.is_full_cycle())));
        let syl = sylow_subgroup(&g, q as u128).unwrap();
        let class = nilpotency_class(&syl).unwrap();
        let rank = rank_of_base(&g, q);
        assert!(
            class as u32 >= rank,
            "class {class} < rank {rank} for order {}",
            g.order()
        );
    }
}

#[test]
fn probe_examples() {
    let candidates = vec![
        ("C3".to_string(), PermGroup::cyclic(3)),
        ("S3".to_string(), PermGroup::symmetric(3)),
    ];
    let r = monodromy_probe(&UniPoly::q(&[0, 0, 0, 1]), 100, 7, &candidates).unwrap();
    for (t, _) in &r.cycle_types {
        assert!([vec![3], vec![1, 1, 1], vec![1, 2]].contains(t), "{t:?}");
    }
    assert_eq!(r.consistent[1], ("S3".to_string(), true));

    let r = monodromy_probe(&UniPoly::q(&[0, 0, 1]), 50, 7, &[]).unwrap();
    let types: Vec<Vec<usize>> = r.cycle_types.iter().map(|(t, _)| t.clone()).collect();
    assert_eq!(types, vec![vec![1, 1], vec![2]]);

    let d4 = vec![("D4".to_string(), PermGroup::dihedral(4))];
    let r = monodromy_probe(&chebyshev(4), 200, 7, &d4).unwrap();
    assert!(r.cycle_types.iter().all(|(t, _)| *t != vec![1, 3]));
    assert!(r.consistent[0].1);
}
