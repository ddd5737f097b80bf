use sepred_groups::blocks::*;
use sepred_groups::enum8::*;
use sepred_groups::lemmas::*;
use sepred_groups::wreath::*;
use sepred_groups::*;

fn p(n: usize, s: &str) -> Perm {
    Perm::parse(n, s).unwrap()
}

#[test]
fn basics() {
    assert_eq!(block_systems(&PermGroup::cyclic(4)), vec![vec![vec![0, 2], vec![1, 3]]]);
    assert!(is_primitive(&PermGroup::symmetric(4)));
    assert_eq!(PermGroup::dihedral(4).order(), 8);
    let g = PermGroup::parse(4, &["(0 1 2 3)"]).unwrap();
    assert!(g.check_degree(&p(5, "(0 1)")).is_err());
    assert!(PermGroup::new(4, vec![p(5, "(0 1)")]).is_err());
}

#[test]
fn diagonal_subdirect() {
    let s3 = PermGroup::symmetric(3);
    let parts = consecutive_blocks(6, 3);
    assert!(is_diagonal_subdirect(&diagonal(&s3, 2), &parts).unwrap());
    assert!(!is_diagonal_subdirect(&direct_product(&s3, &s3), &parts).unwrap());
    let base = PermGroup::parse(4, &["(0 1)", "(2 3)"]).unwrap();
    assert!(!is_diagonal_subdirect(&base, &consecutive_blocks(4, 2)).unwrap());
    let moving = PermGroup::parse(6, &["(0 3)(1 4)(2 5)"]).unwrap();
    assert_eq!(is_diagonal_subdirect(&moving, &parts), Err(GroupError::NotInvariant));
}

#[test]
fn socles() {
    let agl3 = PermGroup::agl1(3);
    let diag = diagonal(&agl3, 2);
    let soc = socle_solvable(&diag, lemmas::SocleContext::Agl1(3)).unwrap();
    assert_eq!(soc.size(), 3);
    assert!(soc.contains(&[1, 1]));
    let c3sq = PermGroup::parse(6, &["(0 1 2)", "(3 4 5)"]).unwrap();
    assert_eq!(socle_solvable(&c3sq, lemmas::SocleContext::Agl1(3)).unwrap().size(), 9);
    let c2 = PermGroup::parse(6, &["(1 2)(4 5)"]).unwrap();
    assert!(matches!(
        socle_solvable(&c2, lemmas::SocleContext::Agl1(3)),
        Err(GroupError::HypothesisFailed(_))
    ));
}

#[test]
fn index_lemma_examples() {
    // C3 wreath C4 with a 12-cycle
    let g = wreath(
        &PermGroup::cyclic(3),
        &PermGroup::cyclic(4),
        WreathAction::Imprimitive,
        100,
    )
    .unwrap();
    assert_eq!(g.order(), 324);
    // (j, x) -> (j + 1, x), shifting x when leaving the last block
    let images = (0..12).map(|i| {
        let (j, x) = (i / 3, i % 3);
        let x2 = if j == 3 { (x + 1) % 3 } else { x };
        ((j + 1) % 4) * 3 + x2
    });
    let sigma = Perm::from_images(images.collect()).unwrap();
    assert!(sigma.is_full_cycle());
    let n = g.normal_closure(std::slice::from_ref(&sigma));
    let r = verify_index_lemma(&g, &n, &sigma, 3).unwrap();
    assert!(r.second_part_applies && r.equal && r.holds);

    let d4 = wreath(
        &PermGroup::cyclic(2),
        &PermGroup::cyclic(2),
        WreathAction::Imprimitive,
        100,
    )
    .unwrap();
    let s = p(4, "(0 2 1 3)");
    let n = PermGroup::new(4, vec![s.clone()]).unwrap();
    let r = verify_index_lemma(&d4, &n, &s, 2).unwrap();
    assert_eq!((r.g_q_order, r.n_q_order, r.index), (4, 2, 2));
    assert!(r.holds);

    let bad = p(4, "(0 1)");
    assert!(matches!(
        verify_index_lemma(&d4, &d4, &bad, 2),
        Err(GroupError::HypothesisFailed(_))
    ));
}

#[test]
fn nilpotency() {
    assert_eq!(nilpotency_class(&PermGroup::dihedral(4)).unwrap(), 2);
    let w = wreath(
        &PermGroup::cyclic(2),
        &PermGroup::cyclic(4),
        WreathAction::Imprimitive,
        100,
    )
    .unwrap();
    assert_eq!(nilpotency_class(&w).unwrap(), 4);
    assert_eq!(nilpotency_class(&PermGroup::cyclic(8)).unwrap(), 1);
    assert_eq!(
        nilpotency_class(&PermGroup::symmetric(3)),
        Err(GroupError::NotPGroup(6))
    );
    let s4 = PermGroup::symmetric(4);
    let syl = lemmas::sylow_subgroup(&s4, 2).unwrap();
    assert_eq!(syl.order(), 8);
}

#[test]
fn largeness() {
    let w = wreath(
        &PermGroup::cyclic(3),
        &PermGroup::cyclic(2),
        WreathAction::Imprimitive,
        100,
    )
    .unwrap();
    let r = largeness_check(&w, 2, 3).unwrap();
    assert!(r.full && r.large);
    assert_eq!(r.kernel_order, 9);
    let d6 = PermGroup::dihedral(6);
    let r = largeness_check(&d6, 3, 2).unwrap();
    assert_eq!(r.kernel_socle_order, 2);
    assert!(!r.large);
    assert!(r.named_exception.unwrap().contains("Chebyshev"));
    assert_eq!(
        largeness_check(&PermGroup::symmetric(6), 3, 2).unwrap_err(),
        GroupError::NoBlocks(2)
    );
}

/// GL_2(3) acting on the nonzero vectors of F_3^2.
pub fn gl23() -> PermGroup {
    let vecs: Vec<(usize, usize)> = (0..9).map(|i| (i % 3, i / 3)).filter(|&v| v != (0, 0)).collect();
    let idx = |v: (usize, usize)| vecs.iter().position(|&w| w == v).unwrap();
    let mat = |a: usize, b: usize, c: usize, d: usize| {
        Perm::from_images(
            vecs.iter()
                .map(|&(x, y)| idx(((a * x + b * y) % 3, (c * x + d * y) % 3)))
                .collect(),
        )
        .unwrap()
    };
    PermGroup::new(8, vec![mat(1, 1, 0, 1), mat(0, 2, 1, 0), mat(2, 0, 0, 1)]).unwrap()
}

#[test]
fn gl23_is_flagged() {
    let g = gl23();
    assert_eq!(g.order(), 48);
    assert!(g.is_transitive());
    let r = largeness_check(&g, 4, 2).unwrap();
    assert!(r.named_exception.unwrap().starts_with("GL_2(3)"));
}

#[test]
fn two_actions() {
    let s3 = PermGroup::symmetric(3);
    let h = PermGroup::parse(3, &["(0 1)"]).unwrap();
    assert!(two_action_reducibility(&s3, &h, &h).unwrap());
    let s4 = PermGroup::symmetric(4);
    let h1 = s4.pointwise_stabilizer(&[3]);
    let h2 = s4.pointwise_stabilizer(&[0]);
    assert!(two_action_reducibility(&s4, &h1, &h2).unwrap());
    let d4 = PermGroup::parse(4, &["(0 1 2 3)", "(0 2)"]).unwrap();
    assert!(!two_action_reducibility(&s4, &h1, &d4).unwrap());
    let d4 = PermGroup::dihedral(4);
    let s = PermGroup::parse(4, &["(1 3)"]).unwrap();
    let rs = PermGroup::parse(4, &["(0 1)(2 3)"]).unwrap();
    assert!(two_action_reducibility(&d4, &s, &rs).unwrap());
}

#[test]
fn cycle_conjugacy() {
    let c = full_cycle();
    let d8 = PermGroup::dihedral(8);
    let x = p(8, "(1 3)(5 7)");
    let conj = PermGroup::new(8, d8.generators().iter().map(|g| g.conjugate_by(&x)).collect()).unwrap();
    assert!(!conj.contains(&c));
    let y = conjugate_containing_cycle(&conj, &d8).unwrap().expect("conjugate");
    let back = PermGroup::new(8, conj.generators().iter().map(|g| g.conjugate_by(&y)).collect()).unwrap();
    assert_eq!(back, d8);
    assert!(conjugate_containing_cycle(&PermGroup::cyclic(8), &d8)
        .unwrap()
        .is_none());
}
