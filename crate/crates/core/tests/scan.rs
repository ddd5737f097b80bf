use std::collections::BTreeSet;

use proptest::prelude::*;
use sepred_core::scan::*;
use sepred_core::UniPoly;

fn set(v: &[i64]) -> BTreeSet<i64> {
    v.iter().copied().collect()
}

fn cubic() -> impl Strategy<Value = UniPoly> {
    (
        prop::collection::vec(-3i64..=3, 3),
        prop_oneof![Just(1i64), Just(-1), Just(2)],
    )
        .prop_map(|(mut c, lc)| {
            c.push(lc);
            UniPoly::q(&c)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn predicted_values_are_scanned(f in prop_oneof![
        cubic(),
        (cubic(), cubic()).prop_map(|(a, b)| a.compose(&b)),
        (cubic(), -3i64..=3).prop_map(|(a, c)| a.compose(&UniPoly::q(&[c, 0, 1]))),
    ]) {
        let r = full_scan(&f, 60).unwrap();
        let scanned = set(&r.reducible);
        for p in &r.predicted {
            prop_assert!(scanned.contains(&p.a), "{} at {}", f, p.a);
        }
    }

    #[test]
    fn reports_are_monotone(f in cubic(), n in 5i64..40) {
        let small = full_scan(&f, n).unwrap();
        let large = full_scan(&f, n + 25).unwrap();
        let clip = |v: &[i64]| v.iter().copied().filter(|a| a.abs() <= n).collect::<Vec<_>>();
        prop_assert_eq!(small.reducible, clip(&large.reducible));
        prop_assert_eq!(small.residual, clip(&large.residual));
        let pa: Vec<i64> = large.predicted.iter().map(|p| p.a).filter(|a| a.abs() <= n).collect();
        prop_assert_eq!(small.predicted.iter().map(|p| p.a).collect::<Vec<_>>(), pa);
    }
}

#[test]
fn predictions_match_a_direct_search() {
    // x^6: squares and cubes of rationals; an integer f1(q) forces q integral
    let f = UniPoly::q(&[0, 0, 0, 0, 0, 0, 1]);
    let p: BTreeSet<i64> = predicted_red(&f, 100).unwrap().iter().map(|x| x.a).collect();
    let mut direct = values_by_search(&UniPoly::q(&[0, 0, 1]), 100, 12);
    direct.extend(values_by_search(&UniPoly::q(&[0, 0, 0, 1]), 100, 12));
    assert_eq!(p, direct);
    // x^5 + x is indecomposable, so only f itself contributes
    let f = UniPoly::q(&[0, 1, 0, 0, 0, 1]);
    let p: BTreeSet<i64> = predicted_red(&f, 200).unwrap().iter().map(|x| x.a).collect();
    assert_eq!(p, values_by_search(&f, 200, 6));
    assert_eq!(p, [-34, -2, 0, 2, 34].into_iter().collect());
}

#[test]
fn fourth_powers_and_their_exception() {
    let f = UniPoly::q(&[0, 0, 0, 0, 1]);
    let r = residual_analysis(&f, 20, 1).unwrap();
    assert_eq!(r.scan.reducible, vec![-4, 0, 1, 4, 9, 16]);
    assert_eq!(r.scan.residual, vec![-4]);
    assert!(r.through_degree_2_or_4);
    let r = residual_analysis(&f, 400, 1).unwrap();
    assert_eq!(r.scan.residual, vec![-324, -64, -4]);
}

#[test]
fn residuals_without_quadratic_factors_stabilize() {
    let a = UniPoly::q(&[1, -2, 0, 1]);
    let b = UniPoly::q(&[0, 1, 1, 1]);
    for f in [UniPoly::q(&[0, 0, 0, 1]), a.compose(&b)] {
        let r500 = residual_analysis(&f, 500, 1).unwrap();
        assert!(!r500.through_degree_2_or_4);
        let r2000 = full_scan(&f, 2000).unwrap();
        assert_eq!(r500.scan.residual, r2000.residual, "{f}");
        assert!(r2000.residual.is_empty(), "{f}: {:?}", r2000.residual);
    }
}

#[test]
fn squared_quadratic_residual_is_covered() {
    let f = UniPoly::q(&[0, 0, 1, 0, 2, 0, 1]);
    assert!(full_scan(&f, 200).unwrap().residual.is_empty());
}

#[test]
fn iterates_of_squares() {
    let r = stability_scan(&UniPoly::q(&[0, 0, 1]), 2, 100).unwrap();
    assert!(r.difference.contains(&-4) && r.difference.contains(&-64));
    let r = stability_scan(&UniPoly::q(&[0, 0, 0, 1]), 2, 100).unwrap();
    assert!(r.difference.is_empty());
    let r = stability_scan(&UniPoly::q(&[1, 0, 1]), 2, 50).unwrap();
    assert!(r.base.iter().all(|a| r.iterate.contains(a)));
}

#[test]
fn quintic_flag() {
    // generic quintic: symmetric monodromy
    let f = UniPoly::q(&[0, 1, 0, 0, 1, 1]);
    let r = residual_analysis(&f, 10, 3).unwrap();
    assert_eq!(r.degree5_nonsolvable.len(), 1);
    // x^5 has a solvable monodromy group
    let r = residual_analysis(&UniPoly::q(&[0, 0, 0, 0, 0, 1]), 10, 3).unwrap();
    assert!(r.degree5_nonsolvable.is_empty());
}
