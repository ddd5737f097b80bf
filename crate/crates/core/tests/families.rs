use sepred_core::families::*;

#[test]
fn deg7_237_factors_as_three_and_four() {
    let rep = verify_family(&FamilyTag::Deg7_237).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.factor_degrees, vec![3, 4]);
}

#[test]
fn deg7_247_factors_as_three_and_four() {
    let rep = verify_family(&FamilyTag::Deg7_247).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn deg13_factors_as_four_and_nine() {
    let rep = verify_family(&FamilyTag::Deg13_2313).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.factor_degrees, vec![4, 9]);
}

#[test]
fn deg13_other_normalization_gives_the_same_structure() {
    let pair = deg13_pair(Deg13Normalization::Minus9).unwrap();
    let rep = pair_report(&pair).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.factor_degrees, vec![4, 9]);
}

#[test]
fn deg13_minpoly_matches_gauss_periods() {
    use sepred_core::arith::rat;
    use sepred_core::{Field, UniPoly};
    // Q(ζ) with ζ a root of Φ13; the periods are sums over cosets of {1, 3, 9}
    let cyc = Field::from_rational_coeffs(vec![rat(1); 13], "z").unwrap();
    let z = cyc.generator();
    let x = UniPoly::x(&cyc);
    let mut prod = UniPoly::one(&cyc);
    for g in [1u64, 2, 4, 8] {
        let mut period = cyc.zero();
        for e in [1u64, 3, 9] {
            period = &period + &z.pow(g * e % 13);
        }
        prod = &prod * &(&x - &UniPoly::constant(period));
    }
    let coeffs: Vec<i64> = prod
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rational().expect("rational coefficient");
            assert!(q.is_integer());
            i64::try_from(q.to_integer()).unwrap()
        })
        .collect();
    assert_eq!(coeffs, DEG13_MINPOLY.to_vec());
}

#[test]
fn named_pairs_satisfy_the_necessary_conditions() {
    use sepred_core::poly::branch_loci_equal;
    use sepred_core::Field;
    let q = Field::rationals();
    let mut pairs = vec![
        exceptional_pair(&FamilyTag::Deg7_237).unwrap(),
        exceptional_pair(&FamilyTag::Deg7_247).unwrap(),
    ];
    for a in [-3, -1, 1, 2, 5] {
        pairs.push(dickson_pair(&q.from_int(a)));
    }
    for p in &pairs {
        assert_eq!(p.h1.degree(), p.h2.degree());
        assert!(branch_loci_equal(&p.h1, &p.h2), "{:?}", p.tag);
    }
}

#[test]
fn dickson_verification_over_rationals() {
    let q = sepred_core::Field::rationals();
    for a in [1, 2, -3] {
        let rep = verify_family(&FamilyTag::Dickson4(q.from_int(a))).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.factor_degrees, vec![2, 2]);
    }
    assert!(verify_family(&FamilyTag::Dickson4Symbolic).unwrap().passed());
}

#[test]
fn missing_degrees_are_flagged() {
    use sepred_core::AlgebraError;
    for d in [11, 15, 21, 31] {
        assert!(matches!(exceptional_pairs_of_degree(d), Err(AlgebraError::DataUnavailable(n)) if n == d));
    }
    assert_eq!(exceptional_pairs_of_degree(7).unwrap().len(), 2);
}
