use proptest::prelude::*;
use sepred_core::arith::{format_rational, nf_automorphism, parse_rational, rat, rat2};
use sepred_core::bipoly::{factor_bi, factor_bi_skipping, separated};
use sepred_core::decompose::*;
use sepred_core::families::*;
use sepred_core::poly::{factor_nf, factor_q};
use sepred_core::{BigRational, Field, NFElement, UniPoly};

fn qa() -> Field {
    Field::parse("a^2 + a + 2", "a").unwrap()
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| rat2(n, d))
}

fn element(k: Field) -> impl Strategy<Value = NFElement> {
    let d = k.degree();
    prop::collection::vec(small_rat(), d).prop_map(move |c| k.element(c))
}

fn int_poly(max_deg: usize, height: i64) -> impl Strategy<Value = UniPoly> {
    (1..=max_deg).prop_flat_map(move |d| {
        prop::collection::vec(-height..=height, d + 1).prop_map(|mut c| {
            if *c.last().unwrap() == 0 {
                *c.last_mut().unwrap() = 1;
            }
            UniPoly::q(&c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(u in element(qa()), v in element(qa()), w in element(qa())) {
        prop_assert_eq!(&u + &v, &v + &u);
        prop_assert_eq!(&u * &v, &v * &u);
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&(&u + &v) + &w, &u + &(&v + &w));
        if !u.is_zero() {
            prop_assert!((&u * &u.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_canonical_form(n in -1000i64..1000, d in 1i64..1000) {
        let q = rat2(n, d);
        let once = format_rational(&q);
        let twice = format_rational(&parse_rational(&once).unwrap());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn quadratic_automorphism_is_an_involution(u in element(qa())) {
        let k = qa();
        let sigma = nf_automorphism(&k, &(-&k.generator() - &k.one())).unwrap();
        prop_assert_eq!(sigma.apply(&sigma.apply(&u)), u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factor_q_expands_back(f in int_poly(12, 30)) {
        let fl = factor_q(&f);
        prop_assert_eq!(fl.expand(), f);
        for (g, _) in &fl.factors {
            prop_assert!(g.is_monic());
        }
    }

    #[test]
    fn products_factor_into_their_parts(a in int_poly(4, 9), b in int_poly(4, 9)) {
        let f = &a * &b;
        let fl = factor_q(&f);
        prop_assert_eq!(fl.expand(), f);
        prop_assert!(fl.count_with_multiplicity() >= 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn factor_nf_expands_back(c in prop::collection::vec(element(qa()), 2..6)) {
        let k = qa();
        let mut c = c;
        if c.last().unwrap().is_zero() {
            *c.last_mut().unwrap() = k.one();
        }
        let f = UniPoly::new(&k, c);
        prop_assume!(f.degree() >= 1);
        let g = &f * &UniPoly::from_ints(&k, &[2, 1, 1]);
        prop_assert_eq!(factor_nf(&g).expand(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn factor_bi_expands_back(f in int_poly(8, 9), g in int_poly(8, 9)) {
        let sep = separated(&f, &g).unwrap();
        let fl = factor_bi(&sep).unwrap();
        prop_assert_eq!(fl.expand(), sep);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn specialization_choice_does_not_matter(h in int_poly(3, 5), a in int_poly(3, 5), b in int_poly(3, 5)) {
        prop_assume!(h.degree() >= 2);
        let sep = separated(&h.compose(&a), &h.compose(&b)).unwrap();
        let first = factor_bi(&sep).unwrap();
        let second = factor_bi_skipping(&sep, 2).unwrap();
        prop_assert_eq!(first.factors, second.factors);
    }

    #[test]
    fn conjugation_permutes_factors(u in int_poly(3, 6), v in int_poly(3, 6)) {
        let k = Field::parse("i^2 + 1", "i").unwrap();
        let sigma = nf_automorphism(&k, &-&k.generator()).unwrap();
        let f = (&u * &u).to_field(&k).unwrap();
        let g = (&v * &v).scale(&Field::rationals().from_int(-1)).to_field(&k).unwrap();
        let sep = separated(&f, &g).unwrap();
        let fl = factor_bi(&sep).unwrap();
        let mut original: Vec<String> = fl.factors.iter().map(|(p, m)| format!("{p}^{m}")).collect();
        let mut moved: Vec<String> = fl
            .factors
            .iter()
            .map(|(p, m)| {
                let q = p.map_coeffs(&k, |c| sigma.apply(c)).normalized();
                format!("{q}^{m}")
            })
            .collect();
        original.sort();
        moved.sort();
        prop_assert_eq!(original, moved);
    }
}

fn chain_degrees(d: &Decomposition) -> Vec<usize> {
    let mut v = d.degrees();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn decompositions_round_trip_and_agree(parts in prop::collection::vec(int_poly(3, 4), 1..4)) {
        let parts: Vec<UniPoly> = parts.into_iter().filter(|p| p.degree() >= 2).collect();
        prop_assume!(!parts.is_empty());
        let f = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.compose(p));
        prop_assume!(f.degree() <= 27);
        let ds = complete_decompositions(&f);
        prop_assert!(!ds.is_empty());
        let len = ds[0].len();
        let degs = chain_degrees(&ds[0]);
        for d in &ds {
            prop_assert_eq!(d.compose(), f.clone());
            prop_assert_eq!(d.len(), len);
            prop_assert_eq!(chain_degrees(d), degs.clone());
            for p in &d.factors {
                prop_assert!(is_indecomposable(p));
            }
        }
        // the Ritt-move closure finds exactly the chains of an exhaustive search
        let found: std::collections::BTreeSet<Vec<String>> = ds
            .iter()
            .map(|d| d.factors.iter().map(|p| p.to_string()).collect())
            .collect();
        prop_assert_eq!(found, decompositions_by_recursion(&f));
    }

    #[test]
    fn prime_degree_is_one_chain(f in int_poly(7, 9)) {
        prop_assume!([2usize, 3, 5, 7].contains(&f.degree()));
        let ds = complete_decompositions(&f);
        prop_assert_eq!(ds.len(), 1);
        prop_assert_eq!(ds[0].len(), 1);
    }
}

#[test]
fn consecutive_chains_differ_by_one_coprime_swap() {
    for f in [chebyshev(12), chebyshev(30), UniPoly::q(&[0, 0, 1, 0, 2, 0, 1])] {
        let ds = complete_decompositions(&f);
        for a in &ds {
            // every chain is one Ritt move away from some other chain
            let linked = ds.len() == 1
                || ds.iter().any(|b| {
                    let diffs: Vec<usize> = (0..a.len()).filter(|&i| a.factors[i] != b.factors[i]).collect();
                    diffs.len() == 2
                        && diffs[1] == diffs[0] + 1
                        && num_integer::gcd(a.factors[diffs[0]].degree(), a.factors[diffs[1]].degree()) == 1
                        && a.factors[diffs[0]].degree() == b.factors[diffs[1]].degree()
                });
            assert!(linked, "{f}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn dickson_is_recognized(n in 2usize..=12, a in small_rat()) {
        prop_assume!(a != rat(0));
        let q = Field::rationals();
        let alpha = q.from_rational(a);
        let (mu, m, found, nu) = recognize_dickson(&dickson(n, &alpha)).unwrap();
        prop_assert!(mu.is_identity() && nu.is_identity());
        prop_assert_eq!(m, n);
        prop_assert_eq!(found, alpha);
    }
}

#[test]
fn defining_identities() {
    let q = Field::rationals();
    for n in 0..=12usize {
        // X^n T_n((X^2 + 1)/X) = X^{2n} + 1
        for alpha in [q.one(), q.from_int(3), q.from_rational(rat2(-2, 5))] {
            let d = dickson(n, &alpha);
            let mut acc = UniPoly::zero(&q);
            let num = UniPoly::new(&q, vec![alpha.clone(), q.zero(), q.one()]);
            for (i, c) in d.coeffs().iter().enumerate() {
                let term = &num.pow(i as u32) * &UniPoly::monomial(c.clone(), n - i);
                acc = &acc + &term;
            }
            let mut expected = UniPoly::monomial(q.one(), 2 * n);
            expected = &expected + &UniPoly::constant(alpha.pow(n as u64));
            if n == 0 {
                // D_0 = 2
                expected = UniPoly::constant(q.from_int(2));
            }
            assert_eq!(acc, expected, "n = {n}");
        }
    }
}

#[test]
fn composition_laws() {
    let q = Field::rationals();
    let alpha = q.from_int(-2);
    for m in 1..=6usize {
        for n in 1..=6usize {
            if m * n > 24 {
                continue;
            }
            assert_eq!(chebyshev(m * n), chebyshev(m).compose(&chebyshev(n)));
            let lhs = dickson(m * n, &alpha);
            let rhs = dickson(m, &alpha.pow(n as u64)).compose(&dickson(n, &alpha));
            assert_eq!(lhs, rhs, "m = {m}, n = {n}");
        }
    }
}

#[test]
fn chebyshev_h_divides() {
    use sepred_core::bipoly::divides_bi;
    for (n, m, d) in [(3, 3, 3), (6, 3, 3), (4, 4, 4), (8, 4, 4)] {
        let ch = chebyshev_h(d).unwrap();
        let k = &ch.field;
        let sub = ch.h.substitute(
            &chebyshev(n / d).to_field(k).unwrap(),
            &chebyshev(m / d).to_field(k).unwrap(),
        );
        let tn = chebyshev(n).to_field(k).unwrap();
        let neg_tm = chebyshev(m).to_field(k).unwrap().scale(&k.from_int(-1));
        assert!(divides_bi(&sub, &separated(&tn, &neg_tm).unwrap()), "{n} {m} {d}");
    }
}
