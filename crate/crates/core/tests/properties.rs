//! Invariants over random small algebras in the signature `{0, mul}`.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use centralic::algebra::{enumerate_homs, FiniteAlgebra, Hom};
use centralic::centrality::{cooperator_via_formula, find_cooperators, is_central};
use centralic::conditions::{centralic_pair_check, term_search, unital_check, validate_term, TermKind};
use centralic::constructions::{all_congruences, kernel_congruence, product, quotient};
use centralic::Caps;

fn magma(mul: Vec<usize>) -> Arc<FiniteAlgebra> {
    let n = (mul.len() as f64).sqrt() as usize;
    let sig = common::builtin("group-z2").signature().clone();
    FiniteAlgebra::new(format!("R{mul:?}"), sig, n, vec![vec![0], mul]).unwrap()
}

fn algebra(max: usize) -> impl Strategy<Value = Arc<FiniteAlgebra>> {
    // row 0 is mul(0, 0), which must be 0
    (1..=max)
        .prop_flat_map(|n| proptest::collection::vec(0..n, n * n - 1))
        .prop_map(|rest| magma([vec![0], rest].concat()))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn homs_match_brute_force(a in algebra(3), b in algebra(3)) {
        let found: Vec<Vec<usize>> = enumerate_homs(&a, &b).unwrap().iter().map(|h| h.table().to_vec()).collect();
        prop_assert_eq!(found, common::homs(&a, &b));
    }

    #[test]
    fn congruences_match_brute_force(a in algebra(3), b in algebra(3)) {
        let p = product(&a, &b).unwrap().prod;
        for x in [&a, &p] {
            let mut found: Vec<Vec<usize>> =
                all_congruences(x, 16).unwrap().iter().map(|c| c.repr().to_vec()).collect();
            let mut brute = common::congruences(x);
            found.sort();
            brute.sort();
            prop_assert_eq!(found, brute);
        }
    }

    #[test]
    fn quotients_invert_kernels(a in algebra(3), b in algebra(3)) {
        let p = product(&a, &b).unwrap().prod;
        for theta in all_congruences(&p, 16).unwrap() {
            let q = quotient(&p, &theta).unwrap();
            prop_assert!(q.map.is_surjective());
            prop_assert_eq!(kernel_congruence(&q.map), theta);
        }
    }

    #[test]
    fn centralic_matches_brute_force(a in algebra(3), b in algebra(3)) {
        let d = product(&a, &b).unwrap();
        let all = common::congruences(&d.prod);
        let brute = (0..a.size()).all(|x| {
            (0..x).all(|x2| {
                let theta = common::least_congruence(&all, &[(d.pair(x, 0), d.pair(x2, 0))]);
                (0..b.size()).all(|y| theta[d.pair(x, y)] == theta[d.pair(x2, y)])
            })
        });
        prop_assert_eq!(centralic_pair_check(&a, &b).unwrap().passed(), brute);
    }

    #[test]
    fn central_cooperators_follow_the_formula(a in algebra(3), b in algebra(3)) {
        let ambient_ok = [(&a, &a), (&a, &b), (&b, &b)]
            .iter()
            .all(|(x, y)| centralic_pair_check(x, y).unwrap().passed());
        prop_assume!(ambient_ok);
        for f in enumerate_homs(&a, &b).unwrap() {
            let Some(w) = is_central(&f).unwrap() else { continue };
            for g in enumerate_homs(&a, &b).unwrap() {
                let all = find_cooperators(&f, &g).unwrap();
                prop_assert_eq!(all.len(), 1);
                prop_assert_eq!(&cooperator_via_formula(&w, &g).unwrap(), &all[0]);
            }
        }
    }

    #[test]
    fn found_terms_are_sound(a in algebra(3)) {
        let caps = Caps::default();
        for kind in [TermKind::Majority, TermKind::Plus] {
            let search = match term_search(&a, kind, &caps) {
                Ok(s) => s,
                // a refusal is an honest non-answer
                Err(centralic::Error::CapExceeded { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            if let Some(t) = &search.term {
                prop_assert_eq!(validate_term(t, &a, kind).unwrap(), None);
                if kind == TermKind::Plus {
                    prop_assert!(unital_check(&a, &a).unwrap().passed());
                }
                if kind == TermKind::Majority {
                    prop_assert!(centralic_pair_check(&a, &a).unwrap().passed());
                }
            }
        }
    }

    #[test]
    fn identity_commutes_with_zero(a in algebra(3)) {
        let id = Hom::identity(&a);
        let zero = Hom::zero(&a, &a).unwrap();
        // ρ(x, y) = x is always a cooperator of id and 0
        prop_assert!(!find_cooperators(&id, &zero).unwrap().is_empty());
        prop_assert!(is_central(&zero).unwrap().is_some());
    }
}
