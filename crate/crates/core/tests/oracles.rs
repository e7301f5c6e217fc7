//! Library results against the brute-force oracles in `common`.

mod common;

use std::sync::Arc;

use centralic::algebra::{compose_homs, enumerate_homs, FiniteAlgebra, Hom};
use centralic::catalog;
use centralic::centrality::{find_cooperators, is_central};
use centralic::conditions::centralic_pair_check;
use centralic::constructions::{
    all_congruences, coequaliser, factor_through, generate_congruence, kernel_congruence, product, pullback, quotient,
    relation_compose, Congruence,
};

fn tables(homs: &[Hom]) -> Vec<Vec<usize>> {
    homs.iter().map(|h| h.table().to_vec()).collect()
}

/// Every catalog algebra plus the binary products within each slice, up
/// to nine elements.
fn small_universe() -> Vec<Arc<FiniteAlgebra>> {
    let mut out = catalog::full();
    for slice in common::slices() {
        for x in &slice {
            for y in &slice {
                if x.size() * y.size() <= 9 {
                    out.push(product(x, y).unwrap().prod);
                }
            }
        }
    }
    out
}

#[test]
fn hom_enumeration_matches_brute_force() {
    for slice in common::slices() {
        for a in &slice {
            for b in &slice {
                let found = tables(&enumerate_homs(a, b).unwrap());
                assert_eq!(found, common::homs(a, b), "{} -> {}", a.name(), b.name());
            }
        }
    }
}

#[test]
fn hom_enumeration_matches_on_products() {
    for slice in common::slices() {
        for x in &slice {
            for y in &slice {
                let d = product(x, y).unwrap();
                if d.prod.size() > 4 {
                    continue;
                }
                for z in &slice {
                    assert_eq!(tables(&enumerate_homs(&d.prod, z).unwrap()), common::homs(&d.prod, z));
                }
            }
        }
    }
}

#[test]
fn congruence_lattices_match_brute_force() {
    for a in small_universe() {
        let mut found: Vec<Vec<usize>> = all_congruences(&a, 16)
            .unwrap()
            .iter()
            .map(|c| c.repr().to_vec())
            .collect();
        let mut brute = common::congruences(&a);
        found.sort();
        brute.sort();
        assert_eq!(found, brute, "{}", a.name());
    }
}

#[test]
fn principal_congruences_match_brute_force() {
    for a in small_universe() {
        let all = common::congruences(&a);
        for x in 0..a.size() {
            for y in 0..x {
                let theta = generate_congruence(&a, &[(x, y)]).unwrap();
                assert_eq!(
                    theta.repr(),
                    common::least_congruence(&all, &[(x, y)]),
                    "{} ({x},{y})",
                    a.name()
                );
            }
        }
    }
}

#[test]
fn centralic_verdicts_match_brute_force() {
    for slice in common::slices() {
        for x in &slice {
            for y in &slice {
                let d = product(x, y).unwrap();
                let all = common::congruences(&d.prod);
                let brute = (0..x.size()).all(|a| {
                    (0..a).all(|b| {
                        let theta = common::least_congruence(&all, &[(d.pair(a, 0), d.pair(b, 0))]);
                        (0..y.size()).all(|c| theta[d.pair(a, c)] == theta[d.pair(b, c)])
                    })
                });
                let report = centralic_pair_check(x, y).unwrap();
                assert_eq!(report.passed(), brute, "{} x {}", x.name(), y.name());
            }
        }
    }
}

#[test]
fn composition_is_associative_with_zero_laws() {
    for slice in common::slices() {
        for a in &slice {
            for b in &slice {
                for c in &slice {
                    for f in enumerate_homs(a, b).unwrap() {
                        for g in enumerate_homs(b, c).unwrap() {
                            let gf = compose_homs(&g, &f).unwrap();
                            assert!(common::is_hom(a, c, gf.table()));
                            let zero = Hom::zero(b, c).unwrap();
                            assert!(compose_homs(&zero, &f).unwrap().is_zero());
                            assert!(compose_homs(&g, &Hom::zero(a, b).unwrap()).unwrap().is_zero());
                            for h in enumerate_homs(c, a).unwrap() {
                                let left = compose_homs(&h, &gf).unwrap();
                                let right = compose_homs(&compose_homs(&h, &g).unwrap(), &f).unwrap();
                                assert_eq!(left, right);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn relation_composition_by_hand() {
    // on Z2 x Z2 the two projection kernels compose to the total relation
    let z2 = common::builtin("group-z2");
    let d = product(&z2, &z2).unwrap();
    let k1 = kernel_congruence(&d.pi1);
    let k2 = kernel_congruence(&d.pi2);
    assert!(relation_compose(&k1, &k2).unwrap().is_total());
    assert_eq!(relation_compose(&k1, &k2).unwrap(), relation_compose(&k2, &k1).unwrap());
    let eq = Congruence::equality(&d.prod);
    assert_eq!(relation_compose(&k1, &eq).unwrap(), k1.to_relation());

    // a pointed set on three points: {0,1}{2} then {0}{1,2} reaches (0,2)
    // but not (2,0)
    let s3 = FiniteAlgebra::new(
        "S3",
        centralic::algebra::Signature::new(std::iter::empty::<(&str, usize)>()).unwrap(),
        3,
        vec![vec![0]],
    )
    .unwrap();
    let a = Congruence::from_repr(&s3, vec![0, 0, 2]).unwrap();
    let b = Congruence::from_repr(&s3, vec![0, 1, 1]).unwrap();
    let ab = relation_compose(&a, &b).unwrap();
    assert!(ab.contains(0, 2));
    assert!(!ab.contains(2, 0));
    assert!(!ab.is_total());
}

#[test]
fn pullback_members_are_the_fibred_pairs() {
    for slice in common::slices() {
        for a in &slice {
            for b in &slice {
                for x in &slice {
                    for p in enumerate_homs(a, x).unwrap() {
                        for q in enumerate_homs(b, x).unwrap() {
                            let pb = pullback(&p, &q).unwrap();
                            let brute: Vec<(usize, usize)> = (0..a.size())
                                .flat_map(|u| (0..b.size()).map(move |v| (u, v)))
                                .filter(|&(u, v)| p.at(u) == q.at(v))
                                .collect();
                            assert_eq!(pb.members, brute);
                            assert_eq!(compose_homs(&p, &pb.p1).unwrap(), compose_homs(&q, &pb.p2).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn coequalisers_are_couniversal_in_the_catalog() {
    for slice in common::slices() {
        for c in &slice {
            for x in &slice {
                let homs = enumerate_homs(c, x).unwrap();
                for f in &homs {
                    for g in &homs {
                        let coeq = coequaliser(f, g).unwrap();
                        let q = coeq.q();
                        assert!(q.is_surjective());
                        assert_eq!(compose_homs(q, f).unwrap(), compose_homs(q, g).unwrap());
                        for t in &slice {
                            for h in enumerate_homs(x, t).unwrap() {
                                let coequalises = compose_homs(&h, f).unwrap() == compose_homs(&h, g).unwrap();
                                // brute-force count of factorisations through q
                                let through = common::homs(coeq.algebra(), t)
                                    .into_iter()
                                    .filter(|k| (0..x.size()).all(|e| k[q.at(e)] == h.at(e)))
                                    .count();
                                assert_eq!(through, usize::from(coequalises));
                                if coequalises {
                                    let k = factor_through(q, &h).unwrap();
                                    assert_eq!(compose_homs(&k, q).unwrap(), h);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn quotients_round_trip_through_kernels() {
    for a in small_universe() {
        for theta in all_congruences(&a, 16).unwrap() {
            let q = quotient(&a, &theta).unwrap();
            assert_eq!(q.map.at(0), 0);
            assert!(q.map.is_surjective());
            assert_eq!(kernel_congruence(&q.map), theta);
            assert_eq!(q.algebra.size(), theta.class_count());
        }
    }
}

#[test]
fn surjections_are_stable_under_products() {
    for slice in common::slices() {
        for x in &slice {
            for y in &slice {
                let surjections = |a: &Arc<FiniteAlgebra>| -> Vec<Hom> {
                    slice
                        .iter()
                        .flat_map(|t| enumerate_homs(a, t).unwrap())
                        .filter(Hom::is_surjective)
                        .collect()
                };
                for f in surjections(x) {
                    for g in surjections(y) {
                        let src = product(x, y).unwrap();
                        let tgt = product(f.cod(), g.cod()).unwrap();
                        let fg = centralic::constructions::product_map(&f, &g, &src, &tgt).unwrap();
                        assert!(fg.is_surjective());
                    }
                }
            }
        }
    }
}

#[test]
fn cooperators_match_brute_force() {
    for slice in common::slices() {
        for x in &slice {
            for y in &slice {
                let d = product(x, y).unwrap();
                for f in enumerate_homs(x, y).unwrap() {
                    let id = Hom::identity(y);
                    let brute: Vec<Vec<usize>> = common::homs(&product(x, y).unwrap().prod, y)
                        .into_iter()
                        .filter(|r| (0..x.size()).all(|a| r[d.pair(a, 0)] == f.at(a)))
                        .filter(|r| (0..y.size()).all(|b| r[d.pair(0, b)] == b))
                        .collect();
                    assert_eq!(tables(&find_cooperators(&f, &id).unwrap()), brute);
                    assert_eq!(is_central(&f).unwrap().is_some(), !brute.is_empty());
                }
            }
        }
    }
}
