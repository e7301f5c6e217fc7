use std::sync::Arc;

use serde::de::DeserializeOwned;

use super::{coeq_product_commute_check, term_search, TermKind};
use crate::algebra::{compose_homs, enumerate_homs_pinned, FiniteAlgebra, Hom};
use crate::centrality::{
    commutative_structures, find_cooperators, is_abelian_with, is_symmetrizable, verify_internal_monoid,
};
use crate::constructions::{
    closure, coequaliser, generate_congruence, product, pullback, quotient, relation_compose, Congruence,
};
use crate::error::{Error, Result};
use crate::reflections::{reflect, verify_product_preservation, Predicate, ReflectionKind};
use crate::report::Counterexample;
use crate::Caps;

fn get<T: DeserializeOwned>(cx: &Counterexample, key: &str) -> Result<T> {
    cx.get(key).ok_or_else(|| Error::Malformed {
        at: format!("counterexample.bindings.{key}"),
        message: "missing or ill-typed binding".into(),
    })
}

fn algebra(algebras: &[Arc<FiniteAlgebra>], i: usize) -> Result<&Arc<FiniteAlgebra>> {
    algebras.get(i).ok_or_else(|| Error::Malformed {
        at: "counterexample.algebras".into(),
        message: format!("expected at least {} algebras, got {}", i + 1, algebras.len()),
    })
}

fn in_range(value: usize, a: &FiniteAlgebra, key: &str) -> Result<usize> {
    if value < a.size() {
        Ok(value)
    } else {
        Err(Error::Malformed {
            at: format!("counterexample.bindings.{key}"),
            message: format!("{value} is not an element of {}", a.name()),
        })
    }
}

/// Re-derives a failure from its counterexample alone: the bindings are
/// re-validated and the violated implication re-evaluated without rerunning
/// the search that found them. `algebras` align with `cx.algebras`.
/// Returns whether the failure is confirmed.
pub fn replay(check: &str, cx: &Counterexample, algebras: &[Arc<FiniteAlgebra>], caps: &Caps) -> Result<bool> {
    match check {
        "centralic" => {
            let (x, y) = (algebra(algebras, 0)?, algebra(algebras, 1)?);
            let a = in_range(get(cx, "x")?, x, "x")?;
            let b = in_range(get(cx, "x'")?, x, "x'")?;
            let c = in_range(get(cx, "y")?, y, "y")?;
            let d = product(x, y)?;
            let theta = generate_congruence(&d.prod, &[(d.pair(a, 0), d.pair(b, 0))])?;
            Ok(!theta.contains(d.pair(a, c), d.pair(b, c)))
        }
        "T" | "S" => {
            let x = algebra(algebras, 0)?;
            let d = product(x, x)?;
            let theta = Congruence::from_repr(&d.prod, get(cx, "theta")?)?;
            if !(0..x.size()).all(|a| theta.contains(d.pair(a, 0), d.pair(0, a))) {
                return Ok(false);
            }
            let q = quotient(&d.prod, &theta)?;
            let f = compose_homs(&q.map, &d.iota1)?;
            Ok(if check == "T" {
                !f.is_surjective()
            } else {
                closure(&q.algebra, f.table()).len() < q.algebra.size()
            })
        }
        "unital" => {
            let (x, y) = (algebra(algebras, 0)?, algebra(algebras, 1)?);
            let (a, b): (usize, usize) = get(cx, "missing")?;
            let d = product(x, y)?;
            let mut seeds: Vec<usize> = (0..x.size()).map(|a| d.pair(a, 0)).collect();
            seeds.extend((0..y.size()).map(|b| d.pair(0, b)));
            let p = d.pair(in_range(a, x, "missing")?, in_range(b, y, "missing")?);
            Ok(closure(&d.prod, &seeds).binary_search(&p).is_err())
        }
        "weakly-unital" => {
            let (x, y, z) = (algebra(algebras, 0)?, algebra(algebras, 1)?, algebra(algebras, 2)?);
            let d = product(x, y)?;
            let h = Hom::new(&d.prod, z, get(cx, "h")?)?;
            let k = Hom::new(&d.prod, z, get(cx, "k")?)?;
            let axes_agree = (0..x.size()).all(|a| h.at(d.pair(a, 0)) == k.at(d.pair(a, 0)))
                && (0..y.size()).all(|b| h.at(d.pair(0, b)) == k.at(d.pair(0, b)));
            Ok(axes_agree && h != k)
        }
        "gumm" => {
            let a = algebra(algebras, 0)?;
            let r = Congruence::from_repr(a, get(cx, "R")?)?;
            let s = Congruence::from_repr(a, get(cx, "S")?)?;
            let t = Congruence::from_repr(a, get(cx, "T")?)?;
            let [x, y, z, w] = ["x", "y", "z", "w"].map(|k| get::<usize>(cx, k).and_then(|v| in_range(v, a, k)));
            let (x, y, z, w) = (x?, y?, z?, w?);
            Ok(r.meet(&s).le(&t)
                && r.contains(x, y)
                && r.contains(w, z)
                && s.contains(y, z)
                && s.contains(x, w)
                && t.contains(y, z)
                && !t.contains(x, w))
        }
        "factor-permutable" => {
            let a = algebra(algebras, 0)?;
            let theta = Congruence::from_repr(a, get(cx, "theta")?)?;
            let complement = Congruence::from_repr(a, get(cx, "complement")?)?;
            let e = Congruence::from_repr(a, get(cx, "E")?)?;
            let factor = theta.meet(&complement).is_equality()
                && relation_compose(&theta, &complement)?.is_total()
                && relation_compose(&complement, &theta)?.is_total();
            Ok(factor && relation_compose(&theta, &e)? != relation_compose(&e, &theta)?)
        }
        "local-centralic" => {
            let (a, b, x) = (algebra(algebras, 0)?, algebra(algebras, 1)?, algebra(algebras, 2)?);
            let p = Hom::new(a, x, get(cx, "p")?)?;
            let q = Hom::new(b, x, get(cx, "q")?)?;
            let pb = pullback(&p, &q)?;
            let find = |l: usize, r: usize| pb.members.iter().position(|&m| m == (l, r));
            let (ex, ey, eu, ev): (usize, usize, usize, usize) =
                (get(cx, "x")?, get(cx, "y")?, get(cx, "u")?, get(cx, "v")?);
            let (Some(xu), Some(yu), Some(xv), Some(yv)) = (find(ex, eu), find(ey, eu), find(ex, ev), find(ey, ev))
            else {
                return Ok(false);
            };
            let theta = generate_congruence(&pb.algebra, &[(xu, yu)])?;
            Ok(!theta.contains(xv, yv))
        }
        "coeq-product" => {
            let [c1, x1, c2, x2] = [0, 1, 2, 3].map(|i| algebra(algebras, i));
            let (c1, x1, c2, x2) = (c1?, x1?, c2?, x2?);
            let f1 = Hom::new(c1, x1, get(cx, "f1")?)?;
            let g1 = Hom::new(c1, x1, get(cx, "g1")?)?;
            let f2 = Hom::new(c2, x2, get(cx, "f2")?)?;
            let g2 = Hom::new(c2, x2, get(cx, "g2")?)?;
            let report = coeq_product_commute_check(&coequaliser(&f1, &g1)?, &coequaliser(&f2, &g2)?)?;
            Ok(report.failed())
        }
        "internal-monoid" => {
            let x = algebra(algebras, 0)?;
            let d = product(x, x)?;
            let rho = Hom::new(&d.prod, x, get(cx, "rho")?)?;
            Ok(verify_internal_monoid(x, &rho)?.failed())
        }
        "central" => {
            let (x, y) = (algebra(algebras, 0)?, algebra(algebras, 1)?);
            let f = Hom::new(x, y, get(cx, "f")?)?;
            Ok(find_cooperators(&f, &Hom::identity(y))?.is_empty())
        }
        "commute" => {
            let (a, b, x) = (algebra(algebras, 0)?, algebra(algebras, 1)?, algebra(algebras, 2)?);
            let f = Hom::new(a, x, get(cx, "f")?)?;
            let g = Hom::new(b, x, get(cx, "g")?)?;
            Ok(find_cooperators(&f, &g)?.is_empty())
        }
        "symmetrizable" => {
            let (x, y) = (algebra(algebras, 0)?, algebra(algebras, 1)?);
            let f = Hom::new(x, y, get(cx, "f")?)?;
            match is_symmetrizable(&f) {
                Ok(found) => Ok(found.is_none()),
                Err(Error::NotCentral) => Ok(true),
                Err(e) => Err(e),
            }
        }
        "commutative" => Ok(commutative_structures(algebra(algebras, 0)?)?.is_empty()),
        "abelian" => {
            let x = algebra(algebras, 0)?;
            match cx.get::<Vec<usize>>("rho") {
                // a named structure without inverses
                Some(table) => {
                    let d = product(x, x)?;
                    let rho = Hom::new(&d.prod, x, table)?;
                    let commutative = commutative_structures(x)?.contains(&rho);
                    Ok(commutative && is_abelian_with(x, &rho)?.is_none())
                }
                None => Ok(commutative_structures(x)?.is_empty()),
            }
        }
        "universal" => {
            let source = algebra(algebras, 0)?;
            let kind: ReflectionKind = get(cx, "reflection")?;
            let predicate: Predicate = get(cx, "predicate")?;
            let res = reflect(source, kind)?;
            if cx.bindings.contains_key("reflected_fails") {
                return Ok(!predicate.holds(&res.reflected)?);
            }
            let t = algebra(algebras, 2)?;
            if !predicate.holds(t)? {
                return Ok(false);
            }
            let h = Hom::new(source, t, get(cx, "h")?)?;
            let pins: Vec<(usize, usize)> = (0..source.size()).map(|x| (res.unit.at(x), h.at(x))).collect();
            Ok(enumerate_homs_pinned(&res.reflected, t, &pins, Some(2))?.len() != 1)
        }
        "products" => {
            let (x, y) = (algebra(algebras, 0)?, algebra(algebras, 1)?);
            let kind: ReflectionKind = get(cx, "reflection")?;
            Ok(verify_product_preservation(x, y, kind)?.failed())
        }
        _ if check.starts_with("terms-") => {
            let kind: TermKind = check["terms-".len()..].parse()?;
            let a = algebra(algebras, 0)?;
            Ok(term_search(a, kind, caps)?.term.is_none())
        }
        _ => Err(Error::Malformed {
            at: "check".into(),
            message: format!("no replay for `{check}`"),
        }),
    }
}
