use std::sync::Arc;

use crate::algebra::{FiniteAlgebra, Hom};
use crate::constructions::{all_congruences, generate_congruence, pullback, relation_compose, Congruence};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Counterexample};
use crate::Caps;

fn shifting_cap(a: &FiniteAlgebra, caps: &Caps) -> Result<()> {
    if a.size() > caps.shifting_carrier {
        return Err(Error::CapExceeded {
            cap: "shifting carrier",
            required: a.size() as u64,
            limit: caps.shifting_carrier as u64,
        });
    }
    Ok(())
}

fn lattice(a: &Arc<FiniteAlgebra>, caps: &Caps) -> Result<Vec<Congruence>> {
    shifting_cap(a, caps)?;
    all_congruences(a, caps.congruence_carrier)
}

/// The shifting lemma: for congruences `R, S, T` with `R ∧ S ≤ T`, whenever
/// `(x, y), (w, z) ∈ R`, `(y, z), (x, w) ∈ S` and `(y, z) ∈ T`, also
/// `(x, w) ∈ T`.
pub fn gumm_shifting_check(a: &Arc<FiniteAlgebra>, caps: &Caps) -> Result<CheckReport> {
    let report = CheckReport::new("gumm", [a.name()]);
    let congs = match lattice(a, caps) {
        Ok(c) => c,
        Err(e) => return report.refuse(e),
    };
    let n = a.size();
    let classes: Vec<Vec<Vec<usize>>> = congs.iter().map(Congruence::classes).collect();
    let class_of = |i: usize, x: usize| {
        let r = congs[i].repr()[x];
        classes[i]
            .iter()
            .find(|c| c[0] == r)
            .expect("every element has a class")
    };
    let mut triples = 0u64;
    for (ri, r) in congs.iter().enumerate() {
        for s in &congs {
            let meet = r.meet(s);
            for t in &congs {
                // R ≤ T or S ≤ T makes the conclusion immediate
                if !meet.le(t) || r.le(t) || s.le(t) {
                    continue;
                }
                triples += 1;
                for y in 0..n {
                    for z in 0..n {
                        if !s.contains(y, z) || !t.contains(y, z) {
                            continue;
                        }
                        for &x in class_of(ri, y) {
                            for &w in class_of(ri, z) {
                                if s.contains(x, w) && !t.contains(x, w) {
                                    let cx = Counterexample::new([a.name()])
                                        .bind("R", r.repr())
                                        .bind("S", s.repr())
                                        .bind("T", t.repr())
                                        .bind("x", x)
                                        .bind("y", y)
                                        .bind("z", z)
                                        .bind("w", w);
                                    return Ok(report
                                        .stat("congruences", congs.len() as u64)
                                        .stat("triples", triples)
                                        .fail(cx));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report.stat("congruences", congs.len() as u64).stat("triples", triples))
}

/// Factor congruences (halves of direct decompositions) permute with every
/// congruence.
pub fn factor_permutable_check(a: &Arc<FiniteAlgebra>, caps: &Caps) -> Result<CheckReport> {
    let report = CheckReport::new("factor-permutable", [a.name()]);
    let congs = match lattice(a, caps) {
        Ok(c) => c,
        Err(e) => return report.refuse(e),
    };
    let mut factors: Vec<(usize, usize)> = Vec::new();
    for (i, t1) in congs.iter().enumerate() {
        for (j, t2) in congs.iter().enumerate() {
            if !t1.meet(t2).is_equality() {
                continue;
            }
            if relation_compose(t1, t2)?.is_total() && relation_compose(t2, t1)?.is_total() {
                factors.push((i, j));
                break;
            }
        }
    }
    let report = report
        .stat("congruences", congs.len() as u64)
        .stat("factor_congruences", factors.len() as u64);
    for &(i, complement) in &factors {
        let theta = &congs[i];
        for e in &congs {
            let left = relation_compose(theta, e)?;
            let right = relation_compose(e, theta)?;
            if left != right {
                let (pair, order) = match left.first_difference(&right) {
                    Some(p) => (p, "theta;E"),
                    None => (right.first_difference(&left).expect("relations differ"), "E;theta"),
                };
                let cx = Counterexample::new([a.name()])
                    .bind("theta", theta.repr())
                    .bind("complement", congs[complement].repr())
                    .bind("E", e.repr())
                    .bind("pair", pair)
                    .bind("only_in", order);
                return Ok(report.fail(cx));
            }
        }
    }
    Ok(report)
}

/// On the pullback `A ×_X B` of `p` and `q`: whenever `(x, u), (y, u),
/// (x, v), (y, v)` all lie in it, `((x, v), (y, v)) ∈ Cg((x, u), (y, u))`.
pub fn local_centralic_check(p: &Hom, q: &Hom, caps: &Caps) -> Result<CheckReport> {
    let names = [p.dom().name(), q.dom().name(), p.cod().name()];
    let report = CheckReport::new("local-centralic", names);
    let pb = pullback(p, q)?;
    if pb.algebra.size() > caps.congruence_carrier {
        return report.refuse(Error::CapExceeded {
            cap: "congruence carrier",
            required: pb.algebra.size() as u64,
            limit: caps.congruence_carrier as u64,
        });
    }
    let (na, nb) = (p.dom().size(), q.dom().size());
    let mut index = vec![usize::MAX; na * nb];
    for (i, &(a, b)) in pb.members.iter().enumerate() {
        index[a * nb + b] = i;
    }
    let at = |a: usize, b: usize| Some(index[a * nb + b]).filter(|&i| i != usize::MAX);
    let mut principal = 0u64;
    for x in 0..na {
        for y in 0..x {
            for u in 0..nb {
                let (Some(xu), Some(yu)) = (at(x, u), at(y, u)) else {
                    continue;
                };
                let theta = generate_congruence(&pb.algebra, &[(xu, yu)])?;
                principal += 1;
                for v in 0..nb {
                    let (Some(xv), Some(yv)) = (at(x, v), at(y, v)) else {
                        continue;
                    };
                    if !theta.contains(xv, yv) {
                        let cx = Counterexample::new(names)
                            .bind("p", p.table())
                            .bind("q", q.table())
                            .bind("x", x)
                            .bind("y", y)
                            .bind("u", u)
                            .bind("v", v)
                            .bind("theta", theta.repr());
                        return Ok(report.stat("principal_congruences", principal).fail(cx));
                    }
                }
            }
        }
    }
    Ok(report
        .stat("pullback", pb.algebra.size() as u64)
        .stat("principal_congruences", principal))
}
