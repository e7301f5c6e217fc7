//! Decision procedures for the centralic condition and its neighbours.
//!
//! Every check returns a [`CheckReport`]; failures carry the elements,
//! morphisms or congruences that instantiate the failed implication so that
//! [`replay`] can confirm them independently.

mod replay;
mod shifting;
mod term;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{compose_homs, enumerate_homs, FiniteAlgebra, Hom};
use crate::constructions::{
    all_congruences, closure, coequaliser, factor_through, generate_congruence, product, product_map, quotient,
    Coequaliser, Congruence, ProductData, Quotient,
};
use crate::error::Result;
use crate::report::{CheckReport, Counterexample};
use crate::Caps;

pub use crate::report::{Refusal, Verdict};
pub use replay::replay;
pub use shifting::{factor_permutable_check, gumm_shifting_check, local_centralic_check};
pub use term::{evaluate, term_check, term_search, validate_term, Term, TermKind, TermSearch};

/// For all `x, x′ ∈ X` and `y ∈ Y`: `((x, y), (x′, y)) ∈ Cg((x, 0), (x′, 0))`
/// on `X × Y`.
///
/// Any congruence relating `(x, 0)` and `(x′, 0)` contains the principal
/// one, so checking the principal congruence decides the condition for all
/// congruences at once.
pub fn centralic_pair_check(x: &Arc<FiniteAlgebra>, y: &Arc<FiniteAlgebra>) -> Result<CheckReport> {
    let d = product(x, y)?;
    let report = CheckReport::new("centralic", [x.name(), y.name()]);
    let mut principal = 0u64;
    let mut memberships = 0u64;
    for a in 0..x.size() {
        for b in 0..a {
            let theta = generate_congruence(&d.prod, &[(d.pair(a, 0), d.pair(b, 0))])?;
            principal += 1;
            for c in 0..y.size() {
                memberships += 1;
                if !theta.contains(d.pair(a, c), d.pair(b, c)) {
                    let cx = Counterexample::new([x.name(), y.name()])
                        .bind("x", a)
                        .bind("x'", b)
                        .bind("y", c)
                        .bind("theta", theta.repr());
                    return Ok(report
                        .stat("principal_congruences", principal)
                        .stat("memberships", memberships)
                        .fail(cx));
                }
            }
        }
    }
    Ok(report
        .stat("principal_congruences", principal)
        .stat("memberships", memberships)
        .note("principal congruences are the least candidates, so checking them suffices"))
}

/// Decides whether the product of two coequalisers is the coequaliser of the
/// product pair: the comparison `coeq(f1 × f2, g1 × g2) -> Q1 × Q2` is built
/// by factoring `q1 × q2` and tested for bijectivity.
pub fn coeq_product_commute_check(c1: &Coequaliser, c2: &Coequaliser) -> Result<CheckReport> {
    let names = [
        c1.f.dom().name(),
        c1.f.cod().name(),
        c2.f.dom().name(),
        c2.f.cod().name(),
    ];
    let dc = product(c1.f.dom(), c2.f.dom())?;
    let dx = product(c1.f.cod(), c2.f.cod())?;
    let u = product_map(&c1.f, &c2.f, &dc, &dx)?;
    let v = product_map(&c1.g, &c2.g, &dc, &dx)?;
    let joint = coequaliser(&u, &v)?;
    let dq = product(c1.algebra(), c2.algebra())?;
    let q12 = product_map(c1.q(), c2.q(), &dx, &dq)?;
    let comparison = factor_through(joint.q(), &q12)?;
    let report = CheckReport::new("coeq-product", names)
        .stat("joint_quotient", joint.algebra().size() as u64)
        .stat("product_of_quotients", dq.prod.size() as u64);
    if comparison.is_bijective() {
        return Ok(report.with_witness(comparison.table()));
    }
    let cx = Counterexample::new(names)
        .bind("f1", c1.f.table())
        .bind("g1", c1.g.table())
        .bind("f2", c2.f.table())
        .bind("g2", c2.g.table())
        .bind("comparison", comparison.table());
    // a representative of each joint class in X1 × X2
    let rep = |class: usize| {
        (0..dx.prod.size())
            .find(|&p| joint.q().at(p) == class)
            .expect("q is onto")
    };
    let mut seen = BTreeMap::new();
    for class in 0..joint.algebra().size() {
        if let Some(&earlier) = seen.get(&comparison.at(class)) {
            let (a, b) = (dx.unpair(rep(earlier)), dx.unpair(rep(class)));
            return Ok(report.fail(cx.bind("defect", "not injective").bind("identified", [a, b])));
        }
        seen.insert(comparison.at(class), class);
    }
    let missed = (0..dq.prod.size())
        .find(|p| !seen.contains_key(p))
        .expect("a non-bijective map between these sizes misses something");
    Ok(report.fail(cx.bind("defect", "not surjective").bind("missed", dq.unpair(missed))))
}

/// Coequalisers of every parallel pair `f, g: C -> X` (with `f ≤ g` by
/// table) for `C, X` ranging over `algebras` of one signature.
pub fn coequaliser_instances(algebras: &[Arc<FiniteAlgebra>]) -> Result<Vec<Coequaliser>> {
    let mut out = Vec::new();
    for c in algebras {
        for x in algebras {
            if c.signature() != x.signature() {
                continue;
            }
            let homs = enumerate_homs(c, x)?;
            for (i, f) in homs.iter().enumerate() {
                for g in &homs[i..] {
                    out.push(coequaliser(f, g)?);
                }
            }
        }
    }
    Ok(out)
}

/// Congruences `θ` on `X × X` whose quotient identifies the two axes.
struct AxisQuotients {
    square: ProductData,
    quotients: Vec<(Congruence, Quotient)>,
}

fn axis_quotients(x: &Arc<FiniteAlgebra>, caps: &Caps) -> Result<AxisQuotients> {
    let square = product(x, x)?;
    let mut quotients = Vec::new();
    for theta in all_congruences(&square.prod, caps.congruence_carrier)? {
        if (0..x.size()).all(|a| theta.contains(square.pair(a, 0), square.pair(0, a))) {
            let q = quotient(&square.prod, &theta)?;
            quotients.push((theta, q));
        }
    }
    Ok(AxisQuotients { square, quotients })
}

/// (T): for every `θ` on `X × X` with `q∘ι1 = q∘ι2`, the restriction
/// `q∘ι1` is onto. Every regular epimorphism out of `X × X` is such a
/// quotient up to isomorphism.
#[allow(non_snake_case)]
pub fn condition_T_check(x: &Arc<FiniteAlgebra>, caps: &Caps) -> Result<CheckReport> {
    let report = CheckReport::new("T", [x.name()]);
    let aq = match axis_quotients(x, caps) {
        Ok(aq) => aq,
        Err(e) => return report.refuse(e),
    };
    let report = report.stat("qualifying_congruences", aq.quotients.len() as u64);
    for (theta, q) in &aq.quotients {
        let f = compose_homs(&q.map, &aq.square.iota1)?;
        if !f.is_surjective() {
            let missing = (0..aq.square.prod.size())
                .find(|&p| !f.table().contains(&q.map.at(p)))
                .expect("some class is missed");
            let cx = Counterexample::new([x.name()])
                .bind("theta", theta.repr())
                .bind("f", f.table())
                .bind("missing", aq.square.unpair(missing));
            return Ok(report.fail(cx));
        }
    }
    Ok(report)
}

/// §: for every qualifying `θ`, the quotient is generated by the image of
/// its axis restriction. Since images of homomorphisms are subalgebras this
/// agrees with (T) congruence by congruence; the report says whether it did.
#[allow(non_snake_case)]
pub fn condition_S_check(x: &Arc<FiniteAlgebra>, caps: &Caps) -> Result<CheckReport> {
    let report = CheckReport::new("S", [x.name()]);
    let aq = match axis_quotients(x, caps) {
        Ok(aq) => aq,
        Err(e) => return report.refuse(e),
    };
    let report = report.stat("qualifying_congruences", aq.quotients.len() as u64);
    let mut first_failure = None;
    let mut agree = true;
    for (theta, q) in &aq.quotients {
        let f = compose_homs(&q.map, &aq.square.iota1)?;
        let generated = closure(&q.algebra, f.table());
        let s_holds = generated.len() == q.algebra.size();
        agree &= s_holds == f.is_surjective();
        if !s_holds && first_failure.is_none() {
            let missing = (0..aq.square.prod.size())
                .find(|&p| generated.binary_search(&q.map.at(p)).is_err())
                .expect("generation misses a class");
            first_failure = Some(
                Counterexample::new([x.name()])
                    .bind("theta", theta.repr())
                    .bind("generated", &generated)
                    .bind("missing", aq.square.unpair(missing)),
            );
        }
    }
    let report = report.note(if agree {
        "agrees with (T) on every qualifying congruence"
    } else {
        "DISAGREES with (T) on some qualifying congruence"
    });
    Ok(match first_failure {
        Some(cx) => report.fail(cx),
        None => report,
    })
}

/// The axes of `X × Y` generate it.
pub fn unital_check(x: &Arc<FiniteAlgebra>, y: &Arc<FiniteAlgebra>) -> Result<CheckReport> {
    let d = product(x, y)?;
    let mut seeds: Vec<usize> = (0..x.size()).map(|a| d.pair(a, 0)).collect();
    seeds.extend((0..y.size()).map(|b| d.pair(0, b)));
    let generated = closure(&d.prod, &seeds);
    let report = CheckReport::new("unital", [x.name(), y.name()]).stat("generated", generated.len() as u64);
    if generated.len() == d.prod.size() {
        return Ok(report);
    }
    let missing = (0..d.prod.size())
        .find(|p| generated.binary_search(p).is_err())
        .expect("something is missing");
    Ok(report.fail(Counterexample::new([x.name(), y.name()]).bind("missing", d.unpair(missing))))
}

/// Homomorphisms out of `X × Y` into any test algebra are determined by
/// their values on the axes.
pub fn weakly_unital_check(
    x: &Arc<FiniteAlgebra>,
    y: &Arc<FiniteAlgebra>,
    tests: &[Arc<FiniteAlgebra>],
) -> Result<CheckReport> {
    let d = product(x, y)?;
    let mut axes: Vec<usize> = (0..x.size()).map(|a| d.pair(a, 0)).collect();
    axes.extend((1..y.size()).map(|b| d.pair(0, b)));
    let mut report = CheckReport::new("weakly-unital", [x.name(), y.name()])
        .with_catalog(tests.iter().map(|t| t.name().to_string()).collect());
    let mut scanned = 0u64;
    for z in tests {
        if z.signature() != x.signature() {
            continue;
        }
        let mut by_axes: BTreeMap<Vec<usize>, Hom> = BTreeMap::new();
        for h in enumerate_homs(&d.prod, z)? {
            scanned += 1;
            let key: Vec<usize> = axes.iter().map(|&p| h.at(p)).collect();
            if let Some(k) = by_axes.get(&key) {
                let at = (0..d.prod.size())
                    .find(|&p| h.at(p) != k.at(p))
                    .expect("distinct homs differ");
                let cx = Counterexample::new([x.name(), y.name(), z.name()])
                    .bind("h", k.table())
                    .bind("k", h.table())
                    .bind("at", d.unpair(at));
                report = report.stat("homs", scanned);
                return Ok(report.fail(cx));
            }
            by_axes.insert(key, h);
        }
    }
    report = report.stat("homs", scanned);
    Ok(report)
}
