//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! fails. Every check is exact.
// the criteria index a universe table by position throughout
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use centralic::algebra::{compose_homs, enumerate_homs, FiniteAlgebra, Hom};
use centralic::catalog;
use centralic::centrality::{
    commutative_structures, commutes, cooperator_via_formula, find_cooperators, is_abelian_object, is_central,
    is_commutative, is_symmetrizable, star, symmetrizable_with, verify_internal_monoid, z_monoid, CooperatorWitness,
};
use centralic::conditions::{
    centralic_pair_check, coeq_product_commute_check, coequaliser_instances, condition_S_check, condition_T_check,
    factor_permutable_check, gumm_shifting_check, replay, term_check, term_search, unital_check, validate_term,
    weakly_unital_check, TermKind,
};
use centralic::constructions::{all_congruences, coequaliser, kernel_congruence, product, product_map, quotient};
use centralic::reflections::{
    ab_reflection, com_reflection, unit_naturality, verify_product_preservation, verify_universal_arrow, Predicate,
    ReflectionKind,
};
use centralic::report::{canonical_json, CheckReport};
use centralic::{Caps, Error};

type Outcome = Result<String, String>;
type Algebras = Vec<Arc<FiniteAlgebra>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn t<T>(r: centralic::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn homs(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<Vec<Hom>, String> {
    t(enumerate_homs(a, b))
}

fn compose(g: &Hom, f: &Hom) -> Result<Hom, String> {
    t(compose_homs(g, f))
}

fn all_pairs_centralic(slice: &[Arc<FiniteAlgebra>]) -> Result<bool, String> {
    for x in slice {
        for y in slice {
            if !t(centralic_pair_check(x, y))?.passed() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn centralic_slices() -> Result<Vec<Algebras>, String> {
    let mut out = Vec::new();
    for s in common::slices() {
        if all_pairs_centralic(&s)? {
            out.push(s);
        }
    }
    Ok(out)
}

fn t_slices() -> Result<Vec<Algebras>, String> {
    let caps = Caps::default();
    let mut out = Vec::new();
    for s in centralic_slices()? {
        let mut all = true;
        for x in &s {
            all &= t(condition_T_check(x, &caps))?.passed();
        }
        if all {
            out.push(s);
        }
    }
    Ok(out)
}

fn is_p2_slice(s: &[Arc<FiniteAlgebra>]) -> bool {
    s[0].signature() == common::builtin("pset2").signature()
}

fn same_tables(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    a.size() == b.size() && a.ops() == b.ops()
}

fn push_new(out: &mut Algebras, a: Arc<FiniteAlgebra>) {
    if !out.iter().any(|b| same_tables(b, &a)) {
        out.push(a);
    }
}

/// A slice, its products of at most four elements, and every quotient of
/// those.
fn universe(slice: &[Arc<FiniteAlgebra>]) -> Result<Algebras, String> {
    let mut base: Algebras = slice.to_vec();
    for x in slice {
        for y in slice {
            if x.size() > 1 && y.size() > 1 && x.size() * y.size() <= 4 {
                push_new(&mut base, t(product(x, y))?.prod);
            }
        }
    }
    let mut out = base.clone();
    for a in &base {
        for theta in t(all_congruences(a, 16))? {
            push_new(&mut out, t(quotient(a, &theta))?.algebra);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let mut pairs = 0;
    let mut memberships = 0;
    for slice in common::slices() {
        let p2 = is_p2_slice(&slice);
        for x in &slice {
            for y in &slice {
                let report = t(centralic_pair_check(x, y))?;
                pairs += 1;
                let nontrivial = x.size() > 1 && y.size() > 1;
                if !p2 {
                    ensure!(report.passed(), "({}, {}) fails", x.name(), y.name());
                } else if nontrivial {
                    ensure!(report.failed(), "(P2, P2) passes");
                    let cx = report.counterexample.clone().ok_or("no counterexample")?;
                    ensure!(
                        (cx.get::<usize>("x"), cx.get::<usize>("x'"), cx.get::<usize>("y"))
                            == (Some(1), Some(0), Some(1)),
                        "unexpected P2 counterexample {:?}",
                        cx.bindings
                    );
                    let caps = Caps::default();
                    ensure!(
                        t(replay("centralic", &cx, &[x.clone(), y.clone()], &caps))?,
                        "replay rejects"
                    );
                }
                // the oracle on every membership the implementation queries
                let d = t(product(x, y))?;
                let all = common::congruences(&d.prod);
                for a in 0..x.size() {
                    for b in 0..a {
                        let theta = common::least_congruence(&all, &[(d.pair(a, 0), d.pair(b, 0))]);
                        let mine = t(centralic::constructions::generate_congruence(
                            &d.prod,
                            &[(d.pair(a, 0), d.pair(b, 0))],
                        ))?;
                        for c in 0..y.size() {
                            memberships += 1;
                            let (p, q) = (d.pair(a, c), d.pair(b, c));
                            ensure!(
                                (theta[p] == theta[q]) == mine.contains(p, q),
                                "oracle disagrees on {} x {} at ({a},{c}) ~ ({b},{c})",
                                x.name(),
                                y.name()
                            );
                        }
                    }
                }
                let brute = (0..x.size()).all(|a| {
                    (0..a).all(|b| {
                        let theta = common::least_congruence(&all, &[(d.pair(a, 0), d.pair(b, 0))]);
                        (0..y.size()).all(|c| theta[d.pair(a, c)] == theta[d.pair(b, c)])
                    })
                });
                ensure!(
                    brute == report.passed(),
                    "oracle verdict differs on ({}, {})",
                    x.name(),
                    y.name()
                );
            }
        }
    }
    Ok(format!(
        "{pairs} pairs, {memberships} memberships against the partition oracle"
    ))
}

fn criterion_2() -> Outcome {
    let mut instances = 0;
    for slice in centralic_slices()? {
        for x in &slice {
            for y in &slice {
                for f in homs(x, y)? {
                    let Some(w) = t(is_central(&f))? else { continue };
                    for z in &slice {
                        for g in homs(z, y)? {
                            let all = t(find_cooperators(&f, &g))?;
                            ensure!(all.len() == 1, "{f} and {g} have {} cooperators", all.len());
                            ensure!(
                                t(cooperator_via_formula(&w, &g))? == all[0],
                                "formula differs for {f}, {g}"
                            );
                            instances += 1;
                        }
                    }
                }
            }
        }
    }
    ensure!(instances > 0, "no instances");
    // non-uniqueness outside a centralic ambient
    let p2 = common::builtin("pset2");
    let id = Hom::identity(&p2);
    ensure!(
        t(find_cooperators(&id, &id))?.len() == 2,
        "P2 should carry two cooperators"
    );
    Ok(format!("{instances} (f, g) pairs, each with exactly one cooperator"))
}

fn criterion_3() -> Outcome {
    let z2 = common::builtin("group-z2");
    let zm = t(z_monoid(&z2, &z2))?;
    ensure!(
        zm.len() == 2 && zm.inverses().len() == 2,
        "Z(Z2, Z2) is not the 2-element group"
    );
    let n3 = common::builtin("monoid-trunc3");
    let zn = t(z_monoid(&n3, &n3))?;
    ensure!(
        zn.len() == 3 && zn.verify().passed(),
        "Z(N3, N3) is not a 3-element commutative monoid"
    );
    let p2 = common::builtin("pset2");
    ensure!(
        matches!(z_monoid(&p2, &p2), Err(Error::NotCentralic(_))),
        "Z(P2, P2) not refused"
    );

    let (mut tables, mut naturality) = (0, 0);
    for slice in centralic_slices()? {
        for x in &slice {
            for y in &slice {
                let zm = t(z_monoid(x, y))?;
                let report = zm.verify();
                ensure!(
                    report.passed(),
                    "Z({}, {}) fails {:?}",
                    x.name(),
                    y.name(),
                    report.counterexample
                );
                tables += 1;
                for w in &slice {
                    for h in homs(w, x)? {
                        ensure!(
                            compose(&Hom::zero(x, y).map_err(|e| e.to_string())?, &h)?.is_zero(),
                            "0 ∘ x ≠ 0"
                        );
                        for f in &zm.carrier {
                            let wf = t(is_central(f))?.ok_or("carrier element not central")?;
                            let fh = compose(f, &h)?;
                            let wfh = t(is_central(&fh))?.ok_or_else(|| format!("{fh} not central"))?;
                            for g in &zm.homs {
                                let left = compose(&t(star(&wf, g))?, &h)?;
                                let right = t(star(&wfh, &compose(g, &h)?))?;
                                ensure!(left == right, "naturality fails for f={f}, g={g}, x={h}");
                                naturality += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{tables} monoid tables verified, {naturality} naturality instances"
    ))
}

fn criterion_4() -> Outcome {
    let (mut morphisms, mut witnesses, mut groups) = (0, 0, 0);
    let mut splits = Vec::new();
    for slice in common::slices() {
        let centralic = all_pairs_centralic(&slice)?;
        for x in &slice {
            for y in &slice {
                for f in homs(x, y)? {
                    let d = t(product(x, y))?;
                    let all = t(find_cooperators(&f, &Hom::identity(y)))?;
                    if all.is_empty() {
                        continue;
                    }
                    // errors when the two characterizations disagree
                    t(is_symmetrizable(&f))?;
                    morphisms += 1;
                    for rho in all {
                        let w = CooperatorWitness {
                            f: f.clone(),
                            g: Hom::identity(y),
                            rho: rho.clone(),
                            product: d.clone(),
                        };
                        match symmetrizable_with(&w) {
                            Ok(_) => {}
                            Err(Error::Inconsistent(_)) if !centralic => splits.push(format!("{f} via {rho}")),
                            Err(e) => return Err(e.to_string()),
                        }
                        witnesses += 1;
                    }
                }
                if is_p2_slice(&slice) {
                    continue;
                }
                let zm = t(z_monoid(x, y))?;
                let sigma: Vec<usize> = zm.inverses().iter().map(|&(i, _)| i).collect();
                ensure!(sigma.contains(&zm.unit), "Σ lacks zero");
                for &(i, j) in &zm.inverses() {
                    ensure!(sigma.contains(&j), "inverse outside Σ");
                    ensure!(
                        zm.add[i][j] == zm.unit && zm.add[j][i] == zm.unit,
                        "not a two-sided inverse"
                    );
                    for &k in &sigma {
                        ensure!(sigma.contains(&zm.add[i][k]), "Σ not closed");
                    }
                }
                for (i, f) in zm.carrier.iter().enumerate() {
                    ensure!(
                        t(is_symmetrizable(f))?.is_some() == sigma.contains(&i),
                        "Σ membership of {f}"
                    );
                }
                groups += 1;
            }
        }
    }
    let expect = [
        (common::builtin("group-z2"), true),
        (common::trivial_like(&common::builtin("group-z2")), true),
        (common::builtin("monoid-trunc3"), false),
        (common::builtin("lattice2"), false),
        (common::builtin("monoid-or"), false),
    ];
    for (a, want) in &expect {
        ensure!(
            t(is_abelian_object(a))?.is_some() == *want,
            "is_abelian_object({}) ≠ {want}",
            a.name()
        );
    }
    Ok(format!(
        "{morphisms} central morphisms agree, {groups} Σ groups; {witnesses} witnesses, split outside centralic slices: [{}]",
        splits.join("; ")
    ))
}

fn criterion_5() -> Outcome {
    let mut counts = [0usize; 8];
    for slice in centralic_slices()? {
        let u = universe(&slice)?;
        ensure!(
            all_pairs_centralic(&u)?,
            "universe of {} is not centralic",
            slice[0].name()
        );
        let n = u.len();
        let mut hs: Vec<Vec<Vec<Hom>>> = Vec::with_capacity(n);
        for a in &u {
            let mut row = Vec::with_capacity(n);
            for b in &u {
                row.push(homs(a, b)?);
            }
            hs.push(row);
        }
        let surj = |i: usize, j: usize| {
            hs[i][j]
                .iter()
                .filter(|h| h.is_surjective())
                .cloned()
                .collect::<Vec<_>>()
        };
        let base: Vec<usize> = (0..slice.len()).collect();

        // regular epimorphisms are stable under products here
        for i in 0..n {
            for k in 0..n {
                for q1 in surj(i, k) {
                    for q2 in surj(i, k) {
                        let (s, d) = (t(product(&u[i], &u[i]))?, t(product(&u[k], &u[k]))?);
                        ensure!(t(product_map(&q1, &q2, &s, &d))?.is_surjective(), "q1 × q2 not onto");
                    }
                }
            }
        }

        // f commutes with g iff f q1 commutes with g q2
        for i in 0..n {
            for k in 0..n {
                for q1 in surj(i, k) {
                    for j in 0..n {
                        for l in 0..n {
                            for q2 in surj(j, l) {
                                for &z in &base {
                                    for f in &hs[k][z] {
                                        for g in &hs[l][z] {
                                            let down = t(commutes(f, g))?;
                                            let up = t(commutes(&compose(f, &q1)?, &compose(g, &q2)?))?;
                                            ensure!(down == up, "transfer fails for f={f}, g={g}, q1={q1}, q2={q2}");
                                            counts[0] += 1;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        // X commutative iff any two surjections onto it commute
        for k in 0..n {
            let commutative = t(is_commutative(&u[k]))?;
            for i in 0..n {
                for j in 0..n {
                    for q1 in surj(i, k) {
                        for q2 in surj(j, k) {
                            ensure!(
                                t(commutes(&q1, &q2))? == commutative,
                                "{q1} / {q2} into {}",
                                u[k].name()
                            );
                            counts[1] += 1;
                        }
                    }
                }
            }
        }

        for i in 0..n {
            for k in 0..n {
                for q in surj(i, k) {
                    for z in 0..n {
                        for f in &hs[k][z] {
                            // f q central/symmetrizable forces f so
                            let fq = compose(f, &q)?;
                            let fq_central = t(is_central(&fq))?.is_some();
                            let f_central = t(is_central(f))?.is_some();
                            ensure!(fq_central == f_central, "centrality of {f} vs {f} ∘ {q}");
                            if fq_central && t(is_symmetrizable(&fq))?.is_some() {
                                ensure!(t(is_symmetrizable(f))?.is_some(), "{f} ∘ {q} symmetrizable but {f} not");
                            }
                            counts[2] += 1;
                        }
                    }
                    // central/symmetrizable f followed by q stays so
                    for a in 0..n {
                        for f in &hs[a][i] {
                            if t(is_central(f))?.is_none() {
                                continue;
                            }
                            let qf = compose(&q, f)?;
                            ensure!(t(is_central(&qf))?.is_some(), "{q} ∘ {f} not central");
                            if t(is_symmetrizable(f))?.is_some() {
                                ensure!(t(is_symmetrizable(&qf))?.is_some(), "{q} ∘ {f} not symmetrizable");
                            }
                            counts[3] += 1;
                        }
                    }
                    // quotients of commutative/abelian objects
                    if t(is_commutative(&u[i]))? {
                        ensure!(
                            t(is_commutative(&u[k]))?,
                            "{} commutative but quotient {} not",
                            u[i].name(),
                            u[k].name()
                        );
                    }
                    if t(is_abelian_object(&u[i]))?.is_some() {
                        ensure!(
                            t(is_abelian_object(&u[k]))?.is_some(),
                            "abelian {} has non-abelian quotient",
                            u[i].name()
                        );
                    }
                    counts[4] += 1;
                }
            }
        }

        let mut magmas = Vec::with_capacity(n);
        for x in &u {
            let structures = t(commutative_structures(x))?;
            ensure!(
                structures.len() <= 1,
                "{} has {} unitary magma structures",
                x.name(),
                structures.len()
            );
            magmas.push(structures.into_iter().next());
        }
        for (i, x) in u.iter().enumerate() {
            let Some(rho_x) = &magmas[i] else { continue };
            let report = t(verify_internal_monoid(x, rho_x))?;
            ensure!(report.passed(), "{} is not an internal commutative monoid", x.name());
            // the multiplication is the coequaliser of the two injections
            let d = t(product(x, x))?;
            let c = t(coequaliser(&d.iota1, &d.iota2))?;
            let rho = t(rho_x.retarget(&d.prod, x))?;
            ensure!(
                rho.is_surjective() && kernel_congruence(&rho) == c.congruence,
                "ρ of {} is not coeq(ι1, ι2)",
                x.name()
            );
            counts[5] += 1;
            for (j, y) in u.iter().enumerate() {
                let Some(rho_y) = &magmas[j] else { continue };
                let e = t(product(y, y))?;
                let rho_y = t(rho_y.retarget(&e.prod, y))?;
                for f in &hs[i][j] {
                    let ff = t(product_map(f, f, &d, &e))?;
                    ensure!(
                        compose(f, &rho)? == compose(&rho_y, &ff)?,
                        "{f} is not a magma morphism"
                    );
                    counts[6] += 1;
                }
            }
        }
        counts[7] += n;
    }
    Ok(format!(
        "universe {}: transfer {}, surjection pairs {}, quotient-side {}, image-side {}, object quotients {}, monoids {}, magma morphisms {}",
        counts[7], counts[0], counts[1], counts[2], counts[3], counts[4], counts[5], counts[6]
    ))
}

fn criterion_6() -> Outcome {
    let full = catalog::full();
    let (mut com, mut ab, mut products, mut coeqs) = (0, 0, 0, 0);
    let good = t_slices()?;
    for slice in &good {
        for x in slice {
            let r = t(com_reflection(x))?;
            let report = t(verify_universal_arrow(&r, Predicate::Commutative, &full))?;
            ensure!(
                report.passed(),
                "Com({}) not universal: {:?}",
                x.name(),
                report.counterexample
            );
            ensure!(r.unit.is_surjective(), "Com unit of {} not onto", x.name());
            com += 1;
            if t(is_commutative(x))? {
                let r = t(ab_reflection(x))?;
                let report = t(verify_universal_arrow(&r, Predicate::Abelian, &full))?;
                ensure!(
                    report.passed(),
                    "Ab({}) not universal: {:?}",
                    x.name(),
                    report.counterexample
                );
                ab += 1;
            }
            for y in slice {
                for kind in [ReflectionKind::Com, ReflectionKind::Ab] {
                    if kind == ReflectionKind::Ab && !(t(is_commutative(x))? && t(is_commutative(y))?) {
                        continue;
                    }
                    let report = t(verify_product_preservation(x, y, kind))?;
                    ensure!(report.passed(), "{kind}({} × {}) not preserved", x.name(), y.name());
                    products += 1;
                }
            }
        }
        // coequalisers of homs between commutative objects stay commutative
        let commutative: Algebras = slice
            .iter()
            .filter(|x| is_commutative(x).unwrap_or(false))
            .cloned()
            .collect();
        for c in t(coequaliser_instances(&commutative))? {
            ensure!(
                t(is_commutative(c.algebra()))?,
                "coequaliser into {} not commutative",
                c.f.cod().name()
            );
            coeqs += 1;
        }
        // naturality of the Ab unit
        for x in &commutative {
            for y in &commutative {
                let (rx, ry) = (t(ab_reflection(x))?, t(ab_reflection(y))?);
                for f in homs(x, y)? {
                    ensure!(t(unit_naturality(&rx, &ry, &f))?, "Ab unit not natural at {f}");
                }
            }
        }
    }
    let n3 = common::builtin("monoid-trunc3");
    ensure!(t(ab_reflection(&n3))?.reflected.size() == 1, "Ab(N3) is not trivial");
    ensure!(!good.iter().any(|s| is_p2_slice(s)), "P2 slice unexpectedly passes (T)");
    // outside the (T) slices the coequaliser construction is not a reflection
    let p2 = common::builtin("pset2");
    let p2_com = t(verify_universal_arrow(
        &t(com_reflection(&p2))?,
        Predicate::Commutative,
        &full,
    ))?;
    Ok(format!(
        "{} slices; {com} Com and {ab} Ab universal arrows, {products} product comparisons, {coeqs} coequalisers; Com(P2) outside (T): {:?}",
        good.len(),
        p2_com.verdict
    ))
}

fn criterion_7() -> Outcome {
    let caps = Caps::default();
    let mut fired = [0usize; 6];
    for slice in common::slices() {
        let mut majority = Vec::new();
        for x in &slice {
            majority.push(match term_search(x, TermKind::Majority, &caps) {
                Ok(s) => s.term,
                Err(Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e.to_string()),
            });
        }
        for (i, x) in slice.iter().enumerate() {
            for (j, y) in slice.iter().enumerate() {
                let centralic = t(centralic_pair_check(x, y))?.passed();
                let mut maj = false;
                for term in [&majority[i], &majority[j]].into_iter().flatten() {
                    maj |= t(validate_term(term, x, TermKind::Majority))?.is_none()
                        && t(validate_term(term, y, TermKind::Majority))?.is_none();
                }
                let prod = t(product(x, y))?.prod;
                let mut tests = slice.clone();
                for theta in t(all_congruences(&prod, caps.congruence_carrier))? {
                    tests.push(t(quotient(&prod, &theta))?.algebra);
                }
                let premises = [
                    maj,
                    t(weakly_unital_check(x, y, &tests))?.passed(),
                    t(gumm_shifting_check(&prod, &caps))?.passed(),
                    t(factor_permutable_check(&prod, &caps))?.passed(),
                ];
                for (k, &p) in premises.iter().enumerate() {
                    if p {
                        fired[k] += 1;
                        ensure!(
                            centralic,
                            "premise {k} holds on ({}, {}) but centralic fails",
                            x.name(),
                            y.name()
                        );
                    }
                }
            }
        }
        for a in &slice {
            let term = match term_search(a, TermKind::M4, &caps) {
                Ok(s) => s.term,
                Err(Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e.to_string()),
            };
            if let Some(term) = term {
                fired[4] += 1;
                ensure!(
                    t(condition_T_check(a, &caps))?.passed(),
                    "m4 on {} but (T) fails",
                    a.name()
                );
                for y in &slice {
                    if t(validate_term(&term, y, TermKind::M4))?.is_none() {
                        ensure!(
                            t(centralic_pair_check(a, y))?.passed(),
                            "m4 but ({}, {}) not centralic",
                            a.name(),
                            y.name()
                        );
                        ensure!(
                            t(centralic_pair_check(y, a))?.passed(),
                            "m4 but ({}, {}) not centralic",
                            y.name(),
                            a.name()
                        );
                    }
                }
            }
            let square = t(product(a, a))?.prod;
            if t(factor_permutable_check(&square, &caps))?.passed() {
                fired[5] += 1;
                ensure!(
                    t(condition_T_check(a, &caps))?.passed(),
                    "{0} × {0} factor permutable, (T) fails",
                    a.name()
                );
            }
        }
    }
    for a in catalog::full() {
        let (tc, sc) = (t(condition_T_check(&a, &caps))?, t(condition_S_check(&a, &caps))?);
        ensure!(tc.verdict == sc.verdict, "(T) and § differ on {}", a.name());
    }
    Ok(format!(
        "premises fired: majority {}, weakly unital {}, gumm {}, factor permutable {}, m4 {}, FP(X×X) {}",
        fired[0], fired[1], fired[2], fired[3], fired[4], fired[5]
    ))
}

fn criterion_8() -> Outcome {
    let caps = Caps::default();
    let mut summary = Vec::new();
    for slice in common::slices() {
        let instances = t(coequaliser_instances(&slice))?;
        let (mut pass, mut fail) = (0, 0);
        let mut first_failure: Option<CheckReport> = None;
        for c1 in &instances {
            for c2 in &instances {
                let r = t(coeq_product_commute_check(c1, c2))?;
                if r.passed() {
                    pass += 1;
                } else {
                    fail += 1;
                    first_failure.get_or_insert(r);
                }
            }
        }
        if is_p2_slice(&slice) {
            let r = first_failure.ok_or("no failing P2-slice instance")?;
            let cx = r.counterexample.as_ref().ok_or("failure without counterexample")?;
            let algebras: Vec<Arc<FiniteAlgebra>> = cx
                .algebras
                .iter()
                .map(|name| {
                    slice
                        .iter()
                        .find(|a| a.name() == name)
                        .cloned()
                        .ok_or("unknown algebra")
                })
                .collect::<Result<_, _>>()?;
            ensure!(
                t(replay("coeq-product", cx, &algebras, &caps))?,
                "coeq-product failure does not replay"
            );
            ensure!(
                !all_pairs_centralic(&slice)?,
                "P2 slice fails coeq-product but passes centralic"
            );
        } else {
            ensure!(
                fail == 0,
                "{fail} failing instance pairs in the {} slice",
                slice[0].name()
            );
            ensure!(
                all_pairs_centralic(&slice)?,
                "slice of {} is not centralic",
                slice[0].name()
            );
        }
        summary.push(format!("{}: {pass} pass / {fail} fail", slice[0].name()));
    }
    Ok(summary.join(", "))
}

fn criterion_9() -> Outcome {
    let caps = Caps::default();
    let found = |name: &str, kind: TermKind| -> Result<Option<String>, String> {
        let a = common::builtin(name);
        let s = t(term_search(&a, kind, &caps))?;
        match &s.term {
            Some(term) => {
                ensure!(t(validate_term(term, &a, kind))?.is_none(), "{term} fails on {name}");
                Ok(Some(term.to_string()))
            }
            None => Ok(None),
        }
    };
    let b_maj = found("lattice2", TermKind::Majority)?.ok_or("no majority term for B")?;
    ensure!(found("pset2", TermKind::Majority)?.is_none(), "P2 has a majority term");
    ensure!(
        found("group-z2", TermKind::Majority)?.is_none(),
        "Z2 has a majority term"
    );
    let b_m4 = found("lattice2", TermKind::M4)?.ok_or("no m4 term for B")?;
    let m2_m4 = found("monoid-or", TermKind::M4)?.ok_or("no m4 term for M2")?;

    let mut three = Vec::new();
    for name in ["monoid-trunc3", "monoid-leftzero3"] {
        let start = Instant::now();
        let report = t(term_check(&common::builtin(name), TermKind::M4, &caps))?;
        let took = start.elapsed();
        ensure!(took < Duration::from_secs(300), "m4 on {name} took {took:?}");
        if let Some(refusal) = &report.refusal {
            ensure!(!refusal.cap.is_empty(), "refusal without diagnostic");
        }
        three.push(format!("{name} {:?} in {:.1}s", report.verdict, took.as_secs_f64()));
    }
    Ok(format!(
        "B majority {b_maj}; B m4 {b_m4}; M2 m4 {m2_m4}; {}",
        three.join(", ")
    ))
}

/// Every check family over the catalog, in a fixed order.
fn full_suite() -> Result<Vec<CheckReport>, String> {
    let caps = Caps::default();
    let full = catalog::full();
    let mut out = Vec::new();
    for slice in common::slices() {
        for x in &slice {
            for y in &slice {
                out.push(t(centralic_pair_check(x, y))?);
                out.push(t(unital_check(x, y))?);
                out.push(t(weakly_unital_check(x, y, &slice))?);
                for f in homs(x, y)? {
                    out.push(t(centralic::centrality::central_report(&f))?);
                }
                if all_pairs_centralic(&slice)? {
                    let zm = t(z_monoid(x, y))?;
                    out.push(zm.verify().with_witness(zm.to_value()));
                }
            }
            out.push(t(condition_T_check(x, &caps))?);
            out.push(t(condition_S_check(x, &caps))?);
            let square = t(product(x, x))?.prod;
            out.push(t(gumm_shifting_check(&square, &caps))?);
            out.push(t(factor_permutable_check(&square, &caps))?);
            for kind in [TermKind::Majority, TermKind::Plus] {
                out.push(t(term_check(x, kind, &caps))?);
            }
            out.push(t(verify_universal_arrow(
                &t(com_reflection(x))?,
                Predicate::Commutative,
                &full,
            ))?);
        }
    }
    Ok(out)
}

fn criterion_10() -> Outcome {
    let first = canonical_json(&full_suite()?);
    let second = canonical_json(&full_suite()?);
    ensure!(first == second, "serializations differ");
    Ok(format!("{} bytes, identical", first.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("centralic verdicts", criterion_1, 60),
        ("unique cooperators", criterion_2, 60),
        ("additive core", criterion_3, 60),
        ("symmetrizable and abelian", criterion_4, 60),
        ("quotient transfer", criterion_5, 60),
        ("reflections", criterion_6, 60),
        ("implication matrix", criterion_7, 60),
        ("coequalisers and products", criterion_8, 60),
        ("term search", criterion_9, 600),
        ("determinism", criterion_10, 60),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > Duration::from_secs(*budget) => Err(format!("{detail}; over the {budget}s budget")),
            other => other,
        };
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failures += 1;
        }
        println!(
            "criterion {:>2} {name:<27} {verdict} [{:.2}s] {detail}",
            i + 1,
            took.as_secs_f64()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
