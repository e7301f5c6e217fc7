//! Reflections onto commutative and abelian objects.
//!
//! `Com(X)` is the coequaliser of the two product injections `X -> X × X`;
//! `Ab(X)` is the cokernel of the diagonal. Both are quotients of `X × X`,
//! with unit `q ∘ ι1`. Universal properties are certified against a finite
//! test catalog, which every report names.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{compose_homs, enumerate_homs, enumerate_homs_pinned, FiniteAlgebra, Hom};
use crate::centrality::{is_abelian_object, is_commutative};
use crate::conditions::coeq_product_commute_check;
use crate::constructions::{
    coequaliser, factor_through, generate_congruence, product, product_map, quotient, ProductData,
};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Counterexample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReflectionKind {
    Com,
    Ab,
}

impl ReflectionKind {
    pub fn predicate(self) -> Predicate {
        match self {
            ReflectionKind::Com => Predicate::Commutative,
            ReflectionKind::Ab => Predicate::Abelian,
        }
    }
}

impl fmt::Display for ReflectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReflectionKind::Com => "Com",
            ReflectionKind::Ab => "Ab",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    Commutative,
    Abelian,
}

impl Predicate {
    pub fn holds(self, x: &Arc<FiniteAlgebra>) -> Result<bool> {
        match self {
            Predicate::Commutative => is_commutative(x),
            Predicate::Abelian => Ok(is_abelian_object(x)?.is_some()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Commutative => "commutative",
            Predicate::Abelian => "abelian",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReflectionResult {
    pub source: Arc<FiniteAlgebra>,
    pub reflected: Arc<FiniteAlgebra>,
    pub unit: Hom,
    pub kind: ReflectionKind,
    /// `X × X -> reflected`.
    pub quotient_map: Hom,
    pub square: ProductData,
}

fn finish(
    x: &Arc<FiniteAlgebra>,
    kind: ReflectionKind,
    square: ProductData,
    q: &Hom,
    reflected: &Arc<FiniteAlgebra>,
) -> Result<ReflectionResult> {
    let reflected = reflected.renamed(format!("{kind}({})", x.name()));
    // the renamed copy has the same tables, so q's table still applies
    let quotient_map = Hom::raw(&square.prod, &reflected, q.table().to_vec());
    let unit = compose_homs(&quotient_map, &square.iota1)?;
    Ok(ReflectionResult {
        source: Arc::clone(x),
        reflected,
        unit,
        kind,
        quotient_map,
        square,
    })
}

/// The coequaliser of `ι1, ι2: X -> X × X`, with unit `q ∘ ι1`.
pub fn com_reflection(x: &Arc<FiniteAlgebra>) -> Result<ReflectionResult> {
    let square = product(x, x)?;
    let c = coequaliser(&square.iota1, &square.iota2)?;
    let (q, reflected) = (c.q().clone(), Arc::clone(c.algebra()));
    finish(x, ReflectionKind::Com, square, &q, &reflected)
}

/// The quotient of `X × X` by the congruence generated by the diagonal
/// against 0, with unit `q ∘ ι1`. Defined for commutative `X` only.
pub fn ab_reflection(x: &Arc<FiniteAlgebra>) -> Result<ReflectionResult> {
    if !is_commutative(x)? {
        return Err(Error::NotCommutative(x.name().into()));
    }
    let square = product(x, x)?;
    let pairs: Vec<(usize, usize)> = (0..x.size()).map(|a| (square.pair(a, a), 0)).collect();
    let theta = generate_congruence(&square.prod, &pairs)?;
    let q = quotient(&square.prod, &theta)?;
    finish(x, ReflectionKind::Ab, square, &q.map, &q.algebra)
}

pub fn reflect(x: &Arc<FiniteAlgebra>, kind: ReflectionKind) -> Result<ReflectionResult> {
    match kind {
        ReflectionKind::Com => com_reflection(x),
        ReflectionKind::Ab => ab_reflection(x),
    }
}

/// `r(f): r(X) -> r(Y)` for `f: X -> Y`, factored through the quotient of
/// `X × X`.
pub fn reflect_hom(rx: &ReflectionResult, ry: &ReflectionResult, f: &Hom) -> Result<Hom> {
    let ff = product_map(f, f, &rx.square, &ry.square)?;
    factor_through(&rx.quotient_map, &compose_homs(&ry.quotient_map, &ff)?)
}

/// `r(f) ∘ η_X = η_Y ∘ f`.
pub fn unit_naturality(rx: &ReflectionResult, ry: &ReflectionResult, f: &Hom) -> Result<bool> {
    let rf = reflect_hom(rx, ry, f)?;
    Ok(compose_homs(&rf, &rx.unit)? == compose_homs(&ry.unit, f)?)
}

/// For every test algebra `T` satisfying `predicate` and every `h: X -> T`
/// there is exactly one `h'` with `h' ∘ unit = h`; the reflected algebra
/// must itself satisfy `predicate`.
pub fn verify_universal_arrow(
    res: &ReflectionResult,
    predicate: Predicate,
    tests: &[Arc<FiniteAlgebra>],
) -> Result<CheckReport> {
    let names = [res.source.name(), res.reflected.name()];
    let report = CheckReport::new("universal", names)
        .with_catalog(tests.iter().map(|t| t.name().to_string()).collect())
        .note(format!("predicate: {}", predicate.name()));
    if !predicate.holds(&res.reflected)? {
        let cx = Counterexample::new(names)
            .bind("reflection", res.kind)
            .bind("predicate", predicate)
            .bind("reflected_fails", predicate.name());
        return Ok(report.fail(cx));
    }
    let mut eligible = 0u64;
    let mut checked = 0u64;
    for t in tests {
        if t.signature() != res.source.signature() || !predicate.holds(t)? {
            continue;
        }
        eligible += 1;
        for h in enumerate_homs(&res.source, t)? {
            checked += 1;
            let pins: Vec<(usize, usize)> = (0..res.source.size()).map(|x| (res.unit.at(x), h.at(x))).collect();
            let found = enumerate_homs_pinned(&res.reflected, t, &pins, Some(2))?;
            if found.len() != 1 {
                let cx = Counterexample::new([res.source.name(), res.reflected.name(), t.name()])
                    .bind("reflection", res.kind)
                    .bind("predicate", predicate)
                    .bind("h", h.table())
                    .bind("factorisations", found.len());
                return Ok(report.stat("tests", eligible).stat("homs", checked).fail(cx));
            }
        }
    }
    Ok(report.stat("tests", eligible).stat("homs", checked))
}

/// Whether `r(X × Y) -> r(X) × r(Y)`, induced by `r(π1)` and `r(π2)`, is an
/// isomorphism. The verdict is re-derived as the comparison for the product
/// of the two defining coequalisers, and the two must agree.
pub fn verify_product_preservation(
    x: &Arc<FiniteAlgebra>,
    y: &Arc<FiniteAlgebra>,
    kind: ReflectionKind,
) -> Result<CheckReport> {
    let names = [x.name(), y.name()];
    let report = CheckReport::new("products", names).note(format!("reflection: {kind}"));
    let d = product(x, y)?;
    let (rxy, rx, ry) = (reflect(&d.prod, kind)?, reflect(x, kind)?, reflect(y, kind)?);
    let r1 = reflect_hom(&rxy, &rx, &d.pi1)?;
    let r2 = reflect_hom(&rxy, &ry, &d.pi2)?;
    let target = product(&rx.reflected, &ry.reflected)?;
    let comparison = target.pairing(&r1, &r2)?;
    let direct = comparison.is_bijective();

    let defining = |r: &ReflectionResult| match kind {
        ReflectionKind::Com => coequaliser(&r.square.iota1, &r.square.iota2),
        ReflectionKind::Ab => {
            let diagonal = r.square.diagonal.as_ref().expect("squares have diagonals");
            coequaliser(diagonal, &Hom::zero(&r.source, &r.square.prod)?)
        }
    };
    let via_coequalisers = coeq_product_commute_check(&defining(&rx)?, &defining(&ry)?)?;
    if via_coequalisers.passed() != direct {
        return Err(Error::Inconsistent(format!(
            "{kind} comparison for ({}, {}) is {} but the coequaliser comparison {}",
            x.name(),
            y.name(),
            if direct { "an isomorphism" } else { "not an isomorphism" },
            if via_coequalisers.passed() { "is" } else { "is not" },
        )));
    }
    let report = report
        .stat("reflected_product", rxy.reflected.size() as u64)
        .stat("product_of_reflections", target.prod.size() as u64);
    Ok(if direct {
        report.with_witness(comparison.table())
    } else {
        report.fail(
            Counterexample::new(names)
                .bind("reflection", kind)
                .bind("comparison", comparison.table()),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin, full};

    #[test]
    fn com_reflections() {
        let z2 = builtin("group-z2");
        let r = com_reflection(&z2).unwrap();
        assert_eq!(r.reflected.size(), 2);
        assert!(r.unit.is_bijective());
        assert_eq!(r.reflected.name(), "Com(Z2)");

        let one = FiniteAlgebra::trivial(z2.signature());
        let r = com_reflection(&one).unwrap();
        assert!(r.unit.is_identity());

        let l = builtin("monoid-leftzero3");
        let r = com_reflection(&l).unwrap();
        assert!(is_commutative(&r.reflected).unwrap());
    }

    #[test]
    fn ab_reflections() {
        let z2 = builtin("group-z2");
        let r = ab_reflection(&z2).unwrap();
        assert!(r.unit.is_bijective());
        let n3 = builtin("monoid-trunc3");
        assert_eq!(ab_reflection(&n3).unwrap().reflected.size(), 1);
        assert!(matches!(
            ab_reflection(&builtin("lattice2")),
            Err(Error::NotCommutative(_))
        ));
    }

    #[test]
    fn universal_arrows() {
        let catalog = full();
        let z2 = builtin("group-z2");
        let r = com_reflection(&z2).unwrap();
        assert!(verify_universal_arrow(&r, Predicate::Commutative, &catalog)
            .unwrap()
            .passed());
        let n3 = builtin("monoid-trunc3");
        let r = ab_reflection(&n3).unwrap();
        let report = verify_universal_arrow(&r, Predicate::Abelian, &catalog).unwrap();
        assert!(report.passed());
        assert!(report.stats["tests"] >= 2);
    }

    #[test]
    fn products_are_preserved() {
        let z2 = builtin("group-z2");
        let r = verify_product_preservation(&z2, &z2, ReflectionKind::Com).unwrap();
        assert!(r.passed());
        assert_eq!(r.stats["reflected_product"], 4);
        let l = builtin("monoid-leftzero3");
        assert!(verify_product_preservation(&l, &l, ReflectionKind::Com)
            .unwrap()
            .passed());
        let one = FiniteAlgebra::trivial(l.signature());
        assert!(verify_product_preservation(&l, &one, ReflectionKind::Com)
            .unwrap()
            .passed());
    }

    #[test]
    fn ab_unit_is_natural() {
        let n3 = builtin("monoid-trunc3");
        let z2 = builtin("group-z2");
        let (rn, rz) = (ab_reflection(&n3).unwrap(), ab_reflection(&z2).unwrap());
        for f in enumerate_homs(&n3, &z2).unwrap() {
            assert!(unit_naturality(&rn, &rz, &f).unwrap());
        }
    }
}
