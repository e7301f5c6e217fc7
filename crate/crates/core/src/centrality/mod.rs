//! Cooperators, central morphisms and the additive core.
//!
//! Two morphisms `f: A -> X` and `g: B -> X` commute when some
//! homomorphism `ρ: A × B -> X` restricts to `f` and `g` on the axes; `ρ` is
//! a cooperator. A morphism is central when it commutes with the identity of
//! its codomain. When the ambient pairs are centralic, cooperators are unique
//! and the central morphisms `X -> Y` form a commutative monoid under
//! `f ⋆ g = x ↦ ρ_f(x, g(x))`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{compose_homs, enumerate_homs, enumerate_homs_pinned, FiniteAlgebra, Hom};
use crate::conditions::centralic_pair_check;
use crate::constructions::{product, ProductData};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Counterexample};

/// A cooperator of `f` and `g` together with the product it lives on.
#[derive(Debug, Clone)]
pub struct CooperatorWitness {
    pub f: Hom,
    pub g: Hom,
    pub rho: Hom,
    pub product: ProductData,
}

impl CooperatorWitness {
    /// `ρ(a, b)`.
    pub fn at(&self, a: usize, b: usize) -> usize {
        self.rho.at(self.product.pair(a, b))
    }
}

fn axis_pins(f: &Hom, g: &Hom, d: &ProductData) -> Vec<(usize, usize)> {
    let mut pins: Vec<(usize, usize)> = (0..f.dom().size()).map(|a| (d.pair(a, 0), f.at(a))).collect();
    pins.extend((1..g.dom().size()).map(|b| (d.pair(0, b), g.at(b))));
    pins
}

fn same_codomain(f: &Hom, g: &Hom) -> Result<()> {
    if crate::algebra::same_algebra(f.cod(), g.cod()) {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            what: "cooperator codomain",
            expected: f.cod().name().into(),
            found: g.cod().name().into(),
        })
    }
}

fn cooperators_on(f: &Hom, g: &Hom, d: &ProductData, limit: Option<usize>) -> Result<Vec<Hom>> {
    enumerate_homs_pinned(&d.prod, f.cod(), &axis_pins(f, g, d), limit)
}

/// Every cooperator of `f` and `g`, ordered by table.
pub fn find_cooperators(f: &Hom, g: &Hom) -> Result<Vec<Hom>> {
    same_codomain(f, g)?;
    let d = product(f.dom(), g.dom())?;
    cooperators_on(f, g, &d, None)
}

/// The least cooperator of `f` and `g`, if they commute.
pub fn cooperator(f: &Hom, g: &Hom) -> Result<Option<CooperatorWitness>> {
    same_codomain(f, g)?;
    let d = product(f.dom(), g.dom())?;
    let rho = cooperators_on(f, g, &d, Some(1))?.pop();
    Ok(rho.map(|rho| CooperatorWitness {
        f: f.clone(),
        g: g.clone(),
        rho,
        product: d,
    }))
}

pub fn commutes(f: &Hom, g: &Hom) -> Result<bool> {
    Ok(cooperator(f, g)?.is_some())
}

/// A cooperator of `f` with the identity of its codomain.
pub fn is_central(f: &Hom) -> Result<Option<CooperatorWitness>> {
    cooperator(f, &Hom::identity(f.cod()))
}

/// `(a, b) ↦ ρ_f(a, g(b))` for a cooperator `ρ_f` of `f` with the identity.
/// Errors when the table is not a homomorphism, which can only happen
/// outside a centralic ambient.
pub fn cooperator_via_formula(rho_f: &CooperatorWitness, g: &Hom) -> Result<Hom> {
    if !rho_f.g.is_identity() {
        return Err(Error::ShapeMismatch {
            what: "cooperator formula",
            expected: "a cooperator with the identity".into(),
            found: rho_f.g.to_string(),
        });
    }
    same_codomain(&rho_f.f, g)?;
    let d = product(rho_f.f.dom(), g.dom())?;
    let map = (0..d.prod.size())
        .map(|p| {
            let (a, b) = d.unpair(p);
            rho_f.at(a, g.at(b))
        })
        .collect();
    Hom::new(&d.prod, g.cod(), map)
}

/// `f ⋆ g = x ↦ ρ_f(x, g(x))`.
pub fn star(rho_f: &CooperatorWitness, g: &Hom) -> Result<Hom> {
    crate::constructions::check_end(g.dom(), rho_f.f.dom(), "star (domain)")?;
    same_codomain(&rho_f.f, g)?;
    let map = (0..g.dom().size()).map(|x| rho_f.at(x, g.at(x))).collect();
    Hom::new(g.dom(), g.cod(), map)
}

/// The additive core `Z(X, Y)` with its action on all of `hom(X, Y)`.
#[derive(Debug, Clone)]
pub struct MonoidTable {
    /// Central morphisms, ordered by table.
    pub carrier: Vec<Hom>,
    /// `add[i][j]` indexes `carrier[i] ⋆ carrier[j]`.
    pub add: Vec<Vec<usize>>,
    /// Index of the zero morphism.
    pub unit: usize,
    /// Every morphism `X -> Y`, ordered by table.
    pub homs: Vec<Hom>,
    /// `action[i][j]` indexes `carrier[i] ⋆ homs[j]` in `homs`.
    pub action: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct MonoidSummary {
    carrier: Vec<Vec<usize>>,
    add: Vec<Vec<usize>>,
    unit: usize,
    homs: Vec<Vec<usize>>,
    action: Vec<Vec<usize>>,
}

impl MonoidTable {
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(MonoidSummary {
            carrier: self.carrier.iter().map(|h| h.table().to_vec()).collect(),
            add: self.add.clone(),
            unit: self.unit,
            homs: self.homs.iter().map(|h| h.table().to_vec()).collect(),
            action: self.action.clone(),
        })
        .expect("monoid tables serialize")
    }

    /// Elements with an additive inverse, paired with it.
    pub fn inverses(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|i| (0..self.len()).find(|&j| self.add[i][j] == self.unit).map(|j| (i, j)))
            .collect()
    }

    /// Unit, associativity, commutativity, then the action laws, each
    /// checked on every tuple. The first violated law is reported.
    pub fn verify(&self) -> CheckReport {
        let name = |i: usize| self.carrier[i].table().to_vec();
        let subjects = match self.homs.first() {
            Some(h) => vec![h.dom().name().to_string(), h.cod().name().to_string()],
            None => Vec::new(),
        };
        let report = CheckReport::new("monoid-table", subjects)
            .stat("carrier", self.len() as u64)
            .stat("homs", self.homs.len() as u64);
        let fail = |law: &str| Counterexample::new(report.subjects.clone()).bind("law", law);
        let n = self.len();
        if !self.carrier[self.unit].is_zero() {
            return report
                .clone()
                .fail(fail("unit is the zero morphism").bind("unit", name(self.unit)));
        }
        for i in 0..n {
            if self.add[i][self.unit] != i || self.add[self.unit][i] != i {
                return report.clone().fail(fail("unit").bind("f", name(i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.add[self.add[i][j]][k] != self.add[i][self.add[j][k]] {
                        return report.clone().fail(
                            fail("associativity")
                                .bind("f", name(i))
                                .bind("g", name(j))
                                .bind("h", name(k)),
                        );
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if self.add[i][j] != self.add[j][i] {
                    return report
                        .clone()
                        .fail(fail("commutativity").bind("f", name(i)).bind("g", name(j)));
                }
            }
        }
        for j in 0..self.homs.len() {
            if self.action[self.unit][j] != j {
                return report.clone().fail(fail("action unit").bind("h", self.homs[j].table()));
            }
            for i in 0..n {
                for k in 0..n {
                    if self.action[self.add[i][k]][j] != self.action[i][self.action[k][j]] {
                        return report.clone().fail(
                            fail("action compatibility")
                                .bind("f", name(i))
                                .bind("g", name(k))
                                .bind("h", self.homs[j].table()),
                        );
                    }
                }
            }
        }
        report
    }
}

/// Centralic verdicts for `(X, X)`, `(X, Y)` and `(Y, Y)`, the pairs whose
/// cooperators `⋆` relies on. Returns the first failing report.
fn ambient_failure(x: &Arc<FiniteAlgebra>, y: &Arc<FiniteAlgebra>) -> Result<Option<CheckReport>> {
    for (l, r) in [(x, x), (x, y), (y, y)] {
        let report = centralic_pair_check(l, r)?;
        if !report.passed() {
            return Ok(Some(report));
        }
    }
    Ok(None)
}

/// The monoid `Z(X, Y)`. Refuses outside a centralic ambient, where `⋆` need
/// not be well defined.
pub fn z_monoid(x: &Arc<FiniteAlgebra>, y: &Arc<FiniteAlgebra>) -> Result<MonoidTable> {
    x.same_signature(y)?;
    if let Some(report) = ambient_failure(x, y)? {
        let detail = report
            .counterexample
            .as_ref()
            .map(|c| serde_json::to_string(&c.bindings).expect("bindings serialize"))
            .unwrap_or_default();
        return Err(Error::NotCentralic(format!(
            "({}) fails at {detail}; cooperators need not be unique",
            report.subjects.join(", ")
        )));
    }
    let homs = enumerate_homs(x, y)?;
    let mut carrier = Vec::new();
    let mut witnesses = Vec::new();
    for h in &homs {
        if let Some(w) = is_central(h)? {
            carrier.push(h.clone());
            witnesses.push(w);
        }
    }
    let position = |list: &[Hom], h: &Hom| list.iter().position(|k| k == h);
    let unit = carrier
        .iter()
        .position(Hom::is_zero)
        .ok_or_else(|| Error::Inconsistent("the zero morphism is not central".into()))?;
    let mut add = Vec::with_capacity(carrier.len());
    let mut action = Vec::with_capacity(carrier.len());
    for w in &witnesses {
        let mut row = Vec::with_capacity(carrier.len());
        for g in &carrier {
            let s = star(w, g)?;
            row.push(
                position(&carrier, &s)
                    .ok_or_else(|| Error::Inconsistent(format!("{} ⋆ {} = {s} is not central", w.f, g)))?,
            );
        }
        add.push(row);
        let mut row = Vec::with_capacity(homs.len());
        for g in &homs {
            let s = star(w, g)?;
            row.push(position(&homs, &s).expect("star lands in the hom-set"));
        }
        action.push(row);
    }
    let table = MonoidTable {
        carrier,
        add,
        unit,
        homs,
        action,
    };
    let report = table.verify();
    if !report.passed() {
        let c = report.counterexample.expect("failures carry counterexamples");
        return Err(Error::Inconsistent(format!(
            "monoid law violated: {}",
            serde_json::to_string(&c.bindings).expect("bindings serialize")
        )));
    }
    Ok(table)
}

/// An inverse of a central morphism under `⋆`, when it has one.
///
/// Decided twice: by searching `Z(X, Y)` for `g` with `f ⋆ g = 0`, and by
/// asking whether `(x, y) ↦ (x, ρ_f(x, y))` is a bijection of `X × Y`. The
/// two must agree.
///
/// Outside a centralic ambient `f` may have several cooperators with the
/// identity, and the two methods can split on a degenerate one (the zero
/// map of P2 with `ρ(1, 1) = 0`). Every cooperator is tried: `f` is
/// symmetrizable when some cooperator satisfies both, and a split is an
/// error only when no cooperator settles the question.
pub fn is_symmetrizable(f: &Hom) -> Result<Option<Hom>> {
    let id = Hom::identity(f.cod());
    let d = product(f.dom(), f.cod())?;
    let all = cooperators_on(f, &id, &d, None)?;
    if all.is_empty() {
        return Err(Error::NotCentral);
    }
    let mut split = None;
    for rho in all {
        let w = CooperatorWitness {
            f: f.clone(),
            g: id.clone(),
            rho,
            product: d.clone(),
        };
        match symmetrizable_with(&w) {
            Ok(Some(inverse)) => return Ok(Some(inverse)),
            Ok(None) => {}
            Err(e @ Error::Inconsistent(_)) => {
                split.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    split.map_or(Ok(None), Err)
}

/// [`is_symmetrizable`] against a chosen cooperator of `f` with the identity.
pub fn symmetrizable_with(w: &CooperatorWitness) -> Result<Option<Hom>> {
    let f = &w.f;
    let mut inverse = None;
    for g in enumerate_homs(f.dom(), f.cod())? {
        if is_central(&g)?.is_none() {
            continue;
        }
        if star(w, &g)?.is_zero() {
            inverse = Some(g);
            break;
        }
    }
    let (n, m) = (f.dom().size(), f.cod().size());
    let mut hit = vec![false; n * m];
    let mut bijective = true;
    'scan: for x in 0..n {
        for y in 0..m {
            let image = x * m + w.at(x, y);
            if hit[image] {
                bijective = false;
                break 'scan;
            }
            hit[image] = true;
        }
    }
    match (inverse, bijective) {
        (Some(g), true) => Ok(Some(g)),
        (None, false) => Ok(None),
        (inverse, _) => Err(Error::Inconsistent(format!(
            "symmetrizability of {f}: inverse search says {}, shear map says {}",
            inverse.is_some(),
            bijective
        ))),
    }
}

/// All unitary magma structures `X × X -> X`.
pub fn commutative_structures(x: &Arc<FiniteAlgebra>) -> Result<Vec<Hom>> {
    let id = Hom::identity(x);
    find_cooperators(&id, &id)
}

fn magma_shape(x: &Arc<FiniteAlgebra>, rho: &Hom) -> Result<()> {
    let n = x.size();
    if rho.dom().size() != n * n || !crate::algebra::same_algebra(rho.cod(), x) {
        return Err(Error::ShapeMismatch {
            what: "magma",
            expected: format!("a map {0} x {0} -> {0}", x.name()),
            found: rho.to_string(),
        });
    }
    Ok(())
}

/// Unit, associativity and commutativity of `ρ`, in that order; the first
/// violated law is reported with its elements.
pub fn verify_internal_monoid(x: &Arc<FiniteAlgebra>, rho: &Hom) -> Result<CheckReport> {
    magma_shape(x, rho)?;
    let n = x.size();
    let r = |a: usize, b: usize| rho.at(a * n + b);
    let report = CheckReport::new("internal-monoid", [x.name()]).with_witness(rho.table());
    let fail = |law: &str| {
        Counterexample::new([x.name()])
            .bind("law", law)
            .bind("rho", rho.table())
    };
    for a in 0..n {
        if r(a, 0) != a || r(0, a) != a {
            return Ok(report.fail(fail("unit").bind("x", a)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if r(r(a, b), c) != r(a, r(b, c)) {
                    return Ok(report.fail(fail("associativity").bind("x", a).bind("y", b).bind("z", c)));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..a {
            if r(a, b) != r(b, a) {
                return Ok(report.fail(fail("commutativity").bind("x", a).bind("y", b)));
            }
        }
    }
    Ok(report.stat("checked", (n * n * n) as u64))
}

/// Whether `X` is abelian under the structure `ρ`; returns the inverse map.
/// Positive answers are double-checked as internal abelian groups.
pub fn is_abelian_with(x: &Arc<FiniteAlgebra>, rho: &Hom) -> Result<Option<Hom>> {
    magma_shape(x, rho)?;
    let id = Hom::identity(x);
    let d = product(x, x)?;
    let rho = rho
        .retarget(&d.prod, x)
        .map_err(|_| Error::NotCommutative(x.name().into()))?;
    if compose_homs(&rho, &d.iota1)? != id || compose_homs(&rho, &d.iota2)? != id {
        return Err(Error::NotCommutative(format!("{} is not unital for {}", rho, x.name())));
    }
    let w = CooperatorWitness {
        f: id.clone(),
        g: id,
        rho,
        product: d,
    };
    let inverse = symmetrizable_with(&w)?;
    if let Some(inv) = &inverse {
        let monoid = verify_internal_monoid(x, &w.rho)?;
        let cancels = (0..x.size()).all(|a| w.at(a, inv.at(a)) == 0);
        if !monoid.passed() || !cancels {
            return Err(Error::Inconsistent(format!(
                "{} is symmetrizable but not an internal abelian group",
                x.name()
            )));
        }
    }
    Ok(inverse)
}

/// Abelian means commutative with every commutative structure admitting
/// inverses. Outside a centralic ambient an object may carry several
/// structures; all of them must be groups.
pub fn is_abelian_object(x: &Arc<FiniteAlgebra>) -> Result<Option<Hom>> {
    let structures = commutative_structures(x)?;
    let mut first = None;
    for rho in &structures {
        match is_abelian_with(x, rho)? {
            Some(inv) => {
                first.get_or_insert(inv);
            }
            None => return Ok(None),
        }
    }
    Ok(first)
}

pub fn is_commutative(x: &Arc<FiniteAlgebra>) -> Result<bool> {
    Ok(is_central(&Hom::identity(x))?.is_some())
}

/// Cooperator searches and verdicts for the report layer.
pub fn central_report(f: &Hom) -> Result<CheckReport> {
    let subjects = [f.dom().name(), f.cod().name()];
    let all = find_cooperators(f, &Hom::identity(f.cod()))?;
    let report = CheckReport::new("central", subjects).stat("cooperators", all.len() as u64);
    Ok(match all.first() {
        Some(rho) => report.with_witness(rho.table()),
        None => report.fail(Counterexample::new(subjects).bind("f", f.table())),
    })
}

/// Whether `f` and `g` commute, with every cooperator as witness.
pub fn cooperators_report(f: &Hom, g: &Hom) -> Result<CheckReport> {
    let subjects = [f.dom().name(), g.dom().name(), f.cod().name()];
    let all = find_cooperators(f, g)?;
    let report = CheckReport::new("commute", subjects).stat("cooperators", all.len() as u64);
    Ok(if all.is_empty() {
        report.fail(Counterexample::new(subjects).bind("f", f.table()).bind("g", g.table()))
    } else {
        report.with_witness(all.iter().map(Hom::table).collect::<Vec<_>>())
    })
}

/// Symmetrizability of `f`; a morphism that is not central fails too.
pub fn symmetrizable_report(f: &Hom) -> Result<CheckReport> {
    let subjects = [f.dom().name(), f.cod().name()];
    let report = CheckReport::new("symmetrizable", subjects);
    let fail = |why: &str| Counterexample::new(subjects).bind("f", f.table()).bind("reason", why);
    Ok(match is_symmetrizable(f) {
        Ok(Some(inverse)) => report.with_witness(inverse.table()),
        Ok(None) => report.fail(fail("no inverse")),
        Err(Error::NotCentral) => report.fail(fail("not central")),
        Err(e) => return Err(e),
    })
}

pub fn commutative_report(x: &Arc<FiniteAlgebra>) -> Result<CheckReport> {
    let structures = commutative_structures(x)?;
    let report = CheckReport::new("commutative", [x.name()]).stat("structures", structures.len() as u64);
    Ok(match structures.first() {
        Some(rho) => report.with_witness(rho.table()),
        None => report.fail(Counterexample::new([x.name()]).bind("structures", 0)),
    })
}

pub fn abelian_report(x: &Arc<FiniteAlgebra>) -> Result<CheckReport> {
    let structures = commutative_structures(x)?;
    let report = CheckReport::new("abelian", [x.name()]).stat("structures", structures.len() as u64);
    if structures.is_empty() {
        return Ok(report.fail(Counterexample::new([x.name()]).bind("structures", 0)));
    }
    for rho in &structures {
        if is_abelian_with(x, rho)?.is_none() {
            let cx = Counterexample::new([x.name()]).bind("rho", rho.table());
            return Ok(report.fail(cx));
        }
    }
    let inverse = is_abelian_object(x)?.expect("every structure has inverses");
    Ok(report.with_witness(inverse.table()))
}
