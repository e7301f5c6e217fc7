//! Command dispatch and replay.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use serde_json::json;

use centralic::algebra::{enumerate_homs, load_algebra, AlgebraDocument, FiniteAlgebra, Hom};
use centralic::catalog;
use centralic::centrality::{
    abelian_report, central_report, commutative_report, cooperators_report, symmetrizable_report, z_monoid,
};
use centralic::conditions::{
    centralic_pair_check, coeq_product_commute_check, coequaliser_instances, condition_S_check, condition_T_check,
    factor_permutable_check, gumm_shifting_check, local_centralic_check, replay as replay_cx, term_check, unital_check,
    weakly_unital_check, TermKind,
};
use centralic::reflections::{reflect, verify_product_preservation, verify_universal_arrow, ReflectionKind};
use centralic::report::{CheckReport, Counterexample};
use centralic::{Caps, Error};

use crate::document::ReportDocument;
use crate::inputs::Session;
use crate::{CheckKind, Cli, Command, Inputs, ReflectArg, TermArg, VerifyKind};

fn need<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value.as_deref().ok_or_else(|| anyhow!("this command needs {flag}"))
}

/// A morphism table written `0,1,1`.
fn table(text: &str, flag: &str) -> Result<Vec<usize>> {
    text.split(',')
        .enumerate()
        .map(|(i, t)| {
            t.trim()
                .parse()
                .with_context(|| format!("{flag}: entry {i} (`{t}`) is not an element"))
        })
        .collect()
}

fn hom(dom: &Arc<FiniteAlgebra>, cod: &Arc<FiniteAlgebra>, text: &str, flag: &str) -> Result<Hom> {
    Hom::new(dom, cod, table(text, flag)?).with_context(|| flag.to_string())
}

/// `--map` if given, otherwise every morphism `x -> y`.
fn morphisms(inputs: &Inputs, x: &Arc<FiniteAlgebra>, y: &Arc<FiniteAlgebra>) -> Result<Vec<Hom>> {
    Ok(match &inputs.map {
        Some(t) => vec![hom(x, y, t, "--map")?],
        None => enumerate_homs(x, y)?,
    })
}

fn reflection(kind: ReflectArg) -> ReflectionKind {
    match kind {
        ReflectArg::Com => ReflectionKind::Com,
        ReflectArg::Ab => ReflectionKind::Ab,
    }
}

/// Members of `family` in the signature of `x`, each inlined.
fn tests_for(
    session: &mut Session,
    x: &FiniteAlgebra,
    family: &[Arc<FiniteAlgebra>],
) -> Result<Vec<Arc<FiniteAlgebra>>> {
    let tests = catalog::slice_of(family, x);
    for t in &tests {
        session.register(t)?;
    }
    Ok(tests)
}

pub fn dispatch(command: &Command, caps: &Caps, session: &mut Session) -> Result<Vec<CheckReport>> {
    let reports = match command {
        Command::Check { kind, inputs } => check(*kind, inputs, caps, session)?,
        Command::Cooperators(inputs) => {
            let x_arg = inputs.target.as_ref().or(inputs.right.as_ref());
            let x_arg = x_arg.ok_or_else(|| anyhow!("this command needs --target or --right"))?;
            let b_arg = match &inputs.target {
                Some(_) => inputs.right.as_ref().unwrap_or(x_arg),
                None => x_arg,
            };
            let [a, b, x] = session.algebras([need(&inputs.left, "--left")?, b_arg, x_arg])?;
            let f = hom(&a, &x, need(&inputs.f, "--f")?, "--f")?;
            let g = match &inputs.g {
                Some(t) => hom(&b, &x, t, "--g")?,
                None if b_arg == x_arg => Hom::identity(&x),
                None => bail!("--g is required when --right differs from --target"),
            };
            vec![cooperators_report(&f, &g)?]
        }
        Command::Central(inputs) => {
            let [x, y] = session.algebras([need(&inputs.left, "--left")?, need(&inputs.right, "--right")?])?;
            morphisms(inputs, &x, &y)?
                .iter()
                .map(central_report)
                .collect::<Result<_, _>>()?
        }
        Command::Zmonoid(inputs) => {
            let [x, y] = session.algebras([need(&inputs.left, "--left")?, need(&inputs.right, "--right")?])?;
            match z_monoid(&x, &y) {
                Ok(table) => vec![table.verify().with_witness(table.to_value())],
                // report the ambient pairs that break it instead
                Err(Error::NotCentralic(_)) => {
                    let mut out: Vec<CheckReport> = Vec::new();
                    for (l, r) in [(&x, &x), (&x, &y), (&y, &y)] {
                        let report = centralic_pair_check(l, r)?;
                        if report.failed() && !out.iter().any(|o| o.subjects == report.subjects) {
                            let note = format!("Z({}, {}) needs this pair centralic", x.name(), y.name());
                            out.push(report.note(note));
                        }
                    }
                    out
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Symmetrizable(inputs) => {
            let [x, y] = session.algebras([need(&inputs.left, "--left")?, need(&inputs.right, "--right")?])?;
            morphisms(inputs, &x, &y)?
                .iter()
                .map(symmetrizable_report)
                .collect::<Result<_, _>>()?
        }
        Command::Commutative(inputs) => {
            let x = session.algebra(need(&inputs.algebra, "--algebra")?, None)?;
            vec![commutative_report(&x)?]
        }
        Command::Abelian(inputs) => {
            let x = session.algebra(need(&inputs.algebra, "--algebra")?, None)?;
            vec![abelian_report(&x)?]
        }
        Command::Reflect { kind, inputs } => {
            let x = session.algebra(need(&inputs.algebra, "--algebra")?, None)?;
            let kind = reflection(*kind);
            let res = reflect(&x, kind)?;
            session.register(&res.reflected)?;
            let check = format!("reflect-{}", kind.to_string().to_lowercase());
            let report = CheckReport::new(&check, [x.name(), res.reflected.name()])
                .stat("size", res.reflected.size() as u64)
                .with_witness(json!({
                    "reflected": AlgebraDocument::from_algebra(&res.reflected),
                    "unit": res.unit.table(),
                }));
            vec![report]
        }
        Command::Verify { what, inputs } => {
            let kind = reflection(inputs.reflection.unwrap_or(ReflectArg::Com));
            match what {
                VerifyKind::Universal => {
                    let x = session.algebra(need(&inputs.algebra, "--algebra")?, None)?;
                    let family = session.family(inputs.catalog.as_deref().unwrap_or("all"))?;
                    let tests = tests_for(session, &x, &family)?;
                    let res = reflect(&x, kind)?;
                    session.register(&res.reflected)?;
                    vec![verify_universal_arrow(&res, kind.predicate(), &tests)?]
                }
                VerifyKind::Products => {
                    let [x, y] = session.algebras([need(&inputs.left, "--left")?, need(&inputs.right, "--right")?])?;
                    vec![verify_product_preservation(&x, &y, kind)?]
                }
            }
        }
        Command::Terms { kind, inputs } => {
            let a = session.algebra(need(&inputs.algebra, "--algebra")?, None)?;
            let kind = match kind {
                TermArg::Majority => TermKind::Majority,
                TermArg::M4 => TermKind::M4,
                TermArg::Plus => TermKind::Plus,
            };
            vec![term_check(&a, kind, caps)?]
        }
        Command::Replay { .. } => bail!("replay cannot be nested"),
    };
    Ok(reports)
}

fn check(kind: CheckKind, inputs: &Inputs, caps: &Caps, session: &mut Session) -> Result<Vec<CheckReport>> {
    let pair =
        |session: &mut Session| session.algebras([need(&inputs.left, "--left")?, need(&inputs.right, "--right")?]);
    let single = |session: &mut Session| session.algebra(need(&inputs.algebra, "--algebra")?, None);
    let report = match kind {
        CheckKind::Centralic => {
            let [x, y] = pair(session)?;
            centralic_pair_check(&x, &y)?
        }
        CheckKind::T => condition_T_check(&single(session)?, caps)?,
        CheckKind::S => condition_S_check(&single(session)?, caps)?,
        CheckKind::Unital => {
            let [x, y] = pair(session)?;
            unital_check(&x, &y)?
        }
        CheckKind::WeaklyUnital => {
            let [x, y] = pair(session)?;
            let family = match &inputs.catalog {
                Some(c) => session.family(c)?,
                None => catalog::full(),
            };
            let tests = tests_for(session, &x, &family)?;
            weakly_unital_check(&x, &y, &tests)?
        }
        CheckKind::Gumm => gumm_shifting_check(&single(session)?, caps)?,
        CheckKind::FactorPermutable => factor_permutable_check(&single(session)?, caps)?,
        CheckKind::LocalCentralic => {
            let args = [
                need(&inputs.left, "--left")?,
                need(&inputs.right, "--right")?,
                need(&inputs.target, "--target")?,
            ];
            let [a, b, x] = session.algebras(args)?;
            let p = hom(&a, &x, need(&inputs.f, "--f")?, "--f")?;
            let q = hom(&b, &x, need(&inputs.g, "--g")?, "--g")?;
            local_centralic_check(&p, &q, caps)?
        }
        CheckKind::CoeqProduct => {
            let family = session.family(inputs.catalog.as_deref().unwrap_or("all"))?;
            let mut out = Vec::new();
            for mut slice in catalog::slices(&family) {
                if slice.iter().all(|a| a.size() > 1) {
                    slice.push(FiniteAlgebra::trivial(slice[0].signature()));
                }
                for a in &slice {
                    session.register(a)?;
                }
                let instances = coequaliser_instances(&slice)?;
                for c1 in &instances {
                    for c2 in &instances {
                        out.push(coeq_product_commute_check(c1, c2)?);
                    }
                }
            }
            return Ok(out);
        }
    };
    Ok(vec![report])
}

/// Confirms every failure of a saved document from its counterexample, then
/// reruns the recorded command against the inlined algebras and compares.
pub fn replay(path: &Path, args: Vec<String>) -> Result<ReportDocument> {
    let shown = path.display();
    let text = std::fs::read_to_string(path).with_context(|| format!("{shown}: cannot read"))?;
    let doc: ReportDocument = serde_json::from_str(&text).with_context(|| format!("{shown}: not a report document"))?;
    if doc.command.first().map(String::as_str) == Some("replay") {
        bail!("{shown}: a replay document cannot be replayed");
    }
    let mut algebras: BTreeMap<String, Arc<FiniteAlgebra>> = BTreeMap::new();
    for (name, raw) in &doc.algebras {
        let a = load_algebra(raw).with_context(|| format!("{shown}: algebras.{name}"))?;
        algebras.insert(name.clone(), a);
    }
    let caps = Caps::from(doc.caps);

    let mut reports = Vec::new();
    for (i, r) in doc.reports.iter().enumerate() {
        if !r.failed() {
            continue;
        }
        let cx = r
            .counterexample
            .as_ref()
            .ok_or_else(|| anyhow!("{shown}: reports[{i}] fails without a counterexample"))?;
        let involved = cx
            .algebras
            .iter()
            .map(|n| {
                algebras
                    .get(n)
                    .cloned()
                    .ok_or_else(|| anyhow!("{shown}: reports[{i}] names `{n}`, which is not inlined"))
            })
            .collect::<Result<Vec<_>>>()?;
        let confirmed = replay_cx(&r.check, cx, &involved, &caps).with_context(|| format!("{shown}: reports[{i}]"))?;
        let report = CheckReport::new(&format!("replay {}", r.check), r.subjects.clone());
        reports.push(if confirmed {
            report
        } else {
            report.fail(Counterexample::new(cx.algebras.clone()).bind("report", i))
        });
    }

    let recorded = std::iter::once("centralic".to_string()).chain(doc.command.iter().cloned());
    let cli = Cli::try_parse_from(recorded).with_context(|| format!("{shown}: recorded command"))?;
    let mut session = Session::replaying(&doc.inputs, &algebras).with_context(|| shown.to_string())?;
    let rerun = dispatch(&cli.command, &caps, &mut session)?;
    let report = CheckReport::new("rerun", [doc.command.join(" ")]).stat("reports", rerun.len() as u64);
    reports.push(match rerun.iter().zip(&doc.reports).position(|(a, b)| a != b) {
        None if rerun.len() == doc.reports.len() => report,
        first => {
            let at = first.unwrap_or(rerun.len().min(doc.reports.len()));
            report.fail(Counterexample::new(Vec::<String>::new()).bind("first_difference", at))
        }
    });

    let mut out = Session::new();
    out.inputs = doc.inputs.clone();
    out.algebras = doc.algebras.clone();
    Ok(ReportDocument::new(args, &caps, out, reports))
}
