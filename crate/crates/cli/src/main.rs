//! `centralic`: run centrality checks on finite pointed algebras and emit
//! replayable reports.

mod commands;
mod document;
mod inputs;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use centralic::Caps;

use crate::document::{exit_status, ReportDocument};
use crate::inputs::Session;

#[derive(Debug, Parser)]
#[command(name = "centralic", version, about = "Centrality checks on finite pointed algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit the canonical JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest carrier whose congruence lattice may be enumerated.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_congruences: Option<u64>,

    /// Operation applications allowed in one term search.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_steps: Option<u64>,

    /// Record wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Cli {
    pub fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(n) = self.cap_congruences {
            caps.congruence_carrier = n as usize;
        }
        if let Some(n) = self.cap_steps {
            caps.term_steps = n;
        }
        caps
    }
}

/// Algebra arguments accept a built-in name (`Z2`, `group-z2`, ...), a
/// product `A*B`, `trivial` or `trivial:<name>`, or a path to a JSON
/// algebra document.
#[derive(Debug, Clone, Default, Args)]
pub struct Inputs {
    #[arg(long, value_name = "NAME|PATH")]
    pub algebra: Option<String>,
    #[arg(long, value_name = "NAME|PATH")]
    pub left: Option<String>,
    #[arg(long, value_name = "NAME|PATH")]
    pub right: Option<String>,
    /// Common codomain for `cooperators` and `check local-centralic`.
    #[arg(long, value_name = "NAME|PATH")]
    pub target: Option<String>,
    /// A catalog name or algebra, used as the test family.
    #[arg(long, value_name = "NAME|PATH")]
    pub catalog: Option<String>,
    /// A morphism `--left -> --right` as a comma-separated table.
    #[arg(long, value_name = "TABLE")]
    pub map: Option<String>,
    #[arg(long, value_name = "TABLE")]
    pub f: Option<String>,
    #[arg(long, value_name = "TABLE")]
    pub g: Option<String>,
    #[arg(long, value_enum)]
    pub reflection: Option<ReflectArg>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a condition.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// All cooperators of `f: A -> X` and `g: B -> X`.
    Cooperators(Inputs),
    /// Centrality of `--map`, or of every morphism `--left -> --right`.
    Central(Inputs),
    /// The additive monoid of central morphisms `--left -> --right`.
    Zmonoid(Inputs),
    /// Symmetrizability of `--map`, or of every morphism `--left -> --right`.
    Symmetrizable(Inputs),
    Commutative(Inputs),
    Abelian(Inputs),
    /// Construct a reflection and its unit.
    Reflect {
        #[arg(value_enum)]
        kind: ReflectArg,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Verify a reflection: universality or product preservation.
    Verify {
        #[arg(value_enum)]
        what: VerifyKind,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Search for a term of the given shape.
    Terms {
        #[arg(value_enum)]
        kind: TermArg,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Re-derive every failure in a JSON report and rerun its command.
    Replay {
        #[arg(long, value_name = "PATH")]
        report: std::path::PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Centralic,
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "S", alias = "s")]
    S,
    Unital,
    WeaklyUnital,
    Gumm,
    FactorPermutable,
    LocalCentralic,
    CoeqProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReflectArg {
    Com,
    Ab,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Universal,
    Products,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TermArg {
    Majority,
    M4,
    Plus,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let doc = match run(&cli, &args) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let doc = ReportDocument {
        timing_ms: cli.timing.then(|| start.elapsed().as_millis() as u64),
        ..doc
    };
    print!("{}", if cli.json { doc.to_json() } else { doc.to_text() });
    ExitCode::from(exit_status(&doc.reports))
}

fn run(cli: &Cli, args: &[String]) -> anyhow::Result<ReportDocument> {
    if let Command::Replay { report } = &cli.command {
        return commands::replay(report, args.to_vec());
    }
    let caps = cli.caps();
    let mut session = Session::new();
    let reports = commands::dispatch(&cli.command, &caps, &mut session)?;
    Ok(ReportDocument::new(args.to_vec(), &caps, session, reports))
}
