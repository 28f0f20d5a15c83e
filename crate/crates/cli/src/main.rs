//! Command-line front end. JSON goes to stdout and a one-line summary to
//! stderr. Errors exit with status 2; otherwise the status is 0 exactly
//! when the verdict holds or the crossval report is clean.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use srgci_core::classify::{check_gci, check_linear_powers, classify_structure};
use srgci_core::crossval::{crossval, CrossvalConfig, CrossvalReport, Reproducer, Sweep};
use srgci_core::io::Input;
use srgci_core::oracles::{
    betti_orbits, betti_orbits_sound, is_flc, linearity_of_orbits, local_cohomology_summary, BettiOrbit,
};
use srgci_core::{FieldSpec, MonomialIdeal, PathMode};

#[derive(Parser)]
#[command(
    name = "srgci",
    version,
    about = "Generalized complete intersections and linear powers of Stanley-Reisner ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural verdict: disjoint union of simplices or of paths of length at most 2.
    Classify(InputArgs),
    /// Generalized complete intersection test with its condition-level report.
    CheckGci(CheckerArgs),
    /// Linear resolution of every power, decided combinatorially.
    LinearPowers(CheckerArgs),
    /// Graded Betti numbers of a power of the ideal, up to variable symmetry.
    Betti(OracleArgs),
    /// Local cohomology summary of S/I^L: regularity and negative-degree pieces.
    Cohomology(OracleArgs),
    /// Finite local cohomology of S/I^L below the Krull dimension.
    Flc(OracleArgs),
    /// Cross-validate the combinatorial checkers against the algebraic oracles.
    Crossval(CrossvalArgs),
}

#[derive(Args)]
struct InputArgs {
    /// JSON file with either {"n", "facets"} or {"n", "generators"}.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct CheckerArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Path4Mode::Simple)]
    path4_mode: Path4Mode,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    power: u32,
}

#[derive(Args)]
struct FieldArgs {
    /// `rational` or a prime such as `32003`.
    #[arg(long, default_value = "32003", value_parser = parse_field)]
    field: FieldSpec,
}

#[derive(Args)]
struct CrossvalArgs {
    /// Replay a reproducer file instead of running the sweeps.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    field: FieldArgs,
    /// Sweeps to run; repeat for several. Defaults to all.
    #[arg(long, value_enum)]
    sweep: Vec<SweepArg>,
    #[arg(long, default_value_t = 4)]
    max_n: u32,
    #[arg(long, default_value_t = 2)]
    max_power: u32,
    /// Sample count for every sampled sweep.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Path4Mode::Simple)]
    path4_mode: Path4Mode,
    /// Enumerate the main sweep exhaustively up to relabeling.
    #[arg(long)]
    exhaustive: bool,
    /// Write one reproducer file per discrepancy into this directory.
    #[arg(long)]
    repro_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Path4Mode {
    Simple,
    Walk,
}

impl From<Path4Mode> for PathMode {
    fn from(mode: Path4Mode) -> Self {
        match mode {
            Path4Mode::Simple => PathMode::SimpleVertices,
            Path4Mode::Walk => PathMode::WalkDistinctEdges,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepArg {
    Main,
    Froberg,
    Hhz,
}

impl From<SweepArg> for Sweep {
    fn from(sweep: SweepArg) -> Self {
        match sweep {
            SweepArg::Main => Sweep::Main,
            SweepArg::Froberg => Sweep::Froberg,
            SweepArg::Hhz => Sweep::Hhz,
        }
    }
}

fn parse_field(text: &str) -> Result<FieldSpec, String> {
    if text.eq_ignore_ascii_case("rational") || text.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rational);
    }
    let p: u32 = text.parse().map_err(|_| format!("expected `rational` or a prime, got `{text}`"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

/// What a command produced: the JSON document, a summary line and whether
/// the verdict holds.
struct Outcome {
    json: serde_json::Value,
    summary: String,
    ok: bool,
}

impl Outcome {
    fn new(value: &impl Serialize, summary: String, ok: bool) -> anyhow::Result<Self> {
        Ok(Outcome { json: serde_json::to_value(value)?, summary, ok })
    }
}

fn read_input(path: &Path) -> anyhow::Result<Input> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Input::parse(&text)?)
}

fn power_of(args: &OracleArgs) -> anyhow::Result<MonomialIdeal> {
    Ok(read_input(&args.input.input)?.to_ideal()?.power(args.power)?)
}

#[derive(Serialize)]
struct BettiReport {
    power: u32,
    field: FieldSpec,
    generating_degree: u32,
    linear: bool,
    witness: Option<srgci_core::oracles::BettiEntry>,
    /// Orbit-weighted sums against the Hilbert numerator and `β_0`.
    sound: bool,
    /// `β_{i,j}` by homological index and total degree.
    totals: Vec<TotalBetti>,
    orbits: Vec<BettiOrbit>,
}

#[derive(Serialize)]
struct TotalBetti {
    i: usize,
    degree: u32,
    rank: u128,
}

fn betti(args: &OracleArgs) -> anyhow::Result<Outcome> {
    let ideal = power_of(args)?;
    let delta = ideal.generating_degree().ok_or(srgci_core::Error::NotEquigenerated)?;
    let field = args.field.field;
    let orbits = betti_orbits(&ideal, field);
    let linearity = linearity_of_orbits(&orbits, delta);
    let mut totals: BTreeMap<(usize, u32), u128> = BTreeMap::new();
    for o in &orbits {
        *totals.entry((o.i, o.degree.degree())).or_default() += o.rank as u128 * o.orbit;
    }
    let report = BettiReport {
        power: args.power,
        field,
        generating_degree: delta,
        linear: linearity.linear,
        witness: linearity.witness,
        sound: betti_orbits_sound(&ideal, &orbits),
        totals: totals.into_iter().map(|((i, degree), rank)| TotalBetti { i, degree, rank }).collect(),
        orbits,
    };
    let summary = format!(
        "I^{}: {} generators of degree {delta}, {} resolution",
        args.power,
        ideal.generators().len(),
        if report.linear { "linear" } else { "nonlinear" }
    );
    let ok = report.linear;
    Outcome::new(&report, summary, ok)
}

fn cohomology(args: &OracleArgs) -> anyhow::Result<Outcome> {
    let ideal = power_of(args)?;
    let summary = local_cohomology_summary(&ideal, ideal.krull_dimension(), args.field.field);
    let line = format!(
        "S/I^{}: reg {}, {} negative-degree pieces below the Krull dimension",
        args.power,
        summary.regularity,
        summary.violations.len()
    );
    Outcome::new(&summary, line, true)
}

fn flc(args: &OracleArgs) -> anyhow::Result<Outcome> {
    let ideal = power_of(args)?;
    let report = is_flc(&ideal, ideal.krull_dimension(), args.field.field);
    let summary = format!("S/I^{} has {}finite local cohomology", args.power, if report.verdict { "" } else { "no " });
    let ok = report.verdict;
    Outcome::new(&report, summary, ok)
}

fn report_outcome(report: &CrossvalReport, repro_dir: Option<&Path>) -> anyhow::Result<Outcome> {
    let mut summary =
        format!("{} discrepancies, {} Betti check failures", report.discrepancy_count(), report.betti_failure_count());
    if let Some(dir) = repro_dir {
        let written = report.write_reproducers(dir).with_context(|| format!("writing to {}", dir.display()))?;
        summary += &format!(", {} reproducers in {}", written.len(), dir.display());
    }
    let ok = report.discrepancy_count() == 0 && report.betti_failure_count() == 0;
    Outcome::new(report, summary, ok)
}

fn run_crossval(args: &CrossvalArgs) -> anyhow::Result<Outcome> {
    let report = match &args.input {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Reproducer::parse(&text)?.replay()?
        }
        None => {
            let sweeps = if args.sweep.is_empty() {
                vec![Sweep::Main, Sweep::Froberg, Sweep::Hhz]
            } else {
                args.sweep.iter().map(|&s| s.into()).collect()
            };
            let config = CrossvalConfig {
                sweeps,
                max_n: args.max_n,
                max_power: args.max_power,
                samples: args.samples,
                seed: args.seed,
                exhaustive: args.exhaustive,
                path4_mode: args.path4_mode.into(),
                field: args.field.field,
                ..CrossvalConfig::default()
            };
            crossval(&config)?
        }
    };
    report_outcome(&report, args.repro_dir.as_deref())
}

fn run(command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Classify(args) => {
            let verdict = classify_structure(&read_input(&args.input)?.to_complex()?)?;
            let summary = match &verdict.decomposition {
                Some(d) => format!("true: {:?}", d.kind()),
                None => format!("false: {}", verdict.reason.as_deref().unwrap_or("")),
            };
            let ok = verdict.verdict;
            Outcome::new(&verdict, summary, ok)
        }
        Command::CheckGci(args) => {
            let report = check_gci(&read_input(&args.input.input)?.to_complex()?, args.path4_mode.into())?;
            let ok = report.verdict;
            Outcome::new(&report, format!("gCI: {ok}"), ok)
        }
        Command::LinearPowers(args) => {
            let report = check_linear_powers(&read_input(&args.input.input)?.to_complex()?, args.path4_mode.into())?;
            let ok = report.verdict;
            Outcome::new(&report, format!("all powers linear with finite local cohomology: {ok}"), ok)
        }
        Command::Betti(args) => betti(args),
        Command::Cohomology(args) => cohomology(args),
        Command::Flc(args) => flc(args),
        Command::Crossval(args) => run_crossval(args),
    }
}

fn error_kind(error: &anyhow::Error) -> &'static str {
    if let Some(e) = error.downcast_ref::<srgci_core::Error>() {
        e.kind()
    } else if error.downcast_ref::<std::io::Error>().is_some() {
        "IoError"
    } else {
        "Error"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            println!("{}", serde_json::to_string_pretty(&outcome.json).expect("serializable"));
            eprintln!("{}", outcome.summary);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(error) => {
            println!("{}", json!({ "error": error_kind(&error), "message": format!("{error:#}") }));
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}
