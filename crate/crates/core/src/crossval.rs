//! Cross-validation of the combinatorial checkers against the homological
//! oracles.
//!
//! Three sweeps:
//!
//! * `main`: flag pure complexes with `core Δ = Δ` that are not complete
//!   intersections. The structure classifier, the linear-powers checker and
//!   `gCI ∧ chordal 1-skeleton` must all equal the oracle conjunction
//!   `linear(I^ℓ) ∧ FLC(I^ℓ)` for `ℓ = 1..=max_power`.
//! * `froberg`: a degree-2 squarefree ideal `I_G` has a linear resolution
//!   exactly when the complement of `G` is chordal.
//! * `hhz`: on random degree-2 squarefree ideals, a linear resolution of
//!   `I` forces one for `I²` (and `I³` for a prefix). The converse fails
//!   for single powers: `I(C₅)` is not linear but `I(C₅)²` is.
//!
//! Instances are evaluated in parallel; records keep instance order so
//! reports are byte-identical for a fixed configuration.

use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{check_gci, check_linear_powers, classify_structure};
use crate::complex::SimplicialComplex;
use crate::enumerate::{enumerate_complexes, labeled_graphs, ComplexFilter, Sampler, MAX_ENUMERATION_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{Graph, PathMode};
use crate::homology::FieldSpec;
use crate::ideal::MonomialIdeal;
use crate::io::{ComplexFile, IdealFile, Input};
use crate::oracles::{
    betti_matches_hilbert_numerator, betti_zero_matches_generators, graded_betti, is_flc, linearity_of,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sweep {
    Main,
    Froberg,
    Hhz,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossvalConfig {
    pub sweeps: Vec<Sweep>,
    /// Vertex bound for the main sweep.
    pub max_n: u32,
    pub max_power: u32,
    /// Overrides every per-sweep sample count when set.
    pub samples: Option<usize>,
    pub seed: u64,
    /// Enumerate the main sweep exhaustively instead of sampling.
    pub exhaustive: bool,
    pub path4_mode: PathMode,
    pub field: FieldSpec,
    /// All labeled graphs up to this size, then samples one size larger.
    pub froberg_max_n: u32,
    pub hhz_max_n: u32,
    /// Leading HHZ samples that also compare against `I³`.
    pub hhz_cube_count: usize,
}

impl Default for CrossvalConfig {
    fn default() -> Self {
        CrossvalConfig {
            sweeps: vec![Sweep::Main, Sweep::Froberg, Sweep::Hhz],
            max_n: 4,
            max_power: 2,
            samples: None,
            seed: 0,
            exhaustive: true,
            path4_mode: PathMode::default(),
            field: FieldSpec::default(),
            froberg_max_n: 5,
            hhz_max_n: 6,
            hhz_cube_count: 30,
        }
    }
}

const MAIN_SAMPLES: usize = 100;
const FROBERG_SAMPLES: usize = 500;
const HHZ_SAMPLES: usize = 200;

impl CrossvalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_power == 0 {
            return Err(Error::InvalidArgument("max_power must be at least 1".into()));
        }
        if self.exhaustive && self.max_n > MAX_ENUMERATION_VERTICES {
            return Err(Error::TooManyVertices { max: MAX_ENUMERATION_VERTICES, got: self.max_n });
        }
        if self.max_n < 2 || self.hhz_max_n < 2 {
            return Err(Error::InvalidArgument("vertex bounds must be at least 2".into()));
        }
        if self.froberg_max_n >= MAX_ENUMERATION_VERTICES {
            return Err(Error::TooManyVertices { max: MAX_ENUMERATION_VERTICES - 1, got: self.froberg_max_n });
        }
        Ok(())
    }

    fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

/// Oracle verdicts for one power `I^ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerVerdict {
    pub power: u32,
    pub linear: bool,
    pub flc: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckerVerdicts {
    pub structure: bool,
    pub linear_powers: bool,
    pub gci_and_chordal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainRecord {
    pub index: usize,
    pub complex: ComplexFile,
    pub checkers: Option<CheckerVerdicts>,
    pub checker_error: Option<String>,
    pub oracle: Vec<PowerVerdict>,
    pub oracle_verdict: bool,
    /// Betti table passed the Hilbert-numerator and `β₀` checks for every
    /// power.
    pub betti_sound: bool,
    pub agreement: bool,
    /// Oracle conjunction recomputed over `Q`, present on disagreement.
    pub rational_oracle_verdict: Option<bool>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobergRecord {
    pub index: usize,
    pub ideal: IdealFile,
    pub complement_chordal: bool,
    pub linear: bool,
    pub betti_sound: bool,
    pub agreement: bool,
    pub rational_linear: Option<bool>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhzRecord {
    pub index: usize,
    pub ideal: IdealFile,
    /// `linear(I^ℓ)` for `ℓ = 1, 2` and possibly `3`.
    pub linear: Vec<bool>,
    pub betti_sound: bool,
    pub agreement: bool,
    pub rational_linear: Option<Vec<bool>>,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub trait Record {
    fn agreement(&self) -> bool;
    fn betti_sound(&self) -> bool;
    fn elapsed(&self) -> Duration;
}

macro_rules! impl_record {
    ($($t:ty),*) => {$(
        impl Record for $t {
            fn agreement(&self) -> bool {
                self.agreement
            }
            fn betti_sound(&self) -> bool {
                self.betti_sound
            }
            fn elapsed(&self) -> Duration {
                self.elapsed
            }
        }
    )*};
}
impl_record!(MainRecord, FrobergRecord, HhzRecord);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary<R> {
    pub instances: usize,
    pub agreements: usize,
    pub betti_failures: usize,
    pub discrepancies: Vec<R>,
    #[serde(skip)]
    pub records: Vec<R>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl<R: Record + Clone> SweepSummary<R> {
    fn from_records(records: Vec<R>) -> Self {
        SweepSummary {
            instances: records.len(),
            agreements: records.iter().filter(|r| r.agreement()).count(),
            betti_failures: records.iter().filter(|r| !r.betti_sound()).count(),
            discrepancies: records.iter().filter(|r| !r.agreement()).cloned().collect(),
            elapsed: records.iter().map(Record::elapsed).sum(),
            records,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossvalReport {
    pub config: CrossvalConfig,
    pub main: Option<SweepSummary<MainRecord>>,
    pub froberg: Option<SweepSummary<FrobergRecord>>,
    pub hhz: Option<SweepSummary<HhzRecord>>,
}

impl CrossvalReport {
    pub fn discrepancy_count(&self) -> usize {
        self.main.as_ref().map_or(0, |s| s.discrepancies.len())
            + self.froberg.as_ref().map_or(0, |s| s.discrepancies.len())
            + self.hhz.as_ref().map_or(0, |s| s.discrepancies.len())
    }

    pub fn betti_failure_count(&self) -> usize {
        self.main.as_ref().map_or(0, |s| s.betti_failures)
            + self.froberg.as_ref().map_or(0, |s| s.betti_failures)
            + self.hhz.as_ref().map_or(0, |s| s.betti_failures)
    }

    /// Reproducer files for every discrepancy, named `<sweep>-<index>.json`.
    pub fn reproducers(&self) -> Vec<(String, Reproducer)> {
        let mut out = Vec::new();
        let cfg = &self.config;
        let make = |sweep, input| Reproducer {
            sweep,
            input,
            max_power: cfg.max_power,
            path4_mode: cfg.path4_mode,
            field: cfg.field,
        };
        for r in self.main.iter().flat_map(|s| &s.discrepancies) {
            out.push((format!("main-{}.json", r.index), make(Sweep::Main, Input::Complex(r.complex.clone()))));
        }
        for r in self.froberg.iter().flat_map(|s| &s.discrepancies) {
            out.push((format!("froberg-{}.json", r.index), make(Sweep::Froberg, Input::Ideal(r.ideal.clone()))));
        }
        for r in self.hhz.iter().flat_map(|s| &s.discrepancies) {
            let mut rep = make(Sweep::Hhz, Input::Ideal(r.ideal.clone()));
            rep.max_power = r.linear.len() as u32;
            out.push((format!("hhz-{}.json", r.index), rep));
        }
        out
    }

    pub fn write_reproducers(&self, dir: &Path) -> std::io::Result<Vec<String>> {
        std::fs::create_dir_all(dir)?;
        let mut names = Vec::new();
        for (name, rep) in self.reproducers() {
            let text = serde_json::to_string_pretty(&rep).expect("serializable");
            std::fs::write(dir.join(&name), text + "\n")?;
            names.push(name);
        }
        Ok(names)
    }
}

/// A single instance with the settings needed to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reproducer {
    pub sweep: Sweep,
    #[serde(flatten)]
    pub input: Input,
    pub max_power: u32,
    pub path4_mode: PathMode,
    pub field: FieldSpec,
}

impl Reproducer {
    pub fn parse(text: &str) -> Result<Reproducer> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Reruns the instance as a one-record report.
    pub fn replay(&self) -> Result<CrossvalReport> {
        let config = CrossvalConfig {
            sweeps: vec![self.sweep],
            max_power: self.max_power,
            path4_mode: self.path4_mode,
            field: self.field,
            ..CrossvalConfig::default()
        };
        let mut report = CrossvalReport { config, main: None, froberg: None, hhz: None };
        match self.sweep {
            Sweep::Main => {
                let complex = self.input.to_complex()?;
                let record = evaluate_main(0, &complex, &report.config);
                report.main = Some(SweepSummary::from_records(vec![record]));
            }
            Sweep::Froberg => {
                let graph = self.input.to_ideal()?.edge_graph()?;
                report.froberg = Some(SweepSummary::from_records(vec![evaluate_froberg(0, &graph, self.field)]));
            }
            Sweep::Hhz => {
                let ideal = self.input.to_ideal()?;
                if !ideal.is_degree_two() || !ideal.is_squarefree() {
                    return Err(Error::NotDegreeTwo);
                }
                let record = evaluate_hhz(0, &ideal, self.max_power.max(2), self.field);
                report.hhz = Some(SweepSummary::from_records(vec![record]));
            }
        }
        Ok(report)
    }
}

/// Oracle verdicts for `I^1..=I^max_power` plus the Betti soundness flag.
fn oracle_powers(ideal: &MonomialIdeal, top_dim: usize, max_power: u32, field: FieldSpec) -> (Vec<PowerVerdict>, bool) {
    let mut sound = true;
    let verdicts = (1..=max_power)
        .map(|l| {
            let power = ideal.power(l).expect("positive power");
            let (linear, ok) = linear_and_sound(&power, field);
            sound &= ok;
            PowerVerdict { power: l, linear, flc: is_flc(&power, top_dim, field).verdict }
        })
        .collect();
    (verdicts, sound)
}

fn linear_and_sound(ideal: &MonomialIdeal, field: FieldSpec) -> (bool, bool) {
    let table = graded_betti(ideal, field);
    let delta = ideal.generating_degree().expect("equigenerated");
    let sound = betti_matches_hilbert_numerator(ideal, &table) && betti_zero_matches_generators(ideal, &table);
    (linearity_of(&table, delta).linear, sound)
}

fn conjunction(verdicts: &[PowerVerdict]) -> bool {
    verdicts.iter().all(|v| v.linear && v.flc)
}

fn checkers(complex: &SimplicialComplex, mode: PathMode) -> Result<CheckerVerdicts> {
    let structure = classify_structure(complex)?.verdict;
    let linear_powers = check_linear_powers(complex, mode)?.verdict;
    let gci = check_gci(complex, mode)?.verdict;
    let chordal = complex.one_skeleton_graph().is_chordal().is_chordal();
    Ok(CheckerVerdicts { structure, linear_powers, gci_and_chordal: gci && chordal })
}

pub fn evaluate_main(index: usize, complex: &SimplicialComplex, config: &CrossvalConfig) -> MainRecord {
    let start = Instant::now();
    let ideal = MonomialIdeal::stanley_reisner(complex).expect("not a simplex");
    let top_dim = complex.krull_dimension();
    let (oracle, betti_sound) = oracle_powers(&ideal, top_dim, config.max_power, config.field);
    let oracle_verdict = conjunction(&oracle);
    let (checkers, checker_error) = match checkers(complex, config.path4_mode) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let agreement = checkers.as_ref().is_some_and(|c| {
        c.structure == oracle_verdict && c.linear_powers == oracle_verdict && c.gci_and_chordal == oracle_verdict
    });
    let rational_oracle_verdict = (!agreement && config.field != FieldSpec::Rational)
        .then(|| conjunction(&oracle_powers(&ideal, top_dim, config.max_power, FieldSpec::Rational).0));
    MainRecord {
        index,
        complex: ComplexFile::from_complex(complex),
        checkers,
        checker_error,
        oracle,
        oracle_verdict,
        betti_sound,
        agreement,
        rational_oracle_verdict,
        elapsed: start.elapsed(),
    }
}

pub fn evaluate_froberg(index: usize, graph: &Graph, field: FieldSpec) -> FrobergRecord {
    let start = Instant::now();
    let ideal = MonomialIdeal::edge_ideal(graph).expect("graph has an edge");
    let complement_chordal = graph.complement().is_chordal().is_chordal();
    let (linear, betti_sound) = linear_and_sound(&ideal, field);
    let agreement = complement_chordal == linear;
    let rational_linear =
        (!agreement && field != FieldSpec::Rational).then(|| linear_and_sound(&ideal, FieldSpec::Rational).0);
    FrobergRecord {
        index,
        ideal: IdealFile::from_ideal(&ideal),
        complement_chordal,
        linear,
        betti_sound,
        agreement,
        rational_linear,
        elapsed: start.elapsed(),
    }
}

pub fn evaluate_hhz(index: usize, ideal: &MonomialIdeal, max_power: u32, field: FieldSpec) -> HhzRecord {
    let start = Instant::now();
    let run = |field| {
        let mut sound = true;
        let linear: Vec<bool> = (1..=max_power)
            .map(|l| {
                let (linear, ok) = linear_and_sound(&ideal.power(l).expect("positive power"), field);
                sound &= ok;
                linear
            })
            .collect();
        (linear, sound)
    };
    let (linear, betti_sound) = run(field);
    let agreement = !linear[0] || linear.iter().all(|&b| b);
    let rational_linear = (!agreement && field != FieldSpec::Rational).then(|| run(FieldSpec::Rational).0);
    HhzRecord {
        index,
        ideal: IdealFile::from_ideal(ideal),
        linear,
        betti_sound,
        agreement,
        rational_linear,
        elapsed: start.elapsed(),
    }
}

/// Complexes for the main sweep: every isomorphism class when exhaustive,
/// otherwise clique complexes of seeded random graphs that pass the filter.
pub fn main_instances(config: &CrossvalConfig) -> Result<Vec<SimplicialComplex>> {
    let filter = ComplexFilter::CHARACTERIZATION;
    if config.exhaustive {
        return enumerate_complexes(config.max_n, filter);
    }
    let mut sampler = Sampler::new(config.seed);
    let wanted = config.samples_or(MAIN_SAMPLES);
    let mut out = Vec::with_capacity(wanted);
    // graphs on few vertices rarely pass the filter; bound the attempts
    for _ in 0..wanted.saturating_mul(1000) {
        if out.len() == wanted {
            break;
        }
        let k = 2 + sampler.below(config.max_n - 1);
        let c = SimplicialComplex::clique_complex(&sampler.graph(k));
        if filter.accepts(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Every labeled graph with an edge on `2..=froberg_max_n` vertices, then
/// seeded samples on `froberg_max_n + 1` vertices.
pub fn froberg_instances(config: &CrossvalConfig) -> Vec<Graph> {
    let mut out: Vec<Graph> =
        (2..=config.froberg_max_n).flat_map(labeled_graphs).filter(|g| g.edge_count() > 0).collect();
    let mut sampler = Sampler::new(config.seed);
    let k = config.froberg_max_n + 1;
    let wanted = config.samples_or(FROBERG_SAMPLES);
    let mut drawn = 0;
    while drawn < wanted {
        let g = sampler.graph(k);
        if g.edge_count() > 0 {
            out.push(g);
            drawn += 1;
        }
    }
    out
}

pub fn hhz_instances(config: &CrossvalConfig) -> Vec<MonomialIdeal> {
    // offset keeps the stream independent of the other sweeps
    let mut sampler = Sampler::new(config.seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..config.samples_or(HHZ_SAMPLES)).map(|_| sampler.degree_two_ideal(config.hhz_max_n)).collect()
}

pub fn crossval(config: &CrossvalConfig) -> Result<CrossvalReport> {
    config.validate()?;
    let mut report = CrossvalReport { config: config.clone(), main: None, froberg: None, hhz: None };
    if config.sweeps.contains(&Sweep::Main) {
        let instances = main_instances(config)?;
        let records = instances.par_iter().enumerate().map(|(i, c)| evaluate_main(i, c, config)).collect();
        report.main = Some(SweepSummary::from_records(records));
    }
    if config.sweeps.contains(&Sweep::Froberg) {
        let instances = froberg_instances(config);
        let records = instances.par_iter().enumerate().map(|(i, g)| evaluate_froberg(i, g, config.field)).collect();
        report.froberg = Some(SweepSummary::from_records(records));
    }
    if config.sweeps.contains(&Sweep::Hhz) {
        let instances = hhz_instances(config);
        let records = instances
            .par_iter()
            .enumerate()
            .map(|(i, ideal)| {
                let max_power = if i < config.hhz_cube_count { 3 } else { 2 };
                evaluate_hhz(i, ideal, max_power, config.field)
            })
            .collect();
        report.hhz = Some(SweepSummary::from_records(records));
    }
    Ok(report)
}
