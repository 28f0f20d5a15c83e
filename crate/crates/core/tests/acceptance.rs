//! Acceptance suite. Prints one line per criterion and exits nonzero when
//! any criterion fails. All comparisons are exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use srgci_core::classify::{check_minimal_multiplicity, classify_structure, is_matroidal};
use srgci_core::crossval::{crossval, CrossvalConfig, CrossvalReport, Sweep};
use srgci_core::enumerate::Sampler;
use srgci_core::oracles::{
    betti_orbits, betti_orbits_sound, has_linear_resolution, hochster_dim, is_flc, linearity_of_orbits,
    local_cohomology_dim,
};
use srgci_core::{Face, FieldSpec, MonomialIdeal, PathMode, SignedDegree, SimplicialComplex};

const FIELD: FieldSpec = FieldSpec::Prime(32003);
const SEED: u64 = 0;

/// Criteria that cannot hold as stated, with the reason printed beside
/// them. They do not fail the run; an unexpected pass does.
const EXPECTED_FAILURES: &[(&str, &str)] =
    &[("AC3", "linear(I²) does not imply linear(I): an induced 5-cycle makes I nonlinear while I² is linear")];

struct Outcome {
    id: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

/// Betti soundness of ideals checked outside the crossval sweeps.
#[derive(Default)]
struct Soundness {
    checked: usize,
    failures: Vec<String>,
}

impl Soundness {
    /// Records the soundness of `ideal` and returns its linearity.
    fn linear(&mut self, ideal: &MonomialIdeal, label: impl FnOnce() -> String) -> bool {
        let orbits = betti_orbits(ideal, FIELD);
        self.checked += 1;
        if !betti_orbits_sound(ideal, &orbits) {
            self.failures.push(label());
        }
        linearity_of_orbits(&orbits, ideal.generating_degree().expect("equigenerated")).linear
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn sweep_config(sweep: Sweep, mode: PathMode) -> CrossvalConfig {
    CrossvalConfig {
        sweeps: vec![sweep],
        max_n: 6,
        max_power: 2,
        seed: SEED,
        exhaustive: true,
        path4_mode: mode,
        field: FIELD,
        froberg_max_n: 5,
        hhz_max_n: 6,
        hhz_cube_count: 30,
        samples: None,
    }
}

fn ac1(simple: &CrossvalReport, walk: &CrossvalReport, sweep: Duration, elapsed: Duration) -> Outcome {
    let main = simple.main.as_ref().expect("main sweep");
    let walk_main = walk.main.as_ref().expect("main sweep");
    let passed = main.instances > 0 && main.discrepancies.is_empty() && sweep <= Duration::from_secs(600);
    Outcome {
        id: "AC1",
        passed,
        detail: format!(
            "{} complexes on <= 6 vertices, {} true; discrepancies {} (walk-mode 4-paths: {}, the modes coincide); \
             sweep {:.1}s (limit 600s)",
            main.instances,
            main.records.iter().filter(|r| r.oracle_verdict).count(),
            main.discrepancies.len(),
            walk_main.discrepancies.len(),
            sweep.as_secs_f64(),
        ),
        elapsed,
    }
}

fn ac2(report: &CrossvalReport, elapsed: Duration) -> Outcome {
    let s = report.froberg.as_ref().expect("froberg sweep");
    let passed = s.instances > 0 && s.discrepancies.is_empty() && elapsed <= Duration::from_secs(300);
    Outcome {
        id: "AC2",
        passed,
        detail: format!(
            "{} edge ideals (all labeled graphs on <= 5 vertices, 500 on 6); discrepancies {}; {} linear (limit 300s)",
            s.instances,
            s.discrepancies.len(),
            s.records.iter().filter(|r| r.linear).count(),
        ),
        elapsed,
    }
}

/// Checks `linear(I) ⟺ linear(I²)` (and `I³` for the cube prefix) per
/// ideal. Only the forward direction is a theorem; the reverse fails for
/// edge ideals with an induced 5-cycle, so this criterion is expected to
/// fail. Every failure is replayed over `Q`.
fn ac3(report: &CrossvalReport, elapsed: Duration) -> Outcome {
    let s = report.hhz.as_ref().expect("hhz sweep");
    let cubes = s.records.iter().filter(|r| r.linear.len() == 3).count();
    let mut failures = Vec::new();
    for r in &s.records {
        if r.linear.iter().all(|&b| b == r.linear[0]) {
            continue;
        }
        let ideal = r.ideal.to_ideal().expect("round trip");
        let rational: Vec<bool> = (1..=r.linear.len() as u32)
            .map(|l| {
                let power = ideal.power(l).expect("positive power");
                has_linear_resolution(&power, FieldSpec::Rational).expect("equigenerated").linear
            })
            .collect();
        failures.push(format!(
            "generators {:?}: linear {:?} over GF(32003), {:?} over Q",
            r.ideal.generators, r.linear, rational
        ));
    }
    let within = elapsed <= Duration::from_secs(600);
    Outcome {
        id: "AC3",
        passed: s.instances == 200 && cubes == 30 && failures.is_empty() && within,
        detail: format!(
            "{} ideals, {} with cubes, {} linear; forward implication violations {}; \
             two-sided discrepancies {} (limit 600s){}",
            s.instances,
            cubes,
            s.records.iter().filter(|r| r.linear[0]).count(),
            s.discrepancies.len(),
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default(),
        ),
        elapsed,
    }
}

fn ac4(family: &[SimplicialComplex], soundness: &mut Soundness) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checks = 0;
    for complex in family {
        let ideal = MonomialIdeal::stanley_reisner(complex).expect("not a simplex");
        let alpha = complex.connected_components().len();
        let d = complex.krull_dimension();
        let zero = SignedDegree::zero(complex.n() as usize);
        for l in 1..=3 {
            let power = ideal.power(l).expect("positive power");
            if l == 3 {
                soundness.linear(&power, || format!("AC4 {:?}^3", complex.facets()));
            }
            for i in 0..d {
                let expected = if i == 1 { alpha - 1 } else { 0 };
                let got = local_cohomology_dim(&power, i as i64, &zero, FIELD).expect("valid degree");
                checks += 1;
                if got != expected {
                    failures.push(format!("{:?} l={l} i={i}: {got} != {expected}", complex.facets()));
                }
            }
        }
    }
    Outcome {
        id: "AC4",
        passed: !family.is_empty() && failures.is_empty(),
        detail: format!(
            "{} complexes, {checks} degree-0 pieces for l = 1..3; mismatches {}{}",
            family.len(),
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default(),
        ),
        elapsed: start.elapsed(),
    }
}

fn ac5(soundness: &mut Soundness) -> Outcome {
    let start = Instant::now();
    let supports = [[1, 3], [1, 4], [2, 3], [2, 4], [3, 5], [4, 5]].map(|e| Face::of(&e));
    let ideal = MonomialIdeal::from_supports(5, supports).expect("valid ideal");
    let complex = ideal.to_complex().expect("squarefree");
    let mut facets = complex.facets().to_vec();
    facets.sort();
    let mut expected = vec![Face::of(&[1, 2, 5]), Face::of(&[3, 4])];
    expected.sort();
    let matroidal = is_matroidal(&ideal).expect("squarefree");
    soundness.linear(&ideal, || "AC5".into());
    Outcome {
        id: "AC5",
        passed: facets == expected && matroidal && !complex.is_pure(),
        detail: format!(
            "facets {:?}; matroidal {matroidal}; pure {}",
            facets.iter().map(|f| f.to_vec()).collect::<Vec<_>>(),
            complex.is_pure()
        ),
        elapsed: start.elapsed(),
    }
}

fn disjoint_simplices(r: u32, s: u32) -> SimplicialComplex {
    let facets = (0..r).map(|b| Face::new((1..=s).map(|v| b * s + v)).expect("in range"));
    SimplicialComplex::new(r * s, facets).expect("valid complex")
}

fn ac6(soundness: &mut Soundness) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for r in 2..=4 {
        for s in 2..=4 {
            cases += 1;
            let complex = disjoint_simplices(r, s);
            let report = match check_minimal_multiplicity(&complex, FIELD) {
                Ok(report) => report,
                Err(e) => {
                    failures.push(format!("r={r} s={s}: {e}"));
                    continue;
                }
            };
            let routes = report.by_formula && report.by_structure && report.by_matroid && report.verdict;
            if !routes || report.multiplicity != r as usize || report.bound != r as usize {
                failures
                    .push(format!("r={r} s={s}: routes {routes}, e={}, bound={}", report.multiplicity, report.bound));
            }
            let ideal = MonomialIdeal::stanley_reisner(&complex).expect("not a simplex");
            for l in 1..=3 {
                let power = ideal.power(l).expect("positive power");
                let linear = soundness.linear(&power, || format!("AC6 r={r} s={s} l={l}"));
                let flc = is_flc(&power, complex.krull_dimension(), FIELD).verdict;
                if !(linear && flc) {
                    failures.push(format!("r={r} s={s} l={l}: linear {linear}, flc {flc}"));
                }
            }
        }
    }
    Outcome {
        id: "AC6",
        passed: failures.is_empty(),
        detail: format!(
            "{cases} unions of simplices, powers 1..3; failures {}{}",
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default(),
        ),
        elapsed: start.elapsed(),
    }
}

struct Sample {
    complex: SimplicialComplex,
    l: u32,
    i: i64,
    a: SignedDegree,
    expected: usize,
}

fn draw(family: &[SimplicialComplex], sampler: &mut Sampler) -> Sample {
    let complex = family[sampler.below(family.len() as u32) as usize].clone();
    let n = complex.n();
    let l = 1 + sampler.below(2);
    let i = sampler.below(complex.krull_dimension() as u32) as i64;
    let faces = complex.faces(None);
    let negative = faces[sampler.below(faces.len() as u32) as usize];
    let a = SignedDegree::new((1..=n).map(|v| if negative.contains(v) { -1 } else { 0 }).collect());
    let expected = hochster_dim(&complex, i, &a, FIELD).expect("valid degree");
    Sample { complex, l, i, a, expected }
}

/// Half the samples are redrawn until Hochster's side is nonzero; the
/// negative part is always a face, as elsewhere both sides vanish.
fn ac7(family: &[SimplicialComplex]) -> Outcome {
    let start = Instant::now();
    let mut sampler = Sampler::new(SEED);
    let mut failures = Vec::new();
    let mut nonzero = 0;
    for k in 0..50 {
        let mut sample = draw(family, &mut sampler);
        for _ in 0..1000 {
            if k % 2 == 1 || sample.expected > 0 {
                break;
            }
            sample = draw(family, &mut sampler);
        }
        let Sample { complex, l, i, a, expected } = sample;
        let ideal = MonomialIdeal::stanley_reisner(&complex).expect("not a simplex").power(l).expect("positive power");
        let got = local_cohomology_dim(&ideal, i, &a, FIELD).expect("valid degree");
        nonzero += usize::from(expected > 0);
        if got != expected {
            failures.push(format!("{:?} l={l} i={i} a={:?}: {got} != {expected}", complex.facets(), a.entries()));
        }
    }
    Outcome {
        id: "AC7",
        passed: failures.is_empty() && nonzero > 0,
        detail: format!(
            "50 samples ({nonzero} nonzero); mismatches {}{}",
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default(),
        ),
        elapsed: start.elapsed(),
    }
}

fn ac8(reports: &[&CrossvalReport], soundness: &Soundness, family_size: usize) -> Outcome {
    let start = Instant::now();
    let swept: usize = reports
        .iter()
        .map(|r| {
            r.main.as_ref().map_or(0, |s| s.instances)
                + r.froberg.as_ref().map_or(0, |s| s.instances)
                + r.hhz.as_ref().map_or(0, |s| s.instances)
        })
        .sum();
    let swept_failures: usize = reports.iter().map(|r| r.betti_failure_count()).sum();
    Outcome {
        id: "AC8",
        passed: swept_failures == 0 && soundness.failures.is_empty(),
        detail: format!(
            "{swept} swept instances (all their powers), {} further ideals ({family_size} from the AC4 family); \
             failures {}{}",
            soundness.checked,
            swept_failures + soundness.failures.len(),
            soundness.failures.first().map(|f| format!("; first: {f}")).unwrap_or_default(),
        ),
        elapsed: start.elapsed(),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    let mut soundness = Soundness::default();

    let (simple, t_simple) =
        timed(|| crossval(&sweep_config(Sweep::Main, PathMode::SimpleVertices)).expect("valid config"));
    let (walk, t_walk) =
        timed(|| crossval(&sweep_config(Sweep::Main, PathMode::WalkDistinctEdges)).expect("valid config"));
    outcomes.push(ac1(&simple, &walk, t_simple, t_simple + t_walk));

    let (froberg, t) =
        timed(|| crossval(&sweep_config(Sweep::Froberg, PathMode::SimpleVertices)).expect("valid config"));
    outcomes.push(ac2(&froberg, t));

    let (hhz, t) = timed(|| crossval(&sweep_config(Sweep::Hhz, PathMode::SimpleVertices)).expect("valid config"));
    outcomes.push(ac3(&hhz, t));

    let main = simple.main.as_ref().expect("main sweep");
    let family: Vec<SimplicialComplex> =
        main.records.iter().filter(|r| r.oracle_verdict).map(|r| r.complex.to_complex().expect("round trip")).collect();
    let enumerated: Vec<SimplicialComplex> =
        main.records.iter().map(|r| r.complex.to_complex().expect("round trip")).collect();
    for complex in &family {
        if !classify_structure(complex).is_ok_and(|v| v.verdict) {
            eprintln!("warning: {:?} passes the oracles but not the structure check", complex.facets());
        }
    }

    outcomes.push(ac4(&family, &mut soundness));
    outcomes.push(ac5(&mut soundness));
    outcomes.push(ac6(&mut soundness));
    outcomes.push(ac7(&enumerated));
    outcomes.push(ac8(&[&simple, &walk, &froberg, &hhz], &soundness, family.len()));

    let mut ok = true;
    for o in &outcomes {
        let expected = EXPECTED_FAILURES.iter().find(|(id, _)| *id == o.id);
        let status = match (o.passed, expected) {
            (true, None) => "PASS".to_string(),
            (false, Some((_, why))) => format!("FAIL (expected: {why})"),
            (true, Some(_)) => {
                ok = false;
                "PASS (unexpected)".to_string()
            }
            (false, None) => {
                ok = false;
                "FAIL".to_string()
            }
        };
        println!("{} {status} [{:.1}s] {}", o.id, o.elapsed.as_secs_f64(), o.detail);
    }
    println!(
        "acceptance: {}/{} passed, {} expected failure(s), in {:.1}s",
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.len(),
        EXPECTED_FAILURES.len(),
        start.elapsed().as_secs_f64()
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
