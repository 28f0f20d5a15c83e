//! Exhaustive checks over every flag pure complex on at most six vertices
//! with no cone points that is not a complete intersection.

use srgci_core::classify::{check_gci, check_minimal_multiplicity};
use srgci_core::enumerate::{enumerate_complexes, ComplexFilter};
use srgci_core::oracles::{has_linear_resolution, is_flc};
use srgci_core::{FieldSpec, MonomialIdeal, PathMode, SimplicialComplex};

const F: FieldSpec = FieldSpec::Prime(32003);

fn family() -> Vec<SimplicialComplex> {
    enumerate_complexes(6, ComplexFilter::CHARACTERIZATION).unwrap()
}

#[test]
fn gci_matches_finite_local_cohomology_of_low_powers() {
    let mut buchsbaum_only = 0;
    for c in &family() {
        let gci = check_gci(c, PathMode::SimpleVertices).unwrap().verdict;
        let i = MonomialIdeal::stanley_reisner(c).unwrap();
        let flc: Vec<bool> = (1..=2).map(|l| is_flc(&i.power(l).unwrap(), c.krull_dimension(), F).verdict).collect();
        assert_eq!(gci, flc.iter().all(|&b| b), "{c:?}");
        // finite local cohomology of S/I alone is weaker
        buchsbaum_only += usize::from(flc[0] && !gci);
    }
    assert!(buchsbaum_only > 0);
}

#[test]
fn minimal_multiplicity_forces_linear_powers() {
    let mut hits = 0;
    for c in &family() {
        let Ok(report) = check_minimal_multiplicity(c, F) else { continue };
        if !report.verdict {
            continue;
        }
        hits += 1;
        let i = MonomialIdeal::stanley_reisner(c).unwrap();
        for l in 1..=3 {
            let power = i.power(l).unwrap();
            assert!(has_linear_resolution(&power, F).unwrap().linear, "{c:?} power {l}");
            assert!(is_flc(&power, c.krull_dimension(), F).verdict, "{c:?} power {l}");
        }
    }
    assert!(hits > 0);
}
