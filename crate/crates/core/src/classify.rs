//! Combinatorial decision procedures for Stanley–Reisner rings:
//! generalized complete intersection, linear resolutions of all powers,
//! the explicit structure of such complexes, matroidal degree-2 ideals and
//! minimal multiplicity.
//!
//! Every entry point that relies on `core Δ = Δ` refuses other inputs with
//! [`Error::OutsideCharacterization`].

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::graph::{Chordality, Graph, PathMode};
use crate::homology::{reduced_homology, FieldSpec};
use crate::ideal::MonomialIdeal;
use crate::oracles::{local_cohomology_lengths, multiplicity};

fn require_core(complex: &SimplicialComplex) -> Result<()> {
    if complex.core().equals_input {
        Ok(())
    } else {
        Err(Error::OutsideCharacterization("core Δ ≠ Δ (the complex is a cone)".into()))
    }
}

/// Pairwise disjoint minimal non-faces; includes the full simplex (no
/// non-faces at all).
pub fn is_complete_intersection(complex: &SimplicialComplex) -> bool {
    let mut seen = Face::EMPTY;
    for s in complex.minimal_nonfaces() {
        if !seen.intersection(s).is_empty() {
            return false;
        }
        seen = seen.union(s);
    }
    true
}

/// Graph on `1..=n` formed by the two-element minimal non-faces.
pub fn edge_graph(complex: &SimplicialComplex) -> Graph {
    let mut g = Graph::empty(complex.n());
    for s in complex.minimal_nonfaces().into_iter().filter(|s| s.len() == 2) {
        let v = s.to_vec();
        g.add_edge_unchecked(v[0], v[1]);
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preconditions {
    pub core_equals_delta: bool,
    pub is_pure: bool,
    pub is_ci: bool,
}

/// A choice of `C(U)` for a generator support `U` with `|U| ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverAssignment {
    pub support: Face,
    pub cover: Face,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GciConditions {
    pub pure: bool,
    pub covers_exist: bool,
    /// First support `U` with `|U| ≥ 3` for which no `C(U)` works.
    pub uncovered_support: Option<Face>,
    pub all_pairs_linked: bool,
    pub unlinked_pair: Option<(Vertex, Vertex)>,
    pub path4: bool,
    pub path4_witness: Option<[Vertex; 5]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GciReport {
    pub verdict: bool,
    pub preconditions: Preconditions,
    /// Set when the input is a complete intersection and the conditions
    /// were not evaluated.
    pub complete_intersection_shortcut: bool,
    pub conditions: Option<GciConditions>,
    pub cover_assignments: Vec<CoverAssignment>,
}

/// Generalized complete intersection test by the four combinatorial
/// conditions on the generator supports `F_Δ`:
///
/// 1. `Δ` is pure;
/// 2. every `U ∈ F_Δ` with `|U| ≥ 3` admits a nonempty `C(U)` disjoint from
///    `U`, each of whose members is joined by a two-element support to every
///    vertex of `U`, such that the only other supports meeting `U` are those
///    edges and every vertex outside `C(U) ∪ U` is joined to all of `C(U)`;
/// 3. the two-element supports connect `1..=n`;
/// 4. every 4-edge path `i1..i5` in that graph with `i1 ≠ i5` has one of
///    `{i1,i3}`, `{i1,i4}`, `{i1,i5}` as an edge.
///
/// Complete intersections are accepted up front.
pub fn check_gci(complex: &SimplicialComplex, mode: PathMode) -> Result<GciReport> {
    let core = complex.core();
    let preconditions = Preconditions {
        core_equals_delta: core.equals_input,
        is_pure: complex.is_pure(),
        is_ci: is_complete_intersection(complex),
    };
    if preconditions.is_ci {
        return Ok(GciReport {
            verdict: true,
            preconditions,
            complete_intersection_shortcut: true,
            conditions: None,
            cover_assignments: Vec::new(),
        });
    }
    require_core(complex)?;

    let supports = complex.minimal_nonfaces();
    let graph = edge_graph(complex);
    let mut cover_assignments = Vec::new();
    let mut uncovered_support = None;
    for &u in supports.iter().filter(|s| s.len() >= 3) {
        match find_cover(u, &supports, &graph) {
            Some(cover) => cover_assignments.push(CoverAssignment { support: u, cover }),
            None => {
                uncovered_support = Some(u);
                break;
            }
        }
    }
    let unlinked_pair = graph.unlinked_pair();
    let path4_witness = graph.path4_violation(mode);
    let conditions = GciConditions {
        pure: preconditions.is_pure,
        covers_exist: uncovered_support.is_none(),
        uncovered_support,
        all_pairs_linked: unlinked_pair.is_none(),
        unlinked_pair,
        path4: path4_witness.is_none(),
        path4_witness,
    };
    let verdict = conditions.pure && conditions.covers_exist && conditions.all_pairs_linked && conditions.path4;
    Ok(GciReport {
        verdict,
        preconditions,
        complete_intersection_shortcut: false,
        conditions: Some(conditions),
        cover_assignments,
    })
}

/// Smallest (then lexicographically first) valid `C(U)`.
fn find_cover(u: Face, supports: &[Face], graph: &Graph) -> Option<Face> {
    let n = graph.n();
    let candidates = (1..=n)
        .filter(|&i| !u.contains(i) && u.vertices().all(|j| graph.has_edge(i, j)))
        .fold(Face::EMPTY, |acc, i| acc.insert(i));
    let mut subsets: Vec<Face> = candidates.subsets().filter(|s| !s.is_empty()).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    subsets.into_iter().find(|&cover| {
        // every other support meeting U is an edge {i, j} with i ∈ C(U), j ∈ U
        let meeting_ok = supports
            .iter()
            .filter(|t| **t != u && !t.intersection(u).is_empty())
            .all(|t| t.len() == 2 && t.intersection(u).len() == 1 && t.difference(u).is_subset(cover));
        let outside = Face::full(n).difference(cover.union(u));
        let joined = outside.vertices().all(|k| cover.vertices().all(|i| graph.has_edge(i, k)));
        meeting_ok && joined
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearPowersConditions {
    pub pure_and_flag: bool,
    pub is_pure: bool,
    pub is_flag: bool,
    pub skeleton_chordal: bool,
    pub chordless_cycle: Option<Vec<Vertex>>,
    pub all_pairs_linked: bool,
    pub unlinked_pair: Option<(Vertex, Vertex)>,
    pub path4: bool,
    pub path4_witness: Option<[Vertex; 5]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearPowersReport {
    pub verdict: bool,
    pub conditions: LinearPowersConditions,
}

/// gCI with every power linear, for `core Δ = Δ`: pure and flag, chordal
/// 1-skeleton, connected edge graph, and the 4-path condition.
pub fn check_linear_powers(complex: &SimplicialComplex, mode: PathMode) -> Result<LinearPowersReport> {
    require_core(complex)?;
    let is_pure = complex.is_pure();
    let is_flag = complex.is_flag();
    let chordless_cycle = match complex.one_skeleton_graph().is_chordal() {
        Chordality::Chordal { .. } => None,
        Chordality::NotChordal { cycle } => Some(cycle),
    };
    let graph = edge_graph(complex);
    let unlinked_pair = graph.unlinked_pair();
    let path4_witness = graph.path4_violation(mode);
    let conditions = LinearPowersConditions {
        pure_and_flag: is_pure && is_flag,
        is_pure,
        is_flag,
        skeleton_chordal: chordless_cycle.is_none(),
        chordless_cycle,
        all_pairs_linked: unlinked_pair.is_none(),
        unlinked_pair,
        path4: path4_witness.is_none(),
        path4_witness,
    };
    let verdict =
        conditions.pure_and_flag && conditions.skeleton_chordal && conditions.all_pairs_linked && conditions.path4;
    Ok(LinearPowersReport { verdict, conditions })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecompositionKind {
    Points,
    PathUnion,
    FacetPairUnion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum FacetComponent {
    /// Two facets sharing all but one vertex each.
    Type1 { first: Face, second: Face },
    /// A single facet.
    Type2 { facet: Face },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "components")]
pub enum Decomposition {
    Points(Vec<Vertex>),
    PathUnion(Vec<Vec<Vertex>>),
    FacetPairUnion(Vec<FacetComponent>),
}

impl Decomposition {
    pub fn kind(&self) -> DecompositionKind {
        match self {
            Decomposition::Points(_) => DecompositionKind::Points,
            Decomposition::PathUnion(_) => DecompositionKind::PathUnion,
            Decomposition::FacetPairUnion(_) => DecompositionKind::FacetPairUnion,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureVerdict {
    pub verdict: bool,
    #[serde(flatten)]
    pub decomposition: Option<Decomposition>,
    /// Facets of the first component that fits none of the shapes.
    pub failure_witness: Option<Vec<Face>>,
    pub reason: Option<String>,
}

impl StructureVerdict {
    fn fail(witness: &SimplicialComplex, reason: impl Into<String>) -> Self {
        StructureVerdict {
            verdict: false,
            decomposition: None,
            failure_witness: Some(witness.facets().to_vec()),
            reason: Some(reason.into()),
        }
    }

    fn pass(decomposition: Decomposition) -> Self {
        StructureVerdict { verdict: true, decomposition: Some(decomposition), failure_witness: None, reason: None }
    }
}

/// Recognizes the explicit shapes: at least two points; a disjoint union of
/// simple paths; or, in dimension ≥ 2, a pure disjoint union of single
/// facets and pairs of facets `F, G` with `|F \ G| = |G \ F| = 1`.
pub fn classify_structure(complex: &SimplicialComplex) -> Result<StructureVerdict> {
    require_core(complex)?;
    let dim = complex.dimension();
    if dim <= 0 {
        let points = complex.vertex_set().to_vec();
        if points.len() < 2 {
            return Ok(StructureVerdict::fail(complex, "fewer than two points"));
        }
        return Ok(StructureVerdict::pass(Decomposition::Points(points)));
    }
    if !complex.is_pure() {
        return Ok(StructureVerdict::fail(complex, "not pure"));
    }
    let components = complex.connected_components();
    if dim == 1 {
        let mut paths = Vec::new();
        for comp in &components {
            match as_simple_path(comp) {
                Some(p) => paths.push(p),
                None => return Ok(StructureVerdict::fail(comp, "component is not a simple path")),
            }
        }
        return Ok(StructureVerdict::pass(Decomposition::PathUnion(paths)));
    }
    let mut parts = Vec::new();
    for comp in &components {
        match comp.facets() {
            [facet] => parts.push(FacetComponent::Type2 { facet: *facet }),
            [first, second] if first.difference(*second).len() == 1 => {
                parts.push(FacetComponent::Type1 { first: *first, second: *second })
            }
            _ => {
                return Ok(StructureVerdict::fail(
                    comp,
                    "component is neither one facet nor two facets differing in one vertex",
                ))
            }
        }
    }
    Ok(StructureVerdict::pass(Decomposition::FacetPairUnion(parts)))
}

/// Vertex sequence of a connected 1-dimensional component that is a simple
/// path, starting from its smaller endpoint.
fn as_simple_path(component: &SimplicialComplex) -> Option<Vec<Vertex>> {
    let g = component.one_skeleton_graph();
    let vertices = component.vertex_set();
    let edges = component.facets().len();
    if edges + 1 != vertices.len() || vertices.vertices().any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = vertices.vertices().find(|&v| g.degree(v) == 1)?;
    let mut path = vec![start];
    let mut prev = 0;
    let mut cur = start;
    while let Some(next) = g.neighbors(cur).vertices().find(|&w| w != prev) {
        path.push(next);
        prev = cur;
        cur = next;
    }
    Some(path)
}

/// Base-exchange axiom on the generator supports of an equigenerated
/// squarefree ideal.
pub fn is_matroidal(ideal: &MonomialIdeal) -> Result<bool> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if ideal.generating_degree().is_none() {
        return Err(Error::NotEquigenerated);
    }
    Ok(exchange_violation(&ideal.supports()).is_none())
}

/// First `(B1, B2, i)` with `i ∈ B1 \ B2` admitting no `j ∈ B2 \ B1` such
/// that `(B1 \ {i}) ∪ {j}` is a base.
pub fn exchange_violation(bases: &[Face]) -> Option<(Face, Face, Vertex)> {
    for &b1 in bases {
        for &b2 in bases {
            for i in b1.difference(b2).vertices() {
                let exchanged = b2.difference(b1).vertices().any(|j| bases.contains(&b1.remove(i).insert(j)));
                if !exchanged {
                    return Some((b1, b2, i));
                }
            }
        }
    }
    None
}

/// `K[Δ]` is Buchsbaum iff `Δ` is pure and every nonempty face has a link
/// with homology only in its top dimension.
pub fn is_buchsbaum(complex: &SimplicialComplex, field: FieldSpec) -> bool {
    if !complex.is_pure() {
        return false;
    }
    complex.faces(None).into_iter().filter(|f| !f.is_empty()).all(|f| {
        let link = complex.link_unchecked(f);
        let top = link.dimension();
        let h = reduced_homology(&link, field);
        h.dims.iter().all(|(&i, &d)| i >= top || d == 0)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalMultiplicityReport {
    pub verdict: bool,
    pub multiplicity: usize,
    pub krull_dimension: usize,
    /// `ℓ_1, …, ℓ_{d-1}`.
    pub lengths: Vec<usize>,
    /// `1 + Σ_{i=1}^{d-1} C(d-1, i-1) ℓ_i`.
    pub bound: usize,
    pub by_formula: bool,
    pub by_structure: bool,
    pub by_matroid: bool,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Minimal multiplicity of a Buchsbaum `K[Δ]` with `core Δ = Δ`, decided
/// three ways: the multiplicity formula, "disjoint union of equal-dimension
/// simplices", and "flag with matroidal `I_Δ`". The three must agree.
pub fn check_minimal_multiplicity(complex: &SimplicialComplex, field: FieldSpec) -> Result<MinimalMultiplicityReport> {
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    require_core(complex)?;
    if complex.dimension() < 1 {
        return Err(Error::OutsideCharacterization(
            "Krull dimension 1: the multiplicity bound has no length terms".into(),
        ));
    }
    if !is_buchsbaum(complex, field) {
        return Err(Error::OutsideCharacterization("K[Δ] is not Buchsbaum".into()));
    }
    let e = multiplicity(complex);
    let d = complex.krull_dimension();
    let lengths = local_cohomology_lengths(complex, field)?;
    let bound = 1 + (1..d).map(|i| binomial(d - 1, i - 1) * lengths[i - 1]).sum::<usize>();
    let by_formula = e == bound;
    let by_structure = complex.connected_components().iter().all(|c| c.facets().len() == 1);
    let by_matroid = complex.is_flag() && is_matroidal(&MonomialIdeal::stanley_reisner(complex)?)?;
    if by_formula != by_structure || by_structure != by_matroid {
        return Err(Error::InternalDisagreement(format!(
            "formula={by_formula} structure={by_structure} matroid={by_matroid} for {complex:?}"
        )));
    }
    Ok(MinimalMultiplicityReport {
        verdict: by_formula,
        multiplicity: e,
        krull_dimension: d,
        lengths,
        bound,
        by_formula,
        by_structure,
        by_matroid,
    })
}
