//! Exhaustive and seeded-random families of small graphs and complexes.
//!
//! Isomorphism classes are produced by vertex augmentation: every graph on
//! `k` vertices is a graph on `k - 1` vertices plus a new vertex joined to
//! some subset, so extending one representative per class and
//! canonicalizing reaches every class on `k` vertices.
//!
//! Canonical labels come from colour refinement followed by brute force
//! over the orderings that respect the refined colour classes.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::{RngExt, SeedableRng};
use rand_xorshift::XorShiftRng;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ideal::MonomialIdeal;

/// Upper bound on the number of vertices for exhaustive enumeration.
pub const MAX_ENUMERATION_VERTICES: u32 = 8;

/// Stable colour classes of `1..=n`, listed in an isomorphism-invariant
/// order.
fn refined_cells(n: u32, initial: Vec<Vec<u64>>, adjacency: &[Face]) -> Vec<Vec<Vertex>> {
    let mut colours = rank_keys(&initial);
    loop {
        let keys: Vec<Vec<u64>> = (0..n as usize)
            .map(|v| {
                let mut nbr: Vec<u64> = adjacency[v].vertices().map(|w| colours[w as usize - 1]).collect();
                nbr.sort_unstable();
                let mut key = vec![colours[v]];
                key.extend(nbr);
                key
            })
            .collect();
        let next = rank_keys(&keys);
        let before = colours.iter().collect::<BTreeSet<_>>().len();
        let after = next.iter().collect::<BTreeSet<_>>().len();
        colours = next;
        if after == before {
            break;
        }
    }
    let mut cells: BTreeMap<u64, Vec<Vertex>> = BTreeMap::new();
    for (v, c) in colours.iter().enumerate() {
        cells.entry(*c).or_default().push(v as Vertex + 1);
    }
    cells.into_values().collect()
}

fn rank_keys(keys: &[Vec<u64>]) -> Vec<u64> {
    let sorted: BTreeSet<&Vec<u64>> = keys.iter().collect();
    let rank: BTreeMap<&Vec<u64>, u64> = sorted.into_iter().enumerate().map(|(r, k)| (k, r as u64)).collect();
    keys.iter().map(|k| rank[k]).collect()
}

/// Minimizes `encode(perm)` over relabelings `v -> perm[v - 1]` that send
/// the `c`-th cell onto the `c`-th block of positions.
fn canonical_by<C: Ord, F: Fn(&[Vertex]) -> C>(n: u32, cells: &[Vec<Vertex>], encode: F) -> (C, Vec<Vertex>) {
    let mut best: Option<(C, Vec<Vertex>)> = None;
    let orderings = cells
        .iter()
        .map(|cell| cell.iter().copied().permutations(cell.len()).collect::<Vec<_>>())
        .multi_cartesian_product();
    let mut visit = |ordering: Vec<Vec<Vertex>>| {
        let mut perm = vec![0; n as usize];
        for (pos, v) in ordering.into_iter().flatten().enumerate() {
            perm[v as usize - 1] = pos as Vertex + 1;
        }
        let code = encode(&perm);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, perm));
        }
    };
    if cells.is_empty() {
        visit(Vec::new());
    } else {
        orderings.for_each(&mut visit);
    }
    best.expect("at least one ordering")
}

fn graph_code(g: &Graph, perm: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (perm[u as usize - 1], perm[v as usize - 1]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Canonical representative of the isomorphism class of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let n = g.n();
    let adjacency: Vec<Face> = (1..=n).map(|v| g.neighbors(v)).collect();
    let initial = (1..=n).map(|v| vec![g.degree(v) as u64]).collect();
    let cells = refined_cells(n, initial, &adjacency);
    let (_, perm) = canonical_by(n, &cells, |perm| std::cmp::Reverse(graph_code(g, perm)));
    g.relabeled(&perm)
}

/// Canonical representative of the isomorphism class of `complex`
/// (vertex relabelings of the ambient `1..=n`).
pub fn canonical_complex(complex: &SimplicialComplex) -> SimplicialComplex {
    let n = complex.n();
    let skeleton = complex.one_skeleton_graph();
    let adjacency: Vec<Face> = (1..=n).map(|v| skeleton.neighbors(v)).collect();
    let initial = (1..=n)
        .map(|v| {
            let mut sizes: Vec<u64> =
                complex.facets().iter().filter(|f| f.contains(v)).map(|f| f.len() as u64).collect();
            sizes.sort_unstable();
            sizes
        })
        .collect();
    let cells = refined_cells(n, initial, &adjacency);
    let (_, perm) = canonical_by(n, &cells, |perm| {
        let relabeled = complex.relabeled(perm);
        relabeled.facets().iter().map(|f| f.bits()).sorted().collect::<Vec<_>>()
    });
    complex.relabeled(&perm)
}

/// One representative per isomorphism class of graphs on exactly `k`
/// vertices, in canonical form and sorted.
pub fn graphs_up_to_isomorphism(k: u32) -> Vec<Graph> {
    let mut level: BTreeSet<Vec<(Vertex, Vertex)>> = BTreeSet::new();
    level.insert(Vec::new());
    for size in 1..=k {
        let mut next = BTreeSet::new();
        for edges in &level {
            let base = Graph::from_edges(size - 1, edges).expect("valid edges");
            for nbrs in Face::full(size - 1).subsets() {
                let mut extended = Graph::from_edges(size, &base.edges()).expect("valid edges");
                for w in nbrs.vertices() {
                    extended.add_edge_unchecked(size, w);
                }
                next.insert(canonical_graph(&extended).edges());
            }
        }
        level = next;
    }
    level.into_iter().map(|edges| Graph::from_edges(k, &edges).expect("valid edges")).collect()
}

/// All `2^(k choose 2)` labeled graphs on `k` vertices.
pub fn labeled_graphs(k: u32) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (1..=k).array_combinations().map(|[u, v]| (u, v)).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, e)| *e).collect();
        Graph::from_edges(k, &edges).expect("valid edges")
    })
}

/// Which complexes [`enumerate_complexes`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexFilter {
    /// Only clique complexes. When off, non-flag complexes obtained by
    /// hollowing out one facet of size ≥ 3 are added as negative controls.
    pub flag: bool,
    pub pure: bool,
    pub core_equals_delta: bool,
    pub non_ci: bool,
}

impl ComplexFilter {
    /// Flag, pure, `core Δ = Δ`, not a complete intersection.
    pub const CHARACTERIZATION: ComplexFilter =
        ComplexFilter { flag: true, pure: true, core_equals_delta: true, non_ci: true };

    pub fn accepts(&self, c: &SimplicialComplex) -> bool {
        (!self.flag || c.is_flag())
            && (!self.pure || c.is_pure())
            && (!self.core_equals_delta || c.core().equals_input)
            && (!self.non_ci || !crate::classify::is_complete_intersection(c))
    }
}

/// Complexes on `1..=k` for every `k ≤ max_n`, one per isomorphism class,
/// ordered by vertex count and then canonical facet list.
pub fn enumerate_complexes(max_n: u32, filter: ComplexFilter) -> Result<Vec<SimplicialComplex>> {
    if max_n > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooManyVertices { max: MAX_ENUMERATION_VERTICES, got: max_n });
    }
    let mut out = Vec::new();
    for k in 1..=max_n {
        let flag: Vec<SimplicialComplex> =
            graphs_up_to_isomorphism(k).iter().map(SimplicialComplex::clique_complex).collect();
        let mut level: BTreeSet<Vec<Face>> = BTreeSet::new();
        let keep = |c: SimplicialComplex, level: &mut BTreeSet<Vec<Face>>| {
            if filter.accepts(&c) {
                level.insert(canonical_complex(&c).facets().to_vec());
            }
        };
        for c in &flag {
            keep(c.clone(), &mut level);
        }
        if !filter.flag {
            for c in &flag {
                for hollow in hollowed(c) {
                    keep(hollow, &mut level);
                }
            }
        }
        out.extend(level.into_iter().map(|facets| SimplicialComplex::from_canonical(k, facets)));
    }
    Ok(out)
}

/// Replaces one facet of size ≥ 3 by its boundary.
fn hollowed(c: &SimplicialComplex) -> Vec<SimplicialComplex> {
    c.facets()
        .iter()
        .filter(|f| f.len() >= 3)
        .map(|&f| {
            let faces = c.facets().iter().copied().filter(|g| *g != f).chain(f.boundary());
            SimplicialComplex::generated_by(c.n(), faces).expect("same vertex set")
        })
        .collect()
}

/// Seeded xorshift sampler for reproducible random families.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: XorShiftRng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: XorShiftRng::seed_from_u64(seed) }
    }

    pub fn below(&mut self, bound: u32) -> u32 {
        self.rng.random_range(0..bound)
    }

    /// `G(k, 1/2)` on exactly `k` vertices.
    pub fn graph(&mut self, k: u32) -> Graph {
        let mut g = Graph::empty(k);
        for [u, v] in (1..=k).array_combinations() {
            if self.rng.random_bool(0.5) {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    /// A random nonzero squarefree quadratic monomial ideal on `n`
    /// variables, `2 ≤ n ≤ max_n`.
    pub fn degree_two_ideal(&mut self, max_n: u32) -> MonomialIdeal {
        assert!(max_n >= 2);
        loop {
            let n = 2 + self.below(max_n - 1);
            let g = self.graph(n);
            if g.edge_count() > 0 {
                return MonomialIdeal::edge_ideal(&g).expect("nonzero");
            }
        }
    }
}
