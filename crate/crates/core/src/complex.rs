//! Finite abstract simplicial complexes on the vertex set `1..=n`.
//!
//! Faces are stored as bitmasks (bit `v - 1` set for vertex `v`), so the
//! ambient vertex count is capped at [`MAX_VERTICES`]. A complex is kept in
//! canonical form: its facets are inclusion-maximal and sorted, which makes
//! structural equality the same as equality of complexes.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Vertex = u32;

pub const MAX_VERTICES: u32 = 64;

/// A finite set of vertices, used both as a face and as a plain vertex set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Result<Face> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, n: MAX_VERTICES });
            }
            bits |= 1 << (v - 1);
        }
        Ok(Face(bits))
    }

    /// Panicking constructor for literals in tests and examples.
    pub fn of(vertices: &[Vertex]) -> Face {
        Face::new(vertices.iter().copied()).expect("vertex out of range")
    }

    pub fn singleton(v: Vertex) -> Face {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Face(1 << (v - 1))
    }

    /// The full vertex set `1..=n`.
    pub fn full(n: u32) -> Face {
        if n >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> Face {
        Face(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: Vertex) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn insert(self, v: Vertex) -> Face {
        self.union(Face::singleton(v))
    }

    pub fn remove(self, v: Vertex) -> Face {
        self.difference(Face::singleton(v))
    }

    pub fn min_vertex(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max_vertex(self) -> Option<Vertex> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> impl Iterator<Item = Vertex> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() + 1;
            bits &= bits - 1;
            Some(v)
        })
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.vertices().collect()
    }

    /// All subsets, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub = Some(full);
        std::iter::from_fn(move || {
            let current = sub?;
            sub = if current == 0 { None } else { Some((current - 1) & full) };
            Some(Face(current))
        })
    }

    /// Subsets obtained by deleting exactly one vertex.
    pub fn boundary(self) -> impl Iterator<Item = Face> {
        self.vertices().map(move |v| self.remove(v))
    }
}

impl Ord for Face {
    /// Lexicographic order on the increasing vertex sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices().cmp(other.vertices())
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.vertices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<Vertex>::deserialize(deserializer)?;
        Face::new(vertices).map_err(serde::de::Error::custom)
    }
}

/// Keeps only the inclusion-maximal members, sorted and deduplicated.
pub fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// A simplicial complex on the ambient vertex set `1..=n`, stored by facets.
///
/// The *void* complex has no faces at all; the *empty* complex `{∅}` has
/// exactly the empty face. They are different values and have different
/// reduced homology.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: u32,
    facets: Vec<Face>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(n={}, {:?})", self.n, self.facets)
    }
}

impl SimplicialComplex {
    /// Builds a complex whose vertex set is all of `1..=n`.
    ///
    /// Facets are maximalized; every vertex must lie in some facet.
    pub fn new<I: IntoIterator<Item = Face>>(n: u32, facets: I) -> Result<Self> {
        let complex = Self::generated_by(n, facets)?;
        let covered = complex.vertex_set();
        if let Some(v) = Face::full(n).difference(covered).min_vertex() {
            return Err(Error::UncoveredVertex(v));
        }
        Ok(complex)
    }

    /// Builds the complex generated by `faces` inside the ambient set
    /// `1..=n`, without requiring every vertex to be used. Links, stars,
    /// skeleta and degree complexes are built this way. An empty iterator
    /// gives the void complex.
    pub fn generated_by<I: IntoIterator<Item = Face>>(n: u32, faces: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { max: MAX_VERTICES, got: n });
        }
        let universe = Face::full(n);
        let faces: Vec<Face> = faces.into_iter().collect();
        for f in &faces {
            if let Some(v) = f.difference(universe).min_vertex() {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        Ok(SimplicialComplex { n, facets: maximal_faces(faces) })
    }

    pub(crate) fn from_canonical(n: u32, facets: Vec<Face>) -> Self {
        debug_assert_eq!(maximal_faces(facets.clone()), facets);
        SimplicialComplex { n, facets }
    }

    pub fn void(n: u32) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    /// The complex `{∅}`.
    pub fn empty(n: u32) -> Self {
        SimplicialComplex { n, facets: vec![Face::EMPTY] }
    }

    pub fn simplex(n: u32, face: Face) -> Result<Self> {
        Self::generated_by(n, [face])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets == [Face::EMPTY]
    }

    pub fn vertex_set(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn contains(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// `max |F| - 1` over facets; `-1` for both `{∅}` and the void complex.
    pub fn dimension(&self) -> i32 {
        self.facets.iter().map(|f| f.len() as i32).max().unwrap_or(0) - 1
    }

    /// Krull dimension of the Stanley–Reisner ring, `dim Δ + 1`.
    pub fn krull_dimension(&self) -> usize {
        (self.dimension() + 1).max(0) as usize
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// All faces, sorted. With `Some(k)` only the faces of dimension `k`.
    pub fn faces(&self, dim: Option<usize>) -> Vec<Face> {
        let mut seen = HashSet::new();
        for f in &self.facets {
            match dim {
                Some(k) if f.len() < k + 1 => {}
                _ => seen.extend(f.subsets().filter(|s| dim.is_none_or(|k| s.len() == k + 1))),
            }
        }
        let mut out: Vec<Face> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// Number of faces of each size `0..=dim+1` (index 0 is the empty face).
    pub fn face_counts(&self) -> Vec<usize> {
        let faces = self.faces(None);
        let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut counts = vec![0; if faces.is_empty() { 0 } else { top + 1 }];
        for f in faces {
            counts[f.len()] += 1;
        }
        counts
    }

    fn require_face(&self, face: Face) -> Result<()> {
        if self.contains(face) {
            Ok(())
        } else {
            Err(Error::NotAFace(face.to_string()))
        }
    }

    /// `st(F) = { G : G ∪ F ∈ Δ }`, generated by the facets containing `F`.
    pub fn star(&self, face: Face) -> Result<Self> {
        self.require_face(face)?;
        let facets = self.facets.iter().copied().filter(|f| face.is_subset(*f)).collect();
        Ok(Self::from_canonical(self.n, facets))
    }

    /// `lk(F) = { G ∈ st(F) : G ∩ F = ∅ }`.
    pub fn link(&self, face: Face) -> Result<Self> {
        self.require_face(face)?;
        Ok(self.link_unchecked(face))
    }

    pub(crate) fn link_unchecked(&self, face: Face) -> Self {
        // distinct facets containing F stay incomparable after removing F
        let mut facets: Vec<Face> =
            self.facets.iter().filter(|f| face.is_subset(**f)).map(|f| f.difference(face)).collect();
        facets.sort();
        Self::from_canonical(self.n, facets)
    }

    /// Restriction `Δ|_W = { F ∈ Δ : F ⊆ W }`.
    pub fn induced(&self, subset: Face) -> Self {
        let facets = self.facets.iter().map(|f| f.intersection(subset)).collect();
        SimplicialComplex { n: self.n, facets: maximal_faces(facets) }
    }

    pub fn core(&self) -> Core {
        // a vertex lying in every facet is a cone point: its star is all of Δ
        let apexes = self.facets.iter().fold(Face::full(self.n), |acc, f| acc.intersection(*f));
        let vertices = self.vertex_set().difference(apexes);
        let complex = self.induced(vertices);
        let equals_input = complex == *self;
        Core { vertices, complex, equals_input }
    }

    /// Connected components, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<SimplicialComplex> {
        let mut groups: Vec<(Face, Vec<Face>)> = Vec::new();
        for &facet in &self.facets {
            let mut merged = (facet, vec![facet]);
            groups.retain(|(verts, members)| {
                if verts.intersection(merged.0).is_empty() {
                    true
                } else {
                    merged.0 = merged.0.union(*verts);
                    merged.1.extend(members.iter().copied());
                    false
                }
            });
            groups.push(merged);
        }
        groups.sort_by_key(|(verts, _)| verts.min_vertex());
        groups
            .into_iter()
            .map(|(_, mut facets)| {
                facets.sort();
                Self::from_canonical(self.n, facets)
            })
            .collect()
    }

    /// Faces of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> Self {
        let mut faces = Vec::new();
        for f in &self.facets {
            if f.len() <= k + 1 {
                faces.push(*f);
            } else {
                faces.extend(f.subsets().filter(|s| s.len() == k + 1));
            }
        }
        SimplicialComplex { n: self.n, facets: maximal_faces(faces) }
    }

    /// The 1-skeleton as a graph on `1..=n`.
    pub fn one_skeleton_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for f in &self.facets {
            let vs = f.to_vec();
            for (a, &u) in vs.iter().enumerate() {
                for &w in &vs[a + 1..] {
                    g.add_edge_unchecked(u, w);
                }
            }
        }
        g
    }

    /// Minimal non-faces inside `1..=n`, by increasing size then
    /// lexicographically. A candidate of size `k` is examined only when all
    /// of its `(k-1)`-subsets are faces.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        if self.is_void() {
            return vec![Face::EMPTY];
        }
        let mut out = Vec::new();
        let mut level: Vec<Face> = vec![Face::EMPTY];
        let max_size = self.dimension() + 2;
        for size in 1..=max_size.max(1) as usize {
            let mut next = HashSet::new();
            for face in &level {
                let start = face.max_vertex().unwrap_or(0) + 1;
                for v in start..=self.n {
                    let candidate = face.insert(v);
                    if candidate.boundary().all(|s| self.contains(s)) {
                        if self.contains(candidate) {
                            next.insert(candidate);
                        } else {
                            out.push(candidate);
                        }
                    }
                }
            }
            debug_assert!(next.iter().all(|f| f.len() == size));
            level = next.into_iter().collect();
            if level.is_empty() {
                break;
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// `Δ = Simp(Δ₁)`, i.e. every minimal non-face is an edge.
    pub fn is_flag(&self) -> bool {
        self.minimal_nonfaces().iter().all(|f| f.len() == 2)
    }

    /// The clique complex of `g`; its facets are the maximal cliques.
    pub fn clique_complex(g: &Graph) -> Self {
        Self::from_canonical(g.n(), g.maximal_cliques())
    }

    /// Relabels vertices by `perm`, where vertex `v` becomes `perm[v - 1]`.
    pub fn relabeled(&self, perm: &[Vertex]) -> Self {
        debug_assert_eq!(perm.len(), self.n as usize);
        let facets = self
            .facets
            .iter()
            .map(|f| Face::new(f.vertices().map(|v| perm[v as usize - 1])).expect("permutation"))
            .collect();
        SimplicialComplex { n: self.n, facets: maximal_faces(facets) }
    }

    /// The same complex with its used vertices renumbered `1..=m`
    /// in increasing order.
    pub fn compressed(&self) -> Self {
        let used = self.vertex_set().to_vec();
        let mut map = vec![0u32; self.n as usize + 1];
        for (k, v) in used.iter().enumerate() {
            map[*v as usize] = k as u32 + 1;
        }
        let facets =
            self.facets.iter().map(|f| Face::new(f.vertices().map(|v| map[v as usize])).expect("compressed")).collect();
        SimplicialComplex { n: used.len() as u32, facets: maximal_faces(facets) }
    }
}

/// Result of [`SimplicialComplex::core`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Core {
    /// `core[n] = { i : st({i}) ≠ Δ }`.
    pub vertices: Face,
    pub complex: SimplicialComplex,
    pub equals_input: bool,
}
