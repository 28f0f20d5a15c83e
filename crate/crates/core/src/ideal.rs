//! Monomial ideals given by minimal generators.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{maximal_faces, Face, SimplicialComplex, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Exponent vector of a monomial in `K[X_1..X_n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// Squarefree monomial `∏_{j ∈ F} X_j`.
    pub fn from_face(n: u32, face: Face) -> Self {
        Monomial((1..=n).map(|v| u32::from(face.contains(v))).collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> Face {
        Face::from_bits(self.0.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (j, _)| acc | (1 << j)))
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `x^self / ∏_{j ∈ F} X_j`, or `None` if some `X_j` does not divide.
    pub fn divide_by_face(&self, face: Face) -> Option<Monomial> {
        let mut out = self.0.clone();
        for v in face.vertices() {
            let e = out.get_mut(v as usize - 1)?;
            *e = e.checked_sub(1)?;
        }
        Some(Monomial(out))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            write!(f, "x{}", j + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Integer multidegree `a ∈ Z^n`; entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedDegree(Vec<i64>);

impl SignedDegree {
    pub fn new(entries: Vec<i64>) -> Self {
        SignedDegree(entries)
    }

    pub fn zero(n: usize) -> Self {
        SignedDegree(vec![0; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// `G_a = { j : a_j < 0 }`.
    pub fn negative_part(&self) -> Face {
        Face::from_bits(self.0.iter().enumerate().filter(|(_, &x)| x < 0).fold(0u64, |acc, (j, _)| acc | (1 << j)))
    }

    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|&x| x <= 0)
    }
}

fn generator_order(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.cmp(a))
}

/// Removes duplicates and every generator divisible by another one.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(generator_order);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // by degree order, only earlier generators can divide g
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// A nonzero proper monomial ideal, stored by its minimal generators sorted
/// by degree and then lexicographically descending.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: u32,
    generators: Vec<Monomial>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl MonomialIdeal {
    pub fn new(n: u32, generators: Vec<Monomial>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { max: MAX_VERTICES, got: n });
        }
        if let Some(g) = generators.iter().find(|g| g.n() != n as usize) {
            return Err(Error::LengthMismatch { expected: n as usize, got: g.n() });
        }
        if generators.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        if generators.iter().any(|g| g.degree() == 0) {
            return Err(Error::UnitIdeal);
        }
        Ok(MonomialIdeal { n, generators: minimalize(generators) })
    }

    /// Squarefree ideal generated by `∏_{j∈F} X_j` over the given sets.
    pub fn from_supports<I: IntoIterator<Item = Face>>(n: u32, supports: I) -> Result<Self> {
        Self::new(n, supports.into_iter().map(|f| Monomial::from_face(n, f)).collect())
    }

    /// `I_Δ`, generated by the minimal non-faces of `Δ`.
    pub fn stanley_reisner(complex: &SimplicialComplex) -> Result<Self> {
        Self::from_supports(complex.n(), complex.minimal_nonfaces())
    }

    /// Edge ideal `I_G = (X_i X_j : {i,j} ∈ E(G))`.
    pub fn edge_ideal(g: &Graph) -> Result<Self> {
        let supports = g.edges().into_iter().map(|(u, v)| Face::of(&[u, v]));
        Self::from_supports(g.n(), supports)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn supports(&self) -> Vec<Face> {
        self.generators.iter().map(Monomial::support).collect()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(Monomial::is_squarefree)
    }

    /// The common degree of all generators, if there is one.
    pub fn generating_degree(&self) -> Option<u32> {
        let d = self.generators[0].degree();
        self.generators.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn is_degree_two(&self) -> bool {
        self.is_squarefree() && self.generating_degree() == Some(2)
    }

    /// Generator supports pairwise disjoint.
    pub fn is_complete_intersection(&self) -> bool {
        let mut seen = Face::EMPTY;
        for s in self.supports() {
            if !seen.intersection(s).is_empty() {
                return false;
            }
            seen = seen.union(s);
        }
        true
    }

    /// Graph whose edges are the generator supports.
    pub fn edge_graph(&self) -> Result<Graph> {
        if !self.is_degree_two() {
            return Err(Error::NotDegreeTwo);
        }
        let mut g = Graph::empty(self.n);
        for s in self.supports() {
            let v = s.to_vec();
            g.add_edge_unchecked(v[0], v[1]);
        }
        Ok(g)
    }

    /// The complex whose faces are the sets containing no generator
    /// support, on the ambient vertex set `1..=n`.
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let facets = maximal_independent_sets(Face::full(self.n), &self.supports()).expect("proper ideal");
        SimplicialComplex::generated_by(self.n, facets)
    }

    /// `ρ_k`, the largest exponent of `X_k` among the generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        (0..self.n as usize).map(|j| self.generators.iter().map(|g| g.0[j]).max().unwrap_or(0)).collect()
    }

    /// Componentwise lcm of all generators.
    pub fn lcm(&self) -> Monomial {
        Monomial(self.max_exponents())
    }

    /// Minimal generators of `I^power`: all `power`-fold products of
    /// generators, reduced by divisibility.
    pub fn power(&self, power: u32) -> Result<Self> {
        if power == 0 {
            return Err(Error::InvalidArgument("power must be at least 1".into()));
        }
        let m = self.generators.len();
        let mut products = HashSet::new();
        // nondecreasing index tuples enumerate the multisets of size `power`
        let mut idx = vec![0usize; power as usize];
        loop {
            let prod = idx.iter().fold(Monomial::one(self.n as usize), |acc, &i| acc.mul(&self.generators[i]));
            products.insert(prod);
            let Some(pos) = idx.iter().rposition(|&i| i + 1 < m) else {
                break;
            };
            let next = idx[pos] + 1;
            for slot in &mut idx[pos..] {
                *slot = next;
            }
        }
        Ok(MonomialIdeal { n: self.n, generators: minimalize(products.into_iter().collect()) })
    }

    pub fn radical(&self) -> Self {
        let gens = self.supports().into_iter().map(|s| Monomial::from_face(self.n, s)).collect();
        MonomialIdeal { n: self.n, generators: minimalize(gens) }
    }

    /// Krull dimension of `S/I`, i.e. `dim Δ(√I) + 1`.
    pub fn krull_dimension(&self) -> usize {
        self.radical().to_complex().expect("radical is squarefree").krull_dimension()
    }

    /// The degree complex
    /// `Δ_a(I) = { F ⊆ [n] \ G_a : ∀ u ∈ G(I) ∃ j ∉ F ∪ G_a with u_j > a_j }`.
    pub fn degree_complex(&self, a: &SignedDegree) -> Result<SimplicialComplex> {
        if a.0.len() != self.n as usize {
            return Err(Error::LengthMismatch { expected: self.n as usize, got: a.0.len() });
        }
        let negative = a.negative_part();
        let free = Face::full(self.n).difference(negative);
        // the variables where each generator exceeds a
        let witnesses: Vec<Face> = self
            .generators
            .iter()
            .map(|u| {
                let mut w = Face::EMPTY;
                for j in free.vertices() {
                    if i64::from(u.0[j as usize - 1]) > a.0[j as usize - 1] {
                        w = w.insert(j);
                    }
                }
                w
            })
            .collect();
        match maximal_independent_sets(free, &minimal_sets(witnesses)) {
            Some(facets) => SimplicialComplex::generated_by(self.n, facets),
            None => Ok(SimplicialComplex::void(self.n)),
        }
    }
}

/// Maximal subsets of `ground` containing none of `edges`, by splitting
/// each candidate on every edge it contains. `None` when `∅` is an edge.
/// Inclusion-minimal members of `sets`.
pub(crate) fn minimal_sets(mut sets: Vec<Face>) -> Vec<Face> {
    sets.sort_by_key(|f| f.len());
    sets.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(sets.len());
    for f in sets {
        if !kept.iter().any(|k| k.is_subset(f)) {
            kept.push(f);
        }
    }
    kept
}

pub(crate) fn maximal_independent_sets(ground: Face, edges: &[Face]) -> Option<Vec<Face>> {
    let mut sets = vec![ground];
    for &e in edges {
        if e.is_empty() {
            return None;
        }
        if !sets.iter().any(|s| e.is_subset(*s)) {
            continue;
        }
        let mut next = Vec::with_capacity(sets.len());
        for s in sets {
            if e.is_subset(s) {
                next.extend(e.vertices().map(|v| s.remove(v)));
            } else {
                next.push(s);
            }
        }
        sets = maximal_faces(next);
    }
    Some(sets)
}
