//! Exact ranks over a coefficient field and reduced simplicial homology.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

/// The coefficient field `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if is_prime {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

pub fn matrix_rank(m: &IntMatrix, field: FieldSpec) -> usize {
    match field {
        FieldSpec::Prime(p) => rank_mod_p(m, p as u64),
        FieldSpec::Rational => rank_rational(m),
    }
}

fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<u64> = m.data.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        for k in 0..cols {
            a.swap(pivot * cols + k, rank * cols + k);
        }
        let inv = pow_mod(a[rank * cols + c], p - 2, p);
        for k in c..cols {
            a[rank * cols + k] = a[rank * cols + k] * inv % p;
        }
        for r in (rank + 1)..rows {
            let factor = a[r * cols + c];
            if factor != 0 {
                for k in c..cols {
                    let sub = factor * a[rank * cols + k] % p;
                    a[r * cols + k] = (a[r * cols + k] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rank_rational(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigRational> = m.data.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        for k in 0..cols {
            a.swap(pivot * cols + k, rank * cols + k);
        }
        let inv = BigRational::one() / a[rank * cols + c].clone();
        for k in c..cols {
            a[rank * cols + k] = &a[rank * cols + k] * &inv;
        }
        for r in (rank + 1)..rows {
            let factor = a[r * cols + c].clone();
            if !factor.is_zero() {
                for k in c..cols {
                    let sub = &factor * &a[rank * cols + k];
                    a[r * cols + k] -= sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Ranks of reduced homology `H̃_i(Δ; K)` for `i ≥ -1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub dims: BTreeMap<i32, usize>,
}

impl HomologyProfile {
    pub fn get(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.values().all(|&d| d == 0)
    }

    /// `Σ (-1)^i dim H̃_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(&i, &d)| if i.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

/// Boundary map from faces of size `k` to faces of size `k - 1`, with
/// rows indexed by `lower` and columns by `upper`.
pub fn boundary_matrix(upper: &[Face], lower: &[Face]) -> IntMatrix {
    let index: HashMap<Face, usize> = lower.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut m = IntMatrix::zeros(lower.len(), upper.len());
    for (c, face) in upper.iter().enumerate() {
        for (pos, v) in face.vertices().enumerate() {
            let r = index[&face.remove(v)];
            m.set(r, c, if pos % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// Reduced homology from boundary ranks.
///
/// The void complex has no homology at all; `{∅}` has `H̃_{-1} = K`.
pub fn reduced_homology(complex: &SimplicialComplex, field: FieldSpec) -> HomologyProfile {
    if complex.is_void() {
        return HomologyProfile::default();
    }
    let top = complex.dimension();
    if !complex.is_empty_complex() && cone_apex(complex) {
        return HomologyProfile { dims: (-1..=top).map(|i| (i, 0)).collect() };
    }
    let mut by_size: Vec<Vec<Face>> = vec![Vec::new(); (top + 2) as usize];
    for f in complex.faces(None) {
        by_size[f.len()].push(f);
    }
    // rank of the boundary out of size-k faces; nothing leaves size 0
    let boundary_rank = match field {
        FieldSpec::Prime(p) => boundary_ranks(&ModP(u64::from(p)), &by_size),
        FieldSpec::Rational => boundary_ranks(&Rationals, &by_size),
    };
    let dims = (0..by_size.len())
        .map(|k| {
            let cycles = by_size[k].len() - boundary_rank[k];
            (k as i32 - 1, cycles - boundary_rank[k + 1])
        })
        .collect();
    HomologyProfile { dims }
}

/// Reduced homology through dense boundary matrices and [`matrix_rank`];
/// slower, kept as a reference for the sparse elimination.
pub fn reduced_homology_dense(complex: &SimplicialComplex, field: FieldSpec) -> HomologyProfile {
    if complex.is_void() {
        return HomologyProfile::default();
    }
    let mut by_size: Vec<Vec<Face>> = vec![Vec::new(); (complex.dimension() + 2) as usize];
    for f in complex.faces(None) {
        by_size[f.len()].push(f);
    }
    let mut rank = vec![0usize; by_size.len() + 1];
    for k in 1..by_size.len() {
        rank[k] = matrix_rank(&boundary_matrix(&by_size[k], &by_size[k - 1]), field);
    }
    let dims = (0..by_size.len()).map(|k| (k as i32 - 1, by_size[k].len() - rank[k] - rank[k + 1])).collect();
    HomologyProfile { dims }
}

/// Field arithmetic for sparse elimination.
trait Arith {
    type T: Clone;
    fn embed(&self, x: i64) -> Self::T;
    fn is_zero(&self, x: &Self::T) -> bool;
    /// `x - f * y`
    fn sub_mul(&self, x: &Self::T, f: &Self::T, y: &Self::T) -> Self::T;
    fn neg_mul(&self, f: &Self::T, y: &Self::T) -> Self::T;
    fn div(&self, x: &Self::T, y: &Self::T) -> Self::T;
}

struct ModP(u64);

impl Arith for ModP {
    type T = u64;
    fn embed(&self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn sub_mul(&self, x: &u64, f: &u64, y: &u64) -> u64 {
        (x + self.0 - f * y % self.0) % self.0
    }
    fn neg_mul(&self, f: &u64, y: &u64) -> u64 {
        (self.0 - f * y % self.0) % self.0
    }
    fn div(&self, x: &u64, y: &u64) -> u64 {
        x * pow_mod(*y, self.0 - 2, self.0) % self.0
    }
}

struct Rationals;

impl Arith for Rationals {
    type T = BigRational;
    fn embed(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn sub_mul(&self, x: &BigRational, f: &BigRational, y: &BigRational) -> BigRational {
        x - f * y
    }
    fn neg_mul(&self, f: &BigRational, y: &BigRational) -> BigRational {
        -(f * y)
    }
    fn div(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x / y
    }
}

type SparseColumn<T> = Vec<(usize, T)>;

/// `x - f * y` on columns sorted by row.
fn axpy<A: Arith>(arith: &A, x: &SparseColumn<A::T>, f: &A::T, y: &SparseColumn<A::T>) -> SparseColumn<A::T> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, arith.neg_mul(f, &y[j].1)));
            j += 1;
        } else {
            let v = arith.sub_mul(&x[i].1, f, &y[j].1);
            if !arith.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `rank[k]` of the boundary out of size-`k` faces, by column reduction
/// from the top dimension down. A face that is the lowest entry of a
/// reduced column one dimension up has a column that reduces to zero, so
/// it is skipped.
fn boundary_ranks<A: Arith>(arith: &A, by_size: &[Vec<Face>]) -> Vec<usize> {
    let mut ranks = vec![0; by_size.len() + 1];
    let mut cleared: HashSet<usize> = HashSet::new();
    for k in (1..by_size.len()).rev() {
        let index: HashMap<Face, usize> = by_size[k - 1].iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut reduced: HashMap<usize, SparseColumn<A::T>> = HashMap::new();
        for (c, face) in by_size[k].iter().enumerate() {
            if cleared.contains(&c) {
                continue;
            }
            let mut col: SparseColumn<A::T> = face
                .vertices()
                .enumerate()
                .map(|(pos, v)| (index[&face.remove(v)], arith.embed(if pos % 2 == 0 { 1 } else { -1 })))
                .collect();
            col.sort_by_key(|e| e.0);
            while let Some((low, value)) = col.last() {
                let Some(pivot) = reduced.get(low) else { break };
                let f = arith.div(value, &pivot.last().expect("nonzero").1);
                col = axpy(arith, &col, &f, pivot);
            }
            if let Some(&(low, _)) = col.last() {
                reduced.insert(low, col);
            }
        }
        ranks[k] = reduced.len();
        cleared = reduced.into_keys().collect();
    }
    ranks
}

/// A vertex lying in every facet makes the complex a cone, hence acyclic.
fn cone_apex(complex: &SimplicialComplex) -> bool {
    let common = complex.facets().iter().fold(Face::full(complex.n()), |acc, f| acc.intersection(*f));
    !common.is_empty()
}

/// Memoizes homology by facet list up to renumbering of the used vertices;
/// degree and upper Koszul complexes repeat heavily across a multidegree
/// scan.
#[derive(Debug)]
pub struct HomologyCache {
    field: FieldSpec,
    entries: HashMap<Vec<Face>, HomologyProfile>,
}

impl HomologyCache {
    pub fn new(field: FieldSpec) -> Self {
        HomologyCache { field, entries: HashMap::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Keyed by the compressed complex, so relabelings share an entry.
    pub fn homology(&mut self, complex: &SimplicialComplex) -> &HomologyProfile {
        let field = self.field;
        let compressed = complex.compressed();
        self.entries.entry(compressed.facets().to_vec()).or_insert_with(|| reduced_homology(&compressed, field))
    }
}
