//! Simple undirected graphs on `1..=n`, with the chordality and path tests
//! used by the classifiers.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::complex::{Face, Vertex, MAX_VERTICES};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u32,
    adjacency: Vec<Face>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.n, self.edges())
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.edges().into_iter().map(|(u, v)| [u, v]))
    }
}

/// How [`Graph::path4_violation`] reads "a path of length 4".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathMode {
    /// Five pairwise distinct vertices.
    #[default]
    SimpleVertices,
    /// Four pairwise distinct edges; vertices may repeat, but `i1 != i5`.
    /// Decides the same condition: a repeated vertex forces `i4 = i1` or
    /// `i5 = i2`, and then `{i1,i3}` or `{i1,i5}` is a walk edge.
    WalkDistinctEdges,
}

/// Outcome of a chordality test, with a checkable witness either way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chordality {
    /// Vertices in elimination order: the later neighbours of each vertex
    /// form a clique.
    Chordal { elimination_order: Vec<Vertex> },
    /// An induced cycle of length at least 4, as a vertex sequence.
    NotChordal { cycle: Vec<Vertex> },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal { .. })
    }
}

impl Graph {
    pub fn empty(n: u32) -> Self {
        assert!(n <= MAX_VERTICES, "too many vertices");
        Graph { n, adjacency: vec![Face::EMPTY; n as usize] }
    }

    pub fn complete(n: u32) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..=n {
            g.adjacency[v as usize - 1] = Face::full(n).remove(v);
        }
        g
    }

    pub fn from_edges(n: u32, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { max: MAX_VERTICES, got: n });
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
        }
        self.add_edge_unchecked(u, v);
        Ok(())
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: Vertex, v: Vertex) {
        self.adjacency[u as usize - 1] = self.adjacency[u as usize - 1].insert(v);
        self.adjacency[v as usize - 1] = self.adjacency[v as usize - 1].insert(u);
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u >= 1 && u <= self.n && self.adjacency[u as usize - 1].contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> Face {
        self.adjacency[v as usize - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        (1..=self.n).flat_map(|u| self.neighbors(u).vertices().filter(move |&v| v > u).map(move |v| (u, v))).collect()
    }

    pub fn is_clique(&self, set: Face) -> bool {
        set.vertices().all(|v| set.remove(v).is_subset(self.neighbors(v)))
    }

    /// Same vertices, edges are exactly the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let full = Face::full(self.n);
        let adjacency = (1..=self.n).map(|v| full.difference(self.neighbors(v)).remove(v)).collect();
        Graph { n: self.n, adjacency }
    }

    /// Relabels vertices, `v` becoming `perm[v - 1]`.
    pub fn relabeled(&self, perm: &[Vertex]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge_unchecked(perm[u as usize - 1], perm[v as usize - 1]);
        }
        g
    }

    /// Maximum cardinality search. The reverse of the visiting order is a
    /// perfect elimination order whenever the graph is chordal.
    pub fn maximum_cardinality_search(&self) -> Vec<Vertex> {
        let n = self.n as usize;
        let mut weight = vec![0usize; n];
        let mut visited = Face::EMPTY;
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (1..=self.n)
                .filter(|&v| !visited.contains(v))
                .max_by(|&a, &b| weight[a as usize - 1].cmp(&weight[b as usize - 1]).then(b.cmp(&a)))
                .expect("unvisited vertex");
            visited = visited.insert(next);
            order.push(next);
            for w in self.neighbors(next).difference(visited).vertices() {
                weight[w as usize - 1] += 1;
            }
        }
        order
    }

    /// Checks that the later neighbours of every vertex form a clique.
    pub fn is_perfect_elimination_order(&self, order: &[Vertex]) -> bool {
        if order.len() != self.n as usize {
            return false;
        }
        let mut later = Face::full(self.n);
        for &v in order {
            later = later.remove(v);
            if !self.is_clique(self.neighbors(v).intersection(later)) {
                return false;
            }
        }
        later.is_empty()
    }

    /// An induced cycle of length at least 4, if one exists.
    ///
    /// Scans centres `v` with two non-adjacent neighbours `u < w` and looks
    /// for a shortest `u`–`w` path avoiding the rest of the closed
    /// neighbourhood of `v`; closing it through `v` gives a chordless cycle.
    pub fn chordless_cycle(&self) -> Option<Vec<Vertex>> {
        for v in 1..=self.n {
            let nbrs = self.neighbors(v);
            for u in nbrs.vertices() {
                for w in nbrs.vertices().filter(|&w| w > u && !self.has_edge(u, w)) {
                    let blocked = nbrs.insert(v).remove(u).remove(w);
                    if let Some(path) = self.shortest_path(u, w, Face::full(self.n).difference(blocked)) {
                        let mut cycle = vec![v];
                        cycle.extend(path);
                        return Some(cycle);
                    }
                }
            }
        }
        None
    }

    /// Breadth-first shortest path inside `allowed`, ties broken by
    /// smallest vertex.
    fn shortest_path(&self, from: Vertex, to: Vertex, allowed: Face) -> Option<Vec<Vertex>> {
        let mut parent = vec![0u32; self.n as usize + 1];
        let mut seen = Face::singleton(from);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur as usize];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for y in self.neighbors(x).intersection(allowed).difference(seen).vertices() {
                seen = seen.insert(y);
                parent[y as usize] = x;
                queue.push_back(y);
            }
        }
        None
    }

    pub fn is_chordal(&self) -> Chordality {
        let mut order = self.maximum_cardinality_search();
        order.reverse();
        if self.is_perfect_elimination_order(&order) {
            Chordality::Chordal { elimination_order: order }
        } else {
            let cycle =
                self.chordless_cycle().expect("a graph without a perfect elimination order has an induced long cycle");
            Chordality::NotChordal { cycle }
        }
    }

    /// Vertices reachable from `start`.
    pub fn component_of(&self, start: Vertex) -> Face {
        let mut seen = Face::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = frontier.vertices().fold(Face::EMPTY, |acc, v| acc.union(self.neighbors(v))).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// A pair of vertices joined by no path, `(1, smallest unreachable)`.
    pub fn unlinked_pair(&self) -> Option<(Vertex, Vertex)> {
        if self.n < 2 {
            return None;
        }
        let reach = self.component_of(1);
        Face::full(self.n).difference(reach).min_vertex().map(|v| (1, v))
    }

    pub fn all_pairs_linked(&self) -> bool {
        self.unlinked_pair().is_none()
    }

    /// The first (in lexicographic DFS order) length-4 path `i1..i5` with
    /// `i1 != i5` for which none of `{i1,i3}`, `{i1,i4}`, `{i1,i5}` is an edge.
    pub fn path4_violation(&self, mode: PathMode) -> Option<[Vertex; 5]> {
        let mut path = [0u32; 5];
        for start in 1..=self.n {
            path[0] = start;
            if self.extend_path4(&mut path, 1, mode) {
                return Some(path);
            }
        }
        None
    }

    pub fn path4_condition(&self, mode: PathMode) -> bool {
        self.path4_violation(mode).is_none()
    }

    fn extend_path4(&self, path: &mut [Vertex; 5], len: usize, mode: PathMode) -> bool {
        if len == 5 {
            let [a, _, c, d, e] = *path;
            if a == e {
                return false;
            }
            let chorded = [c, d, e].iter().any(|&x| x != a && self.has_edge(a, x));
            return !chorded;
        }
        let last = path[len - 1];
        for next in self.neighbors(last).vertices() {
            let allowed = match mode {
                PathMode::SimpleVertices => !path[..len].contains(&next),
                PathMode::WalkDistinctEdges => path[..len].windows(2).all(|w| {
                    let (x, y) = (w[0].min(w[1]), w[0].max(w[1]));
                    (x, y) != (last.min(next), last.max(next))
                }),
            };
            if allowed {
                path[len] = next;
                if self.extend_path4(path, len + 1, mode) {
                    return true;
                }
            }
        }
        false
    }

    /// All maximal cliques (isolated vertices give singletons), sorted.
    /// Bron–Kerbosch with pivoting.
    pub fn maximal_cliques(&self) -> Vec<Face> {
        let mut out = Vec::new();
        if self.n > 0 {
            self.bron_kerbosch(Face::EMPTY, Face::full(self.n), Face::EMPTY, &mut out);
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: Face, p: Face, x: Face, out: &mut Vec<Face>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = p.union(x).vertices().max_by_key(|&u| self.neighbors(u).intersection(p).len()).expect("nonempty");
        let mut p = p;
        let mut x = x;
        for v in p.difference(self.neighbors(pivot)).vertices() {
            let nv = self.neighbors(v);
            self.bron_kerbosch(r.insert(v), p.intersection(nv), x.intersection(nv), out);
            p = p.remove(v);
            x = x.insert(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32, edges: &[(u32, u32)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn cycle(n: u32) -> Graph {
        let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
        g(n, &edges)
    }

    #[test]
    fn complement_examples() {
        let c4 = cycle(4);
        assert_eq!(c4.complement().complement(), c4);
        let gd = g(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]);
        assert_eq!(gd.complement().edges(), vec![(1, 2), (3, 4)]);
        assert_eq!(Graph::complete(4).complement().edge_count(), 0);
    }

    #[test]
    fn chordality_examples() {
        let path = g(4, &[(1, 2), (2, 3), (3, 4)]);
        assert!(path.is_chordal().is_chordal());
        assert_eq!(cycle(4).is_chordal(), Chordality::NotChordal { cycle: vec![1, 2, 3, 4] });
        let mut k4 = Graph::complete(4);
        k4.adjacency[0] = k4.adjacency[0].remove(2);
        k4.adjacency[1] = k4.adjacency[1].remove(1);
        assert!(k4.is_chordal().is_chordal());
        assert_eq!(cycle(5).is_chordal(), Chordality::NotChordal { cycle: vec![1, 2, 3, 4, 5] });
    }

    #[test]
    fn linkage_examples() {
        assert!(g(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]).all_pairs_linked());
        assert_eq!(g(3, &[(1, 2)]).unlinked_pair(), Some((1, 3)));
        assert_eq!(g(4, &[(1, 3), (2, 4)]).unlinked_pair(), Some((1, 2)));
        assert!(Graph::empty(1).all_pairs_linked());
    }

    #[test]
    fn path4_examples() {
        let k22 = g(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]);
        assert!(k22.path4_condition(PathMode::SimpleVertices));
        let p5 = g(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(p5.path4_violation(PathMode::SimpleVertices), Some([1, 2, 3, 4, 5]));
        let mut closed = p5.clone();
        closed.add_edge(1, 5).unwrap();
        assert!(closed.path4_condition(PathMode::SimpleVertices));
    }

    #[test]
    fn path_modes_agree_on_all_small_graphs() {
        for k in 1..=6 {
            for graph in crate::enumerate::labeled_graphs(k) {
                assert_eq!(
                    graph.path4_condition(PathMode::SimpleVertices),
                    graph.path4_condition(PathMode::WalkDistinctEdges),
                    "{:?}",
                    graph.edges()
                );
            }
        }
    }

    #[test]
    fn maximal_clique_examples() {
        let tri = g(3, &[(1, 2), (1, 3), (2, 3)]);
        assert_eq!(tri.maximal_cliques(), vec![Face::of(&[1, 2, 3])]);
        assert_eq!(
            cycle(4).maximal_cliques(),
            vec![Face::of(&[1, 2]), Face::of(&[1, 4]), Face::of(&[2, 3]), Face::of(&[3, 4])]
        );
        let paw = g(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]);
        assert_eq!(paw.maximal_cliques(), vec![Face::of(&[1, 2, 3]), Face::of(&[3, 4])]);
        assert_eq!(Graph::empty(2).maximal_cliques(), vec![Face::of(&[1]), Face::of(&[2])]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(1, 4)]).is_err());
        assert!(Graph::from_edges(3, &[(2, 2)]).is_err());
    }
}
