//! Simple undirected graphs and their orientations.
//!
//! Vertices are dense indices `0..n`. Edges are stored as `(u, v)` with
//! `u < v`, sorted lexicographically; the position of an edge in that list is
//! its global index and every colouring or direction vector is keyed by it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Adjacency is kept as one `u64` bitmask per vertex.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an arbitrary edge list. Pairs may be given in
    /// either order; loops and repeated edges are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidEdge(a, b, "endpoint out of range"));
            }
            if a == b {
                return Err(Error::InvalidEdge(a, b, "self-loop"));
            }
            if adj[a] >> b & 1 == 1 {
                return Err(Error::InvalidEdge(a, b, "duplicate edge"));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        Ok(Graph { n, edges: list, adj })
    }

    /// Same as [`Graph::new`] but panics on invalid input; for literals in tests
    /// and generators.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::new(n, edges.iter().copied()).expect("invalid edge list")
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, &[])
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Self::from_edges(n, &edges)
    }

    /// `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Self {
        let edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
        Self::from_edges(k + 1, &edges)
    }

    /// `K_{m,n}` with classes `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let edges: Vec<_> = (0..m)
            .flat_map(|u| (m..m + n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(m + n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbour_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn full_mask(&self) -> u64 {
        mask_of(self.n)
    }

    pub fn is_connected(&self) -> bool {
        self.component_mask(0, self.full_mask()) == self.full_mask()
    }

    /// Vertices reachable from `start` inside the vertex set `within`.
    pub fn component_mask(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v] & within;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_k2(&self) -> bool {
        self.n == 2 && self.m() == 1
    }

    /// The image of this graph under `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Graph::from_edges(
            self.n,
            &self
                .edges
                .iter()
                .map(|&(u, v)| (perm[u], perm[v]))
                .collect::<Vec<_>>(),
        )
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(a, b) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(vertices.len().max(1), &edges)
    }

    /// Adds one vertex adjacent to every vertex in `mask`.
    pub fn with_vertex(&self, mask: u64) -> Graph {
        let v = self.n;
        let mut edges = self.edges.clone();
        edges.extend(bits(mask).map(|u| (u, v)));
        Graph::from_edges(self.n + 1, &edges)
    }

    pub fn without_edge(&self, e: usize) -> Graph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &p)| p)
            .collect();
        Graph::from_edges(self.n, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.n, self.edges)
    }
}

/// Direction of edge `(u, v)`, `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// Arc `u -> v`.
    Forward,
    /// Arc `v -> u`.
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    fn bit(self) -> u64 {
        match self {
            Direction::Forward => 0,
            Direction::Backward => 1,
        }
    }
}

/// A graph with exactly one direction chosen for every edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    base: Graph,
    dirs: Vec<Direction>,
    out: Vec<u64>,
}

impl Orientation {
    pub fn new(base: Graph, dirs: Vec<Direction>) -> Result<Self> {
        if dirs.len() != base.m() {
            return Err(Error::NotAnOrientation(format!(
                "{} directions for {} edges",
                dirs.len(),
                base.m()
            )));
        }
        let mut out = vec![0u64; base.n()];
        for (&(u, v), d) in base.edges().iter().zip(&dirs) {
            match d {
                Direction::Forward => out[u] |= 1 << v,
                Direction::Backward => out[v] |= 1 << u,
            }
        }
        Ok(Orientation { base, dirs, out })
    }

    /// Builds an orientation from a list of arcs. Opposite arc pairs are
    /// rejected.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        for &(a, b) in arcs {
            if a < n && b < n && arcs.contains(&(b, a)) {
                return Err(Error::NotAnOrientation(format!(
                    "opposite arcs {a}->{b} and {b}->{a}"
                )));
            }
        }
        let base = Graph::new(n, arcs.iter().copied())?;
        let dirs = base
            .edges()
            .iter()
            .map(|&(u, v)| {
                if arcs.contains(&(u, v)) {
                    Direction::Forward
                } else {
                    Direction::Backward
                }
            })
            .collect();
        Orientation::new(base, dirs)
    }

    /// Orientation encoded by the bits of `code`: the direction of edge `e`
    /// is bit `m - 1 - e`, so numeric order on codes is lexicographic order on
    /// direction vectors.
    pub fn from_code(base: &Graph, code: u64) -> Self {
        let m = base.m();
        let dirs = (0..m)
            .map(|e| {
                if code >> (m - 1 - e) & 1 == 1 {
                    Direction::Backward
                } else {
                    Direction::Forward
                }
            })
            .collect();
        Orientation::new(base.clone(), dirs).expect("direction count matches")
    }

    pub fn code(&self) -> u64 {
        let m = self.dirs.len();
        self.dirs
            .iter()
            .enumerate()
            .fold(0, |acc, (e, d)| acc | d.bit() << (m - 1 - e))
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn directions(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    pub fn out_mask(&self, v: usize) -> u64 {
        self.out[v]
    }

    /// Arcs in canonical edge order; arc `i` is the direction chosen for
    /// edge `i`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.base
            .edges()
            .iter()
            .zip(&self.dirs)
            .map(|(&(u, v), d)| match d {
                Direction::Forward => (u, v),
                Direction::Backward => (v, u),
            })
    }

    pub fn relabel(&self, perm: &[usize]) -> Orientation {
        let arcs: Vec<_> = self.arcs().map(|(u, v)| (perm[u], perm[v])).collect();
        Orientation::from_arcs(self.n(), &arcs).expect("relabelling preserves orientations")
    }

    /// Vertices reachable from `v` by directed paths (excluding `v` unless it
    /// lies on a directed cycle).
    pub fn reachable(&self, v: usize) -> u64 {
        let mut seen = 0u64;
        let mut frontier = self.out[v];
        while frontier != 0 {
            seen |= frontier;
            let mut next = 0;
            for w in bits(frontier) {
                next |= self.out[w];
            }
            frontier = next & !seen;
        }
        seen
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orientation(n={}, {:?})", self.n(), self.arcs().collect::<Vec<_>>())
    }
}

/// Either kind of input accepted by the symmetry machinery.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Graph(&'a Graph),
    Orientation(&'a Orientation),
}

impl<'a> Target<'a> {
    pub fn base(&self) -> &'a Graph {
        match self {
            Target::Graph(g) => g,
            Target::Orientation(o) => o.base(),
        }
    }
}

impl<'a> From<&'a Graph> for Target<'a> {
    fn from(g: &'a Graph) -> Self {
        Target::Graph(g)
    }
}

impl<'a> From<&'a Orientation> for Target<'a> {
    fn from(o: &'a Orientation) -> Self {
        Target::Orientation(o)
    }
}

/// Serialised as its digraph6 string.
impl Serialize for Orientation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = crate::format::encode_digraph6(self).map_err(serde::ser::Error::custom)?;
        s.serialize_str(&text)
    }
}

pub(crate) fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of `mask` in increasing order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(3, [(0, 0)]), Err(Error::InvalidEdge(..))));
        assert!(matches!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::InvalidEdge(..))));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::InvalidEdge(..))));
        assert!(matches!(Graph::new(0, []), Err(Error::Empty)));
    }

    #[test]
    fn edges_are_canonical() {
        let g = Graph::from_edges(4, &[(3, 2), (1, 0), (2, 0)]);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(g.edge_index(3, 2), Some(2));
        assert_eq!(g.edge_index(1, 3), None);
    }

    #[test]
    fn orientation_code_round_trip() {
        let g = Graph::cycle(4);
        for code in 0..16 {
            let o = Orientation::from_code(&g, code);
            assert_eq!(o.code(), code);
            assert_eq!(o.arcs().count(), 4);
        }
        // code 0 = all forward, edge 0 is the most significant bit
        let o = Orientation::from_code(&g, 0b1000);
        assert!(o.has_arc(1, 0));
    }

    #[test]
    fn opposite_arcs_rejected() {
        assert!(matches!(
            Orientation::from_arcs(2, &[(0, 1), (1, 0)]),
            Err(Error::NotAnOrientation(_))
        ));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(5).is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).is_connected());
        assert!(Graph::empty(1).is_connected());
    }
}
