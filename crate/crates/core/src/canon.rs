//! Canonical labelling of graphs, used to deduplicate generated graphs and to
//! key cached results.
//!
//! The search tree individualises a vertex of the first non-singleton cell
//! and refines, down to discrete partitions. Each leaf defines a relabelling;
//! the canonical form is the relabelled graph with the largest certificate.
//! The tree depends only on the isomorphism class, so the result does too.
//!
//! Leaves with equal certificates yield automorphisms. A child of a node
//! whose prefix is on the first path is skipped when an automorphism fixing
//! that prefix pointwise maps it to a sibling explored earlier; a branch off
//! the first path is abandoned as soon as its root becomes such a duplicate.

use crate::format::encode_graph6;
use crate::graph::Graph;
use crate::perm::Permutation;
use crate::search::{individualise, is_discrete, orbit_representatives, refine, Structure};

struct Search<'a> {
    s: &'a Structure,
    n: usize,
    first: Option<(Vec<u32>, Vec<usize>)>,
    best: Option<(Vec<u32>, Vec<usize>)>,
    autos: Vec<Permutation>,
    /// Vertices individualised along the first path.
    first_path: Vec<usize>,
    /// Children already taken at each first-path node.
    explored: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Position of every vertex at a discrete partition, and the structure
    /// read in that order.
    fn certificate(&self, cols: &[u64]) -> (Vec<u32>, Vec<usize>) {
        let n = self.n;
        let mut at = vec![0usize; n];
        for (v, &c) in cols.iter().enumerate() {
            at[c as usize] = v;
        }
        let mut cert = Vec::with_capacity(n * n + n);
        cert.extend(at.iter().map(|&v| self.s.vertex_colours()[v] as u32));
        for &u in &at {
            for &v in &at {
                cert.push(self.s.label(u, v));
            }
        }
        (cert, at)
    }

    fn leaf(&mut self, cols: &[u64]) {
        let (cert, at) = self.certificate(cols);
        let automorphism_to = |lab: &[usize]| {
            let mut img = vec![0usize; self.n];
            for (p, &v) in at.iter().enumerate() {
                img[v] = lab[p];
            }
            Permutation::new(img).expect("positions form a bijection")
        };
        let mut found = Vec::new();
        match &self.first {
            None => {
                self.first = Some((cert.clone(), at.clone()));
                self.best = Some((cert, at));
                return;
            }
            Some((c, lab)) if *c == cert => found.push(automorphism_to(lab)),
            _ => {}
        }
        let (bc, blab) = self.best.as_ref().expect("set with first");
        if *bc == cert {
            found.push(automorphism_to(blab));
        } else if cert > *bc {
            self.best = Some((cert, at));
        }
        for g in found {
            if !g.is_identity() && !self.autos.contains(&g) {
                self.autos.push(g);
            }
        }
    }

    /// Whether `v` is in the orbit of another child already taken at
    /// first-path level `level`, under automorphisms fixing the prefix.
    fn redundant(&self, level: usize, v: usize) -> bool {
        let prefix = &self.first_path[..level];
        let gens: Vec<Permutation> = self
            .autos
            .iter()
            .filter(|g| prefix.iter().all(|&x| g.apply(x) == x))
            .cloned()
            .collect();
        if gens.is_empty() {
            return false;
        }
        let rep = orbit_representatives(&gens, self.n);
        self.explored[level]
            .iter()
            .any(|&w| w != v && rep[w] == rep[v])
    }

    /// `off` is `None` on the first path, otherwise the first-path level at
    /// which this branch left it and the child taken there.
    fn descend(&mut self, cols: Vec<u64>, level: usize, off: Option<(usize, usize)>) {
        if is_discrete(&cols) {
            self.leaf(&cols);
            return;
        }
        let mut count = vec![0u32; self.n];
        for &c in &cols {
            count[c as usize] += 1;
        }
        let target = (0..self.n as u64)
            .find(|&c| count[c as usize] > 1)
            .expect("non-discrete partition has a big cell");
        let cell: Vec<usize> = (0..self.n).filter(|&v| cols[v] == target).collect();
        for v in cell {
            let child_off = match off {
                Some((l, b)) => {
                    if self.redundant(l, b) {
                        return;
                    }
                    Some((l, b))
                }
                None => {
                    if self.explored.len() <= level {
                        self.explored.push(Vec::new());
                    }
                    if self.redundant_child(level, v) {
                        continue;
                    }
                    let first_child = self.explored[level].is_empty();
                    self.explored[level].push(v);
                    if first_child {
                        self.first_path.push(v);
                        None
                    } else {
                        Some((level, v))
                    }
                }
            };
            let mut next = [cols.clone()];
            individualise(&mut next[0], v);
            refine(&[self.s], &mut next);
            let [next] = next;
            self.descend(next, level + 1, child_off);
        }
    }

    fn redundant_child(&self, level: usize, v: usize) -> bool {
        let prefix = &self.first_path[..level];
        let gens: Vec<Permutation> = self
            .autos
            .iter()
            .filter(|g| prefix.iter().all(|&x| g.apply(x) == x))
            .cloned()
            .collect();
        if gens.is_empty() {
            return false;
        }
        let rep = orbit_representatives(&gens, self.n);
        self.explored[level].iter().any(|&w| rep[w] == rep[v])
    }
}

/// Position of every vertex in the canonical order.
pub(crate) fn canonical_positions(s: &Structure) -> Vec<usize> {
    let n = s.n();
    if n == 0 {
        return Vec::new();
    }
    let mut cols = [s.vertex_colours().to_vec()];
    refine(&[s], &mut cols);
    let [cols] = cols;
    let mut search = Search {
        s,
        n,
        first: None,
        best: None,
        autos: Vec::new(),
        first_path: Vec::new(),
        explored: Vec::new(),
    };
    search.descend(cols, 0, None);
    let (_, at) = search.best.expect("the tree has a leaf");
    let mut pos = vec![0usize; n];
    for (p, &v) in at.iter().enumerate() {
        pos[v] = p;
    }
    pos
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_graph(g: &Graph) -> Graph {
    let pos = canonical_positions(&Structure::graph(g, None));
    g.relabel(&pos)
}

/// graph6 of the canonical form; equal strings mean isomorphic graphs.
pub fn canonical_graph6(g: &Graph) -> String {
    encode_graph6(&canonical_graph(g)).expect("graphs handled here have at most 62 vertices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::find_isomorphism;
    use proptest::prelude::*;

    fn random_graph(n: usize, bits: &[bool]) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits[k] {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, &edges)
    }

    #[test]
    fn symmetric_graphs() {
        for g in [Graph::complete(8), Graph::star(9), Graph::cycle(9), Graph::complete_bipartite(4, 4)] {
            let c = canonical_graph(&g);
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.reverse();
            perm.swap(0, 2);
            assert_eq!(canonical_graph(&g.relabel(&perm)), c);
        }
        assert_ne!(canonical_graph6(&Graph::path(4)), canonical_graph6(&Graph::star(3)));
    }

    proptest! {
        #[test]
        fn invariant_under_relabelling(
            n in 1usize..9,
            bits in prop::collection::vec(any::<bool>(), 36),
            perm in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let g = random_graph(n, &bits);
            let p: Vec<usize> = {
                let mut small: Vec<usize> = perm.into_iter().filter(|&x| x < n).collect();
                small.truncate(n);
                small
            };
            prop_assert_eq!(canonical_graph(&g), canonical_graph(&g.relabel(&p)));
        }

        #[test]
        fn equal_forms_iff_isomorphic(
            n in 1usize..8,
            a in prop::collection::vec(any::<bool>(), 28),
            b in prop::collection::vec(any::<bool>(), 28),
        ) {
            let (ga, gb) = (random_graph(n, &a), random_graph(n, &b));
            let iso = find_isomorphism(&Structure::graph(&ga, None), &Structure::graph(&gb, None), &[]).is_some();
            prop_assert_eq!(canonical_graph(&ga) == canonical_graph(&gb), iso);
        }
    }
}
