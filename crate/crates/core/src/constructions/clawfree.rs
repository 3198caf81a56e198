//! Rigid orientations of connected claw-free graphs on at least six
//! vertices.
//!
//! Vertices receive labels in the order they are reached. Starting from a
//! seed (a longest cycle, or the closed neighbourhood of a cut vertex), the
//! least-labelled reached but unprocessed vertex `v` is expanded: its
//! unreached neighbours `A` are ordered along a Hamiltonian path of `G[A]`,
//! `v` points at all of them, edges inside `A` follow the path order, and
//! the new vertices are labelled in path order. Remaining edges are then
//! directed one at a time without closing a directed cycle.

use serde::Serialize;

use crate::aut::is_rigid;
use crate::error::{Error, Result};
use crate::format::{encode_digraph6, encode_graph6};
use crate::graph::{bits, Direction, Graph, Orientation, Target};
use crate::structure::{
    blocks, find_claw, hamiltonian_path, hamiltonian_path_within, is_two_connected, longest_cycle,
};

use super::hamiltonian::hamiltonian_orientation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "branch")]
pub enum ClawfreeBranch {
    /// 2-connected with a Hamiltonian cycle: oriented along a Hamiltonian
    /// path.
    Hamiltonian { path: Vec<usize> },
    /// 2-connected, longest cycle `cycle` (starting at the seed vertex) not
    /// spanning.
    Cycle { cycle: Vec<usize> },
    /// Has a cut vertex `v` in the leaf block `block`; `u` is the source.
    CutVertex { block: Vec<usize>, v: usize, u: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClawfreeTrace {
    pub orientation: Orientation,
    pub branch: ClawfreeBranch,
    /// Vertices in label order.
    pub labels: Vec<usize>,
    /// Arcs directed before the leftover-edge phase.
    pub checkpoint: Vec<(usize, usize)>,
}

impl ClawfreeTrace {
    /// The acyclicity invariant at the checkpoint: in the cycle branch, the
    /// seed cycle is the only directed cycle of its length and every directed
    /// cycle stays inside it; otherwise there is no directed cycle at all.
    pub fn checkpoint_invariant_holds(&self) -> bool {
        let n = self.orientation.n();
        let cycles = simple_directed_cycles(n, &self.checkpoint);
        match &self.branch {
            ClawfreeBranch::Cycle { cycle } => {
                let on_c = cycle.iter().fold(0u64, |m, &v| m | 1 << v);
                let longest: Vec<_> = cycles.iter().filter(|c| c.len() == cycle.len()).collect();
                longest.len() == 1
                    && *longest[0] == rotate_to_min(cycle)
                    && cycles.iter().all(|c| c.iter().all(|&v| on_c >> v & 1 == 1))
            }
            _ => cycles.is_empty(),
        }
    }
}

fn rotate_to_min(c: &[usize]) -> Vec<usize> {
    let i = (0..c.len()).min_by_key(|&i| c[i]).unwrap_or(0);
    c[i..].iter().chain(&c[..i]).copied().collect()
}

/// All simple directed cycles of the digraph `arcs`, each listed from its
/// least vertex, in lexicographic order.
pub fn simple_directed_cycles(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out_mask = vec![0u64; n];
    for &(u, v) in arcs {
        out_mask[u] |= 1 << v;
    }
    fn walk(s: usize, path: &mut Vec<usize>, used: u64, out: &[u64], acc: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if out[last] >> s & 1 == 1 {
            acc.push(path.clone());
        }
        for w in bits(out[last] & !used) {
            if w > s {
                path.push(w);
                walk(s, path, used | 1 << w, out, acc);
                path.pop();
            }
        }
    }
    let mut acc = Vec::new();
    for s in 0..n {
        walk(s, &mut vec![s], 1 << s, &out_mask, &mut acc);
    }
    acc.sort();
    acc
}

pub fn clawfree_rigid_orientation(g: &Graph) -> Result<Orientation> {
    clawfree_rigid_orientation_traced(g).map(|t| t.orientation)
}

pub fn clawfree_rigid_orientation_traced(g: &Graph) -> Result<ClawfreeTrace> {
    let trace = clawfree_construction(g)?;
    if !is_rigid(Target::Orientation(&trace.orientation)) {
        return Err(failure(g, &trace, "result is not rigid"));
    }
    Ok(trace)
}

/// Runs the construction without the final rigidity check.
pub fn clawfree_construction(g: &Graph) -> Result<ClawfreeTrace> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if find_claw(g).is_some() {
        return Err(Error::NotClawFree);
    }
    if g.n() < 6 {
        return Err(Error::TooSmall { n: g.n(), min: 6 });
    }
    let trace = if is_two_connected(g) {
        let cycle = longest_cycle(g).expect("2-connected graphs have cycles");
        if cycle.len() == g.n() {
            let path = hamiltonian_path(g).expect("Hamiltonian graphs are traceable");
            let o = hamiltonian_orientation(g, &path)?;
            let arcs = o.arcs().collect();
            ClawfreeTrace {
                orientation: o,
                branch: ClawfreeBranch::Hamiltonian { path: path.clone() },
                labels: path,
                checkpoint: arcs,
            }
        } else {
            cycle_branch(g, &cycle)?
        }
    } else {
        cut_vertex_branch(g)?
    };
    Ok(trace)
}

fn failure(g: &Graph, trace: &ClawfreeTrace, what: &str) -> Error {
    Error::Construction(format!(
        "{what}: graph {} orientation {} branch {:?} labels {:?}",
        encode_graph6(g).unwrap_or_default(),
        encode_digraph6(&trace.orientation).unwrap_or_default(),
        trace.branch,
        trace.labels
    ))
}

/// Partial orientation plus the reached/processed bookkeeping.
struct Builder<'a> {
    g: &'a Graph,
    /// Vertices taking part in the labelling process.
    active: u64,
    dirs: Vec<Option<Direction>>,
    out: Vec<u64>,
    labels: Vec<usize>,
    reached: u64,
    processed: u64,
}

impl<'a> Builder<'a> {
    fn new(g: &'a Graph, active: u64) -> Self {
        Builder {
            g,
            active,
            dirs: vec![None; g.m()],
            out: vec![0; g.n()],
            labels: Vec::new(),
            reached: 0,
            processed: 0,
        }
    }

    fn reach(&mut self, v: usize) {
        self.reached |= 1 << v;
        self.labels.push(v);
    }

    fn arc(&mut self, u: usize, v: usize) -> Result<()> {
        let e = self.g.edge_index(u, v).expect("arc along an edge");
        if self.dirs[e].is_some() {
            return Err(Error::Construction(format!("edge {u}-{v} directed twice")));
        }
        self.dirs[e] = Some(if u < v {
            Direction::Forward
        } else {
            Direction::Backward
        });
        self.out[u] |= 1 << v;
        Ok(())
    }

    /// `v` points at every vertex of `path`; edges among the path's vertices
    /// go from earlier to later.
    fn fan(&mut self, v: usize, path: &[usize]) -> Result<()> {
        for &w in path {
            self.arc(v, w)?;
        }
        for (i, &x) in path.iter().enumerate() {
            for &y in &path[i + 1..] {
                if self.g.adjacent(x, y) {
                    self.arc(x, y)?;
                }
            }
        }
        Ok(())
    }

    fn expand_all(&mut self) -> Result<()> {
        loop {
            let next = self
                .labels
                .iter()
                .copied()
                .find(|&v| self.processed >> v & 1 == 0);
            let Some(v) = next else { break };
            let a = self.g.neighbour_mask(v) & self.active & !self.reached;
            if a != 0 {
                let path = hamiltonian_path_within(self.g, a).ok_or_else(|| {
                    Error::Construction(format!(
                        "neighbourhood {:?} of vertex {v} outside the reached set is not traceable \
                         (graph {}, labels so far {:?})",
                        bits(a).collect::<Vec<_>>(),
                        encode_graph6(self.g).unwrap_or_default(),
                        self.labels
                    ))
                })?;
                self.fan(v, &path)?;
                for &w in &path {
                    self.reach(w);
                }
            }
            self.processed |= 1 << v;
        }
        if self.processed != self.active {
            return Err(Error::Construction(format!(
                "labelling stopped after {:?} of {} vertices",
                self.labels,
                self.active.count_ones()
            )));
        }
        Ok(())
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = 1u64 << from;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for x in bits(frontier) {
                next |= self.out[x];
            }
            if next >> to & 1 == 1 {
                return true;
            }
            frontier = next & !seen;
            seen |= next;
        }
        false
    }

    /// Directs the remaining edges between active vertices in edge order,
    /// low label to high label unless that closes a directed cycle.
    fn leftovers(&mut self) -> Result<()> {
        let mut label = vec![usize::MAX; self.g.n()];
        for (i, &v) in self.labels.iter().enumerate() {
            label[v] = i;
        }
        for e in 0..self.g.m() {
            let (x, y) = self.g.edges()[e];
            if self.dirs[e].is_some() || self.active >> x & 1 == 0 || self.active >> y & 1 == 0 {
                continue;
            }
            let (lo, hi) = if label[x] < label[y] { (x, y) } else { (y, x) };
            if !self.reaches(hi, lo) {
                self.arc(lo, hi)?;
            } else if !self.reaches(lo, hi) {
                self.arc(hi, lo)?;
            } else {
                return Err(Error::Construction(format!(
                    "edge {lo}-{hi} closes a directed cycle either way"
                )));
            }
        }
        Ok(())
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::new();
        for v in 0..self.g.n() {
            arcs.extend(bits(self.out[v]).map(|w| (v, w)));
        }
        arcs
    }

    fn finish(self) -> Result<Orientation> {
        let dirs = self
            .dirs
            .into_iter()
            .enumerate()
            .map(|(e, d)| d.ok_or_else(|| Error::Construction(format!("edge {e} left undirected"))))
            .collect::<Result<Vec<_>>>()?;
        Orientation::new(self.g.clone(), dirs)
    }
}

fn cycle_branch(g: &Graph, cycle: &[usize]) -> Result<ClawfreeTrace> {
    let on_c = cycle.iter().fold(0u64, |m, &v| m | 1 << v);
    let mut candidates: Vec<usize> = cycle
        .iter()
        .copied()
        .filter(|&v| g.neighbour_mask(v) & !on_c == 0)
        .collect();
    candidates.sort_unstable();
    let Some(&v1) = candidates.first() else {
        return Err(Error::Construction(format!(
            "no vertex of the longest cycle {cycle:?} has its neighbourhood on the cycle (graph {})",
            encode_graph6(g).unwrap_or_default()
        )));
    };
    let start = cycle.iter().position(|&v| v == v1).unwrap();
    let seed: Vec<usize> = cycle[start..].iter().chain(&cycle[..start]).copied().collect();

    let mut b = Builder::new(g, g.full_mask());
    for &v in &seed {
        b.reach(v);
    }
    let k = seed.len();
    for i in 0..k {
        b.arc(seed[i], seed[(i + 1) % k])?;
    }
    for i in 0..k {
        for j in i + 2..k {
            if g.adjacent(seed[i], seed[j]) && !(i == 0 && j == k - 1) {
                b.arc(seed[i], seed[j])?;
            }
        }
    }
    b.expand_all()?;
    let checkpoint = b.arcs();
    b.leftovers()?;
    let labels = b.labels.clone();
    Ok(ClawfreeTrace {
        orientation: b.finish()?,
        branch: ClawfreeBranch::Cycle { cycle: seed },
        labels,
        checkpoint,
    })
}

fn cut_vertex_branch(g: &Graph) -> Result<ClawfreeTrace> {
    let bl = blocks(g);
    let (block, v) = bl
        .blocks
        .iter()
        .find_map(|&b| {
            let cuts = b & bl.cut_vertices;
            (cuts.count_ones() == 1).then(|| (b, cuts.trailing_zeros() as usize))
        })
        .ok_or_else(|| Error::Construction("no leaf block".into()))?;
    let u = bits(g.neighbour_mask(v) & block)
        .next()
        .expect("a block has an edge at each of its vertices");
    let active = g.full_mask() & !(1 << u);
    let a = g.neighbour_mask(v) & active;

    let mut b = Builder::new(g, active);
    b.reach(v);
    let mut paths = Vec::new();
    for part in [a & block, a & !block] {
        if part == 0 {
            continue;
        }
        let path = hamiltonian_path_within(g, part).ok_or_else(|| {
            Error::Construction(format!(
                "neighbours {:?} of cut vertex {v} are not traceable (graph {})",
                bits(part).collect::<Vec<_>>(),
                encode_graph6(g).unwrap_or_default()
            ))
        })?;
        paths.push(path);
    }
    for path in &paths {
        b.fan(v, path)?;
        for &w in path {
            b.reach(w);
        }
    }
    b.processed |= 1 << v;
    b.expand_all()?;
    let checkpoint = b.arcs();
    b.leftovers()?;
    for w in g.neighbours(u) {
        b.arc(u, w)?;
    }
    let labels = b.labels.clone();
    Ok(ClawfreeTrace {
        orientation: b.finish()?,
        branch: ClawfreeBranch::CutVertex {
            block: bits(block).collect(),
            v,
            u,
        },
        labels,
        checkpoint,
    })
}
