//! Structural recognition: connectivity, bipartition, trees, claw-freeness,
//! Hamiltonian paths, longest cycles, centres and blocks.
//!
//! The path and cycle searches are exhaustive backtracking. Whenever several
//! witnesses exist the lexicographically least vertex sequence is returned.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub connected: bool,
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    pub is_tree: bool,
    pub is_claw_free: bool,
    pub hamiltonian_path: Option<Vec<usize>>,
    pub longest_cycle: Option<Vec<usize>>,
}

pub fn analyze(g: &Graph) -> StructureReport {
    StructureReport {
        connected: g.is_connected(),
        bipartition: bipartition(g),
        is_tree: is_tree(g),
        is_claw_free: is_claw_free(g),
        hamiltonian_path: hamiltonian_path(g),
        longest_cycle: longest_cycle(g),
    }
}

pub fn is_tree(g: &Graph) -> bool {
    g.is_connected() && g.m() + 1 == g.n()
}

/// Two-colouring with vertex 0 (and the least vertex of every further
/// component) in the first class.
pub fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for w in g.neighbours(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        stack.push(w);
                    }
                    Some(sw) if sw == su => return None,
                    _ => {}
                }
            }
        }
    }
    let x = (0..n).filter(|&v| side[v] == Some(false)).collect();
    let y = (0..n).filter(|&v| side[v] == Some(true)).collect();
    Some((x, y))
}

/// A claw as (centre, three pairwise non-adjacent neighbours), if any.
pub fn find_claw(g: &Graph) -> Option<(usize, [usize; 3])> {
    for v in 0..g.n() {
        let nb: Vec<usize> = g.neighbours(v).collect();
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if g.adjacent(a, b) {
                    continue;
                }
                for &c in &nb[j + 1..] {
                    if !g.adjacent(a, c) && !g.adjacent(b, c) {
                        return Some((v, [a, b, c]));
                    }
                }
            }
        }
    }
    None
}

pub fn is_claw_free(g: &Graph) -> bool {
    find_claw(g).is_none()
}

pub fn hamiltonian_path(g: &Graph) -> Option<Vec<usize>> {
    hamiltonian_path_within(g, g.full_mask())
}

/// Lexicographically least Hamiltonian path of the subgraph induced by
/// `within`.
pub fn hamiltonian_path_within(g: &Graph, within: u64) -> Option<Vec<usize>> {
    let target = within.count_ones() as usize;
    if target == 0 {
        return None;
    }
    let mut path = Vec::with_capacity(target);
    for s in bits(within) {
        path.clear();
        path.push(s);
        if extend_path(g, within & !(1 << s), target, &mut path) {
            return Some(path);
        }
    }
    None
}

fn extend_path(g: &Graph, avail: u64, target: usize, path: &mut Vec<usize>) -> bool {
    if path.len() == target {
        return true;
    }
    let last = *path.last().unwrap();
    for w in bits(g.neighbour_mask(last) & avail) {
        path.push(w);
        if extend_path(g, avail & !(1 << w), target, path) {
            return true;
        }
        path.pop();
    }
    false
}

pub fn is_hamiltonian_path(g: &Graph, path: &[usize]) -> bool {
    let mut seen = 0u64;
    for &v in path {
        if v >= g.n() || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    path.len() == g.n() && path.windows(2).all(|w| g.adjacent(w[0], w[1]))
}

/// A longest cycle, written from its least vertex with the smaller of the
/// two neighbours second. Among longest cycles the lexicographically least
/// such sequence is returned. `None` for forests.
pub fn longest_cycle(g: &Graph) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    let mut path = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        let avail = g.full_mask() & !((1u64 << s) | ((1u64 << s) - 1));
        path.clear();
        path.push(s);
        cycle_search(g, s, avail, &mut path, &mut best);
    }
    best
}

fn cycle_search(g: &Graph, s: usize, avail: u64, path: &mut Vec<usize>, best: &mut Option<Vec<usize>>) {
    let best_len = best.as_ref().map_or(2, Vec::len);
    // only strictly longer cycles can replace the incumbent
    if path.len() + (g.component_mask(*path.last().unwrap(), avail | 1 << path.last().unwrap()) & avail).count_ones() as usize
        <= best_len
    {
        return;
    }
    let last = *path.last().unwrap();
    if path.len() >= 3 && g.adjacent(last, s) && path[1] < last && path.len() > best_len {
        *best = Some(path.clone());
    }
    for w in bits(g.neighbour_mask(last) & avail) {
        path.push(w);
        cycle_search(g, s, avail & !(1 << w), path, best);
        path.pop();
    }
}

pub fn is_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let mut seen = 0u64;
    for &v in cycle {
        if v >= g.n() || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    cycle.len() >= 3
        && cycle.windows(2).all(|w| g.adjacent(w[0], w[1]))
        && g.adjacent(cycle[0], *cycle.last().unwrap())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CenterInfo {
    CentralVertex(usize),
    CentralEdge(usize, usize),
}

/// Centre of a tree by repeated leaf stripping.
pub fn tree_center(g: &Graph) -> Result<CenterInfo> {
    if !is_tree(g) {
        return Err(Error::NotATree);
    }
    let mut alive = g.full_mask();
    while alive.count_ones() > 2 {
        let leaves: u64 = bits(alive)
            .filter(|&v| (g.neighbour_mask(v) & alive).count_ones() <= 1)
            .fold(0, |acc, v| acc | 1 << v);
        alive &= !leaves;
    }
    let mut it = bits(alive);
    let a = it.next().expect("a tree has a centre");
    Ok(match it.next() {
        None => CenterInfo::CentralVertex(a),
        Some(b) => CenterInfo::CentralEdge(a, b),
    })
}

/// Eccentricities by BFS; `None` entries for unreachable pairs make the
/// eccentricity infinite (reported as `usize::MAX`).
pub fn eccentricities(g: &Graph) -> Vec<usize> {
    (0..g.n())
        .map(|s| {
            let mut dist = vec![usize::MAX; g.n()];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in g.neighbours(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist.into_iter().max().unwrap()
        })
        .collect()
}

/// Biconnected components (as vertex masks, bridges included) and the mask
/// of cut vertices.
#[derive(Clone, Debug)]
pub struct Blocks {
    pub blocks: Vec<u64>,
    pub cut_vertices: u64,
}

pub fn blocks(g: &Graph) -> Blocks {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<u64>,
        cut: u64,
    }
    fn dfs(st: &mut State, u: usize, parent: Option<usize>) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        let mut children = 0;
        for v in st.g.neighbours(u) {
            if st.disc[v] == 0 {
                children += 1;
                st.stack.push((u, v));
                dfs(st, v, Some(u));
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.disc[u] {
                    if parent.is_some() {
                        st.cut |= 1 << u;
                    }
                    let mut mask = 0u64;
                    while let Some((a, b)) = st.stack.pop() {
                        mask |= 1 << a | 1 << b;
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    st.blocks.push(mask);
                }
            } else if Some(v) != parent && st.disc[v] < st.disc[u] {
                st.stack.push((u, v));
                st.low[u] = st.low[u].min(st.disc[v]);
            }
        }
        if parent.is_none() && children > 1 {
            st.cut |= 1 << u;
        }
    }
    let mut st = State {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cut: 0,
    };
    for s in 0..g.n() {
        if st.disc[s] == 0 {
            dfs(&mut st, s, None);
        }
    }
    st.blocks.sort_by_key(|&b| bits(b).collect::<Vec<_>>());
    Blocks {
        blocks: st.blocks,
        cut_vertices: st.cut,
    }
}

pub fn is_two_connected(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && blocks(g).cut_vertices == 0
}
