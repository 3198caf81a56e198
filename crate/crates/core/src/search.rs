//! Backtracking isomorphism search over labelled structures.
//!
//! A [`Structure`] is a vertex-coloured complete digraph whose pair labels
//! encode edges, arc directions and edge colours (`0` = no edge). Graphs,
//! orientations, edge-coloured variants and rooted trees all reduce to it, so
//! a single search routine serves automorphism groups, rigidity tests and
//! colouring isomorphism.
//!
//! Every search node individualises one vertex and re-runs colour
//! refinement on both sides; refinement only prunes, the mapping found at a
//! discrete leaf is always verified pair by pair.

use std::collections::BTreeMap;

use crate::graph::{Graph, Orientation, Target};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Structure {
    n: usize,
    vcol: Vec<u64>,
    adj: Vec<u32>,
    rows: Vec<Vec<(usize, u32)>>,
    nnz: usize,
}

impl Structure {
    fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize, u32)>) -> Self {
        let mut adj = vec![0u32; n * n];
        let mut rows = vec![Vec::new(); n];
        let mut nnz = 0;
        for (u, v, l) in pairs {
            debug_assert!(l != 0);
            adj[u * n + v] = l;
            rows[u].push((v, l));
            nnz += 1;
        }
        Structure {
            n,
            vcol: vec![0; n],
            adj,
            rows,
            nnz,
        }
    }

    /// Undirected edges carry their colour (default 1) in both directions.
    pub fn graph(g: &Graph, colours: Option<&[u32]>) -> Self {
        Self::from_pairs(
            g.n(),
            g.edges().iter().enumerate().flat_map(|(e, &(u, v))| {
                let c = colours.map_or(1, |c| c[e]);
                [(u, v, c), (v, u, c)]
            }),
        )
    }

    /// Arc `u -> v` of colour `c` is labelled `2c - 1` at `(u, v)` and `2c`
    /// at `(v, u)`.
    pub fn orientation(o: &Orientation, colours: Option<&[u32]>) -> Self {
        Self::from_pairs(
            o.n(),
            o.arcs().enumerate().flat_map(|(e, (u, v))| {
                let c = colours.map_or(1, |c| c[e]);
                [(u, v, 2 * c - 1), (v, u, 2 * c)]
            }),
        )
    }

    pub fn target(t: Target<'_>, colours: Option<&[u32]>) -> Self {
        match t {
            Target::Graph(g) => Self::graph(g, colours),
            Target::Orientation(o) => Self::orientation(o, colours),
        }
    }

    pub fn vertex_colours(&self) -> &[u64] {
        &self.vcol
    }

    pub fn with_vertex_colours(mut self, vcol: &[u64]) -> Self {
        self.vcol = vcol.to_vec();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self, u: usize, v: usize) -> u32 {
        self.adj[u * self.n + v]
    }

    fn is_isomorphism(&self, other: &Structure, map: &[usize]) -> bool {
        self.nnz == other.nnz
            && (0..self.n).all(|x| {
                self.vcol[x] == other.vcol[map[x]]
                    && self.rows[x]
                        .iter()
                        .all(|&(w, l)| other.label(map[x], map[w]) == l)
            })
    }

    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        self.is_isomorphism(self, map)
    }
}

/// A vertex's colour and its sorted (label, neighbour colour) pairs.
type Signature = (u64, Vec<(u32, u64)>);

/// Joint colour refinement. Colours are replaced by their rank among the
/// sorted distinct signatures, so the result does not depend on vertex
/// names. Returns `false` when the two sides' colour histograms diverge.
pub(crate) fn refine(structs: &[&Structure], cols: &mut [Vec<u64>]) -> bool {
    let mut classes = usize::MAX;
    loop {
        let mut sigs: Vec<Vec<Signature>> = Vec::with_capacity(structs.len());
        for (s, c) in structs.iter().zip(cols.iter()) {
            sigs.push(
                (0..s.n)
                    .map(|v| {
                        let mut nb: Vec<(u32, u64)> =
                            s.rows[v].iter().map(|&(w, l)| (l, c[w])).collect();
                        nb.sort_unstable();
                        (c[v], nb)
                    })
                    .collect(),
            );
        }
        let mut ranks: BTreeMap<&Signature, u64> = BTreeMap::new();
        for side in &sigs {
            for sig in side {
                ranks.insert(sig, 0);
            }
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i as u64;
        }
        let new_classes = ranks.len();
        for (side, c) in sigs.iter().zip(cols.iter_mut()) {
            for (v, sig) in side.iter().enumerate() {
                c[v] = ranks[sig];
            }
        }
        if cols.len() == 2 {
            let mut ha = cols[0].clone();
            let mut hb = cols[1].clone();
            ha.sort_unstable();
            hb.sort_unstable();
            if ha != hb {
                return false;
            }
        }
        if new_classes == classes {
            return true;
        }
        classes = new_classes;
    }
}

pub(crate) fn individualise(cols: &mut [u64], x: usize) {
    for (v, c) in cols.iter_mut().enumerate() {
        *c = 2 * *c + u64::from(v != x);
    }
}

pub(crate) fn is_discrete(cols: &[u64]) -> bool {
    let mut sorted = cols.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// Calls `visit` with every isomorphism `a -> b` extending `forced`, in
/// lexicographic order of the image array. `visit` returns `false` to stop.
/// Returns `false` if the search was stopped early.
pub(crate) fn for_each_isomorphism(
    a: &Structure,
    b: &Structure,
    forced: &[(usize, usize)],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if a.n != b.n {
        return true;
    }
    let mut ca = a.vcol.clone();
    let mut cb = b.vcol.clone();
    let mut cols = [std::mem::take(&mut ca), std::mem::take(&mut cb)];
    if !refine(&[a, b], &mut cols) {
        return true;
    }
    for &(x, y) in forced {
        individualise(&mut cols[0], x);
        individualise(&mut cols[1], y);
        if !refine(&[a, b], &mut cols) {
            return true;
        }
    }
    let [ca, cb] = cols;
    descend(a, b, ca, cb, visit)
}

fn descend(
    a: &Structure,
    b: &Structure,
    ca: Vec<u64>,
    cb: Vec<u64>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if is_discrete(&ca) {
        let mut by_colour = vec![0usize; a.n];
        for (y, &c) in cb.iter().enumerate() {
            by_colour[c as usize] = y;
        }
        let map: Vec<usize> = ca.iter().map(|&c| by_colour[c as usize]).collect();
        if a.is_isomorphism(b, &map) {
            return visit(&map);
        }
        return true;
    }
    // first vertex (by index) whose cell is not a singleton
    let mut count = vec![0u32; a.n];
    for &c in &ca {
        count[c as usize] += 1;
    }
    let x = (0..a.n).find(|&x| count[ca[x] as usize] > 1).unwrap();
    for y in (0..b.n).filter(|&y| cb[y] == ca[x]) {
        let mut cols = [ca.clone(), cb.clone()];
        individualise(&mut cols[0], x);
        individualise(&mut cols[1], y);
        if !refine(&[a, b], &mut cols) {
            continue;
        }
        let [na, nb] = cols;
        if !descend(a, b, na, nb, visit) {
            return false;
        }
    }
    true
}

pub(crate) fn find_isomorphism(
    a: &Structure,
    b: &Structure,
    forced: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(a, b, forced, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

fn equitable(a: &Structure) -> Vec<u64> {
    let mut cols = [a.vcol.clone()];
    refine(&[a], &mut cols);
    let [c] = cols;
    c
}

/// Whether the structure has no automorphism other than the identity.
pub(crate) fn is_rigid(a: &Structure) -> bool {
    let cols = equitable(a);
    if is_discrete(&cols) {
        return true;
    }
    // the least vertex moved by a non-trivial automorphism is sent upwards
    for i in 0..a.n {
        for j in (i + 1..a.n).filter(|&j| cols[j] == cols[i]) {
            let forced: Vec<_> = (0..i).map(|k| (k, k)).chain([(i, j)]).collect();
            if find_isomorphism(a, a, &forced).is_some() {
                return false;
            }
        }
    }
    true
}

/// A strong generating set relative to the base `0, 1, ..., n-1`, and the
/// exact group order (product of the basic orbit lengths).
#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub order: u128,
    pub generators: Vec<Permutation>,
}

pub(crate) fn stabiliser_chain(a: &Structure) -> Chain {
    let n = a.n;
    let cols = equitable(a);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    for i in (0..n).rev() {
        let mut orbit = orbit_mask(i, &gens, n);
        for j in (i + 1..n).filter(|&j| cols[j] == cols[i]) {
            if orbit[j] {
                continue;
            }
            let forced: Vec<_> = (0..i).map(|k| (k, k)).chain([(i, j)]).collect();
            if let Some(m) = find_isomorphism(a, a, &forced) {
                gens.push(Permutation::new(m).expect("search yields bijections"));
                orbit = orbit_mask(i, &gens, n);
            }
        }
        order *= orbit.iter().filter(|&&b| b).count() as u128;
    }
    gens.sort();
    Chain {
        order,
        generators: gens,
    }
}

fn orbit_mask(x: usize, gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}

/// Orbits of the group generated by `gens` on `0..n`, as a representative
/// (least element) per point.
pub(crate) fn orbit_representatives(gens: &[Permutation], n: usize) -> Vec<usize> {
    let mut rep: Vec<usize> = (0..n).collect();
    fn find(rep: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while rep[r] != r {
            r = rep[r];
        }
        let mut y = x;
        while rep[y] != r {
            let next = rep[y];
            rep[y] = r;
            y = next;
        }
        r
    }
    for g in gens {
        for x in 0..n {
            let (a, b) = (find(&mut rep, x), find(&mut rep, g.apply(x)));
            if a != b {
                rep[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|x| find(&mut rep, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_count(s: &Structure) -> usize {
        all_perms(s.n()).iter().filter(|p| s.is_automorphism(p)).count()
    }

    #[test]
    fn c4_order_matches_brute_force() {
        let s = Structure::graph(&Graph::cycle(4), None);
        assert_eq!(brute_count(&s), 8);
        assert_eq!(stabiliser_chain(&s).order, 8);
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 5)]);
        let s = Structure::graph(&g, None);
        let mut seen = Vec::new();
        for_each_isomorphism(&s, &s, &[], &mut |m| {
            seen.push(m.to_vec());
            true
        });
        let mut expected: Vec<_> = all_perms(6).into_iter().filter(|p| s.is_automorphism(p)).collect();
        expected.sort();
        assert_eq!(seen, expected);
        assert_eq!(stabiliser_chain(&s).order as usize, expected.len());
    }

    #[test]
    fn directed_path_is_rigid() {
        let o = Orientation::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(is_rigid(&Structure::orientation(&o, None)));
        assert!(!is_rigid(&Structure::graph(o.base(), None)));
    }

    #[test]
    fn orders_of_small_families() {
        let cases = [
            (Graph::complete(5), 120u128),
            (Graph::star(6), 720),
            (Graph::complete_bipartite(2, 3), 12),
            (Graph::cycle(7), 14),
            (Graph::path(6), 2),
        ];
        for (g, order) in cases {
            assert_eq!(stabiliser_chain(&Structure::graph(&g, None)).order, order, "{g:?}");
        }
        assert_eq!(stabiliser_chain(&Structure::graph(&Graph::star(10), None)).order, 3_628_800);
    }
}
