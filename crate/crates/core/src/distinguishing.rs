//! Distinguishing index of graphs, orientations and rooted trees.
//!
//! `dprime` tries widths `k = 1, 2, ...` and, for each, runs a depth-first
//! search over edge colourings in lexicographic order. Two reductions keep
//! the search small without affecting which colouring is found first:
//!
//! * colour names are interchangeable, so only restricted-growth
//!   assignments are visited (a new colour is always the next unused one);
//! * a prefix is dropped when some automorphism, applied to it and
//!   renormalised, yields a lexicographically smaller prefix. The least
//!   distinguishing colouring is the least element of its orbit, so it is
//!   never dropped.
//!
//! A complete assignment is accepted when the edge-coloured structure is
//! rigid. Minimality of `k` follows from exhausting width `k - 1`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::aut::edge_permutation;
use crate::error::{Error, Result};
use crate::graph::{Graph, Target};
use crate::perm::Permutation;
use crate::search::{self, Structure};
use crate::structure::is_tree;

/// Up to this group order every element is used for prefix pruning; above
/// it only the strong generators and their inverses are.
const FULL_PRUNING_ORDER: u128 = 5040;

/// An assignment of colours `1..=width` to edges (or arcs) in canonical edge
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Colouring {
    width: u32,
    assignment: Vec<u32>,
}

impl Colouring {
    pub fn new(width: u32, assignment: Vec<u32>) -> Result<Self> {
        if width == 0 {
            return Err(Error::InvalidColouring("width must be positive".into()));
        }
        if let Some(&c) = assignment.iter().find(|&&c| c == 0 || c > width) {
            return Err(Error::InvalidColouring(format!(
                "colour {c} outside 1..={width}"
            )));
        }
        Ok(Colouring { width, assignment })
    }

    pub fn uniform(m: usize) -> Self {
        Colouring {
            width: 1,
            assignment: vec![1; m],
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// JSON form `{width, assignment, edge_order}`; for orientations the
    /// edge order lists arcs as `[tail, head]`.
    pub fn to_json(&self, x: Target<'_>) -> serde_json::Value {
        let order: Vec<(usize, usize)> = match x {
            Target::Graph(g) => g.edges().to_vec(),
            Target::Orientation(o) => o.arcs().collect(),
        };
        serde_json::json!({
            "width": self.width,
            "assignment": self.assignment,
            "edge_order": order,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DprimeResult {
    pub value: u32,
    pub witness: Colouring,
}

fn check_dimensions(c: &Colouring, m: usize) -> Result<()> {
    if c.len() != m {
        return Err(Error::InvalidColouring(format!(
            "{} colours for {m} edges",
            c.len()
        )));
    }
    Ok(())
}

/// Whether some edge (arc) gets a different colour from its image under
/// `p`.
pub fn breaks(c: &Colouring, p: &Permutation, x: Target<'_>) -> Result<bool> {
    let g = x.base();
    check_dimensions(c, g.m())?;
    if !crate::aut::is_automorphism(x, p) {
        return Err(Error::NotAutomorphism);
    }
    let ep = edge_permutation(g, p);
    Ok((0..g.m()).any(|e| c.assignment[ep[e]] != c.assignment[e]))
}

/// Whether only the identity preserves both `x` and `c`.
pub fn is_distinguishing(c: &Colouring, x: Target<'_>) -> Result<bool> {
    check_dimensions(c, x.base().m())?;
    Ok(search::is_rigid(&Structure::target(x, Some(&c.assignment))))
}

pub fn dprime(x: Target<'_>) -> Result<DprimeResult> {
    let g = x.base();
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if matches!(x, Target::Graph(_)) && g.is_k2() {
        return Err(Error::IsK2);
    }
    let base = Structure::target(x, None);
    minimal_width(g, &base, |c| Structure::target(x, Some(c)))
}

/// A tree with a distinguished root; its automorphisms must fix the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    tree: Graph,
    root: usize,
}

impl RootedTree {
    pub fn new(tree: Graph, root: usize) -> Result<Self> {
        if !is_tree(&tree) {
            return Err(Error::NotATree);
        }
        if root >= tree.n() {
            return Err(Error::InvalidArgument(format!("root {root} out of range")));
        }
        Ok(RootedTree { tree, root })
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.root
    }

    fn structure(&self, colours: Option<&[u32]>) -> Structure {
        let mut vcol = vec![0u64; self.tree.n()];
        vcol[self.root] = 1;
        Structure::graph(&self.tree, colours).with_vertex_colours(&vcol)
    }

    /// Children lists (sorted) and, for each non-root vertex, the index of
    /// the edge to its parent.
    fn hierarchy(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.tree.n();
        let mut children = vec![Vec::new(); n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[self.root] = true;
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            for w in self.tree.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    children[v].push(w);
                    parent_edge[w] = self.tree.edge_index(v, w).unwrap();
                    stack.push(w);
                }
            }
        }
        for c in &mut children {
            c.sort_unstable();
        }
        (children, parent_edge)
    }

    /// Canonical code of the edge-coloured rooted tree: each vertex becomes
    /// the sorted list of `(colour of edge to child, code of child)`.
    /// Two colourings are isomorphic exactly when their codes agree.
    pub fn canonical_code(&self, c: &Colouring) -> Result<String> {
        check_dimensions(c, self.tree.m())?;
        let (children, parent_edge) = self.hierarchy();
        fn code(v: usize, ch: &[Vec<usize>], pe: &[usize], col: &[u32]) -> String {
            let mut parts: Vec<String> = ch[v]
                .iter()
                .map(|&w| format!("{}{}", col[pe[w]], code(w, ch, pe, col)))
                .collect();
            parts.sort_unstable();
            format!("({})", parts.join(","))
        }
        Ok(code(self.root, &children, &parent_edge, &c.assignment))
    }
}

pub fn dprime_rooted(t: &RootedTree) -> Result<DprimeResult> {
    if t.tree.m() == 0 {
        return Err(Error::InvalidArgument("rooted tree has no edges".into()));
    }
    let base = t.structure(None);
    minimal_width(&t.tree, &base, |c| t.structure(Some(c)))
}

/// Number of optimal distinguishing colourings of a rooted tree, counted up
/// to root-fixing automorphisms (colour names are not permuted).
pub fn count_optimal_rooted_colourings(t: &RootedTree) -> Result<u64> {
    let k = dprime_rooted(t)?.value;
    let mut codes = HashSet::new();
    for c in distinguishing_rooted_colourings(t, k) {
        codes.insert(t.canonical_code(&c)?);
    }
    Ok(codes.len() as u64)
}

/// Every distinguishing colouring of `t` with colours `1..=k`.
///
/// Edges are coloured in post-order, so when the edge above `w` is set the
/// whole subtree of `w` is known. A colouring of a rooted tree is
/// distinguishing iff no vertex has two children whose (edge colour,
/// coloured subtree) pairs coincide, which is checked as soon as each pair
/// is complete.
pub fn distinguishing_rooted_colourings(t: &RootedTree, k: u32) -> Vec<Colouring> {
    let (children, parent_edge) = t.hierarchy();
    let mut schedule = Vec::new();
    fn post(v: usize, ch: &[Vec<usize>], out: &mut Vec<usize>) {
        for &w in &ch[v] {
            post(w, ch, out);
            out.push(w);
        }
    }
    post(t.root, &children, &mut schedule);
    let mut parent = vec![usize::MAX; t.tree.n()];
    for (v, ch) in children.iter().enumerate() {
        for &w in ch {
            parent[w] = v;
        }
    }

    struct Ctx<'a> {
        k: u32,
        schedule: &'a [usize],
        children: &'a [Vec<usize>],
        parent: &'a [usize],
        parent_edge: &'a [usize],
        colours: Vec<u32>,
        key: Vec<String>,
        out: Vec<Colouring>,
    }
    fn dfs(ctx: &mut Ctx, step: usize) {
        if step == ctx.schedule.len() {
            ctx.out.push(Colouring {
                width: ctx.k,
                assignment: ctx.colours.clone(),
            });
            return;
        }
        let w = ctx.schedule[step];
        let mut inner: Vec<&str> = ctx.children[w].iter().map(|&c| ctx.key[c].as_str()).collect();
        inner.sort_unstable();
        let inner = format!("({})", inner.join(","));
        let p = ctx.parent[w];
        for col in 1..=ctx.k {
            let key = format!("{col}{inner}");
            let clash = ctx.children[p]
                .iter()
                .take_while(|&&s| s != w)
                .any(|&s| ctx.key[s] == key);
            if clash {
                continue;
            }
            ctx.colours[ctx.parent_edge[w]] = col;
            ctx.key[w] = key;
            dfs(ctx, step + 1);
        }
        ctx.key[w].clear();
    }
    let mut ctx = Ctx {
        k,
        schedule: &schedule,
        children: &children,
        parent: &parent,
        parent_edge: &parent_edge,
        colours: vec![0; t.tree.m()],
        key: vec![String::new(); t.tree.n()],
        out: Vec::new(),
    };
    dfs(&mut ctx, 0);
    ctx.out
}

fn minimal_width(
    g: &Graph,
    base: &Structure,
    coloured: impl Fn(&[u32]) -> Structure,
) -> Result<DprimeResult> {
    let search = WidthSearch::new(g, base, &coloured);
    for k in 1..=(g.m().max(1) as u32) {
        if let Some(witness) = search.within(k) {
            return Ok(DprimeResult { value: k, witness });
        }
    }
    Err(Error::InvalidArgument(
        "no distinguishing colouring exists".into(),
    ))
}

/// A distinguishing colouring of `x` using at most `k` colours, if one
/// exists; the same colouring `dprime` reports when `k = D'(x)`.
pub fn distinguishing_colouring_within(x: Target<'_>, k: u32) -> Result<Option<Colouring>> {
    let g = x.base();
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let base = Structure::target(x, None);
    let coloured = |c: &[u32]| Structure::target(x, Some(c));
    Ok(WidthSearch::new(g, &base, &coloured).within(k))
}

struct WidthSearch<'a> {
    m: usize,
    pruners: Vec<Vec<usize>>,
    coloured: &'a dyn Fn(&[u32]) -> Structure,
}

impl<'a> WidthSearch<'a> {
    fn new(g: &Graph, base: &Structure, coloured: &'a dyn Fn(&[u32]) -> Structure) -> Self {
        let chain = search::stabiliser_chain(base);
        let mut perms: Vec<Permutation> = if chain.order <= FULL_PRUNING_ORDER {
            let mut all = Vec::new();
            search::for_each_isomorphism(base, base, &[], &mut |p| {
                all.push(Permutation::new(p.to_vec()).expect("bijection"));
                true
            });
            all
        } else {
            chain
                .generators
                .iter()
                .flat_map(|p| [p.clone(), p.inverse()])
                .collect()
        };
        perms.retain(|p| !p.is_identity());
        let mut pruners: Vec<Vec<usize>> = perms.iter().map(|p| edge_permutation(g, p)).collect();
        pruners.sort();
        pruners.dedup();
        pruners.retain(|ep| ep.iter().enumerate().any(|(i, &j)| i != j));
        WidthSearch {
            m: g.m(),
            pruners,
            coloured,
        }
    }

    fn within(&self, k: u32) -> Option<Colouring> {
        let mut c = vec![0u32; self.m];
        self.dfs(0, 0, k.max(1), &mut c).then(|| Colouring {
            width: k.max(1),
            assignment: c,
        })
    }

    fn dfs(&self, pos: usize, used: u32, k: u32, c: &mut [u32]) -> bool {
        if pos == self.m {
            return search::is_rigid(&(self.coloured)(c));
        }
        for col in 1..=k.min(used + 1) {
            c[pos] = col;
            if self.is_leader_prefix(c, pos + 1, k) && self.dfs(pos + 1, used.max(col), k, c) {
                return true;
            }
        }
        c[pos] = 0;
        false
    }

    /// False when some pruner maps the first `len` positions onto a
    /// renormalised prefix that is smaller than `c`'s.
    fn is_leader_prefix(&self, c: &[u32], len: usize, k: u32) -> bool {
        let mut relabel = vec![0u32; k as usize + 1];
        'next: for ep in &self.pruners {
            relabel.iter_mut().for_each(|r| *r = 0);
            let mut fresh = 1;
            for j in 0..len {
                let t = ep[j];
                if t >= len {
                    continue 'next;
                }
                let x = c[t] as usize;
                if relabel[x] == 0 {
                    relabel[x] = fresh;
                    fresh += 1;
                }
                match relabel[x].cmp(&c[j]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => continue 'next,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }
}
