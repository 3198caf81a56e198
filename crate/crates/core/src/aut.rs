//! Automorphism groups of graphs and orientations, induced actions on edges
//! and ordered arcs, and the twisted/non-twisted classification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Target};
use crate::perm::Permutation;
use crate::search::{self, Structure};
use crate::Limits;

/// The full automorphism group, listed element by element in lexicographic
/// order of image arrays.
#[derive(Clone, Debug, Serialize)]
pub struct AutGroup {
    n: usize,
    order: u128,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl AutGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// A strong generating set for the base `0, 1, ..., n-1`.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn non_identity(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter().filter(|p| !p.is_identity())
    }
}

/// Group order and a strong generating set, without listing elements.
#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub order: u128,
    pub generators: Vec<Permutation>,
}

pub fn group_summary(x: Target<'_>) -> GroupSummary {
    let chain = search::stabiliser_chain(&Structure::target(x, None));
    GroupSummary {
        order: chain.order,
        generators: chain.generators,
    }
}

/// Enumerates `Aut(x)`. Orientations are compared against their arcs, so
/// directions must be preserved. Refuses when the group order exceeds
/// `limits.group_cap`.
pub fn automorphism_group(x: Target<'_>, limits: &Limits) -> Result<AutGroup> {
    let s = Structure::target(x, None);
    let chain = search::stabiliser_chain(&s);
    if chain.order > limits.group_cap {
        return Err(Error::GroupTooLarge {
            order: chain.order,
            cap: limits.group_cap,
        });
    }
    let mut elements = Vec::with_capacity(chain.order as usize);
    search::for_each_isomorphism(&s, &s, &[], &mut |m| {
        elements.push(Permutation::new(m.to_vec()).expect("bijection"));
        true
    });
    debug_assert_eq!(elements.len() as u128, chain.order);
    Ok(AutGroup {
        n: s.n(),
        order: chain.order,
        generators: chain.generators,
        elements,
    })
}

pub fn is_automorphism(x: Target<'_>, p: &Permutation) -> bool {
    p.len() == x.base().n() && Structure::target(x, None).is_automorphism(p.image())
}

pub fn is_rigid(x: Target<'_>) -> bool {
    search::is_rigid(&Structure::target(x, None))
}

/// Image of every edge index under `p` (which must be an automorphism of
/// the underlying graph).
pub fn edge_permutation(g: &Graph, p: &Permutation) -> Vec<usize> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            g.edge_index(p.apply(u), p.apply(v))
                .expect("automorphisms map edges to edges")
        })
        .collect()
}

/// All `2|E|` ordered pairs `(u, v)` with `uv` an edge, sorted.
pub fn ordered_arcs(g: &Graph) -> Vec<(usize, usize)> {
    let mut arcs: Vec<_> = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    arcs.sort_unstable();
    arcs
}

/// The permutation `(u, v) -> (p(u), p(v))` on the indices of
/// [`ordered_arcs`].
pub fn arc_permutation(g: &Graph, p: &Permutation) -> Result<Permutation> {
    if !is_automorphism(Target::Graph(g), p) {
        return Err(Error::NotAutomorphism);
    }
    let arcs = ordered_arcs(g);
    let image = arcs
        .iter()
        .map(|&(u, v)| {
            arcs.binary_search(&(p.apply(u), p.apply(v)))
                .expect("automorphisms map arcs to arcs")
        })
        .collect();
    Permutation::new(image)
}

/// Twisted iff some edge has both of its ordered pairs in one cycle of the
/// induced arc permutation. If `(v, u)` is reached from `(u, v)` after `k`
/// steps, `p^k` swaps `u` and `v`, and conversely.
pub fn is_twisted(g: &Graph, p: &Permutation) -> Result<bool> {
    let arcs = ordered_arcs(g);
    let ap = arc_permutation(g, p)?;
    let mut cycle_of = vec![0usize; arcs.len()];
    for (id, c) in ap.cycles().iter().enumerate() {
        for &a in c {
            cycle_of[a] = id;
        }
    }
    Ok(g.edges().iter().any(|&(u, v)| {
        let fwd = arcs.binary_search(&(u, v)).unwrap();
        let back = arcs.binary_search(&(v, u)).unwrap();
        cycle_of[fwd] == cycle_of[back]
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FixedStatus {
    Pointwise,
    SetwiseOnly,
    NotFixed,
}

pub fn fixed_set_status(group: &AutGroup, set: &[usize]) -> FixedStatus {
    let mut member = vec![false; group.n()];
    for &v in set {
        member[v] = true;
    }
    let mut moved = false;
    for p in group.elements() {
        for &v in set {
            let w = p.apply(v);
            if !member[w] {
                return FixedStatus::NotFixed;
            }
            moved |= w != v;
        }
    }
    if moved {
        FixedStatus::SetwiseOnly
    } else {
        FixedStatus::Pointwise
    }
}
