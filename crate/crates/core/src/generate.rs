//! Exhaustive generation of small graph classes, one graph per isomorphism
//! class, by vertex augmentation.
//!
//! Every class here is closed under deleting a suitable vertex (a non-cut
//! vertex, or a leaf for trees), so all members on `k + 1` vertices arise by
//! adding a vertex to a member on `k` vertices. Duplicates are removed by
//! canonical form.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::canon::canonical_graph6;
use crate::error::{Error, Result};
use crate::format::parse_graph6;
use crate::graph::Graph;
use crate::structure::{bipartition, is_claw_free};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClass {
    Connected,
    Trees,
    ClawFree,
    Bipartite,
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connected" => Ok(GraphClass::Connected),
            "trees" | "tree" => Ok(GraphClass::Trees),
            "clawfree" | "claw-free" => Ok(GraphClass::ClawFree),
            "bipartite" => Ok(GraphClass::Bipartite),
            _ => Err(Error::InvalidArgument(format!("unknown graph class {s:?}"))),
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Connected => "connected",
            GraphClass::Trees => "trees",
            GraphClass::ClawFree => "clawfree",
            GraphClass::Bipartite => "bipartite",
        })
    }
}

impl GraphClass {
    fn admits(self, g: &Graph) -> bool {
        match self {
            GraphClass::Connected | GraphClass::Trees => true,
            GraphClass::ClawFree => is_claw_free(g),
            GraphClass::Bipartite => bipartition(g).is_some(),
        }
    }

    fn attachments(self, n: usize) -> Vec<u64> {
        match self {
            GraphClass::Trees => (0..n).map(|v| 1u64 << v).collect(),
            _ => (1..1u64 << n).collect(),
        }
    }
}

/// Connected members of `class` on exactly `n` vertices, as canonical
/// graph6 strings in sorted order.
pub fn generate_graph6(class: GraphClass, n: usize) -> Vec<String> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<String> = vec![canonical_graph6(&Graph::empty(1))];
    for k in 1..n {
        let next: BTreeSet<String> = level
            .par_iter()
            .flat_map_iter(|s| {
                let g = parse_graph6(s).expect("canonical strings parse");
                class
                    .attachments(k)
                    .into_iter()
                    .filter_map(move |mask| {
                        let h = g.with_vertex(mask);
                        class.admits(&h).then(|| canonical_graph6(&h))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        level = next.into_iter().collect();
    }
    level
}

pub fn generate(class: GraphClass, n: usize) -> Vec<Graph> {
    generate_graph6(class, n)
        .iter()
        .map(|s| parse_graph6(s).expect("canonical strings parse"))
        .collect()
}

/// All members with `lo <= n <= hi`.
pub fn generate_range(class: GraphClass, lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi).flat_map(|n| generate(class, n)).collect()
}
