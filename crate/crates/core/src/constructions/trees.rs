//! Classification of trees by their centre, and the orientation indices it
//! implies.

use serde::Serialize;

use crate::aut::group_summary;
use crate::distinguishing::{count_optimal_rooted_colourings, dprime, RootedTree};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph, Target};
use crate::structure::{is_tree, tree_center, CenterInfo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum TreeCaseKind {
    CentralVertex,
    CentralEdgeFixed,
    CentralEdgeSwapped { unique_optimal: bool },
}

impl TreeCaseKind {
    pub fn tag(&self) -> &'static str {
        match self {
            TreeCaseKind::CentralVertex => "central-vertex",
            TreeCaseKind::CentralEdgeFixed => "central-edge-fixed",
            TreeCaseKind::CentralEdgeSwapped { unique_optimal: true } => "central-edge-swapped-unique",
            TreeCaseKind::CentralEdgeSwapped { unique_optimal: false } => "central-edge-swapped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TreeCase {
    pub kind: TreeCaseKind,
    /// One component of `T - e` rooted at its end of the central edge `e`;
    /// present exactly in the swapped case.
    pub rooted_half: Option<RootedTree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeOdValues {
    pub od_minus: u32,
    pub od_plus: u32,
    pub case: &'static str,
}

fn check_tree(t: &Graph) -> Result<()> {
    if !is_tree(t) {
        return Err(Error::NotATree);
    }
    if t.n() < 3 {
        return Err(Error::TooSmall { n: t.n(), min: 3 });
    }
    Ok(())
}

pub fn tree_case(t: &Graph) -> Result<TreeCase> {
    check_tree(t)?;
    let (a, b) = match tree_center(t)? {
        CenterInfo::CentralVertex(_) => {
            return Ok(TreeCase {
                kind: TreeCaseKind::CentralVertex,
                rooted_half: None,
            })
        }
        CenterInfo::CentralEdge(a, b) => (a, b),
    };
    let swapped = group_summary(Target::Graph(t))
        .generators
        .iter()
        .any(|p| p.apply(a) != a);
    if !swapped {
        return Ok(TreeCase {
            kind: TreeCaseKind::CentralEdgeFixed,
            rooted_half: None,
        });
    }
    let e = t.edge_index(a, b).expect("central edge");
    let half_mask = t.without_edge(e).component_mask(a, t.full_mask());
    let vertices: Vec<usize> = bits(half_mask).collect();
    let root = vertices.iter().position(|&v| v == a).expect("a in its own component");
    let half = RootedTree::new(t.induced(&vertices), root)?;
    let unique = count_optimal_rooted_colourings(&half)? < 2;
    Ok(TreeCase {
        kind: TreeCaseKind::CentralEdgeSwapped {
            unique_optimal: unique,
        },
        rooted_half: Some(half),
    })
}

/// Orientation indices of a tree from its distinguishing index and its
/// case, without looking at any orientation.
pub fn tree_od_values(t: &Graph) -> Result<TreeOdValues> {
    let case = tree_case(t)?;
    let d = dprime(Target::Graph(t))?.value;
    let plus = match case.kind {
        TreeCaseKind::CentralEdgeSwapped {
            unique_optimal: true,
        } => d - 1,
        _ => d,
    };
    Ok(TreeOdValues {
        od_minus: plus.div_ceil(2),
        od_plus: plus,
        case: case.kind.tag(),
    })
}
