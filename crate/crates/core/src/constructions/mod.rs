//! Constructive orientations.

mod clawfree;
mod compatible;
mod hamiltonian;
mod layered;
mod trees;

pub use clawfree::{
    clawfree_construction, clawfree_rigid_orientation, clawfree_rigid_orientation_traced, simple_directed_cycles,
    ClawfreeBranch, ClawfreeTrace,
};
pub use compatible::compatible_orientation;
pub use hamiltonian::hamiltonian_orientation;
pub use layered::{layered_orientation, merge_colouring, split_colouring, OrderedPartition, PairColouring};
pub use trees::{tree_case, tree_od_values, TreeCase, TreeCaseKind, TreeOdValues};
