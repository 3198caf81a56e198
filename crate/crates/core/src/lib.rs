pub mod aut;
pub mod canon;
pub mod constructions;
pub mod distinguishing;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod kmn;
pub mod orientations;
pub mod perm;
pub(crate) mod search;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Direction, Graph, Orientation, Target};
pub use perm::Permutation;

/// Resource limits shared by the exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest automorphism group that may be listed element by element.
    pub group_cap: u128,
    /// Largest edge count for which all `2^m` orientations are enumerated.
    pub edge_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            group_cap: 1_000_000,
            edge_cap: 20,
        }
    }
}
