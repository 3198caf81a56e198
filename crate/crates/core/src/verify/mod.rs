//! Corpus-driven checks of the theorems and conjectures about orientation
//! indices, with a persistent cache of computed values.

mod cache;
mod conjectures;
mod corpus;
mod report;
mod theorems;

pub use cache::{Cache, CacheRecord};
pub use conjectures::{audit_cache, indices, scan_conjectures, Which};
pub use corpus::{Corpus, CorpusEntry};
pub use report::{ClaimKind, Outcome, Report, Skip, Violation};
pub use theorems::{check_entry, verify_theorem, TheoremId};

use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub limits: Limits,
    /// Edge cap for the brute-force half of `thm12`.
    pub thm12_edge_cap: usize,
    /// `lem2` walks all `4^m` pair colourings.
    pub lem2_edge_cap: usize,
    /// Whether conjecture scans also compute and cache `OD'^+`.
    pub with_od_plus: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            limits: Limits::default(),
            thm12_edge_cap: 16,
            lem2_edge_cap: 10,
            with_od_plus: true,
        }
    }
}
