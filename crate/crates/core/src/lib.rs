//! Zero-sum invariants of small finite abelian groups.
//!
//! The crate provides, for groups Z_{n1} x ... x Z_{nd} of modest order:
//!
//! - restricted and unrestricted sumsets of residue sets ([`sumset`]),
//! - constructive witnesses for classical zero-sum guarantees on residue
//!   sequences ([`egz`]),
//! - detection of zero-sum subsets of a fixed cardinality and exhaustive
//!   search for the largest sets avoiding them ([`search`]),
//! - partition counting for row profiles ([`partitions`]),
//! - and a registry of mechanically checked finite statements ([`lemmas`]).
//!
//! Everything is deterministic: fixed seeds, fixed enumeration orders, and
//! search results that do not depend on worker count or interruption.

pub mod egz;
pub mod error;
pub mod group;
pub mod lemmas;
pub mod partitions;
pub mod search;
pub mod sumset;

pub use error::{Error, Result};
pub use group::{
    canonicalize_subset, enumerate_affine_symmetries, row_profile, AffineMap, GroupElement,
    GroupSpec, GroupSubset,
};
