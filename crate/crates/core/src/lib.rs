//! Dynamic membership for regular languages under letter substitutions.
//!
//! The crate goes from a language (regex or DFA) to its syntactic monoid and
//! stable semigroup, classifies it, and builds a maintenance engine whose
//! per-update cost is constant, `O(log log n)` or `O(log n / log log n)`.

pub mod algebra;
pub mod engines;
pub mod error;
pub mod gadgets;
pub mod gallery;
pub mod syntactic;
pub mod veb;

pub use error::{Error, Result};
