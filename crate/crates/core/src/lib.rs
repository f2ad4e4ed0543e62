//! Exact computations in Coxeter groups, driven entirely by the
//! combinatorics of words: no root systems, no floating point.
//!
//! The word problem is solved by braid-move rewriting, reflections are
//! recognized through palindromic reduced expressions, and on top of that sit
//! maximal dihedral reflection subgroups, reflection length with independent
//! cross-checking, absolute-order intervals of height up to three with
//! bowtie/lattice audits, and interval-group presentations.
//!
//! All values are immutable once constructed and all operations are pure
//! functions of a [`CoxeterSystem`] and their inputs; the memo caches inside
//! the system are lock-guarded, so a system can be shared across threads by
//! reference.

mod braid;
mod dihedral;
mod error;
mod interval;
mod presentation;
mod reflection;
mod system;
mod tlength;
mod word;

pub use braid::support;
pub use dihedral::{MaxDihedral, RankTwoElement};
pub use error::{Error, ErrorKind, Result};
pub use interval::{BowtieWitness, IntervalPoset, LatticeReport};
pub use presentation::{BalanceReport, Presentation};
pub use reflection::{InversionSet, Reflection};
pub use system::{standard, CoxeterSystem, Limits, MAX_RANK};
pub use tlength::{TLengthMode, TLengthResult};
pub use word::{Element, Word};
