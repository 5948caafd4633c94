//! Autostackable group structures.
//!
//! A group is described by a finite inverse-closed alphabet, a prefix-closed
//! regular language of normal forms (one per element), and a bounded
//! *stacking map* `(y, a) -> w` that sends each directed Cayley-graph edge to
//! a path with the same endpoints. Tree edges map to themselves, and the
//! non-tree edges flow toward the tree along a well-founded order. Such a
//! structure solves the word problem by prefix rewriting, and when the graph
//! of the stacking map is synchronously regular the group is *autostackable*.
//!
//! The crate is `no_std` (it needs `alloc`). Modules:
//!
//! - [`words`]: alphabets with formal inverses, words, suffix helpers.
//! - [`fsa`]: deterministic acceptors, regular-language algebra, padded
//!   tuple alphabets and synchronously regular relations.
//! - [`stacking`]: [`StackingStructure`], the normalizer, balls, the graph
//!   acceptor of the stacking map and the flow-function verifier.
//! - [`constructions`]: graph products, extensions and finite-index
//!   supergroups, each with a lexicographic well-foundedness certificate.
//! - [`instances`]: free groups, finite groups, Heisenberg, and Stallings'
//!   group with an independent rewriting oracle.
#![no_std]

extern crate alloc;

pub mod constructions;
pub mod error;
pub mod fsa;
pub mod instances;
pub mod stacking;
pub mod words;

pub use error::{Error, Result};
pub use fsa::{Fsa, PaddedAlphabet, SyncAcceptor};
pub use stacking::{PiecewiseRule, StackingStructure, VerifyReport};
pub use words::{Alphabet, Letter, Word};
