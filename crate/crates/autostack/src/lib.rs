//! File formats, construction recipes and the `autostack` command-line tool
//! built on [`autostack_core`].
//!
//! - [`fsa_file`]: acceptors as JSON documents and Graphviz DOT.
//! - [`structure_file`]: stacking structures as JSON documents, and the
//!   `builtin:<name>` references into the instance catalog.
//! - [`recipe`]: declarative inputs for the three closure constructions.
//! - [`cli`]: the command-line driver.

pub mod cli;
mod error;
pub mod fsa_file;
pub mod recipe;
pub mod structure_file;

pub use error::{Error, Result};
