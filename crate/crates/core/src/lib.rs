//! Roman domination on trees and small graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`], [`canon`], [`enumerate`]: graphs, trees, canonical codes and
//!   isomorphism-free enumeration.
//! * [`solver`]: exact Roman domination and domination numbers, by tree
//!   dynamic programming and by exhaustive search.
//! * [`partition`]: the per-vertex value sets attained over all minimum
//!   Roman dominating functions, excellence and the deletion/addition
//!   criticality classes.
//! * [`grammar`]: labeled trees, the base catalog, the construction
//!   operations, certificate generation, replay and recognition.
//! * [`atlas`]: classifiers for the special tree families.
//! * [`verify`]: exhaustive and randomized verification suites.

pub mod atlas;
pub mod canon;
pub mod config;
pub mod enumerate;
pub mod error;
pub mod grammar;
pub mod graph;
pub mod partition;
pub mod solver;
pub mod verify;

pub use config::Caps;
pub use error::{Error, ParseError, Result};
pub use graph::{Graph, Tree};
