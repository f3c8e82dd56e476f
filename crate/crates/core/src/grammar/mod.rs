//! Labeled trees, the base catalog, the construction operations,
//! certificates, generation and recognition.

pub mod catalog;
pub mod generate;
pub mod labeled;
pub mod ops;
pub mod recognize;
pub mod sequence;

pub use catalog::{catalog, derive_base_catalog, BaseEntry, Catalog, Fragment};
pub use generate::generate;
pub use labeled::LabeledTree;
pub use ops::{OpId, PieceId, Step};
pub use recognize::{recognize, Recognition};
pub use sequence::TSequence;
