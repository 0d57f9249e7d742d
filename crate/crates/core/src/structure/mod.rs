//! Finite relational structures over a signature with a distinguished
//! binary symbol, their JSON file format, and relationalization of
//! constants and functions.

mod fin;
pub mod io;
mod relation;
mod relationalize;
mod signature;

pub use fin::{equal, FinStructure, ValidationReport, Violation};
pub use relation::Relation;
pub use relationalize::{relational_name, relationalize, PartialStructure};
pub use signature::{PreRelational, Signature};
