//! Finite approximations of the limit: level properties and certificates,
//! quotient graphs of the levels, their coherence along the bonds, and export.

mod graph;
mod property;

pub use graph::{coherence_failure, export_graph, quotient_coherence, quotient_graph, CoherenceFailure, Format, QuotientGraph};
pub use property::{certify, check_level_property, Certification, Property, PropertyCertificate, Refutation};
