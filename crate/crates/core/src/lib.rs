pub mod acceptance;
pub mod cli;
pub mod constructions;
pub mod epi;
pub mod error;
pub mod families;
pub mod family;
pub mod limits;
pub mod structure;

pub use error::{Error, Result};
