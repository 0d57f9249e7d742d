//! Concrete families and fundamental sequences.

pub mod cantor;
pub mod chain;

pub use cantor::{
    cantor_bond, cantor_level, rho_name, word, CantorFamily, CantorSequence, DyadicGlue, GlueSystem,
    HookGlue,
};
pub use chain::{
    arc_amalgamate, arc_bond, arc_level, chain, chain_family_enumerator, chain_signature, is_chain,
    path, singleton_family, Amalgam, ArcSequence, ChainFamily, SingletonFamily, ORDER,
};
