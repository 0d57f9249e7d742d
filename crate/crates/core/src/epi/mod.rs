//! Epimorphisms between finite structures: checking, enumeration,
//! composition, isomorphisms and refinement of partitions.
//!
//! A map `f: A -> B` is an epimorphism when it is onto the universe of `B` and,
//! for every symbol `r`, the coordinatewise image of `r^A` is exactly `r^B`.

mod morphism;
mod search;

use std::sync::Arc;

pub use morphism::Morphism;
pub use search::EpiSearch;

use crate::error::{Error, Result};
use crate::structure::FinStructure;

/// Checks the definition directly: surjectivity plus image equality for every
/// relation symbol.
pub fn is_epimorphism(m: &Morphism) -> bool {
    if !m.is_surjective() {
        return false;
    }
    let (a, b) = (m.source(), m.target());
    a.relations().all(|(name, rel)| match b.relation(name) {
        Some(target) => &rel.image(m.map()) == target,
        None => false,
    })
}

/// Same as [`is_epimorphism`] for a bare map.
pub fn is_epimorphism_map(a: &FinStructure, b: &FinStructure, map: &[usize]) -> Result<bool> {
    let m = Morphism::new(Arc::new(a.clone()), Arc::new(b.clone()), map.to_vec())?;
    Ok(is_epimorphism(&m))
}

/// Every epimorphism `a -> b`, in lexicographic order of maps.
pub fn enumerate_epimorphisms(a: &Arc<FinStructure>, b: &Arc<FinStructure>) -> Result<Vec<Morphism>> {
    let maps = EpiSearch::new(a, b)?.collect_maps();
    Ok(wrap(a, b, maps))
}

/// One epimorphism per orbit under automorphisms of `b`.
pub fn enumerate_epimorphisms_modulo_automorphisms(
    a: &Arc<FinStructure>,
    b: &Arc<FinStructure>,
) -> Result<Vec<Morphism>> {
    let maps = EpiSearch::new(a, b)?
        .modulo_target_automorphisms(true)
        .collect_maps();
    Ok(wrap(a, b, maps))
}

pub fn count_epimorphisms(a: &FinStructure, b: &FinStructure) -> Result<usize> {
    Ok(EpiSearch::new(a, b)?.count())
}

fn wrap(a: &Arc<FinStructure>, b: &Arc<FinStructure>, maps: Vec<Vec<usize>>) -> Vec<Morphism> {
    maps.into_iter()
        .map(|map| Morphism::new(a.clone(), b.clone(), map).expect("search yields valid maps"))
        .collect()
}

/// `g` after `f`.
pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if !Morphism::same_endpoints(f.target(), g.source()) {
        return Err(Error::EndpointMismatch);
    }
    let map = f.map().iter().map(|&x| g.apply(x)).collect();
    Morphism::new(f.source().clone(), g.target().clone(), map)
}

/// A bijective epimorphism.
pub fn is_isomorphism(m: &Morphism) -> bool {
    m.source().size() == m.target().size() && m.is_injective() && is_epimorphism(m)
}

pub fn enumerate_automorphisms(a: &Arc<FinStructure>) -> Vec<Morphism> {
    enumerate_epimorphisms(a, a).expect("a structure shares its own signature")
}

/// How many epimorphisms exist between two structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniqueness {
    None,
    Unique(Morphism),
    Multiple(usize),
}

pub fn unique_epimorphism(a: &Arc<FinStructure>, b: &Arc<FinStructure>) -> Result<Uniqueness> {
    let search = EpiSearch::new(a, b)?;
    let mut first = search.take(2);
    Ok(match first.len() {
        0 => Uniqueness::None,
        1 => Uniqueness::Unique(Morphism::new(a.clone(), b.clone(), first.remove(0))?),
        _ => Uniqueness::Multiple(search.count()),
    })
}

/// True iff every fiber of `m` lies inside one block of `partition`.
pub fn refines(m: &Morphism, partition: &[Vec<usize>]) -> Result<bool> {
    let n = m.source().size();
    let mut block_of = vec![usize::MAX; n];
    for (bi, block) in partition.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::MalformedPartition(format!("block {bi} is empty")));
        }
        for &x in block {
            if x >= n {
                return Err(Error::MalformedPartition(format!(
                    "element {x} is outside the source universe"
                )));
            }
            if block_of[x] != usize::MAX {
                return Err(Error::MalformedPartition(format!(
                    "element {x} occurs in more than one block"
                )));
            }
            block_of[x] = bi;
        }
    }
    if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::MalformedPartition(format!("element {x} is not covered")));
    }
    Ok(m.fibers().iter().all(|fiber| {
        fiber
            .windows(2)
            .all(|w| block_of[w[0]] == block_of[w[1]])
    }))
}
