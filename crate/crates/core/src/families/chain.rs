//! The arc family: finite chains over `{R, <=}` where `<=` is the natural
//! total order and `R` relates each point to itself and to its neighbours.

use std::sync::Arc;

use crate::epi::{is_epimorphism, Morphism};
use crate::error::{Error, Result};
use crate::family::{FamilyEnumerator, FundamentalSequence};
use crate::structure::{FinStructure, Relation, Signature};

pub const ORDER: &str = "<=";
pub const ADJACENT: &str = "R";

pub fn chain_signature() -> Signature {
    Signature::new([(ADJACENT, 2), (ORDER, 2)], ADJACENT).expect("static signature")
}

fn adjacency(k: usize) -> Relation {
    let mut data = Vec::with_capacity(6 * k);
    for x in 0..k {
        data.extend([x, x]);
        if x + 1 < k {
            data.extend([x, x + 1, x + 1, x]);
        }
    }
    Relation::from_flat(2, data)
}

/// The chain with `k >= 1` points.
pub fn chain(k: usize) -> FinStructure {
    assert!(k >= 1, "chains are non-empty");
    let mut order = Vec::with_capacity(k * (k + 1));
    for x in 0..k {
        for y in x..k {
            order.extend([x, y]);
        }
    }
    let interp = [
        (ADJACENT.to_string(), adjacency(k)),
        (ORDER.to_string(), Relation::from_flat(2, order)),
    ]
    .into_iter()
    .collect();
    FinStructure::from_parts(chain_signature(), k, interp)
}

/// The path with `k` points over `{R}` alone.
pub fn path(k: usize) -> FinStructure {
    assert!(k >= 1, "paths are non-empty");
    let interp = [(ADJACENT.to_string(), adjacency(k))].into_iter().collect();
    FinStructure::from_parts(Signature::binary(ADJACENT), k, interp)
}

/// True iff `s` is, literally, `chain(s.size())`.
pub fn is_chain(s: &FinStructure) -> bool {
    s.size() >= 1 && *s == chain(s.size())
}

/// Level `n` of the arc sequence: the chain with `2^n + 1` points.
pub fn arc_level(n: usize) -> FinStructure {
    chain((1usize << n) + 1)
}

fn halving(n: usize) -> Vec<usize> {
    (0..(1usize << (n + 1)) + 1).map(|k| k / 2).collect()
}

/// The bond `arc_level(n + 1) -> arc_level(n)`, `k -> k / 2`.
pub fn arc_bond(n: usize) -> Morphism {
    Morphism::new(Arc::new(arc_level(n + 1)), Arc::new(arc_level(n)), halving(n))
        .expect("halving stays in range")
}

/// Chains of size `2^n + 1` with halving bonds.
#[derive(Clone, Copy, Debug, Default)]
pub struct ArcSequence;

impl FundamentalSequence for ArcSequence {
    fn name(&self) -> String {
        "arc".into()
    }

    fn level(&self, n: usize) -> Result<Arc<FinStructure>> {
        if n >= usize::BITS as usize - 1 {
            return Err(Error::BeyondDepth {
                level: n,
                depth: usize::BITS as usize - 2,
            });
        }
        Ok(Arc::new(arc_level(n)))
    }

    fn bond_map(&self, n: usize) -> Result<Vec<usize>> {
        Ok(halving(n))
    }
}

/// All chains, `Chain(1), Chain(2), ...`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ChainFamily;

impl FamilyEnumerator for ChainFamily {
    fn name(&self) -> String {
        "chain".into()
    }

    fn signature(&self) -> Signature {
        chain_signature()
    }

    fn member(&self, i: usize) -> Option<FinStructure> {
        Some(chain(i + 1))
    }
}

pub fn chain_family_enumerator() -> ChainFamily {
    ChainFamily
}

/// The one-point chain only. Every chain maps onto it by the constant map.
#[derive(Clone, Copy, Debug, Default)]
pub struct SingletonFamily;

impl FamilyEnumerator for SingletonFamily {
    fn name(&self) -> String {
        "singleton".into()
    }

    fn signature(&self) -> Signature {
        chain_signature()
    }

    fn member(&self, i: usize) -> Option<FinStructure> {
        (i == 0).then(|| chain(1))
    }
}

pub fn singleton_family() -> SingletonFamily {
    SingletonFamily
}

/// Result of amalgamating two epimorphisms of chains over a common base.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub apex: Arc<FinStructure>,
    /// Apex to the source of the first input.
    pub left: Morphism,
    /// Apex to the source of the second input.
    pub right: Morphism,
}

/// Completes `phi: B -> A`, `psi: C -> A` to a commuting square of chain
/// epimorphisms. Over the `j`-th point of `A` the apex has a block of
/// `max(|phi^-1(a_j)|, |psi^-1(a_j)|)` points, mapped increasingly onto each
/// of the two fibers.
pub fn arc_amalgamate(phi: &Morphism, psi: &Morphism) -> Result<Amalgam> {
    for (name, m) in [("phi", phi), ("psi", psi)] {
        if !is_chain(m.source()) || !is_chain(m.target()) {
            return Err(Error::Input(format!("{name} is not a map between chains")));
        }
        if !is_epimorphism(m) {
            return Err(Error::NotEpimorphism(format!("{name} = {:?}", m.map())));
        }
    }
    if !Morphism::same_endpoints(phi.target(), psi.target()) {
        return Err(Error::EndpointMismatch);
    }
    let (fib_b, fib_c) = (phi.fibers(), psi.fibers());
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (fb, fc) in fib_b.iter().zip(&fib_c) {
        let block = fb.len().max(fc.len());
        for l in 0..block {
            left.push(fb[l.min(fb.len() - 1)]);
            right.push(fc[l.min(fc.len() - 1)]);
        }
    }
    let apex = Arc::new(chain(left.len()));
    let left = Morphism::new(apex.clone(), phi.source().clone(), left)?;
    let right = Morphism::new(apex.clone(), psi.source().clone(), right)?;
    Ok(Amalgam { apex, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_relations_match_definition() {
        let c = chain(4);
        assert!(c.validate().is_valid());
        let r = c.relation(ADJACENT).unwrap();
        for x in 0..4usize {
            for y in 0..4usize {
                assert_eq!(r.contains(&[x, y]), x.abs_diff(y) <= 1);
                assert_eq!(c.relation(ORDER).unwrap().contains(&[x, y]), x <= y);
            }
        }
    }

    #[test]
    fn singleton_chain_is_diagonal() {
        let c = chain(1);
        let diag = Relation::from_tuples(2, [[0, 0]]).unwrap();
        assert_eq!(c.relation(ADJACENT), Some(&diag));
        assert_eq!(c.relation(ORDER), Some(&diag));
        assert!(singleton_family().member(0).unwrap().validate().is_valid());
        assert!(singleton_family().member(1).is_none());
    }

    #[test]
    fn arc_levels_and_bonds() {
        assert_eq!(arc_level(0), chain(2));
        assert_eq!(arc_bond(1).map(), &[0, 0, 1, 1, 2]);
        for n in 0..8 {
            assert!(is_epimorphism(&arc_bond(n)), "bond {n}");
        }
    }

    #[test]
    fn chain_family_prefix() {
        let got = chain_family_enumerator().members_up_to(3);
        assert_eq!(got, vec![chain(1), chain(2), chain(3)]);
    }
}
