//! Disjoint sums `A_1 (+) A_2`. The second summand is shifted past the first,
//! and fresh unary symbols `P_1`, `P_2` mark the two blocks so that every
//! epimorphism between sums maps blocks onto blocks.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Classes, LevelCache};
use crate::epi::{is_epimorphism, Morphism};
use crate::error::{Error, Result};
use crate::family::FundamentalSequence;
use crate::structure::{FinStructure, Relation, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumStructure {
    pub structure: Arc<FinStructure>,
    pub left: Arc<FinStructure>,
    pub right: Arc<FinStructure>,
    /// Names chosen for the block predicates.
    pub markers: (String, String),
}

impl SumStructure {
    /// Offset of the second block.
    pub fn offset(&self) -> usize {
        self.left.size()
    }

    /// 0 for the first block, 1 for the second.
    pub fn block_of(&self, x: usize) -> usize {
        usize::from(x >= self.offset())
    }
}

/// Union of two signatures with the same distinguished symbol. Symbols of the
/// same name must have the same arity.
pub(crate) fn union_signature(a: &Signature, b: &Signature) -> Result<BTreeMap<String, usize>> {
    if a.distinguished() != b.distinguished() {
        return Err(Error::DistinguishedMismatch(
            a.distinguished().to_string(),
            b.distinguished().to_string(),
        ));
    }
    let mut out: BTreeMap<String, usize> = a.relations().map(|(n, k)| (n.to_string(), k)).collect();
    for (name, arity) in b.relations() {
        match out.get(name) {
            Some(&k) if k != arity => {
                return Err(Error::SymbolCollision {
                    name: name.to_string(),
                    left: k,
                    right: arity,
                })
            }
            _ => {
                out.insert(name.to_string(), arity);
            }
        }
    }
    Ok(out)
}

fn markers(a: &Signature, b: &Signature) -> (String, String) {
    (
        Signature::fresh_name("P_1", &[a, b]),
        Signature::fresh_name("P_2", &[a, b]),
    )
}

pub fn oplus(a1: &Arc<FinStructure>, a2: &Arc<FinStructure>) -> Result<SumStructure> {
    let (s1, s2) = (a1.signature(), a2.signature());
    let mut symbols = union_signature(s1, s2)?;
    let (p1, p2) = markers(s1, s2);
    symbols.insert(p1.clone(), 1);
    symbols.insert(p2.clone(), 1);
    let sig = Signature::new(symbols.clone(), s1.distinguished())?;

    let offset = a1.size();
    let size = offset + a2.size();
    let mut interp = BTreeMap::new();
    for (name, &arity) in &symbols {
        let left = a1.relation(name).cloned().unwrap_or_else(|| Relation::empty(arity));
        let right = a2
            .relation(name)
            .map(|r| r.shifted(offset))
            .unwrap_or_else(|| Relation::empty(arity));
        interp.insert(name.clone(), left.union(&right));
    }
    interp.insert(p1.clone(), Relation::from_flat(1, (0..offset).collect()));
    interp.insert(p2.clone(), Relation::from_flat(1, (offset..size).collect()));
    Ok(SumStructure {
        structure: Arc::new(FinStructure::new(sig, size, interp)?),
        left: a1.clone(),
        right: a2.clone(),
        markers: (p1, p2),
    })
}

fn sum_map(f1: &[usize], f2: &[usize], source_offset: usize, target_offset: usize) -> Vec<usize> {
    debug_assert_eq!(f1.len(), source_offset);
    f1.iter().copied().chain(f2.iter().map(|&y| y + target_offset)).collect()
}

/// `f_1 (+) f_2` between the sums of the sources and of the targets.
pub fn oplus_epi(f1: &Morphism, f2: &Morphism) -> Result<Morphism> {
    let source = oplus(f1.source(), f2.source())?;
    let target = oplus(f1.target(), f2.target())?;
    let map = sum_map(f1.map(), f2.map(), source.offset(), target.offset());
    Morphism::new(source.structure, target.structure, map)
}

/// Splits an epimorphism between sums into its two blocks.
pub fn decompose_oplus_epi(
    source: &SumStructure,
    target: &SumStructure,
    f: &Morphism,
) -> Result<(Morphism, Morphism)> {
    if f.source() != &source.structure || f.target() != &target.structure {
        return Err(Error::EndpointMismatch);
    }
    for (x, &y) in f.map().iter().enumerate() {
        if source.block_of(x) != target.block_of(y) {
            return Err(Error::CrossBlock {
                element: x,
                block: source.block_of(x) + 1,
                image: y,
            });
        }
    }
    if !is_epimorphism(f) {
        return Err(Error::NotEpimorphism(format!("{:?}", f.map())));
    }
    let (so, to) = (source.offset(), target.offset());
    let f1 = f.map()[..so].to_vec();
    let f2 = f.map()[so..].iter().map(|&y| y - to).collect();
    Ok((
        Morphism::new(source.left.clone(), target.left.clone(), f1)?,
        Morphism::new(source.right.clone(), target.right.clone(), f2)?,
    ))
}

/// Levelwise sum of two sequences with bonds `phi_1 (+) phi_2`.
pub struct SumSequence {
    first: Arc<dyn FundamentalSequence>,
    second: Arc<dyn FundamentalSequence>,
    cache: LevelCache,
}

pub fn oplus_family(s1: Arc<dyn FundamentalSequence>, s2: Arc<dyn FundamentalSequence>) -> SumSequence {
    SumSequence {
        first: s1,
        second: s2,
        cache: LevelCache::default(),
    }
}

impl SumSequence {
    pub fn summands(&self) -> (&Arc<dyn FundamentalSequence>, &Arc<dyn FundamentalSequence>) {
        (&self.first, &self.second)
    }

    /// Size of the first block at level `n`.
    pub fn offset(&self, n: usize) -> Result<usize> {
        Ok(self.first.level(n)?.size())
    }
}

impl FundamentalSequence for SumSequence {
    fn name(&self) -> String {
        format!("sum({},{})", self.first.name(), self.second.name())
    }

    fn depth_limit(&self) -> Option<usize> {
        match (self.first.depth_limit(), self.second.depth_limit()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn level(&self, n: usize) -> Result<Arc<FinStructure>> {
        self.check_level(n)?;
        self.cache.get_or_build(n, || {
            let sum = oplus(&self.first.level(n)?, &self.second.level(n)?)?;
            Ok(Arc::unwrap_or_clone(sum.structure))
        })
    }

    fn bond_map(&self, n: usize) -> Result<Vec<usize>> {
        self.check_level(n + 1)?;
        Ok(sum_map(
            &self.first.bond_map(n)?,
            &self.second.bond_map(n)?,
            self.offset(n + 1)?,
            self.offset(n)?,
        ))
    }

    fn identified(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        let offset = self.offset(n)?;
        let mut classes = Classes::new(self.level(n)?.size());
        for class in self.first.identified(n)? {
            for w in class.windows(2) {
                classes.union(w[0], w[1]);
            }
        }
        for class in self.second.identified(n)? {
            for w in class.windows(2) {
                classes.union(w[0] + offset, w[1] + offset);
            }
        }
        Ok(classes.nontrivial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epi::count_epimorphisms;
    use crate::families::chain;

    #[test]
    fn two_edges_side_by_side() {
        let c2 = Arc::new(chain(2));
        let sum = oplus(&c2, &c2).unwrap();
        let s = &sum.structure;
        assert_eq!(s.size(), 4);
        assert_eq!(s.relation("P_1").unwrap().iter().flatten().copied().collect::<Vec<_>>(), [0, 1]);
        assert_eq!(s.relation("P_2").unwrap().iter().flatten().copied().collect::<Vec<_>>(), [2, 3]);
        assert!(s.distinguished().iter().all(|t| (t[0] < 2) == (t[1] < 2)));
    }

    #[test]
    fn counts_multiply() {
        let (c2, c3) = (Arc::new(chain(2)), Arc::new(chain(3)));
        let a = oplus(&c3, &c2).unwrap();
        let b = oplus(&c2, &c2).unwrap();
        assert_eq!(count_epimorphisms(&a.structure, &b.structure).unwrap(), 2);
    }

    #[test]
    fn cross_block_map_is_rejected() {
        let c2 = Arc::new(chain(2));
        let sum = oplus(&c2, &c2).unwrap();
        let f = Morphism::new(sum.structure.clone(), sum.structure.clone(), vec![0, 2, 1, 3]).unwrap();
        assert!(!is_epimorphism(&f));
        assert!(matches!(
            decompose_oplus_epi(&sum, &sum, &f),
            Err(Error::CrossBlock { element: 1, block: 1, image: 2 })
        ));
    }

    #[test]
    fn arity_collision_is_an_error() {
        let a = Arc::new(chain(1));
        let sig = Signature::new([("R", 2), ("<=", 3)], "R").unwrap();
        let b = Arc::new(FinStructure::from_tuples(sig, 1, [("R", vec![vec![0, 0]])]).unwrap());
        assert!(matches!(oplus(&a, &b), Err(Error::SymbolCollision { .. })));
    }

    #[test]
    fn iterated_sums_get_fresh_markers() {
        let c1 = Arc::new(chain(1));
        let inner = oplus(&c1, &c1).unwrap();
        let outer = oplus(&inner.structure, &c1).unwrap();
        assert_eq!(outer.markers, ("P_1#2".to_string(), "P_2#2".to_string()));
    }
}
