//! Families of finite structures, fundamental sequences, and bounded checks
//! of the joint projection property, amalgamation, the fundamental-sequence
//! conditions and rigidity.
//!
//! Every check is a bounded search. A successful report means "verified within
//! the stated bounds", never "proved": the properties quantify over infinite
//! families.

mod checks;
mod report;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use checks::{check_ap, check_fundamental_sequence, check_jpp, check_rigidity, FundamentalBounds};
pub use report::{MorphismRecord, PropertyReport, Status, Witness};

use crate::epi::{compose, Morphism};
use crate::error::{Error, Result};
use crate::structure::{FinStructure, Signature};

/// A deterministic, duplicate-free enumeration of a family of structures.
///
/// Members must come in non-decreasing order of size, which is what lets
/// [`FamilyEnumerator::members_up_to`] stop.
pub trait FamilyEnumerator: Send + Sync {
    fn name(&self) -> String;

    fn signature(&self) -> Signature;

    /// The `i`-th member, or `None` past the end of a finite family.
    fn member(&self, i: usize) -> Option<FinStructure>;

    fn members_up_to(&self, size_bound: usize) -> Vec<FinStructure> {
        (0..)
            .map_while(|i| self.member(i))
            .take_while(|s| s.size() <= size_bound)
            .collect()
    }
}

/// A finite family given by its members.
#[derive(Clone, Debug)]
pub struct ListFamily {
    name: String,
    signature: Signature,
    members: Vec<FinStructure>,
}

impl ListFamily {
    /// Sorts members by size, then structure order, and drops duplicates.
    pub fn new(name: &str, mut members: Vec<FinStructure>) -> Result<Self> {
        let signature = members
            .first()
            .map(|s| s.signature().clone())
            .ok_or_else(|| Error::Input("a family needs at least one member".into()))?;
        for s in &members {
            if s.signature() != &signature {
                return Err(Error::SignatureMismatch);
            }
            s.validate().into_result()?;
        }
        members.sort_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
        members.dedup();
        Ok(ListFamily {
            name: name.to_string(),
            signature,
            members,
        })
    }
}

impl FamilyEnumerator for ListFamily {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn signature(&self) -> Signature {
        self.signature.clone()
    }

    fn member(&self, i: usize) -> Option<FinStructure> {
        self.members.get(i).cloned()
    }
}

/// An inverse sequence `D_0 <- D_1 <- D_2 <- ...` of finite structures.
pub trait FundamentalSequence: Send + Sync {
    fn name(&self) -> String;

    /// Last available level for truncated sequences.
    fn depth_limit(&self) -> Option<usize> {
        None
    }

    fn level(&self, n: usize) -> Result<Arc<FinStructure>>;

    /// The bond `D_{n+1} -> D_n` as a bare map.
    fn bond_map(&self, n: usize) -> Result<Vec<usize>>;

    /// Classes of level elements that are the same point of the quotient
    /// (glued anchors). Elements not listed are singletons.
    fn identified(&self, _n: usize) -> Result<Vec<Vec<usize>>> {
        Ok(Vec::new())
    }

    fn bond(&self, n: usize) -> Result<Morphism> {
        Morphism::new(self.level(n + 1)?, self.level(n)?, self.bond_map(n)?)
    }

    /// `D_m -> D_n` for `n <= m`, the identity when `n == m`.
    fn composed_bond(&self, n: usize, m: usize) -> Result<Morphism> {
        if n > m {
            return Err(Error::Input(format!("composed bond needs n <= m, got {n} > {m}")));
        }
        let mut acc = Morphism::identity(self.level(m)?);
        for k in (n..m).rev() {
            acc = compose(&acc, &self.bond(k)?)?;
        }
        Ok(acc)
    }

    fn check_level(&self, n: usize) -> Result<()> {
        match self.depth_limit() {
            Some(depth) if n > depth => Err(Error::BeyondDepth { level: n, depth }),
            _ => Ok(()),
        }
    }
}

/// A finite sequence given level by level. Bonds are range-checked but not
/// required to be epimorphisms.
#[derive(Clone, Debug)]
pub struct ExplicitSequence {
    name: String,
    levels: Vec<Arc<FinStructure>>,
    bonds: Vec<Vec<usize>>,
}

/// File form of [`ExplicitSequence`]: `bonds[n]` maps level `n + 1` to level `n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SequenceFile {
    pub levels: Vec<FinStructure>,
    pub bonds: Vec<Vec<usize>>,
}

impl ExplicitSequence {
    pub fn new(name: &str, levels: Vec<FinStructure>, bonds: Vec<Vec<usize>>) -> Result<Self> {
        if levels.is_empty() || bonds.len() + 1 != levels.len() {
            return Err(Error::Input(format!(
                "{} levels need {} bonds, got {}",
                levels.len(),
                levels.len().saturating_sub(1),
                bonds.len()
            )));
        }
        let levels: Vec<Arc<FinStructure>> = levels.into_iter().map(Arc::new).collect();
        for (n, map) in bonds.iter().enumerate() {
            Morphism::new(levels[n + 1].clone(), levels[n].clone(), map.clone())?;
        }
        Ok(ExplicitSequence {
            name: name.to_string(),
            levels,
            bonds,
        })
    }

    pub fn from_file(name: &str, file: SequenceFile) -> Result<Self> {
        Self::new(name, file.levels, file.bonds)
    }

    /// The first `depth + 1` levels of another sequence.
    pub fn truncate(seq: &dyn FundamentalSequence, depth: usize) -> Result<Self> {
        let levels = (0..=depth)
            .map(|n| seq.level(n).map(|s| (*s).clone()))
            .collect::<Result<Vec<_>>>()?;
        let bonds = (0..depth).map(|n| seq.bond_map(n)).collect::<Result<Vec<_>>>()?;
        Self::new(&seq.name(), levels, bonds)
    }

    /// Replaces one bond map, keeping range checks. Used to build negative
    /// controls.
    pub fn with_bond(mut self, n: usize, map: Vec<usize>) -> Result<Self> {
        Morphism::new(self.levels[n + 1].clone(), self.levels[n].clone(), map.clone())?;
        self.bonds[n] = map;
        Ok(self)
    }
}

impl FundamentalSequence for ExplicitSequence {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn depth_limit(&self) -> Option<usize> {
        Some(self.levels.len() - 1)
    }

    fn level(&self, n: usize) -> Result<Arc<FinStructure>> {
        self.check_level(n)?;
        Ok(self.levels[n].clone())
    }

    fn bond_map(&self, n: usize) -> Result<Vec<usize>> {
        self.check_level(n + 1)?;
        Ok(self.bonds[n].clone())
    }
}

/// The same structure at every level with identity bonds.
#[derive(Clone, Debug)]
pub struct ConstantSequence {
    structure: Arc<FinStructure>,
}

impl ConstantSequence {
    pub fn new(structure: FinStructure) -> Self {
        ConstantSequence {
            structure: Arc::new(structure),
        }
    }
}

impl FundamentalSequence for ConstantSequence {
    fn name(&self) -> String {
        format!("constant({})", self.structure.size())
    }

    fn level(&self, _n: usize) -> Result<Arc<FinStructure>> {
        Ok(self.structure.clone())
    }

    fn bond_map(&self, _n: usize) -> Result<Vec<usize>> {
        Ok((0..self.structure.size()).collect())
    }
}
