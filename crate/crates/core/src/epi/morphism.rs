use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::structure::FinStructure;

/// A total map between the universes of two structures over one signature.
#[derive(Clone)]
pub struct Morphism {
    source: Arc<FinStructure>,
    target: Arc<FinStructure>,
    map: Vec<usize>,
}

impl Morphism {
    pub fn new(source: Arc<FinStructure>, target: Arc<FinStructure>, map: Vec<usize>) -> Result<Self> {
        if source.signature() != target.signature() {
            return Err(Error::SignatureMismatch);
        }
        if map.len() != source.size() {
            return Err(Error::LengthMismatch {
                len: map.len(),
                size: source.size(),
            });
        }
        if let Some((element, &image)) = map.iter().enumerate().find(|(_, &y)| y >= target.size()) {
            return Err(Error::OutOfRange {
                element,
                image,
                size: target.size(),
            });
        }
        Ok(Morphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(s: Arc<FinStructure>) -> Self {
        let map = (0..s.size()).collect();
        Morphism {
            source: s.clone(),
            target: s,
            map,
        }
    }

    pub fn source(&self) -> &Arc<FinStructure> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinStructure> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    /// Preimages of each target element, each sorted ascending.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.target.size()];
        for (x, &y) in self.map.iter().enumerate() {
            out[y].push(x);
        }
        out
    }

    pub(crate) fn same_endpoints(a: &Arc<FinStructure>, b: &Arc<FinStructure>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && Self::same_endpoints(&self.source, &other.source)
            && Self::same_endpoints(&self.target, &other.target)
    }
}

impl Eq for Morphism {}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Morphism({} -> {}: {:?})",
            self.source.size(),
            self.target.size(),
            self.map
        )
    }
}
