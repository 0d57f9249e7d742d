//! Closure constructions: disjoint sums, products, identification of anchor
//! points, and the graph family built from them.

pub mod glue;
pub mod graph;
pub mod product;
pub mod sum;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::structure::FinStructure;

pub use glue::{identify, Anchor, AnchorFile, AnchorPoint, GlueFile, GlueSpec, GluedSequence, PointFile};
pub use graph::{graph_family, Graph};
pub use product::{factorize_product_epi, otimes, otimes_epi, otimes_family, ProductSequence, ProductStructure};
pub use sum::{decompose_oplus_epi, oplus, oplus_epi, oplus_family, SumSequence, SumStructure};

/// Built levels, shared so that repeated requests return the same `Arc`.
#[derive(Debug, Default)]
pub(crate) struct LevelCache {
    levels: Mutex<BTreeMap<usize, Arc<FinStructure>>>,
}

impl LevelCache {
    pub(crate) fn get_or_build<F>(&self, n: usize, build: F) -> Result<Arc<FinStructure>>
    where
        F: FnOnce() -> Result<FinStructure>,
    {
        if let Some(s) = self.levels.lock().expect("cache lock").get(&n) {
            return Ok(s.clone());
        }
        let built = Arc::new(build()?);
        Ok(self
            .levels
            .lock()
            .expect("cache lock")
            .entry(n)
            .or_insert(built)
            .clone())
    }
}

/// Union-find over `0..n`, classes reported by their least element.
pub(crate) struct Classes {
    parent: Vec<usize>,
}

impl Classes {
    pub(crate) fn new(n: usize) -> Self {
        Classes {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            y = std::mem::replace(&mut self.parent[y], root);
        }
        root
    }

    pub(crate) fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }

    /// Classes with at least two members, each sorted, ordered by least member.
    pub(crate) fn nontrivial(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        by_root.into_values().filter(|c| c.len() > 1).collect()
    }
}
