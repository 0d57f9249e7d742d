//! Levels `D_n` on the binary words of length `n`, approximating a quotient of
//! Cantor space by a closed equivalence.
//!
//! Words of length `n` are indexed by their binary value with the first letter
//! most significant, so restriction to a shorter prefix is a right shift.
//! `u R v` holds when `u` and `v` extend to equivalent infinite words, and the
//! unary predicate `rho[s]` holds of the words comparable with `s`. Only the
//! predicates with `|s| <= L` are kept, `L` being the truncation depth.

use std::fmt;
use std::sync::Arc;

use crate::epi::Morphism;
use crate::error::{Error, Result};
use crate::family::{FamilyEnumerator, FundamentalSequence};
use crate::structure::{FinStructure, Relation, Signature};

pub const ADJACENT: &str = "R";

/// Decides, level by level, which pairs of finite words extend to equivalent
/// infinite words.
pub trait GlueSystem: Send + Sync {
    fn name(&self) -> String;

    /// Whether the words `u`, `v` of length `n` have equivalent extensions.
    fn extendable(&self, n: usize, u: usize, v: usize) -> bool;
}

/// Identifies `w 0 1 1 1 ...` with `w 1 0 0 0 ...` for every finite word `w`,
/// the binary-expansion picture of the unit interval.
#[derive(Clone, Copy, Debug, Default)]
pub struct DyadicGlue;

impl GlueSystem for DyadicGlue {
    fn name(&self) -> String {
        "dyadic".into()
    }

    fn extendable(&self, n: usize, u: usize, v: usize) -> bool {
        if u == v {
            return true;
        }
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        // First differing letter from the left.
        let diff = lo ^ hi;
        let k = usize::BITS as usize - 1 - diff.leading_zeros() as usize;
        if k >= n {
            return false;
        }
        let tail = (1usize << k) - 1;
        // lo = w 0 1^k, hi = w 1 0^k
        lo & tail == tail && hi & tail == 0
    }
}

/// A user-supplied extendability predicate.
#[derive(Clone)]
pub struct HookGlue {
    name: String,
    hook: Arc<dyn Fn(usize, usize, usize) -> bool + Send + Sync>,
}

impl HookGlue {
    pub fn new<F>(name: &str, hook: F) -> Self
    where
        F: Fn(usize, usize, usize) -> bool + Send + Sync + 'static,
    {
        HookGlue {
            name: name.to_string(),
            hook: Arc::new(hook),
        }
    }
}

impl fmt::Debug for HookGlue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HookGlue").field("name", &self.name).finish()
    }
}

impl GlueSystem for HookGlue {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn extendable(&self, n: usize, u: usize, v: usize) -> bool {
        (self.hook)(n, u, v)
    }
}

/// The word of length `n` with index `idx`, e.g. `"01"`.
pub fn word(n: usize, idx: usize) -> String {
    (0..n)
        .map(|i| if idx >> (n - 1 - i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Symbol name of the predicate for the word `s`.
pub fn rho_name(s: &str) -> String {
    format!("rho[{s}]")
}

/// All words of length at most `depth`, shortest first.
fn words_up_to(depth: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=depth).flat_map(|len| (0..1usize << len).map(move |idx| (len, idx)))
}

fn comparable(len_s: usize, s: usize, n: usize, u: usize) -> bool {
    let common = len_s.min(n);
    s >> (len_s - common) == u >> (n - common)
}

/// The sequence `D_0 <- D_1 <- ... <- D_L` with restriction bonds.
#[derive(Clone)]
pub struct CantorSequence {
    glue: Arc<dyn GlueSystem>,
    truncation: usize,
    signature: Signature,
}

impl fmt::Debug for CantorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CantorSequence")
            .field("glue", &self.glue.name())
            .field("truncation", &self.truncation)
            .finish()
    }
}

impl CantorSequence {
    pub fn new(glue: Arc<dyn GlueSystem>, truncation: usize) -> Self {
        if truncation >= 20 {
            // 2^(L+1) predicates on 2^L points.
            panic!("truncation depth {truncation} is too large to materialize");
        }
        let symbols = std::iter::once((ADJACENT.to_string(), 2)).chain(
            words_up_to(truncation).map(|(len, idx)| (rho_name(&word(len, idx)), 1)),
        );
        let signature = Signature::new(symbols, ADJACENT).expect("distinct predicate names");
        CantorSequence {
            glue,
            truncation,
            signature,
        }
    }

    pub fn dyadic(truncation: usize) -> Self {
        Self::new(Arc::new(DyadicGlue), truncation)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Checks that the supplied level relations are reflexive, symmetric and
    /// carried exactly onto each other by the restriction bonds, up to `depth`.
    pub fn verify_glue(&self, depth: usize) -> Result<()> {
        let depth = depth.min(self.truncation);
        for n in 0..=depth {
            for u in 0..1usize << n {
                if !self.glue.extendable(n, u, u) {
                    return Err(Error::Glue(format!("level {n}: {} is not related to itself", word(n, u))));
                }
                for v in 0..1usize << n {
                    if self.glue.extendable(n, u, v) != self.glue.extendable(n, v, u) {
                        return Err(Error::Glue(format!(
                            "level {n}: relation between {} and {} is not symmetric",
                            word(n, u),
                            word(n, v)
                        )));
                    }
                }
            }
        }
        for n in 0..depth {
            let upper = self.level_relation(n + 1).image(&self.bond_map(n)?);
            if upper != self.level_relation(n) {
                return Err(Error::Glue(format!(
                    "restriction from level {} does not carry R onto level {n}",
                    n + 1
                )));
            }
        }
        Ok(())
    }

    fn level_relation(&self, n: usize) -> Relation {
        let size = 1usize << n;
        let mut data = Vec::new();
        for u in 0..size {
            for v in 0..size {
                if self.glue.extendable(n, u, v) {
                    data.extend([u, v]);
                }
            }
        }
        Relation::from_flat(2, data)
    }
}

impl FundamentalSequence for CantorSequence {
    fn name(&self) -> String {
        format!("cantor-{}", self.glue.name())
    }

    fn depth_limit(&self) -> Option<usize> {
        Some(self.truncation)
    }

    fn level(&self, n: usize) -> Result<Arc<FinStructure>> {
        self.check_level(n)?;
        let size = 1usize << n;
        let mut interp = std::collections::BTreeMap::new();
        interp.insert(ADJACENT.to_string(), self.level_relation(n));
        for (len, s) in words_up_to(self.truncation) {
            let members: Vec<usize> = (0..size).filter(|&u| comparable(len, s, n, u)).collect();
            interp.insert(rho_name(&word(len, s)), Relation::from_flat(1, members));
        }
        Ok(Arc::new(FinStructure::new(self.signature.clone(), size, interp)?))
    }

    fn bond_map(&self, n: usize) -> Result<Vec<usize>> {
        self.check_level(n + 1)?;
        Ok((0..1usize << (n + 1)).map(|w| w >> 1).collect())
    }
}

/// Level `n` of the sequence.
pub fn cantor_level(seq: &CantorSequence, n: usize) -> Result<FinStructure> {
    Ok((*seq.level(n)?).clone())
}

/// Restriction `D_{n+1} -> D_n`.
pub fn cantor_bond(seq: &CantorSequence, n: usize) -> Result<Morphism> {
    seq.bond(n)
}

/// The family of all levels of a Cantor sequence.
#[derive(Clone, Debug)]
pub struct CantorFamily {
    seq: CantorSequence,
}

impl CantorFamily {
    pub fn new(seq: CantorSequence) -> Self {
        CantorFamily { seq }
    }
}

impl FamilyEnumerator for CantorFamily {
    fn name(&self) -> String {
        self.seq.name()
    }

    fn signature(&self) -> Signature {
        self.seq.signature.clone()
    }

    fn member(&self, i: usize) -> Option<FinStructure> {
        self.seq.level(i).ok().map(|s| (*s).clone())
    }
}
