//! Identification of designated anchor points.
//!
//! The components are summed left to right. Each anchor names one point of
//! one component at every level (the least or greatest element for some
//! binary symbol, or a fixed element), and must be carried to itself by the
//! bonds. Glued anchors form classes; a fresh distinguished symbol `S` is the
//! old distinguished relation plus all pairs inside a class, made symmetric,
//! and the classes are reported as identified points so that quotient graphs
//! contract them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::sum::oplus_family;
use super::{Classes, LevelCache};
use crate::error::{Error, Result};
use crate::family::FundamentalSequence;
use crate::structure::{FinStructure, Relation, Signature};

/// Default number of bonds checked for anchor compatibility by [`identify`].
pub const VERIFY_DEPTH: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnchorPoint {
    /// The first `x` with `x rel y` for all `y`.
    Least { rel: String },
    /// The first `x` with `y rel x` for all `y`.
    Greatest { rel: String },
    Fixed(usize),
}

impl AnchorPoint {
    pub fn locate(&self, s: &FinStructure) -> Result<usize> {
        let n = s.size();
        let found = match self {
            AnchorPoint::Least { rel } => {
                let r = s.expect_relation(rel)?;
                (0..n).find(|&x| (0..n).all(|y| r.contains(&[x, y])))
            }
            AnchorPoint::Greatest { rel } => {
                let r = s.expect_relation(rel)?;
                (0..n).find(|&x| (0..n).all(|y| r.contains(&[y, x])))
            }
            AnchorPoint::Fixed(e) => (*e < n).then_some(*e),
        };
        found.ok_or_else(|| Error::Glue(format!("no {self} in a structure of size {n}")))
    }
}

impl fmt::Display for AnchorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnchorPoint::Least { rel } => write!(f, "least element for `{rel}`"),
            AnchorPoint::Greatest { rel } => write!(f, "greatest element for `{rel}`"),
            AnchorPoint::Fixed(e) => write!(f, "element {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub component: usize,
    pub point: AnchorPoint,
}

#[derive(Clone)]
pub struct GlueSpec {
    pub components: Vec<Arc<dyn FundamentalSequence>>,
    pub anchors: Vec<Anchor>,
    /// Pairs of anchor indices to identify.
    pub identify: Vec<(usize, usize)>,
    /// Bonds `D_1 -> D_0, ..., D_d -> D_{d-1}` checked eagerly.
    pub verify_depth: usize,
}

impl GlueSpec {
    pub fn new(
        components: Vec<Arc<dyn FundamentalSequence>>,
        anchors: Vec<Anchor>,
        identify: Vec<(usize, usize)>,
    ) -> Self {
        GlueSpec {
            components,
            anchors,
            identify,
            verify_depth: VERIFY_DEPTH,
        }
    }
}

/// File form of a glue specification. Components are family expressions
/// resolved by the caller; a point is `"min"`, `"max"` or an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueFile {
    pub components: Vec<String>,
    pub anchors: Vec<AnchorFile>,
    #[serde(default)]
    pub identify: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorFile {
    pub component: usize,
    pub point: PointFile,
    /// Order symbol for `"min"`/`"max"`, `<=` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointFile {
    Named(String),
    Fixed(usize),
}

impl GlueFile {
    pub fn resolve<F>(&self, mut component: F) -> Result<GlueSpec>
    where
        F: FnMut(&str) -> Result<Arc<dyn FundamentalSequence>>,
    {
        let components = self
            .components
            .iter()
            .map(|c| component(c))
            .collect::<Result<Vec<_>>>()?;
        let anchors = self
            .anchors
            .iter()
            .map(|a| {
                let rel = a.rel.clone().unwrap_or_else(|| "<=".to_string());
                let point = match &a.point {
                    PointFile::Named(p) if p == "min" => AnchorPoint::Least { rel },
                    PointFile::Named(p) if p == "max" => AnchorPoint::Greatest { rel },
                    PointFile::Named(p) => {
                        return Err(Error::Glue(format!("unknown point `{p}`, expected min, max or an element")))
                    }
                    PointFile::Fixed(e) => AnchorPoint::Fixed(*e),
                };
                Ok(Anchor {
                    component: a.component,
                    point,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let identify = self.identify.iter().map(|&[a, b]| (a, b)).collect();
        Ok(GlueSpec::new(components, anchors, identify))
    }
}

pub struct GluedSequence {
    base: Arc<dyn FundamentalSequence>,
    components: Vec<Arc<dyn FundamentalSequence>>,
    anchors: Vec<Anchor>,
    /// Classes of anchor indices.
    classes: Vec<Vec<usize>>,
    symbol: String,
    cache: LevelCache,
}

pub fn identify(spec: GlueSpec) -> Result<GluedSequence> {
    let GlueSpec {
        components,
        anchors,
        identify,
        verify_depth,
    } = spec;
    if components.is_empty() {
        return Err(Error::Glue("at least one component is required".into()));
    }
    if let Some((i, a)) = anchors.iter().enumerate().find(|(_, a)| a.component >= components.len()) {
        return Err(Error::Glue(format!(
            "anchor {i} refers to component {} of {}",
            a.component,
            components.len()
        )));
    }
    let mut classes = Classes::new(anchors.len());
    for &(a, b) in &identify {
        if a >= anchors.len() || b >= anchors.len() {
            return Err(Error::Glue(format!("pair ({a}, {b}) refers to a missing anchor")));
        }
        classes.union(a, b);
    }
    let base = components[1..]
        .iter()
        .fold(components[0].clone(), |acc, c| Arc::new(oplus_family(acc, c.clone())));
    let symbol = Signature::fresh_name("S", &[base.level(0)?.signature()]);
    let seq = GluedSequence {
        base,
        components,
        anchors,
        classes: classes.nontrivial(),
        symbol,
        cache: LevelCache::default(),
    };
    let depth = seq.depth_limit().map_or(verify_depth, |d| d.min(verify_depth));
    for n in 0..=depth {
        seq.anchor_elements(n)?;
    }
    for n in 0..depth {
        seq.check_anchor_bonds(n)?;
    }
    Ok(seq)
}

impl GluedSequence {
    /// Name of the new distinguished symbol.
    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn anchors(&self) -> &[Anchor] {
        &self.anchors
    }

    /// Glued anchor classes, as anchor indices.
    pub fn anchor_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// The element of each anchor at level `n`.
    pub fn anchor_elements(&self, n: usize) -> Result<Vec<usize>> {
        let mut offsets = Vec::with_capacity(self.components.len());
        let mut acc = 0;
        let mut levels = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let level = c.level(n)?;
            offsets.push(acc);
            acc += level.size();
            levels.push(level);
        }
        self.anchors
            .iter()
            .map(|a| Ok(offsets[a.component] + a.point.locate(&levels[a.component])?))
            .collect()
    }

    fn check_anchor_bonds(&self, n: usize) -> Result<()> {
        let upper = self.anchor_elements(n + 1)?;
        let lower = self.anchor_elements(n)?;
        let bond = self.base.bond_map(n)?;
        for (i, (&x, &expected)) in upper.iter().zip(&lower).enumerate() {
            if bond[x] != expected {
                return Err(Error::AnchorIncompatible {
                    anchor: i,
                    level: n + 1,
                    element: x,
                    image: bond[x],
                    expected,
                });
            }
        }
        Ok(())
    }

    /// Element classes of glued anchors at level `n`.
    fn element_classes(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        let elems = self.anchor_elements(n)?;
        let mut out: Vec<Vec<usize>> = self
            .classes
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.iter().map(|&a| elems[a]).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        out.retain(|c| c.len() > 1);
        Ok(out)
    }
}

impl FundamentalSequence for GluedSequence {
    fn name(&self) -> String {
        format!("glue({})", self.components.iter().map(|c| c.name()).collect::<Vec<_>>().join(","))
    }

    fn depth_limit(&self) -> Option<usize> {
        self.base.depth_limit()
    }

    fn level(&self, n: usize) -> Result<Arc<FinStructure>> {
        self.check_level(n)?;
        self.cache.get_or_build(n, || {
            let base = self.base.level(n)?;
            let mut pairs = base.distinguished().clone();
            for class in self.element_classes(n)? {
                let extra: Vec<usize> = class
                    .iter()
                    .flat_map(|&x| class.iter().flat_map(move |&y| [x, y]))
                    .collect();
                pairs = pairs.union(&Relation::from_flat(2, extra));
            }
            base.expand(&self.symbol, pairs.symmetrized())?
                .with_distinguished(&self.symbol)
        })
    }

    fn bond_map(&self, n: usize) -> Result<Vec<usize>> {
        self.check_level(n + 1)?;
        self.check_anchor_bonds(n)?;
        self.base.bond_map(n)
    }

    fn identified(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        let mut classes = Classes::new(self.level(n)?.size());
        for class in self.base.identified(n)?.into_iter().chain(self.element_classes(n)?) {
            for w in class.windows(2) {
                classes.union(w[0], w[1]);
            }
        }
        Ok(classes.nontrivial())
    }
}
