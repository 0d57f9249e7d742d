//! Products `A (x) B` on the pairs `(a, b)`, indexed row-major as
//! `a * |B| + b`.
//!
//! The distinguished relation holds coordinatewise. Every other symbol of a
//! factor only looks at its own coordinate, and fresh binary symbols `r_1`,
//! `r_2` relate pairs with equal first (second) coordinates. A symbol other
//! than the distinguished one that occurs in both factors is split into
//! `name#1` and `name#2`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Classes, LevelCache};
use crate::epi::{is_epimorphism, Morphism};
use crate::error::{Error, Result};
use crate::family::FundamentalSequence;
use crate::structure::{FinStructure, Relation, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductStructure {
    pub structure: Arc<FinStructure>,
    pub left: Arc<FinStructure>,
    pub right: Arc<FinStructure>,
    /// Names chosen for the coordinate equalities.
    pub markers: (String, String),
}

impl ProductStructure {
    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.right.size() + b
    }

    pub fn coords(&self, x: usize) -> (usize, usize) {
        (x / self.right.size(), x % self.right.size())
    }
}

/// Names of the factor symbols inside the product, per factor.
fn renamings(a: &Signature, b: &Signature) -> (BTreeMap<String, String>, BTreeMap<String, String>) {
    let rename = |own: &Signature, other: &Signature, tag: usize| {
        own.relations()
            .filter(|(n, _)| *n != own.distinguished())
            .map(|(n, _)| {
                let out = if other.contains(n) { format!("{n}#{tag}") } else { n.to_string() };
                (n.to_string(), out)
            })
            .collect::<BTreeMap<_, _>>()
    };
    (rename(a, b, 1), rename(b, a, 2))
}

/// Tuples whose own coordinates (first or second) form a tuple of `rel`, the other
/// coordinates ranging freely over `0..free`.
fn lift(rel: &Relation, free: usize, first: bool, width: usize) -> Relation {
    let k = rel.arity();
    let mut data = Vec::with_capacity(rel.len() * free.pow(k as u32) * k);
    let mut others = vec![0usize; k];
    for t in rel.iter() {
        others.iter_mut().for_each(|o| *o = 0);
        loop {
            for (i, &x) in t.iter().enumerate() {
                data.push(if first { x * width + others[i] } else { others[i] * width + x });
            }
            // Odometer over the free coordinates.
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                others[i] += 1;
                if others[i] < free {
                    break;
                }
                others[i] = 0;
            }
            if others.iter().all(|&o| o == 0) {
                break;
            }
        }
    }
    Relation::from_flat(k, data)
}

pub fn otimes(a: &Arc<FinStructure>, b: &Arc<FinStructure>) -> Result<ProductStructure> {
    let (sa, sb) = (a.signature(), b.signature());
    if sa.distinguished() != sb.distinguished() {
        return Err(Error::DistinguishedMismatch(
            sa.distinguished().to_string(),
            sb.distinguished().to_string(),
        ));
    }
    let distinguished = sa.distinguished();
    let (ren_a, ren_b) = renamings(sa, sb);
    let mut symbols: BTreeMap<String, usize> = BTreeMap::new();
    symbols.insert(distinguished.to_string(), 2);
    for (old, new) in &ren_a {
        symbols.insert(new.clone(), sa.arity(old).expect("declared"));
    }
    for (old, new) in &ren_b {
        symbols.insert(new.clone(), sb.arity(old).expect("declared"));
    }
    let taken = Signature::new(symbols.clone(), distinguished)?;
    let r1 = Signature::fresh_name("r_1", &[&taken, sa, sb]);
    let r2 = Signature::fresh_name("r_2", &[&taken, sa, sb]);
    symbols.insert(r1.clone(), 2);
    symbols.insert(r2.clone(), 2);
    let sig = Signature::new(symbols, distinguished)?;

    let (p, q) = (a.size(), b.size());
    let mut interp = BTreeMap::new();
    let mut dist = Vec::new();
    for s in a.distinguished().iter() {
        for t in b.distinguished().iter() {
            dist.extend([s[0] * q + t[0], s[1] * q + t[1]]);
        }
    }
    interp.insert(distinguished.to_string(), Relation::from_flat(2, dist));
    for (old, new) in &ren_a {
        interp.insert(new.clone(), lift(a.expect_relation(old)?, q, true, q));
    }
    for (old, new) in &ren_b {
        interp.insert(new.clone(), lift(b.expect_relation(old)?, p, false, q));
    }
    let eq_first: Vec<usize> = (0..p)
        .flat_map(|x| (0..q).flat_map(move |y1| (0..q).flat_map(move |y2| [x * q + y1, x * q + y2])))
        .collect();
    let eq_second: Vec<usize> = (0..q)
        .flat_map(|y| (0..p).flat_map(move |x1| (0..p).flat_map(move |x2| [x1 * q + y, x2 * q + y])))
        .collect();
    interp.insert(r1.clone(), Relation::from_flat(2, eq_first));
    interp.insert(r2.clone(), Relation::from_flat(2, eq_second));
    Ok(ProductStructure {
        structure: Arc::new(FinStructure::new(sig, p * q, interp)?),
        left: a.clone(),
        right: b.clone(),
        markers: (r1, r2),
    })
}

fn product_map(psi: &[usize], theta: &[usize], target_width: usize) -> Vec<usize> {
    psi.iter()
        .flat_map(|&x| theta.iter().map(move |&y| x * target_width + y))
        .collect()
}

/// `psi (x) theta`, `(a, b) -> (psi(a), theta(b))`.
pub fn otimes_epi(psi: &Morphism, theta: &Morphism) -> Result<Morphism> {
    let source = otimes(psi.source(), theta.source())?;
    let target = otimes(psi.target(), theta.target())?;
    let map = product_map(psi.map(), theta.map(), theta.target().size());
    Morphism::new(source.structure, target.structure, map)
}

/// Writes an epimorphism between products as `psi (x) theta`.
pub fn factorize_product_epi(
    source: &ProductStructure,
    target: &ProductStructure,
    f: &Morphism,
) -> Result<(Morphism, Morphism)> {
    if f.source() != &source.structure || f.target() != &target.structure {
        return Err(Error::EndpointMismatch);
    }
    let (p, q) = (source.left.size(), source.right.size());
    let image = |a: usize, b: usize| target.coords(f.apply(source.index(a, b)));
    for a in 0..p {
        for b in 0..q {
            let (x, y) = image(a, b);
            let (x0, _) = image(a, 0);
            if x != x0 {
                return Err(Error::NotRectangular {
                    axis: 1,
                    first: (a, 0),
                    second: (a, b),
                    first_image: image(a, 0),
                    second_image: (x, y),
                });
            }
            let (_, y0) = image(0, b);
            if y != y0 {
                return Err(Error::NotRectangular {
                    axis: 2,
                    first: (0, b),
                    second: (a, b),
                    first_image: image(0, b),
                    second_image: (x, y),
                });
            }
        }
    }
    if !is_epimorphism(f) {
        return Err(Error::NotEpimorphism(format!("{:?}", f.map())));
    }
    let psi = (0..p).map(|a| image(a, 0).0).collect();
    let theta = (0..q).map(|b| image(0, b).1).collect();
    Ok((
        Morphism::new(source.left.clone(), target.left.clone(), psi)?,
        Morphism::new(source.right.clone(), target.right.clone(), theta)?,
    ))
}

/// Levelwise product of two sequences with bonds `pi_n (x) rho_n`.
pub struct ProductSequence {
    first: Arc<dyn FundamentalSequence>,
    second: Arc<dyn FundamentalSequence>,
    cache: LevelCache,
}

pub fn otimes_family(
    s1: Arc<dyn FundamentalSequence>,
    s2: Arc<dyn FundamentalSequence>,
) -> ProductSequence {
    ProductSequence {
        first: s1,
        second: s2,
        cache: LevelCache::default(),
    }
}

impl FundamentalSequence for ProductSequence {
    fn name(&self) -> String {
        format!("product({},{})", self.first.name(), self.second.name())
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
            let prod = otimes(&self.first.level(n)?, &self.second.level(n)?)?;
            Ok(Arc::unwrap_or_clone(prod.structure))
        })
    }

    fn bond_map(&self, n: usize) -> Result<Vec<usize>> {
        self.check_level(n + 1)?;
        Ok(product_map(
            &self.first.bond_map(n)?,
            &self.second.bond_map(n)?,
            self.second.level(n)?.size(),
        ))
    }

    /// Pairs are identified when both coordinates are.
    fn identified(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        let (p, q) = (self.first.level(n)?.size(), self.second.level(n)?.size());
        let class_ids = |classes: Vec<Vec<usize>>, size: usize| {
            let mut ids: Vec<usize> = (0..size).collect();
            for c in classes {
                for &x in &c {
                    ids[x] = c[0];
                }
            }
            ids
        };
        let ids1 = class_ids(self.first.identified(n)?, p);
        let ids2 = class_ids(self.second.identified(n)?, q);
        let mut classes = Classes::new(p * q);
        for a in 0..p {
            for b in 0..q {
                classes.union(a * q + b, ids1[a] * q + ids2[b]);
            }
        }
        Ok(classes.nontrivial())
    }
}
