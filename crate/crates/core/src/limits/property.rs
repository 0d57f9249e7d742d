use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FundamentalSequence;
use crate::structure::{FinStructure, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Reflexive,
    Symmetric,
    Antisymmetric,
    Transitive,
    /// Any two elements are comparable.
    Total,
    HasFirst,
    HasLast,
    /// The undirected graph of the relation is connected.
    Connected,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Reflexive,
        Property::Symmetric,
        Property::Antisymmetric,
        Property::Transitive,
        Property::Total,
        Property::HasFirst,
        Property::HasLast,
        Property::Connected,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Reflexive => "reflexive",
            Property::Symmetric => "symmetric",
            Property::Antisymmetric => "antisymmetric",
            Property::Transitive => "transitive",
            Property::Total => "total",
            Property::HasFirst => "has-first",
            Property::HasLast => "has-last",
            Property::Connected => "connected",
        }
    }

    /// The rule carrying the property from all levels to the limit.
    pub fn transfer_rule(self) -> &'static str {
        match self {
            Property::Reflexive => {
                "reflexivity transfer: a relation reflexive in every level is reflexive in the limit"
            }
            Property::Symmetric => {
                "symmetry transfer: a relation symmetric in every level is symmetric in the limit"
            }
            Property::Antisymmetric => {
                "antisymmetry transfer: a relation antisymmetric in every level is antisymmetric in the limit"
            }
            Property::Transitive => {
                "transitivity transfer: a relation transitive in every level is transitive in the limit"
            }
            Property::Total => {
                "totality transfer: if any two points of every level are comparable, so are any two points of the limit"
            }
            Property::HasFirst => {
                "first-element transfer: if every level has a first element, the limit has one"
            }
            Property::HasLast => {
                "last-element transfer: if every level has a last element, the limit has one"
            }
            Property::Connected => {
                "connectedness, finite form: every checked level is connected as an undirected graph, so no \
                 level admits a partition into two parts without a crossing edge; no claim is made about \
                 clopen partitions of the limit itself"
            }
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

fn binary<'a>(s: &'a FinStructure, rel: &str) -> Result<&'a Relation> {
    let r = s.expect_relation(rel)?;
    if r.arity() != 2 {
        return Err(Error::NotBinary {
            name: rel.to_string(),
            arity: r.arity(),
        });
    }
    Ok(r)
}

fn connected(n: usize, r: &Relation) -> bool {
    let mut adj = vec![Vec::new(); n];
    for t in r.iter() {
        adj[t[0]].push(t[1]);
        adj[t[1]].push(t[0]);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !std::mem::replace(&mut seen[y], true) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Checks the property literally on the tuples of `rel`.
pub fn check_level_property(s: &FinStructure, rel: &str, property: Property) -> Result<bool> {
    let r = binary(s, rel)?;
    let n = s.size();
    let all = |f: &dyn Fn(usize, usize) -> bool| (0..n).all(|x| (0..n).all(|y| f(x, y)));
    Ok(match property {
        Property::Reflexive => (0..n).all(|x| r.contains(&[x, x])),
        Property::Symmetric => r.iter().all(|t| r.contains(&[t[1], t[0]])),
        Property::Antisymmetric => r.iter().all(|t| t[0] == t[1] || !r.contains(&[t[1], t[0]])),
        Property::Transitive => {
            let mut succ = vec![Vec::new(); n];
            for t in r.iter() {
                succ[t[0]].push(t[1]);
            }
            r.iter().all(|t| succ[t[1]].iter().all(|&z| r.contains(&[t[0], z])))
        }
        Property::Total => all(&|x, y| r.contains(&[x, y]) || r.contains(&[y, x])),
        Property::HasFirst => (0..n).any(|x| (0..n).all(|y| r.contains(&[x, y]))),
        Property::HasLast => (0..n).any(|x| (0..n).all(|y| r.contains(&[y, x]))),
        Property::Connected => n == 0 || connected(n, r),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCertificate {
    pub sequence: String,
    pub rel: String,
    pub property: Property,
    /// Levels `0..=depth` were checked.
    pub depth: usize,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub sequence: String,
    pub rel: String,
    pub property: Property,
    /// First level where the property fails.
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Certification {
    Certified(PropertyCertificate),
    Refuted(Refutation),
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified(_))
    }
}

/// Checks levels `0..=depth` in order and certifies the property when all of
/// them have it.
pub fn certify(seq: &dyn FundamentalSequence, rel: &str, property: Property, depth: usize) -> Result<Certification> {
    for n in 0..=depth {
        let level = seq.level(n)?;
        if !check_level_property(&level, rel, property)? {
            return Ok(Certification::Refuted(Refutation {
                sequence: seq.name(),
                rel: rel.to_string(),
                property,
                level: n,
            }));
        }
    }
    Ok(Certification::Certified(PropertyCertificate {
        sequence: seq.name(),
        rel: rel.to_string(),
        property,
        depth,
        citation: property.transfer_rule().to_string(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{chain, ArcSequence};

    #[test]
    fn chain_properties() {
        let c = chain(4);
        assert!(check_level_property(&c, "R", Property::Reflexive).unwrap());
        assert!(!check_level_property(&c, "R", Property::Transitive).unwrap());
        for p in [Property::Total, Property::HasFirst, Property::HasLast] {
            assert!(check_level_property(&c, "<=", p).unwrap());
        }
    }

    #[test]
    fn arc_certificates() {
        let c = certify(&ArcSequence, "R", Property::Symmetric, 5).unwrap();
        assert!(c.is_certified());
        let r = certify(&ArcSequence, "R", Property::Transitive, 2).unwrap();
        assert!(matches!(r, Certification::Refuted(Refutation { level: 1, .. })));
    }

    #[test]
    fn parsing() {
        assert_eq!("has-first".parse::<Property>().unwrap(), Property::HasFirst);
        assert!(matches!("dense".parse::<Property>(), Err(Error::UnknownProperty(_))));
    }
}
