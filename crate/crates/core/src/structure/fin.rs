use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::relation::Relation;
use super::signature::Signature;
use crate::error::{Error, Result};

/// A finite structure with universe `{0, ..., size - 1}`.
///
/// Construction through [`FinStructure::from_parts`] performs no checks so
/// that malformed inputs can still be inspected with [`FinStructure::validate`].
/// [`FinStructure::new`] rejects anything with violations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinStructure {
    sig: Signature,
    size: usize,
    interp: BTreeMap<String, Relation>,
}

/// One problem found by [`FinStructure::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    EmptyUniverse,
    Arity {
        symbol: String,
        expected: usize,
        tuple: Vec<usize>,
    },
    Range {
        symbol: String,
        tuple: Vec<usize>,
        size: usize,
    },
    MissingSymbol {
        symbol: String,
    },
    UndeclaredSymbol {
        symbol: String,
    },
    NotRelational {
        symbol: String,
    },
    Function {
        symbol: String,
        detail: String,
    },
    Constant {
        symbol: String,
        detail: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyUniverse => write!(f, "universe is empty"),
            Violation::Arity {
                symbol,
                expected,
                tuple,
            } => write!(f, "`{symbol}` tuple {tuple:?} does not have arity {expected}"),
            Violation::Range {
                symbol,
                tuple,
                size,
            } => write!(f, "`{symbol}` tuple {tuple:?} leaves universe of size {size}"),
            Violation::MissingSymbol { symbol } => write!(f, "no interpretation for `{symbol}`"),
            Violation::UndeclaredSymbol { symbol } => {
                write!(f, "`{symbol}` is interpreted but not declared")
            }
            Violation::NotRelational { symbol } => {
                write!(f, "`{symbol}` is a constant or function symbol")
            }
            Violation::Function { symbol, detail } => write!(f, "function `{symbol}`: {detail}"),
            Violation::Constant { symbol, detail } => write!(f, "constant `{symbol}`: {detail}"),
        }
    }
}

/// Violations found in a structure; empty iff the structure is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            let msg: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            Err(Error::InvalidStructure(msg.join("; ")))
        }
    }
}

impl FinStructure {
    pub fn from_parts(sig: Signature, size: usize, interp: BTreeMap<String, Relation>) -> Self {
        FinStructure { sig, size, interp }
    }

    pub fn new(sig: Signature, size: usize, interp: BTreeMap<String, Relation>) -> Result<Self> {
        let s = Self::from_parts(sig, size, interp);
        s.validate().into_result()?;
        Ok(s)
    }

    /// Convenience constructor from symbol names and tuple lists.
    /// Symbols that are not listed get the empty interpretation.
    pub fn from_tuples<'a, I>(sig: Signature, size: usize, rels: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Vec<Vec<usize>>)>,
    {
        let mut interp: BTreeMap<String, Relation> = sig
            .relations()
            .map(|(n, a)| (n.to_string(), Relation::empty(a)))
            .collect();
        for (name, tuples) in rels {
            let arity = sig
                .arity(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            let rel = Relation::from_tuples(arity, &tuples).map_err(|t| {
                Error::InvalidStructure(format!("`{name}` tuple {t:?} does not have arity {arity}"))
            })?;
            interp.insert(name.to_string(), rel);
        }
        Self::new(sig, size, interp)
    }

    /// Lists every arity, range and coverage violation.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.size == 0 {
            violations.push(Violation::EmptyUniverse);
        }
        if let Some(pre) = self.sig.pre_relational() {
            for c in &pre.constants {
                violations.push(Violation::NotRelational { symbol: c.clone() });
            }
            for f in pre.functions.keys() {
                violations.push(Violation::NotRelational { symbol: f.clone() });
            }
        }
        for (name, arity) in self.sig.relations() {
            let Some(rel) = self.interp.get(name) else {
                violations.push(Violation::MissingSymbol {
                    symbol: name.to_string(),
                });
                continue;
            };
            for t in rel.iter() {
                if rel.arity() != arity {
                    violations.push(Violation::Arity {
                        symbol: name.to_string(),
                        expected: arity,
                        tuple: t.to_vec(),
                    });
                } else if t.iter().any(|&x| x >= self.size) {
                    violations.push(Violation::Range {
                        symbol: name.to_string(),
                        tuple: t.to_vec(),
                        size: self.size,
                    });
                }
            }
        }
        for name in self.interp.keys() {
            if !self.sig.contains(name) {
                violations.push(Violation::UndeclaredSymbol {
                    symbol: name.clone(),
                });
            }
        }
        ValidationReport { violations }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.interp.get(name)
    }

    /// The relation of `name`, or an error naming the missing symbol.
    pub fn expect_relation(&self, name: &str) -> Result<&Relation> {
        self.relation(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn distinguished(&self) -> &Relation {
        self.relation(self.sig.distinguished())
            .expect("valid structures interpret the distinguished symbol")
    }

    /// Interpretations sorted by symbol name.
    pub fn relations(&self) -> impl Iterator<Item = (&str, &Relation)> + '_ {
        self.interp.iter().map(|(n, r)| (n.as_str(), r))
    }

    /// Adds a new symbol with its interpretation.
    pub fn expand(&self, name: &str, rel: Relation) -> Result<Self> {
        let sig = self.sig.with_relation(name, rel.arity())?;
        let mut interp = self.interp.clone();
        interp.insert(name.to_string(), rel);
        Self::new(sig, self.size, interp)
    }

    /// Keeps only the listed symbols (plus the distinguished one).
    pub fn reduct(&self, keep: &[&str]) -> Self {
        let sig = self.sig.restrict(keep);
        let interp = self
            .interp
            .iter()
            .filter(|(n, _)| sig.contains(n))
            .map(|(n, r)| (n.clone(), r.clone()))
            .collect();
        FinStructure::from_parts(sig, self.size, interp)
    }

    /// Same structure with another binary symbol promoted to distinguished.
    pub fn with_distinguished(&self, name: &str) -> Result<Self> {
        Ok(FinStructure {
            sig: self.sig.with_distinguished(name)?,
            size: self.size,
            interp: self.interp.clone(),
        })
    }
}

/// Literal equality of signature, size and interpretations.
pub fn equal(s: &FinStructure, t: &FinStructure) -> bool {
    s == t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new([("R", 2), ("<=", 2)], "R").unwrap()
    }

    fn chain2() -> FinStructure {
        FinStructure::from_tuples(
            sig(),
            2,
            [
                ("<=", vec![vec![0, 0], vec![0, 1], vec![1, 1]]),
                ("R", vec![vec![0, 0], vec![1, 1], vec![0, 1], vec![1, 0]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn well_formed_chain_has_empty_report() {
        assert!(chain2().validate().is_valid());
    }

    #[test]
    fn out_of_range_tuple_is_one_violation() {
        let mut interp = BTreeMap::new();
        interp.insert("R".into(), Relation::from_tuples(2, [[0, 5]]).unwrap());
        interp.insert("<=".into(), Relation::empty(2));
        let s = FinStructure::from_parts(sig(), 2, interp);
        let report = s.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::Range { .. }));
    }

    #[test]
    fn missing_distinguished_is_one_coverage_violation() {
        let mut interp = BTreeMap::new();
        interp.insert("<=".into(), Relation::from_tuples(2, [[0, 0]]).unwrap());
        let s = FinStructure::from_parts(sig(), 2, interp);
        let report = s.validate();
        assert_eq!(
            report.violations,
            vec![Violation::MissingSymbol { symbol: "R".into() }]
        );
    }

    #[test]
    fn empty_universe_rejected() {
        let s = FinStructure::from_tuples(Signature::binary("R"), 0, []);
        assert!(s.is_err());
    }

    #[test]
    fn arity_mismatch_reported() {
        let mut interp = BTreeMap::new();
        interp.insert("R".into(), Relation::from_tuples(3, [[0, 0, 0]]).unwrap());
        let s = FinStructure::from_parts(Signature::binary("R"), 1, interp);
        assert!(matches!(
            s.validate().violations[..],
            [Violation::Arity { expected: 2, .. }]
        ));
    }

    #[test]
    fn equality_is_literal() {
        let a = chain2();
        assert!(equal(&a, &chain2()));
        let b = FinStructure::from_tuples(
            sig(),
            2,
            [
                ("<=", vec![vec![0, 0], vec![0, 1], vec![1, 1]]),
                ("R", vec![vec![0, 0], vec![1, 1], vec![0, 1]]),
            ],
        )
        .unwrap();
        assert!(!equal(&a, &b));
    }
}
