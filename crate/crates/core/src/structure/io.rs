//! JSON structure files.
//!
//! ```json
//! {"signature": {"relations": [{"name": "R", "arity": 2}], "distinguished": "R"},
//!  "size": 2,
//!  "interp": {"R": [[0, 0], [0, 1], [1, 0], [1, 1]]}}
//! ```
//!
//! Constant and function symbols may be declared under `signature.constants`
//! and `signature.functions` and interpreted under the top-level `constants`
//! (name to element) and `functions` (name to a list of `[args..., value]`
//! rows). Only [`StructureFile::into_partial`] accepts them.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::fin::{FinStructure, ValidationReport, Violation};
use super::relation::Relation;
use super::relationalize::PartialStructure;
use super::signature::{PreRelational, Signature};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolDecl {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureFile {
    pub relations: Vec<SymbolDecl>,
    pub distinguished: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<SymbolDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub signature: SignatureFile,
    pub size: usize,
    pub interp: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, Vec<Vec<usize>>>,
}

impl StructureFile {
    pub fn signature(&self) -> Result<Signature> {
        let sig = Signature::new(
            self.signature
                .relations
                .iter()
                .map(|d| (d.name.clone(), d.arity)),
            &self.signature.distinguished,
        )?;
        let pre = PreRelational {
            constants: self.signature.constants.iter().cloned().collect(),
            functions: self
                .signature
                .functions
                .iter()
                .map(|d| (d.name.clone(), d.arity))
                .collect(),
        };
        if pre.constants.len() != self.signature.constants.len()
            || pre.functions.len() != self.signature.functions.len()
        {
            return Err(Error::Signature(
                "duplicate constant or function symbol".into(),
            ));
        }
        sig.with_pre_relational(pre)
    }

    /// Relational part, keeping tuples of the declared arity. Tuples of any
    /// other length are returned as violations.
    fn relational_part(&self, sig: &Signature) -> (FinStructure, Vec<Violation>) {
        let mut extra = Vec::new();
        let mut interp = BTreeMap::new();
        for (name, tuples) in &self.interp {
            let arity = match sig.arity(name) {
                Some(a) => a,
                None => {
                    extra.push(Violation::UndeclaredSymbol {
                        symbol: name.clone(),
                    });
                    continue;
                }
            };
            let (good, bad): (Vec<_>, Vec<_>) = tuples.iter().partition(|t| t.len() == arity);
            for t in bad {
                extra.push(Violation::Arity {
                    symbol: name.clone(),
                    expected: arity,
                    tuple: t.clone(),
                });
            }
            let rel = Relation::from_tuples(arity, good).expect("lengths checked");
            interp.insert(name.clone(), rel);
        }
        (FinStructure::from_parts(sig.clone(), self.size, interp), extra)
    }

    /// Every violation in the file, including tuples of the wrong length.
    pub fn validate(&self) -> Result<ValidationReport> {
        let sig = self.signature()?;
        let (s, mut extra) = self.relational_part(&sig);
        let mut report = s.validate();
        report.violations.append(&mut extra);
        Ok(report)
    }

    /// Strict conversion for purely relational files.
    pub fn into_structure(&self) -> Result<FinStructure> {
        if !self.constants.is_empty() || !self.functions.is_empty() {
            return Err(Error::Input(
                "constants and functions must be relationalized first".into(),
            ));
        }
        let report = self.validate()?;
        report.into_result()?;
        let sig = self.signature()?;
        Ok(self.relational_part(&sig).0)
    }

    pub fn into_partial(&self) -> Result<PartialStructure> {
        let sig = self.signature()?;
        let (base, extra) = self.relational_part(&sig);
        ValidationReport { violations: extra }.into_result()?;
        let p = PartialStructure::new(base, self.constants.clone(), self.functions.clone());
        p.validate().into_result()?;
        Ok(p)
    }

    pub fn from_structure(s: &FinStructure) -> Self {
        let sig = s.signature();
        let pre = sig.pre_relational().cloned().unwrap_or_default();
        StructureFile {
            signature: SignatureFile {
                relations: sig
                    .relations()
                    .map(|(n, a)| SymbolDecl {
                        name: n.to_string(),
                        arity: a,
                    })
                    .collect(),
                distinguished: sig.distinguished().to_string(),
                constants: pre.constants.iter().cloned().collect(),
                functions: pre
                    .functions
                    .iter()
                    .map(|(n, &a)| SymbolDecl {
                        name: n.clone(),
                        arity: a,
                    })
                    .collect(),
            },
            size: s.size(),
            interp: s
                .relations()
                .map(|(n, r)| (n.to_string(), r.iter().map(|t| t.to_vec()).collect()))
                .collect(),
            constants: BTreeMap::new(),
            functions: BTreeMap::new(),
        }
    }

    pub fn from_partial(p: &PartialStructure) -> Self {
        let mut file = Self::from_structure(p.base());
        file.constants = p.constants().clone();
        file.functions = p.functions().clone();
        file
    }
}

impl Serialize for FinStructure {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StructureFile::from_structure(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinStructure {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = StructureFile::deserialize(deserializer)?;
        file.into_structure().map_err(serde::de::Error::custom)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_structure_file(path: &Path) -> Result<StructureFile> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_structure(path: &Path) -> Result<FinStructure> {
    read_structure_file(path)?.into_structure()
}


#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN2: &str = r#"{
        "signature": {"relations": [{"name": "R", "arity": 2}, {"name": "<=", "arity": 2}], "distinguished": "R"},
        "size": 2,
        "interp": {"R": [[0,0],[1,1],[0,1],[1,0]], "<=": [[0,0],[0,1],[1,1]]}
    }"#;

    #[test]
    fn parses_and_roundtrips() {
        let s: FinStructure = serde_json::from_str(CHAIN2).unwrap();
        assert_eq!(s.size(), 2);
        assert_eq!(s.distinguished().len(), 4);
        let back: FinStructure = serde_json::from_str(&to_json(&s).unwrap()).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn ragged_tuples_show_up_in_report() {
        let text = r#"{
            "signature": {"relations": [{"name": "R", "arity": 2}], "distinguished": "R"},
            "size": 2,
            "interp": {"R": [[0,0],[1],[0,5]]}
        }"#;
        let file: StructureFile = serde_json::from_str(text).unwrap();
        let report = file.validate().unwrap();
        assert_eq!(report.violations.len(), 2);
        assert!(file.into_structure().is_err());
    }

    #[test]
    fn functions_rejected_by_strict_path() {
        let text = r#"{
            "signature": {"relations": [{"name": "R", "arity": 2}], "distinguished": "R",
                          "functions": [{"name": "f", "arity": 1}]},
            "size": 2,
            "interp": {"R": [[0,0]]},
            "functions": {"f": [[0,1],[1,1]]}
        }"#;
        let file: StructureFile = serde_json::from_str(text).unwrap();
        assert!(file.into_structure().is_err());
        assert!(file.into_partial().is_ok());
    }
}
