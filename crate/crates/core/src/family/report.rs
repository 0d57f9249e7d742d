use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::epi::{is_epimorphism, Morphism};
use crate::structure::FinStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    VerifiedWithinBounds,
    Counterexample,
}

/// A morphism between two structures of the enclosing witness, by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismRecord {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub map: Vec<usize>,
}

/// Structures and epimorphisms backing one verdict.
///
/// Each entry of `commuting` is a pair of paths through `morphisms`, applied
/// left to right, whose composites must coincide.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    pub structures: Vec<FinStructure>,
    pub morphisms: Vec<MorphismRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub commuting: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Witness {
    pub fn new(description: impl Into<String>) -> Self {
        Witness {
            description: description.into(),
            ..Default::default()
        }
    }

    pub fn structure(&mut self, s: &FinStructure) -> usize {
        if let Some(i) = self.structures.iter().position(|t| t == s) {
            return i;
        }
        self.structures.push(s.clone());
        self.structures.len() - 1
    }

    pub fn morphism(&mut self, label: &str, m: &Morphism) -> usize {
        let source = self.structure(m.source());
        let target = self.structure(m.target());
        self.morphisms.push(MorphismRecord {
            label: label.to_string(),
            source,
            target,
            map: m.map().to_vec(),
        });
        self.morphisms.len() - 1
    }

    pub fn commutes(&mut self, left: Vec<usize>, right: Vec<usize>) {
        self.commuting.push((left, right));
    }

    /// Every recorded morphism must be an epimorphism and every commuting
    /// pair must compose to the same map.
    pub fn reverify(&self) -> Result<(), String> {
        for s in &self.structures {
            if !s.validate().is_valid() {
                return Err(format!("{}: invalid structure", self.description));
            }
        }
        let structures: Vec<Arc<FinStructure>> =
            self.structures.iter().cloned().map(Arc::new).collect();
        let mut morphisms = Vec::new();
        for rec in &self.morphisms {
            let (Some(a), Some(b)) = (structures.get(rec.source), structures.get(rec.target)) else {
                return Err(format!("{}: `{}` refers to a missing structure", self.description, rec.label));
            };
            let m = Morphism::new(a.clone(), b.clone(), rec.map.clone())
                .map_err(|e| format!("{}: `{}`: {e}", self.description, rec.label))?;
            if !is_epimorphism(&m) {
                return Err(format!("{}: `{}` is not an epimorphism", self.description, rec.label));
            }
            morphisms.push(rec);
        }
        let composite = |path: &[usize]| -> Result<(usize, usize, Vec<usize>), String> {
            let first = path
                .first()
                .and_then(|&i| morphisms.get(i))
                .ok_or_else(|| format!("{}: empty or dangling path", self.description))?;
            let mut map = first.map.clone();
            let mut target = first.target;
            for &i in &path[1..] {
                let rec = morphisms
                    .get(i)
                    .ok_or_else(|| format!("{}: dangling path", self.description))?;
                if rec.source != target {
                    return Err(format!("{}: path {path:?} is not composable", self.description));
                }
                map = map.iter().map(|&x| rec.map[x]).collect();
                target = rec.target;
            }
            Ok((first.source, target, map))
        };
        for (left, right) in &self.commuting {
            if composite(left)? != composite(right)? {
                return Err(format!(
                    "{}: paths {left:?} and {right:?} do not commute",
                    self.description
                ));
            }
        }
        Ok(())
    }
}

/// Outcome of a bounded property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub bounds: BTreeMap<String, usize>,
    pub status: Status,
    /// Number of instances (pairs, squares, level pairs, ...) examined.
    pub checked: usize,
    pub witnesses: Vec<Witness>,
    pub note: String,
}

impl PropertyReport {
    pub(crate) fn new(property: &str, bounds: &[(&str, usize)], note: &str) -> Self {
        PropertyReport {
            property: property.to_string(),
            bounds: bounds.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            status: Status::VerifiedWithinBounds,
            checked: 0,
            witnesses: Vec::new(),
            note: note.to_string(),
        }
    }

    pub(crate) fn fail(&mut self, witness: Witness) {
        self.status = Status::Counterexample;
        self.witnesses.push(witness);
    }

    pub fn verified(&self) -> bool {
        self.status == Status::VerifiedWithinBounds
    }

    pub fn reverify(&self) -> Result<(), String> {
        self.witnesses.iter().try_for_each(Witness::reverify)
    }
}
