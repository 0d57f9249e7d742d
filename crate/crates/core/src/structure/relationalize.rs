use std::collections::{BTreeMap, BTreeSet};

use super::fin::{FinStructure, ValidationReport, Violation};
use super::relation::Relation;
use super::signature::Signature;
use crate::error::{Error, Result};

/// A structure that may still carry constants and functions.
///
/// Function tables are lists of rows `[x_1, ..., x_m, f(x_1, ..., x_m)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialStructure {
    base: FinStructure,
    constants: BTreeMap<String, usize>,
    functions: BTreeMap<String, Vec<Vec<usize>>>,
}

impl PartialStructure {
    pub fn new(
        base: FinStructure,
        constants: BTreeMap<String, usize>,
        functions: BTreeMap<String, Vec<Vec<usize>>>,
    ) -> Self {
        PartialStructure {
            base,
            constants,
            functions,
        }
    }

    /// A purely relational structure seen as a partial one.
    pub fn relational(base: FinStructure) -> Self {
        Self::new(base, BTreeMap::new(), BTreeMap::new())
    }

    pub fn base(&self) -> &FinStructure {
        &self.base
    }

    pub fn constants(&self) -> &BTreeMap<String, usize> {
        &self.constants
    }

    pub fn functions(&self) -> &BTreeMap<String, Vec<Vec<usize>>> {
        &self.functions
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.base.validate();
        report
            .violations
            .retain(|v| !matches!(v, Violation::NotRelational { .. }));
        let size = self.base.size();
        let pre = self
            .base
            .signature()
            .pre_relational()
            .cloned()
            .unwrap_or_default();

        for c in &pre.constants {
            match self.constants.get(c) {
                None => report.violations.push(Violation::Constant {
                    symbol: c.clone(),
                    detail: "no value".into(),
                }),
                Some(&v) if v >= size => report.violations.push(Violation::Constant {
                    symbol: c.clone(),
                    detail: format!("value {v} outside universe of size {size}"),
                }),
                Some(_) => {}
            }
        }
        for c in self.constants.keys() {
            if !pre.constants.contains(c) {
                report.violations.push(Violation::UndeclaredSymbol { symbol: c.clone() });
            }
        }
        for (f, &arity) in &pre.functions {
            let Some(rows) = self.functions.get(f) else {
                report.violations.push(Violation::Function {
                    symbol: f.clone(),
                    detail: "no table".into(),
                });
                continue;
            };
            let mut seen: BTreeMap<&[usize], usize> = BTreeMap::new();
            for row in rows {
                if row.len() != arity + 1 {
                    report.violations.push(Violation::Function {
                        symbol: f.clone(),
                        detail: format!("row {row:?} does not have {} entries", arity + 1),
                    });
                    continue;
                }
                if row.iter().any(|&x| x >= size) {
                    report.violations.push(Violation::Function {
                        symbol: f.clone(),
                        detail: format!("row {row:?} leaves the universe"),
                    });
                    continue;
                }
                let (args, value) = row.split_at(arity);
                if let Some(&prev) = seen.get(args) {
                    if prev != value[0] {
                        report.violations.push(Violation::Function {
                            symbol: f.clone(),
                            detail: format!("arguments {args:?} have values {prev} and {}", value[0]),
                        });
                    }
                } else {
                    seen.insert(args, value[0]);
                }
            }
            let expected = size.checked_pow(arity as u32).unwrap_or(usize::MAX);
            if seen.len() != expected {
                report.violations.push(Violation::Function {
                    symbol: f.clone(),
                    detail: format!("table covers {} of {expected} argument tuples", seen.len()),
                });
            }
        }
        for f in self.functions.keys() {
            if !pre.functions.contains_key(f) {
                report.violations.push(Violation::UndeclaredSymbol { symbol: f.clone() });
            }
        }
        report
    }
}

/// Name of the relation replacing constant or function `name`.
pub fn relational_name(name: &str) -> String {
    format!("R_{name}")
}

/// Replaces each constant `c` by the unary relation `R_c = {c}` and each
/// `m`-ary function `f` by the `(m + 1)`-ary relation `R_f`, its graph.
/// Relation symbols and the universe are left unchanged.
pub fn relationalize(p: &PartialStructure) -> Result<FinStructure> {
    p.validate().into_result()?;
    let sig = p.base.signature();
    let Some(pre) = sig.pre_relational() else {
        return Ok(p.base.clone());
    };

    let mut symbols: Vec<(String, usize)> = sig.relations().map(|(n, a)| (n.to_string(), a)).collect();
    let mut interp: BTreeMap<String, Relation> = p
        .base
        .relations()
        .map(|(n, r)| (n.to_string(), r.clone()))
        .collect();
    let mut taken: BTreeSet<String> = symbols.iter().map(|(n, _)| n.clone()).collect();
    let mut claim = |name: String| -> Result<String> {
        if !taken.insert(name.clone()) {
            return Err(Error::Signature(format!(
                "relationalized symbol `{name}` collides with an existing one"
            )));
        }
        Ok(name)
    };

    for c in &pre.constants {
        let name = claim(relational_name(c))?;
        interp.insert(
            name.clone(),
            Relation::from_tuples(1, [[p.constants[c]]]).expect("unary tuple"),
        );
        symbols.push((name, 1));
    }
    for (f, &arity) in &pre.functions {
        let name = claim(relational_name(f))?;
        let rel = Relation::from_tuples(arity + 1, &p.functions[f]).expect("validated rows");
        interp.insert(name.clone(), rel);
        symbols.push((name, arity + 1));
    }
    let new_sig = Signature::new(symbols, sig.distinguished())?;
    FinStructure::new(new_sig, p.base.size(), interp)
}
