use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Constant and function symbols that have not been relationalized yet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreRelational {
    pub constants: BTreeSet<String>,
    /// Function name to number of arguments.
    pub functions: BTreeMap<String, usize>,
}

impl PreRelational {
    pub fn is_empty(&self) -> bool {
        self.constants.is_empty() && self.functions.is_empty()
    }
}

/// A finite relational signature with a distinguished binary symbol.
///
/// Relation symbols are kept sorted by name, which makes signatures compare
/// equal regardless of the order in which their symbols were declared.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    relations: BTreeMap<String, usize>,
    distinguished: String,
    pre_relational: Option<PreRelational>,
}

impl Signature {
    pub fn new<I, S>(relations: I, distinguished: &str) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (name, arity) in relations {
            let name = name.into();
            if name.is_empty() {
                return Err(Error::Signature("empty symbol name".into()));
            }
            if arity == 0 {
                return Err(Error::Signature(format!("symbol `{name}` has arity 0")));
            }
            if map.insert(name.clone(), arity).is_some() {
                return Err(Error::Signature(format!("duplicate symbol `{name}`")));
            }
        }
        match map.get(distinguished) {
            Some(2) => {}
            Some(&arity) => {
                return Err(Error::Signature(format!(
                    "distinguished symbol `{distinguished}` has arity {arity}, expected 2"
                )))
            }
            None => {
                return Err(Error::Signature(format!(
                    "distinguished symbol `{distinguished}` is not declared"
                )))
            }
        }
        Ok(Signature {
            relations: map,
            distinguished: distinguished.to_string(),
            pre_relational: None,
        })
    }

    /// The one-symbol signature `{R}`.
    pub fn binary(name: &str) -> Self {
        Signature::new([(name, 2)], name).expect("a single binary symbol is a valid signature")
    }

    pub fn with_pre_relational(mut self, pre: PreRelational) -> Result<Self> {
        for name in pre.constants.iter().chain(pre.functions.keys()) {
            if self.relations.contains_key(name) {
                return Err(Error::Signature(format!(
                    "`{name}` is declared both as a relation and as a constant or function"
                )));
            }
        }
        if pre.constants.iter().any(|c| pre.functions.contains_key(c)) {
            return Err(Error::Signature(
                "a name is declared both as a constant and as a function".into(),
            ));
        }
        self.pre_relational = if pre.is_empty() { None } else { Some(pre) };
        Ok(self)
    }

    pub fn distinguished(&self) -> &str {
        &self.distinguished
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.relations.contains_key(name)
    }

    /// Relation symbols with their arities, sorted by name.
    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> + '_ {
        self.relations.iter().map(|(n, &a)| (n.as_str(), a))
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn pre_relational(&self) -> Option<&PreRelational> {
        self.pre_relational.as_ref()
    }

    pub fn is_relational(&self) -> bool {
        self.pre_relational.is_none()
    }

    /// Adds a relation symbol; fails if the name is already taken.
    pub fn with_relation(&self, name: &str, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Signature(format!("symbol `{name}` has arity 0")));
        }
        if let Some(&existing) = self.relations.get(name) {
            return Err(Error::SymbolCollision {
                name: name.to_string(),
                left: existing,
                right: arity,
            });
        }
        let mut out = self.clone();
        out.relations.insert(name.to_string(), arity);
        Ok(out)
    }

    /// Same symbols with a different distinguished one.
    pub fn with_distinguished(&self, name: &str) -> Result<Self> {
        match self.arity(name) {
            Some(2) => {
                let mut out = self.clone();
                out.distinguished = name.to_string();
                Ok(out)
            }
            Some(arity) => Err(Error::NotBinary {
                name: name.to_string(),
                arity,
            }),
            None => Err(Error::UnknownSymbol(name.to_string())),
        }
    }

    /// Keeps only the listed symbols. The distinguished symbol is always kept.
    pub fn restrict(&self, keep: &[&str]) -> Self {
        let mut out = self.clone();
        out.relations
            .retain(|name, _| name == &self.distinguished || keep.contains(&name.as_str()));
        out
    }

    /// First name of the form `base`, `base#2`, `base#3`, ... not used by any
    /// of the given signatures.
    pub fn fresh_name(base: &str, taken: &[&Signature]) -> String {
        let used = |n: &str| taken.iter().any(|s| s.contains(n));
        if !used(base) {
            return base.to_string();
        }
        (2..)
            .map(|k| format!("{base}#{k}"))
            .find(|n| !used(n))
            .expect("unbounded suffix search")
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (name, arity)) in self.relations().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if name == self.distinguished {
                write!(f, "*")?;
            }
            write!(f, "{name}/{arity}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_distinguished() {
        assert!(Signature::new([("R", 2), ("R", 2)], "R").is_err());
        assert!(Signature::new([("R", 2)], "S").is_err());
        assert!(Signature::new([("R", 3)], "R").is_err());
        assert!(Signature::new([("R", 2), ("P", 0)], "R").is_err());
    }

    #[test]
    fn order_of_declaration_is_irrelevant() {
        let a = Signature::new([("R", 2), ("<=", 2)], "R").unwrap();
        let b = Signature::new([("<=", 2), ("R", 2)], "R").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fresh_names_skip_taken_ones() {
        let a = Signature::new([("R", 2), ("P_1", 1)], "R").unwrap();
        let b = Signature::new([("R", 2), ("P_1#2", 1)], "R").unwrap();
        assert_eq!(Signature::fresh_name("P_2", &[&a, &b]), "P_2");
        assert_eq!(Signature::fresh_name("P_1", &[&a, &b]), "P_1#3");
    }
}
