//! Build a structure, validate it, round-trip it through JSON, and turn a
//! function symbol into a relation.

use std::collections::BTreeMap;

use fraisse::families::chain;
use fraisse::structure::io::{to_json, StructureFile};
use fraisse::structure::{relationalize, FinStructure, PartialStructure, PreRelational, Relation, Signature};

fn main() -> fraisse::Result<()> {
    let c3 = chain(3);
    println!("{}", to_json(&StructureFile::from_structure(&c3))?);
    println!("chain(3) valid: {}", c3.validate().is_valid());

    // A tuple outside the universe.
    let sig = Signature::new([("R", 2)], "R")?;
    let mut interp = BTreeMap::new();
    interp.insert("R".to_string(), Relation::from_tuples(2, [[0, 5]]).expect("binary tuples"));
    let broken = FinStructure::from_parts(sig, 2, interp);
    for v in &broken.validate().violations {
        println!("violation: {v:?}");
    }

    // Successor on two points, as a unary function.
    let pre = PreRelational {
        constants: Default::default(),
        functions: [("succ".to_string(), 1)].into(),
    };
    let sig = Signature::binary("R").with_pre_relational(pre)?;
    let mut interp = BTreeMap::new();
    interp.insert("R".to_string(), Relation::from_tuples(2, [[0, 0], [1, 1]]).expect("binary tuples"));
    let base = FinStructure::from_parts(sig, 2, interp);
    let partial = PartialStructure::new(
        base,
        BTreeMap::new(),
        [("succ".to_string(), vec![vec![0, 1], vec![1, 1]])].into(),
    );
    let rel = relationalize(&partial)?;
    println!("{}", to_json(&StructureFile::from_structure(&rel))?);
    Ok(())
}
