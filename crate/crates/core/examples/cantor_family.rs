//! Levels of the Cantor-side family under the dyadic identification, and a
//! custom identification given by a closure.

use std::sync::Arc;

use fraisse::families::{cantor_bond, cantor_level, rho_name, word, CantorSequence, HookGlue};
use fraisse::family::{check_rigidity, FundamentalSequence};

fn main() -> fraisse::Result<()> {
    let seq = CantorSequence::dyadic(4);
    for n in 0..=3 {
        let level = cantor_level(&seq, n)?;
        let edges: Vec<String> = level
            .distinguished()
            .iter()
            .filter(|t| t[0] < t[1])
            .map(|t| format!("{}~{}", word(n, t[0]), word(n, t[1])))
            .collect();
        println!("level {n}: {}", edges.join(" "));
    }
    let d2 = cantor_level(&seq, 2)?;
    let rho: Vec<String> = d2.relation(&rho_name("0")).unwrap().iter().map(|t| word(2, t[0])).collect();
    println!("rho[0] at level 2: {rho:?}");
    println!("bond 2 -> 1: {:?}", cantor_bond(&seq, 1)?.map());
    println!("rigid to depth 4: {}", check_rigidity(&seq, 4)?.verified());

    // Glue only words that agree after dropping the first letter.
    let hook = HookGlue::new("first-letter", |n, u, v| n == 0 || u % (1 << (n - 1)) == v % (1 << (n - 1)));
    let custom = CantorSequence::new(Arc::new(hook), 3);
    match custom.verify_glue(3) {
        Ok(()) => println!("custom glue ok, level 2 has {} R-pairs", custom.level(2)?.distinguished().len()),
        Err(e) => println!("custom glue rejected: {e}"),
    }
    Ok(())
}
