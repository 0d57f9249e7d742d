//! Enumerate, count and compare epimorphisms between small structures.

use std::sync::Arc;

use fraisse::epi::{
    compose, count_epimorphisms, enumerate_automorphisms, enumerate_epimorphisms,
    enumerate_epimorphisms_modulo_automorphisms, refines, unique_epimorphism, Morphism,
};
use fraisse::families::{chain, path};

fn main() -> fraisse::Result<()> {
    let (c4, c3, c2) = (Arc::new(chain(4)), Arc::new(chain(3)), Arc::new(chain(2)));
    for f in enumerate_epimorphisms(&c4, &c2)? {
        println!("Chain(4) -> Chain(2): {:?}", f.map());
    }
    for m in 1..=6 {
        let row: Vec<usize> = (1..=m)
            .map(|n| count_epimorphisms(&chain(m), &chain(n)))
            .collect::<fraisse::Result<_>>()?;
        println!("counts from Chain({m}): {row:?}");
    }

    let g = compose(&Morphism::new(c4.clone(), c3.clone(), vec![0, 1, 2, 2])?, &Morphism::new(c3, c2.clone(), vec![0, 0, 1])?)?;
    println!("composite {:?}", g.map());
    println!("refines [[0,1],[2,3]]: {}", refines(&g, &[vec![0, 1], vec![2, 3]])?);
    println!("uniqueness Chain(4) -> Chain(2): {:?}", unique_epimorphism(&c4, &c2)?);

    // Without the order, a path has a flip.
    let (p4, p2) = (Arc::new(path(4)), Arc::new(path(2)));
    println!("automorphisms of path(2): {}", enumerate_automorphisms(&p2).len());
    println!(
        "path(4) -> path(2): {} maps, {} up to automorphism",
        enumerate_epimorphisms(&p4, &p2)?.len(),
        enumerate_epimorphisms_modulo_automorphisms(&p4, &p2)?.len()
    );
    Ok(())
}
