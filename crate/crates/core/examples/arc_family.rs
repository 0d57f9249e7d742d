//! The chain family: doubling levels, halving bonds and explicit amalgams.

use std::sync::Arc;

use fraisse::epi::{compose, Morphism};
use fraisse::families::{arc_amalgamate, arc_bond, arc_level, chain};
use fraisse::family::FundamentalSequence;
use fraisse::families::ArcSequence;

fn main() -> fraisse::Result<()> {
    for n in 0..=3 {
        println!("level {n}: {} points, bond to it {:?}", arc_level(n).size(), arc_bond(n).map());
    }
    println!("pi_0^3 = {:?}", ArcSequence.composed_bond(0, 3)?.map());

    let (c3, c2) = (Arc::new(chain(3)), Arc::new(chain(2)));
    let phi = Morphism::new(c3.clone(), c2.clone(), vec![0, 0, 1])?;
    let psi = Morphism::new(c3, c2, vec![0, 1, 1])?;
    let a = arc_amalgamate(&phi, &psi)?;
    println!(
        "amalgam Chain({}) with theta {:?}, rho {:?}; both sides give {:?}",
        a.apex.size(),
        a.left.map(),
        a.right.map(),
        compose(&a.left, &phi)?.map()
    );
    Ok(())
}
