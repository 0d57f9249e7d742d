//! Level certificates, quotient graphs and their coherence along bonds.

use fraisse::families::{ArcSequence, CantorSequence};
use fraisse::limits::{certify, coherence_failure, export_graph, quotient_graph, Certification, Format, Property};

fn main() -> fraisse::Result<()> {
    for (rel, p) in [("R", Property::Symmetric), ("<=", Property::Total), ("R", Property::Transitive)] {
        match certify(&ArcSequence, rel, p, 6)? {
            Certification::Certified(c) => println!("{rel} {}: certified to depth {} ({})", p.as_str(), c.depth, c.citation),
            Certification::Refuted(r) => println!("{rel} {}: fails at level {}", p.as_str(), r.level),
        }
    }

    let cantor = CantorSequence::dyadic(4);
    print!("{}", export_graph(&quotient_graph(&cantor, 2)?, Format::Json));
    print!("{}", export_graph(&quotient_graph(&ArcSequence, 1)?, Format::Dot));
    for m in 0..=4 {
        println!("arc bond 0 <- {m}: {:?}", coherence_failure(&ArcSequence, 0, m)?);
    }
    Ok(())
}
