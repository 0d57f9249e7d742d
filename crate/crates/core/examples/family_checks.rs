//! Bounded checks of the joint projection property, amalgamation, the
//! fundamental-sequence conditions and rigidity.

use fraisse::families::{chain_family_enumerator, ArcSequence, CantorFamily, CantorSequence};
use fraisse::family::{check_ap, check_fundamental_sequence, check_jpp, check_rigidity, FundamentalBounds, PropertyReport};

fn show(report: &PropertyReport) {
    println!(
        "{:<22} {:?} after {} instances, bounds {:?}",
        report.property, report.status, report.checked, report.bounds
    );
    if let Some(w) = report.witnesses.last() {
        println!("    last witness: {}", w.description);
    }
}

fn main() -> fraisse::Result<()> {
    let chains = chain_family_enumerator();
    show(&check_jpp(&chains, 3, 9)?);
    show(&check_ap(&chains, 4, 8)?);

    let cantor = CantorSequence::dyadic(5);
    show(&check_ap(&CantorFamily::new(cantor.clone()), 4, 16)?);
    show(&check_rigidity(&cantor, 4)?);
    show(&check_rigidity(&ArcSequence, 3)?);

    let bounds = |member_bound| FundamentalBounds { depth: 4, member_bound, factor_depth: 5 };
    show(&check_fundamental_sequence(&ArcSequence, &chains, bounds(2))?);
    // Halving bonds never split the top point, so this one fails.
    show(&check_fundamental_sequence(&ArcSequence, &chains, bounds(3))?);
    Ok(())
}
