//! Sums and products of structures, of epimorphisms and of sequences.

use std::sync::Arc;

use fraisse::constructions::{decompose_oplus_epi, factorize_product_epi, oplus, oplus_family, otimes, otimes_family};
use fraisse::epi::enumerate_epimorphisms;
use fraisse::families::{chain, ArcSequence};
use fraisse::family::FundamentalSequence;
use fraisse::limits::quotient_graph;

fn main() -> fraisse::Result<()> {
    let (c2, c3) = (Arc::new(chain(2)), Arc::new(chain(3)));

    let src = oplus(&c3, &c2)?;
    let dst = oplus(&c2, &c2)?;
    println!("sum markers {:?}, {} points", src.markers, src.structure.size());
    for f in enumerate_epimorphisms(&src.structure, &dst.structure)? {
        let (f1, f2) = decompose_oplus_epi(&src, &dst, &f)?;
        println!("  {:?} = {:?} (+) {:?}", f.map(), f1.map(), f2.map());
    }

    let src = otimes(&c3, &c2)?;
    let dst = otimes(&c2, &c2)?;
    println!("product markers {:?}, {} points", src.markers, src.structure.size());
    for f in enumerate_epimorphisms(&src.structure, &dst.structure)? {
        let (psi, theta) = factorize_product_epi(&src, &dst, &f)?;
        println!("  {:?} = {:?} (x) {:?}", f.map(), psi.map(), theta.map());
    }

    let arc: Arc<dyn FundamentalSequence> = Arc::new(ArcSequence);
    let square = otimes_family(arc.clone(), arc.clone());
    let two = oplus_family(arc.clone(), arc);
    for n in 0..=2 {
        let (q, t) = (quotient_graph(&square, n)?, quotient_graph(&two, n)?);
        println!("level {n}: square {} vertices / {} edges, two arcs {} / {}", q.vertices, q.edges.len(), t.vertices, t.edges.len());
    }
    Ok(())
}
