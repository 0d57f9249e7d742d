//! Identifying anchor points of arcs: a longer arc, a circle, and the
//! subdivisions of a finite graph.

use std::sync::Arc;

use fraisse::constructions::{graph_family, identify, Anchor, AnchorPoint, GlueSpec, Graph};
use fraisse::families::{ArcSequence, ORDER};
use fraisse::family::FundamentalSequence;
use fraisse::limits::{export_graph, quotient_graph, Format};

fn main() -> fraisse::Result<()> {
    let arc = || -> Arc<dyn FundamentalSequence> { Arc::new(ArcSequence) };
    let least = AnchorPoint::Least { rel: ORDER.into() };
    let greatest = AnchorPoint::Greatest { rel: ORDER.into() };

    // End of the first arc to the start of the second.
    let anchors = vec![
        Anchor { component: 0, point: greatest.clone() },
        Anchor { component: 1, point: least.clone() },
    ];
    let long = identify(GlueSpec::new(vec![arc(), arc()], anchors, vec![(0, 1)]))?;
    println!("two arcs, level 1:\n{}", export_graph(&quotient_graph(&long, 1)?, Format::Dot));

    let anchors = vec![Anchor { component: 0, point: least }, Anchor { component: 0, point: greatest }];
    let circle = identify(GlueSpec::new(vec![arc()], anchors, vec![(0, 1)]))?;
    let g = quotient_graph(&circle, 2)?;
    println!("circle, level 2: {} vertices, {} edges", g.vertices, g.edges.len());

    let k4 = Graph::new(4, vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]])?;
    let seq = graph_family(&k4)?;
    for n in 0..=2 {
        let g = quotient_graph(&seq, n)?;
        println!("K4 level {n}: {} vertices, {} edges", g.vertices, g.edges.len());
    }
    Ok(())
}
