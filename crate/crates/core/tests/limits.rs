mod common;

use std::sync::Arc;

use fraisse::acceptance::oracle::{isomorphic, king_grid, path_graph, SimpleGraph};
use fraisse::constructions::{oplus_family, otimes_family};
use fraisse::families::{chain, ArcSequence, CantorSequence};
use fraisse::family::{ConstantSequence, ExplicitSequence, FundamentalSequence};
use fraisse::limits::{
    certify, check_level_property, coherence_failure, export_graph, quotient_coherence, quotient_graph,
    Certification, CoherenceFailure, Format, Property,
};
use fraisse::structure::FinStructure;
use fraisse::Error;
use proptest::prelude::*;

fn arc() -> Arc<dyn FundamentalSequence> {
    Arc::new(ArcSequence)
}

#[test]
fn arc_quotients_are_paths() {
    for n in 0..=5 {
        let g = quotient_graph(&ArcSequence, n).unwrap();
        let k = (1 << n) + 1;
        assert_eq!(g.vertices, k);
        assert!((0..k).all(|v| g.degree(v) <= 2));
        assert_eq!((g.degree(0), g.degree(k - 1)), (1, 1));
        assert!(g.loops);
    }
}

#[test]
fn cantor_quotients_are_paths() {
    let seq = CantorSequence::dyadic(5);
    for n in 0..=5 {
        let g = quotient_graph(&seq, n).unwrap();
        let k = 1 << n;
        assert!(isomorphic(&SimpleGraph::new(k, g.edges.iter().copied()), &path_graph(k)));
    }
}

#[test]
fn exports() {
    let g = quotient_graph(&ArcSequence, 1).unwrap();
    assert_eq!(export_graph(&g, Format::Dot), "graph {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n");
    assert_eq!(
        export_graph(&g, Format::Json),
        "{\"level\":1,\"vertices\":[0,1,2],\"loops\":true,\"edges\":[[0,1],[1,2]]}\n"
    );

    let point = quotient_graph(&ConstantSequence::new(chain(1)), 0).unwrap();
    assert_eq!(export_graph(&point, Format::Dot), "graph {\n  0;\n}\n");
    assert_eq!(export_graph(&point, Format::Json), "{\"level\":0,\"vertices\":[0],\"loops\":true,\"edges\":[]}\n");

    let grid = quotient_graph(&otimes_family(arc(), arc()), 1).unwrap();
    assert_eq!(grid.edges.len(), 20);
    assert!(isomorphic(&SimpleGraph::new(9, grid.edges.iter().copied()), &king_grid(3)));
    let dot = export_graph(&grid, Format::Dot);
    assert_eq!(dot.matches(" -- ").count(), 20);
    assert!("svg".parse::<Format>().is_err());
    assert!(matches!("png".parse::<Format>(), Err(Error::UnknownFormat(f)) if f == "png"));
}

#[test]
fn arc_certificates() {
    for (rel, props) in [
        ("R", vec![Property::Reflexive, Property::Symmetric, Property::Connected]),
        (
            "<=",
            vec![Property::Antisymmetric, Property::Transitive, Property::Total, Property::HasFirst, Property::HasLast],
        ),
    ] {
        for p in props {
            match certify(&ArcSequence, rel, p, 6).unwrap() {
                Certification::Certified(c) => {
                    assert_eq!(c.depth, 6);
                    assert!(!c.citation.is_empty());
                }
                other => panic!("{rel} {p:?}: {other:?}"),
            }
        }
    }
    match certify(&ArcSequence, "R", Property::Transitive, 6).unwrap() {
        Certification::Refuted(r) => assert_eq!(r.level, 1),
        other => panic!("{other:?}"),
    }
    assert!(matches!(certify(&ArcSequence, "Q", Property::Total, 1), Err(Error::UnknownSymbol(_))));
}

#[test]
fn certification_json_is_tagged() {
    let c = certify(&ArcSequence, "R", Property::Symmetric, 2).unwrap();
    let v: serde_json::Value = serde_json::to_value(&c).unwrap();
    assert_eq!(v["outcome"], "certified");
    assert_eq!(v["property"], "symmetric");
    let back: Certification = serde_json::from_value(v).unwrap();
    assert_eq!(back, c);
}

#[test]
fn certification_is_monotone_in_depth() {
    let seqs: Vec<Arc<dyn FundamentalSequence>> = vec![
        arc(),
        Arc::new(CantorSequence::dyadic(4)),
        Arc::new(oplus_family(arc(), arc())),
        Arc::new(otimes_family(arc(), arc())),
    ];
    for seq in &seqs {
        let rel = seq.level(0).unwrap().signature().distinguished().to_string();
        for p in Property::ALL {
            let results: Vec<bool> = (0..=4)
                .map(|d| certify(seq.as_ref(), &rel, p, d).unwrap().is_certified())
                .collect();
            // Once refuted, refuted at every greater depth.
            assert!(results.windows(2).all(|w| w[0] || !w[1]), "{} {p:?}: {results:?}", seq.name());
        }
    }
}

#[test]
fn coherence_on_built_in_sequences() {
    let seqs: Vec<Arc<dyn FundamentalSequence>> = vec![
        arc(),
        Arc::new(CantorSequence::dyadic(5)),
        Arc::new(oplus_family(arc(), arc())),
        Arc::new(otimes_family(arc(), arc())),
    ];
    for seq in &seqs {
        for m in 0..=4 {
            for n in 0..=m {
                assert!(quotient_coherence(seq.as_ref(), n, m).unwrap(), "{} {n}..{m}", seq.name());
            }
        }
    }
}

#[test]
fn corrupted_bond_is_incoherent() {
    let seq = ExplicitSequence::truncate(&ArcSequence, 2).unwrap();
    let bad = seq.with_bond(1, vec![0, 2, 1, 1, 2]).unwrap();
    let failure = coherence_failure(&bad, 1, 2).unwrap();
    assert!(matches!(failure, Some(CoherenceFailure::BrokenEdge { .. })), "{failure:?}");
    let collapsed = ExplicitSequence::truncate(&ArcSequence, 1).unwrap().with_bond(0, vec![0, 0, 0]).unwrap();
    assert_eq!(
        coherence_failure(&collapsed, 0, 1).unwrap(),
        Some(CoherenceFailure::MissedVertex { vertex: 1 })
    );
}

proptest! {
    #[test]
    fn loops_flag_is_reflexivity(s in common::structure(4)) {
        let seq = ConstantSequence::new(s.clone());
        let g = quotient_graph(&seq, 0).unwrap();
        prop_assert_eq!(g.loops, check_level_property(&s, "R", Property::Reflexive).unwrap());
        prop_assert_eq!(g.vertices, s.size());
        let back: FinStructure = s;
        let expected: usize = back
            .distinguished()
            .iter()
            .filter(|t| t[0] < t[1] || (t[0] > t[1] && !back.distinguished().contains(&[t[1], t[0]])))
            .count();
        prop_assert_eq!(g.edges.len(), expected);
    }
}
