use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use fraisse::acceptance::oracle::{cycle_graph, isomorphic, path_graph, subdivision, SimpleGraph};
use fraisse::constructions::{
    decompose_oplus_epi, factorize_product_epi, graph_family, identify, oplus, oplus_epi, oplus_family, otimes,
    otimes_epi, otimes_family, Anchor, AnchorPoint, GlueSpec, Graph,
};
use fraisse::epi::{count_epimorphisms, enumerate_epimorphisms, is_epimorphism, Morphism};
use fraisse::families::{chain, ArcSequence, ORDER};
use fraisse::family::{ConstantSequence, FundamentalSequence};
use fraisse::limits::{quotient_coherence, quotient_graph, QuotientGraph};
use fraisse::structure::{FinStructure, Relation, Signature};
use fraisse::Error;

fn c(k: usize) -> Arc<FinStructure> {
    Arc::new(chain(k))
}

fn arc() -> Arc<dyn FundamentalSequence> {
    Arc::new(ArcSequence)
}

fn simple(g: &QuotientGraph) -> SimpleGraph {
    SimpleGraph::new(g.vertices, g.edges.iter().copied())
}

fn least() -> AnchorPoint {
    AnchorPoint::Least { rel: ORDER.into() }
}

fn greatest() -> AnchorPoint {
    AnchorPoint::Greatest { rel: ORDER.into() }
}

fn glued_arcs(identify_pairs: Vec<(usize, usize)>) -> fraisse::constructions::GluedSequence {
    let anchors = vec![
        Anchor { component: 0, point: greatest() },
        Anchor { component: 1, point: least() },
    ];
    identify(GlueSpec::new(vec![arc(), arc()], anchors, identify_pairs)).unwrap()
}

#[test]
fn sum_layout_and_markers() {
    let s = oplus(&c(2), &c(3)).unwrap();
    assert_eq!(s.structure.size(), 5);
    assert_eq!(s.offset(), 2);
    assert_eq!((s.block_of(1), s.block_of(2)), (0, 1));
    assert_eq!(s.markers, ("P_1".to_string(), "P_2".to_string()));
    let p1: Vec<usize> = s.structure.relation("P_1").unwrap().iter().map(|t| t[0]).collect();
    assert_eq!(p1, vec![0, 1]);
    assert!(s.structure.distinguished().contains(&[3, 4]));
    assert!(!s.structure.distinguished().contains(&[1, 2]));
    let nested = oplus(&s.structure, &c(1)).unwrap();
    assert_eq!(nested.markers.0, "P_1#2");
}

#[test]
fn sum_rejects_arity_collisions() {
    let sig = Signature::new([("R", 2), ("<=", 1)], "R").unwrap();
    let mut interp = BTreeMap::new();
    interp.insert("R".to_string(), Relation::from_tuples(2, [[0, 0]]).unwrap());
    interp.insert("<=".to_string(), Relation::empty(1));
    let odd = Arc::new(FinStructure::from_parts(sig, 1, interp));
    assert!(matches!(oplus(&c(1), &odd), Err(Error::SymbolCollision { .. })));
}

#[test]
fn sum_counts_are_multiplicative() {
    for sizes in (1..=3).flat_map(|a| (1..=3).map(move |b| (a, b))) {
        for targets in (1..=sizes.0).flat_map(|a| (1..=sizes.1).map(move |b| (a, b))) {
            let src = oplus(&c(sizes.0), &c(sizes.1)).unwrap();
            let dst = oplus(&c(targets.0), &c(targets.1)).unwrap();
            let all = enumerate_epimorphisms(&src.structure, &dst.structure).unwrap();
            let expected = count_epimorphisms(&chain(sizes.0), &chain(targets.0)).unwrap()
                * count_epimorphisms(&chain(sizes.1), &chain(targets.1)).unwrap();
            assert_eq!(all.len(), expected, "{sizes:?} -> {targets:?}");
            for f in &all {
                let (f1, f2) = decompose_oplus_epi(&src, &dst, f).unwrap();
                assert_eq!(&oplus_epi(&f1, &f2).unwrap(), f);
            }
        }
    }
}

#[test]
fn cross_block_maps_are_rejected() {
    let src = oplus(&c(1), &c(1)).unwrap();
    let f = Morphism::new(src.structure.clone(), src.structure.clone(), vec![1, 0]).unwrap();
    assert!(matches!(
        decompose_oplus_epi(&src, &src, &f),
        Err(Error::CrossBlock { element: 0, block: 1, image: 1 })
    ));
}

#[test]
fn product_layout() {
    let p = otimes(&c(2), &c(3)).unwrap();
    assert_eq!(p.structure.size(), 6);
    assert_eq!(p.index(1, 2), 5);
    assert_eq!(p.coords(4), (1, 1));
    assert_eq!(p.markers, ("r_1".to_string(), "r_2".to_string()));
    let r = p.structure.distinguished();
    assert!(r.contains(&[p.index(0, 0), p.index(1, 1)]));
    assert!(!r.contains(&[p.index(0, 0), p.index(0, 2)]));
    let r1 = p.structure.relation("r_1").unwrap();
    assert!(r1.contains(&[p.index(0, 0), p.index(0, 2)]));
    assert!(!r1.contains(&[p.index(0, 0), p.index(1, 0)]));
}

#[test]
fn product_counts_are_multiplicative() {
    for (a, b) in (1..=3).flat_map(|a| (1..=3).map(move |b| (a, b))) {
        for (x, y) in (1..=a).flat_map(|x| (1..=b).map(move |y| (x, y))) {
            let src = otimes(&c(a), &c(b)).unwrap();
            let dst = otimes(&c(x), &c(y)).unwrap();
            let all = enumerate_epimorphisms(&src.structure, &dst.structure).unwrap();
            let expected = count_epimorphisms(&chain(a), &chain(x)).unwrap()
                * count_epimorphisms(&chain(b), &chain(y)).unwrap();
            assert_eq!(all.len(), expected);
            for f in &all {
                let (psi, theta) = factorize_product_epi(&src, &dst, f).unwrap();
                assert!(is_epimorphism(&psi) && is_epimorphism(&theta));
                assert_eq!(&otimes_epi(&psi, &theta).unwrap(), f);
            }
        }
    }
}

#[test]
fn non_rectangular_maps_are_rejected() {
    let src = otimes(&c(2), &c(2)).unwrap();
    let dst = otimes(&c(2), &c(2)).unwrap();
    // Transpose the square.
    let map = (0..4).map(|x| { let (a, b) = src.coords(x); dst.index(b, a) }).collect();
    let f = Morphism::new(src.structure.clone(), dst.structure.clone(), map).unwrap();
    assert!(matches!(factorize_product_epi(&src, &dst, &f), Err(Error::NotRectangular { .. })));
}

fn king_lattice(k: usize, dims: usize) -> SimpleGraph {
    let cells = k.pow(dims as u32);
    let coords = |x: usize| (0..dims).map(|d| (x / k.pow(d as u32)) % k).collect::<Vec<_>>();
    let mut edges = Vec::new();
    for x in 0..cells {
        for y in x + 1..cells {
            if coords(x).iter().zip(coords(y)).all(|(&a, b)| a.abs_diff(b) <= 1) {
                edges.push((x, y));
            }
        }
    }
    SimpleGraph::new(cells, edges)
}

#[test]
fn triple_product_of_arcs_is_a_king_lattice() {
    let cube = otimes_family(Arc::new(otimes_family(arc(), arc())), arc());
    let g = quotient_graph(&cube, 1).unwrap();
    assert_eq!(g.vertices, 27);
    assert!(isomorphic(&simple(&g), &king_lattice(3, 3)));
    for n in 0..=2 {
        assert!(is_epimorphism(&cube.bond(n).unwrap()));
    }
}

#[test]
fn sums_of_arcs_are_disjoint_paths() {
    let two = oplus_family(arc(), arc());
    for n in 0..=3 {
        let k = (1 << n) + 1;
        let g = quotient_graph(&two, n).unwrap();
        let expected = SimpleGraph::new(2 * k, (1..k).flat_map(|i| [(i - 1, i), (k + i - 1, k + i)]));
        assert!(isomorphic(&simple(&g), &expected));
    }
    let with_point = oplus_family(arc(), Arc::new(ConstantSequence::new(chain(1))));
    let g = quotient_graph(&with_point, 2).unwrap();
    assert_eq!(g.vertices, 6);
    assert!(isomorphic(&simple(&g), &SimpleGraph::new(6, (1..5).map(|i| (i - 1, i)))));
}

#[test]
fn gluing_two_arcs_end_to_start_gives_a_path() {
    let seq = glued_arcs(vec![(0, 1)]);
    assert_eq!(seq.symbol(), "S");
    for n in 0..=4 {
        let k = (1 << n) + 1;
        let g = quotient_graph(&seq, n).unwrap();
        assert!(isomorphic(&simple(&g), &path_graph(2 * k - 1)), "level {n}");
        assert_eq!(seq.anchor_elements(n).unwrap(), vec![k - 1, k]);
    }
    assert!(quotient_coherence(&seq, 0, 4).unwrap());
}

#[test]
fn without_identification_nothing_is_contracted() {
    let seq = glued_arcs(vec![]);
    let g = quotient_graph(&seq, 1).unwrap();
    assert_eq!(g.vertices, 6);
    assert_eq!(g.edges.len(), 4);
}

#[test]
fn bonds_carry_s_onto_s() {
    let seq = glued_arcs(vec![(0, 1)]);
    for n in 0..5 {
        let bond = seq.bond(n).unwrap();
        let upper = seq.level(n + 1).unwrap();
        let lower = seq.level(n).unwrap();
        let image: BTreeSet<Vec<usize>> = upper
            .distinguished()
            .iter()
            .map(|t| t.iter().map(|&x| bond.apply(x)).collect())
            .collect();
        let lower: BTreeSet<Vec<usize>> = lower.distinguished().iter().map(|t| t.to_vec()).collect();
        assert_eq!(image, lower, "bond {n}");
    }
}

#[test]
fn epimorphisms_between_glued_levels_keep_glued_anchors_related() {
    let seq = glued_arcs(vec![(0, 1)]);
    let (upper, lower) = (seq.level(1).unwrap(), seq.level(0).unwrap());
    let (a_up, a_low) = (seq.anchor_elements(1).unwrap(), seq.anchor_elements(0).unwrap());
    let epis = enumerate_epimorphisms(&upper, &lower).unwrap();
    assert!(epis.iter().any(|f| f.map() == seq.bond(0).unwrap().map()));
    let s = lower.distinguished();
    for f in &epis {
        assert!(s.contains(&[f.apply(a_up[0]), f.apply(a_up[1])]));
    }
    assert!(s.contains(&[a_low[0], a_low[1]]));
}

#[test]
fn incompatible_anchor_is_reported() {
    let anchors = vec![Anchor { component: 0, point: AnchorPoint::Fixed(1) }];
    let err = identify(GlueSpec::new(vec![arc()], anchors, vec![])).err().unwrap();
    assert!(matches!(err, Error::AnchorIncompatible { anchor: 0, level: 1, element: 1, image: 0, expected: 1 }));
}

#[test]
fn glue_spec_errors() {
    assert!(matches!(identify(GlueSpec::new(vec![], vec![], vec![])), Err(Error::Glue(_))));
    let anchors = vec![Anchor { component: 3, point: least() }];
    assert!(matches!(identify(GlueSpec::new(vec![arc()], anchors, vec![])), Err(Error::Glue(_))));
    let anchors = vec![Anchor { component: 0, point: least() }];
    assert!(matches!(identify(GlueSpec::new(vec![arc()], anchors, vec![(0, 4)])), Err(Error::Glue(_))));
}

fn check_subdivisions(vertices: usize, edges: &[(usize, usize)], max_level: usize) {
    let g = Graph::new(vertices, edges.iter().map(|&(a, b)| [a, b]).collect()).unwrap();
    let seq = graph_family(&g).unwrap();
    for n in 0..=max_level {
        let q = quotient_graph(&seq, n).unwrap();
        assert!(
            isomorphic(&simple(&q), &subdivision(vertices, edges, 1 << n)),
            "{edges:?} at level {n}"
        );
    }
}

#[test]
fn graph_family_subdivides() {
    check_subdivisions(2, &[(0, 1)], 4);
    check_subdivisions(4, &[(0, 1), (1, 2), (2, 3)], 4);
    check_subdivisions(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 4);
    check_subdivisions(3, &[(0, 1), (1, 2), (2, 0)], 4);
    let k4: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
    check_subdivisions(4, &k4, 3);
    check_subdivisions(2, &[(0, 1), (0, 1), (0, 1)], 4);
}

#[test]
fn theta_graph_at_level_one() {
    let g = Graph::new(2, vec![[0, 1], [0, 1], [0, 1]]).unwrap();
    let q = quotient_graph(&graph_family(&g).unwrap(), 1).unwrap();
    assert_eq!(q.vertices, 5);
    assert_eq!(q.edges.len(), 6);
    let mut degrees: Vec<usize> = (0..q.vertices).map(|v| q.degree(v)).collect();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![2, 2, 2, 3, 3]);
}

#[test]
fn square_quotient_is_a_cycle() {
    let g = Graph::new(4, vec![[0, 1], [1, 2], [2, 3], [3, 0]]).unwrap();
    let q = quotient_graph(&graph_family(&g).unwrap(), 2).unwrap();
    assert!(isomorphic(&simple(&q), &cycle_graph(16)));
}

#[test]
fn isolated_vertices_survive() {
    let g = Graph::new(3, vec![[0, 1]]).unwrap();
    let q = quotient_graph(&graph_family(&g).unwrap(), 1).unwrap();
    assert_eq!(q.vertices, 4);
    assert_eq!(q.edges.len(), 2);
}

#[test]
fn graph_input_errors() {
    assert!(Graph::new(2, vec![]).is_err());
    assert!(Graph::new(2, vec![[0, 2]]).is_err());
}
