use std::sync::Arc;

use fraisse::acceptance::oracle::dyadic_pairs;
use fraisse::epi::{compose, is_epimorphism, Morphism};
use fraisse::families::{
    arc_amalgamate, arc_bond, arc_level, cantor_bond, cantor_level, chain, chain_family_enumerator, rho_name,
    singleton_family, word, ArcSequence, CantorSequence, HookGlue,
};
use fraisse::family::{FamilyEnumerator, FundamentalSequence};
use fraisse::Error;

fn c(k: usize) -> Arc<fraisse::structure::FinStructure> {
    Arc::new(chain(k))
}

#[test]
fn arc_levels_and_bonds() {
    assert_eq!(arc_level(0), chain(2));
    assert_eq!(arc_level(3).size(), 9);
    assert_eq!(arc_bond(1).map(), &[0, 0, 1, 1, 2]);
    assert_eq!(ArcSequence.composed_bond(0, 2).unwrap().map(), &[0, 0, 0, 0, 1]);
    for n in 0..=8 {
        assert!(is_epimorphism(&arc_bond(n)));
    }
}

#[test]
fn chain_enumerator_prefix() {
    assert_eq!(chain_family_enumerator().members_up_to(3), vec![chain(1), chain(2), chain(3)]);
    let point = singleton_family().member(0).unwrap();
    assert!(point.validate().is_valid());
    assert_eq!(point, chain(1));
}

#[test]
fn amalgamation_examples() {
    let a = arc_amalgamate(
        &Morphism::new(c(2), c(1), vec![0, 0]).unwrap(),
        &Morphism::new(c(3), c(1), vec![0, 0, 0]).unwrap(),
    )
    .unwrap();
    assert_eq!(a.apex.size(), 3);
    assert_eq!(a.left.map(), &[0, 1, 1]);
    assert_eq!(a.right.map(), &[0, 1, 2]);

    let phi = Morphism::new(c(3), c(2), vec![0, 0, 1]).unwrap();
    let psi = Morphism::new(c(3), c(2), vec![0, 1, 1]).unwrap();
    let a = arc_amalgamate(&phi, &psi).unwrap();
    assert_eq!(a.apex.size(), 4);
    assert_eq!(a.left.map(), &[0, 1, 2, 2]);
    assert_eq!(a.right.map(), &[0, 0, 1, 2]);
    let l = compose(&a.left, &phi).unwrap();
    let r = compose(&a.right, &psi).unwrap();
    assert_eq!(l.map(), &[0, 0, 1, 1]);
    assert_eq!(l.map(), r.map());

    let id = Morphism::identity(c(2));
    let a = arc_amalgamate(&id, &id).unwrap();
    assert_eq!(a.apex.size(), 2);
    assert_eq!(a.left, id);
}

#[test]
fn amalgamation_rejects_non_epimorphisms() {
    let bad = Morphism::new(c(3), c(2), vec![0, 1, 0]).unwrap();
    let good = Morphism::new(c(3), c(2), vec![0, 0, 1]).unwrap();
    assert!(matches!(arc_amalgamate(&bad, &good), Err(Error::NotEpimorphism(_))));
}

#[test]
fn cantor_small_levels() {
    let seq = CantorSequence::dyadic(3);
    let d1 = cantor_level(&seq, 1).unwrap();
    let r1: Vec<Vec<usize>> = d1.distinguished().iter().map(|t| t.to_vec()).collect();
    assert_eq!(r1, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);

    let d2 = cantor_level(&seq, 2).unwrap();
    let off: Vec<(usize, usize)> = d2
        .distinguished()
        .iter()
        .map(|t| (t[0], t[1]))
        .filter(|(a, b)| a < b)
        .collect();
    assert_eq!(off, vec![(0, 1), (1, 2), (2, 3)]);
    let rho0: Vec<usize> = d2.relation(&rho_name("0")).unwrap().iter().map(|t| t[0]).collect();
    assert_eq!(rho0, vec![0, 1]);
    assert_eq!(word(2, 1), "01");
    assert!(d2.relation(&rho_name("")).unwrap().len() == 4);
}

#[test]
fn cantor_relation_matches_brute_force() {
    let seq = CantorSequence::dyadic(5);
    for n in 0..=5 {
        let level = cantor_level(&seq, n).unwrap();
        let pairs: std::collections::BTreeSet<_> = level.distinguished().iter().map(|t| (t[0], t[1])).collect();
        assert_eq!(pairs, dyadic_pairs(n), "level {n}");
    }
}

#[test]
fn cantor_bonds_are_restrictions() {
    let seq = CantorSequence::dyadic(8);
    for n in 0..8 {
        let bond = cantor_bond(&seq, n).unwrap();
        assert!(is_epimorphism(&bond), "bond {n}");
        for w in 0..1usize << (n + 1) {
            assert_eq!(word(n, bond.apply(w)), word(n + 1, w)[..n]);
        }
    }
}

#[test]
fn cantor_beyond_truncation() {
    let seq = CantorSequence::dyadic(2);
    assert!(matches!(cantor_level(&seq, 3), Err(Error::BeyondDepth { level: 3, depth: 2 })));
}

#[test]
fn hook_glue() {
    // The discrete equivalence: only the diagonal.
    let discrete = CantorSequence::new(Arc::new(HookGlue::new("discrete", |_, u, v| u == v)), 3);
    discrete.verify_glue(3).unwrap();
    let d2 = discrete.level(2).unwrap();
    assert_eq!(d2.distinguished().len(), 4);
    assert!(is_epimorphism(&discrete.bond(1).unwrap()));

    let asymmetric = CantorSequence::new(Arc::new(HookGlue::new("lopsided", |_, u, v| u <= v)), 2);
    assert!(matches!(asymmetric.verify_glue(2), Err(Error::Glue(_))));
}
