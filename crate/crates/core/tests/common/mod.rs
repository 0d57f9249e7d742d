#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use fraisse::structure::{FinStructure, Relation, Signature};
use proptest::prelude::*;

pub fn small_signature() -> Signature {
    Signature::new([("R", 2), ("P", 1)], "R").unwrap()
}

fn relation(size: usize, arity: usize) -> impl Strategy<Value = Relation> {
    let cells = size.pow(arity as u32);
    proptest::collection::vec(any::<bool>(), cells).prop_map(move |bits| {
        let mut data = Vec::new();
        for (c, _) in bits.iter().enumerate().filter(|(_, b)| **b) {
            let mut t = vec![0; arity];
            let mut rest = c;
            for slot in t.iter_mut().rev() {
                *slot = rest % size;
                rest /= size;
            }
            data.extend(t);
        }
        Relation::from_flat(arity, data)
    })
}

/// A random structure over `{R/2, P/1}` with `1..=max` points.
pub fn structure(max: usize) -> impl Strategy<Value = FinStructure> {
    (1..=max).prop_flat_map(|size| {
        (relation(size, 2), relation(size, 1)).prop_map(move |(r, p)| {
            let interp: BTreeMap<String, Relation> = [("R".to_string(), r), ("P".to_string(), p)].into();
            FinStructure::new(small_signature(), size, interp).unwrap()
        })
    })
}

/// A structure together with its image under a random surjection.
pub fn structure_with_image(max: usize) -> impl Strategy<Value = (FinStructure, FinStructure)> {
    structure(max)
        .prop_flat_map(|a| {
            let p = a.size();
            (Just(a), 1..=p)
        })
        .prop_flat_map(|(a, q)| {
            let extra = proptest::collection::vec(0..q, a.size() - q);
            (Just(a), Just(q), extra)
        })
        .prop_flat_map(|(a, q, extra)| {
            let map: Vec<usize> = (0..q).chain(extra).collect();
            (Just(a), Just(q), Just(map).prop_shuffle())
        })
        .prop_map(|(a, q, map)| {
            let interp: BTreeMap<String, Relation> =
                a.relations().map(|(n, r)| (n.to_string(), r.image(&map))).collect();
            let b = FinStructure::new(a.signature().clone(), q, interp).unwrap();
            (a, b)
        })
}

pub fn arc(s: FinStructure) -> Arc<FinStructure> {
    Arc::new(s)
}
