use std::sync::Arc;

use super::report::{PropertyReport, Witness};
use super::{FamilyEnumerator, FundamentalSequence};
use crate::epi::{enumerate_epimorphisms, unique_epimorphism, EpiSearch, Morphism, Uniqueness};
use crate::error::{Error, Result};
use crate::structure::FinStructure;

const BOUNDED_NOTE: &str = "Bounded search: a verified status only covers the listed bounds.";

fn positive(bounds: &[(&str, usize)]) -> Result<()> {
    match bounds.iter().find(|(_, v)| *v == 0) {
        Some((k, _)) => Err(Error::Input(format!("bound `{k}` must be at least 1"))),
        None => Ok(()),
    }
}

/// Members up to `bound`, ordered by size and then structure order.
fn ordered_members(fam: &dyn FamilyEnumerator, bound: usize) -> Vec<Arc<FinStructure>> {
    let mut v = fam.members_up_to(bound);
    v.sort_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
    v.dedup();
    v.into_iter().map(Arc::new).collect()
}

fn morphism(a: &Arc<FinStructure>, b: &Arc<FinStructure>, map: Vec<usize>) -> Morphism {
    Morphism::new(a.clone(), b.clone(), map).expect("search yields valid maps")
}

/// Finds `psi_1: f -> d`, `psi_2: f -> e` with `phi_1 psi_1 = phi_2 psi_2`.
fn complete_square(
    f: &Arc<FinStructure>,
    phi1: &Morphism,
    phi2: &Morphism,
) -> Result<Option<(Morphism, Morphism)>> {
    let (d, e) = (phi1.source(), phi2.source());
    let fibers2 = phi2.fibers();
    let mut found = None;
    let outer = EpiSearch::new(f, d)?;
    outer.for_each(|psi1| {
        let mut inner = EpiSearch::new(f, e).expect("same signature");
        for (x, &y) in psi1.iter().enumerate() {
            inner = inner.restrict(x, &fibers2[phi1.apply(y)]);
        }
        if let Some(psi2) = inner.first() {
            found = Some((psi1.to_vec(), psi2));
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    });
    Ok(found.map(|(a, b)| (morphism(f, d, a), morphism(f, e, b))))
}

/// Joint projection: every pair of members up to `pair_bound` has a common
/// preimage among members up to `search_bound`. Smallest witnesses win.
pub fn check_jpp(
    fam: &dyn FamilyEnumerator,
    pair_bound: usize,
    search_bound: usize,
) -> Result<PropertyReport> {
    let bounds = [("pair_bound", pair_bound), ("search_bound", search_bound)];
    positive(&bounds)?;
    let mut report = PropertyReport::new("jpp", &bounds, BOUNDED_NOTE);
    let members = ordered_members(fam, pair_bound);
    let candidates = ordered_members(fam, search_bound);
    for (i, d) in members.iter().enumerate() {
        for e in &members[i..] {
            report.checked += 1;
            let mut found = None;
            for f in &candidates {
                let Some(to_d) = EpiSearch::new(f, d)?.first() else {
                    continue;
                };
                if let Some(to_e) = EpiSearch::new(f, e)?.first() {
                    found = Some((f, to_d, to_e));
                    break;
                }
            }
            match found {
                Some((f, to_d, to_e)) => {
                    let mut w = Witness::new(format!(
                        "common preimage of sizes {} and {}",
                        d.size(),
                        e.size()
                    ));
                    w.morphism("F->D", &morphism(f, d, to_d));
                    w.morphism("F->E", &morphism(f, e, to_e));
                    report.witnesses.push(w);
                }
                None => {
                    let mut w = Witness::new(format!(
                        "counterexample: no member of size <= {search_bound} maps onto both"
                    ));
                    w.structure(d);
                    w.structure(e);
                    report.fail(w);
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Amalgamation: every pair `phi_1: D -> C`, `phi_2: E -> C` with members up
/// to `size_bound` is completed to a commuting square by a member up to
/// `search_bound`. Epimorphism pairs are enumerated exhaustively.
pub fn check_ap(
    fam: &dyn FamilyEnumerator,
    size_bound: usize,
    search_bound: usize,
) -> Result<PropertyReport> {
    let bounds = [("size_bound", size_bound), ("search_bound", search_bound)];
    positive(&bounds)?;
    let mut report = PropertyReport::new("ap", &bounds, BOUNDED_NOTE);
    let members = ordered_members(fam, size_bound);
    let candidates = ordered_members(fam, search_bound);
    for c in &members {
        let into_c: Vec<Vec<Morphism>> = members
            .iter()
            .map(|d| enumerate_epimorphisms(d, c))
            .collect::<Result<_>>()?;
        for phis1 in &into_c {
            for phis2 in &into_c {
                for phi1 in phis1 {
                    for phi2 in phis2 {
                        report.checked += 1;
                        let mut done = false;
                        for f in &candidates {
                            if let Some((psi1, psi2)) = complete_square(f, phi1, phi2)? {
                                let mut w = Witness::new(format!(
                                    "amalgam of size {} over a base of size {}",
                                    f.size(),
                                    c.size()
                                ));
                                let a = w.morphism("phi_1", phi1);
                                let b = w.morphism("phi_2", phi2);
                                let p = w.morphism("psi_1", &psi1);
                                let q = w.morphism("psi_2", &psi2);
                                w.commutes(vec![p, a], vec![q, b]);
                                report.witnesses.push(w);
                                done = true;
                                break;
                            }
                        }
                        if !done {
                            let mut w = Witness::new(format!(
                                "counterexample: no amalgam of size <= {search_bound}"
                            ));
                            w.morphism("phi_1", phi1);
                            w.morphism("phi_2", phi2);
                            report.fail(w);
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FundamentalBounds {
    /// Levels examined for both conditions.
    pub depth: usize,
    /// Largest family member considered.
    pub member_bound: usize,
    /// Deepest level searched when factoring a square.
    pub factor_depth: usize,
}

/// The two fundamental-sequence conditions at bounded depth: every member
/// is an epimorphic image of some level, and every square
/// `phi_1: F -> E`, `phi_2: D_n -> E` factors through a deeper level.
pub fn check_fundamental_sequence(
    seq: &dyn FundamentalSequence,
    fam: &dyn FamilyEnumerator,
    b: FundamentalBounds,
) -> Result<PropertyReport> {
    let bounds = [
        ("depth", b.depth),
        ("member_bound", b.member_bound),
        ("factor_depth", b.factor_depth),
    ];
    positive(&bounds[..2])?;
    let note = "Bounded evidence: a countable family of finite structures is a projective \
                Fraisse family exactly when it has a fundamental sequence; only the listed \
                depths and member sizes were examined.";
    let mut report = PropertyReport::new("fundamental-sequence", &bounds, note);
    let limit = seq.depth_limit().unwrap_or(usize::MAX);
    let depth = b.depth.min(limit);
    let factor_depth = b.factor_depth.max(depth).min(limit);
    let levels: Vec<Arc<FinStructure>> = (0..=factor_depth)
        .map(|n| seq.level(n))
        .collect::<Result<_>>()?;
    let bonds: Vec<Vec<Morphism>> = (0..=depth)
        .map(|n| {
            (n..=factor_depth)
                .map(|m| seq.composed_bond(n, m))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let members = ordered_members(fam, b.member_bound);

    for d in &members {
        report.checked += 1;
        let hit = levels[..=depth]
            .iter()
            .enumerate()
            .find_map(|(n, level)| {
                EpiSearch::new(level, d)
                    .ok()?
                    .first()
                    .map(|map| (n, morphism(level, d, map)))
            });
        match hit {
            Some((n, m)) => {
                let mut w = Witness::new(format!("level {n} maps onto a member of size {}", d.size()));
                w.morphism("D_n->D", &m);
                report.witnesses.push(w);
            }
            None => {
                let mut w = Witness::new(format!(
                    "counterexample: member of size {} is not the image of any level <= {depth}",
                    d.size()
                ));
                w.structure(d);
                report.fail(w);
                return Ok(report);
            }
        }
    }

    for n in 0..=depth {
        let level = &levels[n];
        for e in &members {
            let from_level = enumerate_epimorphisms(level, e)?;
            if from_level.is_empty() {
                continue;
            }
            for f in &members {
                for phi1 in enumerate_epimorphisms(f, e)? {
                    let fibers1 = phi1.fibers();
                    for phi2 in &from_level {
                        report.checked += 1;
                        let found = (n..=factor_depth).find_map(|m| {
                            let down = &bonds[n][m - n];
                            let mut search = EpiSearch::new(&levels[m], f).ok()?;
                            for x in 0..levels[m].size() {
                                search = search.restrict(x, &fibers1[phi2.apply(down.apply(x))]);
                            }
                            search.first().map(|psi| (m, morphism(&levels[m], f, psi)))
                        });
                        if found.is_none() {
                            let mut w = Witness::new(format!(
                                "counterexample: square over level {n} does not factor below level {factor_depth}"
                            ));
                            w.morphism("phi_1", &phi1);
                            w.morphism("phi_2", phi2);
                            report.fail(w);
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Exactly one epimorphism `D_m -> D_n` for all `n <= m <= depth`, equal to
/// the composed bonds. A sequence with this property is a fundamental
/// sequence for the family of its levels.
pub fn check_rigidity(seq: &dyn FundamentalSequence, depth: usize) -> Result<PropertyReport> {
    let bounds = [("depth", depth)];
    positive(&bounds)?;
    let note = "Within the checked depth every level maps onto every earlier level in exactly \
                one way, namely the composed bonds; a sequence rigid at all depths is a \
                fundamental sequence for the family of its levels.";
    let mut report = PropertyReport::new("rigidity", &bounds, note);
    if let Some(limit) = seq.depth_limit() {
        if depth > limit {
            return Err(Error::BeyondDepth { level: depth, depth: limit });
        }
    }
    for m in 0..=depth {
        let dm = seq.level(m)?;
        for n in 0..=m {
            report.checked += 1;
            let dn = seq.level(n)?;
            let bond = seq.composed_bond(n, m)?;
            match unique_epimorphism(&dm, &dn)? {
                Uniqueness::Unique(u) if u.map() == bond.map() => {
                    let mut w = Witness::new(format!("unique epimorphism D_{m} -> D_{n}"));
                    w.morphism("pi", &u);
                    report.witnesses.push(w);
                }
                Uniqueness::Unique(u) => {
                    let mut w = Witness::new(format!(
                        "counterexample: the only epimorphism D_{m} -> D_{n} differs from the composed bonds"
                    ));
                    w.morphism("unique", &u);
                    report.fail(w);
                    return Ok(report);
                }
                Uniqueness::Multiple(count) => {
                    let two = EpiSearch::new(&dm, &dn)?.take(2);
                    let mut w = Witness::new(format!(
                        "counterexample: {count} epimorphisms D_{m} -> D_{n}"
                    ));
                    for (i, map) in two.into_iter().enumerate() {
                        w.morphism(&format!("epi_{i}"), &morphism(&dm, &dn, map));
                    }
                    report.fail(w);
                    return Ok(report);
                }
                Uniqueness::None => {
                    let mut w = Witness::new(format!("counterexample: no epimorphism D_{m} -> D_{n}"));
                    w.structure(&dm);
                    w.structure(&dn);
                    report.fail(w);
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}
