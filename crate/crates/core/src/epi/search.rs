//! Backtracking search for epimorphisms.
//!
//! Source elements are assigned in increasing order and candidate images are
//! tried in increasing order, so maps are produced in lexicographic order.
//! After each assignment every source tuple whose entries are now all
//! assigned must land in the target relation. Surjectivity onto the universe
//! and onto each unary relation is pruned by counting. Image equality of the
//! remaining relations is only decided at the leaves.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::structure::{FinStructure, Relation};

const DENSE_LIMIT: usize = 1 << 24;

/// Membership index for the tuples of a target relation.
enum TupleIndex {
    Dense { base: usize, bits: Vec<bool> },
    Sparse(HashSet<Vec<usize>>),
}

impl TupleIndex {
    fn new(rel: &Relation, universe: usize) -> Self {
        let cells = universe.checked_pow(rel.arity() as u32);
        match cells {
            Some(n) if n <= DENSE_LIMIT => {
                let mut bits = vec![false; n];
                for t in rel.iter() {
                    bits[encode(universe, t.iter().copied())] = true;
                }
                TupleIndex::Dense {
                    base: universe,
                    bits,
                }
            }
            _ => TupleIndex::Sparse(rel.iter().map(|t| t.to_vec()).collect()),
        }
    }

    fn contains_image(&self, tuple: &[usize], map: &[usize]) -> bool {
        match self {
            TupleIndex::Dense { base, bits } => bits[encode(*base, tuple.iter().map(|&x| map[x]))],
            TupleIndex::Sparse(set) => {
                let img: Vec<usize> = tuple.iter().map(|&x| map[x]).collect();
                set.contains(&img)
            }
        }
    }
}

fn encode(base: usize, t: impl Iterator<Item = usize>) -> usize {
    t.fold(0, |acc, x| acc * base + x)
}

struct RelPlan<'a> {
    source: &'a Relation,
    target_len: usize,
    index: TupleIndex,
}

struct UnaryPlan {
    target_members: Vec<bool>,
    target_len: usize,
    source_members: Vec<bool>,
    /// Number of source members with index strictly greater than `i`.
    remaining_after: Vec<usize>,
}

/// Configurable epimorphism search between two structures.
pub struct EpiSearch<'a> {
    source: &'a FinStructure,
    target: &'a FinStructure,
    candidates: Vec<Vec<usize>>,
    modulo_automorphisms: bool,
}

impl<'a> EpiSearch<'a> {
    pub fn new(source: &'a FinStructure, target: &'a FinStructure) -> Result<Self> {
        if source.signature() != target.signature() {
            return Err(Error::SignatureMismatch);
        }
        let q = target.size();
        let mut candidates = vec![(0..q).collect::<Vec<_>>(); source.size()];
        // Unary symbols only ever allow images inside the target predicate.
        for (name, rel) in source.relations() {
            if rel.arity() != 1 {
                continue;
            }
            let Some(trel) = target.relation(name) else {
                continue;
            };
            for t in rel.iter() {
                if let Some(c) = candidates.get_mut(t[0]) {
                    c.retain(|&b| trel.contains(&[b]));
                }
            }
        }
        Ok(EpiSearch {
            source,
            target,
            candidates,
            modulo_automorphisms: false,
        })
    }

    /// Only allow images of `element` among `allowed`.
    pub fn restrict(mut self, element: usize, allowed: &[usize]) -> Self {
        self.candidates[element].retain(|b| allowed.contains(b));
        self
    }

    /// Keep one map per orbit of target automorphisms acting by
    /// post-composition: the lexicographically least one.
    pub fn modulo_target_automorphisms(mut self, on: bool) -> Self {
        self.modulo_automorphisms = on;
        self
    }

    /// Visits every epimorphism in lexicographic order until `visit` breaks.
    pub fn for_each<F>(&self, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.modulo_automorphisms {
            let autos: Vec<Vec<usize>> = EpiSearch::new(self.target, self.target)
                .expect("same signature")
                .collect_maps()
                .into_iter()
                .filter(|a| a.iter().enumerate().any(|(i, &x)| i != x))
                .collect();
            self.run(&mut |m: &[usize]| {
                let least = autos.iter().all(|a| {
                    let moved = m.iter().map(|&y| a[y]);
                    moved.cmp(m.iter().copied()) != std::cmp::Ordering::Less
                });
                if least {
                    visit(m)
                } else {
                    ControlFlow::Continue(())
                }
            });
        } else {
            self.run(&mut visit);
        }
    }

    pub fn collect_maps(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each(|m| {
            out.push(m.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    pub fn first(&self) -> Option<Vec<usize>> {
        self.take(1).pop()
    }

    /// At most `limit` maps, in order.
    pub fn take(&self, limit: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if limit == 0 {
            return out;
        }
        self.for_each(|m| {
            out.push(m.to_vec());
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        out
    }

    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) {
        let p = self.source.size();
        let q = self.target.size();
        if p < q || q == 0 || self.candidates.iter().any(|c| c.is_empty()) {
            return;
        }

        let mut rels = Vec::new();
        let mut unary = Vec::new();
        let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); p];
        for (name, srel) in self.source.relations() {
            let Some(trel) = self.target.relation(name) else {
                continue;
            };
            if srel.len() < trel.len() {
                // The image can never cover the target relation.
                return;
            }
            if srel.arity() == 1 {
                let mut source_members = vec![false; p];
                for t in srel.iter() {
                    source_members[t[0]] = true;
                }
                let mut remaining_after = vec![0; p];
                let mut acc = 0;
                for i in (0..p).rev() {
                    remaining_after[i] = acc;
                    if source_members[i] {
                        acc += 1;
                    }
                }
                let mut target_members = vec![false; q];
                for t in trel.iter() {
                    target_members[t[0]] = true;
                }
                unary.push(UnaryPlan {
                    target_members,
                    target_len: trel.len(),
                    source_members,
                    remaining_after,
                });
                continue;
            }
            let idx = rels.len();
            for (ti, t) in srel.iter().enumerate() {
                let last = *t.iter().max().expect("positive arity");
                checks[last].push((idx, ti));
            }
            rels.push(RelPlan {
                source: srel,
                target_len: trel.len(),
                index: TupleIndex::new(trel, q),
            });
        }

        let mut state = State {
            map: vec![usize::MAX; p],
            hits: vec![0; q],
            covered: 0,
            unary_hits: unary.iter().map(|_| vec![0; q]).collect(),
            unary_covered: vec![0; unary.len()],
        };
        let ctx = Ctx {
            p,
            q,
            candidates: &self.candidates,
            rels: &rels,
            unary: &unary,
            checks: &checks,
        };
        let _ = ctx.descend(0, &mut state, visit);
    }
}

struct State {
    map: Vec<usize>,
    hits: Vec<usize>,
    covered: usize,
    unary_hits: Vec<Vec<usize>>,
    unary_covered: Vec<usize>,
}

struct Ctx<'c, 'a> {
    p: usize,
    q: usize,
    candidates: &'c [Vec<usize>],
    rels: &'c [RelPlan<'a>],
    unary: &'c [UnaryPlan],
    checks: &'c [Vec<(usize, usize)>],
}

impl Ctx<'_, '_> {
    fn descend(
        &self,
        i: usize,
        st: &mut State,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == self.p {
            if self.images_exact(&st.map) {
                return visit(&st.map);
            }
            return ControlFlow::Continue(());
        }
        let remaining = self.p - i - 1;
        for &b in &self.candidates[i] {
            st.map[i] = b;
            self.assign(i, b, st);
            let ok = st.covered + remaining >= self.q
                && self.unary.iter().enumerate().all(|(u, plan)| {
                    plan.target_len - st.unary_covered[u] <= plan.remaining_after[i]
                })
                && self.checks[i].iter().all(|&(r, t)| {
                    let plan = &self.rels[r];
                    plan.index.contains_image(plan.source.tuple(t), &st.map)
                });
            if ok {
                self.descend(i + 1, st, visit)?;
            }
            self.unassign(i, b, st);
        }
        st.map[i] = usize::MAX;
        ControlFlow::Continue(())
    }

    fn assign(&self, i: usize, b: usize, st: &mut State) {
        st.hits[b] += 1;
        if st.hits[b] == 1 {
            st.covered += 1;
        }
        for (u, plan) in self.unary.iter().enumerate() {
            if plan.source_members[i] && plan.target_members[b] {
                st.unary_hits[u][b] += 1;
                if st.unary_hits[u][b] == 1 {
                    st.unary_covered[u] += 1;
                }
            }
        }
    }

    fn unassign(&self, i: usize, b: usize, st: &mut State) {
        st.hits[b] -= 1;
        if st.hits[b] == 0 {
            st.covered -= 1;
        }
        for (u, plan) in self.unary.iter().enumerate() {
            if plan.source_members[i] && plan.target_members[b] {
                st.unary_hits[u][b] -= 1;
                if st.unary_hits[u][b] == 0 {
                    st.unary_covered[u] -= 1;
                }
            }
        }
    }

    /// Forward preservation already holds, so the image equals the target
    /// relation iff it has as many distinct tuples.
    fn images_exact(&self, map: &[usize]) -> bool {
        self.rels.iter().all(|plan| {
            let arity = plan.source.arity();
            let mut seen: HashSet<usize> = HashSet::with_capacity(plan.target_len);
            let mut sparse: HashSet<Vec<usize>> = HashSet::new();
            for t in plan.source.iter() {
                match self.q.checked_pow(arity as u32) {
                    Some(_) => {
                        seen.insert(encode(self.q, t.iter().map(|&x| map[x])));
                    }
                    None => {
                        sparse.insert(t.iter().map(|&x| map[x]).collect());
                    }
                }
                if seen.len() + sparse.len() == plan.target_len {
                    return true;
                }
            }
            seen.len() + sparse.len() == plan.target_len
        })
    }
}
