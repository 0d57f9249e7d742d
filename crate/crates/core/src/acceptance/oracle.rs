//! Reference implementations that share no code with the engines they check.
//! They are slow on purpose and work from raw tuple lists.

use std::collections::{BTreeSet, VecDeque};

use crate::structure::FinStructure;

fn tuples(s: &FinStructure, name: &str) -> BTreeSet<Vec<usize>> {
    s.relation(name)
        .map(|r| r.iter().map(|t| t.to_vec()).collect())
        .unwrap_or_default()
}

/// Whether `map` is an epimorphism, straight from the definition.
pub fn naive_is_epimorphism(a: &FinStructure, b: &FinStructure, map: &[usize]) -> bool {
    if a.signature() != b.signature() || map.len() != a.size() || map.iter().any(|&y| y >= b.size()) {
        return false;
    }
    let onto: BTreeSet<usize> = map.iter().copied().collect();
    if onto.len() != b.size() {
        return false;
    }
    a.signature().relations().all(|(name, _)| {
        let image: BTreeSet<Vec<usize>> = tuples(a, name)
            .into_iter()
            .map(|t| t.into_iter().map(|x| map[x]).collect())
            .collect();
        image == tuples(b, name)
    })
}

/// All epimorphisms, by filtering every map `a -> b` in lexicographic order.
pub fn naive_epimorphisms(a: &FinStructure, b: &FinStructure) -> Vec<Vec<usize>> {
    let (p, q) = (a.size(), b.size());
    let mut out = Vec::new();
    let mut map = vec![0usize; p];
    loop {
        if naive_is_epimorphism(a, b, &map) {
            out.push(map.clone());
        }
        // Next map in lexicographic order.
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < q {
                break;
            }
            map[i] = 0;
        }
    }
}

/// Non-decreasing surjections `{0..m} -> {0..n}`, counted by recursion on
/// the value of the last point.
pub fn monotone_surjections(m: usize, n: usize) -> u64 {
    // ways[i][j]: non-decreasing maps of i points onto 0..j exactly.
    let mut ways = vec![vec![0u64; n + 1]; m + 1];
    ways[0][0] = 1;
    for i in 1..=m {
        for j in 1..=n {
            // Point i-1 goes to j-1; the previous point goes to j-1 or j-2.
            ways[i][j] = ways[i - 1][j] + ways[i - 1][j - 1];
        }
    }
    ways[m][n]
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    pub vertices: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        SimpleGraph { vertices, edges }
    }

    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.vertices];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }
}

pub fn path_graph(k: usize) -> SimpleGraph {
    SimpleGraph::new(k, (1..k).map(|i| (i - 1, i)))
}

pub fn cycle_graph(k: usize) -> SimpleGraph {
    SimpleGraph::new(k, (0..k).map(|i| (i, (i + 1) % k)))
}

/// `k x k` grid where cells touching at a side or a corner are adjacent.
pub fn king_grid(k: usize) -> SimpleGraph {
    let mut edges = Vec::new();
    for r in 0..k {
        for c in 0..k {
            for (dr, dc) in [(0, 1), (1, 0), (1, 1), (1, usize::MAX)] {
                let (r2, c2) = (r + dr, c.wrapping_add(dc));
                if r2 < k && c2 < k {
                    edges.push((r * k + c, r2 * k + c2));
                }
            }
        }
    }
    SimpleGraph::new(k * k, edges)
}

/// Every edge replaced by a path with `k` edges. Parallel edges that end up
/// identical collapse.
pub fn subdivision(vertices: usize, edges: &[(usize, usize)], k: usize) -> SimpleGraph {
    let mut next = vertices;
    let mut out = Vec::new();
    for &(u, v) in edges {
        let mut prev = u;
        for _ in 1..k {
            out.push((prev, next));
            prev = next;
            next += 1;
        }
        out.push((prev, v));
    }
    SimpleGraph::new(next, out)
}

/// Backtracking isomorphism test. Vertices of `g` are matched in
/// breadth-first order; candidates must agree in degree and in adjacency
/// with every vertex matched so far.
pub fn isomorphic(g: &SimpleGraph, h: &SimpleGraph) -> bool {
    if g.vertices != h.vertices || g.edges.len() != h.edges.len() {
        return false;
    }
    let (ag, ah) = (g.adjacency(), h.adjacency());
    let mut dg: Vec<usize> = ag.iter().map(BTreeSet::len).collect();
    let mut dh: Vec<usize> = ah.iter().map(BTreeSet::len).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let mut order = Vec::with_capacity(g.vertices);
    let mut seen = vec![false; g.vertices];
    for start in 0..g.vertices {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &ag[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    queue.push_back(y);
                }
            }
        }
    }
    let mut image = vec![usize::MAX; g.vertices];
    let mut used = vec![false; h.vertices];
    extend(0, &order, &ag, &ah, &mut image, &mut used)
}

fn extend(
    i: usize,
    order: &[usize],
    ag: &[BTreeSet<usize>],
    ah: &[BTreeSet<usize>],
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(i) else {
        return true;
    };
    // A mapped neighbour narrows the candidates to its image's neighbours.
    let anchor = ag[x].iter().find(|&&y| image[y] != usize::MAX).map(|&y| image[y]);
    let candidates: Vec<usize> = match anchor {
        Some(w) => ah[w].iter().copied().collect(),
        None => (0..ah.len()).collect(),
    };
    for c in candidates {
        if used[c] || ah[c].len() != ag[x].len() {
            continue;
        }
        let consistent = order[..i]
            .iter()
            .all(|&y| ag[x].contains(&y) == ah[c].contains(&image[y]));
        if !consistent {
            continue;
        }
        image[x] = c;
        used[c] = true;
        if extend(i + 1, order, ag, ah, image, used) {
            return true;
        }
        image[x] = usize::MAX;
        used[c] = false;
    }
    false
}

/// Pairs of words of length `n` that extend to equivalent infinite binary
/// words, where `w01111...` is equivalent to `w10000...`. Only eventually
/// constant extensions matter, so extensions `u t c c c ...` with
/// `|t| <= n + 1` are tried and compared on a long enough prefix.
pub fn dyadic_pairs(n: usize) -> BTreeSet<(usize, usize)> {
    let horizon = 2 * n + 4;
    let bits = |idx: usize, len: usize| -> Vec<u8> {
        (0..len).map(|i| ((idx >> (len - 1 - i)) & 1) as u8).collect()
    };
    let extensions = |u: &[u8]| -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for tlen in 0..=n + 1 {
            for t in 0..1usize << tlen {
                for c in [0u8, 1] {
                    let mut x = u.to_vec();
                    x.extend(bits(t, tlen));
                    x.resize(horizon, c);
                    out.push(x);
                }
            }
        }
        out
    };
    let equivalent = |x: &[u8], y: &[u8]| -> bool {
        if x == y {
            return true;
        }
        let k = (0..horizon).find(|&i| x[i] != y[i]).expect("words differ");
        let (lo, hi) = if x[k] == 0 { (x, y) } else { (y, x) };
        lo[k + 1..].iter().all(|&b| b == 1) && hi[k + 1..].iter().all(|&b| b == 0)
    };
    let mut out = BTreeSet::new();
    for u in 0..1usize << n {
        for v in 0..1usize << n {
            let (eu, ev) = (extensions(&bits(u, n)), extensions(&bits(v, n)));
            if eu.iter().any(|x| ev.iter().any(|y| equivalent(x, y))) {
                out.insert((u, v));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(monotone_surjections(3, 2), 2);
        assert_eq!(monotone_surjections(6, 3), 10);
        assert_eq!(binomial(5, 2), 10);
    }

    #[test]
    fn king_grid_edges() {
        assert_eq!(king_grid(3).edges.len(), 20);
    }

    #[test]
    fn isomorphism_basics() {
        assert!(isomorphic(&cycle_graph(6), &subdivision(3, &[(0, 1), (1, 2), (2, 0)], 2)));
        assert!(!isomorphic(&cycle_graph(6), &path_graph(6)));
        let relabelled = SimpleGraph::new(4, [(2, 0), (0, 3), (3, 1)]);
        assert!(isomorphic(&path_graph(4), &relabelled));
    }

    #[test]
    fn dyadic_level_two() {
        let off: Vec<_> = dyadic_pairs(2).into_iter().filter(|(a, b)| a < b).collect();
        assert_eq!(off, vec![(0, 1), (1, 2), (2, 3)]);
    }
}
