use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::property::{check_level_property, Property};
use crate::constructions::Classes;
use crate::error::{Error, Result};
use crate::family::FundamentalSequence;

/// The graph of the distinguished relation at one level, with identified
/// points contracted. Vertices are the classes, numbered by least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    pub level: usize,
    pub vertices: usize,
    /// Whether the distinguished relation is reflexive.
    pub loops: bool,
    /// Sorted, `u < v`, no duplicates.
    pub edges: Vec<(usize, usize)>,
    /// Vertex of each level element.
    pub vertex_of: Vec<usize>,
}

impl QuotientGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    level: usize,
    vertices: Vec<usize>,
    loops: bool,
    edges: Vec<[usize; 2]>,
}

pub fn quotient_graph(seq: &dyn FundamentalSequence, n: usize) -> Result<QuotientGraph> {
    let level = seq.level(n)?;
    let size = level.size();
    let mut classes = Classes::new(size);
    for class in seq.identified(n)? {
        for w in class.windows(2) {
            classes.union(w[0], w[1]);
        }
    }
    let mut vertex_of = vec![usize::MAX; size];
    let mut vertices = 0;
    for x in 0..size {
        let root = classes.find(x);
        if vertex_of[root] == usize::MAX {
            vertex_of[root] = vertices;
            vertices += 1;
        }
        vertex_of[x] = vertex_of[root];
    }
    let rel = level.signature().distinguished().to_string();
    let edges: BTreeSet<(usize, usize)> = level
        .distinguished()
        .iter()
        .map(|t| (vertex_of[t[0]], vertex_of[t[1]]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    Ok(QuotientGraph {
        level: n,
        vertices,
        loops: check_level_property(&level, &rel, Property::Reflexive)?,
        edges: edges.into_iter().collect(),
        vertex_of,
    })
}

/// Why the composed bond fails to induce a graph epimorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoherenceFailure {
    /// Two elements of one upper vertex land in different lower vertices.
    SplitVertex { vertex: usize },
    MissedVertex { vertex: usize },
    /// An upper edge lands on two non-adjacent lower vertices.
    BrokenEdge { edge: (usize, usize), image: (usize, usize) },
    MissedEdge { edge: (usize, usize) },
}

/// The first obstruction to the composed bond `D_m -> D_n` inducing a
/// surjective graph map `Q(m) -> Q(n)`, if any.
pub fn coherence_failure(
    seq: &dyn FundamentalSequence,
    n: usize,
    m: usize,
) -> Result<Option<CoherenceFailure>> {
    let bond = seq.composed_bond(n, m)?;
    let (upper, lower) = (quotient_graph(seq, m)?, quotient_graph(seq, n)?);
    let mut vmap = vec![usize::MAX; upper.vertices];
    for (x, &v) in upper.vertex_of.iter().enumerate() {
        let image = lower.vertex_of[bond.apply(x)];
        if vmap[v] == usize::MAX {
            vmap[v] = image;
        } else if vmap[v] != image {
            return Ok(Some(CoherenceFailure::SplitVertex { vertex: v }));
        }
    }
    let mut hit = vec![false; lower.vertices];
    vmap.iter().for_each(|&w| hit[w] = true);
    if let Some(vertex) = hit.iter().position(|h| !h) {
        return Ok(Some(CoherenceFailure::MissedVertex { vertex }));
    }
    let lower_edges: BTreeSet<(usize, usize)> = lower.edges.iter().copied().collect();
    let mut covered = BTreeSet::new();
    for &(a, b) in &upper.edges {
        let (x, y) = (vmap[a], vmap[b]);
        if x == y {
            continue;
        }
        let e = (x.min(y), x.max(y));
        if !lower_edges.contains(&e) {
            return Ok(Some(CoherenceFailure::BrokenEdge { edge: (a, b), image: e }));
        }
        covered.insert(e);
    }
    Ok(lower_edges
        .into_iter()
        .find(|e| !covered.contains(e))
        .map(|edge| CoherenceFailure::MissedEdge { edge }))
}

/// True when the composed bond `D_m -> D_n` induces a vertex- and
/// edge-surjective graph map `Q(m) -> Q(n)` that sends each edge to an edge
/// or collapses it to a vertex.
pub fn quotient_coherence(seq: &dyn FundamentalSequence, n: usize, m: usize) -> Result<bool> {
    Ok(coherence_failure(seq, n, m)?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

pub fn export_graph(g: &QuotientGraph, format: Format) -> String {
    match format {
        Format::Dot => {
            let mut out = String::from("graph {\n");
            for v in 0..g.vertices {
                writeln!(out, "  {v};").unwrap();
            }
            for (a, b) in &g.edges {
                writeln!(out, "  {a} -- {b};").unwrap();
            }
            out.push_str("}\n");
            out
        }
        Format::Json => {
            let json = GraphJson {
                level: g.level,
                vertices: (0..g.vertices).collect(),
                loops: g.loops,
                edges: g.edges.iter().map(|&(a, b)| [a, b]).collect(),
            };
            serde_json::to_string(&json).expect("plain data") + "\n"
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::ExplicitSequence;
    use crate::families::ArcSequence;

    #[test]
    fn arc_levels_are_paths() {
        let g = quotient_graph(&ArcSequence, 1).unwrap();
        assert_eq!(g.vertices, 3);
        assert_eq!(g.edges, vec![(0, 1), (1, 2)]);
        assert!(g.loops);
        assert_eq!(export_graph(&g, Format::Dot), "graph {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n");
        assert_eq!(
            export_graph(&g, Format::Json),
            "{\"level\":1,\"vertices\":[0,1,2],\"loops\":true,\"edges\":[[0,1],[1,2]]}\n"
        );
    }

    #[test]
    fn corrupted_bond_breaks_coherence() {
        let seq = ExplicitSequence::truncate(&ArcSequence, 2).unwrap();
        assert!(quotient_coherence(&seq, 0, 2).unwrap());
        let bad = seq.with_bond(1, vec![0; 5]).unwrap();
        assert!(!quotient_coherence(&bad, 1, 2).unwrap());
        assert!(quotient_coherence(&bad, 2, 2).unwrap());
    }

    #[test]
    fn unknown_format() {
        assert!(matches!("svg".parse::<Format>(), Err(Error::UnknownFormat(_))));
    }
}
