//! Sequences whose quotient graphs are subdivisions of a given finite graph:
//! one arc per edge, endpoints glued according to incidence.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::glue::{identify, Anchor, AnchorPoint, GlueSpec, GluedSequence};
use crate::error::{Error, Result};
use crate::families::chain::{chain, ArcSequence, ORDER};
use crate::family::{ConstantSequence, FundamentalSequence};

/// A finite multigraph on `0..vertices`. Loops and parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<[usize; 2]>) -> Result<Self> {
        let g = Graph { vertices, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::Input("the graph needs at least one edge".into()));
        }
        if let Some(e) = self.edges.iter().find(|e| e[0] >= self.vertices || e[1] >= self.vertices) {
            return Err(Error::Input(format!(
                "edge {e:?} leaves the vertex set 0..{}",
                self.vertices
            )));
        }
        Ok(())
    }
}

pub fn graph_family(g: &Graph) -> Result<GluedSequence> {
    g.validate()?;
    let rel = ORDER.to_string();
    let mut components: Vec<Arc<dyn FundamentalSequence>> = Vec::new();
    let mut anchors = Vec::new();
    // Anchor indices sitting at each vertex.
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); g.vertices];
    for (i, &[u, v]) in g.edges.iter().enumerate() {
        components.push(Arc::new(ArcSequence));
        at[u].push(anchors.len());
        anchors.push(Anchor {
            component: i,
            point: AnchorPoint::Least { rel: rel.clone() },
        });
        at[v].push(anchors.len());
        anchors.push(Anchor {
            component: i,
            point: AnchorPoint::Greatest { rel: rel.clone() },
        });
    }
    for here in at.iter_mut().filter(|h| h.is_empty()) {
        here.push(anchors.len());
        anchors.push(Anchor {
            component: components.len(),
            point: AnchorPoint::Fixed(0),
        });
        components.push(Arc::new(ConstantSequence::new(chain(1))));
    }
    let identify_pairs = at
        .iter()
        .flat_map(|h| h[1..].iter().map(move |&b| (h[0], b)))
        .collect();
    identify(GlueSpec::new(components, anchors, identify_pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_edge_list_rejected() {
        assert!(Graph::new(2, vec![]).is_err());
        assert!(Graph::new(2, vec![[0, 2]]).is_err());
    }

    #[test]
    fn isolated_vertex_becomes_a_point() {
        let seq = graph_family(&Graph::new(3, vec![[0, 1]]).unwrap()).unwrap();
        // Arc level 1 has three points, plus one for vertex 2.
        assert_eq!(seq.level(1).unwrap().size(), 4);
    }
}
