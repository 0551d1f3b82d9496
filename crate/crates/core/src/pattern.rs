use std::path::Path;

use serde::Serialize;

use crate::density::{classify, DensityProfile};
use crate::error::{Error, Result};
use crate::graph::{self, named, Graph, VertexSet};

/// A template graph `H` ready for tiling work: at least two vertices and
/// at least one edge, with its density profile precomputed.
#[derive(Clone, Debug, Serialize)]
pub struct Pattern {
    name: String,
    #[serde(serialize_with = "serialize_edges")]
    graph: Graph,
    profile: DensityProfile,
}

fn serialize_edges<S: serde::Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(g.edges())
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: Graph) -> Result<Self> {
        if graph.n() < 2 {
            return Err(Error::InvalidArgument("pattern needs at least 2 vertices".into()));
        }
        if graph.edge_count() == 0 {
            return Err(Error::InvalidArgument("pattern needs at least one edge".into()));
        }
        let profile = classify(&graph)?;
        Ok(Pattern { name: name.into(), graph, profile })
    }

    pub fn clique(k: usize) -> Self {
        Pattern::new(format!("k{k}"), Graph::complete(k)).expect("clique with k >= 2")
    }

    /// `k2`, `k3`, `k4`, `c4`, `c5`, `p3`, `star3`, or `file:PATH`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let g = match spec.to_ascii_lowercase().as_str() {
            "k2" => Graph::complete(2),
            "k3" => Graph::complete(3),
            "k4" => Graph::complete(4),
            "k5" => Graph::complete(5),
            "c4" => named::cycle(4),
            "c5" => named::cycle(5),
            "p3" => named::path(3),
            "star3" | "k13" => named::star(3),
            _ => match spec.strip_prefix("file:") {
                Some(path) => read_graph(Path::new(path))?,
                None => return Err(Error::InvalidArgument(format!("unknown pattern {spec:?}"))),
            },
        };
        Pattern::new(spec, g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn profile(&self) -> &DensityProfile {
        &self.profile
    }

    /// `|H|`.
    pub fn order(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Removes a vertex of maximum degree (lowest index on ties), giving the
    /// `|H|-1` vertex template used by the pair-completion procedure, plus
    /// the removed vertex.
    pub fn minus_max_degree_vertex(&self) -> (Graph, usize) {
        let n = self.order();
        let x = (0..n).max_by_key(|&v| (self.graph.deg(v), std::cmp::Reverse(v))).expect("n >= 2");
        let keep = VertexSet::from_iter_checked(n, (0..n).filter(|&v| v != x)).expect("in range");
        (self.graph.induced(&keep).expect("in range").0, x)
    }
}

pub(crate) fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    graph::parse_any(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn requires_an_edge() {
        assert!(Pattern::new("e", Graph::empty(3)).is_err());
        assert!(Pattern::new("v", Graph::empty(1)).is_err());
        assert!(Pattern::from_spec("k3").is_ok());
        assert!(Pattern::from_spec("nope").is_err());
    }

    #[test]
    fn removes_max_degree_vertex() {
        let p = Pattern::new("tp", named::triangle_with_pendant()).unwrap();
        let (h_prime, x) = p.minus_max_degree_vertex();
        assert_eq!(x, 2);
        assert_eq!(h_prime.edge_count(), 1);
    }
}
