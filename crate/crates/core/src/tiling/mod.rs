//! Copies of a template in a host graph and vertex-disjoint tilings by them.

mod embed;
mod index;
pub(crate) mod search;

pub use embed::{enumerate_copies, find_copy, Embedder};
pub use index::CopyIndex;
pub use search::{
    almost_perfect_coverage, max_tiling_exact, max_tiling_greedy, perfect_tiling, perfect_tiling_with,
    MaxTiling, PerfectOptions,
};

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

/// An injective map from template vertices to host vertices:
/// `map[i]` is the image of template vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Image vertices in increasing order.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }

    /// Image edges as sorted `(min, max)` pairs.
    pub fn image_edges(&self, pattern: &Graph) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = pattern
            .edges()
            .map(|(a, b)| {
                let (x, y) = (self.map[a], self.map[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        e.sort_unstable();
        e
    }

    /// Copy identity: the image vertex set together with the image edge set.
    pub fn copy_key(&self, pattern: &Graph) -> CopyKey {
        CopyKey { vertices: self.vertices(), edges: self.image_edges(pattern) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CopyKey {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Vertex-disjoint copies of a template.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub embeddings: Vec<Embedding>,
    pub covered: VertexSet,
}

impl Tiling {
    pub fn empty(n: usize) -> Self {
        Tiling { embeddings: Vec::new(), covered: VertexSet::new(n) }
    }

    pub fn len(&self) -> usize {
        self.embeddings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.embeddings.is_empty()
    }

    pub fn covered_count(&self) -> usize {
        self.covered.len()
    }

    /// Adds an embedding; returns false (and leaves the tiling unchanged)
    /// if it meets an already covered vertex.
    pub fn push(&mut self, e: Embedding) -> bool {
        if e.map.iter().any(|&v| self.covered.contains(v)) {
            return false;
        }
        for &v in &e.map {
            self.covered.insert(v);
        }
        self.embeddings.push(e);
        true
    }

    pub fn extend(&mut self, other: Tiling) -> bool {
        other.embeddings.into_iter().all(|e| self.push(e))
    }

    /// Vertex lists of each copy, for reporting.
    pub fn vertex_lists(&self) -> Vec<Vec<usize>> {
        self.embeddings.iter().map(Embedding::vertices).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingStatus {
    Found(Tiling),
    /// The search tree was exhausted.
    NoneExists,
    /// The node budget ran out first.
    Unknown,
}

impl TilingStatus {
    pub fn label(&self) -> &'static str {
        match self {
            TilingStatus::Found(_) => "found",
            TilingStatus::NoneExists => "none_exists",
            TilingStatus::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TilingResult {
    pub status: TilingStatus,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Checks a tiling against the raw definitions: each map is injective and
/// preserves template edges in `host`, copies are pairwise disjoint, and
/// `covered` is exactly the union of the images.
pub fn validate_tiling(host: &Graph, pattern: &Graph, tiling: &Tiling) -> Result<(), String> {
    let n = host.n();
    let mut seen = vec![false; n];
    for (i, e) in tiling.embeddings.iter().enumerate() {
        if e.map.len() != pattern.n() {
            return Err(format!("copy {i} maps {} vertices, template has {}", e.map.len(), pattern.n()));
        }
        for &v in &e.map {
            if v >= n {
                return Err(format!("copy {i} uses vertex {v} outside the host"));
            }
            if seen[v] {
                return Err(format!("vertex {v} is used twice (copy {i})"));
            }
            seen[v] = true;
        }
        for (a, b) in pattern.edges() {
            if !host.has_edge(e.map[a], e.map[b]) {
                return Err(format!("copy {i}: template edge {a}-{b} maps to non-edge {}-{}", e.map[a], e.map[b]));
            }
        }
    }
    let union: Vec<usize> = (0..n).filter(|&v| seen[v]).collect();
    if union != tiling.covered.to_vec() {
        return Err("covered set differs from the union of the copies".into());
    }
    Ok(())
}

/// [`validate_tiling`] plus coverage of every host vertex.
pub fn validate_perfect(host: &Graph, pattern: &Graph, tiling: &Tiling) -> Result<(), String> {
    validate_tiling(host, pattern, tiling)?;
    if tiling.covered_count() != host.n() {
        return Err(format!("tiling covers {} of {} vertices", tiling.covered_count(), host.n()));
    }
    Ok(())
}

/// [`validate_tiling`] plus coverage of exactly `target`.
pub fn validate_covers_exactly(host: &Graph, pattern: &Graph, tiling: &Tiling, target: &VertexSet) -> Result<(), String> {
    validate_tiling(host, pattern, tiling)?;
    if tiling.covered.to_vec() != target.to_vec() {
        return Err("tiling does not cover exactly the target set".into());
    }
    Ok(())
}
