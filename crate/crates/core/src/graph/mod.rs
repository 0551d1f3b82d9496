//! Immutable simple undirected graphs on dense vertex labels `0..n`.

mod io;
mod vertex_set;

pub use io::{from_graph6, parse_any, parse_edge_list, to_edge_list, to_graph6};
pub use vertex_set::VertexSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A simple undirected graph. Adjacency is stored as one bitset row per
/// vertex, which keeps neighbourhood intersections cheap for the subgraph
/// searches built on top of it.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: vec![FixedBitSet::with_capacity(n); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut rows = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert_range(..);
            row.set(v, false);
            rows.push(row);
        }
        Graph {
            rows,
            edge_count: n * n.saturating_sub(1) / 2,
        }
    }

    /// Builds a graph from vertex pairs. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edge_list<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in pairs {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(self.add_edge_unchecked(u, v))
    }

    /// Returns whether the edge was new.
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) -> bool {
        if self.rows[u].put(v) {
            return false;
        }
        self.rows[v].insert(u);
        self.edge_count += 1;
        true
    }

    /// A copy of this graph with extra edges. Pairs already present are ignored.
    pub fn with_edges<I>(&self, pairs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (u, v) in pairs {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.rows[u].contains(v)
    }

    /// Neighbourhood bitset of `v`. Panics if `v` is out of range.
    pub fn adjacency(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.deg(v))
    }

    /// Unchecked degree for internal hot paths.
    pub(crate) fn deg(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    /// Number of neighbours of `v` inside `s`.
    pub fn degree_into(&self, v: usize, s: &VertexSet) -> Result<usize> {
        self.check_vertex(v)?;
        self.check_universe(s)?;
        Ok(self.rows[v].intersection_count(s.bits()))
    }

    /// Minimum degree; 0 for the graph on no vertices.
    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.deg(v)).min().unwrap_or(0)
    }

    fn check_universe(&self, s: &VertexSet) -> Result<()> {
        if s.universe() > self.n() {
            if let Some(v) = s.iter().find(|&v| v >= self.n()) {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
            }
        }
        Ok(())
    }

    /// Edge-set union of two graphs on the same vertex set.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.n() != other.n() {
            return Err(Error::VertexCountMismatch(self.n(), other.n()));
        }
        let mut g = self.clone();
        for (u, v) in other.edges() {
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    /// `g[s]` relabelled densely, with the map from new labels to old.
    pub fn induced(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_universe(s)?;
        let old: Vec<usize> = s.iter().collect();
        let mut new_of = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut g = Graph::empty(old.len());
        for (i, &u) in old.iter().enumerate() {
            for v in self.rows[u].intersection(s.bits()) {
                if v > u {
                    g.add_edge_unchecked(i, new_of[v]);
                }
            }
        }
        Ok((g, old))
    }

    /// Keeps only the edges with both ends in `s`; labels are unchanged.
    pub fn restrict(&self, s: &VertexSet) -> Result<Graph> {
        self.check_universe(s)?;
        let mut g = Graph::empty(self.n());
        for u in s.iter() {
            for v in self.rows[u].intersection(s.bits()) {
                if v > u {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n() {
            return Err(Error::VertexCountMismatch(perm.len(), self.n()));
        }
        let mut seen = FixedBitSet::with_capacity(self.n());
        for &p in perm {
            if p >= self.n() || seen.put(p) {
                return Err(Error::InvalidArgument("relabelling is not a permutation".into()));
            }
        }
        Graph::from_edge_list(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n() == other.n() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }
}

/// Small named graphs used throughout tests and the CLI.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edge_list(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edge_list(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
    }

    /// `K_{a,b}` with classes `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let pairs = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edge_list(a + b, pairs).expect("valid bipartite")
    }

    /// Triangle `{0,1,2}` with pendant vertex 3 attached to 2.
    pub fn triangle_with_pendant() -> Graph {
        Graph::from_edge_list(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).expect("valid")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edge_list(10, outer.chain(spokes).chain(inner)).expect("valid petersen")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn construction_and_dedup() {
        let k3 = Graph::from_edge_list(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(Graph::from_edge_list(2, []).unwrap().edge_count(), 0);
        assert_eq!(Graph::from_edge_list(4, [(0, 1), (1, 0)]).unwrap().edge_count(), 1);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Graph::from_edge_list(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(Graph::from_edge_list(3, [(1, 1)]), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn union_cases() {
        let p = path(3);
        let e = Graph::from_edge_list(3, [(0, 2)]).unwrap();
        assert_eq!(p.union(&e).unwrap(), Graph::complete(3));
        assert_eq!(p.union(&Graph::empty(3)).unwrap(), p);
        assert_eq!(p.union(&p).unwrap(), p);
        assert!(p.union(&Graph::empty(4)).is_err());
    }

    #[test]
    fn induced_cases() {
        let s = VertexSet::from_slice(4, &[0, 1, 2]).unwrap();
        assert_eq!(Graph::complete(4).induced(&s).unwrap().0, Graph::complete(3));
        let (g, map) = cycle(5).induced(&VertexSet::new(5)).unwrap();
        assert_eq!(g.n(), 0);
        assert!(map.is_empty());
        let s = VertexSet::from_slice(5, &[0, 1, 2]).unwrap();
        assert_eq!(cycle(5).induced(&s).unwrap().0, path(3));
    }

    #[test]
    fn degrees() {
        assert_eq!(cycle(5).min_degree(), 2);
        let s = VertexSet::from_slice(4, &[1, 2]).unwrap();
        assert_eq!(Graph::complete(4).degree_into(0, &s).unwrap(), 2);
        assert_eq!(star(3).min_degree(), 1);
        assert_eq!(Graph::empty(0).min_degree(), 0);
        assert!(cycle(5).degree(5).is_err());
    }

    #[test]
    fn petersen_is_cubic() {
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.deg(v) == 3));
    }
}
