//! Rows of an exact-cover style search: one row per vertex set spanning a
//! copy of the template, with incidence lists and undoable row removal.

use std::collections::HashSet;
use std::ops::ControlFlow;

use super::{Embedder, Embedding, Tiling};
use crate::graph::{Graph, VertexSet};

/// All vertex sets of `|H|` host vertices that span a copy of `H`, with one
/// witnessing embedding each. Copies sharing a vertex set are
/// interchangeable for tiling purposes, so they share a row.
#[derive(Clone, Debug)]
pub struct CopyIndex {
    n: usize,
    rows: Vec<Vec<u32>>,
    witnesses: Vec<Embedding>,
    incidence: Vec<Vec<u32>>,
}

impl CopyIndex {
    pub fn build(host: &Graph, pattern: &Graph, within: Option<&VertexSet>) -> Self {
        Self::build_filtered(host, pattern, within, |_| true)
    }

    /// Like [`CopyIndex::build`], keeping only copies whose sorted vertex
    /// list passes `keep`.
    pub fn build_filtered(
        host: &Graph,
        pattern: &Graph,
        within: Option<&VertexSet>,
        mut keep: impl FnMut(&[u32]) -> bool,
    ) -> Self {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut found: Vec<(Vec<u32>, Embedding)> = Vec::new();
        let _ = Embedder::new(host, pattern, within).run::<rand_chacha::ChaCha8Rng>(None, |map| {
            let mut key: Vec<u32> = map.iter().map(|&v| v as u32).collect();
            key.sort_unstable();
            if !seen.contains(&key) && keep(&key) {
                seen.insert(key.clone());
                found.push((key, Embedding { map: map.to_vec() }));
            }
            ControlFlow::Continue(())
        });
        found.sort_by(|a, b| a.0.cmp(&b.0));
        let mut incidence = vec![Vec::new(); host.n()];
        for (r, (key, _)) in found.iter().enumerate() {
            for &v in key {
                incidence[v as usize].push(r as u32);
            }
        }
        let (rows, witnesses) = found.into_iter().unzip();
        CopyIndex { n: host.n(), rows, witnesses, incidence }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.rows[r]
    }

    pub fn witness(&self, r: usize) -> &Embedding {
        &self.witnesses[r]
    }

    pub fn rows_through(&self, v: usize) -> &[u32] {
        &self.incidence[v]
    }

    pub fn tiling_of(&self, chosen: &[u32]) -> Tiling {
        let mut t = Tiling::empty(self.n);
        for &r in chosen {
            let ok = t.push(self.witnesses[r as usize].clone());
            debug_assert!(ok, "chosen rows overlap");
        }
        t
    }
}

/// Mutable search state over a [`CopyIndex`]. Vertices outside the target
/// set start out "closed"; choosing a row closes its vertices and kills
/// every row meeting them.
pub(crate) struct CoverState<'a> {
    pub index: &'a CopyIndex,
    closed: Vec<bool>,
    live: Vec<bool>,
    /// Live rows through each vertex.
    count: Vec<u32>,
    killed: Vec<u32>,
    pub chosen: Vec<u32>,
    open: usize,
}

/// Undo point for [`CoverState`].
#[derive(Clone, Copy)]
pub(crate) struct Mark {
    killed: usize,
    chosen: usize,
    closed_vertex: Option<usize>,
}

impl<'a> CoverState<'a> {
    pub fn new(index: &'a CopyIndex, target: Option<&VertexSet>) -> Self {
        let n = index.n;
        let mut closed = vec![false; n];
        if let Some(t) = target {
            for (v, c) in closed.iter_mut().enumerate() {
                *c = !t.contains(v);
            }
        }
        let mut live = vec![true; index.rows.len()];
        for (r, row) in index.rows.iter().enumerate() {
            if row.iter().any(|&v| closed[v as usize]) {
                live[r] = false;
            }
        }
        let mut count = vec![0u32; n];
        for (r, row) in index.rows.iter().enumerate() {
            if live[r] {
                for &v in row {
                    count[v as usize] += 1;
                }
            }
        }
        let open = closed.iter().filter(|c| !**c).count();
        CoverState { index, closed, live, count, killed: Vec::new(), chosen: Vec::new(), open }
    }

    pub fn open(&self) -> usize {
        self.open
    }

    #[cfg(test)]
    pub fn count(&self, v: usize) -> u32 {
        self.count[v]
    }

    pub fn live_rows_through(&self, v: usize) -> impl Iterator<Item = u32> + '_ {
        self.index.incidence[v].iter().copied().filter(|&r| self.live[r as usize])
    }

    fn mark(&self) -> Mark {
        Mark { killed: self.killed.len(), chosen: self.chosen.len(), closed_vertex: None }
    }

    fn kill_through(&mut self, v: usize) {
        for &r in &self.index.incidence[v] {
            if self.live[r as usize] {
                self.live[r as usize] = false;
                self.killed.push(r);
                for &u in &self.index.rows[r as usize] {
                    self.count[u as usize] -= 1;
                }
            }
        }
    }

    pub fn choose(&mut self, r: u32) -> Mark {
        debug_assert!(self.live[r as usize]);
        let m = self.mark();
        self.chosen.push(r);
        for &v in &self.index.rows[r as usize] {
            self.closed[v as usize] = true;
            self.open -= 1;
            self.kill_through(v as usize);
        }
        m
    }

    /// Gives up on covering `v`.
    pub fn exclude(&mut self, v: usize) -> Mark {
        debug_assert!(!self.closed[v]);
        let mut m = self.mark();
        m.closed_vertex = Some(v);
        self.closed[v] = true;
        self.open -= 1;
        self.kill_through(v);
        m
    }

    pub fn undo(&mut self, m: Mark) {
        while self.killed.len() > m.killed {
            let r = self.killed.pop().expect("non-empty");
            self.live[r as usize] = true;
            for &u in &self.index.rows[r as usize] {
                self.count[u as usize] += 1;
            }
        }
        while self.chosen.len() > m.chosen {
            let r = self.chosen.pop().expect("non-empty");
            for &v in &self.index.rows[r as usize] {
                self.closed[v as usize] = false;
                self.open += 1;
            }
        }
        if let Some(v) = m.closed_vertex {
            self.closed[v] = false;
            self.open += 1;
        }
    }

    /// Open vertex with the fewest live rows, lowest index on ties.
    pub fn most_constrained(&self) -> Option<(usize, u32)> {
        (0..self.closed.len())
            .filter(|&v| !self.closed[v])
            .map(|v| (v, self.count[v]))
            .min_by_key(|&(v, c)| (c, v))
    }

    /// Like [`Self::most_constrained`] but ignoring vertices with no live rows.
    pub fn most_constrained_coverable(&self) -> Option<(usize, u32)> {
        (0..self.closed.len())
            .filter(|&v| !self.closed[v] && self.count[v] > 0)
            .map(|v| (v, self.count[v]))
            .min_by_key(|&(v, c)| (c, v))
    }

    pub fn coverable_open(&self) -> usize {
        (0..self.closed.len()).filter(|&v| !self.closed[v] && self.count[v] > 0).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_rows_and_undo() {
        let g = Graph::complete(4);
        let idx = CopyIndex::build(&g, &Graph::complete(3), None);
        assert_eq!(idx.len(), 4);
        let mut st = CoverState::new(&idx, None);
        assert_eq!(st.count(0), 3);
        let m = st.choose(0);
        assert_eq!(st.open(), 1);
        assert_eq!(st.count(3), 0);
        st.undo(m);
        assert_eq!(st.open(), 4);
        assert_eq!(st.count(3), 3);
        let m = st.exclude(2);
        assert_eq!(st.count(0), 1);
        st.undo(m);
        assert_eq!(st.count(0), 3);
    }

    #[test]
    fn target_closes_outside_vertices() {
        let g = Graph::complete(5);
        let idx = CopyIndex::build(&g, &Graph::complete(2), None);
        let t = VertexSet::from_slice(5, &[0, 1]).unwrap();
        let st = CoverState::new(&idx, Some(&t));
        assert_eq!(st.open(), 2);
        assert_eq!(st.count(0), 1);
    }
}
