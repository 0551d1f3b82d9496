use std::collections::BTreeMap;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{CopyKey, Embedding};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::Pattern;

/// Backtracking enumeration of (not necessarily induced) embeddings of a
/// template into a host, with optional per-template-vertex domains.
pub struct Embedder<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    /// For each position in `order`, the earlier positions adjacent to it.
    back_edges: Vec<Vec<usize>>,
    domains: Vec<FixedBitSet>,
}

impl<'a> Embedder<'a> {
    /// Every template vertex may map anywhere in `within` (all of the host
    /// when `None`).
    pub fn new(host: &'a Graph, pattern: &'a Graph, within: Option<&VertexSet>) -> Self {
        let mut all = FixedBitSet::with_capacity(host.n());
        match within {
            Some(w) => all.union_with(w.bits()),
            None => all.insert_range(..),
        }
        all.grow(host.n());
        let domains = vec![all; pattern.n()];
        let mut e = Embedder { host, pattern, order: Vec::new(), back_edges: Vec::new(), domains };
        e.plan(None);
        e
    }

    /// Restricts template vertex `i` to `allowed`.
    pub fn restrict(&mut self, i: usize, allowed: &FixedBitSet) -> &mut Self {
        self.domains[i].intersect_with(allowed);
        self
    }

    /// Pins template vertex `i` to host vertex `v`, and starts the search there.
    pub fn pin(&mut self, i: usize, v: usize) -> &mut Self {
        let keep = self.domains[i].contains(v);
        self.domains[i].clear();
        if keep {
            self.domains[i].insert(v);
        }
        self.plan(Some(i));
        self
    }

    /// Orders template vertices so each one (after the first) has as many
    /// already-placed neighbours as possible.
    fn plan(&mut self, first: Option<usize>) {
        let h = self.pattern;
        let k = h.n();
        let mut placed = vec![false; k];
        let mut order = Vec::with_capacity(k);
        while order.len() < k {
            let next = match (order.is_empty(), first) {
                (true, Some(f)) => f,
                _ => (0..k)
                    .filter(|&v| !placed[v])
                    .max_by_key(|&v| {
                        let links = h.neighbors(v).filter(|&u| placed[u]).count();
                        (links, h.deg(v), std::cmp::Reverse(v))
                    })
                    .expect("unplaced vertex remains"),
            };
            placed[next] = true;
            order.push(next);
        }
        let pos: Vec<usize> = {
            let mut p = vec![0; k];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        self.back_edges = order
            .iter()
            .enumerate()
            .map(|(i, &v)| h.neighbors(v).map(|u| pos[u]).filter(|&j| j < i).collect())
            .collect();
        self.order = order;
    }

    /// Calls `visit` with each embedding (`map[i]` = image of vertex `i`)
    /// until it breaks. With `rng`, candidates are tried in random order.
    pub fn run<R: Rng + ?Sized>(
        &self,
        mut rng: Option<&mut R>,
        mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let k = self.pattern.n();
        if k == 0 {
            return visit(&[]);
        }
        let mut images = vec![usize::MAX; k];
        let mut used = FixedBitSet::with_capacity(self.host.n());
        self.step(0, &mut images, &mut used, &mut rng, &mut visit)
    }

    fn step<R: Rng + ?Sized>(
        &self,
        depth: usize,
        images: &mut [usize],
        used: &mut FixedBitSet,
        rng: &mut Option<&mut R>,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let tv = self.order[depth];
        let mut cand = self.domains[tv].clone();
        cand.difference_with(used);
        for &j in &self.back_edges[depth] {
            cand.intersect_with(self.host.adjacency(images[self.order[j]]));
        }
        let mut list: Vec<usize> = cand.ones().collect();
        if let Some(r) = rng.as_deref_mut() {
            list.shuffle(r);
        }
        for v in list {
            images[tv] = v;
            if depth + 1 == self.order.len() {
                visit(images)?;
            } else {
                used.insert(v);
                let flow = self.step(depth + 1, images, used, rng, visit);
                used.set(v, false);
                flow?;
            }
        }
        images[tv] = usize::MAX;
        ControlFlow::Continue(())
    }
}

fn check_args(g: &Graph, within: Option<&VertexSet>, through: Option<usize>) -> Result<()> {
    if let Some(w) = within {
        if let Some(v) = w.iter().find(|&v| v >= g.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if let Some(t) = through {
        if t >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: t, n: g.n() });
        }
        if within.is_some_and(|w| !w.contains(t)) {
            return Err(Error::InvalidArgument(format!("through-vertex {t} is not in the restricting set")));
        }
    }
    Ok(())
}

/// One embedding per distinct copy (same image vertices and image edges),
/// sorted by copy key. `within` restricts the copies to a vertex set and
/// `through` to copies containing a vertex.
pub fn enumerate_copies(
    g: &Graph,
    h: &Pattern,
    within: Option<&VertexSet>,
    through: Option<usize>,
) -> Result<Vec<Embedding>> {
    check_args(g, within, through)?;
    let pattern = h.graph();
    let mut found: BTreeMap<CopyKey, Embedding> = BTreeMap::new();
    let mut record = |map: &[usize]| {
        let e = Embedding { map: map.to_vec() };
        found.entry(e.copy_key(pattern)).or_insert(e);
        ControlFlow::Continue(())
    };
    match through {
        None => {
            let _ = Embedder::new(g, pattern, within).run::<rand_chacha::ChaCha8Rng>(None, &mut record);
        }
        Some(t) => {
            for role in 0..pattern.n() {
                let mut emb = Embedder::new(g, pattern, within);
                emb.pin(role, t);
                let _ = emb.run::<rand_chacha::ChaCha8Rng>(None, &mut record);
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Some copy of `pattern` inside `within` and through `through`, trying
/// candidates in random order.
pub fn find_copy<R: Rng + ?Sized>(
    g: &Graph,
    pattern: &Graph,
    within: &VertexSet,
    through: Option<usize>,
    rng: &mut R,
) -> Option<Embedding> {
    let mut hit = None;
    let mut take = |map: &[usize]| {
        hit = Some(Embedding { map: map.to_vec() });
        ControlFlow::Break(())
    };
    match through {
        None => {
            let _ = Embedder::new(g, pattern, Some(within)).run(Some(&mut *rng), &mut take);
        }
        Some(t) => {
            let mut roles: Vec<usize> = (0..pattern.n()).collect();
            roles.shuffle(rng);
            for role in roles {
                let mut emb = Embedder::new(g, pattern, Some(within));
                emb.pin(role, t);
                if emb.run(Some(&mut *rng), &mut take).is_break() {
                    break;
                }
            }
        }
    }
    hit
}
