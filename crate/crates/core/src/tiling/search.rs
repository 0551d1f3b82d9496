use std::time::Instant;

use rand::seq::IndexedRandom;

use super::index::CoverState;
use super::{validate_covers_exactly, validate_perfect, CopyIndex, Tiling, TilingResult, TilingStatus};
use crate::graph::{Graph, VertexSet};
use crate::pattern::Pattern;
use crate::random::Seed;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct PerfectOptions {
    /// Backtracking nodes for the exact phase.
    pub budget: u64,
    /// Randomized greedy attempts before the exact phase.
    pub greedy_passes: usize,
    pub seed: Seed,
    /// A candidate certificate tried first, e.g. one found on a subgraph.
    pub hint: Option<Tiling>,
    /// Tile exactly this set instead of the whole host.
    pub within: Option<VertexSet>,
}

impl PerfectOptions {
    pub fn exact(budget: u64) -> Self {
        PerfectOptions { budget, greedy_passes: 0, seed: Seed(0), hint: None, within: None }
    }
}

enum Flow {
    Found,
    Exhausted,
    Aborted,
}

fn exact_cover(st: &mut CoverState<'_>, nodes: &mut u64, budget: u64) -> Flow {
    if st.open() == 0 {
        return Flow::Found;
    }
    *nodes += 1;
    if *nodes > budget {
        return Flow::Aborted;
    }
    let Some((v, c)) = st.most_constrained() else {
        return Flow::Found;
    };
    if c == 0 {
        return Flow::Exhausted;
    }
    let rows: Vec<u32> = st.live_rows_through(v).collect();
    for r in rows {
        let m = st.choose(r);
        match exact_cover(st, nodes, budget) {
            Flow::Found => return Flow::Found,
            Flow::Aborted => {
                st.undo(m);
                return Flow::Aborted;
            }
            Flow::Exhausted => st.undo(m),
        }
    }
    Flow::Exhausted
}

/// One randomized greedy descent: repeatedly take a random live copy
/// through the most constrained coverable vertex. The result is maximal.
fn greedy_pass(index: &CopyIndex, target: Option<&VertexSet>, seed: Seed) -> Vec<u32> {
    let mut rng = seed.rng();
    let mut st = CoverState::new(index, target);
    while let Some((v, _)) = st.most_constrained_coverable() {
        let rows: Vec<u32> = st.live_rows_through(v).collect();
        let &r = rows.choose(&mut rng).expect("coverable vertex has a live row");
        st.choose(r);
    }
    st.chosen
}

fn best_greedy(index: &CopyIndex, target: Option<&VertexSet>, seed: Seed, passes: usize, stop_at: usize) -> Vec<u32> {
    let mut best: Vec<u32> = Vec::new();
    for i in 0..passes {
        let chosen = greedy_pass(index, target, seed.derive(i as u64));
        if chosen.len() > best.len() {
            best = chosen;
        }
        if best.len() >= stop_at {
            break;
        }
    }
    best
}

/// Decides whether `g` has a perfect `h`-tiling by exhaustive backtracking
/// over copies through the most constrained uncovered vertex.
pub fn perfect_tiling(g: &Graph, h: &Pattern, budget: u64) -> TilingResult {
    perfect_tiling_with(g, h, &PerfectOptions::exact(budget))
}

pub fn perfect_tiling_with(g: &Graph, h: &Pattern, opts: &PerfectOptions) -> TilingResult {
    let start = Instant::now();
    let done = |status, nodes| TilingResult { status, nodes_explored: nodes, elapsed: start.elapsed() };
    let target_size = opts.within.as_ref().map_or(g.n(), VertexSet::len);
    let k = h.order();
    if !target_size.is_multiple_of(k) {
        return done(TilingStatus::NoneExists, 0);
    }
    let valid = |t: &Tiling| match &opts.within {
        Some(w) => validate_covers_exactly(g, h.graph(), t, w).is_ok(),
        None => validate_perfect(g, h.graph(), t).is_ok(),
    };
    if let Some(hint) = &opts.hint {
        if hint.covered.universe() == g.n() && valid(hint) {
            return done(TilingStatus::Found(hint.clone()), 0);
        }
    }
    if target_size == 0 {
        return done(TilingStatus::Found(Tiling::empty(g.n())), 0);
    }
    let index = CopyIndex::build(g, h.graph(), opts.within.as_ref());
    let want = target_size / k;
    if opts.greedy_passes > 0 {
        let chosen = best_greedy(&index, opts.within.as_ref(), opts.seed, opts.greedy_passes, want);
        if chosen.len() == want {
            let t = index.tiling_of(&chosen);
            debug_assert!(valid(&t));
            return done(TilingStatus::Found(t), 0);
        }
    }
    let mut st = CoverState::new(&index, opts.within.as_ref());
    let mut nodes = 0;
    match exact_cover(&mut st, &mut nodes, opts.budget) {
        Flow::Found => {
            let t = index.tiling_of(&st.chosen);
            assert!(valid(&t), "exact search produced an invalid certificate");
            done(TilingStatus::Found(t), nodes)
        }
        Flow::Exhausted => done(TilingStatus::NoneExists, nodes),
        Flow::Aborted => done(TilingStatus::Unknown, nodes),
    }
}

/// Rows of `index` partitioning `target`: greedy passes first, then
/// budgeted exact search. Also returns the nodes explored.
pub(crate) fn cover_target(index: &CopyIndex, target: &VertexSet, seed: Seed, passes: usize, budget: u64) -> (Option<Vec<u32>>, u64) {
    let k = index.row(0).len().max(1);
    let want = target.len() / k;
    if index.is_empty() {
        return (target.is_empty().then(Vec::new), 0);
    }
    let chosen = best_greedy(index, Some(target), seed, passes, want);
    if chosen.len() == want && chosen.len() * k == target.len() {
        return (Some(chosen), 0);
    }
    let mut st = CoverState::new(index, Some(target));
    let mut nodes = 0;
    match exact_cover(&mut st, &mut nodes, budget) {
        Flow::Found => (Some(st.chosen), nodes),
        _ => (None, nodes),
    }
}

/// Best of `passes` randomized maximal tilings.
pub fn max_tiling_greedy(g: &Graph, h: &Pattern, seed: Seed, passes: usize) -> Tiling {
    let index = CopyIndex::build(g, h.graph(), None);
    let chosen = best_greedy(&index, None, seed, passes.max(1), g.n() / h.order());
    index.tiling_of(&chosen)
}

#[derive(Clone, Debug)]
pub struct MaxTiling {
    /// Number of copies.
    pub size: usize,
    pub tiling: Tiling,
    /// Whether the search completed, proving `size` is the maximum.
    pub exact: bool,
    pub nodes_explored: u64,
}

struct BranchAndBound {
    k: usize,
    budget: u64,
    nodes: u64,
    best: Vec<u32>,
    aborted: bool,
}

impl BranchAndBound {
    fn run(&mut self, st: &mut CoverState<'_>) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let size = st.chosen.len();
        if size + st.coverable_open() / self.k <= self.best.len() {
            return;
        }
        let Some((v, _)) = st.most_constrained_coverable() else {
            if size > self.best.len() {
                self.best = st.chosen.clone();
            }
            return;
        };
        let rows: Vec<u32> = st.live_rows_through(v).collect();
        for r in rows {
            let m = st.choose(r);
            self.run(st);
            st.undo(m);
            if self.aborted {
                return;
            }
        }
        let m = st.exclude(v);
        self.run(st);
        st.undo(m);
    }
}

/// Maximum tiling by branch and bound, seeded with a greedy incumbent.
pub fn max_tiling_exact(g: &Graph, h: &Pattern, budget: u64) -> MaxTiling {
    max_tiling_in(g, h, None, budget, Seed(0))
}

pub(crate) fn max_tiling_in(g: &Graph, h: &Pattern, within: Option<&VertexSet>, budget: u64, seed: Seed) -> MaxTiling {
    let index = CopyIndex::build(g, h.graph(), within);
    let target = within.map_or(g.n(), VertexSet::len);
    let incumbent = best_greedy(&index, within, seed, 8, target / h.order());
    let mut bb = BranchAndBound { k: h.order(), budget, nodes: 0, best: incumbent, aborted: false };
    let mut st = CoverState::new(&index, within);
    bb.run(&mut st);
    let tiling = index.tiling_of(&bb.best);
    MaxTiling { size: bb.best.len(), tiling, exact: !bb.aborted, nodes_explored: bb.nodes }
}

/// Whether some tiling covering at least `(1 - eps)|g|` vertices was found.
/// One-sided: `false` may only mean the search did not find one.
pub fn almost_perfect_coverage(g: &Graph, h: &Pattern, eps: Rational, budget: u64) -> bool {
    let need = |covered: usize| {
        // covered >= (1 - eps) n  <=>  covered * den >= (den - num) * n
        covered as i128 * eps.denom() as i128 >= (eps.denom() - eps.numer()) as i128 * g.n() as i128
    };
    let greedy = max_tiling_greedy(g, h, Seed(0), 16);
    if need(greedy.covered_count()) {
        return true;
    }
    need(max_tiling_exact(g, h, budget).tiling.covered_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn found(r: &TilingResult) -> Option<&Tiling> {
        match &r.status {
            TilingStatus::Found(t) => Some(t),
            _ => None,
        }
    }

    #[test]
    fn perfect_examples() {
        let k3 = Pattern::clique(3);
        let r = perfect_tiling(&Graph::complete(6), &k3, 1000);
        assert_eq!(found(&r).unwrap().len(), 2);
        let r = perfect_tiling(&named::complete_bipartite(3, 9), &k3, 1000);
        assert_eq!(r.status, TilingStatus::NoneExists);
        let r = perfect_tiling(&named::cycle(6), &Pattern::clique(2), 1000);
        assert_eq!(found(&r).unwrap().len(), 3);
        let r = perfect_tiling(&Graph::complete(7), &k3, 1000);
        assert_eq!(r.status, TilingStatus::NoneExists, "divisibility");
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        // Two disjoint K5's: no perfect K3-tiling, but the search must branch.
        let g = Graph::complete(5).union(&Graph::empty(5)).unwrap();
        let two = Graph::from_edge_list(
            12,
            g.edges().chain(Graph::complete(7).edges().map(|(u, v)| (u + 5, v + 5))),
        )
        .unwrap();
        let r = perfect_tiling(&two, &Pattern::clique(3), 1);
        assert_eq!(r.status, TilingStatus::Unknown);
        let r = perfect_tiling(&two, &Pattern::clique(3), 1_000_000);
        assert_eq!(r.status, TilingStatus::NoneExists);
    }

    #[test]
    fn hint_is_used_when_valid() {
        let g = Graph::complete(6);
        let k3 = Pattern::clique(3);
        let hint = found(&perfect_tiling(&g, &k3, 100)).unwrap().clone();
        let opts = PerfectOptions { hint: Some(hint.clone()), ..PerfectOptions::exact(0) };
        let r = perfect_tiling_with(&g, &k3, &opts);
        assert_eq!(r.status, TilingStatus::Found(hint));
        assert_eq!(r.nodes_explored, 0);
    }

    #[test]
    fn within_restricts_target() {
        let g = Graph::complete(7);
        let w = VertexSet::from_slice(7, &[0, 2, 3, 5, 6, 1]).unwrap();
        let opts = PerfectOptions { within: Some(w.clone()), ..PerfectOptions::exact(100) };
        let r = perfect_tiling_with(&g, &Pattern::clique(3), &opts);
        assert_eq!(found(&r).unwrap().covered, w);
    }

    #[test]
    fn greedy_examples() {
        let k3 = Pattern::clique(3);
        assert_eq!(max_tiling_greedy(&Graph::complete(6), &k3, Seed(1), 1).covered_count(), 6);
        assert!(max_tiling_greedy(&named::cycle(8), &k3, Seed(1), 4).is_empty());
    }

    #[test]
    fn exact_max_examples() {
        let k3 = Pattern::clique(3);
        let m = max_tiling_exact(&named::petersen(), &k3, 10_000);
        assert_eq!((m.size, m.exact), (0, true));
        let m = max_tiling_exact(&Graph::complete(7), &k3, 10_000);
        assert_eq!((m.size, m.exact), (2, true));
    }

    #[test]
    fn almost_perfect_examples() {
        let k3 = Pattern::clique(3);
        let eps = Rational::new(1, 10);
        assert!(almost_perfect_coverage(&Graph::complete(6), &k3, eps, 1000));
        assert!(!almost_perfect_coverage(&Graph::empty(9), &k3, eps, 1000));
    }
}
