use std::ops::ControlFlow;

use itertools::Itertools;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hsets::{common_nbhd, is_good};
use super::matching::{hall_perfect_matching, max_matching, HallOutcome};
use super::pair::certified_super_regular_pair;
use super::sample_subset;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::Pattern;
use crate::random::Seed;
use crate::rational::Rational;
use crate::tiling::search::cover_target;
use crate::tiling::{
    find_copy, perfect_tiling_with, validate_covers_exactly, CopyIndex, Embedder, Embedding, PerfectOptions, Tiling,
    TilingStatus,
};

/// Two edge layers on a common vertex set with disjoint sides `S`, `T`.
#[derive(Clone, Debug)]
pub struct PairInstance {
    pub cross: Graph,
    pub random: Graph,
    pub s: VertexSet,
    pub t: VertexSet,
}

impl PairInstance {
    pub fn new(cross: Graph, random: Graph, s: VertexSet, t: VertexSet) -> Result<Self> {
        if cross.n() != random.n() {
            return Err(Error::VertexCountMismatch(cross.n(), random.n()));
        }
        if let Some(v) = s.iter().chain(t.iter()).find(|&v| v >= cross.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: cross.n() });
        }
        if !s.is_disjoint(&t) {
            return Err(Error::InvalidArgument("S and T must be disjoint".into()));
        }
        Ok(PairInstance { cross, random, s, t })
    }

    /// Union of both layers.
    pub fn combined(&self) -> Graph {
        self.cross.union(&self.random).expect("layers share a vertex count")
    }
}

/// `S = 0..s`, `T = s..s+t`; the cross layer is a certified
/// `(eps, d)`-super-regular pair and the random layer has each pair inside
/// `S` and inside `T` independently with probability `p`.
pub fn synthetic_pair_instance(s: usize, t: usize, eps: Rational, d: Rational, p: f64, seed: Seed) -> Result<PairInstance> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")));
    }
    let n = s + t;
    let cross = certified_super_regular_pair(s, t, eps, d, seed.derive(0))?;
    let layer = seed.derive(1);
    let inside = |lo: usize, hi: usize| (lo..hi).tuple_combinations().filter(|&(u, v)| layer.pair_uniform(u, v) < p);
    let random = Graph::from_edge_list(n, inside(0, s).chain(inside(s, n)))?;
    PairInstance::new(
        cross,
        random,
        VertexSet::from_iter_checked(n, 0..s)?,
        VertexSet::from_iter_checked(n, s..n)?,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionParams {
    pub eps5: Rational,
    pub phi: Rational,
    pub d1: Rational,
    /// Node budget of the exact search (staged sub-cover and fallback).
    pub budget: u64,
    /// Staged attempts before falling back.
    pub retries: usize,
}

impl Default for CompletionParams {
    fn default() -> Self {
        CompletionParams {
            eps5: Rational::new(1, 5),
            phi: Rational::new(1, 50),
            d1: Rational::new(1, 10),
            budget: 200_000,
            retries: 20,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompletionRoute {
    /// Random-layer matching plus a Hall matching (single edge template).
    Matching,
    /// The staged absorption procedure.
    Staged,
    /// Exact search restricted to `S ∪ T`.
    Fallback,
}

#[derive(Clone, Debug)]
pub struct PairCompletion {
    pub status: TilingStatus,
    pub route: Option<CompletionRoute>,
    /// Staged or matching attempts made.
    pub attempts: usize,
    pub nodes_explored: u64,
}

struct Ctx<'a> {
    inst: &'a PairInstance,
    g: Graph,
    h: &'a Pattern,
    /// The template minus `x`.
    hp: Graph,
    x: usize,
    params: &'a CompletionParams,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.g.n()
    }

    /// A copy of `h` through `v` using otherwise only `pool`.
    fn copy_through<R: Rng>(&self, v: usize, pool: &VertexSet, rng: &mut R) -> Option<Embedding> {
        let mut within = pool.clone();
        within.insert(v);
        find_copy(&self.g, self.h.graph(), &within, Some(v), rng)
    }

    /// Extends a copy of `h - x` by `v` in role `x`.
    fn lift(&self, v: usize, part: &Embedding) -> Embedding {
        let map = (0..self.h.order())
            .map(|j| match j.cmp(&self.x) {
                std::cmp::Ordering::Equal => v,
                std::cmp::Ordering::Less => part.map[j],
                std::cmp::Ordering::Greater => part.map[j - 1],
            })
            .collect();
        Embedding { map }
    }

    /// Places one copy through each of `targets`, others drawn from `pool`.
    fn absorb<R: Rng>(&self, targets: &[usize], pool: &mut VertexSet, tiling: &mut Tiling, rng: &mut R) -> Option<()> {
        for &v in targets {
            let e = self.copy_through(v, pool, rng)?;
            e.map.iter().for_each(|&u| pool.remove(u));
            if !tiling.push(e) {
                return None;
            }
        }
        Some(())
    }
}

fn rat(k: usize) -> Rational {
    Rational::from_integer(k as i64)
}

fn pick<R: Rng>(rng: &mut R, from: &VertexSet, k: usize) -> VertexSet {
    let items = from.to_vec();
    VertexSet::from_slice(from.universe(), &sample_subset(rng, &items, k.min(items.len()))).expect("subset")
}

/// The single-edge route: match `|T| - |S|` vertices of `T` among
/// themselves in the random layer, then Hall-match `S` into the rest.
fn matching_route<R: Rng>(ctx: &Ctx<'_>, s: &VertexSet, t: &VertexSet, rng: &mut R) -> Option<Tiling> {
    let surplus = t.len() - s.len();
    let mut order = t.to_vec();
    order.shuffle(rng);
    let mut rest = t.clone();
    let mut tiling = Tiling::empty(ctx.n());
    for u in order {
        if tiling.len() * 2 == surplus {
            break;
        }
        if !rest.contains(u) {
            continue;
        }
        let nbrs: Vec<usize> = ctx.inst.random.neighbors(u).filter(|&v| rest.contains(v)).collect();
        if let Some(&v) = nbrs.choose(rng) {
            rest.remove(u);
            rest.remove(v);
            tiling.push(Embedding { map: vec![u, v] });
        }
    }
    if tiling.len() * 2 != surplus {
        return None;
    }
    match hall_perfect_matching(&ctx.g, s, &rest).ok()? {
        HallOutcome::Matching { pairs } => {
            for (u, v) in pairs {
                tiling.push(Embedding { map: vec![u, v] });
            }
            Some(tiling)
        }
        HallOutcome::Violator { .. } => None,
    }
}

/// Copies of `hp` inside `t` whose vertex sets are excellent with respect
/// to `s`, chosen disjointly at random.
fn excellent_copies<R: Rng>(ctx: &Ctx<'_>, s: &VertexSet, t: &VertexSet, count: usize, rng: &mut R) -> Option<Vec<Embedding>> {
    let mut free = t.clone();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut hit = None;
        let _ = Embedder::new(&ctx.inst.random, &ctx.hp, Some(&free)).run(Some(&mut *rng), |map| {
            let common = common_nbhd(&ctx.inst.cross, map, s).count_ones(..);
            if is_good(common, s.len(), ctx.params.d1) {
                hit = Some(Embedding { map: map.to_vec() });
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        let e = hit?;
        e.map.iter().for_each(|&v| free.remove(v));
        out.push(e);
    }
    Some(out)
}

/// Left-to-right adjacency of the auxiliary graph: `x` sees a copy when it
/// is adjacent to all of the copy's vertices.
fn aux_adjacency(ctx: &Ctx<'_>, xs: &[usize], copies: &[Embedding]) -> Vec<Vec<usize>> {
    xs.iter()
        .map(|&x| (0..copies.len()).filter(|&j| copies[j].map.iter().all(|&v| ctx.g.has_edge(x, v))).collect())
        .collect()
}

fn perfectly_matchable(adj: &[Vec<usize>], right: usize) -> bool {
    max_matching(adj, right).iter().all(Option::is_some)
}

/// The staged procedure for `|H| >= 3` with `|T| >= |S|`.
fn staged_route<R: Rng>(ctx: &Ctx<'_>, s: &VertexSet, t: &VertexSet, rng: &mut R) -> Option<Tiling> {
    let p = ctx.params;
    let k = ctx.h.order();
    let h = k - 1;
    let big_n = Rational::new((s.len() + t.len()) as i64, 2);
    let q = ((p.phi * big_n).ceil().max(1)) as usize;
    let z = (p.phi * p.eps5 * big_n).floor().max(0) as usize;
    if z >= q || q > s.len() {
        return None;
    }
    let m_count = q - z;

    // Reserved copies M' of h - x inside T, and the absorbing set X in S.
    let reserved = excellent_copies(ctx, s, t, m_count, rng)?;
    let seen: Vec<usize> = s.iter().filter(|&x| !aux_adjacency(ctx, &[x], &reserved)[0].is_empty()).collect();
    if seen.len() < q {
        return None;
    }
    let mut xset = None;
    for _ in 0..p.retries.max(1) {
        let cand = sample_subset(rng, &seen, q);
        let robust = cand.iter().copied().combinations(m_count).all(|sub| perfectly_matchable(&aux_adjacency(ctx, &sub, &reserved), m_count));
        if robust {
            xset = Some(cand);
            break;
        }
    }
    let q_set = VertexSet::from_slice(ctx.n(), &xset?).expect("subset of S");

    let mut t_rest = t.clone();
    reserved.iter().flat_map(|e| e.map.iter()).for_each(|&v| t_rest.remove(v));

    // Cover (S \ Q) ∪ T' and exactly z vertices of Q.
    let tcount = z / h;
    let zp = z - h * tcount;
    let mut t1: Vec<usize> = t_rest
        .iter()
        .filter(|&y| !is_good(q_set.intersection_count(ctx.inst.cross.adjacency(y)), q_set.len(), p.d1))
        .collect();
    let mut spare: Vec<usize> = t_rest.iter().filter(|v| !t1.contains(v)).collect();
    spare.shuffle(rng);
    while (t_rest.len() - t1.len()).checked_sub(tcount)? % k != 0 {
        t1.push(spare.pop()?);
    }
    let mut tiling = Tiling::empty(ctx.n());
    let mut s_pool = s.difference(&q_set);
    ctx.absorb(&t1, &mut s_pool, &mut tiling, rng)?;

    let mut t_after = t_rest.clone();
    t1.iter().for_each(|&v| t_after.remove(v));
    let t2 = pick(rng, &t_after, tcount);
    let q_prime = pick(rng, &q_set, zp);
    let s1 = s_pool.union(&q_prime);
    let t1p = t_after.difference(&t2);

    let t2_small = (p.phi * p.eps5 * p.d1 * big_n / rat(10 * h * h)).floor().max(0) as usize;
    let den = (h * h - 1) as i64;
    let a_num = (h * s1.len()) as i64 - t1p.len() as i64;
    let b_num = (h * t1p.len()) as i64 - s1.len() as i64;
    if a_num < 0 || b_num < 0 || a_num % den != 0 || b_num % den != 0 {
        return None;
    }
    let (a, b) = ((a_num / den) as usize, (b_num / den) as usize);
    let b = b.checked_sub(t2_small)?;

    // Tiling T2: a S-copies and b T-copies inside S' ∪ T'.
    let mut s_left = s1.clone();
    let mut t_left = t1p.clone();
    if t2_small == 0 {
        let target = s1.union(&t1p);
        let index = CopyIndex::build_filtered(&ctx.g, ctx.h.graph(), Some(&target), |row| {
            let in_t = row.iter().filter(|&&v| t.contains(v as usize)).count();
            in_t == 1 || in_t == h
        });
        let (rows, _) = cover_target(&index, &target, Seed(rng.random()), 4, p.budget);
        for r in rows? {
            tiling.push(index.witness(r as usize).clone());
        }
        s_left = VertexSet::new(ctx.n());
        t_left = VertexSet::new(ctx.n());
    } else {
        let mut kinds: Vec<bool> = std::iter::repeat_n(true, a).chain(std::iter::repeat_n(false, b)).collect();
        kinds.shuffle(rng);
        for s_copy in kinds {
            let (pivots, pool) = if s_copy { (&mut t_left, &mut s_left) } else { (&mut s_left, &mut t_left) };
            let mut order = pivots.to_vec();
            order.shuffle(rng);
            let e = order.into_iter().find_map(|v| ctx.copy_through(v, pool, rng))?;
            for &u in &e.map {
                pivots.remove(u);
                pool.remove(u);
            }
            tiling.push(e);
        }
    }

    // Tiling T3: each leftover vertex of S' with h - x inside T2.
    let mut t2_pool = t2.clone();
    ctx.absorb(&s_left.to_vec(), &mut t2_pool, &mut tiling, rng)?;
    // Tiling T4: the remaining vertices of T with h - x inside Q \ Q'.
    let mut q_pool = q_set.difference(&q_prime);
    let remaining: Vec<usize> = t_left.union(&t2_pool).to_vec();
    ctx.absorb(&remaining, &mut q_pool, &mut tiling, rng)?;

    // Close with a perfect matching between the unused part of Q and M'.
    let x_left: Vec<usize> = q_set.iter().filter(|&v| !tiling.covered.contains(v)).collect();
    if x_left.len() != m_count {
        return None;
    }
    let adj = aux_adjacency(ctx, &x_left, &reserved);
    let mate = max_matching(&adj, m_count);
    for (i, m) in mate.iter().enumerate() {
        if !tiling.push(ctx.lift(x_left[i], &reserved[(*m)?])) {
            return None;
        }
    }
    Some(tiling)
}

/// A perfect `h`-tiling of `S ∪ T` in the union of both layers, built by
/// the staged procedure (a matching argument for a single edge). After
/// `params.retries` failed attempts the exact solver restricted to
/// `S ∪ T` is used and the route is reported as a fallback.
pub fn complete_pair_tiling(inst: &PairInstance, h: &Pattern, params: &CompletionParams, seed: Seed) -> Result<PairCompletion> {
    let target = inst.s.union(&inst.t);
    if !target.len().is_multiple_of(h.order()) {
        return Err(Error::Divisibility { size: target.len(), order: h.order() });
    }
    for (name, r) in [("eps5", params.eps5), ("phi", params.phi), ("d1", params.d1)] {
        if r <= Rational::zero() || r >= Rational::one() {
            return Err(Error::InvalidArgument(format!("{name} = {r} must lie in (0, 1)")));
        }
    }
    let (hp, x) = h.minus_max_degree_vertex();
    let ctx = Ctx { inst, g: inst.combined(), h, hp, x, params };
    let (s, t) = if inst.s.len() <= inst.t.len() { (&inst.s, &inst.t) } else { (&inst.t, &inst.s) };
    let single_edge = h.order() == 2;
    let route = if single_edge { CompletionRoute::Matching } else { CompletionRoute::Staged };
    let mut attempts = 0;
    if !s.is_empty() {
        for i in 0..params.retries.max(1) {
            attempts += 1;
            let mut rng: ChaCha8Rng = seed.derive(i as u64).rng();
            let built = if single_edge { matching_route(&ctx, s, t, &mut rng) } else { staged_route(&ctx, s, t, &mut rng) };
            if let Some(tiling) = built {
                validate_covers_exactly(&ctx.g, h.graph(), &tiling, &target).map_err(Error::Postcondition)?;
                return Ok(PairCompletion { status: TilingStatus::Found(tiling), route: Some(route), attempts, nodes_explored: 0 });
            }
        }
    }
    let opts = PerfectOptions {
        budget: params.budget,
        greedy_passes: 8,
        seed: seed.derive(u64::MAX),
        hint: None,
        within: Some(target),
    };
    let res = perfect_tiling_with(&ctx.g, h, &opts);
    Ok(PairCompletion {
        route: matches!(res.status, TilingStatus::Found(_)).then_some(CompletionRoute::Fallback),
        status: res.status,
        attempts,
        nodes_explored: res.nodes_explored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn found(c: &PairCompletion) -> &Tiling {
        match &c.status {
            TilingStatus::Found(t) => t,
            other => panic!("expected a tiling, got {}", other.label()),
        }
    }

    #[test]
    fn single_edge_complete_cross_layer() {
        let inst = PairInstance::new(
            named::complete_bipartite(4, 4),
            Graph::empty(8),
            VertexSet::from_iter_checked(8, 0..4).unwrap(),
            VertexSet::from_iter_checked(8, 4..8).unwrap(),
        )
        .unwrap();
        let r = complete_pair_tiling(&inst, &Pattern::clique(2), &CompletionParams::default(), Seed(1)).unwrap();
        assert_eq!(r.route, Some(CompletionRoute::Matching));
        assert_eq!(found(&r).len(), 4);
    }

    #[test]
    fn single_edge_uses_random_edge_for_surplus() {
        // S = {0,1,2}, T = {3..7}; the only T-internal edge is 6-7.
        let cross = Graph::from_edge_list(8, (0..3).flat_map(|u| (3..8).map(move |v| (u, v)))).unwrap();
        let random = Graph::from_edge_list(8, [(6, 7)]).unwrap();
        let inst = PairInstance::new(
            cross,
            random,
            VertexSet::from_iter_checked(8, 0..3).unwrap(),
            VertexSet::from_iter_checked(8, 3..8).unwrap(),
        )
        .unwrap();
        let r = complete_pair_tiling(&inst, &Pattern::clique(2), &CompletionParams::default(), Seed(1)).unwrap();
        let t = found(&r);
        assert!(t.embeddings.iter().any(|e| e.vertices() == vec![6, 7]));
        assert_eq!(r.route, Some(CompletionRoute::Matching));
    }

    #[test]
    fn divisibility_is_checked() {
        let inst = synthetic_pair_instance(4, 3, Rational::new(1, 4), Rational::new(2, 5), 0.5, Seed(0)).unwrap();
        let err = complete_pair_tiling(&inst, &Pattern::clique(3), &CompletionParams::default(), Seed(0)).unwrap_err();
        assert!(matches!(err, Error::Divisibility { size: 7, order: 3 }));
    }

    #[test]
    fn triangle_staged_route() {
        let eps = Rational::new(1, 20);
        let d = Rational::new(2, 5);
        let inst = synthetic_pair_instance(30, 30, eps, d, 0.4, Seed(5)).unwrap();
        let r = complete_pair_tiling(&inst, &Pattern::clique(3), &CompletionParams::default(), Seed(5)).unwrap();
        let t = found(&r);
        assert_eq!(t.len(), 20);
        assert!(r.route.is_some());
    }
}
