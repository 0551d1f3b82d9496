//! Density invariants of a template graph and its balancedness class.
//!
//! Everything here works by enumerating vertex subsets. For a fixed vertex
//! set the induced subgraph has the most edges, so the maximum of
//! `e(H')/(|H'|-1)` over all subgraphs is attained by an induced one, and
//! among density maximizers through `v` the induced ones also minimise the
//! edge count (a non-induced maximizer would have the same edge count as
//! the induced subgraph on its vertices). Both facts are exercised by the
//! brute-force tests.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// Largest template handled by subset enumeration.
pub const MAX_PATTERN_ORDER: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Category {
    StrictlyBalanced,
    BalancedNotStrictly,
    VertexBalancedNotBalanced,
    NonVertexBalanced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub d: Rational,
    pub d_star: Rational,
    pub d_star_v: BTreeMap<usize, Rational>,
    pub s_v: BTreeMap<usize, usize>,
    pub s: usize,
    pub category: Category,
    pub witness_subset: VertexSet,
    pub strictly_balanced: bool,
    pub balanced: bool,
    pub vertex_balanced: bool,
    /// `s` is only meaningful for vertex-balanced templates; it is still
    /// reported (as the maximum of `s_v`) otherwise.
    pub s_in_conjecture_scope: bool,
}

/// Edge counts of every induced subgraph, indexed by vertex bitmask.
struct SubsetTable {
    n: usize,
    edges: Vec<u32>,
}

impl SubsetTable {
    fn build(h: &Graph) -> Result<Self> {
        let n = h.n();
        if n < 2 {
            return Err(Error::InvalidArgument(format!("template needs at least 2 vertices, got {n}")));
        }
        if n > MAX_PATTERN_ORDER {
            return Err(Error::InvalidArgument(format!(
                "template has {n} vertices; subset enumeration supports at most {MAX_PATTERN_ORDER}"
            )));
        }
        let adj: Vec<u32> = (0..n)
            .map(|v| h.neighbors(v).fold(0u32, |m, u| m | 1 << u))
            .collect();
        let mut edges = vec![0u32; 1 << n];
        for mask in 1usize..1 << n {
            let v = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            edges[mask] = edges[rest] + (adj[v] & rest as u32).count_ones();
        }
        Ok(SubsetTable { n, edges })
    }

    fn density(&self, mask: usize) -> Rational {
        let k = mask.count_ones() as i64;
        Rational::new(self.edges[mask] as i64, k - 1)
    }

    /// Masks with at least two vertices.
    fn masks(&self) -> impl Iterator<Item = usize> {
        (1usize..1 << self.n).filter(|m| m.count_ones() >= 2)
    }

    fn full(&self) -> usize {
        (1 << self.n) - 1
    }
}

fn mask_members(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Tie-break for witnesses: fewer vertices first, then lexicographic.
fn witness_before(a: usize, b: usize) -> bool {
    let (ka, kb) = (a.count_ones(), b.count_ones());
    ka < kb || (ka == kb && mask_members(a) < mask_members(b))
}

/// `e(h) / (|h| - 1)`.
pub fn density(h: &Graph) -> Result<Rational> {
    if h.n() < 2 {
        return Err(Error::InvalidArgument(format!("density needs at least 2 vertices, got {}", h.n())));
    }
    Ok(Rational::new(h.edge_count() as i64, h.n() as i64 - 1))
}

/// `d*(h)` together with a maximizing vertex set.
pub fn max_density(h: &Graph) -> Result<(Rational, VertexSet)> {
    let table = SubsetTable::build(h)?;
    let (best, mask) = max_over(&table, table.masks());
    Ok((best, VertexSet::from_slice(h.n(), &mask_members(mask))?))
}

fn max_over(table: &SubsetTable, masks: impl Iterator<Item = usize>) -> (Rational, usize) {
    let mut best: Option<(Rational, usize)> = None;
    for m in masks {
        let d = table.density(m);
        best = match best {
            None => Some((d, m)),
            Some((bd, bm)) if d > bd || (d == bd && witness_before(m, bm)) => Some((d, m)),
            keep => keep,
        };
    }
    best.expect("at least one subset of size >= 2")
}

fn check_vertex(h: &Graph, v: usize) -> Result<()> {
    if v >= h.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
    }
    Ok(())
}

/// `d*(v, h)`: the maximum density over subsets containing `v`.
pub fn vertex_max_density(h: &Graph, v: usize) -> Result<Rational> {
    check_vertex(h, v)?;
    let table = SubsetTable::build(h)?;
    Ok(max_over(&table, table.masks().filter(|m| m >> v & 1 == 1)).0)
}

/// `s_v`: fewest edges among subsets through `v` attaining `d*(v, h)`.
pub fn s_value(h: &Graph, v: usize) -> Result<usize> {
    check_vertex(h, v)?;
    let table = SubsetTable::build(h)?;
    Ok(s_value_in(&table, v).1)
}

fn s_value_in(table: &SubsetTable, v: usize) -> (Rational, usize) {
    let through = || table.masks().filter(move |m| m >> v & 1 == 1);
    let (best, _) = max_over(table, through());
    let s = through()
        .filter(|&m| table.density(m) == best)
        .map(|m| table.edges[m] as usize)
        .min()
        .expect("maximizer exists");
    (best, s)
}

pub fn classify(h: &Graph) -> Result<DensityProfile> {
    let table = SubsetTable::build(h)?;
    let full = table.full();
    let d = table.density(full);
    let (d_star, witness) = max_over(&table, table.masks());
    let mut d_star_v = BTreeMap::new();
    let mut s_v = BTreeMap::new();
    for v in 0..h.n() {
        let (dv, sv) = s_value_in(&table, v);
        d_star_v.insert(v, dv);
        s_v.insert(v, sv);
    }
    let strictly_balanced = table.masks().filter(|&m| m != full).all(|m| table.density(m) < d);
    let balanced = d_star == d;
    let vertex_balanced = d_star_v.values().all(|&dv| dv == d_star);
    let category = if strictly_balanced {
        Category::StrictlyBalanced
    } else if balanced {
        Category::BalancedNotStrictly
    } else if vertex_balanced {
        Category::VertexBalancedNotBalanced
    } else {
        Category::NonVertexBalanced
    };
    Ok(DensityProfile {
        d,
        d_star,
        s: s_v.values().copied().max().unwrap_or(0),
        d_star_v,
        s_v,
        category,
        witness_subset: VertexSet::from_slice(h.n(), &mask_members(witness))?,
        strictly_balanced,
        balanced,
        vertex_balanced,
        s_in_conjecture_scope: vertex_balanced,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `n^{-1/d} (ln n)^{1/e(h)}`, the strictly balanced threshold for `G(n,p)`.
    pub p_jkv: f64,
    /// `n^{-1/d*}`.
    pub p_gm: f64,
    /// `c * n^{-1/d*}`, the perturbed-model threshold.
    pub p_perturbed: f64,
}

/// Threshold edge probabilities, each clamped to `[0, 1]`.
pub fn threshold_formulas(h: &Graph, n: usize, c: Rational) -> Result<Thresholds> {
    if h.edge_count() == 0 {
        return Err(Error::InvalidArgument("threshold formulas need a template with at least one edge".into()));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!("threshold formulas need n >= 3, got {n}")));
    }
    let d = density(h)?.to_f64();
    let (d_star, _) = max_density(h)?;
    Ok(Thresholds {
        p_jkv: clamp01(jkv_probability(n, d, h.edge_count())),
        p_gm: clamp01(perturbed_probability(n, Rational::one(), d_star)),
        p_perturbed: clamp01(perturbed_probability(n, c, d_star)),
    })
}

fn jkv_probability(n: usize, d: f64, edges: usize) -> f64 {
    let n = n as f64;
    n.powf(-1.0 / d) * n.ln().powf(1.0 / edges as f64)
}

/// `c * n^{-1/d*}`, unclamped.
pub(crate) fn perturbed_probability(n: usize, c: Rational, d_star: Rational) -> f64 {
    c.to_f64() * (n as f64).powf(-1.0 / d_star.to_f64())
}

pub(crate) fn clamp01(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}
