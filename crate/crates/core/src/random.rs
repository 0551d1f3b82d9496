//! Seeded samplers for `G(n,p)`, the perturbed model and base graphs.
//!
//! Edge decisions come from a counter-based stream: the uniform for the pair
//! `{u, v}` is a hash of `(seed, min(u,v), max(u,v))`. Samples are therefore
//! independent of iteration order, and two samples with `p1 <= p2` under one
//! seed are nested (`G1 ⊆ G2`), which is the monotone coupling used by the
//! sweeps.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::Pattern;
use crate::rational::Rational;

/// A 64-bit root seed. Sub-streams are derived with [`Seed::derive`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Seed {
    /// Sub-seed for stream `index`: `mix64(root ^ mix64(index))`.
    pub fn derive(self, index: u64) -> Seed {
        Seed(mix64(self.0 ^ mix64(index)))
    }

    /// Uniform in `[0, 1)` attached to the unordered pair `{u, v}`.
    pub fn pair_uniform(self, u: usize, v: usize) -> f64 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let key = ((a as u64) << 32) ^ b as u64;
        let bits = mix64(self.0 ^ mix64(key));
        (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

const BASE_STREAM: u64 = 0xBA5E;
const RANDOM_STREAM: u64 = 0x6E9;

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")))
    }
}

/// `G(n, p)`: each pair is an edge iff its pair uniform is below `p`.
pub fn sample_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    check_probability(p)?;
    let mut g = Graph::empty(n);
    if p == 0.0 {
        return Ok(g);
    }
    for u in 0..n {
        for v in u + 1..n {
            if seed.pair_uniform(u, v) < p {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(g)
}

/// Two coupled samples `G1 ⊆ G2` with edge probabilities `p1 <= p2`.
pub fn sample_gnp_coupled(n: usize, p1: f64, p2: f64, seed: Seed) -> Result<(Graph, Graph)> {
    if p1 > p2 {
        return Err(Error::InvalidArgument(format!("coupling needs p1 <= p2, got {p1} > {p2}")));
    }
    Ok((sample_gnp(n, p1, seed)?, sample_gnp(n, p2, seed)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSpec {
    Empty,
    Complete,
    Explicit(Graph),
    /// Complete bipartite base with classes `a·n` and `(1-a)·n`.
    Extremal { a: Rational, pattern_order: usize },
    /// Disjoint balanced complete bipartite blobs with `δ ≥ ⌈alpha·n⌉`.
    MinDegree { alpha: Rational },
}

impl BaseSpec {
    /// Parses `empty`, `complete`, `extremal:A`, `mindeg:ALPHA` or `file:PATH`.
    pub fn parse(s: &str, pattern: &Pattern) -> Result<Self> {
        if s == "empty" {
            return Ok(BaseSpec::Empty);
        }
        if s == "complete" {
            return Ok(BaseSpec::Complete);
        }
        match s.split_once(':') {
            Some(("extremal", a)) => Ok(BaseSpec::Extremal { a: a.parse()?, pattern_order: pattern.order() }),
            Some(("mindeg", alpha)) => Ok(BaseSpec::MinDegree { alpha: alpha.parse()? }),
            Some(("file", path)) => Ok(BaseSpec::Explicit(crate::pattern::read_graph(path.as_ref())?)),
            _ => Err(Error::InvalidArgument(format!("unknown base {s:?}"))),
        }
    }

    pub fn build(&self, n: usize, seed: Seed) -> Result<Graph> {
        match self {
            BaseSpec::Empty => Ok(Graph::empty(n)),
            BaseSpec::Complete => Ok(Graph::complete(n)),
            BaseSpec::Explicit(g) => {
                if g.n() != n {
                    return Err(Error::VertexCountMismatch(g.n(), n));
                }
                Ok(g.clone())
            }
            BaseSpec::Extremal { a, pattern_order } => Ok(extremal_base(n, *a, *pattern_order)?.graph),
            BaseSpec::MinDegree { alpha } => make_min_degree_base(n, *alpha, seed),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PerturbedSpec {
    pub base: BaseSpec,
    pub p: f64,
}

/// Returns `(base, base ∪ G(n,p))`. The random layer uses its own derived
/// stream, so two specs differing only in their base share random edges.
pub fn sample_perturbed(spec: &PerturbedSpec, n: usize, seed: Seed) -> Result<(Graph, Graph)> {
    check_probability(spec.p)?;
    let base = spec.base.build(n, seed.derive(BASE_STREAM))?;
    let random = sample_gnp(n, spec.p, random_layer_seed(seed))?;
    let perturbed = base.union(&random)?;
    Ok((base, perturbed))
}

pub(crate) fn random_layer_seed(seed: Seed) -> Seed {
    seed.derive(RANDOM_STREAM)
}

#[derive(Clone, Debug)]
pub struct ExtremalBase {
    pub graph: Graph,
    /// Smaller class, vertices `0..a·n`.
    pub x: VertexSet,
    pub y: VertexSet,
    /// `b - a(|H|-1)`.
    pub epsilon: Rational,
}

/// Complete bipartite graph with classes of sizes `a·n` and `(1-a)·n`,
/// requiring `b = 1 - a > a(|H|-1)`.
pub fn make_extremal_base(n: usize, a: Rational, h: &Pattern) -> Result<ExtremalBase> {
    extremal_base(n, a, h.order())
}

pub(crate) fn extremal_base(n: usize, a: Rational, order: usize) -> Result<ExtremalBase> {
    if a <= Rational::zero() || a >= Rational::one() {
        return Err(Error::InvalidArgument(format!("extremal a = {a} must lie in (0, 1)")));
    }
    let b = Rational::one() - a;
    let epsilon = b - a * Rational::from_integer(order as i64 - 1);
    if epsilon <= Rational::zero() {
        return Err(Error::ExtremalCondition { a: a.to_string(), b: b.to_string(), order });
    }
    let an = a * Rational::from_integer(n as i64);
    if !an.is_integer() {
        return Err(Error::InvalidArgument(format!("a·n = {an} is not an integer")));
    }
    let size_x = an.numer() as usize;
    let graph = crate::graph::named::complete_bipartite(size_x, n - size_x);
    let x = VertexSet::from_iter_checked(n, 0..size_x)?;
    let y = VertexSet::from_iter_checked(n, size_x..n)?;
    Ok(ExtremalBase { graph, x, y, epsilon })
}

/// `⌈1/(2·alpha)⌉` vertex-disjoint balanced complete bipartite blobs
/// covering `[n]`, with vertices assigned to blobs by a seeded shuffle.
pub fn make_min_degree_base(n: usize, alpha: Rational, seed: Seed) -> Result<Graph> {
    let half = Rational::new(1, 2);
    if alpha <= Rational::zero() || alpha > half {
        return Err(Error::InvalidArgument(format!("alpha = {alpha} must lie in (0, 1/2]")));
    }
    let target = alpha.ceil_mul(n) as usize;
    if n == 0 || target > n - 1 {
        return Err(Error::InvalidArgument(format!("alpha·n = {target} exceeds n - 1 for n = {n}")));
    }
    let blobs = (Rational::one() / (Rational::from_integer(2) * alpha)).ceil() as usize;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut seed.rng());
    let mut g = Graph::empty(n);
    let mut start = 0;
    for b in 0..blobs {
        let size = n / blobs + usize::from(b < n % blobs);
        let blob = &order[start..start + size];
        let (left, right) = blob.split_at(size / 2);
        for &u in left {
            for &v in right {
                g.add_edge_unchecked(u, v);
            }
        }
        start += size;
    }
    let delta = g.min_degree();
    if delta < target {
        return Err(Error::InvalidArgument(format!(
            "min-degree base on n = {n} with {blobs} blobs reaches δ = {delta} < ⌈alpha·n⌉ = {target}"
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_extremes() {
        assert_eq!(sample_gnp(10, 0.0, Seed(1)).unwrap().edge_count(), 0);
        assert_eq!(sample_gnp(10, 1.0, Seed(1)).unwrap(), Graph::complete(10));
        assert!(sample_gnp(10, 1.5, Seed(1)).is_err());
        assert!(sample_gnp(10, f64::NAN, Seed(1)).is_err());
    }

    #[test]
    fn coupling_is_nested() {
        let (a, b) = sample_gnp_coupled(40, 0.2, 0.5, Seed(9)).unwrap();
        assert!(a.is_subgraph_of(&b));
        assert!(sample_gnp_coupled(40, 0.5, 0.2, Seed(9)).is_err());
    }

    #[test]
    fn perturbed_contains_base() {
        let spec = PerturbedSpec { base: BaseSpec::MinDegree { alpha: Rational::new(1, 4) }, p: 0.1 };
        let (base, pert) = sample_perturbed(&spec, 24, Seed(3)).unwrap();
        assert!(base.is_subgraph_of(&pert));
        let spec0 = PerturbedSpec { p: 0.0, ..spec };
        let (base, pert) = sample_perturbed(&spec0, 24, Seed(3)).unwrap();
        assert_eq!(base, pert);
    }

    #[test]
    fn extremal_examples() {
        let k3 = Pattern::clique(3);
        let e = make_extremal_base(12, Rational::new(1, 4), &k3).unwrap();
        assert_eq!(e.x.len(), 3);
        assert_eq!(e.graph.edge_count(), 27);
        assert_eq!(e.epsilon, Rational::new(1, 4));
        assert!(matches!(
            make_extremal_base(12, Rational::new(1, 3), &k3),
            Err(Error::ExtremalCondition { .. })
        ));
        assert!(make_extremal_base(10, Rational::new(1, 2), &Pattern::clique(2)).is_err());
        assert!(make_extremal_base(10, Rational::new(1, 4), &k3).is_err(), "a·n not integral");
    }

    #[test]
    fn min_degree_examples() {
        let g = make_min_degree_base(20, Rational::new(1, 2), Seed(0)).unwrap();
        assert_eq!((g.edge_count(), g.min_degree()), (100, 10));
        let g = make_min_degree_base(24, Rational::new(1, 4), Seed(0)).unwrap();
        assert_eq!((g.edge_count(), g.min_degree()), (72, 6));
        assert!(make_min_degree_base(24, Rational::new(3, 4), Seed(0)).is_err());
        assert!(make_min_degree_base(24, Rational::zero(), Seed(0)).is_err());
    }
}
