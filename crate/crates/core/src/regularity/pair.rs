use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rand::seq::SliceRandom;
use serde::Serialize;

use super::{sample_subset, CheckMode};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::random::Seed;
use crate::rational::Rational;

/// Largest side examined exhaustively.
pub const EXACT_SIDE_CAP: usize = 16;

/// Disjoint nonempty vertex classes `A`, `B` of a host graph.
#[derive(Clone, Debug)]
pub struct BipartitePair<'a> {
    host: &'a Graph,
    a: Vec<usize>,
    b: Vec<usize>,
    cross_edges: usize,
    density: Rational,
}

impl<'a> BipartitePair<'a> {
    pub fn new(host: &'a Graph, a: &VertexSet, b: &VertexSet) -> Result<Self> {
        for v in a.iter().chain(b.iter()) {
            if v >= host.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: host.n() });
            }
        }
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidArgument("pair sides must be nonempty".into()));
        }
        if !a.is_disjoint(b) {
            return Err(Error::InvalidArgument("pair sides must be disjoint".into()));
        }
        let a = a.to_vec();
        let b = b.to_vec();
        let b_bits = bits_of(host.n(), &b);
        let cross_edges = a.iter().map(|&v| host.adjacency(v).intersection_count(&b_bits)).sum::<usize>();
        let density = Rational::new(cross_edges as i64, (a.len() * b.len()) as i64);
        Ok(BipartitePair { host, a, b, cross_edges, density })
    }

    pub fn host(&self) -> &Graph {
        self.host
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn cross_edges(&self) -> usize {
        self.cross_edges
    }

    pub fn density(&self) -> Rational {
        self.density
    }

    /// `k_A = ceil(eps |A|)` and `k_B = ceil(eps |B|)`.
    fn min_sizes(&self, eps: Rational) -> (usize, usize) {
        (eps.ceil_mul(self.a.len()) as usize, eps.ceil_mul(self.b.len()) as usize)
    }

    /// Degree of each vertex of `B` (in order) into `x`.
    fn degrees_into(&self, x: &[usize]) -> Vec<i64> {
        let bits = bits_of(self.host.n(), x);
        self.b.iter().map(|&v| self.host.adjacency(v).intersection_count(&bits) as i64).collect()
    }

    fn degree_across(&self, v: usize, side: &[usize]) -> usize {
        side.iter().filter(|&&u| self.host.has_edge(u, v)).count()
    }

    fn map_b(&self, idx: &[usize]) -> Vec<usize> {
        idx.iter().map(|&i| self.b[i]).collect()
    }
}

fn bits_of(n: usize, vs: &[usize]) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(n);
    vs.iter().for_each(|&v| bits.insert(v));
    bits
}

fn check_eps(eps: Rational) -> Result<()> {
    if eps <= Rational::zero() || eps > Rational::one() {
        return Err(Error::InvalidArgument(format!("eps = {eps} must lie in (0, 1]")));
    }
    Ok(())
}

fn check_cap(pair: &BipartitePair<'_>) -> Result<()> {
    if pair.a.len() > EXACT_SIDE_CAP || pair.b.len() > EXACT_SIDE_CAP {
        return Err(Error::EnumerationCap(format!(
            "pair sides {}x{} exceed {EXACT_SIDE_CAP}",
            pair.a.len(),
            pair.b.len()
        )));
    }
    Ok(())
}

/// `e(A, B) / (|A||B|)`.
pub fn pair_density(host: &Graph, a: &VertexSet, b: &VertexSet) -> Result<Rational> {
    Ok(BipartitePair::new(host, a, b)?.density())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Regularity {
    Yes,
    No { x: Vec<usize>, y: Vec<usize> },
    /// No witness among the sampled subsets.
    SampledPlausible,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub eps: Rational,
    pub density: Rational,
    pub regular: Regularity,
    /// Subsets `X` examined, each against its extremal `Y`.
    pub checked_pairs: u64,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        !matches!(self.regular, Regularity::No { .. })
    }
}

/// The raw definition: `X ⊆ A`, `Y ⊆ B`, `|X| >= eps|A|`, `|Y| >= eps|B|`
/// and `|d(A,B) - d(X,Y)| >= eps`.
pub fn is_irregularity_witness(host: &Graph, a: &VertexSet, b: &VertexSet, eps: Rational, x: &[usize], y: &[usize]) -> bool {
    let Ok(pair) = BipartitePair::new(host, a, b) else {
        return false;
    };
    if x.is_empty() || y.is_empty() || !x.iter().all(|&v| a.contains(v)) || !y.iter().all(|&v| b.contains(v)) {
        return false;
    }
    if !x.iter().all_unique() || !y.iter().all_unique() {
        return false;
    }
    let big = |k: usize, side: usize| Rational::from_integer(k as i64) >= eps * Rational::from_integer(side as i64);
    if !big(x.len(), a.len()) || !big(y.len(), b.len()) {
        return false;
    }
    let e = x.iter().cartesian_product(y).filter(|(&u, &v)| host.has_edge(u, v)).count();
    let dxy = Rational::new(e as i64, (x.len() * y.len()) as i64);
    let gap = if dxy > pair.density() { dxy - pair.density() } else { pair.density() - dxy };
    gap >= eps
}

/// Lexicographically first `k`-subset of indices with `sum(w) >= need`.
fn lex_first_at_least(w: &[i64], k: usize, need: i64) -> Option<Vec<usize>> {
    let top = |from: usize, take: usize| -> i64 {
        let mut rest: Vec<i64> = w[from..].to_vec();
        rest.sort_unstable_by(|p, q| q.cmp(p));
        rest.iter().take(take).sum()
    };
    if w.len() < k || top(0, k) < need {
        return None;
    }
    let mut picked = Vec::with_capacity(k);
    let mut start = 0;
    let mut need = need;
    for slot in 0..k {
        let left = k - slot - 1;
        let j = (start..=w.len() - left - 1)
            .find(|&j| w[j] + top(j + 1, left) >= need)
            .expect("feasibility is preserved");
        picked.push(j);
        need -= w[j];
        start = j + 1;
    }
    Some(picked)
}

/// Exact thresholds on `e(X,Y)` for minimum-size `X`, `Y`: a witness has
/// `e >= hi` or `e <= lo`.
fn witness_bounds(density: Rational, eps: Rational, ka: usize, kb: usize) -> (i64, i64) {
    let area = Rational::from_integer((ka * kb) as i64);
    (((density + eps) * area).ceil(), ((density - eps) * area).floor())
}

fn witness_y(degrees: &[i64], kb: usize, hi: i64, lo: i64) -> Option<Vec<usize>> {
    let up = lex_first_at_least(degrees, kb, hi);
    let neg: Vec<i64> = degrees.iter().map(|d| -d).collect();
    let down = if lo >= 0 { lex_first_at_least(&neg, kb, -lo) } else { None };
    match (up, down) {
        (Some(u), Some(d)) => Some(u.min(d)),
        (u, d) => u.or(d),
    }
}

/// Exhaustive check over all subset pairs. A larger pair's density is an
/// average over its minimum-size sub-pairs, so only `|X| = ceil(eps|A|)`,
/// `|Y| = ceil(eps|B|)` need checking; the reported witness is the
/// lexicographically first (by `X`, then `Y`) among those.
pub fn check_eps_regular_exact(host: &Graph, a: &VertexSet, b: &VertexSet, eps: Rational) -> Result<RegularityReport> {
    check_eps(eps)?;
    let pair = BipartitePair::new(host, a, b)?;
    check_cap(&pair)?;
    let (ka, kb) = pair.min_sizes(eps);
    let (hi, lo) = witness_bounds(pair.density(), eps, ka, kb);
    let mut checked = 0;
    for x in pair.a.iter().copied().combinations(ka) {
        checked += 1;
        if let Some(yi) = witness_y(&pair.degrees_into(&x), kb, hi, lo) {
            let y = pair.map_b(&yi);
            debug_assert!(is_irregularity_witness(host, a, b, eps, &x, &y));
            return Ok(RegularityReport { eps, density: pair.density(), regular: Regularity::No { x, y }, checked_pairs: checked });
        }
    }
    Ok(RegularityReport { eps, density: pair.density(), regular: Regularity::Yes, checked_pairs: checked })
}

/// Random minimum-size `X`, each tested against a random `Y` and the two
/// extremal `Y` (highest and lowest degrees into `X`).
pub fn check_eps_regular_sampled(
    host: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    eps: Rational,
    trials: usize,
    seed: Seed,
) -> Result<RegularityReport> {
    check_eps(eps)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let pair = BipartitePair::new(host, a, b)?;
    let (ka, kb) = pair.min_sizes(eps);
    let (hi, lo) = witness_bounds(pair.density(), eps, ka, kb);
    let mut rng = seed.rng();
    let b_idx: Vec<usize> = (0..pair.b.len()).collect();
    let mut checked = 0;
    for _ in 0..trials {
        checked += 1;
        let x = sample_subset(&mut rng, &pair.a, ka);
        let deg = pair.degrees_into(&x);
        let mut by_degree = b_idx.clone();
        by_degree.sort_by_key(|&i| (deg[i], i));
        let candidates = [
            sample_subset(&mut rng, &b_idx, kb),
            by_degree[..kb].to_vec(),
            by_degree[by_degree.len() - kb..].to_vec(),
        ];
        for yi in candidates {
            let e: i64 = yi.iter().map(|&i| deg[i]).sum();
            if e >= hi || e <= lo {
                let mut y = pair.map_b(&yi);
                y.sort_unstable();
                assert!(is_irregularity_witness(host, a, b, eps, &x, &y), "sampled witness must re-verify");
                return Ok(RegularityReport { eps, density: pair.density(), regular: Regularity::No { x, y }, checked_pairs: checked });
            }
        }
    }
    Ok(RegularityReport { eps, density: pair.density(), regular: Regularity::SampledPlausible, checked_pairs: checked })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SuperRegularFailure {
    /// Cross-degree at most `d` times the opposite side.
    LowDegree { vertex: usize, degree: usize, opposite: usize },
    /// Large subsets with density at most `d`.
    SparsePair { x: Vec<usize>, y: Vec<usize> },
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperRegularReport {
    pub eps: Rational,
    pub d: Rational,
    /// In sampled mode `true` is plausible only.
    pub super_regular: bool,
    pub exhaustive: bool,
    pub failure: Option<SuperRegularFailure>,
    pub checked_pairs: u64,
}

/// `(eps, d)`-super-regularity: every `X ⊆ A`, `Y ⊆ B` with
/// `|X| >= eps|A|`, `|Y| >= eps|B|` has `d(X,Y) > d`, and every vertex has
/// more than `d` times the opposite side as cross-degree. Degrees are
/// checked first, so a failing vertex is preferred over a subset witness.
pub fn check_super_regular(
    host: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    eps: Rational,
    d: Rational,
    mode: CheckMode,
) -> Result<SuperRegularReport> {
    check_eps(eps)?;
    let pair = BipartitePair::new(host, a, b)?;
    let mut report = SuperRegularReport {
        eps,
        d,
        super_regular: true,
        exhaustive: mode == CheckMode::Exact,
        failure: None,
        checked_pairs: 0,
    };
    for (side, opposite) in [(&pair.a, &pair.b), (&pair.b, &pair.a)] {
        for &v in side.iter() {
            let degree = pair.degree_across(v, opposite);
            if Rational::from_integer(degree as i64) <= d * Rational::from_integer(opposite.len() as i64) {
                report.super_regular = false;
                report.failure = Some(SuperRegularFailure::LowDegree { vertex: v, degree, opposite: opposite.len() });
                return Ok(report);
            }
        }
    }
    let (ka, kb) = pair.min_sizes(eps);
    // Failure iff some minimum-size pair has e(X,Y) <= floor(d k_A k_B).
    let limit = (d * Rational::from_integer((ka * kb) as i64)).floor();
    if limit < 0 {
        return Ok(report);
    }
    let test = |x: Vec<usize>, report: &mut SuperRegularReport| -> bool {
        report.checked_pairs += 1;
        let deg = pair.degrees_into(&x);
        let mut order: Vec<usize> = (0..deg.len()).collect();
        order.sort_by_key(|&i| (deg[i], i));
        let e: i64 = order[..kb].iter().map(|&i| deg[i]).sum();
        if e <= limit {
            let mut y = pair.map_b(&order[..kb]);
            y.sort_unstable();
            report.super_regular = false;
            report.failure = Some(SuperRegularFailure::SparsePair { x, y });
            return true;
        }
        false
    };
    match mode {
        CheckMode::Exact => {
            check_cap(&pair)?;
            for x in pair.a.iter().copied().combinations(ka) {
                if test(x, &mut report) {
                    break;
                }
            }
        }
        CheckMode::Sampled { trials, seed } => {
            let mut rng = seed.rng();
            for _ in 0..trials {
                if test(sample_subset(&mut rng, &pair.a, ka), &mut report) {
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// Trims vertices whose cross-degree is at most `(d - eps)` times the
/// current opposite side, to a fixpoint, then verifies the result is
/// `(2 eps, d - 3 eps)`-super-regular (exhaustively when both sides fit
/// under the cap).
pub fn superregularize(host: &Graph, a: &VertexSet, b: &VertexSet, eps: Rational, d: Rational) -> Result<(VertexSet, VertexSet)> {
    if eps <= Rational::zero() || eps >= Rational::new(1, 3) {
        return Err(Error::InvalidArgument(format!("eps = {eps} must lie in (0, 1/3)")));
    }
    BipartitePair::new(host, a, b)?;
    let (mut a2, mut b2) = (a.clone(), b.clone());
    let cut = d - eps;
    let trim = |side: &mut VertexSet, opposite: &VertexSet| -> bool {
        let limit = cut * Rational::from_integer(opposite.len() as i64);
        let low: Vec<usize> = side
            .iter()
            .filter(|&v| Rational::from_integer(opposite.intersection_count(host.adjacency(v)) as i64) <= limit)
            .collect();
        low.iter().for_each(|&v| side.remove(v));
        !low.is_empty()
    };
    loop {
        let changed_a = trim(&mut a2, &b2);
        let changed_b = trim(&mut b2, &a2);
        if !changed_a && !changed_b {
            break;
        }
    }
    let (ra, rb) = (a.len() - a2.len(), b.len() - b2.len());
    let within = |removed: usize, size: usize| Rational::from_integer(removed as i64) <= eps * Rational::from_integer(size as i64);
    if !within(ra, a.len()) || !within(rb, b.len()) || a2.is_empty() || b2.is_empty() {
        return Err(Error::TrimmedTooMuch { removed_a: ra, size_a: a.len(), removed_b: rb, size_b: b.len() });
    }
    let eps2 = eps + eps;
    let d3 = d - eps - eps - eps;
    let mode = CheckMode::auto(a2.len(), b2.len(), 4096, Seed(0));
    let report = check_super_regular(host, &a2, &b2, eps2, d3, mode)?;
    if !report.super_regular {
        return Err(Error::Postcondition(format!(
            "trimmed pair is not ({eps2}, {d3})-super-regular: {:?}",
            report.failure
        )));
    }
    Ok((a2, b2))
}

/// A pair on `A = 0..s`, `B = s..s+t` that is `(eps, d)`-super-regular by
/// construction: starting from `K_{s,t}`, cross pairs are visited in random
/// order and deleted whenever the result still satisfies the degree bound
/// and a bound on missing edges in every minimum-size subset pair.
/// `missing(X,Y)` is at most the sum over `X` of each vertex's missing
/// cross edges capped at `|Y|`, and symmetrically over `Y`.
pub fn certified_super_regular_pair(s: usize, t: usize, eps: Rational, d: Rational, seed: Seed) -> Result<Graph> {
    check_eps(eps)?;
    if d < Rational::zero() || d >= Rational::one() {
        return Err(Error::InvalidArgument(format!("d = {d} must lie in [0, 1)")));
    }
    if s == 0 || t == 0 {
        return Err(Error::InvalidArgument("pair sides must be nonempty".into()));
    }
    let ka = eps.ceil_mul(s) as usize;
    let kb = eps.ceil_mul(t) as usize;
    let area = (ka * kb) as i64;
    let allowed = area - ((d * Rational::from_integer(area)).floor() + 1);
    let degree_ok = |missing: usize, side: usize| {
        Rational::from_integer((side - missing) as i64) > d * Rational::from_integer(side as i64)
    };
    let capped_top = |def: &[usize], cap: usize, take: usize| -> i64 {
        let mut v: Vec<usize> = def.iter().map(|&x| x.min(cap)).collect();
        v.sort_unstable_by(|p, q| q.cmp(p));
        v.iter().take(take).sum::<usize>() as i64
    };
    let mut pairs: Vec<(usize, usize)> = (0..s).cartesian_product(0..t).collect();
    pairs.shuffle(&mut seed.rng());
    let mut def_a = vec![0usize; s];
    let mut def_b = vec![0usize; t];
    let mut deleted = FixedBitSet::with_capacity(s * t);
    for (i, j) in pairs {
        def_a[i] += 1;
        def_b[j] += 1;
        let ok = degree_ok(def_a[i], t)
            && degree_ok(def_b[j], s)
            && capped_top(&def_a, kb, ka).min(capped_top(&def_b, ka, kb)) <= allowed;
        if ok {
            deleted.insert(i * t + j);
        } else {
            def_a[i] -= 1;
            def_b[j] -= 1;
        }
    }
    Graph::from_edge_list(
        s + t,
        (0..s).cartesian_product(0..t).filter(|&(i, j)| !deleted.contains(i * t + j)).map(|(i, j)| (i, s + j)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::random::sample_gnp;

    fn sides(a: usize, b: usize) -> (VertexSet, VertexSet) {
        (VertexSet::from_iter_checked(a + b, 0..a).unwrap(), VertexSet::from_iter_checked(a + b, a..a + b).unwrap())
    }

    /// `A1 -> B1` and `A2 -> B2` complete, sizes 4 each: A = 0..8, B = 8..16.
    fn split_pair() -> Graph {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in 8..12 {
                edges.push((u, v));
            }
        }
        for u in 4..8 {
            for v in 12..16 {
                edges.push((u, v));
            }
        }
        Graph::from_edge_list(16, edges).unwrap()
    }

    #[test]
    fn densities() {
        let (a, b) = sides(3, 4);
        assert_eq!(pair_density(&named::complete_bipartite(3, 4), &a, &b).unwrap(), Rational::one());
        assert_eq!(pair_density(&Graph::empty(7), &a, &b).unwrap(), Rational::zero());
        let (a, b) = sides(2, 2);
        assert_eq!(pair_density(&Graph::complete(4), &a, &b).unwrap(), Rational::one());
        assert!(pair_density(&Graph::complete(4), &VertexSet::new(4), &b).is_err());
    }

    #[test]
    fn exact_regularity_examples() {
        let (a, b) = sides(5, 6);
        let r = check_eps_regular_exact(&named::complete_bipartite(5, 6), &a, &b, Rational::new(1, 10)).unwrap();
        assert_eq!(r.regular, Regularity::Yes);
        let r = check_eps_regular_exact(&Graph::empty(11), &a, &b, Rational::new(1, 2)).unwrap();
        assert_eq!(r.regular, Regularity::Yes);

        let g = split_pair();
        let (a, b) = sides(8, 8);
        let eps = Rational::new(1, 4);
        let r = check_eps_regular_exact(&g, &a, &b, eps).unwrap();
        assert_eq!(r.density, Rational::new(1, 2));
        // Minimum sizes are 2 and 2; X = {0,1} is complete to {8,9},
        // density 1 against 1/2.
        assert_eq!(r.regular, Regularity::No { x: vec![0, 1], y: vec![8, 9] });
        // The full halves are a witness too: density 0 against 1/2.
        assert!(is_irregularity_witness(&g, &a, &b, eps, &[0, 1, 2, 3], &[12, 13, 14, 15]));
        assert!(!is_irregularity_witness(&g, &a, &b, eps, &[0, 4], &[8, 12]));
    }

    #[test]
    fn exact_mode_is_capped() {
        let (a, b) = sides(17, 3);
        let err = check_eps_regular_exact(&Graph::empty(20), &a, &b, Rational::new(1, 2)).unwrap_err();
        assert!(matches!(err, Error::EnumerationCap(_)));
    }

    #[test]
    fn lex_first_subset() {
        assert_eq!(lex_first_at_least(&[1, 0, 3, 2], 2, 4), Some(vec![0, 2]));
        assert_eq!(lex_first_at_least(&[1, 0, 3, 2], 2, 5), Some(vec![2, 3]));
        assert_eq!(lex_first_at_least(&[1, 0, 3, 2], 2, 6), None);
    }

    #[test]
    fn sampled_finds_split_witness() {
        let g = split_pair();
        let (a, b) = sides(8, 8);
        let r = check_eps_regular_sampled(&g, &a, &b, Rational::new(1, 4), 100, Seed(3)).unwrap();
        let Regularity::No { x, y } = r.regular else { panic!("expected a witness") };
        assert!(is_irregularity_witness(&g, &a, &b, Rational::new(1, 4), &x, &y));
        let full = named::complete_bipartite(8, 8);
        let r = check_eps_regular_sampled(&full, &a, &b, Rational::new(1, 4), 100, Seed(3)).unwrap();
        assert_eq!(r.regular, Regularity::SampledPlausible);
    }

    #[test]
    fn super_regular_examples() {
        let (a, b) = sides(6, 6);
        let r = check_super_regular(&named::complete_bipartite(6, 6), &a, &b, Rational::new(1, 10), Rational::new(1, 2), CheckMode::Exact)
            .unwrap();
        assert!(r.super_regular);
        // Vertex 0 isolated.
        let g = Graph::from_edge_list(12, (1..6).flat_map(|u| (6..12).map(move |v| (u, v)))).unwrap();
        let r = check_super_regular(&g, &a, &b, Rational::new(1, 10), Rational::new(1, 10), CheckMode::Exact).unwrap();
        assert!(!r.super_regular);
        assert_eq!(r.failure, Some(SuperRegularFailure::LowDegree { vertex: 0, degree: 0, opposite: 6 }));
    }

    #[test]
    fn superregularize_examples() {
        let eps = Rational::new(1, 5);
        let d = Rational::new(1, 2);
        let (a, b) = sides(10, 10);
        let full = named::complete_bipartite(10, 10);
        assert_eq!(superregularize(&full, &a, &b, eps, d).unwrap(), (a.clone(), b.clone()));
        // Two isolated vertices added to A (floor(eps * 10) = 2).
        let g = Graph::from_edge_list(22, (0..10).flat_map(|u| (12..22).map(move |v| (u, v)))).unwrap();
        let a = VertexSet::from_iter_checked(22, 0..12).unwrap();
        let b = VertexSet::from_iter_checked(22, 12..22).unwrap();
        let (a2, b2) = superregularize(&g, &a, &b, Rational::new(1, 6), d).unwrap();
        assert_eq!(a2.to_vec(), (0..10).collect::<Vec<_>>());
        assert_eq!(b2, b);
    }

    #[test]
    fn certified_pair_passes_exact_check() {
        let eps = Rational::new(1, 4);
        let d = Rational::new(2, 5);
        for seed in 0..5 {
            let g = certified_super_regular_pair(8, 8, eps, d, Seed(seed)).unwrap();
            let (a, b) = sides(8, 8);
            assert!(g.edge_count() < 64, "some deletions are certified");
            let r = check_super_regular(&g, &a, &b, eps, d, CheckMode::Exact).unwrap();
            assert!(r.super_regular, "{:?}", r.failure);
        }
    }

    #[test]
    fn random_pair_matches_brute_force() {
        let g = sample_gnp(24, 0.5, Seed(9)).unwrap();
        let (a, b) = sides(12, 12);
        let eps = Rational::new(1, 3);
        let d = Rational::new(1, 5);
        let fast = check_super_regular(&g, &a, &b, eps, d, CheckMode::Exact).unwrap();
        let degrees_ok = (0..12).all(|u| (12..24).filter(|&v| g.has_edge(u, v)).count() * 5 > 12)
            && (12..24).all(|v| (0..12).filter(|&u| g.has_edge(u, v)).count() * 5 > 12);
        let subsets_ok = (0..12).combinations(4).all(|x| {
            (12..24).combinations(4).all(|y| {
                let e = x.iter().cartesian_product(&y).filter(|(&u, &v)| g.has_edge(u, v)).count();
                e * 5 > 16
            })
        });
        assert_eq!(fast.super_regular, degrees_ok && subsets_ok);
    }
}
