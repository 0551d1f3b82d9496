use std::cmp::Reverse;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: usize,
    pub leaves: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StarTiling {
    pub t: usize,
    pub stars: Vec<Star>,
    pub uncovered: usize,
    pub eps: Rational,
    /// `uncovered <= eps * n`.
    pub within_eps: bool,
}

/// Repeatedly takes the free vertex of largest free degree as a center and
/// its `t` free neighbours of smallest free degree as leaves.
fn greedy(g: &Graph, free: &mut FixedBitSet, t: usize) -> Vec<Star> {
    let mut stars = Vec::new();
    loop {
        let free_deg = |v: usize| g.adjacency(v).intersection_count(free);
        let Some(center) = free.ones().max_by_key(|&v| (free_deg(v), Reverse(v))) else {
            break;
        };
        if free_deg(center) < t {
            break;
        }
        let mut nbrs: Vec<usize> = g.adjacency(center).intersection(free).collect();
        nbrs.sort_by_key(|&u| (free_deg(u), u));
        nbrs.truncate(t);
        free.set(center, false);
        nbrs.iter().for_each(|&u| free.set(u, false));
        nbrs.sort_unstable();
        stars.push(Star { center, leaves: nbrs });
    }
    stars
}

/// Vertex-disjoint `K_{1,t}` copies found greedily, followed by one pass
/// that dissolves each star into the leftover vertices and keeps the
/// result when the greedy rebuild yields at least two stars.
pub fn greedy_star_tiling(g: &Graph, t: usize, eps: Rational) -> Result<StarTiling> {
    if t == 0 {
        return Err(Error::InvalidArgument("stars need at least one leaf".into()));
    }
    let mut free = FixedBitSet::with_capacity(g.n());
    free.insert_range(..);
    let mut stars = greedy(g, &mut free, t);
    let mut i = 0;
    while i < stars.len() {
        let mut pool = free.clone();
        pool.insert(stars[i].center);
        stars[i].leaves.iter().for_each(|&u| pool.insert(u));
        let rebuilt = greedy(g, &mut pool, t);
        if rebuilt.len() >= 2 {
            let mut rebuilt = rebuilt.into_iter();
            stars[i] = rebuilt.next().expect("two stars");
            stars.extend(rebuilt);
            free = pool;
        }
        i += 1;
    }
    let uncovered = free.count_ones(..);
    let within_eps = Rational::from_integer(uncovered as i64) <= eps * Rational::from_integer(g.n() as i64);
    Ok(StarTiling { t, stars, uncovered, eps, within_eps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn check(g: &Graph, tiling: &StarTiling) {
        let mut seen = vec![false; g.n()];
        for s in &tiling.stars {
            assert_eq!(s.leaves.len(), tiling.t);
            for &v in std::iter::once(&s.center).chain(&s.leaves) {
                assert!(!seen[v]);
                seen[v] = true;
            }
            assert!(s.leaves.iter().all(|&u| g.has_edge(s.center, u)));
        }
        assert_eq!(seen.iter().filter(|s| !**s).count(), tiling.uncovered);
    }

    #[test]
    fn clique_is_one_star() {
        let g = Graph::complete(4);
        let r = greedy_star_tiling(&g, 3, Rational::zero()).unwrap();
        check(&g, &r);
        assert_eq!((r.stars.len(), r.uncovered, r.within_eps), (1, 0, true));
    }

    #[test]
    fn sparse_host_leaves_vertices() {
        let g = named::cycle(12);
        let r = greedy_star_tiling(&g, 3, Rational::new(1, 10)).unwrap();
        check(&g, &r);
        assert_eq!(r.uncovered, 12);
        assert!(!r.within_eps);
    }

    #[test]
    fn augmentation_keeps_disjointness() {
        let g = crate::random::sample_gnp(60, 0.2, crate::random::Seed(4)).unwrap();
        let r = greedy_star_tiling(&g, 2, Rational::new(1, 10)).unwrap();
        check(&g, &r);
        assert!(greedy_star_tiling(&g, 0, Rational::zero()).is_err());
    }
}
