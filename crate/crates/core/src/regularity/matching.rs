use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum HallOutcome {
    /// Pairs `(a, b)` covering both sides.
    Matching { pairs: Vec<(usize, usize)> },
    /// `W` on side `A` with `|N(W)| < |W|`.
    Violator { w: Vec<usize>, neighbourhood: Vec<usize> },
}

impl HallOutcome {
    /// Re-checks the outcome against the host.
    pub fn verify(&self, host: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
        match self {
            HallOutcome::Matching { pairs } => {
                let left: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
                let right: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
                left.len() == pairs.len()
                    && right.len() == pairs.len()
                    && pairs.len() == a.len()
                    && pairs.len() == b.len()
                    && pairs.iter().all(|&(u, v)| a.contains(u) && b.contains(v) && host.has_edge(u, v))
            }
            HallOutcome::Violator { w, .. } => {
                if w.is_empty() || !w.iter().all(|&u| a.contains(u)) {
                    return false;
                }
                let nbhd: BTreeSet<usize> = w.iter().flat_map(|&u| host.neighbors(u)).filter(|&v| b.contains(v)).collect();
                nbhd.len() < w.iter().collect::<BTreeSet<_>>().len()
            }
        }
    }
}

/// Maximum matching by augmenting paths. `adj[i]` lists the right
/// vertices adjacent to left vertex `i`; the result maps left to right.
pub(crate) fn max_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>], mate: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, adj, seen, owner, mate)) {
                owner[j] = Some(i);
                mate[i] = Some(j);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    let mut mate = vec![None; adj.len()];
    for i in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(i, adj, &mut seen, &mut owner, &mut mate);
    }
    mate
}

/// Left vertices reachable from unmatched left vertex `start` by
/// alternating paths, and the right vertices seen on the way. For a
/// maximum matching the right set is exactly the neighbourhood of the left
/// set and is one smaller.
pub(crate) fn alternating_reach(adj: &[Vec<usize>], mate: &[Option<usize>], right: usize, start: usize) -> (Vec<usize>, Vec<usize>) {
    let mut owner = vec![None; right];
    for (i, m) in mate.iter().enumerate() {
        if let Some(j) = m {
            owner[*j] = Some(i);
        }
    }
    let mut left_seen = vec![false; adj.len()];
    let mut right_seen = vec![false; right];
    let mut stack = vec![start];
    left_seen[start] = true;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if right_seen[j] {
                continue;
            }
            right_seen[j] = true;
            let k = owner[j].expect("maximum matching has no augmenting path");
            if !left_seen[k] {
                left_seen[k] = true;
                stack.push(k);
            }
        }
    }
    let pick = |s: &[bool]| s.iter().enumerate().filter(|p| *p.1).map(|p| p.0).collect();
    (pick(&left_seen), pick(&right_seen))
}

/// A perfect matching of `G[A, B]`, or a Hall violator on side `A`.
pub fn hall_perfect_matching(host: &Graph, a: &VertexSet, b: &VertexSet) -> Result<HallOutcome> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!("sides differ in size: {} vs {}", a.len(), b.len())));
    }
    if let Some(v) = a.iter().chain(b.iter()).find(|&v| v >= host.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: host.n() });
    }
    if !a.is_disjoint(b) {
        return Err(Error::InvalidArgument("sides must be disjoint".into()));
    }
    let left = a.to_vec();
    let right = b.to_vec();
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&u| right.iter().enumerate().filter(|&(_, &v)| host.has_edge(u, v)).map(|(j, _)| j).collect())
        .collect();
    let mate = max_matching(&adj, right.len());
    let outcome = match mate.iter().position(Option::is_none) {
        None => HallOutcome::Matching {
            pairs: mate.iter().enumerate().map(|(i, m)| (left[i], right[m.expect("perfect")])).collect(),
        },
        Some(start) => {
            let (w, nb) = alternating_reach(&adj, &mate, right.len(), start);
            HallOutcome::Violator {
                w: w.into_iter().map(|i| left[i]).collect(),
                neighbourhood: nb.into_iter().map(|j| right[j]).collect(),
            }
        }
    };
    assert!(outcome.verify(host, a, b), "Hall outcome must re-verify");
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn sides(k: usize) -> (VertexSet, VertexSet) {
        (VertexSet::from_iter_checked(2 * k, 0..k).unwrap(), VertexSet::from_iter_checked(2 * k, k..2 * k).unwrap())
    }

    #[test]
    fn complete_pair_matches() {
        let (a, b) = sides(5);
        let out = hall_perfect_matching(&named::complete_bipartite(5, 5), &a, &b).unwrap();
        assert!(matches!(out, HallOutcome::Matching { ref pairs } if pairs.len() == 5));
    }

    #[test]
    fn isolated_vertex_is_violator() {
        let (a, b) = sides(3);
        let g = Graph::from_edge_list(6, [(1, 3), (1, 4), (2, 5), (2, 4)]).unwrap();
        let out = hall_perfect_matching(&g, &a, &b).unwrap();
        assert_eq!(out, HallOutcome::Violator { w: vec![0], neighbourhood: vec![] });
    }

    #[test]
    fn unequal_sides_error() {
        let a = VertexSet::from_slice(5, &[0, 1]).unwrap();
        let b = VertexSet::from_slice(5, &[2, 3, 4]).unwrap();
        assert!(hall_perfect_matching(&Graph::complete(5), &a, &b).is_err());
    }

    #[test]
    fn violator_from_alternating_paths() {
        // 0 and 1 both see only 3; 2 sees 3, 4, 5.
        let (a, b) = sides(3);
        let g = Graph::from_edge_list(6, [(0, 3), (1, 3), (2, 3), (2, 4), (2, 5)]).unwrap();
        let out = hall_perfect_matching(&g, &a, &b).unwrap();
        let HallOutcome::Violator { w, neighbourhood } = out else { panic!() };
        assert_eq!(neighbourhood, vec![3]);
        assert_eq!(w.len(), 2);
    }
}
