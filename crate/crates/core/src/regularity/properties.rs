use std::collections::BTreeSet;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{binomial, sample_subset, CheckMode};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::Pattern;
use crate::rational::Rational;
use crate::tiling::{CopyKey, Embedder, Embedding};

/// Largest number of subsets (or subset pairs) examined in exact mode.
pub const EXACT_SUBSET_CAP: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PropertyWitness {
    /// A large vertex set spanning no admissible copy.
    Subset { set: Vec<usize> },
    /// Large disjoint sets with no copy meeting `a` once and `b` in the rest.
    Pair { a: Vec<usize>, b: Vec<usize> },
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    /// In sampled mode `true` is plausible only.
    pub holds: bool,
    pub exhaustive: bool,
    /// `ceil(eta n)`.
    pub subset_size: usize,
    pub checked: u64,
    pub witness: Option<PropertyWitness>,
}

fn check_fraction(eta: Rational) -> Result<()> {
    if eta <= Rational::zero() || eta > Rational::one() {
        return Err(Error::InvalidArgument(format!("fraction {eta} must lie in (0, 1]")));
    }
    Ok(())
}

fn set_of(n: usize, vs: &[usize]) -> VertexSet {
    VertexSet::from_slice(n, vs).expect("subset of the host")
}

fn bits_of(n: usize, vs: &[usize]) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(n);
    vs.iter().for_each(|&v| bits.insert(v));
    bits
}

/// Whether some copy inside `w` is not forbidden.
fn spans_allowed_copy(g: &Graph, h: &Graph, w: &[usize], forbidden: &BTreeSet<CopyKey>) -> bool {
    let within = set_of(g.n(), w);
    Embedder::new(g, h, Some(&within))
        .run::<ChaCha8Rng>(None, |map| {
            if forbidden.is_empty() || !forbidden.contains(&Embedding { map: map.to_vec() }.copy_key(h)) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_break()
}

/// Shared driver: every (or a random) `k`-subset must span an allowed copy.
fn subsets_span(g: &Graph, h: &Pattern, eta: Rational, forbidden: &[CopyKey], mode: CheckMode) -> Result<PropertyReport> {
    check_fraction(eta)?;
    let n = g.n();
    let k = eta.ceil_mul(n) as usize;
    let forbidden: BTreeSet<CopyKey> = forbidden.iter().cloned().collect();
    let mut report = PropertyReport { holds: true, exhaustive: mode == CheckMode::Exact, subset_size: k, checked: 0, witness: None };
    let test = |w: Vec<usize>, report: &mut PropertyReport| -> bool {
        report.checked += 1;
        if spans_allowed_copy(g, h.graph(), &w, &forbidden) {
            return false;
        }
        report.holds = false;
        report.witness = Some(PropertyWitness::Subset { set: w });
        true
    };
    match mode {
        CheckMode::Exact => {
            let count = binomial(n, k);
            if count > EXACT_SUBSET_CAP {
                return Err(Error::EnumerationCap(format!("C({n}, {k}) = {count} subsets")));
            }
            for w in (0..n).combinations(k) {
                if test(w, &mut report) {
                    break;
                }
            }
        }
        CheckMode::Sampled { trials, seed } => {
            let mut rng = seed.rng();
            let all: Vec<usize> = (0..n).collect();
            for _ in 0..trials {
                if test(sample_subset(&mut rng, &all, k), &mut report) {
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// Every vertex set of size at least `eta n` spans a copy of `h`. Only sets
/// of size exactly `ceil(eta n)` are examined, since containment is
/// inherited by supersets.
pub fn check_f_h(g: &Graph, h: &Pattern, eta: Rational, mode: CheckMode) -> Result<PropertyReport> {
    subsets_span(g, h, eta, &[], mode)
}

/// Like [`check_f_h`], but copies whose (vertex set, edge set) identity is
/// in `forbidden` do not count.
pub fn check_f_h_avoiding(
    g: &Graph,
    h: &Pattern,
    gamma: Rational,
    forbidden: &[CopyKey],
    mode: CheckMode,
) -> Result<PropertyReport> {
    subsets_span(g, h, gamma, forbidden, mode)
}

/// Whether some copy has exactly one vertex in `a` and the rest in `b`.
fn crosses_once(g: &Graph, h: &Graph, a: &[usize], b: &[usize]) -> bool {
    let within = set_of(g.n(), &[a, b].concat());
    let a_bits = bits_of(g.n(), a);
    let b_bits = bits_of(g.n(), b);
    (0..h.n()).any(|role| {
        let mut emb = Embedder::new(g, h, Some(&within));
        for other in 0..h.n() {
            emb.restrict(other, if other == role { &a_bits } else { &b_bits });
        }
        emb.run::<ChaCha8Rng>(None, |_| ControlFlow::Break(())).is_break()
    })
}

/// For all disjoint `A`, `B` of size at least `eta n` there is a copy of
/// `h` with exactly one vertex in `A` and `|H| - 1` in `B`. Only sets of
/// size exactly `ceil(eta n)` are examined.
pub fn check_f_h_prime(g: &Graph, h: &Pattern, eta: Rational, mode: CheckMode) -> Result<PropertyReport> {
    check_fraction(eta)?;
    let n = g.n();
    let k = eta.ceil_mul(n) as usize;
    let mut report = PropertyReport { holds: true, exhaustive: mode == CheckMode::Exact, subset_size: k, checked: 0, witness: None };
    if 2 * k > n {
        return Ok(report);
    }
    let test = |a: Vec<usize>, b: Vec<usize>, report: &mut PropertyReport| -> bool {
        report.checked += 1;
        if crosses_once(g, h.graph(), &a, &b) {
            return false;
        }
        report.holds = false;
        report.witness = Some(PropertyWitness::Pair { a, b });
        true
    };
    match mode {
        CheckMode::Exact => {
            let count = binomial(n, k).saturating_mul(binomial(n - k, k));
            if count > EXACT_SUBSET_CAP {
                return Err(Error::EnumerationCap(format!("{count} ordered subset pairs")));
            }
            'outer: for a in (0..n).combinations(k) {
                let rest: Vec<usize> = (0..n).filter(|v| a.binary_search(v).is_err()).collect();
                for b in rest.into_iter().combinations(k) {
                    if test(a.clone(), b, &mut report) {
                        break 'outer;
                    }
                }
            }
        }
        CheckMode::Sampled { trials, seed } => {
            let mut rng = seed.rng();
            let mut all: Vec<usize> = (0..n).collect();
            for _ in 0..trials {
                all.shuffle(&mut rng);
                let mut a = all[..k].to_vec();
                let mut b = all[k..2 * k].to_vec();
                a.sort_unstable();
                b.sort_unstable();
                if test(a, b, &mut report) {
                    break;
                }
            }
        }
    }
    Ok(report)
}
