//! Pair densities, regularity and super-regularity, Hall matchings, star
//! tilings, the large-subset containment properties, h-set classes and the
//! pair completion procedure.

mod completion;
mod hsets;
mod matching;
mod pair;
mod properties;
mod stars;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::random::Seed;

pub use completion::{
    complete_pair_tiling, synthetic_pair_instance, CompletionParams, CompletionRoute, PairCompletion, PairInstance,
};
pub use hsets::{classify_h_sets, HSetClass, HSET_EXHAUSTIVE_CAP, HSET_SAMPLES};
pub use matching::{hall_perfect_matching, HallOutcome};
pub use pair::{
    certified_super_regular_pair, check_eps_regular_exact, check_eps_regular_sampled, check_super_regular,
    is_irregularity_witness, pair_density, superregularize, BipartitePair, Regularity, RegularityReport,
    SuperRegularFailure, SuperRegularReport, EXACT_SIDE_CAP,
};
pub use properties::{check_f_h, check_f_h_avoiding, check_f_h_prime, PropertyReport, PropertyWitness, EXACT_SUBSET_CAP};
pub use stars::{greedy_star_tiling, Star, StarTiling};

/// How subset families are examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    /// Every subset; capped, with an error beyond the cap.
    Exact,
    /// `trials` random subsets. Counterexamples are sound, a pass is not.
    Sampled { trials: usize, seed: Seed },
}

impl CheckMode {
    /// Exact when both sides fit under the exhaustive cap.
    pub fn auto(side_a: usize, side_b: usize, trials: usize, seed: Seed) -> Self {
        if side_a <= EXACT_SIDE_CAP && side_b <= EXACT_SIDE_CAP {
            CheckMode::Exact
        } else {
            CheckMode::Sampled { trials, seed }
        }
    }
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
        if c > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    c as u64
}

/// A uniform `k`-subset of `items`, sorted.
pub(crate) fn sample_subset<R: Rng + ?Sized>(rng: &mut R, items: &[usize], k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = index::sample(rng, items.len(), k).into_iter().map(|i| items[i]).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(16, 8), 12870);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(200, 100), u64::MAX);
    }
}
