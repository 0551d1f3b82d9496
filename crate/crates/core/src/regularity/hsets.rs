use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{binomial, sample_subset, PairInstance};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::random::Seed;
use crate::rational::Rational;
use crate::tiling::Embedder;

/// Beyond this many h-subsets, a random family is classified instead.
pub const HSET_EXHAUSTIVE_CAP: u64 = 200_000;
pub const HSET_SAMPLES: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HSetClass {
    pub members: Vec<usize>,
    pub good: bool,
    /// Good, and spans the template in the random layer.
    pub excellent: bool,
    pub common_nbhd_size: usize,
}

/// Vertices of `other` adjacent in `g` to every member.
pub(crate) fn common_nbhd(g: &Graph, members: &[usize], other: &VertexSet) -> FixedBitSet {
    let mut common = other.bits().clone();
    common.grow(g.n());
    members.iter().for_each(|&v| common.intersect_with(g.adjacency(v)));
    common
}

/// `|common| >= d1 |other|`.
pub(crate) fn is_good(common: usize, other: usize, d1: Rational) -> bool {
    Rational::from_integer(common as i64) >= d1 * Rational::from_integer(other as i64)
}

/// Whether `g[members]` contains `template` using every member.
pub(crate) fn spans(g: &Graph, template: &Graph, members: &[usize]) -> bool {
    let within = VertexSet::from_slice(g.n(), members).expect("members are host vertices");
    Embedder::new(g, template, Some(&within)).run::<ChaCha8Rng>(None, |_| ControlFlow::Break(())).is_break()
}

pub(crate) fn classify_one(inst: &PairInstance, side: &VertexSet, template: &Graph, d1: Rational, members: Vec<usize>) -> HSetClass {
    let other = if side == &inst.s { &inst.t } else { &inst.s };
    let common_nbhd_size = common_nbhd(&inst.cross, &members, other).count_ones(..);
    let good = is_good(common_nbhd_size, other.len(), d1);
    let excellent = good && spans(&inst.random, template, &members);
    HSetClass { members, good, excellent, common_nbhd_size }
}

/// Classifies the `|template|`-subsets of `T`: good when the common
/// cross-neighbourhood in `S` has at least `d1 |S|` vertices, excellent
/// when also spanning `template` in the random layer. All subsets in
/// lexicographic order up to [`HSET_EXHAUSTIVE_CAP`], otherwise
/// [`HSET_SAMPLES`] random ones.
pub fn classify_h_sets(inst: &PairInstance, template: &Graph, d1: Rational, seed: Seed) -> Result<Vec<HSetClass>> {
    if d1 <= Rational::zero() || d1 >= Rational::one() {
        return Err(Error::InvalidArgument(format!("d1 = {d1} must lie in (0, 1)")));
    }
    let h = template.n();
    if h == 0 {
        return Err(Error::InvalidArgument("template must have a vertex".into()));
    }
    let t = inst.t.to_vec();
    if binomial(t.len(), h) <= HSET_EXHAUSTIVE_CAP {
        Ok(t.into_iter().combinations(h).map(|m| classify_one(inst, &inst.t, template, d1, m)).collect())
    } else {
        let mut rng = seed.rng();
        Ok((0..HSET_SAMPLES).map(|_| classify_one(inst, &inst.t, template, d1, sample_subset(&mut rng, &t, h))).collect())
    }
}
