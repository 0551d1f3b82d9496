use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A subset of `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_slice(universe: usize, members: &[usize]) -> Result<Self> {
        Self::from_iter_checked(universe, members.iter().copied())
    }

    pub fn from_iter_checked<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let mut s = VertexSet::new(universe);
        for v in members {
            if v >= universe {
                return Err(Error::VertexOutOfRange { vertex: v, n: universe });
            }
            s.bits.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.bits.len() {
            self.bits.set(v, false);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    fn widened(&self, other: &VertexSet) -> FixedBitSet {
        let mut b = self.bits.clone();
        b.grow(other.universe());
        b
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut b = self.widened(other);
        b.union_with(&other.bits);
        VertexSet { bits: b }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut b = self.widened(other);
        b.intersect_with(&other.bits);
        VertexSet { bits: b }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut b = self.widened(other);
        b.difference_with(&other.bits);
        VertexSet { bits: b }
    }

    pub fn intersection_count(&self, other: &FixedBitSet) -> usize {
        self.bits.intersection_count(other)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    /// Deserializes from a member list; the universe is `max + 1`.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        let universe = members.iter().max().map_or(0, |m| m + 1);
        VertexSet::from_slice(universe, &members).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_slice(6, &[0, 1, 2]).unwrap();
        let b = VertexSet::from_slice(6, &[2, 3]).unwrap();
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 1]);
        assert!(!a.is_disjoint(&b));
        assert!(VertexSet::from_slice(3, &[3]).is_err());
    }
}
