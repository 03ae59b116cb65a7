//! Subsets of `[m] = {1, .., m}` packed into a single machine word.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported vertex count; a [`VertexSet`] must fit in one `u64`.
pub const MAX_VERTICES: usize = 63;

/// A subset of `[m]`. Vertex `i` (1-indexed) lives at bit `i - 1`.
///
/// The same type is used for faces, non-faces and supports of group
/// elements.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// Builds a set from raw bits (bit `i - 1` ↔ vertex `i`).
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1, .., m}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_VERTICES, "vertex count {m} exceeds {MAX_VERTICES}");
        VertexSet((1u64 << m) - 1)
    }

    pub fn singleton(vertex: usize) -> Self {
        assert!(
            (1..=MAX_VERTICES).contains(&vertex),
            "vertex {vertex} out of range"
        );
        VertexSet(1u64 << (vertex - 1))
    }

    /// Collects 1-indexed vertices. Panics on vertex 0 or > 63; callers that
    /// handle untrusted input validate first.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        vertices
            .into_iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.with(v))
    }

    pub fn with(self, vertex: usize) -> Self {
        self | VertexSet::singleton(vertex)
    }

    pub fn without(self, vertex: usize) -> Self {
        VertexSet(self.0 & !VertexSet::singleton(vertex).0)
    }

    pub fn contains(self, vertex: usize) -> bool {
        (1..=MAX_VERTICES).contains(&vertex) && self.0 >> (vertex - 1) & 1 == 1
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|I| - 1`; the empty set has dimension −1.
    pub const fn dim(self) -> i64 {
        self.len() as i64 - 1
    }

    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_proper_subset(self, other: VertexSet) -> bool {
        self.is_subset(other) && self.0 != other.0
    }

    pub const fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Largest vertex in the set, if any.
    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, including `∅` and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Lexicographic comparison of the increasing vertex lists.
    pub fn lex_cmp(self, other: VertexSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        self.intersection(rhs)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Serialized as the increasing list of 1-indexed vertices.
impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = vs.iter().find(|v| !(1..=MAX_VERTICES).contains(v)) {
            return Err(serde::de::Error::custom(format!(
                "vertex {bad} out of range 1..={MAX_VERTICES}"
            )));
        }
        Ok(VertexSet::from_vertices(vs))
    }
}

pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Subset enumeration via the `(s - mask) & mask` trick, ascending by bits.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(VertexSet(cur))
    }
}

/// A natural number or `∞`. `Infinity` compares above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedNat {
    Finite(u64),
    Infinity,
}

impl ExtendedNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtendedNat::Finite(n) => Some(n),
            ExtendedNat::Infinity => None,
        }
    }
}

impl From<u64> for ExtendedNat {
    fn from(n: u64) -> Self {
        ExtendedNat::Finite(n)
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(n) => write!(f, "{n}"),
            ExtendedNat::Infinity => f.write_str("inf"),
        }
    }
}

/// Finite values serialize as JSON numbers, `∞` as the string `"inf"`.
impl Serialize for ExtendedNat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedNat::Finite(n) => s.serialize_u64(*n),
            ExtendedNat::Infinity => s.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dimension_of_empty_set() {
        assert_eq!(VertexSet::EMPTY.dim(), -1);
        assert_eq!(VertexSet::from_vertices([1, 3]).dim(), 1);
    }

    #[test]
    fn infinity_dominates() {
        assert!(ExtendedNat::Infinity > ExtendedNat::Finite(u64::MAX));
        assert!(ExtendedNat::Finite(1) < ExtendedNat::Finite(2));
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = VertexSet::from_vertices([2, 4, 5]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(subs[0], VertexSet::EMPTY);
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn display_lists_vertices() {
        assert_eq!(VertexSet::from_vertices([3, 1]).to_string(), "{1,3}");
        assert_eq!(VertexSet::EMPTY.to_string(), "{}");
        assert_eq!(VertexSet::full(63).max_vertex(), Some(63));
    }

    proptest! {
        #[test]
        fn vertex_list_round_trip(bits in 0u64..(1u64 << 63)) {
            let s = VertexSet::from_bits(bits);
            prop_assert_eq!(VertexSet::from_vertices(s.to_vec()), s);
            prop_assert_eq!(s.iter().len(), s.len());
        }

        #[test]
        fn lex_order_matches_vec_order(a in 0u64..256, b in 0u64..256) {
            let (x, y) = (VertexSet::from_bits(a), VertexSet::from_bits(b));
            prop_assert_eq!(x.lex_cmp(y), x.to_vec().cmp(&y.to_vec()));
        }
    }
}
