//! Subgroups of `(Z/2)^m` as GF(2) row spaces.
//!
//! An element `g = (g_1, .., g_m)` with `g_i = ±1` is stored as the bit
//! vector whose bit `i - 1` is set iff `g_i = -1`; the group law is XOR.

use std::fmt;

use serde::Serialize;

use crate::complex::{Relabeling, SimplicialComplex};
use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Default cap on `rank G` for anything that walks all of `G`.
pub const DEFAULT_RANK_CAP: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    bits: VertexSet,
    width: usize,
}

impl GroupElement {
    pub fn identity(width: usize) -> Self {
        GroupElement {
            bits: VertexSet::EMPTY,
            width,
        }
    }

    /// The element acting by `-1` exactly on `support`.
    pub fn from_support(width: usize, support: VertexSet) -> Result<Self> {
        if !(1..=MAX_VERTICES).contains(&width) {
            return Err(Error::VertexCount(width));
        }
        if let Some(vertex) = support.difference(VertexSet::full(width)).iter().next() {
            return Err(Error::VertexOutOfRange { vertex, m: width });
        }
        Ok(GroupElement {
            bits: support,
            width,
        })
    }

    /// Parses a string of `0`/`1`; character `k` (from the left) is vertex `k`.
    pub fn parse(text: &str) -> Result<Self> {
        let width = text.chars().count();
        let mut bits = VertexSet::EMPTY;
        for (k, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits = bits.with(k + 1),
                other => {
                    return Err(Error::MalformedInput {
                        location: format!("character {}", k + 1),
                        message: format!("expected '0' or '1', found {other:?}"),
                    })
                }
            }
        }
        Self::from_support(width, bits)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `supp(g) = { i : g_i = -1 }`.
    pub fn support(&self) -> VertexSet {
        self.bits
    }

    pub fn is_identity(&self) -> bool {
        self.bits.is_empty()
    }

    /// Group product (coordinatewise sign product, i.e. XOR of supports).
    pub fn product(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        Ok(self.xor(other))
    }

    fn xor(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            bits: VertexSet::from_bits(self.bits.bits() ^ other.bits.bits()),
            width: self.width,
        }
    }

    /// Lowest vertex in the support; the pivot in echelon form.
    fn pivot(&self) -> Option<usize> {
        self.bits.iter().next()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 1..=self.width {
            f.write_str(if self.bits.contains(v) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({self})")
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A subgroup `G < (Z/2)^m`, kept as its reduced row-echelon basis.
///
/// Rows are sorted by pivot (lowest support vertex), and each pivot column
/// is zero in every other row, so equal subgroups have equal bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subtorus {
    width: usize,
    basis: Vec<GroupElement>,
}

impl Subtorus {
    pub fn from_generators(width: usize, gens: &[GroupElement]) -> Result<Self> {
        if !(1..=MAX_VERTICES).contains(&width) {
            return Err(Error::VertexCount(width));
        }
        let mut basis: Vec<GroupElement> = Vec::new();
        for g in gens {
            if g.width != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: g.width,
                });
            }
            let mut v = *g;
            for row in &basis {
                let p = row.pivot().expect("basis rows are nonzero");
                if v.bits.contains(p) {
                    v = v.xor(row);
                }
            }
            let Some(p) = v.pivot() else { continue };
            for row in basis.iter_mut() {
                if row.bits.contains(p) {
                    *row = row.xor(&v);
                }
            }
            basis.push(v);
        }
        basis.sort_by_key(|r| r.pivot());
        Ok(Subtorus { width, basis })
    }

    /// `(Z/2)^m` itself.
    pub fn full(width: usize) -> Result<Self> {
        let gens: Vec<_> = (1..=width)
            .map(|v| GroupElement::from_support(width, VertexSet::singleton(v)))
            .collect::<Result<_>>()?;
        Self::from_generators(width, &gens)
    }

    /// The diagonal `Z/2` generated by `(-1, .., -1)`.
    pub fn diagonal(width: usize) -> Result<Self> {
        let g = GroupElement::from_support(width, VertexSet::full(width))?;
        Self::from_generators(width, &[g])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        if g.width != self.width {
            return false;
        }
        let mut v = *g;
        for row in &self.basis {
            if v.bits.contains(row.pivot().expect("nonzero row")) {
                v = v.xor(row);
            }
        }
        v.is_identity()
    }

    /// `supp(G)`: the union of all supports, which is the OR of the basis.
    pub fn support(&self) -> VertexSet {
        self.basis
            .iter()
            .fold(VertexSet::EMPTY, |acc, g| acc | g.support())
    }

    pub fn elements(&self, include_identity: bool) -> Result<Elements<'_>> {
        self.elements_with_cap(include_identity, DEFAULT_RANK_CAP)
    }

    /// All `2^rank` elements in Gray-code order of basis coefficients
    /// (identity first when included).
    pub fn elements_with_cap(&self, include_identity: bool, cap: usize) -> Result<Elements<'_>> {
        let rank = self.rank();
        if rank > cap.min(63) {
            return Err(Error::RankTooLarge { rank, cap });
        }
        let mut it = Elements {
            basis: &self.basis,
            current: GroupElement::identity(self.width),
            next_index: 0,
            total: 1u64 << rank,
        };
        if !include_identity {
            it.next();
        }
        Ok(it)
    }

    /// Some nontrivial element whose support is a face of `k`, or `None`
    /// when `G` acts freely on the real moment-angle complex of `k`.
    ///
    /// A point is fixed by `g` iff all of its coordinates in `supp(g)` are 0,
    /// and such points exist iff `supp(g)` is a face.
    pub fn non_free_witness(&self, k: &SimplicialComplex) -> Result<Option<GroupElement>> {
        if k.num_vertices() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: k.num_vertices(),
            });
        }
        Ok(self.elements(false)?.find(|g| k.is_face(g.support())))
    }

    pub fn acts_freely(&self, k: &SimplicialComplex) -> Result<bool> {
        Ok(self.non_free_witness(k)?.is_none())
    }

    /// A nontrivial `g0` with `{i, j} ⊆ supp(g0)`.
    ///
    /// Takes basis rows `g_i ∋ i` and `g_j ∋ j`; if neither covers both
    /// vertices then `g_i g_j` does.
    pub fn find_covering_element(&self, i: usize, j: usize) -> Result<GroupElement> {
        let row_with = |v: usize| {
            self.basis
                .iter()
                .find(|g| g.bits.contains(v))
                .ok_or(Error::VertexNotInSupport(v))
        };
        let gi = *row_with(i)?;
        let gj = *row_with(j)?;
        Ok(if gi.bits.contains(j) {
            gi
        } else if gj.bits.contains(i) {
            gj
        } else {
            gi.xor(&gj)
        })
    }

    /// The image of `G` under the coordinate projection onto `relabel`'s
    /// image, in local labels. Injective when the image contains `supp(G)`.
    pub fn restrict(&self, relabel: &Relabeling) -> Result<Subtorus> {
        let width = relabel.original().len();
        let gens: Vec<_> = self
            .basis
            .iter()
            .map(|g| GroupElement::from_support(width, relabel.to_local(g.support())))
            .collect::<Result<_>>()?;
        Subtorus::from_generators(width, &gens)
    }
}

/// Gray-code walk over a subgroup; see [`Subtorus::elements_with_cap`].
pub struct Elements<'a> {
    basis: &'a [GroupElement],
    current: GroupElement,
    next_index: u64,
    total: u64,
}

impl Iterator for Elements<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        if self.next_index >= self.total {
            return None;
        }
        if self.next_index > 0 {
            let flip = self.next_index.trailing_zeros() as usize;
            self.current = self.current.xor(&self.basis[flip]);
        }
        self.next_index += 1;
        Some(self.current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next_index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Elements<'_> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn g(s: &str) -> GroupElement {
        GroupElement::parse(s).unwrap()
    }

    fn torus(gens: &[&str]) -> Subtorus {
        let gens: Vec<_> = gens.iter().map(|s| g(s)).collect();
        Subtorus::from_generators(gens[0].width(), &gens).unwrap()
    }

    #[test]
    fn generator_reduction() {
        let diag = torus(&["111"]);
        assert_eq!(diag.rank(), 1);
        assert_eq!(diag.basis(), &[g("111")]);
        assert_eq!(torus(&["1100", "0110", "1010"]).rank(), 2);
        assert_eq!(Subtorus::from_generators(3, &[]).unwrap().rank(), 0);
        assert_eq!(
            Subtorus::from_generators(3, &[g("11")]).unwrap_err(),
            Error::WidthMismatch {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn element_enumeration() {
        let two = torus(&["1100", "0011"]);
        let elems: HashSet<_> = two.elements(false).unwrap().collect();
        assert_eq!(elems, [g("1100"), g("0011"), g("1111")].into());
        let trivial = Subtorus::from_generators(3, &[]).unwrap();
        assert_eq!(trivial.elements(false).unwrap().count(), 0);
        assert_eq!(trivial.elements(true).unwrap().count(), 1);
        let diag = torus(&["111"]);
        assert_eq!(diag.elements(false).unwrap().collect::<Vec<_>>(), vec![g("111")]);
        let full = Subtorus::full(5).unwrap();
        assert_eq!(
            full.elements_with_cap(true, 4).err(),
            Some(Error::RankTooLarge { rank: 5, cap: 4 })
        );
    }

    #[test]
    fn supports() {
        assert_eq!(torus(&["1100", "0011"]).support(), vs(&[1, 2, 3, 4]));
        assert_eq!(torus(&["110", "011"]).support(), vs(&[1, 2, 3]));
        assert!(Subtorus::from_generators(3, &[]).unwrap().support().is_empty());
    }

    #[test]
    fn freeness() {
        let b = crate::SimplicialComplex::boundary_simplex(3);
        assert!(Subtorus::diagonal(3).unwrap().acts_freely(&b).unwrap());
        let full = crate::SimplicialComplex::full_simplex(4);
        assert_eq!(
            Subtorus::diagonal(4).unwrap().non_free_witness(&full).unwrap(),
            Some(g("1111"))
        );
        assert_eq!(
            torus(&["1000"]).non_free_witness(&four_cycle()).unwrap(),
            Some(g("1000"))
        );
        assert!(matches!(
            torus(&["111"]).acts_freely(&four_cycle()),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn products() {
        assert_eq!(g("1100").product(&g("0110")).unwrap(), g("1010"));
        assert!(g("1011").product(&g("1011")).unwrap().is_identity());
        let gh = g("110").product(&g("011")).unwrap();
        assert_eq!(gh, g("101"));
        assert!(gh.support().contains(1) && gh.support().contains(3));
        assert!(g("11").product(&g("110")).is_err());
    }

    #[test]
    fn covering_elements() {
        assert_eq!(torus(&["110", "011"]).find_covering_element(1, 3).unwrap(), g("101"));
        assert_eq!(torus(&["111"]).find_covering_element(1, 2).unwrap(), g("111"));
        assert_eq!(
            torus(&["1100", "0011"]).find_covering_element(1, 4).unwrap(),
            g("1111")
        );
        assert_eq!(
            torus(&["1100"]).find_covering_element(1, 3).unwrap_err(),
            Error::VertexNotInSupport(3)
        );
    }

    #[test]
    fn parse_rejects_junk() {
        assert!(matches!(GroupElement::parse("10x"), Err(Error::MalformedInput { .. })));
        assert!(GroupElement::parse("").is_err());
        assert_eq!(g("0110").to_string(), "0110");
    }

    fn arb_gens(width: usize) -> impl Strategy<Value = Vec<GroupElement>> {
        prop::collection::vec(0u64..(1 << width), 0..6).prop_map(move |v| {
            v.into_iter()
                .map(|b| GroupElement::from_support(width, VertexSet::from_bits(b)).unwrap())
                .collect()
        })
    }

    proptest! {
        #[test]
        fn canonical_basis_ignores_generator_presentation(
            gens in arb_gens(6),
            perm_seed in any::<u64>(),
        ) {
            let base = Subtorus::from_generators(6, &gens).unwrap();
            let mut shuffled = gens.clone();
            if shuffled.len() > 1 {
                let n = shuffled.len();
                shuffled.rotate_left((perm_seed as usize) % n);
                // fold a neighbour into each generator: same span
                for k in 1..n {
                    shuffled[k] = shuffled[k].xor(&shuffled[k - 1]);
                }
            }
            let other = Subtorus::from_generators(6, &shuffled).unwrap();
            prop_assert_eq!(&base, &other);
            let elems: HashSet<_> = base.elements(true).unwrap().collect();
            prop_assert_eq!(elems.len(), 1 << base.rank());
            prop_assert!(gens.iter().all(|g| base.contains(g)));
        }

        #[test]
        fn support_is_union_of_element_supports(gens in arb_gens(6)) {
            let t = Subtorus::from_generators(6, &gens).unwrap();
            let union = t.elements(true).unwrap().fold(VertexSet::EMPTY, |a, g| a | g.support());
            prop_assert_eq!(union, t.support());
        }

        #[test]
        fn covering_element_exists(gens in arb_gens(5)) {
            let t = Subtorus::from_generators(5, &gens).unwrap();
            let supp = t.support();
            for i in supp.iter() {
                for j in supp.iter() {
                    let g0 = t.find_covering_element(i, j).unwrap();
                    prop_assert!(t.contains(&g0) && !g0.is_identity());
                    prop_assert!(g0.support().contains(i) && g0.support().contains(j));
                }
            }
        }
    }
}
