//! Simplicial complexes on `[m]`, stored by their facets.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::vertex_set::{ExtendedNat, VertexSet, MAX_VERTICES};

/// A simplicial complex on `[m]` without ghost vertices.
///
/// Only the inclusion-maximal faces are stored. The full face list is
/// materialized on first use by [`SimplicialComplex::faces`].
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
    faces: OnceLock<Vec<VertexSet>>,
}

impl SimplicialComplex {
    /// Builds a complex from a list of faces spanning it. Dominated entries
    /// are dropped; every vertex of `[m]` must be covered.
    pub fn new(m: usize, facets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if !(1..=MAX_VERTICES).contains(&m) {
            return Err(Error::VertexCount(m));
        }
        let ground = VertexSet::full(m);
        let mut input: Vec<VertexSet> = facets.into_iter().collect();
        if let Some(bad) = input.iter().find(|f| !f.is_subset(ground)) {
            let vertex = bad.max_vertex().expect("nonempty");
            return Err(Error::VertexOutOfRange { vertex, m });
        }
        let covered = input.iter().fold(VertexSet::EMPTY, |acc, &f| acc | f);
        if let Some(ghost) = ground.difference(covered).iter().next() {
            return Err(Error::GhostVertex(ghost));
        }
        Ok(Self::from_parts(m, maximal_antichain(&mut input)))
    }

    /// Skips validation; `facets` must already be a covering antichain.
    fn from_parts(m: usize, mut facets: Vec<VertexSet>) -> Self {
        facets.sort_by(|a, b| a.lex_cmp(*b));
        SimplicialComplex {
            m,
            facets,
            faces: OnceLock::new(),
        }
    }

    /// The full simplex `Δ^{m-1}`.
    pub fn full_simplex(m: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&m), "vertex count {m} out of range");
        Self::from_parts(m, vec![VertexSet::full(m)])
    }

    /// `∂Δ^{m-1}`: all `(m-1)`-subsets of `[m]`. Needs `m >= 2`, since
    /// `∂Δ^0` would leave its only vertex a ghost.
    pub fn boundary_simplex(m: usize) -> Self {
        assert!((2..=MAX_VERTICES).contains(&m), "vertex count {m} out of range");
        let full = VertexSet::full(m);
        Self::from_parts(m, (1..=m).map(|v| full.without(v)).collect())
    }

    /// Cone with apex `m + 1`.
    pub fn cone(&self) -> Self {
        assert!(self.m < MAX_VERTICES, "cone would exceed {MAX_VERTICES} vertices");
        let apex = self.m + 1;
        Self::from_parts(apex, self.facets.iter().map(|f| f.with(apex)).collect())
    }

    pub fn num_vertices(&self) -> usize {
        self.m
    }

    pub fn ground(&self) -> VertexSet {
        VertexSet::full(self.m)
    }

    /// Facets in lexicographic order.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_full_simplex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0] == self.ground()
    }

    pub fn is_face(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Every face including `∅`, ordered by cardinality then bits.
    pub fn faces(&self) -> &[VertexSet] {
        self.faces.get_or_init(|| {
            let mut seen = HashSet::new();
            for f in &self.facets {
                seen.extend(f.subsets());
            }
            let mut faces: Vec<_> = seen.into_iter().collect();
            faces.sort_by_key(|f| (f.len(), f.bits()));
            faces
        })
    }

    /// Minimal non-faces of cardinality `k`.
    ///
    /// Each one is `F ∪ {v}` for the face `F` obtained by dropping its
    /// largest vertex, so candidates come from the `(k-1)`-faces.
    fn minimal_non_faces_of_size(&self, k: usize) -> Vec<VertexSet> {
        let faces = self.faces();
        let start = faces.partition_point(|f| f.len() < k - 1);
        let end = faces.partition_point(|f| f.len() < k);
        let mut out = Vec::new();
        for &face in &faces[start..end] {
            let lo = face.max_vertex().unwrap_or(0) + 1;
            for v in lo..=self.m {
                let cand = face.with(v);
                if !self.is_face(cand) && cand.iter().all(|i| self.is_face(cand.without(i))) {
                    out.push(cand);
                }
            }
        }
        out.sort_by_key(|s| s.bits());
        out
    }

    /// All inclusion-minimal non-faces, ordered by cardinality then bits.
    pub fn minimal_non_faces(&self) -> Vec<VertexSet> {
        let top = (self.dim() + 2) as usize;
        (1..=top.min(self.m))
            .flat_map(|k| self.minimal_non_faces_of_size(k))
            .collect()
    }

    /// `min { |I| - 1 : I ∉ K }`, or `∞` for the full simplex.
    pub fn delta_number(&self) -> ExtendedNat {
        if self.is_full_simplex() {
            return ExtendedNat::Infinity;
        }
        let top = (self.dim() + 2) as usize;
        (1..=top.min(self.m))
            .find(|&k| !self.minimal_non_faces_of_size(k).is_empty())
            .map(|k| ExtendedNat::Finite(k as u64 - 1))
            .expect("a complex other than the full simplex has a non-face")
    }

    /// `max { |I| - 1 : I a minimal non-face }`, or `∞` for the full simplex.
    pub fn flag_number(&self) -> ExtendedNat {
        self.minimal_non_faces()
            .iter()
            .map(|i| ExtendedNat::Finite(i.len() as u64 - 1))
            .max()
            .unwrap_or(ExtendedNat::Infinity)
    }

    pub fn is_flag(&self) -> bool {
        matches!(
            self.flag_number(),
            ExtendedNat::Finite(1) | ExtendedNat::Infinity
        )
    }

    /// Every set of at most `q + 1` vertices is a face.
    pub fn is_q_neighborly(&self, q: u64) -> bool {
        self.delta_number() >= ExtendedNat::Finite(q + 1)
    }

    /// The full subcomplex `K_I`, relabeled onto `[|I|]` in increasing order.
    pub fn full_subcomplex(&self, index: VertexSet) -> Result<(SimplicialComplex, Relabeling)> {
        if index.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if let Some(vertex) = index.difference(self.ground()).iter().next() {
            return Err(Error::VertexOutOfRange { vertex, m: self.m });
        }
        let relabel = Relabeling::new(index);
        let mut traces: Vec<_> = self
            .facets
            .iter()
            .map(|f| relabel.to_local(f.intersection(index)))
            .collect();
        let facets = maximal_antichain(&mut traces);
        Ok((Self::from_parts(index.len(), facets), relabel))
    }

    /// δ of the full subcomplex on `index`, with `δ(K_∅)` taken as `∞`.
    pub fn delta_of_restriction(&self, index: VertexSet) -> ExtendedNat {
        match self.full_subcomplex(index) {
            Ok((sub, _)) => sub.delta_number(),
            Err(_) => ExtendedNat::Infinity,
        }
    }
}

/// Reduces to the inclusion-maximal members, deduplicated.
fn maximal_antichain(sets: &mut [VertexSet]) -> Vec<VertexSet> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<VertexSet> = Vec::new();
    for &s in sets.iter() {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        Self::from_parts(self.m, self.facets.clone())
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("m", &self.m)
            .field("facets", &self.facets)
            .finish()
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} facets=[", self.m)?;
        for (k, facet) in self.facets.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{facet}")?;
        }
        f.write_str("]")
    }
}

/// Order-preserving bijection between a vertex set `I` and `[|I|]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    /// `original[k - 1]` is the vertex of the parent complex labeled `k`.
    original: Vec<usize>,
}

impl Relabeling {
    pub fn new(index: VertexSet) -> Self {
        Relabeling {
            original: index.to_vec(),
        }
    }

    pub fn original(&self) -> &[usize] {
        &self.original
    }

    pub fn image(&self) -> VertexSet {
        VertexSet::from_vertices(self.original.iter().copied())
    }

    /// Parent vertex of local vertex `local`.
    pub fn lift_vertex(&self, local: usize) -> usize {
        self.original[local - 1]
    }

    pub fn lift(&self, local: VertexSet) -> VertexSet {
        VertexSet::from_vertices(local.iter().map(|v| self.lift_vertex(v)))
    }

    /// Parent subset (contained in the image) to local labels.
    pub fn to_local(&self, set: VertexSet) -> VertexSet {
        VertexSet::from_vertices(
            self.original
                .iter()
                .enumerate()
                .filter(|(_, &v)| set.contains(v))
                .map(|(k, _)| k + 1),
        )
    }

    /// `self` maps onto the parent, `inner` maps onto `self`'s local labels.
    pub fn compose(&self, inner: &Relabeling) -> Relabeling {
        Relabeling {
            original: inner.original.iter().map(|&v| self.lift_vertex(v)).collect(),
        }
    }
}
