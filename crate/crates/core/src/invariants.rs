//! Certified values and bounds for the G-index, G-coindex and G-weight of
//! `ℝZ_K`.
//!
//! Everything is computed on `K' = K_{supp(G)}`; the inclusion and
//! projection between `ℝZ_{K'}` and `ℝZ_K` are G-maps, so all three
//! invariants agree. Bounds used:
//!
//! * rank 1: coind = wgt = `δ(K')`, and ind = `δ(K')` when the action is free;
//! * any rank: `δ(K') ≤ coind ≤ wgt ≤ min_g δ(K_{supp g})`;
//! * free: `max_g δ(K_{supp g}) ≤ ind ≤ dim K' + 1`, improved to `dim K'`
//!   when `K'` collapses onto something of lower dimension;
//! * coind = wgt = 1 when `δ(K') = 1`, and coind = wgt = `δ(K')` when all
//!   minimal non-faces of `K'` have one order and some `supp(g)` is a
//!   non-face.

use serde::Serialize;

use crate::collapse::{self, CollapseCertificate, SearchOutcome};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::torus::{GroupElement, Subtorus, DEFAULT_RANK_CAP};
use crate::vertex_set::{ExtendedNat, VertexSet};

/// Result labels used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Source {
    #[serde(rename = "Theorem 1.1")]
    RankOneExact,
    #[serde(rename = "Theorem 1.2(i)")]
    IndexSandwich,
    #[serde(rename = "Theorem 1.2(ii)")]
    CoindexSandwich,
    #[serde(rename = "Proposition 1.3")]
    CollapseBound,
    #[serde(rename = "Corollary 1.4")]
    DeltaOne,
    #[serde(rename = "Corollary 1.5")]
    EqualOrders,
}

impl Source {
    pub fn label(self) -> &'static str {
        match self {
            Source::RankOneExact => "Theorem 1.1",
            Source::IndexSandwich => "Theorem 1.2(i)",
            Source::CoindexSandwich => "Theorem 1.2(ii)",
            Source::CollapseBound => "Proposition 1.3",
            Source::DeltaOne => "Corollary 1.4",
            Source::EqualOrders => "Corollary 1.5",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The element realizing a min or max over `G \ {1}`.
    Element { element: GroupElement },
    Collapse { certificate: CollapseCertificate },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub source: Source,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Certificate {
    fn bare(source: Source) -> Self {
        Certificate {
            source,
            witness: None,
        }
    }

    fn with(source: Source, witness: Witness) -> Self {
        Certificate {
            source,
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundInterval {
    pub lower: ExtendedNat,
    pub upper: ExtendedNat,
    pub exact: bool,
    pub lower_certificate: Certificate,
    pub upper_certificate: Certificate,
    /// Every result that independently pins the exact value.
    pub exactness: Vec<Source>,
}

impl BoundInterval {
    fn new(lower: (ExtendedNat, Certificate), upper: (ExtendedNat, Certificate)) -> Self {
        assert!(
            lower.0 <= upper.0,
            "certified bounds crossed: lower {} > upper {}",
            lower.0,
            upper.0
        );
        BoundInterval {
            exact: lower.0 == upper.0,
            lower: lower.0,
            upper: upper.0,
            exactness: Vec::new(),
            lower_certificate: lower.1,
            upper_certificate: upper.1,
        }
    }

    fn exact_by(value: ExtendedNat, source: Source) -> Self {
        let mut b = Self::new(
            (value, Certificate::bare(source)),
            (value, Certificate::bare(source)),
        );
        b.exactness.push(source);
        b
    }

    fn mark_exact(&mut self, source: Source) {
        assert_eq!(
            self.lower, self.upper,
            "{} claims exactness on a nondegenerate interval",
            source.label()
        );
        self.exact = true;
        if !self.exactness.contains(&source) {
            self.exactness.push(source);
        }
    }

    /// The value when the interval is a point.
    pub fn value(&self) -> Option<ExtendedNat> {
        self.exact.then_some(self.lower)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IndexResult {
    Bounded(BoundInterval),
    /// The index is only defined for free actions.
    NotApplicable { witness: GroupElement },
}

impl IndexResult {
    pub fn interval(&self) -> Option<&BoundInterval> {
        match self {
            IndexResult::Bounded(b) => Some(b),
            IndexResult::NotApplicable { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementRow {
    pub element: GroupElement,
    pub support: VertexSet,
    pub delta: ExtendedNat,
    /// `supp(g) ∈ K`, i.e. `g` fixes points of `ℝZ_K`.
    pub support_is_face: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionBound {
    pub value: ExtendedNat,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaOneWitness {
    pub pair: VertexSet,
    pub covering: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryFlags {
    pub delta_one: Option<DeltaOneWitness>,
    pub equal_orders: Option<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub rank: usize,
    pub free: bool,
    pub non_free_witness: Option<GroupElement>,
    pub supp_g: VertexSet,
    pub delta_supp_g: ExtendedNat,
    pub flag_supp_g: ExtendedNat,
    pub dim_restricted: i64,
    /// Nontrivial elements in Gray-code order.
    pub elements: Vec<ElementRow>,
    pub index: IndexResult,
    /// The dimension bound on the index for free actions, independent of
    /// whether the lower bound already meets it.
    pub index_dimension_bound: Option<DimensionBound>,
    pub coindex: BoundInterval,
    pub weight: BoundInterval,
    pub corollaries: CorollaryFlags,
    pub collapse: Option<CollapseCertificate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CollapseOptions {
    /// Steps per greedy run; `None` means [`collapse::default_budget`].
    pub budget: Option<usize>,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for CollapseOptions {
    fn default() -> Self {
        CollapseOptions {
            budget: None,
            restarts: collapse::DEFAULT_RESTARTS,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub collapse: Option<CollapseOptions>,
    pub rank_cap: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            collapse: None,
            rank_cap: DEFAULT_RANK_CAP,
        }
    }
}

fn check_inputs(k: &SimplicialComplex, g: &Subtorus, cap: usize) -> Result<()> {
    if k.num_vertices() != g.width() {
        return Err(Error::WidthMismatch {
            expected: k.num_vertices(),
            found: g.width(),
        });
    }
    if g.rank() == 0 {
        return Err(Error::TrivialGroup);
    }
    if g.rank() > cap {
        return Err(Error::RankTooLarge {
            rank: g.rank(),
            cap,
        });
    }
    Ok(())
}

/// `δ(K_{supp(G)}) = 1`: returns the missing edge and an element whose
/// support contains it.
pub fn check_corollary_flag_one(
    k: &SimplicialComplex,
    g: &Subtorus,
) -> Result<Option<DeltaOneWitness>> {
    check_inputs(k, g, usize::MAX)?;
    let (restricted, relabel) = k.full_subcomplex(g.support())?;
    if restricted.delta_number() != ExtendedNat::Finite(1) {
        return Ok(None);
    }
    let pair = restricted
        .minimal_non_faces()
        .into_iter()
        .find(|s| s.len() == 2)
        .map(|s| relabel.lift(s))
        .expect("δ = 1 means some pair is a non-face");
    let mut ends = pair.iter();
    let (i, j) = (ends.next().unwrap(), ends.next().unwrap());
    let covering = g.find_covering_element(i, j)?;
    Ok(Some(DeltaOneWitness { pair, covering }))
}

/// All minimal non-faces of `K_{supp(G)}` share one order, and some
/// `g0 ≠ 1` has `supp(g0) ∉ K`. Returns that `g0`.
pub fn check_corollary_same_order(
    k: &SimplicialComplex,
    g: &Subtorus,
) -> Result<Option<GroupElement>> {
    same_order_with_cap(k, g, DEFAULT_RANK_CAP)
}

fn same_order_with_cap(
    k: &SimplicialComplex,
    g: &Subtorus,
    cap: usize,
) -> Result<Option<GroupElement>> {
    check_inputs(k, g, cap)?;
    let (restricted, _) = k.full_subcomplex(g.support())?;
    let orders = restricted.minimal_non_faces();
    if orders.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Ok(None);
    }
    Ok(g.elements_with_cap(false, cap)?.find(|e| !k.is_face(e.support())))
}

pub fn analyze(k: &SimplicialComplex, g: &Subtorus, opts: &AnalyzeOptions) -> Result<InvariantReport> {
    check_inputs(k, g, opts.rank_cap)?;
    let supp_g = g.support();
    let (restricted, _) = k.full_subcomplex(supp_g)?;
    let delta_supp_g = restricted.delta_number();

    let elements: Vec<ElementRow> = g
        .elements_with_cap(false, opts.rank_cap)?
        .map(|e| ElementRow {
            element: e,
            support: e.support(),
            delta: k.delta_of_restriction(e.support()),
            support_is_face: k.is_face(e.support()),
        })
        .collect();
    let non_free_witness = elements
        .iter()
        .find(|r| r.support_is_face)
        .map(|r| r.element);
    let free = non_free_witness.is_none();

    // first element attaining the extremum, in Gray order
    let min_row = elements
        .iter()
        .reduce(|a, b| if b.delta < a.delta { b } else { a })
        .expect("rank >= 1");
    let max_row = elements
        .iter()
        .reduce(|a, b| if b.delta > a.delta { b } else { a })
        .expect("rank >= 1");

    let corollaries = CorollaryFlags {
        delta_one: check_corollary_flag_one(k, g)?,
        equal_orders: same_order_with_cap(k, g, opts.rank_cap)?,
    };

    let mut coindex = if g.rank() == 1 {
        debug_assert_eq!(elements[0].delta, delta_supp_g);
        BoundInterval::exact_by(delta_supp_g, Source::RankOneExact)
    } else {
        let mut b = BoundInterval::new(
            (delta_supp_g, Certificate::bare(Source::CoindexSandwich)),
            (
                min_row.delta,
                Certificate::with(
                    Source::CoindexSandwich,
                    Witness::Element {
                        element: min_row.element,
                    },
                ),
            ),
        );
        if b.exact {
            b.exactness.push(Source::CoindexSandwich);
        }
        b
    };
    if corollaries.delta_one.is_some() {
        coindex.mark_exact(Source::DeltaOne);
    }
    if corollaries.equal_orders.is_some() {
        coindex.mark_exact(Source::EqualOrders);
    }
    let weight = coindex.clone();

    let mut collapse_cert = None;
    let (index, index_dimension_bound) = match non_free_witness {
        Some(witness) => (IndexResult::NotApplicable { witness }, None),
        None => {
            let dim = restricted.dim();
            let mut bound = DimensionBound {
                value: ExtendedNat::Finite((dim + 1) as u64),
                source: Source::IndexSandwich,
            };
            if let Some(c) = opts.collapse {
                let budget = c.budget.unwrap_or_else(|| collapse::default_budget(&restricted));
                if let SearchOutcome::Certified(cert) =
                    collapse::search_dim_reduction(&restricted, budget, c.restarts, c.seed)
                {
                    bound = DimensionBound {
                        value: ExtendedNat::Finite(dim as u64),
                        source: Source::CollapseBound,
                    };
                    collapse_cert = Some(cert);
                }
            }
            let interval = if g.rank() == 1 {
                BoundInterval::exact_by(delta_supp_g, Source::RankOneExact)
            } else {
                let upper_cert = match &collapse_cert {
                    Some(cert) => Certificate::with(
                        Source::CollapseBound,
                        Witness::Collapse {
                            certificate: cert.clone(),
                        },
                    ),
                    None => Certificate::bare(Source::IndexSandwich),
                };
                let mut b = BoundInterval::new(
                    (
                        max_row.delta,
                        Certificate::with(
                            Source::IndexSandwich,
                            Witness::Element {
                                element: max_row.element,
                            },
                        ),
                    ),
                    (bound.value, upper_cert),
                );
                if b.exact {
                    b.exactness.push(bound.source);
                }
                b
            };
            (IndexResult::Bounded(interval), Some(bound))
        }
    };

    Ok(InvariantReport {
        rank: g.rank(),
        free,
        non_free_witness,
        supp_g,
        delta_supp_g,
        flag_supp_g: restricted.flag_number(),
        dim_restricted: restricted.dim(),
        elements,
        index,
        index_dimension_bound,
        coindex,
        weight,
        corollaries,
        collapse: collapse_cert,
    })
}
