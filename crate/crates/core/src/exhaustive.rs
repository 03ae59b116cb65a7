//! Property suites over every simplicial complex on at most five vertices
//! and every subgroup of `(Z/2)^m`.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::collapse::{self, SearchOutcome};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::invariants::{self, AnalyzeOptions, IndexResult, InvariantReport};
use crate::oracle::{self, Mod2ChainComplex, DEFAULT_CELL_CAP};
use crate::torus::{GroupElement, Subtorus};
use crate::vertex_set::{ExtendedNat, VertexSet};

pub const MAX_EXHAUSTIVE_VERTICES: usize = 5;

/// Every complex on exactly `[m]` (no ghost vertices), in a fixed order.
///
/// Sets of size ≥ 2 are decided in order of cardinality; a set may only be
/// added once all of its codimension-one subsets are present.
pub fn all_complexes(m: usize) -> Vec<SimplicialComplex> {
    assert!((1..=MAX_EXHAUSTIVE_VERTICES).contains(&m));
    let mut candidates: Vec<VertexSet> = VertexSet::full(m)
        .subsets()
        .filter(|s| s.len() >= 2)
        .collect();
    candidates.sort_by_key(|s| (s.len(), s.bits()));
    let mut present = vec![false; 1 << m];
    present[0] = true;
    for v in 1..=m {
        present[VertexSet::singleton(v).bits() as usize] = true;
    }
    let mut out = Vec::new();
    extend(&candidates, 0, &mut present, m, &mut out);
    out
}

fn extend(
    candidates: &[VertexSet],
    next: usize,
    present: &mut [bool],
    m: usize,
    out: &mut Vec<SimplicialComplex>,
) {
    let Some(&set) = candidates.get(next) else {
        let faces = (0..present.len())
            .filter(|&b| present[b])
            .map(|b| VertexSet::from_bits(b as u64));
        out.push(SimplicialComplex::new(m, faces).expect("singletons are always present"));
        return;
    };
    extend(candidates, next + 1, present, m, out);
    if set
        .iter()
        .all(|v| present[set.without(v).bits() as usize])
    {
        present[set.bits() as usize] = true;
        extend(candidates, next + 1, present, m, out);
        present[set.bits() as usize] = false;
    }
}

/// Every subgroup of `(Z/2)^m`, trivial group first, then by rank.
pub fn all_subtori(m: usize) -> Vec<Subtorus> {
    let vectors: Vec<GroupElement> = VertexSet::full(m)
        .subsets()
        .skip(1)
        .map(|s| GroupElement::from_support(m, s).expect("in range"))
        .collect();
    let trivial = Subtorus::from_generators(m, &[]).expect("valid width");
    let mut seen: HashSet<Subtorus> = HashSet::from([trivial.clone()]);
    let mut out = vec![trivial];
    let mut layer = 0;
    while layer < out.len() {
        let end = out.len();
        for idx in layer..end {
            let base = out[idx].clone();
            for v in &vectors {
                if base.contains(v) {
                    continue;
                }
                let mut gens = base.basis().to_vec();
                gens.push(*v);
                let bigger = Subtorus::from_generators(m, &gens).expect("valid width");
                if seen.insert(bigger.clone()) {
                    out.push(bigger);
                }
            }
        }
        layer = end;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    DeltaAtMostFlag,
    FullSubcomplexMonotone,
    EqualOrdersIffDeltaIsFlag,
    NeighborlyMatchesDelta,
    MinimalNonFaces,
    SubcomplexComposition,
    ConnectivityShadow,
    ChainComplex,
    CollapseReplay,
    SupportProductLaw,
    FreenessOracle,
    Sandwich,
    CorollaryCertificates,
    RankOneConsistency,
    RestrictionInvariance,
}

impl Property {
    pub const ALL: [Property; 15] = [
        Property::DeltaAtMostFlag,
        Property::FullSubcomplexMonotone,
        Property::EqualOrdersIffDeltaIsFlag,
        Property::NeighborlyMatchesDelta,
        Property::MinimalNonFaces,
        Property::SubcomplexComposition,
        Property::ConnectivityShadow,
        Property::ChainComplex,
        Property::CollapseReplay,
        Property::SupportProductLaw,
        Property::FreenessOracle,
        Property::Sandwich,
        Property::CorollaryCertificates,
        Property::RankOneConsistency,
        Property::RestrictionInvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::DeltaAtMostFlag => "delta <= flag",
            Property::FullSubcomplexMonotone => "delta(K) <= delta(K_I), flag(K_I) <= flag(K) on non-faces I",
            Property::EqualOrdersIffDeltaIsFlag => "delta = flag iff minimal non-faces share one order",
            Property::NeighborlyMatchesDelta => "q-neighborly iff delta >= q+1",
            Property::MinimalNonFaces => "minimal non-faces: exact, antichain, proper subsets are faces",
            Property::SubcomplexComposition => "(K_I)_J = K_J with composed relabeling",
            Property::ConnectivityShadow => "reduced mod-2 homology vanishes below delta",
            Property::ChainComplex => "boundary^2 = 0, Euler-Poincare, b_0 = 1",
            Property::CollapseReplay => "collapse certificates replay",
            Property::SupportProductLaw => "support product law",
            Property::FreenessOracle => "freeness matches fixed-cell oracle",
            Property::Sandwich => "sandwich consistency",
            Property::CorollaryCertificates => "corollary certificates",
            Property::RankOneConsistency => "rank-one consistency",
            Property::RestrictionInvariance => "restriction to supp(G) invariance",
        }
    }

    fn slot(self) -> usize {
        Property::ALL.iter().position(|p| *p == self).expect("listed")
    }
}

pub type DeltaFn = fn(&SimplicialComplex) -> ExtendedNat;

/// Implementations the suite checks. Swapping one in lets the harness be
/// tested against a known-bad implementation.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub delta: DeltaFn,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks {
            delta: SimplicialComplex::delta_number,
        }
    }
}

#[derive(Clone, Copy)]
pub struct ExhaustiveOptions {
    pub hooks: Hooks,
    /// Largest `m` for which every (complex, subgroup) pair is analyzed.
    pub pair_max_m: usize,
    pub cell_cap: u64,
    pub parallel: bool,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            hooks: Hooks::default(),
            pair_max_m: 4,
            cell_cap: DEFAULT_CELL_CAP,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: Property,
    pub description: &'static str,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub max_m: usize,
    pub complexes: usize,
    pub pairs: usize,
    pub results: Vec<PropertyResult>,
}

impl ExhaustiveReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(PropertyResult::passed)
    }

    pub fn result(&self, p: Property) -> &PropertyResult {
        &self.results[p.slot()]
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "exhaustive m <= {}: {} complexes, {} (complex, subgroup) pairs",
            self.max_m, self.complexes, self.pairs
        )
        .unwrap();
        for r in &self.results {
            match &r.counterexample {
                None => writeln!(out, "PASS  {:<8} {}", r.checked, r.description).unwrap(),
                Some(c) => writeln!(out, "FAIL  {:<8} {}\n      {}", r.checked, r.description, c).unwrap(),
            }
        }
        out
    }
}

/// Ordering key for "first" counterexamples: (m, complex index, subgroup index).
type Key = (usize, usize, usize);

#[derive(Default)]
struct Tally {
    checked: [usize; Property::ALL.len()],
    first: [Option<(Key, String)>; Property::ALL.len()],
}

impl Tally {
    fn record(&mut self, p: Property, key: Key, ok: bool, what: impl FnOnce() -> String) {
        let s = p.slot();
        self.checked[s] += 1;
        if !ok && self.first[s].as_ref().is_none_or(|(k, _)| key < *k) {
            self.first[s] = Some((key, what()));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for s in 0..Property::ALL.len() {
            self.checked[s] += other.checked[s];
            if let Some((k, w)) = other.first[s].clone() {
                if self.first[s].as_ref().is_none_or(|(mine, _)| k < *mine) {
                    self.first[s] = Some((k, w));
                }
            }
        }
        self
    }
}

pub fn run_exhaustive(max_m: usize, opts: &ExhaustiveOptions) -> Result<ExhaustiveReport> {
    if !(1..=MAX_EXHAUSTIVE_VERTICES).contains(&max_m) {
        return Err(Error::ExhaustiveTooLarge {
            requested: max_m,
            max: MAX_EXHAUSTIVE_VERTICES,
        });
    }
    let mut tally = Tally::default();
    let (mut complexes, mut pairs) = (0, 0);
    for m in 1..=max_m {
        let ks = all_complexes(m);
        let tori: Vec<Subtorus> = all_subtori(m).into_iter().filter(|g| g.rank() > 0).collect();
        for (t, g) in tori.iter().enumerate() {
            check_support_products(g, (m, 0, t), &mut tally);
        }
        let with_pairs = m <= opts.pair_max_m;
        complexes += ks.len();
        if with_pairs {
            pairs += ks.len() * tori.len();
        }
        let work = |(i, k): (usize, &SimplicialComplex)| -> Result<Tally> {
            let mut t = Tally::default();
            check_complex(k, (m, i, 0), opts, &mut t)?;
            if with_pairs {
                for (j, g) in tori.iter().enumerate() {
                    check_pair(k, g, (m, i, j + 1), opts, &mut t)?;
                }
            }
            Ok(t)
        };
        let parts: Vec<Result<Tally>> = if opts.parallel {
            ks.par_iter().enumerate().map(work).collect()
        } else {
            ks.iter().enumerate().map(work).collect()
        };
        for part in parts {
            tally = tally.merge(part?);
        }
    }
    let results = Property::ALL
        .iter()
        .map(|&p| PropertyResult {
            property: p,
            description: p.name(),
            checked: tally.checked[p.slot()],
            counterexample: tally.first[p.slot()].take().map(|(_, w)| w),
        })
        .collect();
    Ok(ExhaustiveReport {
        max_m,
        complexes,
        pairs,
        results,
    })
}

fn describe_group(g: &Subtorus) -> String {
    let basis: Vec<_> = g.basis().iter().map(ToString::to_string).collect();
    format!("G=<{}>", basis.join(","))
}

fn check_support_products(g: &Subtorus, key: Key, t: &mut Tally) {
    let elems: Vec<_> = g.elements(false).expect("small rank").collect();
    for a in &elems {
        for b in &elems {
            let (sa, sb) = (a.support(), b.support());
            let sab = a.product(b).expect("same width").support();
            let mut ok = sab.is_subset(sa | sb);
            for i in sa.difference(sb).iter() {
                for j in sb.difference(sa).iter() {
                    ok &= sab.contains(i) && sab.contains(j);
                }
            }
            t.record(Property::SupportProductLaw, key, ok, || {
                format!("{}: g={a} h={b} gh={}", describe_group(g), sab)
            });
        }
    }
}

fn check_complex(k: &SimplicialComplex, key: Key, opts: &ExhaustiveOptions, t: &mut Tally) -> Result<()> {
    let delta_of = opts.hooks.delta;
    let delta = delta_of(k);
    let flag = k.flag_number();
    let ground = k.ground();
    let mnf = k.minimal_non_faces();

    t.record(Property::DeltaAtMostFlag, key, delta <= flag, || {
        format!("{k}: delta={delta} flag={flag}")
    });

    for i in ground.subsets().filter(|i| !k.is_face(*i)) {
        let (sub, _) = k.full_subcomplex(i)?;
        let (sd, sf) = (delta_of(&sub), sub.flag_number());
        t.record(Property::FullSubcomplexMonotone, key, delta <= sd && sf <= flag, || {
            format!("{k}, I={i}: delta={delta} delta(K_I)={sd} flag={flag} flag(K_I)={sf}")
        });
    }

    let same_order = mnf.windows(2).all(|w| w[0].len() == w[1].len());
    t.record(
        Property::EqualOrdersIffDeltaIsFlag,
        key,
        (delta == flag) == same_order,
        || format!("{k}: delta={delta} flag={flag} equal orders={same_order}"),
    );

    for q in 0..=k.num_vertices() as u64 {
        let by_scan = ground
            .subsets()
            .filter(|s| s.len() as u64 <= q + 1)
            .all(|s| k.is_face(s));
        let by_delta = delta >= ExtendedNat::Finite(q + 1);
        t.record(
            Property::NeighborlyMatchesDelta,
            key,
            by_scan == by_delta && by_scan == k.is_q_neighborly(q),
            || format!("{k}, q={q}: scan={by_scan} delta={delta}"),
        );
    }

    let mut brute: Vec<_> = ground
        .subsets()
        .filter(|s| !k.is_face(*s) && s.iter().all(|v| k.is_face(s.without(v))))
        .collect();
    brute.sort_by_key(|s| (s.len(), s.bits()));
    let antichain = mnf
        .iter()
        .all(|a| mnf.iter().all(|b| a == b || !a.is_subset(*b)));
    t.record(Property::MinimalNonFaces, key, brute == mnf && antichain, || {
        format!("{k}: got {mnf:?}, expected {brute:?}")
    });

    for i in ground.subsets().skip(1) {
        let (ki, ri) = k.full_subcomplex(i)?;
        for j in i.subsets().skip(1) {
            let (kij, rij) = ki.full_subcomplex(ri.to_local(j))?;
            let (kj, rj) = k.full_subcomplex(j)?;
            t.record(
                Property::SubcomplexComposition,
                key,
                kij == kj && ri.compose(&rij) == rj,
                || format!("{k}, I={i}, J={j}"),
            );
        }
    }

    let chain = Mod2ChainComplex::new(k, opts.cell_cap)?;
    let betti = chain.betti_numbers();
    let chi: i128 = betti
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 0 { b as i128 } else { -(b as i128) })
        .sum();
    let chain_ok = chain.boundary_squares_to_zero()
        && chi == oracle::euler_characteristic(k)
        && betti[0] == 1
        && betti.len() as i64 == k.dim() + 2;
    t.record(Property::ChainComplex, key, chain_ok, || {
        format!("{k}: betti={betti:?} chi={}", oracle::euler_characteristic(k))
    });

    let reduced: Vec<usize> = betti
        .iter()
        .enumerate()
        .map(|(i, &b)| if i == 0 { b - 1 } else { b })
        .collect();
    let conn = reduced
        .iter()
        .enumerate()
        .all(|(i, &b)| b == 0 || ExtendedNat::Finite(i as u64) >= delta);
    t.record(Property::ConnectivityShadow, key, conn, || {
        format!("{k}: reduced betti={reduced:?} delta={delta}")
    });

    if k.dim() >= 1 {
        if let SearchOutcome::Certified(cert) =
            collapse::search_dim_reduction(k, collapse::default_budget(k), 2, 0)
        {
            let ok = cert.replay(k).is_ok() && cert.final_dim < k.dim();
            t.record(Property::CollapseReplay, key, ok, || format!("{k}: {cert:?}"));
        }
    }
    Ok(())
}

fn check_pair(
    k: &SimplicialComplex,
    g: &Subtorus,
    key: Key,
    opts: &ExhaustiveOptions,
    t: &mut Tally,
) -> Result<()> {
    let who = || format!("{k} {}", describe_group(g));

    // Raw sandwich values, computed without going through `analyze`.
    let supp_g = g.support();
    let delta_supp = k.delta_of_restriction(supp_g);
    let elems: Vec<_> = g.elements(false)?.collect();
    let deltas: Vec<_> = elems
        .iter()
        .map(|e| k.delta_of_restriction(e.support()))
        .collect();
    let min = *deltas.iter().min().expect("rank >= 1");
    let max = *deltas.iter().max().expect("rank >= 1");

    let mut fixed_somewhere = false;
    for e in &elems {
        fixed_somewhere |= !oracle::fixed_cells(k, e, opts.cell_cap)?.is_empty();
    }
    let free = g.acts_freely(k)?;
    t.record(Property::FreenessOracle, key, free != fixed_somewhere, || {
        format!("{}: acts_freely={free}, fixed cells exist={fixed_somewhere}", who())
    });

    let (restricted, relabel) = k.full_subcomplex(supp_g)?;
    let dim_bound = ExtendedNat::Finite((k.dim() + 1) as u64);
    let sandwich = deltas.iter().all(|d| delta_supp <= *d)
        && delta_supp <= min
        && (!free
            || (max <= dim_bound && max <= ExtendedNat::Finite((restricted.dim() + 1) as u64)));
    t.record(Property::Sandwich, key, sandwich, || {
        format!("{}: delta(K_supp G)={delta_supp} min={min} max={max} free={free}", who())
    });
    if !sandwich {
        // analyze asserts these bounds; nothing further can be checked
        return Ok(());
    }

    let a = invariants::analyze(k, g, &AnalyzeOptions::default())?;
    let interval_ok = a.coindex.upper == min
        && a.coindex.lower == delta_supp
        && a.weight == a.coindex
        && a.free == free;
    t.record(Property::Sandwich, key, interval_ok, || {
        format!("{}: analyze disagrees with raw bounds", who())
    });

    let mut cor_ok = true;
    if let Some(w) = &a.corollaries.delta_one {
        let mut ends = w.pair.iter();
        let pair_ok = w.pair.len() == 2
            && w.pair.is_subset(supp_g)
            && !k.is_face(w.pair)
            && w.pair.is_subset(w.covering.support())
            && g.contains(&w.covering)
            && !w.covering.is_identity();
        let one = ExtendedNat::Finite(1);
        cor_ok &= pair_ok
            && a.coindex.lower == one
            && a.coindex.upper == one
            && ends.next().is_some();
    }
    if let Some(g0) = &a.corollaries.equal_orders {
        cor_ok &= !k.is_face(g0.support())
            && g.contains(g0)
            && a.coindex.lower == delta_supp
            && a.coindex.upper == delta_supp;
    }
    t.record(Property::CorollaryCertificates, key, cor_ok, || {
        format!("{}: {:?}", who(), a.corollaries)
    });

    if g.rank() == 1 {
        let exact = a.coindex.value() == Some(deltas[0])
            && deltas[0] == delta_supp
            && match &a.index {
                IndexResult::Bounded(b) => b.value() == Some(delta_supp),
                IndexResult::NotApplicable { .. } => !free,
            };
        t.record(Property::RankOneConsistency, key, exact, || {
            format!("{}: {:?}", who(), a.coindex)
        });
    }

    let local_g = g.restrict(&relabel)?;
    let b = invariants::analyze(&restricted, &local_g, &AnalyzeOptions::default())?;
    t.record(Property::RestrictionInvariance, key, same_values(&a, &b), || {
        format!("{}: restricted analysis differs", who())
    });
    Ok(())
}

/// Equal up to relabeling of vertices.
fn same_values(a: &InvariantReport, b: &InvariantReport) -> bool {
    let bounds = |r: &InvariantReport| {
        let idx = r.index.interval().map(|i| (i.lower, i.upper, i.exact));
        (
            idx,
            (r.coindex.lower, r.coindex.upper, r.coindex.exact),
            (r.weight.lower, r.weight.upper, r.weight.exact),
        )
    };
    let deltas = |r: &InvariantReport| r.elements.iter().map(|e| e.delta).collect::<Vec<_>>();
    a.rank == b.rank
        && a.free == b.free
        && a.delta_supp_g == b.delta_supp_g
        && a.flag_supp_g == b.flag_supp_g
        && a.dim_restricted == b.dim_restricted
        && bounds(a) == bounds(b)
        && deltas(a) == deltas(b)
        && a.corollaries.delta_one.is_some() == b.corollaries.delta_one.is_some()
        && a.corollaries.equal_orders.is_some() == b.corollaries.equal_orders.is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: every family containing ∅ and the singletons,
    /// tested for downward closure directly.
    fn brute_count(m: usize) -> usize {
        let big: Vec<VertexSet> = VertexSet::full(m).subsets().filter(|s| s.len() >= 2).collect();
        (0u64..1 << big.len())
            .filter(|mask| {
                let has = |s: VertexSet| {
                    s.len() < 2 || big.iter().position(|b| *b == s).is_some_and(|p| mask >> p & 1 == 1)
                };
                big.iter()
                    .enumerate()
                    .filter(|(p, _)| mask >> p & 1 == 1)
                    .all(|(_, s)| s.iter().all(|v| has(s.without(v))))
            })
            .count()
    }

    #[test]
    fn complex_counts() {
        for m in 1..=4 {
            assert_eq!(all_complexes(m).len(), brute_count(m), "m={m}");
        }
        assert_eq!(
            (1..=5).map(|m| all_complexes(m).len()).collect::<Vec<_>>(),
            vec![1, 2, 9, 114, 6894]
        );
        let ks = all_complexes(3);
        let distinct: HashSet<_> = ks.iter().map(|k| k.facets().to_vec()).collect();
        assert_eq!(distinct.len(), ks.len());
    }

    #[test]
    fn subtorus_counts() {
        // sum of Gaussian binomials [m choose k]_2
        let counts: Vec<_> = (1..=5).map(|m| all_subtori(m).len()).collect();
        assert_eq!(counts, vec![2, 5, 16, 67, 374]);
    }

    #[test]
    fn small_run_passes() {
        let r = run_exhaustive(3, &ExhaustiveOptions::default()).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert_eq!(r.complexes, 1 + 2 + 9);
        assert!(r.results.iter().all(|p| p.checked > 0), "{}", r.to_text());
    }

    fn off_by_one_delta(k: &SimplicialComplex) -> ExtendedNat {
        match k.delta_number() {
            ExtendedNat::Finite(n) => ExtendedNat::Finite(n + 1),
            inf => inf,
        }
    }

    #[test]
    fn broken_delta_is_caught() {
        let opts = ExhaustiveOptions {
            hooks: Hooks {
                delta: off_by_one_delta,
            },
            ..ExhaustiveOptions::default()
        };
        let r = run_exhaustive(4, &opts).unwrap();
        assert!(!r.all_passed());
        let c = &r.result(Property::NeighborlyMatchesDelta).counterexample;
        assert!(c.as_deref().is_some_and(|s| s.contains("m=")), "{c:?}");
    }

    #[test]
    fn parallel_and_serial_agree() {
        let serial = ExhaustiveOptions {
            parallel: false,
            ..ExhaustiveOptions::default()
        };
        assert_eq!(
            run_exhaustive(3, &serial).unwrap(),
            run_exhaustive(3, &ExhaustiveOptions::default()).unwrap()
        );
    }

    #[test]
    fn rejects_large_m() {
        let e = run_exhaustive(6, &ExhaustiveOptions::default()).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert!(run_exhaustive(0, &ExhaustiveOptions::default()).is_err());
    }
}
