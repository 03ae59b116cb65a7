//! Elementary collapses and a greedy search for a dimension-reducing
//! collapse.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Restarts used when the caller has no preference.
pub const DEFAULT_RESTARTS: usize = 8;

/// An elementary collapsing pair: `tau` is a face whose only proper
/// superface is `sigma`. Uniqueness forces `|sigma| = |tau| + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CollapseStep {
    pub sigma: VertexSet,
    pub tau: VertexSet,
}

/// A complex given by its explicit face set. Unlike [`SimplicialComplex`]
/// this tolerates ghost vertices, which collapses can create.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceComplex {
    m: usize,
    faces: HashSet<VertexSet>,
}

impl From<&SimplicialComplex> for FaceComplex {
    fn from(k: &SimplicialComplex) -> Self {
        FaceComplex {
            m: k.num_vertices(),
            faces: k.faces().iter().copied().collect(),
        }
    }
}

impl FaceComplex {
    pub fn num_vertices(&self) -> usize {
        self.m
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.faces.contains(&face)
    }

    pub fn dim(&self) -> i64 {
        self.faces.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces
            .iter()
            .all(|f| f.iter().all(|v| self.faces.contains(&f.without(v))))
    }

    /// Definitional check: `tau` is a nonempty face and `sigma` is the one
    /// face properly containing it.
    pub fn is_free_pair(&self, step: CollapseStep) -> bool {
        if step.tau.is_empty() || !self.contains(step.tau) || !self.contains(step.sigma) {
            return false;
        }
        let mut above = self.faces.iter().filter(|f| step.tau.is_proper_subset(**f));
        above.next() == Some(&step.sigma) && above.next().is_none()
    }

    /// All elementary collapsing pairs, ordered by `|sigma|` descending then
    /// lexicographically by `(sigma, tau)`.
    ///
    /// A face with a single codimension-one coface `sigma` is free exactly
    /// when `sigma` is itself maximal.
    pub fn free_pairs(&self) -> Vec<CollapseStep> {
        let mut pairs = Vec::new();
        for &tau in &self.faces {
            if tau.is_empty() {
                continue;
            }
            let mut cofaces = (1..=self.m)
                .filter(|&v| !tau.contains(v))
                .map(|v| tau.with(v))
                .filter(|s| self.faces.contains(s));
            let (Some(sigma), None) = (cofaces.next(), cofaces.next()) else {
                continue;
            };
            let maximal = (1..=self.m)
                .filter(|&v| !sigma.contains(v))
                .all(|v| !self.faces.contains(&sigma.with(v)));
            if maximal {
                pairs.push(CollapseStep { sigma, tau });
            }
        }
        pairs.sort_by(|a, b| {
            b.sigma
                .len()
                .cmp(&a.sigma.len())
                .then_with(|| a.sigma.lex_cmp(b.sigma))
                .then_with(|| a.tau.lex_cmp(b.tau))
        });
        pairs
    }

    /// `K \ {sigma, tau}`.
    pub fn apply_collapse(&self, step: CollapseStep) -> Result<FaceComplex> {
        if !self.is_free_pair(step) {
            return Err(not_free(step));
        }
        debug_assert_eq!(step.sigma.len(), step.tau.len() + 1);
        let mut next = self.clone();
        next.faces.remove(&step.sigma);
        next.faces.remove(&step.tau);
        Ok(next)
    }
}

fn not_free(step: CollapseStep) -> Error {
    Error::NotAFreePair {
        sigma: step.sigma.to_string(),
        tau: step.tau.to_string(),
    }
}

pub fn free_pairs(k: &SimplicialComplex) -> Vec<CollapseStep> {
    FaceComplex::from(k).free_pairs()
}

pub fn apply_collapse(k: &SimplicialComplex, step: CollapseStep) -> Result<FaceComplex> {
    FaceComplex::from(k).apply_collapse(step)
}

/// An ordered collapse `K ↘ L` with `dim L = final_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseCertificate {
    pub steps: Vec<CollapseStep>,
    pub start_dim: i64,
    pub final_dim: i64,
}

impl CollapseCertificate {
    /// Replays every step against `k`, checking each is an elementary
    /// collapse at the moment it is applied and that the end dimension
    /// matches.
    pub fn replay(&self, k: &SimplicialComplex) -> Result<FaceComplex> {
        let mut current = FaceComplex::from(k);
        for &step in &self.steps {
            current = current.apply_collapse(step)?;
        }
        if current.dim() != self.final_dim || k.dim() != self.start_dim {
            return Err(Error::MalformedInput {
                location: "collapse certificate".into(),
                message: format!(
                    "claims {} -> {}, replay gives {} -> {}",
                    self.start_dim,
                    self.final_dim,
                    k.dim(),
                    current.dim()
                ),
            });
        }
        Ok(current)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Certified(CollapseCertificate),
    /// No dimension-reducing collapse was found. This is not a proof that
    /// none exists.
    Exhausted,
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&CollapseCertificate> {
        match self {
            SearchOutcome::Certified(c) => Some(c),
            SearchOutcome::Exhausted => None,
        }
    }
}

/// `2 × #faces`, counting `∅`.
pub fn default_budget(k: &SimplicialComplex) -> usize {
    2 * k.faces().len()
}

/// Greedy collapse search for some `L` with `dim L < dim K`.
///
/// Each run repeatedly removes a free pair with the largest `sigma`, for at
/// most `budget` steps. Run 0 breaks ties lexicographically; later runs
/// pick uniformly among the largest pairs with a ChaCha stream seeded by
/// `seed + run`. The first successful run is returned.
pub fn search_dim_reduction(
    k: &SimplicialComplex,
    budget: usize,
    restarts: usize,
    seed: u64,
) -> SearchOutcome {
    let start_dim = k.dim();
    if start_dim < 1 {
        return SearchOutcome::Exhausted;
    }
    let initial = FaceComplex::from(k);
    for run in 0..=restarts {
        let mut rng = (run > 0).then(|| ChaCha8Rng::seed_from_u64(seed.wrapping_add(run as u64)));
        let mut current = initial.clone();
        let mut steps = Vec::new();
        while current.dim() >= start_dim && steps.len() < budget {
            let pairs = current.free_pairs();
            let Some(first) = pairs.first() else { break };
            let step = match rng.as_mut() {
                None => *first,
                Some(rng) => {
                    let top = pairs.partition_point(|p| p.sigma.len() == first.sigma.len());
                    *pairs[..top].choose(rng).expect("nonempty")
                }
            };
            current = current
                .apply_collapse(step)
                .expect("free_pairs only yields free pairs");
            steps.push(step);
        }
        let final_dim = current.dim();
        if final_dim < start_dim {
            return SearchOutcome::Certified(CollapseCertificate {
                steps,
                start_dim,
                final_dim,
            });
        }
        if run == 0 && current.free_pairs().is_empty() && steps.is_empty() {
            // nothing is free at all; other tie-breaks cannot help
            break;
        }
    }
    SearchOutcome::Exhausted
}
