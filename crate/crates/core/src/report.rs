//! `analyze` reports: assembly plus JSON and plain-text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::invariants::{
    self, AnalyzeOptions, BoundInterval, CollapseOptions, IndexResult, InvariantReport,
};
use crate::oracle::{self, ConnectivityCheck, Mod2ChainComplex, DEFAULT_CELL_CAP};
use crate::problem::{Problem, ProblemFile};
use crate::torus::{GroupElement, DEFAULT_RANK_CAP};
use crate::vertex_set::{ExtendedNat, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub oracle: bool,
    pub collapse: Option<CollapseOptions>,
    pub max_cells: u64,
    pub rank_cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            oracle: false,
            collapse: None,
            max_cells: DEFAULT_CELL_CAP,
            rank_cap: DEFAULT_RANK_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub m: usize,
    pub dim: i64,
    pub facets: Vec<VertexSet>,
    pub minimal_non_faces: Vec<VertexSet>,
    pub delta: ExtendedNat,
    pub flag: ExtendedNat,
    pub is_flag: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub rank: usize,
    pub basis: Vec<GroupElement>,
    pub support: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedCellCount {
    pub element: GroupElement,
    pub fixed_cells: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub cells: usize,
    pub euler_characteristic: i128,
    pub betti: Vec<usize>,
    pub boundary_squares_to_zero: bool,
    pub euler_poincare_holds: bool,
    pub connectivity: ConnectivityCheck,
    pub fixed_cells: Vec<FixedCellCount>,
    /// Freeness from supports agrees with "no nontrivial element fixes a cell".
    pub freeness_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub input: ProblemFile,
    pub complex: ComplexSummary,
    pub group: GroupSummary,
    pub analysis: InvariantReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
}

pub fn run_analyze(problem: &Problem, opts: &RunOptions) -> Result<Report> {
    let k = &problem.complex;
    let g = &problem.group;
    let analysis = invariants::analyze(
        k,
        g,
        &AnalyzeOptions {
            collapse: opts.collapse,
            rank_cap: opts.rank_cap,
        },
    )?;
    let oracle = if opts.oracle {
        Some(oracle_summary(problem, &analysis, opts.max_cells)?)
    } else {
        None
    };
    Ok(Report {
        input: problem.canonical(),
        complex: ComplexSummary {
            m: k.num_vertices(),
            dim: k.dim(),
            facets: k.facets().to_vec(),
            minimal_non_faces: k.minimal_non_faces(),
            delta: k.delta_number(),
            flag: k.flag_number(),
            is_flag: k.is_flag(),
        },
        group: GroupSummary {
            rank: g.rank(),
            basis: g.basis().to_vec(),
            support: g.support(),
        },
        analysis,
        oracle,
    })
}

fn oracle_summary(problem: &Problem, analysis: &InvariantReport, cap: u64) -> Result<OracleSummary> {
    let k = &problem.complex;
    let chain = Mod2ChainComplex::new(k, cap)?;
    let betti = chain.betti_numbers();
    let euler = oracle::euler_characteristic(k);
    let alternating: i128 = betti
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 0 { b as i128 } else { -(b as i128) })
        .sum();
    let fixed_cells = analysis
        .elements
        .iter()
        .map(|row| {
            Ok(FixedCellCount {
                element: row.element,
                fixed_cells: oracle::fixed_cells(k, &row.element, cap)?.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let no_fixed = fixed_cells.iter().all(|f| f.fixed_cells == 0);
    Ok(OracleSummary {
        cells: chain.num_cells(),
        euler_characteristic: euler,
        boundary_squares_to_zero: chain.boundary_squares_to_zero(),
        euler_poincare_holds: alternating == euler,
        connectivity: oracle::check_connectivity(k, cap)?,
        betti,
        freeness_agrees: no_fixed == analysis.free,
        fixed_cells,
    })
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
                s.push('\n');
                s
            }
            Format::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.complex;
        let a = &self.analysis;
        let w = &mut out;
        let sets = |v: &[VertexSet]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(w, "complex").unwrap();
        writeln!(w, "  {:<20}{}", "m", c.m).unwrap();
        writeln!(w, "  {:<20}{}", "dim", c.dim).unwrap();
        writeln!(w, "  {:<20}{}", "facets", sets(&c.facets)).unwrap();
        writeln!(w, "  {:<20}{}", "minimal non-faces", sets(&c.minimal_non_faces)).unwrap();
        writeln!(w, "  {:<20}{}", "delta", c.delta).unwrap();
        writeln!(w, "  {:<20}{}", "flag", c.flag).unwrap();
        writeln!(w, "group").unwrap();
        writeln!(w, "  {:<20}{}", "rank", self.group.rank).unwrap();
        let basis: Vec<_> = self.group.basis.iter().map(ToString::to_string).collect();
        writeln!(w, "  {:<20}{}", "basis", basis.join(" ")).unwrap();
        writeln!(w, "  {:<20}{}", "supp(G)", self.group.support).unwrap();
        writeln!(w, "  {:<20}{}", "delta(K_supp(G))", a.delta_supp_g).unwrap();
        writeln!(w, "  {:<20}{}", "flag(K_supp(G))", a.flag_supp_g).unwrap();
        match a.non_free_witness {
            None => writeln!(w, "  {:<20}yes", "free").unwrap(),
            Some(g) => writeln!(w, "  {:<20}no (witness {g})", "free").unwrap(),
        }
        writeln!(w, "elements").unwrap();
        writeln!(w, "  {:<4}{:<12}{:<16}{:<8}face", "#", "g", "supp(g)", "delta").unwrap();
        for (i, row) in a.elements.iter().enumerate() {
            writeln!(
                w,
                "  {:<4}{:<12}{:<16}{:<8}{}",
                i + 1,
                row.element.to_string(),
                row.support.to_string(),
                row.delta.to_string(),
                if row.support_is_face { "yes" } else { "no" }
            )
            .unwrap();
        }
        writeln!(w, "invariants").unwrap();
        match &a.index {
            IndexResult::Bounded(b) => writeln!(w, "  {:<10}{}", "index", interval_text(b)).unwrap(),
            IndexResult::NotApplicable { witness } => {
                writeln!(w, "  {:<10}n/a (not free, witness {witness})", "index").unwrap()
            }
        }
        writeln!(w, "  {:<10}{}", "coindex", interval_text(&a.coindex)).unwrap();
        writeln!(w, "  {:<10}{}", "weight", interval_text(&a.weight)).unwrap();
        if let Some(d) = &a.corollaries.delta_one {
            writeln!(w, "  delta-one certificate: pair {} covered by {}", d.pair, d.covering).unwrap();
        }
        if let Some(g0) = &a.corollaries.equal_orders {
            writeln!(w, "  equal-orders certificate: supp({g0}) is a non-face").unwrap();
        }
        if let Some(cert) = &a.collapse {
            writeln!(
                w,
                "collapse\n  {} steps, dim {} -> {}",
                cert.steps.len(),
                cert.start_dim,
                cert.final_dim
            )
            .unwrap();
            for s in &cert.steps {
                writeln!(w, "  ({}, {})", s.sigma, s.tau).unwrap();
            }
        }
        if let Some(o) = &self.oracle {
            writeln!(w, "oracle").unwrap();
            writeln!(w, "  {:<24}{}", "cells", o.cells).unwrap();
            writeln!(w, "  {:<24}{}", "euler characteristic", o.euler_characteristic).unwrap();
            let betti: Vec<_> = o.betti.iter().map(ToString::to_string).collect();
            writeln!(w, "  {:<24}({})", "mod-2 betti", betti.join(", ")).unwrap();
            writeln!(w, "  {:<24}{}", "boundary^2 = 0", o.boundary_squares_to_zero).unwrap();
            writeln!(w, "  {:<24}{}", "euler-poincare", o.euler_poincare_holds).unwrap();
            writeln!(w, "  {:<24}{}", "connectivity", o.connectivity.holds).unwrap();
            writeln!(w, "  {:<24}{}", "freeness agrees", o.freeness_agrees).unwrap();
            for f in &o.fixed_cells {
                writeln!(w, "  fixed by {:<15}{}", f.element.to_string(), f.fixed_cells).unwrap();
            }
        }
        out
    }
}

fn interval_text(b: &BoundInterval) -> String {
    let sources: Vec<_> = if b.exact {
        b.exactness.iter().map(|s| s.label()).collect()
    } else {
        vec![b.lower_certificate.source.label(), b.upper_certificate.source.label()]
    };
    let mut sources = sources;
    sources.dedup();
    if b.exact {
        format!("= {}  [{}]", b.lower, sources.join(", "))
    } else {
        format!("in [{}, {}]  [{}]", b.lower, b.upper, sources.join(", "))
    }
}
