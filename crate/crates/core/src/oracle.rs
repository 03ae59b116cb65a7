//! Brute-force cellular model of the real moment-angle complex `ℝZ_K`.
//!
//! `ℝZ_K` is the subcomplex of the cube `[-1, 1]^m` made of the cells
//! `(σ, ε)`: `σ ∈ K` picks the interval coordinates and `ε` fixes a sign
//! `±1` on every coordinate outside `σ`. Each interval factor contributes
//! two endpoints to the boundary, so over GF(2)
//! `∂(σ, ε) = Σ_{i ∈ σ} (σ∖i, ε·(i ↦ +1)) + (σ∖i, ε·(i ↦ −1))`.

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2;
use crate::torus::GroupElement;
use crate::vertex_set::{ExtendedNat, VertexSet};

pub const DEFAULT_CELL_CAP: u64 = 1 << 22;

/// The open cell `(σ, ε)`. `negative` lists the coordinates outside `σ`
/// that sit at `-1`; the rest sit at `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    pub sigma: VertexSet,
    pub negative: VertexSet,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    /// Center of the cell: 0 on `σ`, `±1` elsewhere.
    pub fn barycenter(&self, m: usize) -> Vec<i8> {
        (1..=m)
            .map(|i| {
                if self.sigma.contains(i) {
                    0
                } else if self.negative.contains(i) {
                    -1
                } else {
                    1
                }
            })
            .collect()
    }
}

/// `Σ_{σ ∈ K} 2^{m - |σ|}`.
pub fn cell_count(k: &SimplicialComplex) -> u128 {
    let m = k.num_vertices();
    k.faces().iter().map(|f| 1u128 << (m - f.len())).sum()
}

fn check_cap(k: &SimplicialComplex, cap: u64) -> Result<()> {
    // The empty face alone gives 2^m vertices; test that before listing faces.
    let m = k.num_vertices();
    if (1u128 << m) > cap as u128 {
        return Err(Error::TooManyCells {
            count: 1u128 << m,
            cap,
        });
    }
    let count = cell_count(k);
    if count > cap as u128 {
        return Err(Error::TooManyCells { count, cap });
    }
    Ok(())
}

fn sign_patterns(free: VertexSet) -> impl Iterator<Item = VertexSet> {
    free.subsets()
}

pub fn build_cells(k: &SimplicialComplex, cap: u64) -> Result<Vec<Cell>> {
    check_cap(k, cap)?;
    let ground = k.ground();
    Ok(k.faces()
        .iter()
        .flat_map(|&sigma| {
            sign_patterns(ground.difference(sigma)).map(move |negative| Cell { sigma, negative })
        })
        .collect())
}

/// `Σ_{σ ∈ K} (-1)^{|σ|} 2^{m - |σ|}`.
pub fn euler_characteristic(k: &SimplicialComplex) -> i128 {
    let m = k.num_vertices();
    k.faces()
        .iter()
        .map(|f| {
            let term = 1i128 << (m - f.len());
            if f.len() % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Cellular chain complex of `ℝZ_K` over GF(2), cells indexed per dimension.
pub struct Mod2ChainComplex {
    m: usize,
    cells_by_dim: Vec<Vec<Cell>>,
    index: HashMap<Cell, usize>,
}

impl Mod2ChainComplex {
    pub fn new(k: &SimplicialComplex, cap: u64) -> Result<Self> {
        let cells = build_cells(k, cap)?;
        let top = (k.dim() + 1) as usize;
        let mut cells_by_dim = vec![Vec::new(); top + 1];
        for c in cells {
            cells_by_dim[c.dim()].push(c);
        }
        let index = cells_by_dim
            .iter()
            .flat_map(|cs| cs.iter().enumerate().map(|(i, c)| (*c, i)))
            .collect();
        Ok(Mod2ChainComplex {
            m: k.num_vertices(),
            cells_by_dim,
            index,
        })
    }

    pub fn top_dim(&self) -> usize {
        self.cells_by_dim.len() - 1
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells_by_dim.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn num_cells(&self) -> usize {
        self.cells_by_dim.iter().map(Vec::len).sum()
    }

    /// Codimension-one faces of `cell`, each with coefficient 1.
    pub fn boundary(&self, cell: &Cell) -> Vec<Cell> {
        cell.sigma
            .iter()
            .flat_map(|i| {
                let sigma = cell.sigma.without(i);
                [
                    Cell {
                        sigma,
                        negative: cell.negative,
                    },
                    Cell {
                        sigma,
                        negative: cell.negative.with(i),
                    },
                ]
            })
            .collect()
    }

    /// Columns of `∂_dim` as row indices into the `(dim-1)`-cells.
    pub fn boundary_columns(&self, dim: usize) -> Vec<Vec<usize>> {
        self.cells(dim)
            .iter()
            .map(|c| self.boundary(c).iter().map(|b| self.index[b]).collect())
            .collect()
    }

    /// Checks `∂∘∂ = 0` cell by cell.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..=self.top_dim()).all(|d| {
            self.cells(d).iter().all(|c| {
                let mut parity: HashMap<Cell, bool> = HashMap::new();
                for b in self.boundary(c) {
                    for bb in self.boundary(&b) {
                        *parity.entry(bb).or_default() ^= true;
                    }
                }
                parity.values().all(|odd| !odd)
            })
        })
    }

    /// `b_0 .. b_top` over GF(2).
    pub fn betti_numbers(&self) -> Vec<usize> {
        let top = self.top_dim();
        // ranks[d] = rank ∂_d : C_d → C_{d-1}; ∂_0 = 0, ∂_{top+1} = 0
        let mut ranks = vec![0usize; top + 2];
        for (d, r) in ranks.iter_mut().enumerate().take(top + 1).skip(1) {
            *r = gf2::rank(self.cells(d - 1).len(), &self.boundary_columns(d));
        }
        (0..=top)
            .map(|d| self.cells(d).len() - ranks[d] - ranks[d + 1])
            .collect()
    }

    pub fn dimension_of_ambient(&self) -> usize {
        self.m
    }
}

/// Mod-2 Betti numbers `b_0 .. b_{dim K + 1}` of `ℝZ_K`.
pub fn mod2_homology(k: &SimplicialComplex, cap: u64) -> Result<Vec<usize>> {
    Ok(Mod2ChainComplex::new(k, cap)?.betti_numbers())
}

/// Cells mapped to themselves by `g`: those with `supp(g) ⊆ σ`. Sign
/// coordinates outside `σ` must not flip, and flipping interval
/// coordinates keeps the open cell.
pub fn fixed_cells(k: &SimplicialComplex, g: &GroupElement, cap: u64) -> Result<Vec<Cell>> {
    if g.width() != k.num_vertices() {
        return Err(Error::WidthMismatch {
            expected: k.num_vertices(),
            found: g.width(),
        });
    }
    let supp = g.support();
    Ok(build_cells(k, cap)?
        .into_iter()
        .filter(|c| supp.is_subset(c.sigma))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityCheck {
    pub delta: ExtendedNat,
    pub reduced_betti: Vec<usize>,
    /// Reduced mod-2 homology vanishes below degree `δ(K)`.
    pub holds: bool,
}

/// Homological shadow of "`K` q-neighborly ⇒ `ℝZ_K` q-connected" with
/// `q = δ(K) - 1`. Vanishing homology is necessary, not sufficient, for
/// connectivity, so a pass here is evidence rather than proof.
pub fn check_connectivity(k: &SimplicialComplex, cap: u64) -> Result<ConnectivityCheck> {
    let mut reduced = mod2_homology(k, cap)?;
    reduced[0] -= 1;
    let delta = k.delta_number();
    let holds = reduced
        .iter()
        .enumerate()
        .all(|(i, &b)| b == 0 || ExtendedNat::Finite(i as u64) >= delta);
    Ok(ConnectivityCheck {
        delta,
        reduced_betti: reduced,
        holds,
    })
}

pub fn verify_connectivity(k: &SimplicialComplex, cap: u64) -> Result<bool> {
    Ok(check_connectivity(k, cap)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::torus::Subtorus;

    const CAP: u64 = DEFAULT_CELL_CAP;

    #[test]
    fn cell_counts() {
        let b = SimplicialComplex::boundary_simplex(3);
        assert_eq!(build_cells(&b, CAP).unwrap().len(), 8 + 3 * 4 + 3 * 2);
        assert_eq!(build_cells(&four_cycle(), CAP).unwrap().len(), 16 + 4 * 8 + 4 * 4);
        for m in 1..=5 {
            let full = SimplicialComplex::full_simplex(m);
            assert_eq!(build_cells(&full, CAP).unwrap().len(), 3usize.pow(m as u32));
        }
        assert_eq!(
            build_cells(&b, 25).unwrap_err(),
            Error::TooManyCells { count: 26, cap: 25 }
        );
        let wide = SimplicialComplex::new(40, (1..=40).map(VertexSet::singleton)).unwrap();
        assert!(matches!(
            build_cells(&wide, CAP),
            Err(Error::TooManyCells { .. })
        ));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&SimplicialComplex::boundary_simplex(3)), 2);
        assert_eq!(euler_characteristic(&four_cycle()), 0);
        for m in 1..=6 {
            assert_eq!(euler_characteristic(&SimplicialComplex::full_simplex(m)), 1);
        }
    }

    #[test]
    fn homology_fixtures() {
        let b = SimplicialComplex::boundary_simplex(3);
        assert_eq!(mod2_homology(&b, CAP).unwrap(), vec![1, 0, 1]);
        assert_eq!(mod2_homology(&four_cycle(), CAP).unwrap(), vec![1, 2, 1]);
        assert_eq!(
            mod2_homology(&SimplicialComplex::full_simplex(3), CAP).unwrap(),
            vec![1, 0, 0, 0]
        );
        // ∂Δ^{q} gives the q-sphere
        assert_eq!(
            mod2_homology(&SimplicialComplex::boundary_simplex(4), CAP).unwrap(),
            vec![1, 0, 0, 1]
        );
    }

    #[test]
    fn chain_complex_is_a_complex() {
        for k in [four_cycle(), mixed_orders(), SimplicialComplex::boundary_simplex(4).cone()] {
            let cc = Mod2ChainComplex::new(&k, CAP).unwrap();
            assert!(cc.boundary_squares_to_zero());
            let chi: i128 = cc
                .betti_numbers()
                .iter()
                .enumerate()
                .map(|(i, &b)| if i % 2 == 0 { b as i128 } else { -(b as i128) })
                .sum();
            assert_eq!(chi, euler_characteristic(&k));
        }
    }

    #[test]
    fn fixed_cell_examples() {
        let b = SimplicialComplex::boundary_simplex(3);
        let g = GroupElement::parse("111").unwrap();
        assert!(fixed_cells(&b, &g, CAP).unwrap().is_empty());
        let id = GroupElement::identity(3);
        assert_eq!(fixed_cells(&b, &id, CAP).unwrap().len(), 26);
        let g1 = GroupElement::parse("100").unwrap();
        assert_eq!(fixed_cells(&b, &g1, CAP).unwrap().len(), 4 + 2 + 2);
    }

    /// The point-level criterion: `g` fixes the cell iff it fixes its
    /// barycenter.
    #[test]
    fn fixed_cells_match_barycenters() {
        let k = mixed_orders();
        let full = Subtorus::full(5).unwrap();
        let cells = build_cells(&k, CAP).unwrap();
        for g in full.elements(true).unwrap() {
            let fixed = fixed_cells(&k, &g, CAP).unwrap();
            let by_point: Vec<_> = cells
                .iter()
                .filter(|c| {
                    let x = c.barycenter(5);
                    (1..=5).all(|i| {
                        let gi = if g.support().contains(i) { -1 } else { 1 };
                        gi * x[i - 1] == x[i - 1]
                    })
                })
                .copied()
                .collect();
            assert_eq!(fixed, by_point, "g = {g}");
        }
    }

    #[test]
    fn connectivity_examples() {
        let b = SimplicialComplex::boundary_simplex(3);
        let check = check_connectivity(&b, CAP).unwrap();
        assert_eq!(check.reduced_betti, vec![0, 0, 1]);
        assert!(check.holds);
        assert!(verify_connectivity(&four_cycle(), CAP).unwrap());
        for m in 1..=4 {
            assert!(verify_connectivity(&SimplicialComplex::full_simplex(m), CAP).unwrap());
        }
    }
}
