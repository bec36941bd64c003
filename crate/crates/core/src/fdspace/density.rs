//! Majorization and order density of a subspace `L` of the cover inside a
//! coordinate subspace `J`.
//!
//! `F(y)_j = min{x_j : x ∈ L, x >= y}` is the infimum of the upper
//! elements of `y` in `L`. The gap `F(y) - y` is convex, nonnegative and
//! positively homogeneous, so it vanishes on `J` iff it vanishes at the
//! vertices `±e_j` of the cross-polytope of `J`, whose hull contains a
//! neighborhood of the origin in `J`.

use serde::{Deserialize, Serialize};

use super::{FdError, FdSpace};
use crate::exact::linalg::Subspace;
use crate::exact::lp::{LinearProgram, LpOutcome, Relation};
use crate::exact::rational::{neg_vec, serde_qvec, unit, Q};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InfResult {
    Point(#[serde(with = "serde_qvec")] Vec<Q>),
    Empty,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub dense: bool,
    pub majorizing: bool,
    #[serde(with = "crate::exact::rational::serde_opt_qvec")]
    pub witness: Option<Vec<Q>>,
}

fn coords_of(j: &Subspace) -> Result<Vec<usize>, FdError> {
    j.coordinate_support().ok_or(FdError::NotCoordinate)
}

/// `{x ∈ L : x >= y}` over basis coefficients of `L`, with objective `x_k`.
fn upper_lp(l: &Subspace, y: &[Q], k: Option<usize>) -> LinearProgram {
    let basis = l.basis();
    let mut lp = LinearProgram::new(basis.len());
    for (row, yr) in y.iter().enumerate() {
        lp.add(basis.iter().map(|b| b[row].clone()).collect(), Relation::Ge, yr.clone());
    }
    if let Some(k) = k {
        lp.minimize(basis.iter().map(|b| b[k].clone()).collect());
    }
    lp
}

/// Componentwise `inf{x ∈ L : x >= y}`.
pub fn inf_upper_set(l: &Subspace, y: &[Q]) -> InfResult {
    let mut out = Vec::with_capacity(y.len());
    for k in 0..y.len() {
        match upper_lp(l, y, Some(k)).solve() {
            LpOutcome::Optimal { value, .. } => out.push(value),
            LpOutcome::Infeasible => return InfResult::Empty,
            LpOutcome::Unbounded => return InfResult::Unbounded,
        }
    }
    InfResult::Point(out)
}

fn majorized(l: &Subspace, y: &[Q]) -> bool {
    upper_lp(l, y, None).is_feasible()
}

/// `J ⊆ L - Q^m_+`: every `±e_j` of `J` lies below some element of `L`.
pub fn is_majorizing(l: &Subspace, j: &Subspace) -> Result<bool, FdError> {
    Ok(first_unmajorized(l, j)?.is_none())
}

fn first_unmajorized(l: &Subspace, j: &Subspace) -> Result<Option<Vec<Q>>, FdError> {
    let m = j.ambient_dim();
    for c in coords_of(j)? {
        for y in [unit(m, c), neg_vec(&unit(m, c))] {
            if !majorized(l, &y) {
                return Ok(Some(y));
            }
        }
    }
    Ok(None)
}

fn has_gap(l: &Subspace, y: &[Q]) -> bool {
    inf_upper_set(l, y) != InfResult::Point(y.to_vec())
}

fn candidates(m: usize, coords: &[usize]) -> Vec<Vec<Q>> {
    coords.iter().flat_map(|&c| [unit(m, c), neg_vec(&unit(m, c))]).collect()
}

pub fn is_order_dense(l: &Subspace, j: &Subspace, probe: Option<&[Q]>) -> Result<DensityReport, FdError> {
    order_dense_in(l, j, probe, Exec::default())
}

/// Decides whether `L` is order dense in `J`; a supplied failing probe is
/// reported as the witness in preference to `±e_j`.
pub fn order_dense_in(l: &Subspace, j: &Subspace, probe: Option<&[Q]>, exec: Exec) -> Result<DensityReport, FdError> {
    let coords = coords_of(j)?;
    if let Some(y) = first_unmajorized(l, j)? {
        return Ok(DensityReport { dense: false, majorizing: false, witness: Some(y) });
    }
    if let Some(y) = probe {
        if j.contains(y).map_err(|_| FdError::DimensionMismatch { expected: j.ambient_dim(), got: y.len() })? && has_gap(l, y) {
            return Ok(DensityReport { dense: false, majorizing: true, witness: Some(y.to_vec()) });
        }
    }
    let cands = candidates(j.ambient_dim(), &coords);
    let witness = exec.find_map_first(&cands, |y| has_gap(l, y).then(|| y.clone()));
    Ok(DensityReport { dense: witness.is_none(), majorizing: true, witness })
}

pub fn is_order_dense_with(
    space: &FdSpace,
    l: &Subspace,
    j: &Subspace,
    probe: Option<&[Q]>,
    exec: Exec,
) -> Result<DensityReport, FdError> {
    if l.ambient_dim() != space.m() {
        return Err(FdError::DimensionMismatch { expected: space.m(), got: l.ambient_dim() });
    }
    order_dense_in(l, j, probe, exec)
}
