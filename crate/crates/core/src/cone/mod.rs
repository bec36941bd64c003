//! Polyhedral cones with both representations kept in sync.

pub mod dd;
pub mod fourier_motzkin;
pub mod polyhedron;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::linalg::Subspace;
use crate::exact::rational::{dot, neg_vec, primitive, serde_qmat, sub_vec, unit, Q};

pub use dd::{dd_convert, Generators};
pub use polyhedron::{polyhedron_equal, upper_set, HalfSpace, Polyhedron};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("cone is not pointed")]
    NotPointed,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generators and inequalities describe different cones")]
    Inconsistent,
}

/// A polyhedral cone `C = L + cone(rays) = {x : E x = 0, F x >= 0}`.
///
/// `rays` and `facets` are irredundant. Rays are canonical modulo the
/// lineality space and facets modulo the equation space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyCone {
    dim: usize,
    #[serde(with = "serde_qmat")]
    lineality: Vec<Vec<Q>>,
    #[serde(rename = "generators", with = "serde_qmat")]
    rays: Vec<Vec<Q>>,
    #[serde(with = "serde_qmat")]
    equations: Vec<Vec<Q>>,
    #[serde(rename = "inequalities", with = "serde_qmat")]
    facets: Vec<Vec<Q>>,
}

fn check_dims(dim: usize, vs: &[Vec<Q>]) -> Result<(), ConeError> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(ConeError::DimensionMismatch { expected: dim, got: v.len() }),
        None => Ok(()),
    }
}

/// Keeps the caller's order when every computed vector appears among the
/// supplied ones; otherwise sorts.
fn order_like(mut computed: Vec<Vec<Q>>, supplied: &[Vec<Q>], allowed: bool) -> Vec<Vec<Q>> {
    let supplied: Vec<Vec<Q>> = supplied.iter().map(|v| primitive(v)).collect();
    let pos = |v: &Vec<Q>| supplied.iter().position(|s| s == v);
    if allowed && computed.iter().all(|v| pos(v).is_some()) {
        computed.sort_by_key(|v| pos(v));
    } else {
        computed.sort();
    }
    computed
}

fn with_lineality(g: &Generators) -> Vec<Vec<Q>> {
    let mut all = g.rays.clone();
    for l in &g.lineality {
        all.push(l.clone());
        all.push(neg_vec(l));
    }
    all
}

impl PolyCone {
    pub fn from_inequalities(dim: usize, inequalities: &[Vec<Q>]) -> Result<Self, ConeError> {
        check_dims(dim, inequalities)?;
        let primal = dd_convert(dim, inequalities);
        let dual = dd_convert(dim, &with_lineality(&primal));
        Ok(PolyCone {
            dim,
            rays: order_like(primal.rays, &[], false),
            facets: order_like(dual.rays, inequalities, dual.lineality.is_empty()),
            lineality: primal.lineality,
            equations: dual.lineality,
        })
    }

    pub fn from_generators(dim: usize, generators: &[Vec<Q>]) -> Result<Self, ConeError> {
        check_dims(dim, generators)?;
        let dual = dd_convert(dim, generators);
        let primal = dd_convert(dim, &with_lineality(&dual));
        Ok(PolyCone {
            dim,
            rays: order_like(primal.rays, generators, primal.lineality.is_empty()),
            facets: order_like(dual.rays, &[], false),
            lineality: primal.lineality,
            equations: dual.lineality,
        })
    }

    /// Builds from both representations and checks they agree.
    pub fn from_both(dim: usize, generators: &[Vec<Q>], inequalities: &[Vec<Q>]) -> Result<Self, ConeError> {
        let v = Self::from_generators(dim, generators)?;
        let h = Self::from_inequalities(dim, inequalities)?;
        if !v.same_cone(&h) {
            return Err(ConeError::Inconsistent);
        }
        Ok(PolyCone { facets: h.facets, equations: h.equations, ..v })
    }

    /// The standard cone `Q^n_+`.
    pub fn standard(dim: usize) -> Self {
        let e: Vec<Vec<Q>> = (0..dim).map(|i| unit(dim, i)).collect();
        PolyCone { dim, lineality: vec![], rays: e.clone(), equations: vec![], facets: e }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Q>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Q>] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vec<Q>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<Q>] {
        &self.equations
    }

    /// A conic generating set: rays plus both signs of the lineality basis.
    pub fn generators(&self) -> Vec<Vec<Q>> {
        with_lineality(&Generators { lineality: self.lineality.clone(), rays: self.rays.clone() })
    }

    /// A full inequality system `a.x >= 0`, equations written as pairs.
    pub fn inequalities(&self) -> Vec<Vec<Q>> {
        with_lineality(&Generators { lineality: self.equations.clone(), rays: self.facets.clone() })
    }

    pub fn extremal_rays(&self) -> Result<Vec<Vec<Q>>, ConeError> {
        if self.is_pointed() {
            Ok(self.rays.clone())
        } else {
            Err(ConeError::NotPointed)
        }
    }

    pub fn dual_cone(&self) -> PolyCone {
        PolyCone {
            dim: self.dim,
            lineality: self.equations.clone(),
            rays: self.facets.clone(),
            equations: self.lineality.clone(),
            facets: self.rays.clone(),
        }
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_generating(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    /// `x <= y` in the order induced by the cone.
    pub fn leq(&self, x: &[Q], y: &[Q]) -> bool {
        self.contains(&sub_vec(y, x))
    }

    pub fn lineality_space(&self) -> Subspace {
        Subspace::span(self.dim, &self.lineality).expect("lineality width")
    }

    /// Set equality of the two cones.
    pub fn same_cone(&self, other: &PolyCone) -> bool {
        self.dim == other.dim
            && self.generators().iter().all(|g| other.contains(g))
            && other.generators().iter().all(|g| self.contains(g))
    }

    /// The span of the cone.
    pub fn span(&self) -> Subspace {
        Subspace::span(self.dim, &self.generators()).expect("generator width")
    }
}
