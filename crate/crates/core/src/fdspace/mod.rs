//! Finite-dimensional pre-Riesz spaces `(Q^n, K)` and their vector lattice
//! cover `(Q^m, standard cone)`, where `i(x) = (f_1(x), .., f_m(x))` for the
//! facet functionals `f_k` of `K`.

pub mod density;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{polyhedron_equal, upper_set, HalfSpace, PolyCone, Polyhedron};
use crate::exact::linalg::{kernel_basis, QMatrix, Subspace};
use crate::exact::lp::{LinearProgram, Relation};
use crate::exact::rational::{add_vec, dot, format_vec, neg_vec, scale_vec, serde_qmat, sub_vec, support, Q};
use crate::par::Exec;

pub use density::{DensityReport, InfResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FdError {
    #[error("cone is not pointed")]
    NotPointed,
    #[error("cone is not generating")]
    NotGenerating,
    #[error("image is not order dense in the cover; witness {}", format_vec(.witness))]
    OrderDensityFailed { witness: Vec<Q> },
    #[error("embedding is not bipositive")]
    NotBipositive,
    #[error("element {index} of S is not positive")]
    NotPositive { index: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace is not a coordinate subspace of the cover")]
    NotCoordinate,
    #[error("extension ideal does not restrict to the generated ideal")]
    ExtensionMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Domain,
    Cover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HandleKind {
    Ideal,
    Band,
}

/// An ideal or band, in `X` or in the cover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceHandle {
    pub side: Side,
    pub kind: HandleKind,
    pub subspace: Subspace,
    #[serde(with = "serde_qmat")]
    pub generators: Vec<Vec<Q>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FdSpace {
    cone: PolyCone,
    #[serde(with = "serde_qmat")]
    functionals: Vec<Vec<Q>>,
    embed: QMatrix,
}

impl FdSpace {
    /// Builds the cover from the extremal rays of the dual cone and
    /// verifies bipositivity and order density.
    pub fn build(cone: PolyCone) -> Result<Self, FdError> {
        Self::build_with(cone, Exec::default())
    }

    pub fn build_with(cone: PolyCone, exec: Exec) -> Result<Self, FdError> {
        if !cone.is_pointed() {
            return Err(FdError::NotPointed);
        }
        let functionals = cone.dual_cone().extremal_rays().map_err(|_| FdError::NotGenerating)?;
        let space = Self::from_functionals_unchecked(cone, functionals);
        if !space.is_bipositive() {
            return Err(FdError::NotBipositive);
        }
        let image = space.image();
        let full = Subspace::full(space.m());
        let report = density::is_order_dense_with(&space, &image, &full, None, exec)?;
        match report.witness {
            Some(witness) if !report.dense => Err(FdError::OrderDensityFailed { witness }),
            _ => Ok(space),
        }
    }

    /// A space with an arbitrary functional list, skipping all checks.
    pub fn from_functionals_unchecked(cone: PolyCone, functionals: Vec<Vec<Q>>) -> Self {
        let embed = QMatrix::new(cone.dim(), functionals.clone()).expect("functional width");
        FdSpace { cone, functionals, embed }
    }

    pub fn n(&self) -> usize {
        self.cone.dim()
    }

    pub fn m(&self) -> usize {
        self.functionals.len()
    }

    pub fn cone(&self) -> &PolyCone {
        &self.cone
    }

    pub fn functionals(&self) -> &[Vec<Q>] {
        &self.functionals
    }

    pub fn embed_matrix(&self) -> &QMatrix {
        &self.embed
    }

    /// `{x : i(x) >= 0} = K`.
    pub fn is_bipositive(&self) -> bool {
        match PolyCone::from_inequalities(self.n(), &self.functionals) {
            Ok(h) => h.same_cone(&self.cone),
            Err(_) => false,
        }
    }

    fn check(&self, x: &[Q]) -> Result<(), FdError> {
        if x.len() == self.n() {
            Ok(())
        } else {
            Err(FdError::DimensionMismatch { expected: self.n(), got: x.len() })
        }
    }

    pub fn embed(&self, x: &[Q]) -> Vec<Q> {
        self.embed.mul_vec(x)
    }

    /// `i(X)` as a subspace of the cover.
    pub fn image(&self) -> Subspace {
        Subspace::full(self.n()).image(&self.embed)
    }

    /// `i(L)` for a subspace `L` of `X`.
    pub fn image_of(&self, l: &Subspace) -> Subspace {
        l.image(&self.embed)
    }

    /// `x ⊥ y` by the definition: `{±(x+y)}^u = {±(x-y)}^u` in `X`.
    pub fn disjoint_def(&self, x: &[Q], y: &[Q]) -> bool {
        polyhedron_equal(&upper_set(&self.cone, &add_vec(x, y)), &upper_set(&self.cone, &sub_vec(x, y)))
    }

    /// `x ⊥ y` by disjoint supports of `i(x)` and `i(y)`.
    pub fn disjoint_coord(&self, x: &[Q], y: &[Q]) -> bool {
        self.embed(x).iter().zip(self.embed(y)).all(|(a, b)| a.is_zero() || b.is_zero())
    }

    fn support_union(&self, s: &[Vec<Q>]) -> Vec<usize> {
        let mut u: Vec<usize> = s.iter().flat_map(|x| support(&self.embed(x))).collect();
        u.sort_unstable();
        u.dedup();
        u
    }

    /// `S^d = {x : f_j(x) = 0 for j in U}`, `U` the union of supports of `i(S)`.
    pub fn dcomplement(&self, s: &[Vec<Q>]) -> Result<Subspace, FdError> {
        s.iter().try_for_each(|x| self.check(x))?;
        let u = self.support_union(s);
        Ok(kernel_basis(&self.embed.select_rows(&u)))
    }

    pub fn dcomplement_of(&self, l: &Subspace) -> Subspace {
        self.dcomplement(l.basis()).expect("subspace of X")
    }

    pub fn band_generated(&self, s: &[Vec<Q>]) -> Result<SubspaceHandle, FdError> {
        let d = self.dcomplement(s)?;
        Ok(SubspaceHandle { side: Side::Domain, kind: HandleKind::Band, subspace: self.dcomplement_of(&d), generators: s.to_vec() })
    }

    pub fn is_band(&self, l: &Subspace) -> bool {
        self.dcomplement_of(&self.dcomplement_of(l)) == *l
    }

    fn dominator(&self, s: &[Vec<Q>]) -> Result<Vec<Q>, FdError> {
        let mut total = vec![Q::zero(); self.n()];
        for (index, x) in s.iter().enumerate() {
            self.check(x)?;
            if !self.cone.contains(x) {
                return Err(FdError::NotPositive { index });
            }
            total = add_vec(&total, x);
        }
        Ok(total)
    }

    /// `{x : ±x <= s*}` for `s* = Σ S`, as a polytope in `X`.
    pub fn order_interval(&self, s_star: &[Q]) -> Polyhedron {
        let fs = self.embed(s_star);
        let mut cons = Vec::new();
        for (f, v) in self.functionals.iter().zip(&fs) {
            cons.push(HalfSpace { normal: f.clone(), offset: -v.clone() });
            cons.push(HalfSpace { normal: neg_vec(f), offset: -v.clone() });
        }
        Polyhedron::from_constraints(self.n(), cons)
    }

    /// The ideal generated by `S ⊆ K`: the span of the order interval
    /// `[-s*, s*]`.
    pub fn ideal_generated(&self, s: &[Vec<Q>]) -> Result<SubspaceHandle, FdError> {
        let s_star = self.dominator(s)?;
        let p = self.order_interval(&s_star);
        let subspace = Subspace::span(self.n(), p.vertices()).expect("vertex width");
        Ok(SubspaceHandle { side: Side::Domain, kind: HandleKind::Ideal, subspace, generators: s.to_vec() })
    }

    /// The same ideal as the kernel of the functionals vanishing at `s*`.
    pub fn ideal_by_kernel(&self, s: &[Vec<Q>]) -> Result<Subspace, FdError> {
        let s_star = self.dominator(s)?;
        let zero: Vec<usize> = self.embed(&s_star).iter().enumerate().filter(|(_, v)| v.is_zero()).map(|(k, _)| k).collect();
        Ok(kernel_basis(&self.embed.select_rows(&zero)))
    }

    /// `∃λ >= 0: λs* - x ∈ K and λs* + x ∈ K`.
    pub fn in_ideal(&self, s: &[Vec<Q>], x: &[Q]) -> Result<bool, FdError> {
        self.check(x)?;
        let s_star = self.dominator(s)?;
        let mut lp = LinearProgram::new(1);
        lp.set_nonneg(0);
        for f in &self.functionals {
            let fs = dot(f, &s_star);
            let fx = dot(f, x);
            lp.add(vec![fs.clone()], Relation::Ge, fx.clone());
            lp.add(vec![fs], Relation::Ge, -fx);
        }
        Ok(lp.is_feasible())
    }

    /// `L = (L ∩ K) - (L ∩ K)`, via the extremal rays of `L ∩ K`.
    pub fn is_directed(&self, l: &Subspace) -> bool {
        let d = l.dim();
        if d == 0 {
            return true;
        }
        let rows: Vec<Vec<Q>> = self
            .functionals
            .iter()
            .map(|f| l.basis().iter().map(|b| dot(f, b)).collect())
            .collect();
        let cap = PolyCone::from_inequalities(d, &rows).expect("coefficient width");
        let lift = |c: &Vec<Q>| {
            l.basis().iter().zip(c).fold(vec![Q::zero(); self.n()], |acc, (b, ci)| add_vec(&acc, &scale_vec(ci, b)))
        };
        let images: Vec<Vec<Q>> = cap.generators().iter().map(lift).collect();
        Subspace::span(self.n(), &images).expect("lift width") == *l
    }

    /// The smallest extension ideal `𝓘_{i(S)}` in the cover.
    pub fn extension_ideal(&self, s: &[Vec<Q>]) -> Result<SubspaceHandle, FdError> {
        let s_star = self.dominator(s)?;
        let coords = support(&self.embed(&s_star));
        let subspace = Subspace::coordinate(self.m(), &coords);
        if self.restrict(&subspace) != self.ideal_generated(s)?.subspace {
            return Err(FdError::ExtensionMismatch);
        }
        let generators = s.iter().map(|x| self.embed(x)).collect();
        Ok(SubspaceHandle { side: Side::Cover, kind: HandleKind::Ideal, subspace, generators })
    }

    /// The band `𝓑_{i(S)}` in the cover, and whether it restricts to `𝓑_S`.
    pub fn extension_band(&self, s: &[Vec<Q>]) -> Result<(SubspaceHandle, bool), FdError> {
        let band = self.band_generated(s)?;
        let subspace = Subspace::coordinate(self.m(), &self.support_union(s));
        let ok = self.restrict(&subspace) == band.subspace;
        let generators = s.iter().map(|x| self.embed(x)).collect();
        Ok((SubspaceHandle { side: Side::Cover, kind: HandleKind::Band, subspace, generators }, ok))
    }

    /// `[J]i = {x : i(x) ∈ J}`.
    pub fn restrict(&self, j: &Subspace) -> Subspace {
        j.preimage(&self.embed)
    }

    /// Whether `e_j ∈ i(X)` for each `j`, i.e. `i(X) = Q^m`.
    pub fn image_is_full(&self) -> bool {
        self.embed.rank() == self.m()
    }

    /// For every `j` some `x` has `0 <= i(x) <= e_j` with `i(x)_j = 1`.
    pub fn is_pervasive(&self) -> bool {
        (0..self.m()).all(|j| {
            let mut lp = LinearProgram::new(self.n());
            for (k, f) in self.functionals.iter().enumerate() {
                lp.add(f.clone(), Relation::Ge, Q::zero());
                let cap = if k == j { Q::one() } else { Q::zero() };
                lp.add(f.clone(), Relation::Le, cap);
            }
            lp.add(self.functionals[j].clone(), Relation::Eq, Q::one());
            lp.is_feasible()
        })
    }

    /// For every `j`, `{e_j}^d = i(x)^d` for some `x`: the common kernel of
    /// the other functionals is not annihilated by `f_j`.
    pub fn is_fordable(&self) -> bool {
        (0..self.m()).all(|j| {
            let others: Vec<usize> = (0..self.m()).filter(|&k| k != j).collect();
            let ker = kernel_basis(&self.embed.select_rows(&others));
            ker.basis().iter().any(|b| !dot(&self.functionals[j], b).is_zero())
        })
    }
}
