//! Dense matrices and canonical subspaces over `Q`.
//!
//! A [`Subspace`] is stored by its reduced row-echelon basis, so two
//! subspaces are equal exactly when their representations are.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{dot, format_vec, is_zero_vec, serde_qmat, Q};
use super::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QMatrix {
    cols: usize,
    #[serde(with = "serde_qmat")]
    rows: Vec<Vec<Q>>,
}

impl QMatrix {
    pub fn new(cols: usize, rows: Vec<Vec<Q>>) -> Result<Self, ExactError> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(ExactError::DimensionMismatch { expected: cols, got: r.len() });
        }
        Ok(QMatrix { cols, rows })
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        QMatrix::new(cols, rows).expect("ragged matrix")
    }

    pub fn identity(n: usize) -> Self {
        QMatrix::from_rows((0..n).map(|i| super::rational::unit(n, i)).collect())
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let rows = (0..self.cols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        QMatrix { cols: self.rows.len(), rows }
    }

    /// `self * other`
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        let t = other.transpose();
        let rows = self.rows.iter().map(|r| t.rows.iter().map(|c| dot(r, c)).collect()).collect();
        QMatrix { cols: other.cols, rows }
    }

    pub fn select_rows(&self, idx: &[usize]) -> QMatrix {
        QMatrix { cols: self.cols, rows: idx.iter().map(|&i| self.rows[i].clone()).collect() }
    }

    pub fn rank(&self) -> usize {
        rref(&self.rows, self.cols).0.len()
    }
}

/// Reduced row-echelon form: nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Q>], cols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    dim: usize,
    #[serde(with = "serde_qmat")]
    basis: Vec<Vec<Q>>,
}

impl Subspace {
    /// Span of the given vectors in `Q^dim`.
    pub fn span(dim: usize, vectors: &[Vec<Q>]) -> Result<Self, ExactError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(ExactError::DimensionMismatch { expected: dim, got: v.len() });
        }
        let (basis, _) = rref(vectors, dim);
        Ok(Subspace { dim, basis })
    }

    pub fn zero(dim: usize) -> Self {
        Subspace { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Subspace { dim, basis: QMatrix::identity(dim).rows }
    }

    /// Span of the standard basis vectors `e_j`, `j in coords`.
    pub fn coordinate(dim: usize, coords: &[usize]) -> Self {
        let vs: Vec<Vec<Q>> = coords.iter().map(|&j| super::rational::unit(dim, j)).collect();
        Subspace::span(dim, &vs).expect("coordinate index in range")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    fn check(&self, other: &Subspace) -> Result<(), ExactError> {
        if self.dim != other.dim {
            return Err(ExactError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Q]) -> Result<bool, ExactError> {
        if v.len() != self.dim {
            return Err(ExactError::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(rref(&rows, self.dim).0.len() == self.basis.len())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.dim, &rows)
    }

    /// Functionals vanishing on the subspace, as a canonical basis.
    pub fn annihilator(&self) -> Subspace {
        kernel_basis(&QMatrix { cols: self.dim, rows: self.basis.clone() })
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check(other)?;
        let mut rows = self.annihilator().basis;
        rows.extend(other.annihilator().basis);
        Ok(kernel_basis(&QMatrix { cols: self.dim, rows }))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, ExactError> {
        self.check(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool, ExactError> {
        self.check(other)?;
        Ok(self == other)
    }

    /// Image under `m` (`m.n_cols() == ambient_dim`).
    pub fn image(&self, m: &QMatrix) -> Subspace {
        let vs: Vec<Vec<Q>> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(m.n_rows(), &vs).expect("image dimension")
    }

    /// `{x : m x in self}`
    pub fn preimage(&self, m: &QMatrix) -> Subspace {
        let ann = QMatrix { cols: self.dim, rows: self.annihilator().basis };
        kernel_basis(&ann.mul(m).with_cols(m.n_cols()))
    }

    /// Whether the subspace is spanned by standard basis vectors; returns
    /// the coordinates if so.
    pub fn coordinate_support(&self) -> Option<Vec<usize>> {
        let mut coords = Vec::new();
        for b in &self.basis {
            let nz: Vec<usize> = super::rational::support(b);
            if nz.len() != 1 {
                return None;
            }
            coords.push(nz[0]);
        }
        Some(coords)
    }

    pub fn describe(&self) -> String {
        if self.basis.is_empty() {
            return "{0}".to_string();
        }
        let parts: Vec<String> = self.basis.iter().map(|b| format_vec(b)).collect();
        format!("span{{{}}}", parts.join(", "))
    }
}

impl QMatrix {
    fn with_cols(mut self, cols: usize) -> Self {
        self.cols = cols;
        self
    }
}

/// Canonical basis of `{x : m x = 0}`.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    let n = m.cols;
    let (r, pivots) = rref(&m.rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vs: Vec<Vec<Q>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    debug_assert!(vs.iter().all(|v| m.mul_vec(v).iter().all(Zero::is_zero)));
    Subspace::span(n, &vs).expect("kernel dimension")
}

/// Whether `vs` are linearly independent.
pub fn independent(dim: usize, vs: &[Vec<Q>]) -> bool {
    vs.iter().all(|v| !is_zero_vec(v)) && rref(vs, dim).0.len() == vs.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qvec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kernel_of_f4() {
        let m = QMatrix::from_rows(vec![qvec(&[-1, 1, 1])]);
        let k = kernel_basis(&m);
        let expected = Subspace::span(3, &[qvec(&[1, 0, 1]), qvec(&[0, -1, 1])]).unwrap();
        assert_eq!(k, expected);
        assert!(kernel_basis(&QMatrix::identity(3)).is_zero());
    }

    #[test]
    fn coordinate_ops() {
        let a = Subspace::coordinate(3, &[0]);
        let b = Subspace::coordinate(3, &[1]);
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.sum(&b).unwrap(), Subspace::coordinate(3, &[0, 1]));
        assert!(a.intersect(&Subspace::zero(4)).is_err());
    }

    #[test]
    fn image_of_v1_v4_misses_z() {
        let a = Subspace::span(4, &[qvec(&[1, 1, 0, 0]), qvec(&[0, 1, 1, 0])]).unwrap();
        assert!(!a.contains(&qvec(&[1, 0, 1, 0])).unwrap());
        assert!(a.contains(&qvec(&[1, 2, 1, 0])).unwrap());
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> QMatrix {
        QMatrix::from_rows((0..rows).map(|_| (0..cols).map(|_| q(rng.gen_range(-4..=4))).collect()).collect())
    }

    #[test]
    fn random_rank_deficient_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            // 3x5 of rank 2: third row is a combination of the first two
            let base = random_matrix(&mut rng, 2, 5);
            let (a, b) = (q(rng.gen_range(-3..=3)), q(rng.gen_range(-3..=3)));
            let third: Vec<Q> = base.rows()[0].iter().zip(&base.rows()[1]).map(|(x, y)| &a * x + &b * y).collect();
            let m = QMatrix::from_rows(vec![base.rows()[0].clone(), base.rows()[1].clone(), third]);
            let k = kernel_basis(&m);
            assert_eq!(m.rank() + k.dim(), 5);
            for v in k.basis() {
                assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn dimension_formula_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let ka = rng.gen_range(0..=4);
            let kb = rng.gen_range(0..=4);
            let a = Subspace::span(6, random_matrix(&mut rng, ka, 6).rows()).unwrap();
            let b = Subspace::span(6, random_matrix(&mut rng, kb, 6).rows()).unwrap();
            let i = a.intersect(&b).unwrap();
            let s = a.sum(&b).unwrap();
            assert_eq!(a.dim() + b.dim(), i.dim() + s.dim());
            assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
        }
    }

    #[test]
    fn preimage_matches_definition() {
        let m = QMatrix::from_rows(vec![qvec(&[-1, -1, 1]), qvec(&[1, -1, 1]), qvec(&[1, 1, 1]), qvec(&[-1, 1, 1])]);
        let j = Subspace::coordinate(4, &[0, 1, 2]);
        let pre = j.preimage(&m);
        assert_eq!(pre, Subspace::span(3, &[qvec(&[1, 0, 1]), qvec(&[0, -1, 1])]).unwrap());
    }
}
