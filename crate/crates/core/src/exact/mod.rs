//! Exact scalar and linear-algebra kernel.

pub mod algebraic;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod rational;
pub mod sturm;

pub use algebraic::AlgebraicNumber;
pub use linalg::{kernel_basis, QMatrix, Subspace};
pub use poly::Poly;
pub use rational::Q;
pub use sturm::{isolate_roots, sturm_sign, SignClass};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("polynomial has a real root of degree > 2 over Q; not representable")]
    UnsupportedDegree,
    #[error("degenerate interval")]
    DegenerateInterval,
    #[error("algebraic number: {0}")]
    Algebraic(String),
}
