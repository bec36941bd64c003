//! Exact order theory for pre-Riesz spaces.
//!
//! The crate builds vector lattice covers of two kinds of ordered spaces and
//! answers order-theoretic questions about them without any floating point:
//!
//! * [`fdspace`]: finite-dimensional spaces `(Q^n, K)` with a polyhedral cone
//!   `K`, embedded into `(Q^m, Q^m_+)` through the extremal rays of the dual
//!   cone.
//! * [`funcspace`]: continuous piecewise-polynomial functions (pieces of
//!   degree at most two) on a rational interval, with carriers described by
//!   point relations, germ constancy and smoothness constraints.
//!
//! The supporting layers are [`exact`] (rationals, polynomials, Sturm
//! sequences, quadratic algebraic numbers, subspaces, an exact simplex) and
//! [`cone`] (double description, duality, upper-bound polyhedra).

pub mod cli;
pub mod cone;
pub mod exact;
pub mod fdspace;
pub mod funcspace;
pub mod par;

pub use exact::{AlgebraicNumber, Poly, Q, QMatrix, Subspace};
