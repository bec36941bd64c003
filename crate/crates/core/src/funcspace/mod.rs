//! Piecewise-polynomial function carriers on a rational interval, with
//! lattice operations, disjointness, descriptor-based bands and ideals, and
//! certificate-producing deciders.

pub mod carrier;
pub mod deciders;
pub mod descriptor;
pub mod examples;
pub mod intervals;
pub mod ppoly;
pub mod random;

use thiserror::Error;

use crate::exact::ExactError;

pub use carrier::{Base, Carrier, Constraint};
pub use deciders::{
    directedness_certificate, membership_witness_majorized, order_density_witness, pervasive_witness, sup_disjoint_check,
    DensityWitness, DirectedRule, Directedness, Majorization, MajorizationCertificate, SupCheck,
};
pub use descriptor::{band_generated_descriptor, dcomp, Source, SubspaceDescriptor};
pub use intervals::{Interval, IntervalSet};
pub use ppoly::PPoly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuncError {
    #[error("functions live on different domains")]
    DomainMismatch,
    #[error("invalid piecewise polynomial: {0}")]
    InvalidPPoly(String),
    #[error("piece degree exceeds two")]
    DegreeTooHigh,
    #[error("point {0} outside the domain")]
    OutOfDomain(String),
    #[error("unsupported carrier: {0}")]
    UnsupportedCarrier(String),
    #[error("subspace is not directed: {0:?}")]
    NotDirectedEvidence(Box<Directedness>),
    #[error("probe system is feasible; no certificate either way")]
    InconclusiveProbe,
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The smallest extension ideal of a directed `B`: the same vanishing data
/// read in the cover carrier.
pub fn ideal_extension_descriptor(b: &SubspaceDescriptor, cover: &Carrier, probe_points: &[crate::exact::Q]) -> Result<SubspaceDescriptor, FuncError> {
    match directedness_certificate(b, probe_points) {
        Ok(cert @ Directedness::NotDirected { .. }) => Err(FuncError::NotDirectedEvidence(Box::new(cert))),
        Ok(_) | Err(FuncError::InconclusiveProbe) => Ok(b.in_carrier(cover.clone())),
        Err(e) => Err(e),
    }
}
