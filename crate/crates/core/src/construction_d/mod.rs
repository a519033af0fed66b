//! Construction D lattices: representatives, membership, integer bases,
//! exact determinants and minimum-distance certificates.

mod enumerate;
pub mod intlinalg;
mod json;
mod lattice;

pub use enumerate::{enumerate_ball, MAX_ENUMERATION_DIM};
pub use json::{FieldDocument, LatticeDocument};
pub use lattice::{
    det_exponent, BasisKind, ConstructionDLattice, Decomposition, HermiteReport, MinDistanceCertificate,
    MinDistanceEvidence,
};
