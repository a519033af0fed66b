//! Construction D lattices from BCH code towers, with a recursive list
//! decoder that reaches about 1/sqrt(2) of the minimum distance using
//! soft-decision Reed-Solomon decoding at each level.

pub mod algebra;
pub mod codes;
pub mod construction_d;
pub mod error;
pub mod euclid;
pub mod harness;
pub mod lattice_decoder;
pub mod optimality;
pub mod softdecode;

pub use algebra::{BiPoly, Elem, Field, FieldRef, Poly};
pub use codes::{BchCode, CodeTower, RsCode};
pub use construction_d::{ConstructionDLattice, LatticeDocument};
pub use error::{Error, Result};
pub use euclid::{euclid_list_decode, TorusWord};
pub use lattice_decoder::{bch_lattice_decode, lattice_list_decode, DecoderStack};
pub use softdecode::{kv_decode, ReliabilityVector};
