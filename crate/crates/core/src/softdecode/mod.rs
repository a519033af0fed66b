//! Soft-decision Reed-Solomon decoding: multiplicity assignment,
//! interpolation with multiplicities, and Y-root extraction.

pub mod certificate;
mod interpolate;
mod kv;
mod multiplicity;
mod reliability;
mod roots;

pub use interpolate::{interpolate, monomial_count, weighted_degree_bound, InterpolationPoint};
pub use kv::{
    cost_cap, guarantee_threshold, kv_decode, kv_decode_with_target, list_bound_floor, KvDecodeResult, KvEntry,
    Target, TARGET_TOLERANCE,
};
pub use multiplicity::{constraint_count, BreakpointWalk, MultiplicityMatrix};
pub use reliability::{ReliabilityVector, BLOCK_SUM_TOLERANCE};
pub use roots::y_roots;
