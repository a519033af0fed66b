//! Reed-Solomon codes, their BCH subfield subcodes, and code towers.

mod bch;
pub mod fp;
mod json;
mod rs;
mod tower;

pub use bch::{cyclotomic_cosets, BchCode};
pub use json::CodeDocument;
pub use rs::RsCode;
pub use tower::CodeTower;
