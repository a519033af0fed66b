use serde::{Deserialize, Serialize};

use super::bch::BchCode;
use crate::algebra::Field;
use crate::error::{Error, Result};

/// Serialized form of a BCH code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDocument {
    pub p: u32,
    pub r: u32,
    pub modulus_poly: Vec<u32>,
    pub n: usize,
    pub designed_d: usize,
    pub gen_matrix: Vec<Vec<u32>>,
}

impl CodeDocument {
    pub fn from_code(code: &BchCode) -> CodeDocument {
        let f = code.field();
        CodeDocument {
            p: f.p(),
            r: f.r(),
            modulus_poly: f.modulus().to_vec(),
            n: code.n(),
            designed_d: code.designed_d(),
            gen_matrix: code.gen_matrix().to_vec(),
        }
    }

    /// Rebuilds the code and checks that it reproduces this document.
    pub fn to_code(&self) -> Result<BchCode> {
        let field = Field::shared(self.p, self.r)?;
        if field.modulus() != self.modulus_poly.as_slice() {
            return Err(Error::Format(format!("modulus {:?} differs from the canonical {:?}", self.modulus_poly, field.modulus())));
        }
        let code = BchCode::new(field, self.designed_d)?;
        if code.n() != self.n || code.gen_matrix() != self.gen_matrix.as_slice() {
            return Err(Error::Format("generator matrix does not match the rebuilt code".into()));
        }
        Ok(code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<CodeDocument> {
        Ok(serde_json::from_str(s)?)
    }
}
