use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::lattice::ConstructionDLattice;
use crate::algebra::Field;
use crate::codes::CodeTower;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDocument {
    pub p: u32,
    pub r: u32,
    pub modulus_poly: Vec<u32>,
}

/// Serialized Construction D lattice. The tower is stored through its
/// distinguished basis (C_i is spanned by the first k_i rows); BCH towers
/// also record the field and designed distances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub p: u32,
    pub n: usize,
    pub ell: usize,
    pub field: Option<FieldDocument>,
    pub designed_distances: Option<Vec<usize>>,
    pub tower_dims: Vec<usize>,
    pub tower_basis: Vec<Vec<u32>>,
    pub basis: Vec<Vec<i64>>,
    /// Decimal string.
    pub det: String,
}

impl LatticeDocument {
    pub fn from_lattice(lat: &ConstructionDLattice) -> LatticeDocument {
        let t = lat.tower();
        LatticeDocument {
            p: t.p(),
            n: t.n(),
            ell: t.ell(),
            field: t.field().map(|f| FieldDocument { p: f.p(), r: f.r(), modulus_poly: f.modulus().to_vec() }),
            designed_distances: t.designed_distances(),
            tower_dims: t.dims().to_vec(),
            tower_basis: t.basis().to_vec(),
            basis: lat.basis().to_vec(),
            det: lat.det().to_string(),
        }
    }

    /// Rebuilds the lattice and checks every stored field against it.
    pub fn to_lattice(&self) -> Result<ConstructionDLattice> {
        let tower = match (&self.field, &self.designed_distances) {
            (Some(fd), Some(ds)) => {
                let field = Field::shared(fd.p, fd.r)?;
                if field.modulus() != fd.modulus_poly.as_slice() {
                    return Err(Error::Format(format!(
                        "modulus {:?} differs from the canonical {:?}",
                        fd.modulus_poly,
                        field.modulus()
                    )));
                }
                CodeTower::bch(field, ds)?.with_basis(self.tower_basis.clone())?
            }
            (None, None) => {
                if self.tower_dims.first() != Some(&self.n) || self.tower_dims.len() != self.ell + 1 {
                    return Err(Error::Format("tower_dims must start at n and have ell + 1 entries".into()));
                }
                if self.tower_basis.len() != self.n {
                    return Err(Error::Format(format!("tower_basis must have {} rows", self.n)));
                }
                let gens = self.tower_dims[1..].iter().map(|&k| self.tower_basis[..k.min(self.n)].to_vec()).collect();
                CodeTower::from_generators(self.p, self.n, gens)?.with_basis(self.tower_basis.clone())?
            }
            _ => return Err(Error::Format("field and designed_distances must both be present or both absent".into())),
        };
        let lat = ConstructionDLattice::new(tower)?;
        let det: BigUint = self.det.parse().map_err(|_| Error::Format(format!("det {:?} is not a decimal integer", self.det)))?;
        let rebuilt = LatticeDocument::from_lattice(&lat);
        if rebuilt.p != self.p || rebuilt.n != self.n || rebuilt.ell != self.ell {
            return Err(Error::Format("p, n or ell disagree with the rebuilt tower".into()));
        }
        if rebuilt.tower_dims != self.tower_dims {
            return Err(Error::Format("tower_dims disagree with the rebuilt tower".into()));
        }
        if rebuilt.basis != self.basis {
            return Err(Error::Format("integer basis disagrees with the rebuilt lattice".into()));
        }
        if &det != lat.det() {
            return Err(Error::Format(format!("det {} disagrees with the rebuilt lattice ({})", det, lat.det())));
        }
        Ok(lat)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<LatticeDocument> {
        Ok(serde_json::from_str(s)?)
    }
}
