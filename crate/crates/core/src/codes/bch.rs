use rand::Rng;

use super::fp::{add_scaled, Echelon};
use super::rs::RsCode;
use crate::algebra::{Elem, FieldRef, Poly};
use crate::error::{Error, Result};

/// Primitive narrow-sense BCH code: the F_p-subfield subcode of the
/// Reed-Solomon code over F_q with evaluation set F_q* and distance d.
#[derive(Clone, Debug)]
pub struct BchCode {
    rs: RsCode,
    designed_d: usize,
    gen_poly: Vec<u32>,
    gen_matrix: Vec<Vec<u32>>,
    echelon: Echelon,
}

/// Cyclotomic cosets of `0..n` under multiplication by p, each sorted, in
/// order of their smallest element.
pub fn cyclotomic_cosets(p: u32, n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            coset.push(x);
            x = x * p as usize % n;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    out
}

impl BchCode {
    pub fn new(field: FieldRef, designed_d: usize) -> Result<BchCode> {
        let n = field.order() as usize - 1;
        if designed_d < 1 || designed_d > n {
            return Err(Error::OutOfRange { what: "designed distance", value: designed_d as u64, limit: n as u64 });
        }
        let p = field.p();
        let rs = RsCode::primitive(field.clone(), n - designed_d + 1)?;

        let mut zeros = Vec::new();
        for coset in cyclotomic_cosets(p, n) {
            if coset.iter().any(|&s| (1..designed_d).contains(&s)) {
                zeros.extend(coset);
            }
        }
        let roots: Vec<Elem> = zeros.iter().map(|&s| field.exp(s as u64)).collect();
        let g = Poly::from_roots(&field, &roots);
        let gen_poly = g
            .coeffs()
            .iter()
            .map(|&c| field.to_subfield(c))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::InvalidParameter("generator polynomial left the prime subfield".into()))?;

        let k_p = n - zeros.len();
        let gen_matrix: Vec<Vec<u32>> = (0..k_p)
            .map(|j| {
                let mut row = vec![0u32; n];
                row[j..j + gen_poly.len()].copy_from_slice(&gen_poly);
                row
            })
            .collect();
        for row in &gen_matrix {
            let word: Vec<Elem> = row.iter().map(|&c| Elem(c)).collect();
            if !rs.contains(&word)? {
                return Err(Error::InvalidParameter("generator row is not a Reed-Solomon codeword".into()));
            }
        }
        let echelon = Echelon::from_rows(p, n, &gen_matrix);
        debug_assert_eq!(echelon.rank(), k_p);
        Ok(BchCode { rs, designed_d, gen_poly, gen_matrix, echelon })
    }

    pub fn rs(&self) -> &RsCode {
        &self.rs
    }

    pub fn field(&self) -> &FieldRef {
        self.rs.field()
    }

    pub fn p(&self) -> u32 {
        self.rs.field().p()
    }

    pub fn n(&self) -> usize {
        self.rs.n()
    }

    /// F_p-dimension.
    pub fn k(&self) -> usize {
        self.gen_matrix.len()
    }

    pub fn designed_d(&self) -> usize {
        self.designed_d
    }

    /// Generator polynomial coefficients, low degree first.
    pub fn gen_poly(&self) -> &[u32] {
        &self.gen_poly
    }

    pub fn gen_matrix(&self) -> &[Vec<u32>] {
        &self.gen_matrix
    }

    /// Upper bound ceil((p-1)/p * (d-1)) * r on the codimension.
    pub fn codimension_bound(&self) -> usize {
        let p = self.p() as usize;
        ((p - 1) * (self.designed_d - 1)).div_ceil(p) * self.field().r() as usize
    }

    pub fn contains(&self, word: &[u32]) -> Result<bool> {
        if word.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: word.len() });
        }
        Ok(word.iter().all(|&c| c < self.p()) && self.echelon.contains(word))
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        if message.len() != self.k() {
            return Err(Error::LengthMismatch { expected: self.k(), got: message.len() });
        }
        let p = self.p();
        let mut acc = vec![0u32; self.n()];
        for (row, &c) in self.gen_matrix.iter().zip(message) {
            add_scaled(p, &mut acc, row, c % p);
        }
        Ok(acc)
    }

    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u32> {
        let msg: Vec<u32> = (0..self.k()).map(|_| rng.random_range(0..self.p())).collect();
        self.encode(&msg).expect("message length matches")
    }

    /// All codewords, for codes with at most 2^20 of them.
    pub fn codewords(&self) -> Result<Vec<Vec<u32>>> {
        let count = (self.p() as u64).checked_pow(self.k() as u32).filter(|&c| c <= 1 << 20);
        let count = count.ok_or(Error::DimensionTooLarge { n: self.k(), max: 20 })?;
        let p = self.p();
        let mut out = Vec::with_capacity(count as usize);
        let mut msg = vec![0u32; self.k()];
        for _ in 0..count {
            out.push(self.encode(&msg)?);
            for d in msg.iter_mut() {
                *d += 1;
                if *d < p {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }

    /// Exact minimum Hamming weight by enumerating every codeword.
    pub fn min_weight_exhaustive(&self) -> Result<usize> {
        Ok(self
            .codewords()?
            .iter()
            .map(|w| w.iter().filter(|&&c| c != 0).count())
            .filter(|&w| w > 0)
            .min()
            .unwrap_or(usize::MAX))
    }
}
