use crate::error::{Error, Result};

/// Tolerance on each block's l1 norm.
pub const BLOCK_SUM_TOLERANCE: f64 = 1e-12;

/// n blocks of p nonnegative weights, each block summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ReliabilityVector {
    p: u32,
    n: usize,
    entries: Vec<f64>,
}

impl ReliabilityVector {
    /// `entries` holds the blocks back to back, block i at `i*p..(i+1)*p`.
    pub fn new(p: u32, entries: Vec<f64>) -> Result<ReliabilityVector> {
        let pu = p as usize;
        if p < 2 || !entries.len().is_multiple_of(pu) {
            return Err(Error::InvalidParameter(format!("{} entries do not form blocks of {p}", entries.len())));
        }
        for (i, block) in entries.chunks(pu).enumerate() {
            if block.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
                return Err(Error::InvalidParameter(format!("block {i} has an entry outside [0, 1]")));
            }
            let sum: f64 = block.iter().sum();
            if (sum - 1.0).abs() > BLOCK_SUM_TOLERANCE {
                return Err(Error::InvalidParameter(format!("block {i} sums to {sum}, not 1")));
            }
        }
        Ok(ReliabilityVector { p, n: entries.len() / pu, entries })
    }

    /// Indicator blocks of a word over F_p.
    pub fn indicator(p: u32, word: &[u32]) -> ReliabilityVector {
        let mut entries = vec![0.0; word.len() * p as usize];
        for (i, &c) in word.iter().enumerate() {
            entries[i * p as usize + (c % p) as usize] = 1.0;
        }
        ReliabilityVector { p, n: word.len(), entries }
    }

    pub fn uniform(p: u32, n: usize) -> ReliabilityVector {
        ReliabilityVector { p, n, entries: vec![1.0 / p as f64; n * p as usize] }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn block(&self, i: usize) -> &[f64] {
        let p = self.p as usize;
        &self.entries[i * p..(i + 1) * p]
    }

    #[inline]
    pub fn get(&self, i: usize, c: u32) -> f64 {
        self.entries[i * self.p as usize + c as usize]
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// <Π, [x]> for a word over F_p; `None` entries are symbols outside
    /// F_p and contribute nothing.
    pub fn inner_with_word(&self, word: &[Option<u32>]) -> f64 {
        word.iter().enumerate().filter_map(|(i, c)| c.map(|c| self.get(i, c))).sum()
    }
}
