use crate::algebra::{Elem, FieldRef, Poly};
use crate::error::{Error, Result};

/// Evaluation-encoded Reed-Solomon code: words (f(a_1), ..., f(a_n)) for
/// deg f < k.
#[derive(Clone, Debug)]
pub struct RsCode {
    field: FieldRef,
    k: usize,
    points: Vec<Elem>,
}

impl RsCode {
    pub fn new(field: FieldRef, k: usize, points: Vec<Elem>) -> Result<RsCode> {
        let n = points.len();
        if n > field.order() as usize {
            return Err(Error::InvalidParameter(format!("length {n} exceeds field order {}", field.order())));
        }
        if k > n {
            return Err(Error::InvalidParameter(format!("dimension {k} exceeds length {n}")));
        }
        let mut seen = vec![false; field.order() as usize];
        for &a in &points {
            if a.value() >= field.order() {
                return Err(Error::OutOfRange { what: "evaluation point", value: a.value() as u64, limit: field.order() as u64 });
            }
            if std::mem::replace(&mut seen[a.value() as usize], true) {
                return Err(Error::InvalidParameter(format!("duplicate evaluation point {}", a.value())));
            }
        }
        Ok(RsCode { field, k, points })
    }

    /// Evaluation points g^0, g^1, ..., g^{q-2} for the canonical generator.
    pub fn primitive(field: FieldRef, k: usize) -> Result<RsCode> {
        let n = field.order() as u64 - 1;
        let points = (0..n).map(|i| field.exp(i)).collect();
        RsCode::new(field, k, points)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum Hamming distance n - k + 1.
    pub fn distance(&self) -> usize {
        self.n() - self.k + 1
    }

    /// Adjusted rate (k - 1) / n.
    pub fn r_star(&self) -> f64 {
        (self.k as f64 - 1.0) / self.n() as f64
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn encode(&self, message: &Poly) -> Result<Vec<Elem>> {
        if let Some(d) = message.degree() {
            if d >= self.k {
                return Err(Error::DegreeTooHigh { degree: d, k: self.k });
            }
        }
        Ok(self.points.iter().map(|&a| message.eval(&self.field, a)).collect())
    }

    /// The message polynomial of a codeword, or `None` if `word` is not in
    /// the code.
    pub fn message_of(&self, word: &[Elem]) -> Result<Option<Poly>> {
        if word.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: word.len() });
        }
        let pts: Vec<(Elem, Elem)> = self.points.iter().copied().zip(word.iter().copied()).collect();
        let f = Poly::interpolate(&self.field, &pts)?;
        Ok(f.degree().is_none_or(|d| d < self.k).then_some(f))
    }

    pub fn contains(&self, word: &[Elem]) -> Result<bool> {
        Ok(self.message_of(word)?.is_some())
    }
}
