use super::field::{binom_mod, Elem, Field};
use crate::error::{Error, Result};

/// Univariate polynomial over F_q, coefficients low degree first with no
/// trailing zeros. The zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub const fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Elem, degree: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Elem::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly { coeffs }
    }

    /// The polynomial X.
    pub fn x() -> Poly {
        Poly::monomial(Elem::ONE, 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Multiplies by X^s.
    pub fn shift(&self, s: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Elem::ZERO; s];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Multiplies by (X - a).
    pub fn mul_linear(&self, f: &Field, a: Elem) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let na = f.neg(a);
        let mut out = vec![Elem::ZERO; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] = f.add(out[i + 1], c);
            out[i] = f.add(out[i], f.mul(c, na));
        }
        Poly::from_coeffs(out)
    }

    pub fn div_rem(&self, f: &Field, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Horner evaluation.
    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// The a-th Hasse derivative evaluated at x: sum_i C(i, a) c_i x^{i-a}.
    pub fn hasse_eval(&self, f: &Field, a: usize, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        for i in (a..self.coeffs.len()).rev() {
            let term = f.mul_int(self.coeffs[i], binom_mod(i as u64, a as u64, f.p()) as u64);
            acc = f.add(f.mul(acc, x), term);
        }
        acc
    }

    /// Product of (X - r) over the roots.
    pub fn from_roots(f: &Field, roots: &[Elem]) -> Poly {
        roots.iter().fold(Poly::constant(Elem::ONE), |acc, &r| acc.mul_linear(f, r))
    }

    /// The unique polynomial of degree < points.len() through the points
    /// (Newton divided differences).
    pub fn interpolate(f: &Field, points: &[(Elem, Elem)]) -> Result<Poly> {
        let n = points.len();
        let mut dd: Vec<Elem> = points.iter().map(|&(_, y)| y).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = f.sub(dd[i], dd[i - 1]);
                let den = f.sub(points[i].0, points[i - level].0);
                if den.is_zero() {
                    return Err(Error::InvalidParameter("interpolation nodes must be distinct".into()));
                }
                dd[i] = f.div(num, den)?;
            }
        }
        let mut out = Poly::zero();
        for i in (0..n).rev() {
            out = out.mul_linear(f, points[i].0).add(f, &Poly::constant(dd[i]));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32, r: u32) -> Field {
        Field::new(p, r).unwrap()
    }

    fn naive_eval(f: &Field, p: &Poly, x: Elem) -> Elem {
        p.coeffs().iter().enumerate().fold(Elem::ZERO, |acc, (i, &c)| f.add(acc, f.mul(c, f.pow(x, i as u64))))
    }

    fn e(v: u32) -> Elem {
        Elem(v)
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::constant(Elem::ONE).degree(), Some(0));
        assert_eq!(Poly::constant(Elem::ZERO), Poly::zero());
        assert_eq!(Poly::from_coeffs(vec![e(1), e(0), e(0)]).degree(), Some(0));
    }

    #[test]
    fn small_evaluations() {
        let f2 = gf(2, 1);
        assert_eq!(Poly::from_coeffs(vec![e(1), e(1)]).eval(&f2, e(1)), e(0));
        let f5 = gf(5, 1);
        assert_eq!(Poly::monomial(e(1), 2).eval(&f5, e(3)), e(4));
    }

    #[test]
    fn multiplication_consistent_with_evaluation() {
        for &(p, r) in &[(2u32, 6u32), (5, 1), (7, 1), (3, 2)] {
            let f = gf(p, r);
            let a = Poly::from_coeffs((0..5).map(|i| e((i * 7 + 3) % f.order())).collect());
            let b = Poly::from_coeffs((0..4).map(|i| e((i * 11 + 1) % f.order())).collect());
            let ab = a.mul(&f, &b);
            for x in f.elements() {
                assert_eq!(ab.eval(&f, x), f.mul(a.eval(&f, x), b.eval(&f, x)));
            }
        }
    }

    #[test]
    fn division_roundtrip() {
        let f = gf(2, 4);
        let a = Poly::from_coeffs((1..10).map(e).collect());
        let b = Poly::from_coeffs(vec![e(3), e(0), e(7)]);
        let (qt, rm) = a.div_rem(&f, &b).unwrap();
        assert!(rm.degree().is_none_or(|d| d < 2));
        assert_eq!(qt.mul(&f, &b).add(&f, &rm), a);
        assert_eq!(a.div_rem(&f, &Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn hasse_first_derivative_matches_formal_derivative() {
        let f = gf(5, 1);
        let a = Poly::from_coeffs(vec![e(1), e(2), e(3), e(4), e(1)]);
        let deriv = Poly::from_coeffs((1..5).map(|i| f.mul_int(a.coeff(i), i as u64)).collect());
        for x in f.elements() {
            assert_eq!(a.hasse_eval(&f, 0, x), a.eval(&f, x));
            assert_eq!(a.hasse_eval(&f, 1, x), deriv.eval(&f, x));
        }
    }

    #[test]
    fn roots_vanish() {
        let f = gf(2, 4);
        let roots = [e(2), e(9), e(13)];
        let g = Poly::from_roots(&f, &roots);
        assert_eq!(g.degree(), Some(3));
        for r in roots {
            assert!(g.eval(&f, r).is_zero());
        }
    }

    proptest! {
        #[test]
        fn horner_matches_naive(coeffs in prop::collection::vec(0u32..16, 0..12), x in 0u32..16) {
            let f = gf(2, 4);
            let p = Poly::from_coeffs(coeffs.into_iter().map(Elem).collect());
            prop_assert_eq!(p.eval(&f, Elem(x)), naive_eval(&f, &p, Elem(x)));
        }

        #[test]
        fn evaluation_is_additive(a in prop::collection::vec(0u32..9, 0..8), b in prop::collection::vec(0u32..9, 0..8), x in 0u32..9) {
            let f = gf(3, 2);
            let pa = Poly::from_coeffs(a.into_iter().map(Elem).collect());
            let pb = Poly::from_coeffs(b.into_iter().map(Elem).collect());
            prop_assert_eq!(pa.add(&f, &pb).eval(&f, Elem(x)), f.add(pa.eval(&f, Elem(x)), pb.eval(&f, Elem(x))));
        }

        #[test]
        fn interpolation_recovers_polynomial(coeffs in prop::collection::vec(0u32..13, 1..8)) {
            let f = gf(13, 1);
            let p = Poly::from_coeffs(coeffs.iter().copied().map(Elem).collect());
            let pts: Vec<_> = (0..coeffs.len() as u32).map(|x| (Elem(x), p.eval(&f, Elem(x)))).collect();
            prop_assert_eq!(Poly::interpolate(&f, &pts).unwrap(), p);
        }
    }
}
