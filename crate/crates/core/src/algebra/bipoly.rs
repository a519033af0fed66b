use super::field::{binom_mod, Elem, Field};
use super::poly::Poly;

/// Bivariate polynomial Q(X, Y) = sum_j q_j(X) Y^j, stored by Y-degree.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    rows: Vec<Poly>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly { rows: Vec::new() }
    }

    pub fn from_rows(mut rows: Vec<Poly>) -> BiPoly {
        while rows.last().is_some_and(Poly::is_zero) {
            rows.pop();
        }
        BiPoly { rows }
    }

    /// Builds from (i, j, c) terms meaning c X^i Y^j; repeated exponents add.
    pub fn from_terms(f: &Field, terms: &[(usize, usize, Elem)]) -> BiPoly {
        let ymax = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut rows = vec![Poly::zero(); ymax];
        for &(i, j, c) in terms {
            rows[j] = rows[j].add(f, &Poly::monomial(c, i));
        }
        BiPoly::from_rows(rows)
    }

    /// Y - g(X).
    pub fn y_minus(f: &Field, g: &Poly) -> BiPoly {
        BiPoly::from_rows(vec![g.neg(f), Poly::constant(Elem::ONE)])
    }

    /// A polynomial in X only.
    pub fn from_x(g: Poly) -> BiPoly {
        BiPoly::from_rows(vec![g])
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn row(&self, j: usize) -> &Poly {
        static ZERO: Poly = Poly::zero();
        self.rows.get(j).unwrap_or(&ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Nonzero terms as (x-exponent, y-exponent, coefficient).
    pub fn terms(&self) -> Vec<(usize, usize, Elem)> {
        let mut out = Vec::new();
        for (j, row) in self.rows.iter().enumerate() {
            for (i, &c) in row.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    /// (1, w)-weighted degree, `None` for the zero polynomial.
    pub fn weighted_degree(&self, w: usize) -> Option<usize> {
        self.rows.iter().enumerate().filter_map(|(j, row)| row.degree().map(|d| d + w * j)).max()
    }

    pub fn add(&self, f: &Field, other: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(other.rows.len());
        BiPoly::from_rows((0..n).map(|j| self.row(j).add(f, other.row(j))).collect())
    }

    pub fn sub(&self, f: &Field, other: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(other.rows.len());
        BiPoly::from_rows((0..n).map(|j| self.row(j).sub(f, other.row(j))).collect())
    }

    pub fn scale(&self, f: &Field, c: Elem) -> BiPoly {
        BiPoly::from_rows(self.rows.iter().map(|r| r.scale(f, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let mut rows = vec![Poly::zero(); self.rows.len() + other.rows.len() - 1];
        for (a, ra) in self.rows.iter().enumerate() {
            for (b, rb) in other.rows.iter().enumerate() {
                rows[a + b] = rows[a + b].add(f, &ra.mul(f, rb));
            }
        }
        BiPoly::from_rows(rows)
    }

    /// Multiplies every row by (X - a).
    pub fn mul_x_linear(&self, f: &Field, a: Elem) -> BiPoly {
        BiPoly { rows: self.rows.iter().map(|r| r.mul_linear(f, a)).collect() }
    }

    pub fn eval(&self, f: &Field, x: Elem, y: Elem) -> Elem {
        self.rows.iter().rev().fold(Elem::ZERO, |acc, row| f.add(f.mul(acc, y), row.eval(f, x)))
    }

    /// Coefficient of X^a Y^b in Q(X + x, Y + y).
    pub fn hasse(&self, f: &Field, a: usize, b: usize, x: Elem, y: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        for j in (b..self.rows.len()).rev() {
            let inner = self.rows[j].hasse_eval(f, a, x);
            let term = f.mul_int(inner, binom_mod(j as u64, b as u64, f.p()) as u64);
            acc = f.add(f.mul(acc, y), term);
        }
        acc
    }

    /// Q(X, g(X)).
    pub fn substitute_y(&self, f: &Field, g: &Poly) -> Poly {
        self.rows.iter().rev().fold(Poly::zero(), |acc, row| acc.mul(f, g).add(f, row))
    }

    /// Division by (Y - g(X)) as a polynomial in Y: returns (quotient,
    /// remainder) with remainder = Q(X, g(X)).
    pub fn div_y_minus(&self, f: &Field, g: &Poly) -> (BiPoly, Poly) {
        let Some(top) = self.y_degree() else {
            return (BiPoly::zero(), Poly::zero());
        };
        let mut quot = vec![Poly::zero(); top];
        let mut carry = self.rows[top].clone();
        for j in (0..top).rev() {
            quot[j] = carry.clone();
            carry = self.rows[j].add(f, &carry.mul(f, g));
        }
        (BiPoly::from_rows(quot), carry)
    }

    /// Largest v with X^v dividing Q.
    pub fn x_valuation(&self) -> Option<usize> {
        self.rows
            .iter()
            .filter_map(|row| row.coeffs().iter().position(|c| !c.is_zero()))
            .min()
    }

    /// Q / X^v; the caller guarantees divisibility.
    pub fn div_x_pow(&self, v: usize) -> BiPoly {
        BiPoly::from_rows(
            self.rows
                .iter()
                .map(|row| Poly::from_coeffs(row.coeffs().iter().skip(v).copied().collect()))
                .collect(),
        )
    }

    /// Q(0, Y) as a univariate polynomial in Y.
    pub fn at_x_zero(&self) -> Poly {
        Poly::from_coeffs(self.rows.iter().map(|row| row.coeff(0)).collect())
    }

    /// Q(X, X Y + gamma).
    pub fn compose_xy_plus(&self, f: &Field, gamma: Elem) -> BiPoly {
        let n = self.rows.len();
        let mut rows = Vec::with_capacity(n);
        for b in 0..n {
            // Taylor shift in Y, then Y -> X Y
            let mut acc = Poly::zero();
            for j in (b..n).rev() {
                let c = f.mul_int(f.pow(gamma, (j - b) as u64), binom_mod(j as u64, b as u64, f.p()) as u64);
                acc = acc.add(f, &self.rows[j].scale(f, c));
            }
            rows.push(acc.shift(b));
        }
        BiPoly::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(v: u32) -> Elem {
        Elem(v)
    }

    // Direct expansion of Q(X + x, Y + y) via the binomial theorem.
    fn shifted_coeff(f: &Field, q: &BiPoly, a: usize, b: usize, x: Elem, y: Elem) -> Elem {
        let xp = Poly::from_coeffs(vec![x, Elem::ONE]);
        let yp = Poly::from_coeffs(vec![y, Elem::ONE]);
        let mut total = BiPoly::zero();
        for (i, j, c) in q.terms() {
            let mut xi = Poly::constant(Elem::ONE);
            for _ in 0..i {
                xi = xi.mul(f, &xp);
            }
            let mut yj = Poly::constant(Elem::ONE);
            for _ in 0..j {
                yj = yj.mul(f, &yp);
            }
            let rows: Vec<Poly> = yj.coeffs().iter().map(|&cy| xi.scale(f, f.mul(cy, c))).collect();
            total = total.add(f, &BiPoly::from_rows(rows));
        }
        total.row(b).coeff(a)
    }

    #[test]
    fn weighted_degree_and_terms() {
        let f = Field::new(5, 1).unwrap();
        let q = BiPoly::from_terms(&f, &[(3, 0, e(1)), (0, 2, e(2)), (1, 1, e(4))]);
        assert_eq!(q.weighted_degree(1), Some(3));
        assert_eq!(q.weighted_degree(2), Some(4));
        assert_eq!(BiPoly::zero().weighted_degree(1), None);
        assert_eq!(q.terms().len(), 3);
    }

    #[test]
    fn division_by_y_minus_factor() {
        let f = Field::new(2, 4).unwrap();
        let g = Poly::from_coeffs(vec![e(3), e(5)]);
        let h = BiPoly::from_terms(&f, &[(2, 0, e(7)), (0, 1, e(1)), (1, 2, e(9))]);
        let q = h.mul(&f, &BiPoly::y_minus(&f, &g));
        let (quot, rem) = q.div_y_minus(&f, &g);
        assert!(rem.is_zero());
        assert_eq!(quot, h);
        assert_eq!(q.substitute_y(&f, &g), Poly::zero());
    }

    #[test]
    fn compose_matches_evaluation() {
        let f = Field::new(7, 1).unwrap();
        let q = BiPoly::from_terms(&f, &[(2, 0, e(3)), (0, 3, e(1)), (1, 1, e(5)), (0, 0, e(2))]);
        let gamma = e(4);
        let c = q.compose_xy_plus(&f, gamma);
        for x in f.elements() {
            for y in f.elements() {
                let inner = f.add(f.mul(x, y), gamma);
                assert_eq!(c.eval(&f, x, y), q.eval(&f, x, inner));
            }
        }
    }

    proptest! {
        #[test]
        fn hasse_matches_expansion(
            terms in prop::collection::vec((0usize..5, 0usize..4, 1u32..5), 1..8),
            a in 0usize..4, b in 0usize..3, x in 0u32..5, y in 0u32..5,
        ) {
            let f = Field::new(5, 1).unwrap();
            let t: Vec<_> = terms.into_iter().map(|(i, j, c)| (i, j, Elem(c))).collect();
            let q = BiPoly::from_terms(&f, &t);
            prop_assert_eq!(q.hasse(&f, a, b, Elem(x), Elem(y)), shifted_coeff(&f, &q, a, b, Elem(x), Elem(y)));
        }
    }
}
