//! Exact integer matrix routines.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Hermite normal form of the lattice spanned by `rows`, given a positive
/// integer `modulus` with modulus * Z^n contained in that lattice.
///
/// Returns n rows, upper triangular with positive diagonal, every entry
/// above a pivot reduced into [0, pivot). Working modulo `modulus` keeps
/// all intermediate entries small.
pub fn hermite_normal_form(rows: &[Vec<i64>], n: usize, modulus: i64) -> Vec<Vec<i64>> {
    assert!(modulus > 0, "modulus must be positive");
    let m = modulus as i128;
    let mut active: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| (x as i128).rem_euclid(m)).collect())
        .filter(|r: &Vec<i128>| r.iter().any(|&x| x != 0))
        .collect();
    let mut out: Vec<Vec<i128>> = Vec::with_capacity(n);
    for c in 0..n {
        let mut unit = vec![0i128; n];
        unit[c] = m;
        active.push(unit);
        // Euclid on column c among the rows with a nonzero entry there
        loop {
            let mut holders: Vec<usize> = (0..active.len()).filter(|&i| active[i][c] != 0).collect();
            if holders.len() <= 1 {
                break;
            }
            holders.sort_by_key(|&i| active[i][c].abs());
            let piv = holders[0];
            let pivot_row = active[piv].clone();
            for &i in &holders[1..] {
                let q = active[i][c].div_euclid(pivot_row[c]);
                for j in c..n {
                    active[i][j] -= q * pivot_row[j];
                }
                for x in active[i][c + 1..].iter_mut() {
                    *x = x.rem_euclid(m);
                }
            }
        }
        let piv = active.iter().position(|r| r[c] != 0).expect("the modulus row keeps column c nonzero");
        let mut row = active.swap_remove(piv);
        if row[c] < 0 {
            row.iter_mut().for_each(|x| *x = -*x);
        }
        for x in row[c + 1..].iter_mut() {
            *x = x.rem_euclid(m);
        }
        out.push(row);
        active.retain(|r| r.iter().any(|&x| x != 0));
    }
    for s in 0..n {
        for r in 0..s {
            let q = out[r][s].div_euclid(out[s][s]);
            if q != 0 {
                for j in s..n {
                    out[r][j] -= q * out[s][j];
                }
            }
        }
    }
    out.into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("entries are bounded by the modulus")).collect())
        .collect()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n, "matrix must be square");
            r.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// |det| of a square integer matrix.
pub fn abs_determinant(matrix: &[Vec<i64>]) -> BigInt {
    determinant(matrix).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn laplace(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect()).collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] as i128 * laplace(&minor)
            })
            .sum()
    }

    // membership by solving against a triangular basis
    fn in_span(hnf: &[Vec<i64>], v: &[i64]) -> bool {
        let mut r: Vec<i64> = v.to_vec();
        for (c, row) in hnf.iter().enumerate() {
            if r[c] % row[c] != 0 {
                return false;
            }
            let q = r[c] / row[c];
            for j in c..r.len() {
                r[j] -= q * row[j];
            }
        }
        r.iter().all(|&x| x == 0)
    }

    #[test]
    fn small_examples() {
        assert_eq!(determinant(&[]), BigInt::from(1));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![2, 1], vec![0, 9]]), BigInt::from(18));
        let h = hermite_normal_form(&[vec![2, 1]], 2, 9);
        assert_eq!(h, vec![vec![1, 5], vec![0, 9]]);
    }

    proptest! {
        #[test]
        fn bareiss_matches_laplace(m in prop::collection::vec(prop::collection::vec(-9i64..10, 5), 5)) {
            prop_assert_eq!(determinant(&m), BigInt::from(laplace(&m)));
        }

        #[test]
        fn hnf_spans_the_same_lattice(
            rows in prop::collection::vec(prop::collection::vec(-20i64..20, 4), 0..5),
            modulus in prop::sample::select(vec![2i64, 4, 8, 9]),
        ) {
            let n = 4;
            let h = hermite_normal_form(&rows, n, modulus);
            for (c, r) in h.iter().enumerate() {
                prop_assert!(r[c] > 0 && modulus % r[c] == 0);
                prop_assert!(r[..c].iter().all(|&x| x == 0));
                for above in &h[..c] {
                    prop_assert!(above[c] >= 0 && above[c] < r[c]);
                }
            }
            for r in &rows {
                prop_assert!(in_span(&h, r));
            }
            for c in 0..n {
                let mut e = vec![0; n];
                e[c] = modulus;
                prop_assert!(in_span(&h, &e));
            }
            // index of modulus * Z^n in the span of the generators, by counting
            // residues reachable mod modulus
            let det: i64 = h.iter().enumerate().map(|(c, r)| r[c]).product();
            let mut reach = std::collections::HashSet::new();
            reach.insert(vec![0i64; n]);
            let mut frontier = vec![vec![0i64; n]];
            while let Some(v) = frontier.pop() {
                for r in &rows {
                    let w: Vec<i64> = v.iter().zip(r).map(|(a, b)| (a + b).rem_euclid(modulus)).collect();
                    if reach.insert(w.clone()) {
                        frontier.push(w);
                    }
                }
            }
            prop_assert_eq!(reach.len() as i64 * det, modulus.pow(n as u32));
        }
    }
}
