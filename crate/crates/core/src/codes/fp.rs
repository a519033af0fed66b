//! Dense linear algebra over a prime field F_p with entries in `0..p`.

/// Modular inverse of a nonzero residue modulo the prime p.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    crate::algebra::field_mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

/// Incrementally maintained reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, n: usize) -> Echelon {
        Echelon { p, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows(p: u32, n: usize, rows: &[Vec<u32>]) -> Echelon {
        let mut e = Echelon::new(p, n);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut w: Vec<u32> = v.iter().map(|&x| x % p).collect();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = w[piv];
            if c != 0 {
                let m = p - c;
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = (*x + m * r) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.n && self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns false if it was already in it.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv_mod(w[piv], p);
        for x in w.iter_mut() {
            *x = *x * s % p;
        }
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                let m = p - c;
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x = (*x + m * r) % p;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(piv);
        true
    }

    /// Coordinates of `v` in the echelon rows, if `v` is in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&piv| v[piv] % self.p).collect())
    }
}

pub fn rank(p: u32, n: usize, rows: &[Vec<u32>]) -> usize {
    Echelon::from_rows(p, n, rows).rank()
}

/// Basis of { x in F_p^n : A x = 0 } for the constraint rows A.
pub fn kernel(p: u32, n: usize, constraints: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let e = Echelon::from_rows(p, n, constraints);
    let mut is_pivot = vec![false; n];
    for &c in e.pivots() {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut x = vec![0u32; n];
        x[free] = 1;
        for (row, &piv) in e.rows().iter().zip(e.pivots()) {
            x[piv] = (p - row[free]) % p;
        }
        out.push(x);
    }
    out
}

/// Coefficients a with sum_j a_j gens_j = v, if any.
pub fn solve(p: u32, gens: &[Vec<u32>], v: &[u32]) -> Option<Vec<u32>> {
    let n = v.len();
    let k = gens.len();
    // unknowns a_1..a_k; equations per coordinate, augmented with -v
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut row: Vec<u32> = gens.iter().map(|g| g[i] % p).collect();
            row.push((p - v[i] % p) % p);
            row
        })
        .collect();
    let e = Echelon::from_rows(p, k + 1, &cols);
    if e.pivots().contains(&k) {
        return None;
    }
    let mut a = vec![0u32; k];
    for (row, &piv) in e.rows().iter().zip(e.pivots()) {
        a[piv] = (p - row[k]) % p;
    }
    Some(a)
}

pub fn add_scaled(p: u32, acc: &mut [u32], v: &[u32], c: u32) {
    if c == 0 {
        return;
    }
    for (x, &y) in acc.iter_mut().zip(v) {
        *x = (*x + c * y) % p;
    }
}
