use super::bch::BchCode;
use super::fp::{inv_mod, Echelon};
use crate::algebra::FieldRef;
use crate::error::{Error, Result};

/// A nested tower F_p^n = C_0 ⊇ C_1 ⊇ ... ⊇ C_ℓ with an ordered basis
/// b_1..b_n of F_p^n such that b_1..b_{k_i} spans C_i for every i and the
/// rows have pairwise distinct leading positions.
#[derive(Clone, Debug)]
pub struct CodeTower {
    p: u32,
    n: usize,
    /// Generator rows of C_1..C_ℓ.
    generators: Vec<Vec<Vec<u32>>>,
    echelons: Vec<Echelon>,
    dims: Vec<usize>,
    basis: Vec<Vec<u32>>,
    leads: Vec<usize>,
    bch: Option<BchLevels>,
}

#[derive(Clone, Debug)]
struct BchLevels {
    field: FieldRef,
    codes: Vec<BchCode>,
}

fn leading(v: &[u32]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

impl CodeTower {
    /// Tower from explicit generator rows for C_1..C_ℓ, with the canonical
    /// basis.
    pub fn from_generators(p: u32, n: usize, generators: Vec<Vec<Vec<u32>>>) -> Result<CodeTower> {
        if !crate::algebra::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let mut echelons = Vec::with_capacity(generators.len());
        for (i, gens) in generators.iter().enumerate() {
            for g in gens {
                if g.len() != n {
                    return Err(Error::LengthMismatch { expected: n, got: g.len() });
                }
                if g.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidTower(format!("level {} generator has entries outside F_{p}", i + 1)));
                }
            }
            let e = Echelon::from_rows(p, n, gens);
            if let Some(prev) = echelons.last() {
                let prev: &Echelon = prev;
                if gens.iter().any(|g| !prev.contains(g)) {
                    return Err(Error::InvalidTower(format!("C_{} is not contained in C_{}", i + 1, i)));
                }
            }
            echelons.push(e);
        }
        let mut dims = vec![n];
        dims.extend(echelons.iter().map(Echelon::rank));
        let basis = canonical_basis(p, n, &generators, &echelons);
        let mut tower = CodeTower { p, n, generators, echelons, dims, basis: Vec::new(), leads: Vec::new(), bch: None };
        tower.set_basis(basis)?;
        Ok(tower)
    }

    /// BCH tower over F_q with designed distances d_1 <= ... <= d_ℓ.
    pub fn bch(field: FieldRef, distances: &[usize]) -> Result<CodeTower> {
        if distances.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidTower("designed distances must be nondecreasing".into()));
        }
        let n = field.order() as usize - 1;
        let codes = distances
            .iter()
            .map(|&d| BchCode::new(field.clone(), d))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| match e {
                Error::OutOfRange { value, limit, .. } => {
                    Error::InvalidTower(format!("designed distance {value} exceeds length {limit}"))
                }
                other => other,
            })?;
        let generators = codes.iter().map(|c| c.gen_matrix().to_vec()).collect();
        let mut tower = CodeTower::from_generators(field.p(), n, generators)?;
        tower.bch = Some(BchLevels { field, codes });
        Ok(tower)
    }

    /// The binary tower with designed distances d_i = 4^i, i = 1..ℓ.
    pub fn dense(field: FieldRef, ell: usize) -> Result<CodeTower> {
        if field.p() != 2 {
            return Err(Error::InvalidTower(format!("field order {} is not a power of two", field.order())));
        }
        let n = field.order() as usize - 1;
        let distances: Vec<usize> = (1..=ell as u32).map(|i| 4usize.saturating_pow(i)).collect();
        if distances.last().is_some_and(|&d| d > n) {
            return Err(Error::InvalidTower(format!("4^{ell} exceeds the length {n}")));
        }
        CodeTower::bch(field, &distances)
    }

    /// Replaces the distinguished basis after checking both tower conditions.
    pub fn with_basis(mut self, basis: Vec<Vec<u32>>) -> Result<CodeTower> {
        self.set_basis(basis)?;
        Ok(self)
    }

    fn set_basis(&mut self, basis: Vec<Vec<u32>>) -> Result<()> {
        let n = self.n;
        if basis.len() != n || basis.iter().any(|b| b.len() != n) {
            return Err(Error::InvalidTower(format!("basis must be {n} vectors of length {n}")));
        }
        if basis.iter().flatten().any(|&c| c >= self.p) {
            return Err(Error::InvalidTower("basis entries must lie in 0..p".into()));
        }
        let mut leads = Vec::with_capacity(n);
        let mut used = vec![false; n];
        for b in &basis {
            let l = leading(b).ok_or_else(|| Error::InvalidTower("zero basis vector".into()))?;
            if std::mem::replace(&mut used[l], true) {
                return Err(Error::InvalidTower("no row permutation of the basis is upper triangular".into()));
            }
            leads.push(l);
        }
        for (i, e) in self.echelons.iter().enumerate() {
            let k = self.dims[i + 1];
            let prefix = Echelon::from_rows(self.p, n, &basis[..k]);
            if prefix.rank() != k || basis[..k].iter().any(|b| !e.contains(b)) {
                return Err(Error::InvalidTower(format!("the first {k} basis vectors do not span C_{}", i + 1)));
            }
        }
        self.basis = basis;
        self.leads = leads;
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.generators.len()
    }

    /// Dimensions k_0 = n, k_1, ..., k_ℓ.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Leading (first nonzero) position of each basis vector.
    pub fn leads(&self) -> &[usize] {
        &self.leads
    }

    pub fn generators(&self, level: usize) -> Option<&[Vec<u32>]> {
        level.checked_sub(1).and_then(|i| self.generators.get(i)).map(Vec::as_slice)
    }

    pub fn field(&self) -> Option<&FieldRef> {
        self.bch.as_ref().map(|b| &b.field)
    }

    /// The BCH code at `level` (1..=ℓ) for BCH towers.
    pub fn bch_code(&self, level: usize) -> Option<&BchCode> {
        let levels = self.bch.as_ref()?;
        level.checked_sub(1).and_then(|i| levels.codes.get(i))
    }

    pub fn designed_distances(&self) -> Option<Vec<usize>> {
        self.bch.as_ref().map(|b| b.codes.iter().map(BchCode::designed_d).collect())
    }

    pub fn contains(&self, level: usize, word: &[u32]) -> bool {
        if word.len() != self.n || word.iter().any(|&c| c >= self.p) {
            return false;
        }
        match level {
            0 => true,
            l => self.echelons.get(l - 1).is_some_and(|e| e.contains(word)),
        }
    }

    /// Coefficients a_1..a_{k_i} with word = sum a_j b_j, or `None` if
    /// `word` is not in C_level.
    pub fn coefficients(&self, level: usize, word: &[u32]) -> Option<Vec<u32>> {
        let k = *self.dims.get(level)?;
        if word.len() != self.n {
            return None;
        }
        let p = self.p;
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&j| self.leads[j]);
        let mut residual: Vec<u32> = word.iter().map(|&c| c % p).collect();
        let mut coeffs = vec![0u32; k];
        for j in order {
            let l = self.leads[j];
            let b = &self.basis[j];
            let a = residual[l] * inv_mod(b[l], p) % p;
            if a != 0 {
                for (x, &y) in residual.iter_mut().zip(b) {
                    *x = (*x + (p - a) * y) % p;
                }
            }
            coeffs[j] = a;
        }
        residual.iter().all(|&x| x == 0).then_some(coeffs)
    }
}

/// Extends a basis of C_ℓ level by level up to F_p^n, then reduces each
/// row against earlier rows until all leading positions are distinct and
/// scales every leading entry to 1. Row operations only add earlier rows to
/// later ones, so each prefix keeps spanning its code.
fn canonical_basis(p: u32, n: usize, generators: &[Vec<Vec<u32>>], echelons: &[Echelon]) -> Vec<Vec<u32>> {
    let ell = generators.len();
    let mut span = Echelon::new(p, n);
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    let identity: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    for level in (0..=ell).rev() {
        let gens = if level == 0 { &identity } else { &generators[level - 1] };
        for g in gens {
            if span.insert(g) {
                rows.push(g.clone());
            }
        }
        debug_assert!(level == 0 || span.rank() == echelons[level - 1].rank());
    }

    let mut pivot_row: Vec<Option<usize>> = vec![None; n];
    for j in 0..rows.len() {
        loop {
            let l = leading(&rows[j]).expect("basis rows are independent");
            let Some(i) = pivot_row[l] else {
                let s = inv_mod(rows[j][l], p);
                for x in rows[j].iter_mut() {
                    *x = *x * s % p;
                }
                pivot_row[l] = Some(j);
                break;
            };
            let c = rows[j][l];
            let (head, tail) = rows.split_at_mut(j);
            for (x, &y) in tail[0].iter_mut().zip(&head[i]) {
                *x = (*x + (p - c) * y) % p;
            }
        }
    }
    rows
}
