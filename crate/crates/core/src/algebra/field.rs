use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order supported by the table representation.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Shared handle to a field; fields are immutable after construction.
pub type FieldRef = Arc<Field>;

/// Element of a finite field, stored as the integer `sum c_j p^j` of its
/// polynomial-basis coefficients. Elements `0..p` are exactly the prime
/// subfield.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field F_{p^r} with log/antilog tables.
///
/// The modulus is the primitive monic polynomial of degree `r` whose
/// low-order coefficients, read as the integer `sum c_j p^j`, are smallest.
/// For F_16 this is X^4 + X + 1; the class of X is the canonical generator.
pub struct Field {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds F_{p^r}.
    pub fn new(p: u32, r: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let q = (p as u64).checked_pow(r).unwrap_or(u64::MAX);
        if r < 1 || q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { p: p as u64, r });
        }
        let q = q as u32;
        for code in 0..q {
            let mut modulus = Vec::with_capacity(r as usize + 1);
            let mut c = code;
            for _ in 0..r {
                modulus.push(c % p);
                c /= p;
            }
            modulus.push(1);
            if modulus[0] == 0 {
                continue;
            }
            if let Some(exp) = power_table(p, r, q, &modulus) {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate().take(q as usize - 1) {
                    log[e as usize] = i as u32;
                }
                let mut doubled = exp.clone();
                doubled.extend_from_slice(&exp);
                return Ok(Field { p, r, q, modulus, exp: doubled, log });
            }
        }
        Err(Error::NoPrimitivePolynomial { p, r })
    }

    pub fn shared(p: u32, r: u32) -> Result<FieldRef> {
        Field::new(p, r).map(Arc::new)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Field order q = p^r.
    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem(1)
    }

    /// The class of X, which has multiplicative order q - 1.
    #[inline]
    pub fn generator(&self) -> Elem {
        Elem(self.exp[1 % (self.q as usize - 1).max(1)])
    }

    pub fn elem(&self, value: u32) -> Result<Elem> {
        if value >= self.q {
            return Err(Error::OutOfRange { what: "field element", value: value as u64, limit: self.q as u64 });
        }
        Ok(Elem(value))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// Embeds `c` in F_p as a constant polynomial.
    pub fn subfield(&self, c: u32) -> Result<Elem> {
        if c >= self.p {
            return Err(Error::OutOfRange { what: "subfield value", value: c as u64, limit: self.p as u64 });
        }
        Ok(Elem(c))
    }

    /// Returns the F_p value when `a` lies in the prime subfield.
    #[inline]
    pub fn to_subfield(&self, a: Elem) -> Option<u32> {
        (a.0 < self.p).then_some(a.0)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.r)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.r as usize {
            return Err(Error::LengthMismatch { expected: self.r as usize, got: coeffs.len() });
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::OutOfRange { what: "coefficient", value: c as u64, limit: self.p as u64 });
            }
            v = v * self.p + c;
        }
        Ok(Elem(v))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.r == 1 {
            return Elem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem(1);
        }
        if a.0 == 0 {
            return Elem(0);
        }
        let l = self.log[a.0 as usize] as u64 * (e % (self.q as u64 - 1));
        Elem(self.exp[(l % (self.q as u64 - 1)) as usize])
    }

    /// `a` added to itself `k` times.
    #[inline]
    pub fn mul_int(&self, a: Elem, k: u64) -> Elem {
        let k = (k % self.p as u64) as u32;
        match k {
            0 => Elem(0),
            1 => a,
            _ => self.mul(a, Elem(k)),
        }
    }

    /// g^i for the canonical generator g.
    #[inline]
    pub fn exp(&self, i: u64) -> Elem {
        Elem(self.exp[(i % (self.q as u64 - 1)) as usize])
    }

    /// Discrete log base the canonical generator.
    pub fn log(&self, a: Elem) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: Elem) -> Result<u64> {
        let l = self.log(a)? as u64;
        let n = self.q as u64 - 1;
        Ok(n / gcd(l, n))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Powers X^0 .. X^{q-2} modulo `modulus`, or `None` if X does not have
/// order exactly q - 1 (so the modulus is not primitive).
fn power_table(p: u32, r: u32, q: u32, modulus: &[u32]) -> Option<Vec<u32>> {
    let r = r as usize;
    let mut state = vec![0u32; r];
    state[0] = 1;
    let encode = |s: &[u32]| s.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    let mut table = Vec::with_capacity(q as usize - 1);
    for i in 0..(q - 1) {
        let v = encode(&state);
        if v == 0 || (i > 0 && v == 1) {
            return None;
        }
        table.push(v);
        let top = state[r - 1];
        for j in (1..r).rev() {
            state[j] = (state[j - 1] + (p - top * modulus[j] % p)) % p;
        }
        state[0] = (p - top * modulus[0] % p) % p;
    }
    (encode(&state) == 1).then_some(table)
}

/// Binomial coefficient C(n, k) reduced mod the prime p (Lucas).
pub fn binom_mod(mut n: u64, mut k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    if p == 2 {
        return u32::from(k & !n == 0);
    }
    let p64 = p as u64;
    let mut out = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p64, k % p64);
        if ki > ni {
            return 0;
        }
        let mut num = 1u64;
        let mut den = 1u64;
        for t in 0..ki {
            num = num * ((ni - t) % p64) % p64;
            den = den * ((t + 1) % p64) % p64;
        }
        out = out * num % p64 * mod_pow(den, p64 - 2, p64) % p64;
        n /= p64;
        k /= p64;
    }
    out as u32
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}
