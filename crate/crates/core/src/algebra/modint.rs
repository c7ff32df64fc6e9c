use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Modulus `p^k` with `p` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u64,
    k: u32,
    m: u64,
}

impl Modulus {
    /// Moduli are capped at 2^32 so that products fit in a `u64`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::invalid("exponent k must be at least 1"));
        }
        let m = p
            .checked_pow(k)
            .filter(|&m| m <= 1 << 32)
            .ok_or_else(|| Error::invalid(format!("{p}^{k} exceeds 2^32")))?;
        Ok(Modulus { p, k, m })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn value(&self) -> u64 {
        self.m
    }

    /// Order of the unit group, `p^{k-1}(p-1)`.
    pub fn totient(&self) -> u64 {
        self.m / self.p * (self.p - 1)
    }

    pub fn elem(&self, v: i64) -> ModInt {
        ModInt { value: v.rem_euclid(self.m as i64) as u64, modulus: *self }
    }

    pub fn is_unit(&self, v: u64) -> bool {
        v % self.p != 0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.k)
    }
}

/// Residue class modulo `p^k`, stored as its representative in `[0, p^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModInt {
    value: u64,
    modulus: Modulus,
}

impl ModInt {
    pub fn new(value: u64, modulus: Modulus) -> Self {
        ModInt { value: value % modulus.m, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_unit(&self) -> bool {
        self.modulus.is_unit(self.value)
    }

    pub fn inverse(&self) -> Result<ModInt> {
        mod_inverse(*self)
    }

    /// `self^e`; negative exponents need a unit.
    pub fn pow(&self, e: i64) -> Result<ModInt> {
        let base = if e < 0 { self.inverse()? } else { *self };
        Ok(ModInt::new(pow_mod(base.value, e.unsigned_abs(), self.modulus.m), self.modulus))
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for ModInt {
    type Output = ModInt;
    fn add(self, rhs: ModInt) -> ModInt {
        debug_assert_eq!(self.modulus, rhs.modulus);
        ModInt::new(self.value + rhs.value, self.modulus)
    }
}

impl Sub for ModInt {
    type Output = ModInt;
    fn sub(self, rhs: ModInt) -> ModInt {
        debug_assert_eq!(self.modulus, rhs.modulus);
        ModInt::new(self.value + self.modulus.m - rhs.value, self.modulus)
    }
}

impl Mul for ModInt {
    type Output = ModInt;
    fn mul(self, rhs: ModInt) -> ModInt {
        debug_assert_eq!(self.modulus, rhs.modulus);
        ModInt::new(self.value * rhs.value, self.modulus)
    }
}

impl Neg for ModInt {
    type Output = ModInt;
    fn neg(self) -> ModInt {
        ModInt::new(self.modulus.m - self.value, self.modulus)
    }
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Inverse by the extended Euclidean algorithm.
pub fn mod_inverse(a: ModInt) -> Result<ModInt> {
    let m = a.modulus.m as i128;
    let (mut r0, mut r1) = (m, a.value as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { value: a.value, modulus: a.modulus.m });
    }
    Ok(ModInt::new(t0.rem_euclid(m) as u64, a.modulus))
}

/// Smallest representative `r` in `[0, p^k)` with `r^2 = -1 mod p^k`.
///
/// Odd primes `p = 1 mod 4` get a root mod `p` by search and a Newton (Hensel)
/// lift; both lifts `±r` are the only roots, and the smaller is returned. For
/// `p = 2` the roots are found by search (only `k = 1` has one).
pub fn sqrt_minus_one(p: u64, k: u32) -> Result<ModInt> {
    let modulus = Modulus::new(p, k)?;
    let m = modulus.m;
    if p == 2 {
        return (0..m)
            .find(|&r| (r * r + 1) % m == 0)
            .map(|r| ModInt::new(r, modulus))
            .ok_or(Error::NoRoot { p, k });
    }
    if p % 4 != 1 {
        return Err(Error::NoRoot { p, k });
    }
    let base = (1..p).find(|&r| (r * r + 1) % p == 0).ok_or(Error::NoRoot { p, k })?;
    let mut r = modulus.elem(base as i64);
    let one = modulus.elem(1);
    let two = modulus.elem(2);
    // Newton's iteration doubles the p-adic precision each step.
    let mut precision = 1;
    while precision < k {
        let f = r * r + one;
        let df = (two * r).inverse()?;
        r = r - f * df;
        precision *= 2;
    }
    let other = -r;
    Ok(if other.value < r.value { other } else { r })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
