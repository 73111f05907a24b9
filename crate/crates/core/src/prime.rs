//! The odd prime `p` together with the data every other module keys on:
//! `q = (p-1)/2` and a fixed generator `g` of `(Z/pZ)^*`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted by [`PrimeContext::new`] (exclusive).
pub const PRIME_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeContext {
    p: u64,
    q: u64,
    g: u64,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if p >= PRIME_LIMIT {
            return Err(Error::PrimeOutOfRange(p));
        }
        let g = primitive_root(p);
        Ok(Self { p, q: (p - 1) / 2, g })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// The fixed generator defining `sigma = sigma_g`.
    #[inline]
    pub fn generator(&self) -> u64 {
        self.g
    }

    /// Order of the Galois group, `p - 1`.
    #[inline]
    pub fn degree(&self) -> usize {
        (self.p - 1) as usize
    }

    /// Reduces `c` to `{1..p-1}`, rejecting multiples of `p`.
    pub fn unit(&self, c: i64) -> Result<u64> {
        let r = c.rem_euclid(self.p as i64) as u64;
        if r == 0 {
            Err(Error::OutOfRange(format!("{c} is not a unit mod {}", self.p)))
        } else {
            Ok(r)
        }
    }

    pub fn inv(&self, c: u64) -> u64 {
        mod_inv(c % self.p, self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&f| mod_pow(g, (p - 1) / f, p) != 1))
        .unwrap_or(2)
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

pub fn mod_inv(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1, "{a} not invertible mod {m}");
    e.x.rem_euclid(m as i128) as u64
}

/// Inverse of `a` modulo `m` for big integers, if it exists.
pub fn big_mod_inv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn vp_int(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.abs();
    loop {
        let (d, r) = y.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        y = d;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn vp_rat(x: &BigRational, p: u64) -> Option<i64> {
    let n = vp_int(x.numer(), p)? as i64;
    let d = vp_int(x.denom(), p).unwrap_or(0) as i64;
    Some(n - d)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Floor of the `k`-th root of a nonnegative integer.
pub fn int_root_floor(x: &BigInt, k: u32) -> BigInt {
    assert!(k >= 1);
    if x.is_zero() || k == 1 {
        return x.clone();
    }
    // Newton from an upper bound derived from the bit length.
    let bits = x.bits();
    let mut hi = BigInt::one() << ((bits / k as u64) + 1);
    let k_big = BigInt::from(k);
    loop {
        let next = (&hi * (&k_big - 1u32) + x / hi.pow(k - 1)) / &k_big;
        if next >= hi {
            break;
        }
        hi = next;
    }
    while hi.pow(k) > *x {
        hi -= 1;
    }
    while (&hi + 1u32).pow(k) <= *x {
        hi += 1;
    }
    hi
}
