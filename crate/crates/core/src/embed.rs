//! Certified complex embeddings.
//!
//! Cosines and sines of `2 pi j / p` are computed in fixed point with 64 guard
//! bits; every table entry is within `2^-bits` of the true value. Squared
//! absolute values of `sigma_c(x)` are then bracketed by exact rationals, so
//! no floating point value ever reaches a verdict.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::CycNum;

const GUARD: u32 = 64;
const MAX_BITS: u32 = 8192;

/// `floor(2^w * atan(1/n))`, error a few units in the last place.
fn atan_inv(n: u64, w: u32) -> BigInt {
    let one = BigInt::one() << w;
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = &one / &n;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
    }
    sum
}

/// pi scaled by `2^w`.
fn pi_fixed(w: u32) -> BigInt {
    atan_inv(5, w) * 16 - atan_inv(239, w) * 4
}

/// `(cos x, sin x)` scaled by `2^w` for `x = xf / 2^w`, `0 <= x <= pi`.
fn cos_sin_fixed(xf: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let mut term = one.clone();
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        match k % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        k += 1;
        term = ((&term * xf) >> w) / BigInt::from(k);
    }
    (cos, sin)
}

/// Table of `cos(2 pi j/p)`, `sin(2 pi j/p)` scaled by `2^bits`, each within 1 unit.
#[derive(Debug, Clone)]
pub struct TrigTable {
    p: u64,
    bits: u32,
    cos: Vec<BigInt>,
    sin: Vec<BigInt>,
}

impl TrigTable {
    pub fn new(p: u64, bits: u32) -> Self {
        let w = bits + GUARD;
        let pi = pi_fixed(w);
        let mut cos = vec![BigInt::zero(); p as usize];
        let mut sin = vec![BigInt::zero(); p as usize];
        for j in 0..=(p / 2) {
            let x = (&pi * BigInt::from(2 * j)) / BigInt::from(p);
            let (c, s) = cos_sin_fixed(&x, w);
            let c = round_shift(&c, GUARD);
            let s = round_shift(&s, GUARD);
            if j > 0 {
                cos[(p - j) as usize] = c.clone();
                sin[(p - j) as usize] = -s.clone();
            }
            cos[j as usize] = c;
            sin[j as usize] = s;
        }
        Self { p, bits, cos, sin }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

fn round_shift(x: &BigInt, s: u32) -> BigInt {
    let half = BigInt::one() << (s - 1);
    (x + half) >> s
}

/// Closed rational interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Bracket for `|sigma_c(x)|^2`.
pub fn abs2_bracket(x: &CycNum, c: u64, table: &TrigTable) -> Bracket {
    assert_eq!(x.p(), table.p);
    let p = table.p;
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    let mut err = BigInt::zero();
    for (k, a) in x.numerators().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let j = ((k as u64 + 1) * c % p) as usize;
        re += a * &table.cos[j];
        im += a * &table.sin[j];
        err += a.abs();
    }
    let (rl, rh) = sq_range(&re, &err);
    let (il, ih) = sq_range(&im, &err);
    let scale = x.denominator().pow(2) << (2 * table.bits);
    Bracket { lo: BigRational::new(rl + il, scale.clone()), hi: BigRational::new(rh + ih, scale) }
}

/// Range of `t^2` for `t` in `[v - e, v + e]`.
fn sq_range(v: &BigInt, e: &BigInt) -> (BigInt, BigInt) {
    let a = v - e;
    let b = v + e;
    let hi = std::cmp::max(a.abs(), b.abs()).pow(2);
    let lo = if a.is_negative() && b.is_positive() || a.is_zero() || b.is_zero() {
        BigInt::zero()
    } else {
        std::cmp::min(a.abs(), b.abs()).pow(2)
    };
    (lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certified {
    Holds,
    Fails,
    Inconclusive,
}

/// Decides `|sigma_c(x)|^2 <= rhs` (or `<` when `strict`), refining precision as needed.
pub fn certify_abs2(x: &CycNum, c: u64, rhs: &BigRational, strict: bool) -> Certified {
    let mut bits = 64;
    while bits <= MAX_BITS {
        let b = abs2_bracket(x, c, &TrigTable::new(x.p(), bits));
        let holds = if strict { b.hi < *rhs } else { b.hi <= *rhs };
        let fails = if strict { b.lo >= *rhs } else { b.lo > *rhs };
        if holds {
            return Certified::Holds;
        }
        if fails {
            return Certified::Fails;
        }
        bits *= 2;
    }
    Certified::Inconclusive
}

/// Certified check over all embeddings at once; returns the first non-holding `c`.
pub fn certify_all_abs2(x: &CycNum, rhs: &BigRational, strict: bool, table: &TrigTable) -> (Certified, Option<u64>) {
    // Rational x: every embedding is x itself, decided exactly.
    if let Some(r) = x.as_rational() {
        let a2 = &r * &r;
        let holds = if strict { a2 < *rhs } else { a2 <= *rhs };
        return if holds { (Certified::Holds, None) } else { (Certified::Fails, Some(1)) };
    }
    for c in 1..x.p() {
        let b = abs2_bracket(x, c, table);
        let holds = if strict { b.hi < *rhs } else { b.hi <= *rhs };
        if holds {
            continue;
        }
        let v = certify_abs2(x, c, rhs, strict);
        if v != Certified::Holds {
            return (v, Some(c));
        }
    }
    (Certified::Holds, None)
}

/// Upper bound for `max_c |sigma_c(x)|^2`.
pub fn max_abs2_upper(x: &CycNum, table: &TrigTable) -> BigRational {
    (1..x.p()).map(|c| abs2_bracket(x, c, table).hi).max().unwrap_or_else(BigRational::zero)
}

/// Rational `r >= sqrt(y)` with relative slack about `2^-s`.
pub fn sqrt_upper(y: &BigRational, s: u32) -> BigRational {
    let scaled = (y.numer() << (2 * s)).div_ceil(y.denom());
    let r = scaled.sqrt() + 1u32;
    BigRational::new(r, BigInt::one() << s)
}

/// Certified rational `M >= max_c |sigma_c(mu)|`.
pub fn mu_bound(p: u64) -> BigRational {
    let table = TrigTable::new(p, 128);
    sqrt_upper(&max_abs2_upper(&CycNum::mu(p), &table), 48)
}
