//! Generalized Bernoulli residues, the irregularity index and the rank `D`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime::{binomial, mod_inv, mod_pow, PrimeContext};

pub const ORACLE_CEILING: u64 = 2000;

/// Value of `B_(1, w^-k)` modulo `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CharValue {
    Residue(u64),
    /// Has `p` in the denominator (only `k = 1`).
    NonIntegral,
}

impl CharValue {
    pub fn is_zero_mod_p(self) -> bool {
        self == CharValue::Residue(0)
    }
}

/// `B_(1, w^-k) = (1/p) sum_a a w^-k(a)` reduced mod `p`, with the
/// Teichmueller lift `w(a) = a^p mod p^2`.
pub fn bernoulli_char(p: u64, k: u64) -> Result<CharValue> {
    PrimeContext::new(p)?;
    if k.is_multiple_of(2) {
        return Err(Error::OutOfRange(format!("character index {k} must be odd")));
    }
    if k < 1 || k > p - 2 {
        return Err(Error::OutOfRange(format!("character index {k} outside 1..={}", p - 2)));
    }
    let p2 = (p as u128 * p as u128) as u64;
    let mut s: u128 = 0;
    for a in 1..p {
        let w = mod_pow(a, p, p2);
        let winv = mod_inv(w, p2);
        let t = mod_pow(winv, k, p2) as u128;
        s = (s + a as u128 * t) % p2 as u128;
    }
    let s = s as u64;
    if !s.is_multiple_of(p) {
        return Ok(CharValue::NonIntegral);
    }
    Ok(CharValue::Residue(s / p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrregularityReport {
    pub p: u64,
    pub i_p: u64,
    pub irregular_ks: Vec<u64>,
    #[serde(rename = "D")]
    pub d: u64,
    pub n_list: Vec<u64>,
}

/// Scans odd `k` in `1..=p-2`; `k` is irregular when `B_(1, w^-k) = 0 mod p`.
pub fn irregularity_index(p: u64) -> Result<IrregularityReport> {
    let ctx = PrimeContext::new(p)?;
    let ks: Vec<u64> = (1..=p - 2).step_by(2).collect();
    let vals: Vec<(u64, CharValue)> =
        ks.par_iter().map(|&k| bernoulli_char(p, k).map(|v| (k, v))).collect::<Result<_>>()?;
    let irregular_ks: Vec<u64> = vals.iter().filter(|(_, v)| v.is_zero_mod_p()).map(|(k, _)| *k).collect();
    let n_list: Vec<u64> = vals.iter().filter(|(_, v)| !v.is_zero_mod_p()).map(|(k, _)| *k).collect();
    let i_p = irregular_ks.len() as u64;
    Ok(IrregularityReport { p, i_p, irregular_ks, d: ctx.q() - i_p, n_list })
}

/// Bernoulli numbers `B_0..B_n` (with `B_1 = -1/2`) by the classical recurrence.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    b: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn new(n: usize) -> Self {
        let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
        b.push(BigRational::from_integer(1.into()));
        for m in 1..=n {
            if m > 1 && m % 2 == 1 {
                b.push(BigRational::zero());
                continue;
            }
            let mut s = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                if bk.is_zero() {
                    continue;
                }
                s += bk * BigRational::from_integer(binomial(m as u64 + 1, k as u64));
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        Self { b }
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn get(&self, n: usize) -> &BigRational {
        &self.b[n]
    }

    /// Odd `k` in `3..=p-2` with `p | numerator(B_(p-k))`.
    pub fn irregular_ks(&self, p: u64) -> Vec<u64> {
        assert!((p as usize) < self.b.len() + 1, "table too short for p = {p}");
        let pb = BigInt::from(p);
        (3..=p.saturating_sub(2))
            .step_by(2)
            .filter(|&k| {
                let bn = &self.b[(p - k) as usize];
                // von Staudt-Clausen: p does not divide the denominator of B_(p-k).
                debug_assert!(!(bn.denom() % &pb).is_zero());
                (bn.numer() % &pb).is_zero()
            })
            .collect()
    }
}

/// Independent oracle: irregular indices from the exact Bernoulli recurrence.
pub fn bernoulli_oracle(p: u64) -> Result<Vec<u64>> {
    PrimeContext::new(p)?;
    if p > ORACLE_CEILING {
        return Err(Error::CeilingExceeded { p, ceiling: ORACLE_CEILING });
    }
    Ok(BernoulliTable::new(p as usize).irregular_ks(p))
}

/// `B_(p-k) / (p-k) mod p` for odd `3 <= k <= p-2`, the classical congruent value.
pub fn classical_residue(table: &BernoulliTable, p: u64, k: u64) -> u64 {
    let n = p - k;
    let b = table.get(n as usize);
    let pb = BigInt::from(p);
    let num = b.numer().mod_floor(&pb).to_u64().unwrap();
    let den = (b.denom() * BigInt::from(n)).mod_floor(&pb).to_u64().unwrap();
    num * mod_inv(den, p) % p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let t = BernoulliTable::new(12);
        assert_eq!(*t.get(1), BigRational::new((-1).into(), 2.into()));
        assert_eq!(*t.get(2), BigRational::new(1.into(), 6.into()));
        assert_eq!(*t.get(12), BigRational::new((-691).into(), 2730.into()));
        assert!(t.get(7).is_zero());
    }

    #[test]
    fn char_examples() {
        assert_ne!(bernoulli_char(5, 1).unwrap(), CharValue::Residue(0));
        for k in (1..=11).step_by(2) {
            assert!(!bernoulli_char(13, k).unwrap().is_zero_mod_p());
        }
        assert!(bernoulli_char(13, 2).is_err());
        assert!(bernoulli_char(37, 5).unwrap().is_zero_mod_p());
    }

    #[test]
    fn matches_classical_congruence() {
        let t = BernoulliTable::new(60);
        for p in [7u64, 11, 13, 37, 59] {
            for k in (3..=p - 2).step_by(2) {
                let CharValue::Residue(r) = bernoulli_char(p, k).unwrap() else { panic!() };
                assert_eq!(r, classical_residue(&t, p, k), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn reports() {
        let r = irregularity_index(13).unwrap();
        assert_eq!((r.i_p, r.d), (0, 6));
        let r = irregularity_index(5).unwrap();
        assert_eq!((r.i_p, r.d), (0, 2));
        let r = irregularity_index(37).unwrap();
        assert_eq!((r.i_p, r.d, r.irregular_ks.clone()), (1, 17, vec![5]));
        assert_eq!(r.i_p as usize + r.n_list.len(), 18);
        assert_eq!(bernoulli_oracle(59).unwrap(), vec![15]);
        assert_eq!(bernoulli_oracle(7).unwrap(), Vec::<u64>::new());
        assert!(matches!(bernoulli_oracle(2003), Err(Error::CeilingExceeded { .. })));
    }
}
