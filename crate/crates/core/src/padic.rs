//! Elements of `Z_p[zeta]` truncated modulo `p^K`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::prime::big_mod_inv;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicCyc {
    p: u64,
    k: u32,
    modulus: BigInt,
    coeffs: Vec<BigInt>,
}

impl PadicCyc {
    fn from_raw(p: u64, k: u32, modulus: BigInt, mut coeffs: Vec<BigInt>) -> Self {
        for c in &mut coeffs {
            *c = c.mod_floor(&modulus);
        }
        Self { p, k, modulus, coeffs }
    }

    pub fn zero(p: u64, k: u32) -> Self {
        Self { p, k, modulus: BigInt::from(p).pow(k), coeffs: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u64, k: u32) -> Self {
        let m = BigInt::from(p).pow(k);
        Self::from_raw(p, k, m.clone(), vec![-BigInt::one(); (p - 1) as usize])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lifts back to an integral `CycNum` with coefficients in `[0, p^K)`.
    pub fn to_cyc(&self) -> CycNum {
        CycNum::from_int_coeffs(self.p, &self.coeffs).expect("length matches")
    }

    /// Minimum p-adic valuation of the coefficients, capped at `K`.
    ///
    /// Since `p` is `lambda^(p-1)` up to a unit, this is `floor(v_lambda / (p-1))`
    /// whenever the true value is below the precision.
    pub fn p_valuation(&self) -> u32 {
        let p = BigInt::from(self.p);
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| {
                let mut v = 0;
                let mut x = c.clone();
                while v < self.k && (&x % &p).is_zero() {
                    x /= &p;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(self.k)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed primes in p-adic arithmetic");
        assert_eq!(self.k, other.k, "mixed precisions in p-adic arithmetic");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self::from_raw(self.p, self.k, self.modulus.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self::from_raw(self.p, self.k, self.modulus.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| -a).collect();
        Self::from_raw(self.p, self.k, self.modulus.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j + 2) % p] += a * b;
            }
        }
        let c0 = std::mem::take(&mut acc[0]);
        let c = acc.into_iter().skip(1).map(|c| c - &c0).collect();
        Self::from_raw(self.p, self.k, self.modulus.clone(), c)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let c = self.coeffs.iter().map(|a| a * s).collect();
        Self::from_raw(self.p, self.k, self.modulus.clone(), c)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p, self.k);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn galois_unit(&self, c: u64) -> Self {
        let p = self.p;
        let mut out = vec![BigInt::zero(); (p - 1) as usize];
        for (k, x) in self.coeffs.iter().enumerate() {
            let t = ((k as u64 + 1) * c) % p;
            out[(t - 1) as usize] = x.clone();
        }
        Self { p, k: self.k, modulus: self.modulus.clone(), coeffs: out }
    }

    /// Residue mod lambda.
    pub fn augmentation(&self) -> u64 {
        let s: BigInt = self.coeffs.iter().sum();
        s.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Inverse of a lambda-adic unit.
    pub fn inverse(&self) -> Result<Self> {
        if self.augmentation() == 0 {
            return Err(Error::NotInvertible(self.k));
        }
        let mut others = Self::one(self.p, self.k);
        for c in 2..self.p {
            others = others.mul(&self.galois_unit(c));
        }
        let n = others.mul(self);
        // n is a rational integer: every coefficient equals -N(x) mod p^K.
        let norm = (-&n.coeffs[0]).mod_floor(&self.modulus);
        let ninv = big_mod_inv(&norm, &self.modulus).ok_or(Error::NotInvertible(self.k))?;
        Ok(others.scale(&ninv))
    }

    /// Re-reduces to a lower precision.
    pub fn truncate(&self, k: u32) -> Self {
        assert!(k <= self.k);
        Self::from_raw(self.p, k, BigInt::from(self.p).pow(k), self.coeffs.clone())
    }
}

/// Reduces `x` modulo `p^K`; denominators must be prime to `p`.
pub fn reduce_padic(x: &CycNum, k: u32) -> Result<PadicCyc> {
    if k == 0 {
        return Err(Error::OutOfRange("precision K must be at least 1".into()));
    }
    let p = x.p();
    let m = BigInt::from(p).pow(k);
    let den = x.denominator();
    let dinv = if den.is_one() {
        BigInt::one()
    } else {
        if (den % BigInt::from(p)).is_zero() {
            return Err(Error::DenominatorDivisibleByP(p));
        }
        big_mod_inv(den, &m).ok_or(Error::DenominatorDivisibleByP(p))?
    };
    let c = x.numerators().iter().map(|n| n * &dinv).collect();
    Ok(PadicCyc::from_raw(p, k, m, c))
}
