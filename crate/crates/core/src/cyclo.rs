//! Exact elements of `Q(zeta_p)` over the basis `zeta, zeta^2, .., zeta^(p-1)`.
//!
//! Internally an element is a vector of integer numerators over one common
//! positive denominator, kept in lowest terms. This keeps products cheap
//! compared to a vector of independent rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime::PrimeContext;

/// lambda-adic valuation; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_at_least(self, k: u64) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinite => true,
        }
    }
}

/// `x = sum_j digits[j] * lambda^(offset + j)  mod lambda^truncation`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaExpansion {
    pub digits: Vec<u64>,
    pub offset: u64,
    pub truncation: u64,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    p: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(p={}, [", self.p)?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

impl CycNum {
    fn from_parts(p: u64, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len() as u64, p - 1);
        let mut x = Self { p, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(p: u64) -> Self {
        Self { p, num: vec![BigInt::zero(); (p - 1) as usize], den: BigInt::one() }
    }

    /// `1 = -(zeta + .. + zeta^(p-1))`.
    pub fn one(p: u64) -> Self {
        Self::from_int(p, BigInt::one())
    }

    pub fn from_int(p: u64, n: impl Into<BigInt>) -> Self {
        let n: BigInt = n.into();
        Self { p, num: vec![-n; (p - 1) as usize], den: BigInt::one() }
    }

    pub fn from_rational(p: u64, r: &BigRational) -> Self {
        Self::from_parts(p, vec![-r.numer().clone(); (p - 1) as usize], r.denom().clone())
    }

    /// `zeta^k` for any integer `k`; `zeta^0 = 1` is expanded in the basis.
    pub fn zeta_pow(p: u64, k: i64) -> Self {
        let r = k.rem_euclid(p as i64) as usize;
        if r == 0 {
            return Self::one(p);
        }
        let mut x = Self::zero(p);
        x.num[r - 1] = BigInt::one();
        x
    }

    pub fn from_int_coeffs(p: u64, coeffs: &[BigInt]) -> Result<Self> {
        if coeffs.len() as u64 != p - 1 {
            return Err(Error::OutOfRange(format!(
                "expected {} coefficients, got {}",
                p - 1,
                coeffs.len()
            )));
        }
        Ok(Self { p, num: coeffs.to_vec(), den: BigInt::one() })
    }

    /// Builds `sum_c coeffs[c-1] zeta^c`.
    pub fn from_coeffs(p: u64, coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() as u64 != p - 1 {
            return Err(Error::OutOfRange(format!(
                "expected {} coefficients, got {}",
                p - 1,
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_parts(p, num, den))
    }

    /// `lambda = 1 - zeta`.
    pub fn lambda(p: u64) -> Self {
        &Self::one(p) - &Self::zeta_pow(p, 1)
    }

    /// `1/lambda = -(1/p) sum_k k zeta^k`.
    pub fn lambda_inv(p: u64) -> Self {
        let num = (1..p).map(|k| -BigInt::from(k)).collect();
        Self::from_parts(p, num, BigInt::from(p))
    }

    /// `mu = p^2 / lambda`, an algebraic integer.
    pub fn mu(p: u64) -> Self {
        Self::lambda_inv(p).scale_int(&BigInt::from(p * p))
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    /// Coefficient of `zeta^c`, `1 <= c <= p-1`.
    pub fn coeff(&self, c: u64) -> BigRational {
        BigRational::new(self.num[(c - 1) as usize].clone(), self.den.clone())
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Integer coefficients, or an error if some coefficient is fractional.
    pub fn int_coeffs(&self) -> Result<&[BigInt]> {
        if self.is_integral() {
            Ok(&self.num)
        } else {
            Err(Error::NonIntegral(format!("denominator {}", self.den)))
        }
    }

    /// Rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let first = &self.num[0];
        if self.num.iter().all(|c| c == first) {
            Some(BigRational::new(-first.clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed primes in cyclotomic arithmetic");
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(self * other)
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.p);
        }
        let num = self.num.iter().map(|c| c * k).collect();
        Self::from_parts(self.p, num, self.den.clone())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero(self.p);
        }
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.p, num, &self.den * r.denom())
    }

    /// Exact division by a nonzero integer.
    pub fn div_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero(), "division by zero");
        Self::from_parts(self.p, self.num.clone(), &self.den * k)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `sigma_c`, `zeta -> zeta^c`.
    pub fn galois(&self, c: i64) -> Result<Self> {
        let p = self.p as i64;
        let c = c.rem_euclid(p);
        if c == 0 {
            return Err(Error::OutOfRange(format!("sigma_c needs p not dividing c, got c = 0 mod {p}")));
        }
        Ok(self.galois_unit(c as u64))
    }

    /// `sigma_c` for a known unit `1 <= c < p`.
    pub fn galois_unit(&self, c: u64) -> Self {
        let p = self.p;
        let mut num = vec![BigInt::zero(); (p - 1) as usize];
        for (k, x) in self.num.iter().enumerate() {
            let t = ((k as u64 + 1) * c) % p;
            num[(t - 1) as usize] = x.clone();
        }
        Self { p, num, den: self.den.clone() }
    }

    /// Complex conjugation `sigma_(p-1)`.
    pub fn conj(&self) -> Self {
        self.galois_unit(self.p - 1)
    }

    /// `Tr(zeta^c) = -1` for every `c` in the basis.
    pub fn trace(&self) -> BigRational {
        let s: BigInt = self.num.iter().sum();
        BigRational::new(-s, self.den.clone())
    }

    /// Product of all `p - 1` conjugates.
    pub fn norm(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut acc = self.clone();
        for c in 2..self.p {
            acc = &acc * &self.galois_unit(c);
        }
        acc.as_rational().expect("norm is rational")
    }

    /// Multiplicative inverse via the product of the other conjugates.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Precondition("inverse of zero".into()));
        }
        let mut others = Self::one(self.p);
        for c in 2..self.p {
            others = &others * &self.galois_unit(c);
        }
        let n = (&others * self).as_rational().expect("norm is rational");
        Ok(others.scale(&n.recip()))
    }

    /// Residue mod lambda of an integral element: sum of coefficients mod p.
    pub fn augmentation(&self) -> Result<u64> {
        let c = self.int_coeffs()?;
        let s: BigInt = c.iter().sum();
        Ok(s.mod_floor(&BigInt::from(self.p)).to_u64().unwrap())
    }

    /// Exact quotient by lambda for integral `x` with `x = 0 mod lambda`.
    fn div_lambda(&self) -> Self {
        // x / (1 - zeta) in the power basis: write x = sum_{c=1}^{p-1} b_c zeta^c,
        // y = sum_{c=0}^{p-2} y_c zeta^c with (1 - zeta) y = x modulo Phi_p.
        // Using zeta^(p-1) = -(1 + .. + zeta^(p-2)) one gets y_c = s_c - t with
        // s_c = b_1 + .. + b_c, t = s_(p-1) / p and y_c = s_c - (c + 1) t.
        let p = self.p as usize;
        let total: BigInt = self.num.iter().sum();
        let t = total.div_floor(&BigInt::from(self.p));
        debug_assert!((&t * BigInt::from(self.p)) == total);
        // y in power basis 1..zeta^(p-2), then convert to the zeta..zeta^(p-1) basis.
        let mut y = Vec::with_capacity(p - 1);
        let mut s = BigInt::zero();
        y.push(-&t);
        for c in 1..p - 1 {
            s += &self.num[c - 1];
            y.push(&s - &t * BigInt::from(c + 1));
        }
        // 1 = -sum zeta^c: coefficient of zeta^c becomes y_c - y_0, zeta^(p-1) gets -y_0.
        let y0 = y[0].clone();
        let mut num = Vec::with_capacity(p - 1);
        for yc in y.iter().skip(1) {
            num.push(yc - &y0);
        }
        num.push(-y0);
        Self { p: self.p, num, den: self.den.clone() }
    }

    pub fn lambda_valuation(&self) -> Result<Valuation> {
        let coeffs = self.int_coeffs()?;
        if self.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let p = BigInt::from(self.p);
        // Strip whole powers of p first: v_lambda(p) = p - 1.
        let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut k = 0u64;
        let mut g2 = g;
        while (&g2 % &p).is_zero() {
            g2 /= &p;
            k += 1;
        }
        let pk = p.pow(k as u32);
        let mut x = Self { p: self.p, num: coeffs.iter().map(|c| c / &pk).collect(), den: BigInt::one() };
        let mut v = k * (self.p - 1);
        while x.augmentation()? == 0 {
            x = x.div_lambda();
            v += 1;
        }
        Ok(Valuation::Finite(v))
    }

    /// lambda-adic digits in `{0..p-1}` up to (excluding) `lambda^truncation`.
    pub fn lambda_expand(&self, truncation: u64) -> Result<LambdaExpansion> {
        if truncation == 0 {
            return Err(Error::OutOfRange("truncation must be at least 1".into()));
        }
        self.int_coeffs()?;
        let offset = match self.lambda_valuation()? {
            Valuation::Infinite => 0,
            Valuation::Finite(v) => v.min(truncation),
        };
        let mut x = self.clone();
        for _ in 0..offset {
            x = x.div_lambda();
        }
        let mut digits = Vec::with_capacity((truncation - offset) as usize);
        for _ in offset..truncation {
            let d = x.augmentation()?;
            digits.push(d);
            x = (&x - &Self::from_int(self.p, d)).div_lambda();
        }
        Ok(LambdaExpansion { digits, offset, truncation })
    }

    /// Coordinates `w_c = (Tr(zeta^-c x) - Tr(x)) / p`.
    pub fn kappa(&self) -> Vec<BigRational> {
        let tr = self.trace();
        let pr = BigRational::from_integer(BigInt::from(self.p));
        (1..self.p)
            .map(|c| {
                let t = (&Self::zeta_pow(self.p, -(c as i64)) * self).trace();
                (t - &tr) / &pr
            })
            .collect()
    }

    pub fn kappa_inverse(p: u64, w: &[BigRational]) -> Result<Self> {
        Self::from_coeffs(p, w)
    }

    /// Vector of conjugates `(sigma_c x)_c`.
    pub fn nu(&self) -> Vec<CycNum> {
        (1..self.p).map(|c| self.galois_unit(c)).collect()
    }

    /// Coefficients as `"num/den"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(rat_to_string).collect()
    }

    pub fn from_strings(p: u64, s: &[String]) -> Result<Self> {
        let coeffs = s.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(p, &coeffs)
    }

    pub fn context(&self) -> Result<PrimeContext> {
        PrimeContext::new(self.p)
    }
}

pub fn rat_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.check_prime(rhs);
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return CycNum::from_parts(self.p, num, self.den.clone());
        }
        let l = self.den.lcm(&rhs.den);
        let fa = &l / &self.den;
        let fb = &l / &rhs.den;
        let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a * &fa + b * &fb).collect();
        CycNum::from_parts(self.p, num, l)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { p: self.p, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.check_prime(rhs);
        let p = self.p as usize;
        // Indices 1..p-1 multiply into residues mod p; residue 0 is folded back
        // with 1 = -sum zeta^c.
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j + 2) % p;
                acc[k] += a * b;
            }
        }
        let c0 = std::mem::take(&mut acc[0]);
        let num = acc.into_iter().skip(1).map(|c| c - &c0).collect();
        CycNum::from_parts(self.p, num, &self.den * &rhs.den)
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}
