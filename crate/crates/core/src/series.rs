//! Binomial power series `f[theta](T) = prod_d (1 - sigma_d(mu) T)^(m_d / p)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycNum, Valuation};
use crate::embed::{certify_all_abs2, mu_bound, Certified, TrigTable};
use crate::error::{Error, Result};
use crate::group_ring::{minus_member, relative_weight, GroupRingElem};
use crate::padic::{reduce_padic, PadicCyc};
use crate::prime::{binomial, vp_int, PrimeContext};

/// Power series over `Q(zeta_p)` known through `T^degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    p: u64,
    coeffs: Vec<CycNum>,
}

impl TruncSeries {
    pub fn new(p: u64, coeffs: Vec<CycNum>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        Self { p, coeffs }
    }

    pub fn one(p: u64, degree: usize) -> Self {
        let mut c = vec![CycNum::zero(p); degree + 1];
        c[0] = CycNum::one(p);
        Self { p, coeffs: c }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &CycNum {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    /// Product truncated to the smaller of the two degrees.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed primes in series arithmetic");
        let deg = self.degree().min(other.degree());
        let mut out = vec![CycNum::zero(self.p); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(deg + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(deg + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self { p: self.p, coeffs: out }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p, self.degree());
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

    pub fn truncate(&self, degree: usize) -> Self {
        Self { p: self.p, coeffs: self.coeffs[..=degree.min(self.degree())].to_vec() }
    }

    /// Applies `sigma_d` to every coefficient.
    pub fn galois_unit(&self, d: u64) -> Self {
        Self { p: self.p, coeffs: self.coeffs.iter().map(|c| c.galois_unit(d)).collect() }
    }

    /// CSV rows `n,c,coefficient` with exact rationals.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,c,coefficient\n");
        for (n, a) in self.coeffs.iter().enumerate() {
            for (i, r) in a.to_strings().iter().enumerate() {
                s.push_str(&format!("{n},{},{r}\n", i + 1));
            }
        }
        s
    }
}

/// Generalized binomial coefficient `(k/p choose n)`.
pub fn binom_frac(k: &BigInt, p: u64, n: u64) -> BigRational {
    let x = BigRational::new(k.clone(), BigInt::from(p));
    let mut acc = BigRational::one();
    for i in 0..n {
        acc = acc * (&x - BigRational::from_integer(i.into())) / BigRational::from_integer((i + 1).into());
    }
    acc
}

/// `e(n) = n - 1 - floor(n/(p-1))`, clamped at 0.
pub fn e_of(n: usize, p: u64) -> u64 {
    let n = n as i64;
    (n - 1 - n / (p as i64 - 1)).max(0) as u64
}

#[derive(Debug, Clone)]
pub struct SeriesContext {
    pub ctx: PrimeContext,
    pub mu: CycNum,
    /// Certified rational upper bound on `max_c |sigma_c(mu)|`.
    pub m_bound: BigRational,
}

impl SeriesContext {
    pub fn new(p: u64) -> Result<Self> {
        let ctx = PrimeContext::new(p)?;
        Ok(Self { ctx, mu: CycNum::mu(p), m_bound: mu_bound(p) })
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }
}

/// `f[theta]` through `T^deg` via the logarithmic derivative
/// `n a_n = -(1/p) sum_(k=1..n) S_k a_(n-k)`, `S_k = sum_d m_d sigma_d(mu^k)`.
pub fn f_theta(theta: &GroupRingElem, deg: usize, sctx: &SeriesContext) -> TruncSeries {
    let p = sctx.p();
    assert_eq!(theta.p(), p, "mixed primes");
    let support: Vec<(u64, BigInt)> = (1..p)
        .filter(|&d| theta.coeff(d) != 0)
        .map(|d| (d, BigInt::from(theta.coeff(d))))
        .collect();
    let mut s = Vec::with_capacity(deg + 1);
    s.push(CycNum::zero(p));
    let mut mu_k = CycNum::one(p);
    for _ in 1..=deg {
        mu_k = &mu_k * &sctx.mu;
        let mut acc = CycNum::zero(p);
        for (d, m) in &support {
            acc = &acc + &mu_k.galois_unit(*d).scale_int(m);
        }
        s.push(acc);
    }
    let mut a = Vec::with_capacity(deg + 1);
    a.push(CycNum::one(p));
    for n in 1..=deg {
        let mut acc = CycNum::zero(p);
        for k in 1..=n {
            if s[k].is_zero() || a[n - k].is_zero() {
                continue;
            }
            acc = &acc + &(&s[k] * &a[n - k]);
        }
        a.push(acc.div_int(&-BigInt::from(p as u128 * n as u128)));
    }
    TruncSeries::new(p, a)
}

/// Independent route: the product of the single binomial factors.
pub fn f_theta_product(theta: &GroupRingElem, deg: usize, sctx: &SeriesContext) -> TruncSeries {
    let p = sctx.p();
    let mut acc = TruncSeries::one(p, deg);
    for d in 1..p {
        let m = theta.coeff(d);
        if m == 0 {
            continue;
        }
        let neg = -sctx.mu.galois_unit(d);
        let mut pw = CycNum::one(p);
        let mut c = Vec::with_capacity(deg + 1);
        for n in 0..=deg {
            c.push(pw.scale(&binom_frac(&BigInt::from(m), p, n as u64)));
            pw = &pw * &neg;
        }
        acc = acc.mul(&TruncSeries::new(p, c));
    }
    acc
}

/// `prod_d (1 - sigma_d(mu) T)^(e_d)` for nonnegative exponents.
fn polynomial_power(theta: &GroupRingElem, deg: usize, sctx: &SeriesContext) -> TruncSeries {
    let p = sctx.p();
    let mut acc = TruncSeries::one(p, deg);
    for d in 1..p {
        let m = theta.coeff(d);
        assert!(m >= 0);
        if m == 0 {
            continue;
        }
        let mut lin = TruncSeries::one(p, deg);
        if deg >= 1 {
            lin.coeffs[1] = -sctx.mu.galois_unit(d);
        }
        acc = acc.mul(&lin.pow(m as u64));
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PthPowerReport {
    pub degree: usize,
    pub holds: bool,
    pub first_mismatch: Option<usize>,
}

/// Checks `f[theta]^p = (1 - mu T)^theta`, cross-multiplied when `theta` has negative parts:
/// `f^p (1 - mu T)^(theta_-) = (1 - mu T)^(theta_+)`.
pub fn verify_pth_power(theta: &GroupRingElem, deg: usize, sctx: &SeriesContext) -> Result<PthPowerReport> {
    if deg < 1 {
        return Err(Error::OutOfRange("degree must be at least 1".into()));
    }
    let f = f_theta(theta, deg, sctx);
    let (pos, neg) = theta.split_signs();
    let lhs = f.pow(sctx.p()).mul(&polynomial_power(&neg, deg, sctx));
    let rhs = polynomial_power(&pos, deg, sctx);
    let first = (0..=deg).find(|&n| lhs.coeff(n) != rhs.coeff(n));
    Ok(PthPowerReport { degree: deg, holds: first.is_none(), first_mismatch: first })
}

/// `alpha_n = a_n / p^(e(n))`.
#[derive(Debug, Clone)]
pub struct NormalizedCoeffs {
    pub alpha: Vec<CycNum>,
    pub e: Vec<u64>,
}

pub fn normalize(series: &TruncSeries) -> NormalizedCoeffs {
    let p = series.p();
    let e: Vec<u64> = (0..=series.degree()).map(|n| e_of(n, p)).collect();
    let alpha = series
        .coeffs()
        .iter()
        .zip(&e)
        .map(|(a, &k)| a.div_int(&BigInt::from(p).pow(k as u32)))
        .collect();
    NormalizedCoeffs { alpha, e }
}

/// Outcome of one family of checks: `holds` plus the first witness `n` against it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub holds: bool,
    pub witness: Option<usize>,
    pub checked: usize,
}

impl CheckOutcome {
    fn new() -> Self {
        Self { holds: true, witness: None, checked: 0 }
    }

    fn record(&mut self, n: usize, ok: bool) {
        self.checked += 1;
        if !ok && self.holds {
            self.holds = false;
            self.witness = Some(n);
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsReport {
    pub degree: usize,
    /// `a_n` in `Z[zeta]`.
    pub a_integral: CheckOutcome,
    /// `a_n / p^(e(n))` in `Z[zeta]`.
    pub alpha_integral: CheckOutcome,
    /// `|sigma_c(a_n)| <= M^n |binom(-w/p, n)|`, `w = sum |n_c|`.
    pub coefficient_bound: CheckOutcome,
    /// Strong and weak growth bounds with `p^(1-n)` normalization (only for even positive weight).
    pub growth_strong: Option<CheckOutcome>,
    pub growth_weak: Option<CheckOutcome>,
    /// Same growth bounds with the `p^(e(n))` normalization, reported for information.
    pub growth_strong_e_norm: Option<CheckOutcome>,
    pub growth_weak_e_norm: Option<CheckOutcome>,
    pub inconclusive: usize,
}

/// Integrality and archimedean bound checks on `f[theta]` through `deg`.
pub fn integrality_and_bounds(theta: &GroupRingElem, deg: usize, sctx: &SeriesContext) -> Result<BoundsReport> {
    let p = sctx.p();
    let f = f_theta(theta, deg, sctx);
    let norm = normalize(&f);
    let mut a_int = CheckOutcome::new();
    let mut al_int = CheckOutcome::new();
    for n in 0..=deg {
        a_int.record(n, f.coeff(n).is_integral());
        al_int.record(n, norm.alpha[n].is_integral());
    }

    let table = TrigTable::new(p, 160);
    let mut inconclusive = 0;
    let w = BigInt::from(theta.abs_weight());
    let m2 = &sctx.m_bound * &sctx.m_bound;
    let mut coef = CheckOutcome::new();
    let mut m2n = BigRational::one();
    for n in 0..=deg {
        let b = binom_frac(&-&w, p, n as u64);
        let rhs = &m2n * &b * &b;
        let (v, _) = certify_all_abs2(f.coeff(n), &rhs, false, &table);
        if v == Certified::Inconclusive {
            inconclusive += 1;
        }
        coef.record(n, v == Certified::Holds);
        m2n = &m2n * &m2;
    }

    let weight = relative_weight(theta).ok().filter(|k| *k > 0 && k % 2 == 0);
    let (mut gs, mut gw, mut gse, mut gwe) = (None, None, None, None);
    if let Some(k) = weight {
        let l = (k / 2) as u64;
        let mut strong = CheckOutcome::new();
        let mut weak = CheckOutcome::new();
        let mut strong_e = CheckOutcome::new();
        let mut weak_e = CheckOutcome::new();
        for n in 1..=deg {
            let (bs, bw) = growth_bounds(p, n as u64, l);
            let scaled = f.coeff(n).div_int(&BigInt::from(p).pow((n - 1) as u32));
            let (s_ok, w_ok, inc) = growth_check(&scaled, &bs, &bw, &table);
            inconclusive += inc;
            strong.record(n, s_ok);
            weak.record(n, w_ok);
            let (s_ok, w_ok, inc) = growth_check(&norm.alpha[n], &bs, &bw, &table);
            inconclusive += inc;
            strong_e.record(n, s_ok);
            weak_e.record(n, w_ok);
        }
        gs = Some(strong);
        gw = Some(weak);
        gse = Some(strong_e);
        gwe = Some(weak_e);
    }

    Ok(BoundsReport {
        degree: deg,
        a_integral: a_int,
        alpha_integral: al_int,
        coefficient_bound: coef,
        growth_strong: gs,
        growth_weak: gw,
        growth_strong_e_norm: gse,
        growth_weak_e_norm: gwe,
        inconclusive,
    })
}

/// `2 binom(n+l-1, n) (p^2/6)^(n+1)` and `n^l (2p/3)^(2(n+1))`.
pub fn growth_bounds(p: u64, n: u64, l: u64) -> (BigRational, BigRational) {
    let pp = BigInt::from(p * p);
    let strong = BigRational::from_integer(binomial(n + l - 1, n) * 2)
        * BigRational::new(pp.pow((n + 1) as u32), BigInt::from(6).pow((n + 1) as u32));
    let weak = BigRational::from_integer(BigInt::from(n).pow(l as u32))
        * BigRational::new(BigInt::from(2 * p).pow((2 * n + 2) as u32), BigInt::from(3).pow((2 * n + 2) as u32));
    (strong, weak)
}

/// Both coordinates and all embeddings strictly below each bound.
fn growth_check(x: &CycNum, strong: &BigRational, weak: &BigRational, table: &TrigTable) -> (bool, bool, usize) {
    let coord_max = x.coeffs().iter().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero);
    let mut inc = 0;
    let mut one = |b: &BigRational| {
        if coord_max >= *b {
            return false;
        }
        let (v, _) = certify_all_abs2(x, &(b * b), true, table);
        if v == Certified::Inconclusive {
            inc += 1;
        }
        v == Certified::Holds
    };
    let s = one(strong);
    let w = one(weak);
    (s, w, inc)
}

/// `v_lambda` of an element whose denominator is prime to `p`.
pub fn lambda_valuation_unit_den(x: &CycNum) -> Result<Valuation> {
    let d = x.denominator().clone();
    if (&d % BigInt::from(x.p())).is_zero() {
        return Err(Error::DenominatorDivisibleByP(x.p()));
    }
    x.scale_int(&d).lambda_valuation()
}

/// Smallest truncation degree certifying precision `p^K` at a point of lambda-valuation `vt`.
///
/// Uses `v_lambda(a_n) >= n (p - 3)`, valid for every `theta`: each binomial factor
/// contributes at least `-(p-1)(n + v_p(n!)) >= -p n` and `mu^n` contributes `n(2p - 3)`.
pub fn required_degree(p: u64, vt: u64, k: u32) -> Option<usize> {
    let per_term = p - 3 + vt;
    if per_term == 0 {
        return None;
    }
    let target = k as u64 * (p - 1);
    Some(target.div_ceil(per_term).saturating_sub(1) as usize)
}

/// `sum_n a_n T^n mod p^K`; `T` must be `p`-integral.
pub fn padic_eval(series: &TruncSeries, t: &CycNum, k: u32) -> Result<PadicCyc> {
    let p = series.p();
    let vt = match lambda_valuation_unit_den(t)? {
        Valuation::Infinite => return reduce_padic(series.coeff(0), k),
        Valuation::Finite(v) => v,
    };
    let needed = required_degree(p, vt, k).ok_or_else(|| {
        Error::Precondition("evaluation point too large: the series does not converge".into())
    })?;
    if needed > series.degree() {
        return Err(Error::InsufficientDegree { needed, have: series.degree() });
    }
    let tp = reduce_padic(t, k)?;
    let mut acc = PadicCyc::zero(p, k);
    for n in (0..=needed).rev() {
        acc = acc.mul(&tp).add(&reduce_padic(series.coeff(n), k)?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GammaReport {
    pub holds: bool,
    pub precision: u32,
    pub degree_used: usize,
    /// Largest `k <= K` with agreement mod `p^k`.
    pub agreement: u32,
}

/// With `alpha = (x+y)/lambda - y` and `T = (x+y)/(y p^2)`, checks
/// `f[theta](T)^p alpha^(theta_-) = alpha^(theta_+) mod p^K` for `theta in (1-j)I`.
pub fn verify_gamma_identity(
    theta: &GroupRingElem,
    x: &BigInt,
    y: &BigInt,
    k: u32,
    sctx: &SeriesContext,
) -> Result<GammaReport> {
    let p = sctx.p();
    if !minus_member(theta)? {
        return Err(Error::Precondition("theta is not in (1 - j) I".into()));
    }
    if !x.gcd(y).is_one() {
        return Err(Error::Precondition("x and y must be coprime".into()));
    }
    let s = x + y;
    let vs = vp_int(&s, p).ok_or_else(|| Error::Precondition("x + y = 0".into()))?;
    if vs < 2 || vp_int(y, p) != Some(0) {
        return Err(Error::Precondition("need v_p(x+y) >= 2 and p not dividing y".into()));
    }
    let t = CycNum::from_rational(p, &BigRational::new(s.clone(), y * BigInt::from(p * p)));
    let vt = (p - 1) * (vs - 2);
    let deg = required_degree(p, vt, k)
        .ok_or_else(|| Error::Precondition("series does not converge at T".into()))?;
    let f = f_theta(theta, deg, sctx);
    let ft = padic_eval(&f, &t, k)?;
    let alpha = characteristic_alpha(p, x, y)?.alpha;
    let (pos, neg) = theta.split_signs();
    let lhs = ft.pow(p).mul(&neg.act(&alpha, k)?);
    let rhs = pos.act(&alpha, k)?;
    let diff = lhs.sub(&rhs);
    let agreement = if diff.is_zero() { k } else { diff.p_valuation() };
    Ok(GammaReport { holds: diff.is_zero(), precision: k, degree_used: deg, agreement })
}

#[derive(Debug, Clone)]
pub struct AlphaReport {
    pub alpha: CycNum,
    pub integral: bool,
    pub v_p_sum: u64,
    /// `v_lambda(alpha + y)` when `alpha` is integral.
    pub v_lambda_alpha_plus_y: Option<Valuation>,
    /// `(p-1) v_p(x+y) - 1`.
    pub expected: i64,
}

/// `alpha = (x + y)/(1 - zeta) - y`.
pub fn characteristic_alpha(p: u64, x: &BigInt, y: &BigInt) -> Result<AlphaReport> {
    PrimeContext::new(p)?;
    let s = x + y;
    if s.is_zero() {
        return Err(Error::Precondition("x + y = 0 is excluded".into()));
    }
    let v = vp_int(&s, p).unwrap();
    let sl = CycNum::lambda_inv(p).scale_int(&s);
    let alpha = &sl - &CycNum::from_int(p, y.clone());
    let integral = alpha.is_integral();
    let vl = if integral { Some(sl.lambda_valuation()?) } else { None };
    Ok(AlphaReport { alpha, integral, v_p_sum: v, v_lambda_alpha_plus_y: vl, expected: (p as i64 - 1) * v as i64 - 1 })
}

/// Coprime `(x, y)` with `p` not dividing `y` and `v_p(x + y) = v` exactly.
pub fn synthetic_pair(p: u64, v: u32, seed: u64) -> (BigInt, BigInt) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 32) ^ v as u64);
    loop {
        let y: i64 = rng.gen_range(2..10_000) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let u: i64 = rng.gen_range(1..10_000);
        if y.rem_euclid(p as i64) == 0 || u % p as i64 == 0 || u.gcd(&y) != 1 {
            continue;
        }
        let s = BigInt::from(p).pow(v) * BigInt::from(u);
        let y = BigInt::from(y);
        let x = &s - &y;
        if x.is_zero() {
            continue;
        }
        return (x, y);
    }
}

/// Minimum `p`-adic valuation over the coefficients of `a_n`, for reporting.
pub fn coefficient_vp(x: &CycNum) -> Option<i64> {
    let p = x.p();
    let dv = vp_int(x.denominator(), p).unwrap_or(0) as i64;
    x.numerators().iter().filter_map(|c| vp_int(c, p)).min().map(|v| v as i64 - dv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::fueter;

    #[test]
    fn binom_examples() {
        assert_eq!(binom_frac(&BigInt::from(3), 5, 0), BigRational::one());
        assert!(binom_frac(&BigInt::from(5), 5, 2).is_zero());
        assert_eq!(binom_frac(&BigInt::from(1), 5, 2), BigRational::new((-2).into(), 25.into()));
    }

    #[test]
    fn simple_series() {
        let sctx = SeriesContext::new(5).unwrap();
        let t = GroupRingElem::sigma(5, 1).unwrap().scale(5);
        let f = f_theta(&t, 6, &sctx);
        assert_eq!(*f.coeff(0), CycNum::one(5));
        assert_eq!(*f.coeff(1), -sctx.mu.clone());
        assert!((2..=6).all(|n| f.coeff(n).is_zero()));
        let z = f_theta(&GroupRingElem::zero(5), 4, &sctx);
        assert_eq!(z, TruncSeries::one(5, 4));
    }

    #[test]
    fn first_coefficient_closed_form() {
        let sctx = SeriesContext::new(7).unwrap();
        let th = fueter(7, 2).unwrap().add(&fueter(7, 1).unwrap().scale(3));
        let f = f_theta(&th, 2, &sctx);
        let mut want = CycNum::zero(7);
        for c in 1..7u64 {
            let n_c = th.inverse_coeff(c);
            let inv = crate::prime::mod_inv(c, 7);
            want = &want + &sctx.mu.galois_unit(inv).scale_int(&BigInt::from(n_c));
        }
        assert_eq!(*f.coeff(1), want.div_int(&BigInt::from(-7)));
    }

    #[test]
    fn recurrence_matches_product() {
        for p in [5u64, 7] {
            let sctx = SeriesContext::new(p).unwrap();
            let th = fueter(p, 1).unwrap().minus_part().add(&fueter(p, 2).unwrap());
            assert_eq!(f_theta(&th, 12, &sctx), f_theta_product(&th, 12, &sctx));
        }
    }

    #[test]
    fn pth_power_small() {
        let sctx = SeriesContext::new(5).unwrap();
        let psi = fueter(5, 1).unwrap();
        assert!(verify_pth_power(&psi, 25, &sctx).unwrap().holds);
        assert!(verify_pth_power(&psi.minus_part(), 12, &sctx).unwrap().holds);
        assert!(verify_pth_power(&GroupRingElem::zero(5), 3, &sctx).unwrap().holds);
    }

    #[test]
    fn multiplicative_and_equivariant() {
        let sctx = SeriesContext::new(7).unwrap();
        let a = fueter(7, 1).unwrap();
        let b = fueter(7, 3).unwrap().minus_part();
        let deg = 10;
        assert_eq!(f_theta(&a.add(&b), deg, &sctx), f_theta(&a, deg, &sctx).mul(&f_theta(&b, deg, &sctx)));
        for d in 1..7 {
            assert_eq!(f_theta(&a, deg, &sctx).galois_unit(d), f_theta(&a.translate(d), deg, &sctx));
        }
    }

    #[test]
    fn valuation_floor_holds() {
        let p = 7;
        let sctx = SeriesContext::new(p).unwrap();
        let th = fueter(p, 1).unwrap().minus_part().scale(3);
        let f = f_theta(&th, 20, &sctx);
        for n in 0..=20 {
            let v = f.coeff(n).lambda_valuation().unwrap();
            assert!(v.is_at_least(n as u64 * (p - 3)), "n={n} v={v:?}");
        }
    }

    #[test]
    fn alpha_examples() {
        let r = characteristic_alpha(5, &BigInt::from(26), &BigInt::from(-1)).unwrap();
        assert!(r.integral);
        let want = &CycNum::lambda_inv(5).scale_int(&BigInt::from(25)) + &CycNum::one(5);
        assert_eq!(r.alpha, want);
        for v in 1..=3u32 {
            let (x, y) = synthetic_pair(7, v, 1);
            let r = characteristic_alpha(7, &x, &y).unwrap();
            assert_eq!(r.v_lambda_alpha_plus_y, Some(Valuation::Finite(r.expected as u64)));
        }
        let r = characteristic_alpha(5, &BigInt::from(2), &BigInt::from(1)).unwrap();
        assert!(!r.integral);
    }

    #[test]
    fn gamma_identity_synthetic() {
        let p = 5;
        let sctx = SeriesContext::new(p).unwrap();
        let y = BigInt::from(3);
        let x = BigInt::from(5).pow(9) * BigInt::from(7) - &y;
        let th = fueter(p, 1).unwrap().minus_part();
        let r = verify_gamma_identity(&th, &x, &y, 12, &sctx).unwrap();
        assert!(r.holds, "{r:?}");
        let z = verify_gamma_identity(&GroupRingElem::zero(p), &x, &y, 12, &sctx).unwrap();
        assert!(z.holds);
        assert!(verify_gamma_identity(&fueter(p, 1).unwrap(), &x, &y, 12, &sctx).is_err());
    }

    #[test]
    fn eval_basics() {
        let p = 5;
        let sctx = SeriesContext::new(p).unwrap();
        let f = f_theta(&fueter(p, 1).unwrap(), 10, &sctx);
        assert_eq!(padic_eval(&f, &CycNum::zero(p), 6).unwrap(), PadicCyc::one(p, 6));
        let t = CycNum::from_int(p, 1);
        assert!(matches!(padic_eval(&f, &t, 40), Err(Error::InsufficientDegree { .. })));
    }
}
