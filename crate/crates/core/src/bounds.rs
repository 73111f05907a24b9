//! Exact verification of the counting estimate and the inequality chain.
//!
//! Every quantity is a product of integer powers `prod b_i^(e_i)`. Small
//! products are compared by exact big-integer arithmetic; when the exponents
//! are astronomically large (they involve `N`, itself a hundred-digit number
//! at `p = 257`), both sides are compared through certified fixed-point
//! brackets of `sum e_i ln b_i`. Equal products are detected symbolically.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime::{binomial, PrimeContext};

/// `prod base^exp` with positive bases; bases and exponents as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowProduct(pub Vec<(String, String)>);

impl PowProduct {
    pub fn new(terms: &[(BigInt, BigInt)]) -> Self {
        Self(terms.iter().map(|(b, e)| (b.to_string(), e.to_string())).collect())
    }

    pub fn int(x: &BigInt) -> Self {
        Self::new(&[(x.clone(), BigInt::one())])
    }

    fn parse(&self) -> Result<Vec<(BigInt, BigInt)>> {
        self.0
            .iter()
            .map(|(b, e)| {
                let b: BigInt = b.parse().map_err(|_| Error::Parse(format!("bad base {b:?}")))?;
                let e: BigInt = e.parse().map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
                if b.is_negative() || (b.is_zero() && e.is_negative()) {
                    return Err(Error::Parse(format!("invalid factor {b}^{e}")));
                }
                Ok((b, e))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">")]
    Gt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Ceiling on the bit size handled by exact evaluation.
const EXACT_BITS: u64 = 1 << 22;
const GUARD: u32 = 64;
const MAX_EXTRA: u32 = 8192;

/// `lhs / rhs` as merged factors with nonzero exponents.
fn quotient(lhs: &[(BigInt, BigInt)], rhs: &[(BigInt, BigInt)]) -> BTreeMap<BigInt, BigInt> {
    let mut m: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    for (b, e) in lhs {
        *m.entry(b.clone()).or_default() += e;
    }
    for (b, e) in rhs {
        *m.entry(b.clone()).or_default() -= e;
    }
    m.retain(|b, e| !e.is_zero() && !b.is_one());
    m
}

fn exact_size(f: &BTreeMap<BigInt, BigInt>) -> Option<u64> {
    let mut bits = 0u64;
    for (b, e) in f {
        let e = e.abs().to_u64()?;
        bits = bits.checked_add(e.checked_mul(b.bits().max(1))?)?;
    }
    Some(bits)
}

/// Sign of `log(lhs/rhs)`, `None` when undecided.
pub fn compare(lhs: &PowProduct, rhs: &PowProduct) -> Result<Option<Ordering>> {
    let (l, r) = (lhs.parse()?, rhs.parse()?);
    let zero_l = l.iter().any(|(b, e)| b.is_zero() && e.is_positive());
    let zero_r = r.iter().any(|(b, e)| b.is_zero() && e.is_positive());
    if zero_l || zero_r {
        return Ok(Some(if zero_l && zero_r {
            Ordering::Equal
        } else if zero_l {
            Ordering::Less
        } else {
            Ordering::Greater
        }));
    }
    let f = quotient(&l, &r);
    if f.is_empty() {
        return Ok(Some(Ordering::Equal));
    }
    if exact_size(&f).is_some_and(|s| s <= EXACT_BITS) {
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        for (b, e) in &f {
            let k = e.abs().to_u32().expect("size checked");
            if e.is_positive() {
                num *= b.pow(k);
            } else {
                den *= b.pow(k);
            }
        }
        return Ok(Some(num.cmp(&den)));
    }
    let emax = f.values().map(|e| e.bits()).max().unwrap_or(0) as u32;
    let mut w = emax + GUARD;
    while w <= emax + MAX_EXTRA {
        let (lo, hi) = log_form_bracket(&f, w);
        if lo.is_positive() {
            return Ok(Some(Ordering::Greater));
        }
        if hi.is_negative() {
            return Ok(Some(Ordering::Less));
        }
        w *= 2;
    }
    Ok(None)
}

/// Bracket of `sum e ln b`, scaled by `2^w`.
fn log_form_bracket(f: &BTreeMap<BigInt, BigInt>, w: u32) -> (BigInt, BigInt) {
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for (b, e) in f {
        let (l, h) = ln_bracket(b, w);
        if e.is_positive() {
            lo += e * l;
            hi += e * h;
        } else {
            lo += e * h;
            hi += e * l;
        }
    }
    (lo, hi)
}

/// `sum_(i>=0) z^(2i+1)/(2i+1)` in fixed point (`z` scaled by `2^w`), with term count.
fn atanh_fixed(z: &BigInt, w: u32) -> (BigInt, u64) {
    let z2 = (z * z) >> w;
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power = (&power * &z2) >> w;
        k += 1;
    }
    (sum, k)
}

/// Bracket of `ln b` scaled by `2^w`, `b >= 1`.
pub fn ln_bracket(b: &BigInt, w: u32) -> (BigInt, BigInt) {
    assert!(b.is_positive());
    let wp = w + GUARD;
    let one = BigInt::one() << wp;
    let k = b.bits() - 1;
    // m = b / 2^k in [1, 2), truncated
    let m = if k as u32 >= wp { b >> (k as u32 - wp) } else { b << (wp - k as u32) };
    let z = ((&m - &one) << wp) / (&m + &one);
    let (lnm_half, t1) = atanh_fixed(&z, wp);
    let (ln2_half, t2) = atanh_fixed(&((&one) / BigInt::from(3)), wp);
    let v = (lnm_half << 1) + (ln2_half << 1) * BigInt::from(k);
    // truncation of m, z and each series term, scaled up by k for ln 2
    let err = BigInt::from((t1 + 4) * 2 + (t2 + 4) * 2 * (k + 1) + 4);
    let lo = (&v - &err) >> GUARD;
    let hi = ((&v + &err) >> GUARD) + 1;
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    pub lhs: PowProduct,
    pub rhs: PowProduct,
    pub relation: Relation,
    pub verdict: Verdict,
    pub mandatory: bool,
}

impl Step {
    pub fn evaluate(name: &str, lhs: PowProduct, relation: Relation, rhs: PowProduct, mandatory: bool) -> Result<Self> {
        let verdict = decide(&lhs, relation, &rhs)?;
        Ok(Self { name: name.into(), lhs, rhs, relation, verdict, mandatory })
    }

    /// Recomputes the verdict from the stored integers.
    pub fn recheck(&self) -> Result<bool> {
        Ok(decide(&self.lhs, self.relation, &self.rhs)? == self.verdict)
    }
}

fn decide(lhs: &PowProduct, relation: Relation, rhs: &PowProduct) -> Result<Verdict> {
    let want = match relation {
        Relation::Lt => Ordering::Less,
        Relation::Eq => Ordering::Equal,
        Relation::Gt => Ordering::Greater,
    };
    Ok(match compare(lhs, rhs)? {
        Some(o) if o == want => Verdict::Pass,
        Some(_) => Verdict::Fail,
        None => Verdict::Inconclusive,
    })
}

fn bi(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

fn pp(terms: &[(BigInt, BigInt)]) -> PowProduct {
    PowProduct::new(terms)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    /// `C(3q-1, q-1) = C(3q, q) / 3`.
    pub identity: Step,
    /// `C(3q-1, q-1) > (27/4)^q / (9 sqrt q)`, squared and cross-multiplied.
    pub stirling: Step,
    /// `C(3q-1, q-1) > (p-1) (5/2)^(p-1)`.
    pub end_to_end: Step,
    /// `(27/4)^q / (9 sqrt q) > (p-1) (5/2)^(p-1)`.
    pub intermediate: Step,
}

impl CountingReport {
    pub fn steps(&self) -> [&Step; 4] {
        [&self.identity, &self.stirling, &self.end_to_end, &self.intermediate]
    }
}

pub fn verify_counting(p: u64) -> Result<CountingReport> {
    let ctx = PrimeContext::new(p)?;
    if p < 5 {
        return Err(Error::OutOfRange(format!("counting needs p >= 5, got {p}")));
    }
    let q = ctx.q();
    let c = binomial(3 * q - 1, q - 1);
    let one = bi(1);
    let identity = Step::evaluate(
        "binomial_identity",
        PowProduct::int(&c),
        Relation::Eq,
        pp(&[(binomial(3 * q, q), one.clone()), (bi(3), bi(-1))]),
        true,
    )?;
    let stirling = Step::evaluate(
        "stirling_lower_bound",
        pp(&[(c.clone(), bi(2)), (bi(9), bi(2)), (bi(4), bi(2 * q)), (bi(q), one.clone())]),
        Relation::Gt,
        pp(&[(bi(27), bi(2 * q))]),
        true,
    )?;
    let end_to_end = Step::evaluate(
        "count_exceeds_target",
        pp(&[(bi(2), bi(p - 1)), (c, one.clone())]),
        Relation::Gt,
        pp(&[(bi(p - 1), one.clone()), (bi(5), bi(p - 1))]),
        true,
    )?;
    let intermediate = Step::evaluate(
        "stirling_exceeds_target",
        pp(&[(bi(27), bi(2 * q)), (bi(2), bi(2 * (p - 1)))]),
        Relation::Gt,
        pp(&[(bi(81), one.clone()), (bi(q), one.clone()), (bi(4), bi(2 * q)), (bi(p - 1), bi(2)), (bi(5), bi(2 * (p - 1)))]),
        false,
    )?;
    Ok(CountingReport { identity, stirling, end_to_end, intermediate })
}

/// Parameters of the chain with `N` replaced by its lower bound, rounded up
/// to a multiple of `p - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainParams {
    #[serde(with = "crate::strnum::big")]
    pub n_lower: BigInt,
    #[serde(with = "crate::strnum::big")]
    pub n: BigInt,
    #[serde(with = "crate::strnum::big")]
    pub n_prime: BigInt,
    #[serde(with = "crate::strnum::big")]
    pub m: BigInt,
    #[serde(with = "crate::strnum::big")]
    pub n_small: BigInt,
    /// Largest possible number of constrained rows, `m - n + 1`.
    #[serde(with = "crate::strnum::big")]
    pub d_bar: BigInt,
    #[serde(with = "crate::strnum::dec")]
    pub vp_t: u64,
}

impl ChainParams {
    pub fn new(p: u64) -> Result<Self> {
        let ctx = PrimeContext::new(p)?;
        let q = ctx.q();
        let n_lower = binomial(3 * q - 1, q - 1);
        let pm1 = bi(p - 1);
        let n_prime = n_lower.div_ceil(&pm1);
        let n = &pm1 * &n_prime;
        let m = &pm1 * (&n_prime / bi(2));
        let n_small = &pm1 * (&n_prime / bi(p));
        let d_bar = &m - &n_small + 1;
        Ok(Self { n_lower, n, n_prime, m, n_small, d_bar, vp_t: 2 * p - 3 })
    }
}

/// The steps of the final argument, each an exact comparison of power products.
pub fn verify_chain(p: u64) -> Result<(ChainParams, Vec<Step>)> {
    let cp = ChainParams::new(p)?;
    let q = bi((p - 1) / 2);
    let (pb, one, two) = (bi(p), bi(1), bi(2));
    let n = cp.n.clone();
    let d = cp.d_bar.clone();
    let tp1 = bi(2 * p + 1);
    let two_pow = bi(2).pow((p - 1) as u32);
    let five_pow = bi(5).pow((p - 1) as u32);
    let gap = &cp.m - &cp.n_small;
    let mut steps = Vec::new();
    let mut push = |name: &str, l: PowProduct, r: Relation, rr: PowProduct, mandatory: bool| -> Result<()> {
        steps.push(Step::evaluate(name, l, r, rr, mandatory)?);
        Ok(())
    };
    // (N/2)^q (2p/3)^(N+2) < p^N / ((2p+1)^2 N) = M
    push(
        "entry_bound_below_M",
        pp(&[(n.clone(), q.clone()), (two.clone(), -&q), (bi(2 * p), &n + bi(2)), (bi(3), -(&n + bi(2)))]),
        Relation::Lt,
        pp(&[(pb.clone(), n.clone()), (tp1.clone(), bi(-2)), (n.clone(), bi(-1))]),
        true,
    )?;
    push("rows_below_half", PowProduct::int(&(&d * 2)), Relation::Lt, PowProduct::int(&n), true)?;
    // (N M)^(d/(N-d)) < N M, with N M = p^N / (2p+1)^2
    push(
        "siegel_box_below_NM",
        pp(&[(pb.clone(), &n * &d), (tp1.clone(), &d * -2)]),
        Relation::Lt,
        pp(&[(pb.clone(), &n * (&n - &d)), (tp1.clone(), (&n - &d) * -2)]),
        true,
    )?;
    let nm = pp(&[(n.clone(), one.clone()), (pb.clone(), n.clone()), (tp1.clone(), bi(-2)), (n.clone(), bi(-1))]);
    let l = pp(&[(pb.clone(), n.clone()), (tp1.clone(), bi(-2))]);
    push("NM_equals_L", nm.clone(), Relation::Eq, l.clone(), true)?;
    push("NM_strictly_below_L", nm, Relation::Lt, l, false)?;
    // H < L (p-1) < p^((m-n) v_p(T))
    push(
        "H_below_T_power",
        pp(&[(pb.clone(), n.clone()), (tp1.clone(), bi(-2)), (bi(p - 1), one.clone())]),
        Relation::Lt,
        pp(&[(pb.clone(), &gap * bi(cp.vp_t))]),
        true,
    )?;
    push(
        "delta_lower_exponent",
        pp(&[(pb.clone(), &gap * bi(cp.vp_t))]),
        Relation::Gt,
        pp(&[(pb.clone(), &n * bi(p as i64 - 4))]),
        true,
    )?;
    // p^(N(p-4)) / (L N) > p^(N(p-5)), as written; reduces to (2p+1)^2 > N
    push(
        "s_bound_as_written",
        pp(&[(pb.clone(), &n * bi(p as i64 - 5)), (tp1.clone(), two.clone()), (n.clone(), bi(-1))]),
        Relation::Gt,
        pp(&[(pb.clone(), &n * bi(p as i64 - 5))]),
        false,
    )?;
    // N(p-5)/(2(p-1)) = N/2 - N/q, cross-multiplied
    push(
        "exponent_identity",
        PowProduct::int(&(&n * bi(p as i64 - 5) * &q * 2)),
        Relation::Eq,
        PowProduct::int(&(&n * (&q - 2) * bi(2 * (p - 1)))),
        true,
    )?;
    // (p^(N(p-4)) / (L N))^(2^(p-1)) > p^(2 (p-1) 5^(p-1)), skipping the failing intermediate
    push(
        "s_bound_direct",
        pp(&[
            (pb.clone(), &n * bi(p as i64 - 5) * &two_pow),
            (tp1.clone(), &two_pow * 2),
            (n.clone(), -&two_pow),
        ]),
        Relation::Gt,
        pp(&[(pb.clone(), bi(2 * (p - 1)) * &five_pow)]),
        true,
    )?;
    push(
        "final_exponent",
        PowProduct::int(&(&n * bi(p as i64 - 5) * &two_pow)),
        Relation::Gt,
        PowProduct::int(&(bi(2 * (p - 1)) * &five_pow)),
        true,
    )?;
    push(
        "orbit_count_exceeds_target",
        pp(&[(cp.n_prime.clone(), one.clone()), (bi(2), bi(p - 1))]),
        Relation::Gt,
        pp(&[(bi(5), bi(p - 1))]),
        true,
    )?;
    Ok((cp, steps))
}

/// `|s^p| = |x^p + y^p| / |x + y| <= max(|x|, |y|, |z|)^p` on seeded triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WrapupReport {
    #[serde(with = "crate::strnum::dec")]
    pub seed: u64,
    #[serde(with = "crate::strnum::dec")]
    pub triples: usize,
    pub holds: bool,
}

pub fn power_wrapup(p: u64, seed: u64, triples: usize) -> Result<WrapupReport> {
    PrimeContext::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut holds = true;
    let e = p as u32;
    let mut done = 0;
    while done < triples {
        let x = BigInt::from(rng.gen_range(-10_000i64..=10_000));
        let y = BigInt::from(rng.gen_range(-10_000i64..=10_000));
        let z = BigInt::from(rng.gen_range(-10_000i64..=10_000));
        let s = &x + &y;
        if s.is_zero() {
            continue;
        }
        let (sp, r) = (x.pow(e) + y.pow(e)).div_rem(&s);
        debug_assert!(r.is_zero());
        let mx = [x.abs(), y.abs(), z.abs()].into_iter().max().expect("three values");
        holds &= sp.abs() <= mx.pow(e);
        done += 1;
    }
    Ok(WrapupReport { seed, triples, holds })
}
