//! The auxiliary combination `delta`.
//!
//! A family of orbits is built from weight-`w` combinations of Fueter
//! elements, the rank profile of its coefficient rows fixes two jump indices,
//! and a small integer solution of the constrained system gives covariant
//! coefficients `ell(theta)`. The resulting series
//! `delta(T) = sum_theta Tr(ell(theta) conj(f[theta](T)))` vanishes below the
//! upper jump and has the verified nonzero value `p^e H` there.
//!
//! Conventions: both jump indices are taken from `S`, the lower against `n`
//! and the upper against `m - n`; all jump rows below the upper index are
//! constrained, plus the upper row with the twist added before it is scaled
//! to integers. `delta` is summed over orbit representatives; summing over
//! the whole family multiplies it by `p - 1`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::group_ring::{fueter, GroupRingElem};
use crate::linalg::{family_rows, rank_profile, Echelon, FamilyRows, OrbitFamily, RankProfile, RowVector};
use crate::prime::{binomial, vp_int, PrimeContext};
use crate::series::{e_of, f_theta, f_theta_product, SeriesContext, TruncSeries};
use crate::siegel::{candidates, inf_norm, l1_bound_check, IntMatrix};

pub const CONVENTION: &str = "R_lo=min S>=n, R_hi=min S>=m-n, twist at R_hi";

/// The family `J` together with the bookkeeping of its construction.
#[derive(Debug, Clone)]
pub struct JFamily {
    pub weight: u64,
    /// `C(w+q-1, q-1)`.
    pub j0_count: BigInt,
    pub j0_enumerated: usize,
    /// Elements of `J_0` whose orbit was kept, aligned with the family reps.
    pub thetas: Vec<GroupRingElem>,
    /// Orbit representatives `(1 - j) theta`.
    pub family: OrbitFamily,
    pub dropped_duplicate: usize,
    pub dropped_degenerate: usize,
    pub truncated: bool,
}

/// Compositions of `w` into `q` nonnegative parts, lexicographic.
fn compositions(w: u64, q: usize) -> Vec<Vec<u64>> {
    if q == 1 {
        return vec![vec![w]];
    }
    let mut out = Vec::new();
    for c in 0..=w {
        for mut rest in compositions(w - c, q - 1) {
            rest.insert(0, c);
            out.push(rest);
        }
    }
    out
}

/// `J_0 = {sum c_j psi_j : c_j >= 0, sum c_j = w}` closed under `G`, one
/// representative `(1 - j) theta` per orbit. Zero, non-free or vanishing mod
/// `p` orbits are dropped; `cap` limits the number of orbits kept.
pub fn build_j(p: u64, w: u64, cap: Option<usize>) -> Result<JFamily> {
    let ctx = PrimeContext::new(p)?;
    if w < 1 {
        return Err(Error::OutOfRange("weight must be at least 1".into()));
    }
    let q = ctx.q() as usize;
    let psi: Vec<GroupRingElem> = (1..=q as u64).map(|n| fueter(p, n)).collect::<Result<_>>()?;
    let comps = compositions(w, q);
    let j0_count = binomial(w + q as u64 - 1, q as u64 - 1);
    let mut thetas = Vec::new();
    let mut reps: Vec<GroupRingElem> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let (mut dup, mut degenerate, mut truncated) = (0, 0, false);
    for c in &comps {
        let theta = c
            .iter()
            .zip(&psi)
            .fold(GroupRingElem::zero(p), |acc, (&k, y)| acc.add(&y.scale(k as i64)));
        let r = theta.minus_part();
        let free = r.orbit_size() == (p - 1) as usize;
        if r.is_zero() || !free || r.coeffs().iter().all(|x| x % p as i64 == 0) {
            degenerate += 1;
            continue;
        }
        if !seen.insert(r.orbit_canonical()) {
            dup += 1;
            continue;
        }
        if cap.is_some_and(|k| reps.len() >= k) {
            truncated = true;
            break;
        }
        thetas.push(theta);
        reps.push(r);
    }
    Ok(JFamily {
        weight: w,
        j0_count,
        j0_enumerated: comps.len(),
        thetas,
        family: OrbitFamily::new(p, reps)?,
        dropped_duplicate: dup,
        dropped_degenerate: degenerate,
        truncated,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub w: u64,
    pub n_orbits: usize,
    pub n_vectors: usize,
    pub m_prime: usize,
    pub n_prime: usize,
    pub m: usize,
    pub n: usize,
    pub r_lo: usize,
    pub r_hi: usize,
    pub deg: usize,
    pub convention: String,
}

impl ConstructionParams {
    /// `m' = floor(N'/2)`, `n' = floor(N'/p)`, `m = (p-1) m'`, `n = (p-1) n'`.
    pub fn new(p: u64, w: u64, n_orbits: usize, deg: usize) -> Result<Self> {
        let m_prime = n_orbits / 2;
        let n_prime = n_orbits / p as usize;
        let (m, n) = ((p as usize - 1) * m_prime, (p as usize - 1) * n_prime);
        if n >= m {
            return Err(Error::Precondition(format!("need n < m, got n = {n}, m = {m} from {n_orbits} orbits")));
        }
        if m > deg {
            return Err(Error::InsufficientDegree { needed: m, have: deg });
        }
        Ok(Self {
            w,
            n_orbits,
            n_vectors: (p as usize - 1) * n_orbits,
            m_prime,
            n_prime,
            m,
            n,
            r_lo: 0,
            r_hi: 0,
            deg,
            convention: CONVENTION.into(),
        })
    }
}

/// `(R_lo, R_hi) = (min S >= n, min S >= m - n)`.
pub fn resolve_jumps(profile: &RankProfile, n: usize, m: usize) -> Result<(usize, usize)> {
    let next = |t: usize| {
        profile
            .s
            .iter()
            .copied()
            .find(|&s| s >= t)
            .ok_or(Error::InsufficientDegree { needed: t + 1, have: profile.d.len().saturating_sub(1) })
    };
    Ok((next(n)?, next(m - n)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistChoice {
    /// Index of the representative carrying the twist.
    pub orbit: usize,
    pub psi: GroupRingElem,
    pub j: u64,
    #[serde(skip)]
    pub phi: Vec<BigRational>,
}

fn unit_block(p: u64, n_orbits: usize, orbit: usize, j: u64) -> Vec<BigRational> {
    let b = p as usize - 1;
    let mut v = vec![BigRational::zero(); b * n_orbits];
    v[orbit * b + j as usize - 1] = BigRational::one();
    v
}

/// All twists `e_(psi, j)` outside `span(v_0..v_(R_hi))`, in scan order
/// (representatives in family order, then `j = 1..p-1`).
pub fn choose_twist(rows: &[RowVector], r_hi: usize, family: &OrbitFamily) -> Vec<TwistChoice> {
    let p = family.p();
    let mut e = Echelon::new();
    rows[..=r_hi].iter().for_each(|r| {
        e.insert(r);
    });
    let mut out = Vec::new();
    for (i, psi) in family.reps().iter().enumerate() {
        for j in 1..p {
            let phi = unit_block(p, family.orbit_count(), i, j);
            if !e.contains(&RowVector { entries: phi.clone() }) {
                out.push(TwistChoice { orbit: i, psi: psi.clone(), j, phi });
            }
        }
    }
    out
}

/// `ell = sum_c w_c (zeta^c - 1)`, so that `Tr(ell conj(x)) = p <w, kappa(x)>`.
fn ell_from_block(p: u64, w: &[BigInt]) -> CycNum {
    let s: BigInt = w.iter().sum();
    let coeffs: Vec<BigInt> = w.iter().map(|x| x + &s).collect();
    CycNum::from_int_coeffs(p, &coeffs).expect("length p-1")
}

/// `sum_i Tr(ell_i conj(a_n(theta_i)))` for every `n`.
fn pair_series(ells: &[CycNum], series: &[TruncSeries]) -> Vec<BigRational> {
    let deg = series[0].degree();
    (0..=deg)
        .into_par_iter()
        .map(|n| {
            ells.iter()
                .zip(series)
                .map(|(l, f)| (l * &f.coeff(n).conj()).trace())
                .fold(BigRational::zero(), |a, b| a + b)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaChecks {
    pub orthogonality: bool,
    pub covariance: bool,
    pub reverify: bool,
    pub twist_outside_span: bool,
    pub siegel_bound: bool,
    pub l1_bound: bool,
}

impl DeltaChecks {
    pub fn all(&self) -> bool {
        self.orthogonality
            && self.covariance
            && self.reverify
            && self.twist_outside_span
            && self.siegel_bound
            && self.l1_bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveInfo {
    pub d_bar: usize,
    pub cols: usize,
    /// Decimal digits of the largest entry of `A`.
    pub max_entry_digits: usize,
    #[serde(with = "crate::strnum::big")]
    pub inf_norm: BigInt,
    #[serde(with = "crate::strnum::big")]
    pub bound_floor: BigInt,
    /// Twist/solution pairs rejected because `H` vanished.
    pub retries: usize,
}

/// Smallest `v_p(T)` for which `1 + sum_(i > R) (delta_i/delta_R) T^(i-R)` is a
/// `lambda`-adic unit, tail beyond the truncation included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitCheck {
    pub holds: bool,
    pub min_vp_t: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaCertificate {
    pub p: u64,
    pub w: u64,
    pub seed: u64,
    pub params: ConstructionParams,
    pub profile: RankProfile,
    pub twist: TwistChoice,
    /// Representative (as `sigma_c` coefficients) to `ell` in the basis `zeta^1..zeta^(p-1)`.
    pub ell: BTreeMap<String, Vec<String>>,
    #[serde(rename = "H", with = "crate::strnum::big")]
    pub h: BigInt,
    pub vanish_order: usize,
    /// `delta_(R_hi) = p^e(R_hi) H`.
    pub e_r_hi: u64,
    pub leading_unit_check: UnitCheck,
    pub delta_series: Vec<String>,
    pub solve: SolveInfo,
    pub checks: DeltaChecks,
    pub timings: BTreeMap<String, u128>,
}

impl DeltaCertificate {
    /// Everything except timings, for determinism comparisons.
    pub fn fingerprint(&self) -> Result<String> {
        let mut c = self.clone();
        c.timings.clear();
        Ok(serde_json::to_string(&c)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn vp_rational_int(x: &BigRational, p: u64) -> Option<u64> {
    debug_assert!(x.is_integer());
    vp_int(&x.to_integer(), p)
}

fn unit_check(p: u64, delta: &[BigRational], r: usize) -> UnitCheck {
    let lead = (p - 1) * vp_rational_int(&delta[r], p).expect("nonzero leading coefficient");
    let deg = delta.len() - 1;
    let pm1 = p - 1;
    for v in 1..=64u64 {
        let body = (r + 1..=deg).all(|i| match vp_rational_int(&delta[i], p) {
            None => true,
            Some(k) => pm1 * k + pm1 * v * (i - r) as u64 > lead,
        });
        // v_lambda(delta_i) >= i(p-3) + 1 - (p-2) past the truncation
        let i = (deg + 1) as u64;
        let tail = (i * (p - 3) + 1) as i64 - (p as i64 - 2) + (pm1 * v * (i - r as u64)) as i64 > lead as i64;
        if body && tail {
            return UnitCheck { holds: true, min_vp_t: Some(v) };
        }
    }
    UnitCheck { holds: false, min_vp_t: None }
}

/// Builds `A`, solves it, and verifies the resulting `delta`.
pub fn assemble_and_solve(
    jf: &JFamily,
    fr: &FamilyRows,
    profile: &RankProfile,
    params: &ConstructionParams,
    twists: &[TwistChoice],
    sctx: &SeriesContext,
) -> Result<(DeltaCertificate, IntMatrix)> {
    let p = sctx.p();
    let family = &jf.family;
    let big_n = family.vector_count();
    let b = p as usize - 1;
    let r = params.r_hi;
    let constrained: Vec<usize> = profile.s.iter().copied().filter(|&s| s < r).collect();
    let mut retries = 0;
    let mut fallback = None;
    for tw in twists {
        let mut data: Vec<Vec<BigInt>> = constrained.iter().map(|&s| fr.rows[s].clear_denominators().0).collect();
        let twisted: Vec<BigRational> = fr.rows[r].entries.iter().zip(&tw.phi).map(|(x, y)| x + y).collect();
        data.push(RowVector { entries: twisted }.clear_denominators().0);
        let a = IntMatrix::new(data, big_n)?;
        let cands = candidates(&a)?;
        let col = tw.orbit * b + tw.j as usize - 1;
        for v in &cands.vectors {
            if v[col].is_zero() {
                retries += 1;
                continue;
            }
            let within = cands.bound.admits(&inf_norm(v));
            if within {
                return finish(jf, fr, params, profile, tw, v.clone(), &a, &cands.bound.floor, retries, sctx);
            }
            if fallback.is_none() {
                fallback = Some((tw.clone(), v.clone(), a.clone(), cands.bound.floor.clone()));
            }
            break;
        }
    }
    match fallback {
        Some((tw, v, a, floor)) => finish(jf, fr, params, profile, &tw, v, &a, &floor, retries, sctx),
        None => Err(Error::Verification("every twist and kernel candidate gave H = 0".into())),
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    jf: &JFamily,
    fr: &FamilyRows,
    params: &ConstructionParams,
    profile: &RankProfile,
    tw: &TwistChoice,
    w: Vec<BigInt>,
    a: &IntMatrix,
    floor: &BigInt,
    retries: usize,
    sctx: &SeriesContext,
) -> Result<(DeltaCertificate, IntMatrix)> {
    let p = sctx.p();
    let b = p as usize - 1;
    let r = params.r_hi;
    let reps = jf.family.reps();
    let ells: Vec<CycNum> = w.chunks(b).map(|blk| ell_from_block(p, blk)).collect();
    let zj = CycNum::zeta_pow(p, -(tw.j as i64));
    let h_rat = -(&zj * &ells[tw.orbit]).trace();
    let h = h_rat.to_integer();
    let pb = BigInt::from(p);

    let delta = pair_series(&ells, &fr.series);
    let vanish_order = delta.iter().position(|x| !x.is_zero()).unwrap_or(delta.len());
    let e_r = e_of(r, p);

    // orthogonality, straight from the normalized coefficients
    let alpha_pair = |n: usize| -> BigRational {
        let scale = BigRational::from_integer(pb.pow(e_of(n, p) as u32));
        &delta[n] / scale
    };
    let constrained = profile.s.iter().copied().filter(|&s| s < r);
    let twist_term = (&ells[tw.orbit] * &CycNum::zeta_pow(p, tw.j as i64).conj()).trace();
    let orthogonality = constrained.clone().all(|s| alpha_pair(s).is_zero()) && (alpha_pair(r) + twist_term).is_zero();

    // independent path: product-form series, no reuse of A or the rows
    let series_b: Vec<TruncSeries> = reps.par_iter().map(|t| f_theta_product(t, params.deg, sctx)).collect();
    let delta_b = pair_series(&ells, &series_b);
    let vo_b = delta_b.iter().position(|x| !x.is_zero());
    let expected = BigRational::from_integer(pb.pow(e_r as u32) * &h);
    let reverify = delta_b == delta && vo_b == Some(r) && delta_b[r] == expected && !h.is_zero();

    // covariance: ell(sigma_d theta) = sigma_d ell(theta) leaves delta unchanged
    let covariance = (2..p).into_par_iter().all(|d| {
        let moved: Vec<TruncSeries> = reps.iter().map(|t| f_theta(&t.translate(d), params.deg, sctx)).collect();
        let ells_d: Vec<CycNum> = ells.iter().map(|l| l.galois_unit(d)).collect();
        pair_series(&ells_d, &moved) == delta
    });

    let ell_map = reps.iter().zip(&ells).map(|(t, l)| (t.to_text(), l.to_strings())).collect();
    let norm = inf_norm(&w);
    let checks = DeltaChecks {
        orthogonality,
        covariance,
        reverify,
        twist_outside_span: true,
        siegel_bound: &norm <= floor,
        l1_bound: l1_bound_check(a, &w),
    };
    let leading_unit_check = if vanish_order < delta.len() {
        unit_check(p, &delta, vanish_order)
    } else {
        UnitCheck { holds: false, min_vp_t: None }
    };
    let cert = DeltaCertificate {
        p,
        w: jf.weight,
        seed: 0,
        params: params.clone(),
        profile: profile.clone(),
        twist: tw.clone(),
        ell: ell_map,
        h,
        vanish_order,
        e_r_hi: e_r,
        leading_unit_check,
        delta_series: delta.iter().map(|x| x.to_integer().to_string()).collect(),
        solve: SolveInfo {
            d_bar: a.rows(),
            cols: a.cols(),
            max_entry_digits: a.max_entry().to_string().len(),
            inf_norm: norm,
            bound_floor: floor.clone(),
            retries,
        },
        checks,
        timings: BTreeMap::new(),
    };
    Ok((cert, a.clone()))
}

/// The whole pipeline for weight `w` and truncation `deg`.
///
/// The construction is deterministic; `seed` is recorded so certificates
/// from seeded runs can be compared.
pub fn run_delta(p: u64, w: u64, deg: usize, seed: u64) -> Result<(DeltaCertificate, IntMatrix)> {
    let t0 = Instant::now();
    let sctx = SeriesContext::new(p)?;
    let jf = build_j(p, w, None)?;
    let mut params = ConstructionParams::new(p, w, jf.family.orbit_count(), deg)?;
    let t1 = Instant::now();
    let fr = family_rows(&jf.family, deg, &sctx);
    let profile = rank_profile(&fr.rows);
    let (r_lo, r_hi) = resolve_jumps(&profile, params.n, params.m)?;
    params.r_lo = r_lo;
    params.r_hi = r_hi;
    if profile.d[r_hi] >= params.n_vectors {
        return Err(Error::Precondition(format!("rows up to R_hi = {r_hi} already span everything")));
    }
    let t2 = Instant::now();
    let twists = choose_twist(&fr.rows, r_hi, &jf.family);
    let (mut cert, a) = assemble_and_solve(&jf, &fr, &profile, &params, &twists, &sctx)?;
    cert.seed = seed;
    let t3 = Instant::now();
    cert.timings.insert("series_ms".into(), (t2 - t1).as_millis());
    cert.timings.insert("solve_verify_ms".into(), (t3 - t2).as_millis());
    cert.timings.insert("total_ms".into(), (t3 - t0).as_millis());
    Ok((cert, a))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryBoundReport {
    pub full_weight: bool,
    pub max_entry_digits: usize,
    /// `max |A_ij| <= (N/2)^q (2p/3)^(N+2)`.
    pub entries_within: bool,
    /// First entry violating the bound, as `(row, col)`.
    pub witness: Option<(usize, usize)>,
    /// `(N/2)^q (2p/3)^(N+2) <= p^N / ((2p+1)^2 N)`.
    pub chain_to_m: bool,
}

pub fn entry_bound_report(a: &IntMatrix, p: u64, w: u64) -> EntryBoundReport {
    let q = (p - 1) / 2;
    let n = a.cols() as u64;
    let nb = BigInt::from(n);
    let two_p = BigInt::from(2 * p);
    // |x| 2^q 3^(N+2) <= N^q (2p)^(N+2)
    let lhs_scale = BigInt::from(2).pow(q as u32) * BigInt::from(3).pow((n + 2) as u32);
    let rhs = nb.pow(q as u32) * two_p.pow((n + 2) as u32);
    let mut witness = None;
    'outer: for (i, row) in a.data().iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.abs() * &lhs_scale > rhs {
                witness = Some((i, j));
                break 'outer;
            }
        }
    }
    // N^q (2p)^(N+2) (2p+1)^2 N <= p^N 2^q 3^(N+2)
    let chain_lhs = &rhs * BigInt::from(2 * p + 1).pow(2) * &nb;
    let chain_rhs = BigInt::from(p).pow(n as u32) * &lhs_scale;
    EntryBoundReport {
        full_weight: w == p - 1,
        max_entry_digits: a.max_entry().to_string().len(),
        entries_within: witness.is_none(),
        witness,
        chain_to_m: chain_lhs <= chain_rhs,
    }
}
