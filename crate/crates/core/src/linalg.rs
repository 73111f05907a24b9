//! Coefficient vectors of orbit families and their exact rank profiles.
//!
//! For an orbit representative `theta` the coefficient `a_n(theta)` is written
//! as `sum_c u_n^(c) zeta^c`; the row `v_n` concatenates these coordinates
//! (of the normalized `alpha_n`) over all representatives.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::series::{f_theta, normalize, SeriesContext, TruncSeries};
use crate::siegel::{kernel_basis, IntMatrix};

/// Coordinates `u_n^(c)` of every coefficient of a series.
#[derive(Debug, Clone)]
pub struct UVectors {
    /// `kappa(a_n)`.
    pub raw: Vec<Vec<BigRational>>,
    /// `kappa(a_n / p^e(n))`.
    pub normalized: Vec<Vec<BigRational>>,
}

pub fn u_vectors(series: &TruncSeries) -> UVectors {
    let norm = normalize(series);
    UVectors {
        raw: series.coeffs().iter().map(CycNum::kappa).collect(),
        normalized: norm.alpha.iter().map(CycNum::kappa).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VecmapReport {
    /// `a_n = sum_c u_n^(c) zeta^c`.
    pub reconstruction: bool,
    /// Trace formula agrees with the basis readout.
    pub trace_formula: bool,
    /// `a_n(sigma_d theta) = sigma_d(a_n(theta))` for every `d`.
    pub galois: bool,
}

impl VecmapReport {
    pub fn all(&self) -> bool {
        self.reconstruction && self.trace_formula && self.galois
    }
}

/// Both directions of the orbit/vector correspondence, checked exactly.
pub fn verify_vecmap(theta: &GroupRingElem, deg: usize, sctx: &SeriesContext) -> Result<VecmapReport> {
    let p = sctx.p();
    let f = f_theta(theta, deg, sctx);
    let u = u_vectors(&f);
    let mut reconstruction = true;
    let mut trace_formula = true;
    for (a, w) in f.coeffs().iter().zip(&u.raw) {
        reconstruction &= CycNum::kappa_inverse(p, w)? == *a;
        trace_formula &= a.coeffs() == *w;
    }
    let galois = (2..p).into_par_iter().all(|d| {
        let g = f_theta(&theta.translate(d), deg, sctx);
        g.coeffs().iter().zip(f.coeffs()).all(|(x, y)| *x == y.galois_unit(d))
    });
    Ok(VecmapReport { reconstruction, trace_formula, galois })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowVector {
    pub entries: Vec<BigRational>,
}

impl RowVector {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Integer multiple by the least common denominator, and that multiplier.
    pub fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let l = self.entries.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let v = self.entries.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
        (v, l)
    }
}

/// Pairwise distinct, free `G`-orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitFamily {
    p: u64,
    reps: Vec<GroupRingElem>,
}

impl OrbitFamily {
    pub fn new(p: u64, reps: Vec<GroupRingElem>) -> Result<Self> {
        let mut seen: Vec<GroupRingElem> = Vec::new();
        for r in &reps {
            if r.p() != p {
                return Err(Error::PrimeMismatch(p, r.p()));
            }
            if r.coeffs().iter().all(|c| c % p as i64 == 0) {
                return Err(Error::Precondition(format!("{r} vanishes modulo p")));
            }
            if r.orbit_size() != (p - 1) as usize {
                return Err(Error::Precondition(format!("orbit of {r} is not free")));
            }
            let c = r.orbit_canonical();
            if seen.contains(&c) {
                return Err(Error::Precondition(format!("{r} repeats an orbit already in the family")));
            }
            seen.push(c);
        }
        Ok(Self { p, reps })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reps(&self) -> &[GroupRingElem] {
        &self.reps
    }

    /// `N'`.
    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    /// `N = (p-1) N'`.
    pub fn vector_count(&self) -> usize {
        (self.p as usize - 1) * self.reps.len()
    }
}

/// Series of every representative and the rows `v_0..v_deg`.
#[derive(Debug, Clone)]
pub struct FamilyRows {
    pub series: Vec<TruncSeries>,
    pub rows: Vec<RowVector>,
}

pub fn family_rows(family: &OrbitFamily, deg: usize, sctx: &SeriesContext) -> FamilyRows {
    let series: Vec<TruncSeries> = family.reps.par_iter().map(|r| f_theta(r, deg, sctx)).collect();
    let blocks: Vec<UVectors> = series.par_iter().map(u_vectors).collect();
    let rows = (0..=deg)
        .map(|n| RowVector { entries: blocks.iter().flat_map(|b| b.normalized[n].iter().cloned()).collect() })
        .collect();
    FamilyRows { series, rows }
}

/// Integer echelon basis grown one row at a time; every stored row vanishes
/// at the pivots of the rows stored before it.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.rows.iter().map(|(_, r)| r)
    }

    fn reduce(&self, mut r: Vec<BigInt>) -> Vec<BigInt> {
        for (pc, b) in &self.rows {
            if r[*pc].is_zero() {
                continue;
            }
            let g = b[*pc].gcd(&r[*pc]);
            let (fb, fr) = (&b[*pc] / &g, &r[*pc] / &g);
            for (x, y) in r.iter_mut().zip(b) {
                *x = &fb * &*x - &fr * y;
            }
            primitive(&mut r);
        }
        r
    }

    /// Adds the row; `true` when the span grew.
    pub fn insert(&mut self, row: &RowVector) -> bool {
        let r = self.reduce(row.clear_denominators().0);
        match r.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                self.rows.push((pc, r));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, row: &RowVector) -> bool {
        self.reduce(row.clear_denominators().0).iter().all(Zero::is_zero)
    }
}

fn primitive(r: &mut [BigInt]) {
    let g = r.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        r.iter_mut().for_each(|x| *x = &*x / &g);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    /// `d[m] = dim span{v_0..v_m}`.
    pub d: Vec<usize>,
    /// Indices where `d` strictly increases (with `d(-1) = 0`).
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub d_inf: usize,
}

pub fn rank_profile(rows: &[RowVector]) -> RankProfile {
    let mut e = Echelon::new();
    let mut d = Vec::with_capacity(rows.len());
    let mut s = Vec::new();
    for (m, r) in rows.iter().enumerate() {
        if e.insert(r) {
            s.push(m);
        }
        d.push(e.rank());
    }
    RankProfile { d_inf: e.rank(), d, s }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Independence {
    FullRank {
        n: usize,
        /// First `m` with `d(m) = N`.
        stabilization_degree: usize,
    },
    Deficient {
        n: usize,
        rank: usize,
        /// Nonzero `w` with `v_m . w = 0` for every computed row.
        #[serde(with = "crate::strnum::big_vec")]
        kernel_witness: Vec<BigInt>,
    },
}

/// Rank of the family's `N` coefficient streams through degree `deg`.
pub fn independence_check(family: &OrbitFamily, deg: usize, sctx: &SeriesContext) -> Result<(Independence, RankProfile)> {
    if family.p != sctx.p() {
        return Err(Error::PrimeMismatch(family.p, sctx.p()));
    }
    let n = family.vector_count();
    let rows = family_rows(family, deg, sctx).rows;
    let profile = rank_profile(&rows);
    let verdict = match profile.d.iter().position(|&x| x == n) {
        Some(m) => Independence::FullRank { n, stabilization_degree: m },
        None => {
            let mut e = Echelon::new();
            rows.iter().for_each(|r| {
                e.insert(r);
            });
            let basis: Vec<Vec<BigInt>> = e.basis().cloned().collect();
            let a = IntMatrix::new(basis, n)?;
            let w = kernel_basis(&a).into_iter().next().ok_or_else(|| Error::Verification("empty kernel".into()))?;
            Independence::Deficient { n, rank: profile.d_inf, kernel_witness: w }
        }
    };
    Ok((verdict, profile))
}
