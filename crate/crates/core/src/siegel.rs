//! Small nonzero integer solutions of `A w = 0`.
//!
//! The kernel lattice is computed by unimodular column operations, reduced
//! with an exact integral LLL, and the candidate with the smallest max-norm
//! is certified against the box bound `|w|_inf <= (N M)^(d/(N-d))`. When
//! reduction misses the bound a Fincke-Pohst enumeration over the reduced
//! basis takes over.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(data: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::OutOfRange(format!("every row must have {cols} entries")));
        }
        Ok(Self { rows: data.len(), cols, data })
    }

    pub fn from_i64(data: &[Vec<i64>]) -> Result<Self> {
        let cols = data.first().map_or(0, |r| r.len());
        Self::new(data.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn data(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    /// Largest absolute entry.
    pub fn max_entry(&self) -> BigInt {
        self.data.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn mul_vec(&self, w: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(w.len(), self.cols);
        self.data.iter().map(|r| r.iter().zip(w).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn annihilates(&self, w: &[BigInt]) -> bool {
        self.mul_vec(w).iter().all(Zero::is_zero)
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// First nonzero entry positive.
fn normalize_sign(v: &mut [BigInt]) {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
}

pub fn inf_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Basis of the integer right kernel `{w in Z^N : A w = 0}`.
///
/// Column operations are unimodular, so the trailing columns of the
/// transform span the full kernel lattice, not just a sublattice.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.cols;
    // columns stored as vectors: b[j] is column j of A U, u[j] column j of U
    let mut b: Vec<Vec<BigInt>> = (0..n).map(|j| a.data.iter().map(|r| r[j].clone()).collect()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut k = 0;
    for i in 0..a.rows {
        if k == n {
            break;
        }
        for j in k + 1..n {
            if b[j][i].is_zero() {
                continue;
            }
            if b[k][i].is_zero() {
                b.swap(k, j);
                u.swap(k, j);
                continue;
            }
            let x = b[k][i].clone();
            let y = b[j][i].clone();
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (xg, yg) = (&x / &g, &y / &g);
            combine(&mut b, k, j, &s, &t, &xg, &yg);
            combine(&mut u, k, j, &s, &t, &xg, &yg);
        }
        if !b[k][i].is_zero() {
            k += 1;
        }
    }
    let mut out: Vec<Vec<BigInt>> = u.drain(k..).collect();
    for v in &mut out {
        let g = content(v);
        if !g.is_zero() && !g.is_one() {
            v.iter_mut().for_each(|x| *x = &*x / &g);
        }
        normalize_sign(v);
    }
    out
}

/// `(c_k, c_j) <- (s c_k + t c_j, -yg c_k + xg c_j)`, determinant one.
fn combine(m: &mut [Vec<BigInt>], k: usize, j: usize, s: &BigInt, t: &BigInt, xg: &BigInt, yg: &BigInt) {
    let ck = std::mem::take(&mut m[k]);
    let cj = std::mem::take(&mut m[j]);
    m[k] = ck.iter().zip(&cj).map(|(a, b)| s * a + t * b).collect();
    m[j] = ck.iter().zip(&cj).map(|(a, b)| xg * b - yg * a).collect();
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Round `a / b` to the nearest integer (`b > 0`).
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * BigInt::from(2) + b).div_floor(&(b * BigInt::from(2)))
}

/// Integral LLL (Cohen, Algorithm 2.6.7) with `delta = num/den`; input vectors
/// must be linearly independent.
pub fn lll(basis: &[Vec<BigInt>], num: i64, den: i64) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    if n <= 1 {
        return basis.to_vec();
    }
    let mut b: Vec<Vec<BigInt>> = basis.to_vec();
    // 1-based bookkeeping: d[0] = 1, lam[k][j] for j < k
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::one();
    d[1] = dot(&b[0], &b[0]);
    let (num, den) = (BigInt::from(num), BigInt::from(den));
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k - 1], &b[j - 1]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "lll: dependent input vectors");
                    d[k] = u;
                }
            }
        }
        loop {
            red(&mut b, &mut lam, &d, k, k - 1);
            let lhs = &den * &d[k] * &d[k - 2];
            let rhs = &num * &d[k - 1] * &d[k - 1] - &den * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                swap(&mut b, &mut lam, &mut d, k, kmax);
                k = (k - 1).max(2);
                continue;
            }
            for l in (1..=k - 2).rev() {
                red(&mut b, &mut lam, &d, k, l);
            }
            k += 1;
            break;
        }
    }
    b
}

fn red(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    if (&lam[k][l] * BigInt::from(2)).abs() <= d[l] {
        return;
    }
    let q = round_div(&lam[k][l], &d[l]);
    let bl = b[l - 1].clone();
    for (x, y) in b[k - 1].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    lam[k][l] = &lam[k][l] - &q * &d[l];
    for i in 1..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    b.swap(k - 1, k - 2);
    for j in 1..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
        lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
    }
    d[k - 1] = bb;
}

/// The box bound in exact form: `|w|_inf <= bound` iff `|w|_inf^exp_den <= base^exp_num`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiegelBound {
    /// `N * M`, with `M` at least one.
    #[serde(with = "crate::strnum::big")]
    pub base: BigInt,
    pub exp_num: u64,
    pub exp_den: u64,
    /// Largest integer satisfying the bound.
    #[serde(with = "crate::strnum::big")]
    pub floor: BigInt,
}

impl SiegelBound {
    pub fn new(rows: usize, cols: usize, max_entry: &BigInt) -> Self {
        let m = if max_entry.is_zero() { BigInt::one() } else { max_entry.clone() };
        let base = BigInt::from(cols) * m;
        let (exp_num, exp_den) = (rows as u64, (cols - rows) as u64);
        let floor = base.pow(exp_num as u32).nth_root(exp_den as u32);
        Self { base, exp_num, exp_den, floor }
    }

    pub fn admits(&self, norm: &BigInt) -> bool {
        norm.pow(self.exp_den as u32) <= self.base.pow(self.exp_num as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallSolution {
    #[serde(with = "crate::strnum::big_vec")]
    pub w: Vec<BigInt>,
    #[serde(with = "crate::strnum::big")]
    pub inf_norm: BigInt,
    pub certified_bound: SiegelBound,
    /// Whether the enumeration fallback produced `w`.
    pub enumerated: bool,
}

/// Reduced kernel vectors sorted by max-norm, plus the box bound.
#[derive(Debug, Clone)]
pub struct Candidates {
    pub vectors: Vec<Vec<BigInt>>,
    pub bound: SiegelBound,
}

/// Nonzero kernel vectors of `A` ordered by max-norm: the LLL-reduced basis and
/// the sums and differences of its pairs.
pub fn candidates(a: &IntMatrix) -> Result<Candidates> {
    if a.rows >= a.cols {
        return Err(Error::Precondition(format!("need fewer rows than columns, got {}x{}", a.rows, a.cols)));
    }
    let bound = SiegelBound::new(a.rows, a.cols, &a.max_entry());
    let ker = kernel_basis(a);
    let red = lll(&ker, 99, 100);
    let mut vectors: Vec<Vec<BigInt>> = red.clone();
    for i in 0..red.len() {
        for j in i + 1..red.len() {
            vectors.push(red[i].iter().zip(&red[j]).map(|(x, y)| x + y).collect());
            vectors.push(red[i].iter().zip(&red[j]).map(|(x, y)| x - y).collect());
        }
    }
    for v in &mut vectors {
        normalize_sign(v);
    }
    vectors.sort_by(|x, y| inf_norm(x).cmp(&inf_norm(y)).then_with(|| y.cmp(x)));
    vectors.dedup();
    Ok(Candidates { vectors, bound })
}

const NODE_BUDGET: u64 = 2_000_000;

/// Smallest certified solution; see the module docs for the strategy.
pub fn siegel_solve(a: &IntMatrix) -> Result<SmallSolution> {
    let c = candidates(a)?;
    let best = c.vectors.first().cloned().ok_or_else(|| Error::Verification("empty kernel".into()))?;
    let norm = inf_norm(&best);
    debug_assert!(a.annihilates(&best));
    if c.bound.admits(&norm) {
        return Ok(SmallSolution { w: best, inf_norm: norm, certified_bound: c.bound, enumerated: false });
    }
    let basis = lll(&kernel_basis(a), 99, 100);
    match enumerate_min(&basis, &c.bound.floor, NODE_BUDGET) {
        Some(mut w) if a.annihilates(&w) => {
            normalize_sign(&mut w);
            let n = inf_norm(&w);
            Ok(SmallSolution { w, inf_norm: n, certified_bound: c.bound, enumerated: true })
        }
        _ => Err(Error::SiegelBoundUnreachable { best: norm.to_string(), bound: c.bound.floor.to_string() }),
    }
}

/// Fincke-Pohst search for a nonzero lattice vector with max-norm at most `box_`,
/// scanning the Euclidean ball of radius `sqrt(dim) * box_`.
fn enumerate_min(basis: &[Vec<BigInt>], box_: &BigInt, budget: u64) -> Option<Vec<BigInt>> {
    let k = basis.len();
    if k == 0 {
        return None;
    }
    let dim = basis[0].len();
    let r2 = BigRational::from_integer(box_ * box_ * BigInt::from(dim));
    // Gram-Schmidt in exact rationals
    let to_q = |v: &[BigInt]| v.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>();
    let qdot = |a: &[BigRational], b: &[BigRational]| a.iter().zip(b).map(|(x, y)| x * y).sum::<BigRational>();
    let mut star: Vec<Vec<BigRational>> = Vec::new();
    let mut bsq: Vec<BigRational> = Vec::new();
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        let bi = to_q(&basis[i]);
        let mut v = bi.clone();
        for j in 0..i {
            mu[i][j] = qdot(&bi, &star[j]) / &bsq[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        bsq.push(qdot(&v, &v));
        star.push(v);
    }
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    let mut x = vec![BigInt::zero(); k];
    let mut nodes = 0u64;
    search(k, &mu, &bsq, &r2, &BigRational::zero(), &mut x, basis, box_, &mut best, &mut nodes, budget);
    best.map(|(_, v)| v)
}

#[allow(clippy::too_many_arguments)]
fn search(
    level: usize,
    mu: &[Vec<BigRational>],
    bsq: &[BigRational],
    r2: &BigRational,
    partial: &BigRational,
    x: &mut [BigInt],
    basis: &[Vec<BigInt>],
    box_: &BigInt,
    best: &mut Option<(BigInt, Vec<BigInt>)>,
    nodes: &mut u64,
    budget: u64,
) {
    if level == 0 {
        if x.iter().all(Zero::is_zero) {
            return;
        }
        let dim = basis[0].len();
        let mut v = vec![BigInt::zero(); dim];
        for (xi, b) in x.iter().zip(basis) {
            for (t, y) in v.iter_mut().zip(b) {
                *t += xi * y;
            }
        }
        let n = inf_norm(&v);
        if &n <= box_ && best.as_ref().is_none_or(|(m, _)| n < *m) {
            *best = Some((n, v));
        }
        return;
    }
    let i = level - 1;
    let mut c = BigRational::zero();
    for j in level..x.len() {
        c -= &mu[j][i] * BigRational::from_integer(x[j].clone());
    }
    let center = c.round().to_integer();
    // zig-zag outward from the rounded center until both sides leave the ball
    let mut step = 0i64;
    let (mut up_done, mut down_done) = (false, false);
    while !(up_done && down_done) {
        for dir in [1i64, -1] {
            if (dir == 1 && up_done) || (dir == -1 && down_done) || (step == 0 && dir == -1) {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return;
            }
            let xi = &center + BigInt::from(dir * step);
            let diff = BigRational::from_integer(xi.clone()) - &c;
            let part = partial + &diff * &diff * &bsq[i];
            if &part > r2 {
                // farther values on this side only grow
                if diff.is_positive() || (diff.is_zero() && dir == 1) {
                    up_done = true;
                } else {
                    down_done = true;
                }
                if step == 0 {
                    up_done = true;
                    down_done = true;
                }
                continue;
            }
            x[i] = xi;
            search(i, mu, bsq, r2, &part, x, basis, box_, best, nodes, budget);
        }
        step += 1;
    }
    x[i] = BigInt::zero();
}

/// The downstream max-entry bound `|w|_inf < N M` (with `M` at least one).
pub fn l1_bound_check(a: &IntMatrix, w: &[BigInt]) -> bool {
    let m = a.max_entry().max(BigInt::one());
    inf_norm(w) < BigInt::from(a.cols) * m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| a.into()).collect()
    }

    #[test]
    fn kernel_of_padded_identity() {
        let a = IntMatrix::from_i64(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let mut k = kernel_basis(&a);
        k.sort();
        assert_eq!(k, vec![v(&[0, 0, 0, 1]), v(&[0, 0, 1, 0])]);
    }

    #[test]
    fn all_ones_row() {
        let a = IntMatrix::from_i64(&[vec![1, 1, 1, 1, 1]]).unwrap();
        let s = siegel_solve(&a).unwrap();
        assert!(a.annihilates(&s.w));
        assert_eq!(s.inf_norm, BigInt::one());
        assert!(l1_bound_check(&a, &s.w));
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(1, 4);
        let s = siegel_solve(&a).unwrap();
        assert_eq!(s.inf_norm, BigInt::one());
        assert!(l1_bound_check(&a, &v(&[1, 0, 0, 0])));
        assert!(!l1_bound_check(&a, &v(&[40, 0, 0, 0])));
    }

    #[test]
    fn lll_reduces_a_skewed_basis() {
        let b = vec![v(&[1, 0, 0]), v(&[1000, 1, 0]), v(&[2000, 3000, 1])];
        let r = lll(&b, 99, 100);
        assert!(r.iter().all(|x| inf_norm(x) <= BigInt::from(1)));
    }

    #[test]
    fn enumeration_finds_the_short_vector() {
        let b = vec![v(&[1, 1, 0]), v(&[0, 3, 7])];
        let w = enumerate_min(&b, &BigInt::from(5), 10_000).unwrap();
        assert_eq!(inf_norm(&w), BigInt::one());
    }

    #[test]
    fn rejects_square() {
        let a = IntMatrix::from_i64(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(siegel_solve(&a).is_err());
    }
}
