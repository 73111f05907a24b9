//! The integral group ring `Z[G]`, `G = Gal(Q(zeta_p)/Q)`.
//!
//! An element `sum_d m_d sigma_d` is stored by its coefficients on `sigma_d`,
//! `d = 1..p-1`. The customary notation `theta = sum_c n_c sigma_c^-1`
//! means `m_d = n_(d^-1)`; helpers below take care of that inversion.

use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::padic::{reduce_padic, PadicCyc};
use crate::prime::{mod_inv, mod_pow, PrimeContext};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupRingElem {
    p: u64,
    coeffs: Vec<i64>,
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElem(p={}, {})", self.p, self.to_text())
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl GroupRingElem {
    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: vec![0; (p - 1) as usize] }
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() as u64 != p - 1 {
            return Err(Error::OutOfRange(format!("expected {} coefficients, got {}", p - 1, coeffs.len())));
        }
        Ok(Self { p, coeffs })
    }

    /// The group element `sigma_c`.
    pub fn sigma(p: u64, c: i64) -> Result<Self> {
        let ctx = PrimeContext::new(p)?;
        let c = ctx.unit(c)?;
        let mut x = Self::zero(p);
        x.coeffs[(c - 1) as usize] = 1;
        Ok(x)
    }

    pub fn one(p: u64) -> Self {
        let mut x = Self::zero(p);
        x.coeffs[0] = 1;
        x
    }

    /// Complex conjugation `j = sigma_(p-1)`.
    pub fn jay(p: u64) -> Self {
        let mut x = Self::zero(p);
        x.coeffs[(p - 2) as usize] = 1;
        x
    }

    /// The norm element `sum_c sigma_c`.
    pub fn norm_element(p: u64) -> Self {
        Self { p, coeffs: vec![1; (p - 1) as usize] }
    }

    /// `p * vartheta = sum_c c sigma_c^-1`.
    pub fn stickelberger_scaled(p: u64) -> Self {
        let mut x = Self::zero(p);
        for c in 1..p {
            x.coeffs[(mod_inv(c, p) - 1) as usize] = c as i64;
        }
        x
    }

    /// Builds `sum_c n_c sigma_c^-1` from the customary `n_c`.
    pub fn from_inverse_coeffs(p: u64, n: &[i64]) -> Result<Self> {
        if n.len() as u64 != p - 1 {
            return Err(Error::OutOfRange(format!("expected {} coefficients, got {}", p - 1, n.len())));
        }
        let mut x = Self::zero(p);
        for c in 1..p {
            x.coeffs[(mod_inv(c, p) - 1) as usize] += n[(c - 1) as usize];
        }
        Ok(x)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Coefficients on `sigma_1 .. sigma_(p-1)`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient on `sigma_d`.
    pub fn coeff(&self, d: u64) -> i64 {
        self.coeffs[(d - 1) as usize]
    }

    /// The customary `n_c`: coefficient on `sigma_c^-1`.
    pub fn inverse_coeff(&self, c: u64) -> i64 {
        self.coeffs[(mod_inv(c, self.p) - 1) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixed primes in group ring arithmetic");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Self { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Self { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { p: self.p, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { p: self.p, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// Ring product, `sigma_a sigma_b = sigma_ab`.
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.p;
        let mut out = vec![0i64; (p - 1) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = ((i as u64 + 1) * (j as u64 + 1)) % p;
                out[(k - 1) as usize] += a * b;
            }
        }
        Self { p, coeffs: out }
    }

    /// `sigma_d * self`: relabels `sigma_c` as `sigma_(dc)`.
    pub fn translate(&self, d: u64) -> Self {
        let p = self.p;
        let mut out = vec![0i64; (p - 1) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let k = ((i as u64 + 1) * d) % p;
            out[(k - 1) as usize] = a;
        }
        Self { p, coeffs: out }
    }

    pub fn apply_jay(&self) -> Self {
        self.translate(self.p - 1)
    }

    /// `(1 - j) self`.
    pub fn minus_part(&self) -> Self {
        self.sub(&self.apply_jay())
    }

    /// `(1 + j) self`.
    pub fn plus_part(&self) -> Self {
        self.add(&self.apply_jay())
    }

    /// Positive and negative parts, `self = pos - neg`.
    pub fn split_signs(&self) -> (Self, Self) {
        let pos = self.coeffs.iter().map(|&a| a.max(0)).collect();
        let neg = self.coeffs.iter().map(|&a| (-a).max(0)).collect();
        (Self { p: self.p, coeffs: pos }, Self { p: self.p, coeffs: neg })
    }

    /// Sum of absolute values of the coefficients.
    pub fn abs_weight(&self) -> u64 {
        self.coeffs.iter().map(|a| a.unsigned_abs()).sum()
    }

    /// Lexicographically smallest coefficient array in the orbit `G self`.
    pub fn orbit_canonical(&self) -> Self {
        (1..self.p).map(|d| self.translate(d)).min().expect("nonempty group")
    }

    /// Number of distinct elements in `G self`.
    pub fn orbit_size(&self) -> usize {
        let mut v: Vec<Self> = (1..self.p).map(|d| self.translate(d)).collect();
        v.sort();
        v.dedup();
        v.len()
    }

    pub fn same_orbit(&self, o: &Self) -> bool {
        self.orbit_canonical() == o.orbit_canonical()
    }

    /// Comma separated `sigma_c`-coefficients.
    pub fn to_text(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parses either the comma form `n_1,..,n_(p-1)` or a small expression
    /// language: integers, `psiN`, `sigmaC`, `j`, `N` (norm element),
    /// `theta` (`p vartheta`), with `+ - *` and parentheses.
    pub fn parse(p: u64, s: &str) -> Result<Self> {
        PrimeContext::new(p)?;
        let t = s.trim();
        if t.contains(',') {
            let coeffs = t
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient {x:?}"))))
                .collect::<Result<Vec<_>>>()?;
            return Self::from_coeffs(p, coeffs);
        }
        let mut parser = ExprParser { p, s: t.as_bytes(), pos: 0 };
        let e = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.s.len() {
            return Err(Error::Parse(format!("trailing input at byte {} of {t:?}", parser.pos)));
        }
        Ok(e)
    }

    /// `prod_d sigma_d(x)^(m_d)` modulo `p^K`.
    pub fn act(&self, x: &CycNum, k: u32) -> Result<PadicCyc> {
        assert_eq!(self.p, x.p(), "mixed primes in group ring action");
        let base = reduce_padic(x, k)?;
        let mut acc = PadicCyc::one(self.p, k);
        let mut inv: Option<PadicCyc> = None;
        for (i, &m) in self.coeffs.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let d = i as u64 + 1;
            let factor = if m > 0 {
                base.galois_unit(d).pow(m as u64)
            } else {
                if inv.is_none() {
                    inv = Some(base.inverse()?);
                }
                inv.as_ref().unwrap().galois_unit(d).pow(m.unsigned_abs())
            };
            acc = acc.mul(&factor);
        }
        Ok(acc)
    }
}

struct ExprParser<'a> {
    p: u64,
    s: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn expr(&mut self) -> Result<GroupRingElem> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GroupRingElem> {
        let mut acc = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.atom()?);
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn atom(&mut self) -> Result<GroupRingElem> {
        let p = self.p;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(GroupRingElem::one(p).scale(self.number()?)),
            Some(_) => {
                let rest = &self.s[self.pos..];
                if rest.starts_with(b"psi") {
                    self.pos += 3;
                    let n = self.number()?;
                    fueter(p, n as u64)
                } else if rest.starts_with(b"sigma") {
                    self.pos += 5;
                    let c = self.number()?;
                    GroupRingElem::sigma(p, c)
                } else if rest.starts_with(b"theta") {
                    self.pos += 5;
                    Ok(GroupRingElem::stickelberger_scaled(p))
                } else if rest.starts_with(b"j") {
                    self.pos += 1;
                    Ok(GroupRingElem::jay(p))
                } else if rest.starts_with(b"N") {
                    self.pos += 1;
                    Ok(GroupRingElem::norm_element(p))
                } else {
                    Err(self.err("unknown symbol"))
                }
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Fueter element `psi_n = (1 + sigma_n - sigma_(n+1)) vartheta`,
/// `= sum_c (floor((n+1)c/p) - floor(nc/p)) sigma_c^-1`.
pub fn fueter(p: u64, n: u64) -> Result<GroupRingElem> {
    let ctx = PrimeContext::new(p)?;
    if n < 1 || n > ctx.q() {
        return Err(Error::OutOfRange(format!("Fueter index {n} outside 1..={}", ctx.q())));
    }
    Ok(fueter_unchecked(p, n))
}

pub(crate) fn fueter_unchecked(p: u64, n: u64) -> GroupRingElem {
    let mut x = GroupRingElem::zero(p);
    for c in 1..p {
        let k = ((n + 1) * c / p - n * c / p) as i64;
        x.coeffs[(mod_inv(c, p) - 1) as usize] += k;
    }
    x
}

/// `(n - sigma_n) vartheta = sum_c floor(nc/p) sigma_c^-1`, integral for every `n`.
pub fn stickelberger_generator(p: u64, n: u64) -> Result<GroupRingElem> {
    PrimeContext::new(p)?;
    if n.is_multiple_of(p) {
        return Err(Error::OutOfRange(format!("{n} is divisible by {p}")));
    }
    let th = GroupRingElem::stickelberger_scaled(p);
    let lhs = GroupRingElem::one(p).scale(n as i64).sub(&GroupRingElem::sigma(p, n as i64)?).mul(&th);
    if lhs.coeffs.iter().any(|c| c % p as i64 != 0) {
        return Err(Error::Verification(format!("(n - sigma_n) vartheta not integral for n = {n}")));
    }
    Ok(GroupRingElem { p, coeffs: lhs.coeffs.iter().map(|c| c / p as i64).collect() })
}

/// `n_c + n_(p-c)` when it is independent of `c`.
pub fn relative_weight(theta: &GroupRingElem) -> Result<i64> {
    let p = theta.p;
    let w0 = theta.coeff(1) + theta.coeff(p - 1);
    let bad: Vec<u64> = (1..p).filter(|&c| theta.coeff(c) + theta.coeff(p - c) != w0).collect();
    if bad.is_empty() {
        Ok(w0)
    } else {
        let mut all = vec![1];
        all.extend(bad);
        Err(Error::NonConstantWeight(all))
    }
}

/// Coordinates over the Z-basis `psi_1..psi_q, N` of the Stickelberger ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FueterDecomposition {
    pub nu: Vec<i64>,
    /// Coefficient on the norm element `N = psi_(p-1)`.
    pub norm: i64,
}

impl FueterDecomposition {
    pub fn rebuild(&self, p: u64) -> GroupRingElem {
        let mut acc = GroupRingElem::norm_element(p).scale(self.norm);
        for (i, &v) in self.nu.iter().enumerate() {
            acc = acc.add(&fueter_unchecked(p, i as u64 + 1).scale(v));
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member(FueterDecomposition),
    /// Rational coordinates exist but are not all integers.
    NonIntegral { coords: Vec<BigRational> },
    /// Not even in the rational span of the ideal; `residual_row` is an
    /// equation the coordinates cannot satisfy.
    OutsideSpan { residual_row: usize },
}

/// Decides `theta in I = vartheta Z[G] cap Z[G]` by an exact solve against the Fueter basis.
pub fn stickelberger_member(theta: &GroupRingElem) -> Result<Membership> {
    let p = theta.p;
    let q = ((p - 1) / 2) as usize;
    let mut cols: Vec<GroupRingElem> = (1..=q as u64).map(|n| fueter_unchecked(p, n)).collect();
    cols.push(GroupRingElem::norm_element(p));
    let rows = (p - 1) as usize;
    let ncols = q + 1;
    // Augmented matrix over Q, Gauss-Jordan.
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> =
                cols.iter().map(|c| BigRational::from_integer(c.coeffs[r].into())).collect();
            row.push(BigRational::from_integer(theta.coeffs[r].into()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..=ncols {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if let Some(bad) = (r..rows).find(|&i| !m[i][ncols].is_zero()) {
        return Ok(Membership::OutsideSpan { residual_row: bad });
    }
    debug_assert_eq!(pivots.len(), ncols, "Fueter basis is independent");
    let coords: Vec<BigRational> = (0..ncols).map(|i| m[i][ncols].clone()).collect();
    if coords.iter().all(|c| c.is_integer()) {
        let ints: Vec<i64> = coords.iter().map(|c| c.to_integer().to_i64().expect("small coordinates")).collect();
        Ok(Membership::Member(FueterDecomposition { nu: ints[..q].to_vec(), norm: ints[q] }))
    } else {
        Ok(Membership::NonIntegral { coords })
    }
}

/// Membership in `(1 - j) I`: `theta = (1 - j) xi` with `xi in I`.
pub fn minus_member(theta: &GroupRingElem) -> Result<bool> {
    // (1-j)I is generated by (1-j)psi_n; solve over those q generators.
    let p = theta.p;
    let q = (p - 1) / 2;
    let gens: Vec<GroupRingElem> = (1..=q).map(|n| fueter_unchecked(p, n).minus_part()).collect();
    let rows = (p - 1) as usize;
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> =
                gens.iter().map(|g| BigRational::from_integer(g.coeffs[r].into())).collect();
            row.push(BigRational::from_integer(theta.coeffs[r].into()));
            row
        })
        .collect();
    let nc = q as usize;
    let mut r = 0;
    for c in 0..nc {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..=nc {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    if (r..rows).any(|i| !m[i][nc].is_zero()) {
        return Ok(false);
    }
    Ok((0..r).all(|i| m[i][nc].is_integer()))
}

/// `e_k = (p-1)^-1 sum_a varpi^k(a) sigma_a^-1` reduced mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentModP {
    pub p: u64,
    pub k: u64,
    /// Residues on `sigma_1 .. sigma_(p-1)`.
    pub coeffs: Vec<u64>,
}

pub fn idempotent(p: u64, k: u64) -> Result<IdempotentModP> {
    PrimeContext::new(p)?;
    if k > p - 2 {
        return Err(Error::OutOfRange(format!("character index {k} outside 0..={}", p - 2)));
    }
    // Coefficient on sigma_b (b = a^-1) is (p-1)^-1 a^k = -b^-k mod p.
    let coeffs = (1..p)
        .map(|b| {
            let bk = mod_pow(mod_inv(b, p), k, p);
            (p - bk) % p
        })
        .collect();
    Ok(IdempotentModP { p, k, coeffs })
}

/// Product in `F_p[G]` of residue vectors.
pub fn mul_mod_p(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; (p - 1) as usize];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let k = ((i as u64 + 1) * (j as u64 + 1)) % p;
            let slot = &mut out[(k - 1) as usize];
            *slot = (*slot + x * y) % p;
        }
    }
    out
}

/// Identity check `e_k e_j = delta_kj e_k`, `sum e_k = 1` over `F_p[G]`.
pub fn idempotent_system_ok(p: u64) -> Result<bool> {
    let es: Vec<IdempotentModP> = (0..p - 1).map(|k| idempotent(p, k)).collect::<Result<_>>()?;
    let mut sum = vec![0u64; (p - 1) as usize];
    for (i, e) in es.iter().enumerate() {
        for (s, c) in sum.iter_mut().zip(&e.coeffs) {
            *s = (*s + c) % p;
        }
        for (j, f) in es.iter().enumerate() {
            let prod = mul_mod_p(p, &e.coeffs, &f.coeffs);
            let want = if i == j { e.coeffs.clone() } else { vec![0; (p - 1) as usize] };
            if prod != want {
                return Ok(false);
            }
        }
    }
    let mut one = vec![0u64; (p - 1) as usize];
    one[0] = 1;
    Ok(sum == one)
}

/// Sign pattern helper used by tests: `true` when every coefficient is in `{0, 1}`.
pub fn is_zero_one(theta: &GroupRingElem) -> bool {
    theta.coeffs.iter().all(|&c| c == 0 || c == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi1_at_five() {
        let psi1 = fueter(5, 1).unwrap();
        assert_eq!(psi1.coeffs(), &[0, 1, 0, 1]);
        assert!(fueter(5, 3).is_err());
        assert!(fueter(5, 0).is_err());
    }

    #[test]
    fn fueter_properties() {
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            let q = (p - 1) / 2;
            for n in 1..=q {
                let psi = fueter(p, n).unwrap();
                assert!(is_zero_one(&psi));
                for c in 1..p {
                    assert_eq!(psi.inverse_coeff(c) + psi.inverse_coeff(p - c), 1);
                }
                assert_eq!(relative_weight(&psi).unwrap(), 1);
                assert!(matches!(stickelberger_member(&psi).unwrap(), Membership::Member(_)));
            }
            // closed form of psi_1 and its conjugate
            let psi1 = fueter(p, 1).unwrap();
            for c in 1..p {
                assert_eq!(psi1.inverse_coeff(c), (2 * c > p) as i64);
                assert_eq!(psi1.apply_jay().inverse_coeff(c), (2 * c < p) as i64);
            }
        }
    }

    #[test]
    fn psi_via_vartheta() {
        // p psi_n = (1 + sigma_n - sigma_(n+1)) p vartheta
        for p in [5u64, 7, 11, 13] {
            let th = GroupRingElem::stickelberger_scaled(p);
            for n in 1..=(p - 1) / 2 {
                let f = GroupRingElem::one(p)
                    .add(&GroupRingElem::sigma(p, n as i64).unwrap())
                    .sub(&GroupRingElem::sigma(p, n as i64 + 1).unwrap());
                assert_eq!(f.mul(&th), fueter(p, n).unwrap().scale(p as i64));
            }
        }
    }

    #[test]
    fn generators_integral() {
        for p in [5u64, 7, 11, 13, 17] {
            for n in 2..=p.div_ceil(2) {
                stickelberger_generator(p, n).unwrap();
            }
        }
    }

    #[test]
    fn membership_examples() {
        let p = 7;
        let psi2 = fueter(p, 2).unwrap();
        let Membership::Member(d) = stickelberger_member(&psi2).unwrap() else { panic!() };
        assert_eq!(d.nu, vec![0, 1, 0]);
        assert_eq!(d.norm, 0);
        let norm = fueter(p, 1).unwrap().plus_part();
        assert_eq!(norm, GroupRingElem::norm_element(p));
        let Membership::Member(d) = stickelberger_member(&norm).unwrap() else { panic!() };
        assert_eq!(d.rebuild(p), norm);
        assert!(!matches!(stickelberger_member(&GroupRingElem::one(p)).unwrap(), Membership::Member(_)));
    }

    #[test]
    fn relative_weight_rejects() {
        let x = GroupRingElem::one(7);
        match relative_weight(&x) {
            Err(Error::NonConstantWeight(cs)) => assert!(!cs.is_empty()),
            other => panic!("{other:?}"),
        }
        assert_eq!(relative_weight(&GroupRingElem::zero(7)).unwrap(), 0);
    }

    #[test]
    fn idempotents() {
        let e0 = idempotent(5, 0).unwrap();
        assert_eq!(e0.coeffs, vec![4, 4, 4, 4]);
        for p in [3u64, 5, 7, 11, 13] {
            assert!(idempotent_system_ok(p).unwrap());
        }
    }

    #[test]
    fn parse_forms() {
        let a = GroupRingElem::parse(5, "0,1,0,1").unwrap();
        assert_eq!(a, fueter(5, 1).unwrap());
        let b = GroupRingElem::parse(7, "(1-j)*psi1 + 2*psi2").unwrap();
        let want = fueter(7, 1).unwrap().minus_part().add(&fueter(7, 2).unwrap().scale(2));
        assert_eq!(b, want);
        assert!(GroupRingElem::parse(7, "psi9").is_err());
        assert!(GroupRingElem::parse(7, "1,2").is_err());
        assert_eq!(GroupRingElem::parse(5, "sigma2*sigma3").unwrap(), GroupRingElem::one(5));
    }

    #[test]
    fn orbits() {
        let p = 5;
        let psi1 = fueter(p, 1).unwrap();
        let psi2 = fueter(p, 2).unwrap();
        assert!(psi1.same_orbit(&psi2));
        assert_eq!(psi1.translate(2), psi2);
        let t = psi1.minus_part();
        assert_eq!(t.orbit_size(), 4);
    }

    #[test]
    fn action() {
        let p = 7;
        let x = &CycNum::zeta_pow(p, 2) + &CycNum::from_int(p, 3);
        let k = 4;
        assert_eq!(GroupRingElem::zero(p).act(&x, k).unwrap(), PadicCyc::one(p, k));
        let s3 = GroupRingElem::sigma(p, 3).unwrap();
        assert_eq!(s3.act(&x, k).unwrap(), reduce_padic(&x.galois_unit(3), k).unwrap());
        let a = fueter(p, 1).unwrap();
        let b = fueter(p, 2).unwrap().minus_part();
        let lhs = a.add(&b).act(&x, k).unwrap();
        let rhs = a.act(&x, k).unwrap().mul(&b.act(&x, k).unwrap());
        assert_eq!(lhs, rhs);
        assert!(b.act(&CycNum::lambda(p), k).is_err());
    }
}
