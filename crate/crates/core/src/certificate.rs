//! Self-contained bound certificates: schema, generation and recheck.

use std::time::Instant;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bernoulli::irregularity_index;
use crate::bounds::{power_wrapup, verify_chain, verify_counting, ChainParams, CountingReport, Step, Verdict, WrapupReport};
use crate::delta::{build_j, run_delta};
use crate::error::{Error, Result};
use crate::prime::{binomial, PrimeContext};

pub const VERSION: u32 = 1;
/// Largest prime for which the delta smoke run is attempted.
pub const DELTA_CEILING: u64 = 13;
const WRAPUP_TRIPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSummary {
    #[serde(with = "crate::strnum::dec")]
    pub i_p: u64,
    #[serde(rename = "D", with = "crate::strnum::dec")]
    pub d: u64,
    #[serde(with = "crate::strnum::dec_vec")]
    pub irregular_ks: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSummary {
    pub present: bool,
    #[serde(with = "crate::strnum::dec_opt")]
    pub w: Option<u64>,
    #[serde(with = "crate::strnum::dec_opt")]
    pub vanish_order: Option<usize>,
    #[serde(rename = "H_nonzero")]
    pub h_nonzero: Option<bool>,
    pub checks_pass: Option<bool>,
    pub note: Option<String>,
}

impl DeltaSummary {
    fn absent(note: &str) -> Self {
        Self { present: false, w: None, vanish_order: None, h_nonzero: None, checks_pass: None, note: Some(note.into()) }
    }

    fn ok(&self) -> bool {
        !self.present || (self.h_nonzero == Some(true) && self.checks_pass == Some(true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(with = "crate::strnum::dec")]
    pub seed: u64,
    #[serde(with = "crate::strnum::dec")]
    pub runtime_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    #[serde(with = "crate::strnum::dec")]
    pub version: u32,
    #[serde(with = "crate::strnum::dec")]
    pub p: u64,
    #[serde(with = "crate::strnum::dec")]
    pub q: u64,
    pub counting: CountingReport,
    pub chain_params: ChainParams,
    pub chain: Vec<Step>,
    pub rank: RankSummary,
    pub delta: DeltaSummary,
    pub wrapup: WrapupReport,
    pub meta: Meta,
    pub overall: bool,
}

impl BoundCertificate {
    pub fn mandatory_steps(&self) -> impl Iterator<Item = &Step> {
        self.counting.steps().into_iter().chain(self.chain.iter()).filter(|s| s.mandatory)
    }

    fn compute_overall(&self) -> bool {
        self.mandatory_steps().all(|s| s.verdict == Verdict::Pass)
            && self.rank.d + self.rank.i_p == self.q
            && self.wrapup.holds
            && self.delta.ok()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        validate(&v)?;
        Ok(serde_json::from_value(v)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CertifyOptions {
    pub skip_delta: bool,
    pub seed: u64,
}

/// Weight and truncation for the smoke run: the smallest weight giving two orbits.
fn smoke_delta(p: u64, seed: u64) -> DeltaSummary {
    let Some(w) = (1..p).find(|&w| build_j(p, w, None).is_ok_and(|j| j.family.orbit_count() >= 2)) else {
        return DeltaSummary::absent("no weight yields two orbits");
    };
    let orbits = build_j(p, w, None).map(|j| j.family.orbit_count()).unwrap_or(0);
    let mut deg = (p as usize - 1) * orbits + 4;
    for _ in 0..3 {
        match run_delta(p, w, deg, seed) {
            Ok((c, _)) => {
                return DeltaSummary {
                    present: true,
                    w: Some(w),
                    vanish_order: Some(c.vanish_order),
                    h_nonzero: Some(!c.h.is_zero()),
                    checks_pass: Some(c.checks.all() && c.vanish_order == c.params.r_hi),
                    note: None,
                }
            }
            Err(Error::InsufficientDegree { .. }) => deg *= 2,
            Err(e) => {
                return DeltaSummary {
                    present: true,
                    w: Some(w),
                    vanish_order: None,
                    h_nonzero: None,
                    checks_pass: Some(false),
                    note: Some(e.to_string()),
                }
            }
        }
    }
    DeltaSummary { present: true, w: Some(w), vanish_order: None, h_nonzero: None, checks_pass: Some(false), note: Some("degree".into()) }
}

pub fn certify(p: u64, opts: CertifyOptions) -> Result<BoundCertificate> {
    let t0 = Instant::now();
    let ctx = PrimeContext::new(p)?;
    let counting = verify_counting(p)?;
    let (chain_params, chain) = verify_chain(p)?;
    let r = irregularity_index(p)?;
    let rank = RankSummary { i_p: r.i_p, d: r.d, irregular_ks: r.irregular_ks };
    let delta = if opts.skip_delta {
        DeltaSummary::absent("skipped on request")
    } else if p > DELTA_CEILING {
        DeltaSummary::absent("prime above the smoke-run ceiling")
    } else {
        smoke_delta(p, opts.seed)
    };
    let wrapup = power_wrapup(p, opts.seed, WRAPUP_TRIPLES)?;
    let mut cert = BoundCertificate {
        version: VERSION,
        p,
        q: ctx.q(),
        counting,
        chain_params,
        chain,
        rank,
        delta,
        wrapup,
        meta: Meta { seed: opts.seed, runtime_ms: 0 },
        overall: false,
    };
    cert.overall = cert.compute_overall();
    cert.meta.runtime_ms = t0.elapsed().as_millis();
    Ok(cert)
}

fn require<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing key {path}.{key}")))
}

fn require_str(v: &Value, key: &str, path: &str) -> Result<()> {
    match require(v, key, path)? {
        Value::String(_) => Ok(()),
        other => Err(Error::Parse(format!("{path}.{key} must be a decimal string, got {other}"))),
    }
}

fn check_step(s: &Value, path: &str) -> Result<()> {
    require_str(s, "name", path)?;
    for side in ["lhs", "rhs"] {
        let arr = require(s, side, path)?
            .as_array()
            .ok_or_else(|| Error::Parse(format!("{path}.{side} must be an array")))?;
        for f in arr {
            let ok = f.as_array().is_some_and(|pair| pair.len() == 2 && pair.iter().all(Value::is_string));
            if !ok {
                return Err(Error::Parse(format!("{path}.{side} entries must be [base, exponent] strings")));
            }
        }
    }
    for k in ["relation", "verdict"] {
        require_str(s, k, path)?;
    }
    if !require(s, "mandatory", path)?.is_boolean() {
        return Err(Error::Parse(format!("{path}.mandatory must be boolean")));
    }
    Ok(())
}

/// Structural schema check of a certificate document.
pub fn validate(v: &Value) -> Result<()> {
    for k in ["version", "p", "q"] {
        require_str(v, k, "$")?;
    }
    let counting = require(v, "counting", "$")?;
    for k in ["identity", "stirling", "end_to_end", "intermediate"] {
        check_step(require(counting, k, "$.counting")?, &format!("$.counting.{k}"))?;
    }
    let chain = require(v, "chain", "$")?.as_array().ok_or_else(|| Error::Parse("$.chain must be an array".into()))?;
    for (i, s) in chain.iter().enumerate() {
        check_step(s, &format!("$.chain[{i}]"))?;
    }
    let cp = require(v, "chain_params", "$")?;
    for k in ["n_lower", "n", "n_prime", "m", "n_small", "d_bar"] {
        require_str(cp, k, "$.chain_params")?;
    }
    let rank = require(v, "rank", "$")?;
    require_str(rank, "i_p", "$.rank")?;
    require_str(rank, "D", "$.rank")?;
    let delta = require(v, "delta", "$")?;
    if !require(delta, "present", "$.delta")?.is_boolean() {
        return Err(Error::Parse("$.delta.present must be boolean".into()));
    }
    require(delta, "vanish_order", "$.delta")?;
    require(delta, "H_nonzero", "$.delta")?;
    let meta = require(v, "meta", "$")?;
    require_str(meta, "seed", "$.meta")?;
    require_str(meta, "runtime_ms", "$.meta")?;
    if !require(v, "overall", "$")?.is_boolean() {
        return Err(Error::Parse("$.overall must be boolean".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecheckReport {
    pub agrees: bool,
    pub mismatches: Vec<String>,
}

/// Recomputes every comparison from the stored integers, plus the few
/// derived facts (`N` lower bound, `D = q - i_p`, the wrap-up triples).
pub fn recheck(cert: &BoundCertificate) -> Result<RecheckReport> {
    let mut bad = Vec::new();
    for s in cert.counting.steps().into_iter().chain(cert.chain.iter()) {
        if !s.recheck()? {
            bad.push(format!("step {} disagrees with its stored verdict", s.name));
        }
    }
    let ctx = PrimeContext::new(cert.p)?;
    if ctx.q() != cert.q {
        bad.push("q".into());
    }
    let q = cert.q;
    if cert.chain_params.n_lower != binomial(3 * q - 1, q - 1) {
        bad.push("n_lower".into());
    }
    if cert.chain_params != ChainParams::new(cert.p)? {
        bad.push("chain parameters".into());
    }
    if cert.rank.d + cert.rank.i_p != q {
        bad.push("D + i_p != q".into());
    }
    if power_wrapup(cert.p, cert.wrapup.seed, cert.wrapup.triples)? != cert.wrapup {
        bad.push("wrap-up triples".into());
    }
    if cert.compute_overall() != cert.overall {
        bad.push("overall".into());
    }
    Ok(RecheckReport { agrees: bad.is_empty(), mismatches: bad })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_fails_counting_but_rechecks() {
        let c = certify(5, CertifyOptions { skip_delta: false, seed: 1 }).unwrap();
        assert!(!c.overall);
        assert_eq!(c.counting.end_to_end.verdict, Verdict::Fail);
        assert!(c.delta.present && c.delta.ok());
        let back = BoundCertificate::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(recheck(&back).unwrap().agrees);
    }

    #[test]
    fn rejects_composite() {
        assert!(certify(4, CertifyOptions::default()).is_err());
    }

    #[test]
    fn tampering_is_detected() {
        let mut c = certify(7, CertifyOptions { skip_delta: true, seed: 0 }).unwrap();
        c.chain[0].verdict = if c.chain[0].verdict == Verdict::Pass { Verdict::Fail } else { Verdict::Pass };
        assert!(!recheck(&c).unwrap().agrees);
    }
}
