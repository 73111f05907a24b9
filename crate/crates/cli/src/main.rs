//! `flt2cert`: certificates, rank profiles, series checks and small solutions.
//!
//! Exit codes: 0 when every mandatory check passes, 1 when one fails, 2 on
//! usage errors (bad arguments, invalid primes, unparsable input).

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use flt2_core::bernoulli::irregularity_index;
use flt2_core::certificate::{certify, recheck, BoundCertificate, CertifyOptions};
use flt2_core::delta::{entry_bound_report, run_delta};
use flt2_core::group_ring::fueter;
use flt2_core::linalg::{independence_check, verify_vecmap, Independence, OrbitFamily};
use flt2_core::series::{f_theta, integrality_and_bounds, verify_pth_power, SeriesContext};
use flt2_core::siegel::{siegel_solve, IntMatrix};
use flt2_core::{Error, GroupRingElem};

#[derive(Parser)]
#[command(name = "flt2cert", version, about = "Exact certificates for binomial series over cyclotomic fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Counting estimate, inequality chain, rank report and (small p) a delta smoke run.
    Certify {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        skip_delta: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Irregularity report and the rank profile of an orbit family.
    Rank {
        #[arg(long)]
        prime: u64,
        /// Orbit representatives; defaults to (1-j)psi1 and (1-j)(psi1+psi2).
        #[arg(long = "theta")]
        thetas: Vec<String>,
        #[arg(long)]
        deg: Option<usize>,
    },
    /// Checks on a single series f[theta].
    Series {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        deg: usize,
        #[arg(long, value_enum)]
        check: SeriesCheck,
    },
    /// Builds and verifies the delta certificate.
    Delta {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        weight: u64,
        #[arg(long)]
        deg: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Small solution of a random integer system.
    Siegel {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        max_entry: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recomputes every verdict of a stored certificate.
    Recheck {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesCheck {
    #[value(name = "pthpower", alias = "pth-power")]
    PthPower,
    Integrality,
    Bounds,
    Vecmap,
    /// One row per `n`: the exact rational coordinates of `a_n`.
    Csv,
}

enum Outcome {
    Pass,
    Fail,
}

fn print(s: &str) -> Result<(), Error> {
    match writeln!(io::stdout().lock(), "{s}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(v: &Value, out: Option<&PathBuf>) -> Result<(), Error> {
    let s = serde_json::to_string_pretty(v)?;
    match out {
        Some(path) => fs::write(path, s + "\n")?,
        None => print(&s)?,
    }
    Ok(())
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn default_family(p: u64) -> Result<Vec<GroupRingElem>, Error> {
    let psi1 = fueter(p, 1)?;
    let mut reps = vec![psi1.minus_part()];
    if p >= 5 {
        reps.push(psi1.add(&fueter(p, 2)?).minus_part());
    }
    Ok(reps)
}

fn run(cmd: Cmd) -> Result<Outcome, Error> {
    match cmd {
        Cmd::Certify { prime, out, skip_delta, seed } => {
            let cert = certify(prime, CertifyOptions { skip_delta, seed })?;
            emit(&serde_json::to_value(&cert)?, out.as_ref())?;
            Ok(verdict(cert.overall))
        }
        Cmd::Rank { prime, thetas, deg } => {
            let report = irregularity_index(prime)?;
            let reps = if thetas.is_empty() {
                default_family(prime)?
            } else {
                thetas.iter().map(|t| GroupRingElem::parse(prime, t)).collect::<Result<_, _>>()?
            };
            let family = OrbitFamily::new(prime, reps)?;
            let deg = deg.unwrap_or(2 * family.vector_count());
            let sctx = SeriesContext::new(prime)?;
            let (ind, profile) = independence_check(&family, deg, &sctx)?;
            let full = matches!(ind, Independence::FullRank { .. });
            emit(
                &json!({
                    "p": report.p,
                    "i_p": report.i_p,
                    "D": report.d,
                    "irregular_ks": report.irregular_ks,
                    "family": family.reps().iter().map(|r| r.to_text()).collect::<Vec<_>>(),
                    "profile": profile,
                    "independence": ind,
                }),
                None,
            )?;
            Ok(verdict(full))
        }
        Cmd::Series { prime, theta, deg, check } => {
            let sctx = SeriesContext::new(prime)?;
            let theta = GroupRingElem::parse(prime, &theta)?;
            let (value, ok) = match check {
                SeriesCheck::PthPower => {
                    let r = verify_pth_power(&theta, deg, &sctx)?;
                    (serde_json::to_value(&r)?, r.holds)
                }
                SeriesCheck::Integrality => {
                    let r = integrality_and_bounds(&theta, deg, &sctx)?;
                    let v = json!({ "degree": r.degree, "a_integral": r.a_integral, "alpha_integral": r.alpha_integral });
                    (v, r.a_integral.holds)
                }
                SeriesCheck::Bounds => {
                    let r = integrality_and_bounds(&theta, deg, &sctx)?;
                    let growth = [&r.growth_strong, &r.growth_weak].into_iter().flatten().all(|c| c.holds);
                    let ok = r.coefficient_bound.holds && growth && r.inconclusive == 0;
                    (serde_json::to_value(&r)?, ok)
                }
                SeriesCheck::Vecmap => {
                    let r = verify_vecmap(&theta, deg, &sctx)?;
                    (serde_json::to_value(r)?, r.all())
                }
                SeriesCheck::Csv => {
                    let f = f_theta(&theta, deg, &sctx);
                    let header: Vec<String> = (1..prime).map(|c| format!("zeta^{c}")).collect();
                    print(&format!("n,{}", header.join(",")))?;
                    for (n, a) in f.coeffs().iter().enumerate() {
                        print(&format!("{n},{}", a.to_strings().join(",")))?;
                    }
                    return Ok(Outcome::Pass);
                }
            };
            emit(&value, None)?;
            Ok(verdict(ok))
        }
        Cmd::Delta { prime, weight, deg, seed, out } => {
            let (cert, a) = run_delta(prime, weight, deg, seed)?;
            let mut v = serde_json::to_value(&cert)?;
            v["entry_bound"] = serde_json::to_value(entry_bound_report(&a, prime, weight))?;
            emit(&v, out.as_ref())?;
            Ok(verdict(cert.checks.all() && cert.vanish_order == cert.params.r_hi))
        }
        Cmd::Siegel { rows, cols, max_entry, seed } => {
            if max_entry < 0 {
                return Err(Error::OutOfRange("max-entry must be nonnegative".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let data = (0..rows)
                .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-max_entry..=max_entry))).collect())
                .collect();
            let a = IntMatrix::new(data, cols)?;
            let s = siegel_solve(&a)?;
            let ok = a.annihilates(&s.w) && s.certified_bound.admits(&s.inf_norm);
            emit(
                &json!({
                    "w": s.w.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "inf_norm": s.inf_norm.to_string(),
                    "bound": s.certified_bound,
                }),
                None,
            )?;
            Ok(verdict(ok))
        }
        Cmd::Recheck { file } => {
            let text = fs::read_to_string(&file)?;
            let cert = BoundCertificate::from_json(&text)?;
            let r = recheck(&cert)?;
            emit(&serde_json::to_value(&r)?, None)?;
            Ok(verdict(r.agrees))
        }
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::NotOddPrime(_)
            | Error::PrimeOutOfRange(_)
            | Error::OutOfRange(_)
            | Error::Parse(_)
            | Error::Precondition(_)
            | Error::Json(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
