//! Exact arithmetic and certificates around binomial power series over the
//! `p`-th cyclotomic field: group ring algebra of the Stickelberger ideal,
//! `p`-adic binomial series, rank profiles of coefficient vectors, small
//! kernel vectors of integer matrices, and a verifier for the inequality
//! chain that turns those pieces into a lower bound.

pub mod bernoulli;
pub mod bounds;
pub mod certificate;
pub mod cyclo;
pub mod delta;
pub mod embed;
pub mod error;
pub mod group_ring;
pub mod linalg;
pub mod padic;
pub mod prime;
#[cfg(test)]
mod proptests;
pub mod series;
pub mod siegel;
pub mod strnum;

pub use cyclo::{CycNum, LambdaExpansion, Valuation};
pub use error::{Error, Result};
pub use group_ring::GroupRingElem;
pub use padic::{reduce_padic, PadicCyc};
pub use prime::PrimeContext;
