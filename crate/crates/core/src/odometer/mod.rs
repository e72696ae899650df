//! Odometers over `Z^d`: truncated points, the canonical embedding, and the
//! normalizer condition deciding which matrices induce endomorphisms.

mod base;
mod nc;
mod point;
mod residue;

pub use base::{universal_chain, BaseKind, OdometerBase};
pub use nc::{
    epimorphism_digits, equivariance_holds, nc_bounded_check, nc_search, NcCertificate, NcOracle, NcReport,
    MAX_PERIOD,
};
pub use point::{kappa_embed, return_time_check, OdometerPoint};

use crate::intlat::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OdometerError {
    #[error("{0} is not an expansion")]
    NotExpansion(String),
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("depth {needed} requested but only {available} available")]
    DepthExceeded { needed: usize, available: usize },
    #[error("digits disagree between levels {0} and {next}", next = .0 + 1)]
    Incompatible(usize),
    #[error("points live on different odometers")]
    BaseMismatch,
    #[error("subgroup chain is empty")]
    EmptyChain,
    #[error("chain is not nested at level {0}")]
    NotNested(usize),
    #[error("no certificate for level {0}")]
    MissingCertificate(u32),
    #[error("normalizer condition fails at level {0}")]
    ConditionFails(u32),
    #[error("cycle of L^m at level {n} is longer than {limit}")]
    PeriodTooLong { n: u32, limit: u64 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
