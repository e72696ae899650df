//! Symmetries of digit substitution subshifts coming from `GL(d, Z)`.

mod certificate;
mod fiber;
mod local_rule;

pub use certificate::{
    conjugate_power, nl_membership, tau_equivariance, NlCertificate, NlRejection, NlVerdict, ResiduePermutation,
    DEFAULT_N_MAX,
};
pub use fiber::{fiber_points, pi_factor, FiberQuery, FiberReport};
pub use local_rule::{
    apply_endomorphism, build_local_rule, composition_check, maps_fixed_points, CompositionReport, LocalRule,
};

use thiserror::Error;

use crate::intlat::LatticeError;
use crate::substitution::SubstError;

#[derive(Debug, Error)]
pub enum NormError {
    #[error("matrix {0} is not unimodular of the right size")]
    NotUnimodular(String),
    #[error("digit set does not belong to the expansion")]
    DomainMismatch,
    #[error("depth {0} is too small")]
    DepthTooSmall(usize),
    #[error("conjugates are integral only from level {0}; the local rule needs level 0")]
    NotLocalBelow(usize),
    #[error("substitution is not a digit substitution")]
    NotDigitFamily,
    #[error("letter {0} is not a digit")]
    NotDigitLetter(String),
    #[error("{0} is not in F_1")]
    NotADigit(String),
    #[error("{0} fails the normalizer test")]
    NotInNormalizer(String),
    #[error("patch too small to compute position {0}")]
    InsufficientMargin(String),
    #[error("patch matches no level-{0} coset")]
    NoFactor(usize),
    #[error("patch matches several cosets: {0:?}")]
    Ambiguous(Vec<crate::intlat::IntVector>),
    #[error(transparent)]
    Subst(#[from] SubstError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
