//! Exact integer lattice arithmetic over `Z^d`: matrices, Hermite normal
//! forms, fundamental domains and finite-index subgroups.

mod bigser;
mod domain;
mod hnf;
mod matrix;
pub mod number;
mod spectral;
mod subgroups;
mod vector;

pub use bigser::scalar as bigint_serde;
pub use domain::{fundamental_domain, validate_domain, FundamentalDomain};
pub use hnf::{hnf, HnfBasis};
pub use matrix::IntMatrix;
pub use number::radical;
pub use spectral::{
    char_poly, discriminant_2x2, divides, integer_eigenvalues, is_expansion, is_expansion_2x2,
    max_valuation,
};
pub use subgroups::enumerate_subgroups;
pub use vector::IntVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("generators do not span a full-rank lattice")]
    NotFullRank,
    #[error("matrix {0} is not unimodular")]
    NotUnimodular(String),
    #[error("domain has {found} elements, expected {expected}")]
    WrongCardinality { expected: String, found: usize },
    #[error("{first} and {second} lie in the same coset")]
    CosetCollision { first: String, second: String },
    #[error("domain does not contain 0")]
    MissingZero,
}
