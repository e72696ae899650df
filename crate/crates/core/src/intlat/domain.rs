use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;

use super::hnf::{hnf, HnfBasis};
use super::{IntMatrix, IntVector, LatticeError};

/// A complete set of coset representatives of `Z^d / L(Z^d)` containing 0.
#[derive(Clone, Debug)]
pub struct FundamentalDomain {
    base: IntMatrix,
    lattice: HnfBasis,
    adj: IntMatrix,
    det: BigInt,
    elements: Vec<IntVector>,
    by_residue: HashMap<IntVector, usize>,
}

/// The canonical domain: the half-open HNF box of `L(Z^d)`.
pub fn fundamental_domain(l: &IntMatrix) -> Result<FundamentalDomain, LatticeError> {
    let lattice = hnf(l)?;
    let elements = lattice.box_reps();
    FundamentalDomain::build(l, lattice, elements)
}

/// Checks that `f` is a fundamental domain for `L(Z^d)` containing 0.
pub fn validate_domain(l: &IntMatrix, f: &[IntVector]) -> Result<FundamentalDomain, LatticeError> {
    let lattice = hnf(l)?;
    let d = l.dim();
    if let Some(bad) = f.iter().find(|v| v.dim() != d) {
        return Err(LatticeError::DimensionMismatch { expected: d, found: bad.dim() });
    }
    if !f.iter().any(IntVector::is_zero) {
        return Err(LatticeError::MissingZero);
    }
    let index = lattice.index();
    if BigInt::from(f.len()) != index {
        return Err(LatticeError::WrongCardinality { expected: index.to_string(), found: f.len() });
    }
    FundamentalDomain::build(l, lattice, f.to_vec())
}

impl FundamentalDomain {
    fn build(l: &IntMatrix, lattice: HnfBasis, elements: Vec<IntVector>) -> Result<Self, LatticeError> {
        let mut by_residue = HashMap::with_capacity(elements.len());
        for (i, v) in elements.iter().enumerate() {
            if let Some(j) = by_residue.insert(lattice.reduce_box(v), i) {
                return Err(LatticeError::CosetCollision {
                    first: elements[j].to_string(),
                    second: v.to_string(),
                });
            }
        }
        Ok(FundamentalDomain {
            base: l.clone(),
            lattice,
            adj: l.adjugate(),
            det: l.det(),
            elements,
            by_residue,
        })
    }

    pub fn base(&self) -> &IntMatrix {
        &self.base
    }

    pub fn lattice(&self) -> &HnfBasis {
        &self.lattice
    }

    pub fn elements(&self) -> &[IntVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Position in [`Self::elements`] of the digit representing `v`.
    pub fn digit_index(&self, v: &IntVector) -> usize {
        self.by_residue[&self.lattice.reduce_box(v)]
    }

    pub fn digit(&self, v: &IntVector) -> &IntVector {
        &self.elements[self.digit_index(v)]
    }

    /// Unique `(f, q)` with `v = L q + f` and `f` in the domain.
    pub fn reduce(&self, v: &IntVector) -> (IntVector, IntVector) {
        let f = self.digit(v).clone();
        let diff = v - &f;
        let q = self.adj.mul_vec(&diff);
        let q = IntVector(q.0.into_iter().map(|x| x / &self.det).collect());
        (f, q)
    }

    /// `|det L|`.
    pub fn abs_det(&self) -> BigInt {
        self.det.abs()
    }
}
