use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::number::ext_gcd;
use super::{IntMatrix, IntVector, LatticeError};

/// Column Hermite normal form of a full-rank lattice in `Z^d`.
///
/// Lower triangular, positive diagonal, and `0 <= h[i][j] < h[i][i]` for
/// `j < i`. Two generating sets span the same lattice iff their forms agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HnfBasis {
    matrix: IntMatrix,
}

/// Column HNF of the lattice spanned by the columns of `gens` (`d x k`, `k >= d`).
pub fn hnf(gens: &IntMatrix) -> Result<HnfBasis, LatticeError> {
    let d = gens.rows();
    let k = gens.cols();
    if k < d {
        return Err(LatticeError::NotFullRank);
    }
    let mut cols: Vec<Vec<BigInt>> = (0..k).map(|j| gens.column(j).0).collect();
    for i in 0..d {
        for j in i + 1..k {
            if cols[j][i].is_zero() {
                continue;
            }
            let a = cols[i][i].clone();
            let b = cols[j][i].clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            let new_i: Vec<BigInt> = (0..d).map(|r| &x * &cols[i][r] + &y * &cols[j][r]).collect();
            let new_j: Vec<BigInt> = (0..d).map(|r| &ag * &cols[j][r] - &bg * &cols[i][r]).collect();
            cols[i] = new_i;
            cols[j] = new_j;
        }
        if cols[i][i].is_zero() {
            return Err(LatticeError::NotFullRank);
        }
        if cols[i][i].is_negative() {
            for x in cols[i].iter_mut() {
                *x = -&*x;
            }
        }
        for j in 0..i {
            let q = cols[j][i].div_floor(&cols[i][i]);
            if !q.is_zero() {
                for r in i..d {
                    let t = &q * &cols[i][r];
                    cols[j][r] -= t;
                }
            }
        }
    }
    let basis: Vec<IntVector> = cols.into_iter().take(d).map(IntVector).collect();
    Ok(HnfBasis { matrix: IntMatrix::from_columns(&basis) })
}

impl HnfBasis {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Index of the lattice in `Z^d`.
    pub fn index(&self) -> BigInt {
        (0..self.dim()).map(|i| self.matrix.get(i, i).clone()).product()
    }

    /// Canonical representative of `v` modulo the lattice: the unique point of
    /// `v + lattice` in the half-open box `prod [0, h[i][i])`.
    pub fn reduce_box(&self, v: &IntVector) -> IntVector {
        let d = self.dim();
        assert_eq!(v.dim(), d, "dimension mismatch");
        let mut r = v.0.clone();
        for i in 0..d {
            let q = r[i].div_floor(self.matrix.get(i, i));
            if !q.is_zero() {
                for (row, x) in r.iter_mut().enumerate().skip(i) {
                    *x -= &q * self.matrix.get(row, i);
                }
            }
        }
        IntVector(r)
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.reduce_box(v).is_zero()
    }

    /// Integer coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &IntVector) -> Option<IntVector> {
        let d = self.dim();
        let mut x: Vec<BigInt> = Vec::with_capacity(d);
        for i in 0..d {
            let mut rhs = v.0[i].clone();
            for (j, xj) in x.iter().enumerate() {
                rhs -= self.matrix.get(i, j) * xj;
            }
            let (q, r) = rhs.div_rem(self.matrix.get(i, i));
            if !r.is_zero() {
                return None;
            }
            x.push(q);
        }
        Some(IntVector(x))
    }

    /// All box representatives, first coordinate varying fastest.
    pub fn box_reps(&self) -> Vec<IntVector> {
        let d = self.dim();
        let sides: Vec<BigInt> = (0..d).map(|i| self.matrix.get(i, i).clone()).collect();
        let mut out = vec![IntVector::zeros(d)];
        for i in 0..d {
            let mut next = Vec::new();
            let mut k = BigInt::zero();
            while k < sides[i] {
                for v in &out {
                    let mut w = v.clone();
                    w.0[i] = k.clone();
                    next.push(w);
                }
                k += 1;
            }
            out = next;
        }
        out.sort_by(|a, b| a.0.iter().rev().cmp(b.0.iter().rev()));
        out
    }

    /// `self` is a sublattice of `other`.
    pub fn is_sublattice_of(&self, other: &HnfBasis) -> bool {
        (0..self.dim()).all(|j| other.contains(&self.matrix.column(j)))
    }

    /// Intersection of two full-rank lattices, through their duals:
    /// `A ∩ B = (A* + B*)*`.
    pub fn intersect(&self, other: &HnfBasis) -> Result<HnfBasis, LatticeError> {
        let d = self.dim();
        if other.dim() != d {
            return Err(LatticeError::DimensionMismatch { expected: d, found: other.dim() });
        }
        let (da, db) = (self.index(), other.index());
        let big_d = da.lcm(&db);
        let dual_a = self.matrix.adjugate().transpose().scale(&(&big_d / &da));
        let dual_b = other.matrix.adjugate().transpose().scale(&(&big_d / &db));
        let mut gens: Vec<IntVector> = (0..d).map(|j| dual_a.column(j)).collect();
        gens.extend((0..d).map(|j| dual_b.column(j)));
        let sum = hnf(&IntMatrix::from_columns(&gens))?;
        let c = sum.matrix();
        let meet = c
            .adjugate()
            .transpose()
            .scale(&big_d)
            .div_exact(&c.det())
            .expect("dual of an integral dual sum is integral");
        hnf(&meet)
    }

    pub fn is_identity(&self) -> bool {
        self.index().is_one()
    }
}
