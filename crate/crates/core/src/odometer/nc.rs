use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::intlat::{is_expansion, max_valuation, IntMatrix};

use super::residue::{Entries, ModRing};
use super::{kappa_embed, OdometerBase, OdometerError, OdometerPoint};

/// Longest cycle of `L^m mod det(L)^n` the search will walk.
pub const MAX_PERIOD: u64 = 50_000_000;

/// Outcome of the normalizer-condition search at one level `n`:
/// the least `m` with `adj(L^n) M L^m ≡ 0 mod det(L^n)`, or none.
///
/// `period_start`/`period_length` describe the eventually periodic sequence
/// `L^m mod det(L^n)`. The set of valid `m` is closed upwards, so when no
/// witness exists every residue on the cycle fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcCertificate {
    pub n: u32,
    pub witness: Option<u64>,
    #[serde(with = "crate::intlat::bigint_serde")]
    pub modulus: BigInt,
    pub period_start: u64,
    pub period_length: u64,
}

#[derive(Clone, Debug)]
struct LevelCycle {
    ring: ModRing,
    modulus: BigInt,
    adj_ln: Entries,
    l: Entries,
    mu: u64,
    lambda: u64,
}

/// Normalizer-condition oracle for a fixed expansion `L`, caching the cycle
/// structure of `L^m mod det(L)^n` for `n = 1..=n_max`.
#[derive(Clone, Debug)]
pub struct NcOracle {
    l: IntMatrix,
    levels: Vec<LevelCycle>,
}

impl NcOracle {
    pub fn new(l: &IntMatrix, n_max: u32) -> Result<Self, OdometerError> {
        if !l.is_square() || !is_expansion(l) {
            return Err(OdometerError::NotExpansion(l.to_string()));
        }
        let d = l.dim() as u64;
        let det = l.det().abs();
        let vmax = max_valuation(&det) as u64;
        let mut levels = Vec::with_capacity(n_max as usize);
        let mut ln = IntMatrix::identity(l.dim());
        for n in 1..=n_max {
            ln = &ln * l;
            let modulus = ln.det().abs();
            let ring = ModRing::new(l.dim(), &modulus);
            let lr = ring.lift(l);
            // Fitting: the nilpotent part of L on (Z/p^e)^d dies after d*e steps.
            let bound = d * n as u64 * vmax;
            let anchor = ring.pow(&lr, bound);
            let mut x = ring.mul(&anchor, &lr);
            let mut lambda = 1u64;
            while x != anchor {
                x = ring.mul(&x, &lr);
                lambda += 1;
                if lambda > MAX_PERIOD {
                    return Err(OdometerError::PeriodTooLong { n, limit: MAX_PERIOD });
                }
            }
            let shift = ring.pow(&lr, lambda);
            let mut s = ring.identity();
            let mut mu = 0u64;
            while ring.mul(&s, &shift) != s {
                s = ring.mul(&s, &lr);
                mu += 1;
            }
            levels.push(LevelCycle { adj_ln: ring.lift(&ln.adjugate()), l: lr, ring, modulus, mu, lambda });
        }
        Ok(NcOracle { l: l.clone(), levels })
    }

    pub fn expansion(&self) -> &IntMatrix {
        &self.l
    }

    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Certificate at level `n` (`1 <= n <= max_level`).
    pub fn search(&self, m: &IntMatrix, n: u32) -> Result<NcCertificate, OdometerError> {
        if m.rows() != self.l.dim() || !m.is_square() {
            return Err(OdometerError::DimensionMismatch { expected: self.l.dim(), found: m.rows() });
        }
        let Some(c) = self.levels.get((n as usize).wrapping_sub(1)) else {
            return Err(OdometerError::DepthExceeded { needed: n as usize, available: self.levels.len() });
        };
        let mut x = c.ring.mul(&c.adj_ln, &c.ring.lift(m));
        let mut witness = None;
        for k in 0..=c.mu {
            if x.is_zero() {
                witness = Some(k);
                break;
            }
            x = c.ring.mul(&x, &c.l);
        }
        Ok(NcCertificate {
            n,
            witness,
            modulus: c.modulus.clone(),
            period_start: c.mu,
            period_length: c.lambda,
        })
    }

    /// Certificates for `n = 1..=n_max`.
    pub fn bounded_check(&self, m: &IntMatrix, n_max: u32) -> Result<NcReport, OdometerError> {
        let certificates = (1..=n_max).map(|n| self.search(m, n)).collect::<Result<_, _>>()?;
        Ok(NcReport { matrix: m.clone(), certificates })
    }

    /// `L^m mod det(L^n)` as an integer matrix, for cross-checks.
    pub fn power_residue(&self, n: u32, m: u64) -> IntMatrix {
        let c = &self.levels[n as usize - 1];
        c.ring.to_matrix(&c.ring.pow(&c.l, m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcReport {
    pub matrix: IntMatrix,
    pub certificates: Vec<NcCertificate>,
}

impl NcReport {
    pub fn passes(&self) -> bool {
        self.certificates.iter().all(|c| c.witness.is_some())
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.certificates.iter().find(|c| c.witness.is_none()).map(|c| c.n)
    }
}

pub fn nc_search(l: &IntMatrix, m: &IntMatrix, n: u32) -> Result<NcCertificate, OdometerError> {
    NcOracle::new(l, n)?.search(m, n)
}

pub fn nc_bounded_check(l: &IntMatrix, m: &IntMatrix, n_max: u32) -> Result<NcReport, OdometerError> {
    NcOracle::new(l, n_max)?.bounded_check(m, n_max)
}

/// First digits of `φ^M(p)`: digit `n` is `M g_{m(n)} mod L^n(Z^d)` where
/// `m(n)` is the witness at level `n`. One digit per certificate, plus `g_0`.
pub fn epimorphism_digits(
    m: &IntMatrix,
    p: &OdometerPoint,
    certs: &[NcCertificate],
) -> Result<OdometerPoint, OdometerError> {
    let base: &Arc<OdometerBase> = &p.base;
    if certs.len() > base.depth() {
        return Err(OdometerError::DepthExceeded { needed: certs.len(), available: base.depth() });
    }
    let mut digits = vec![p.digits[0].clone()];
    for (i, c) in certs.iter().enumerate() {
        let n = i + 1;
        if c.n as usize != n {
            return Err(OdometerError::MissingCertificate(n as u32));
        }
        let w = c.witness.ok_or(OdometerError::ConditionFails(c.n))? as usize;
        if w > p.depth() {
            return Err(OdometerError::DepthExceeded { needed: w, available: p.depth() });
        }
        digits.push(base.level(n).reduce_box(&m.mul_vec(&p.digits[w])));
    }
    Ok(OdometerPoint { base: Arc::clone(base), digits })
}

/// `φ^M(κ(v) + p) = κ(Mv) + φ^M(p)` on the computed digits.
pub fn equivariance_holds(
    m: &IntMatrix,
    v: &crate::intlat::IntVector,
    p: &OdometerPoint,
    certs: &[NcCertificate],
) -> Result<bool, OdometerError> {
    let shifted = kappa_embed(&p.base, v, p.depth())?.add(p)?;
    let lhs = epimorphism_digits(m, &shifted, certs)?;
    let image = epimorphism_digits(m, p, certs)?;
    let rhs = kappa_embed(&p.base, &m.mul_vec(v), image.depth())?.add(&image)?;
    Ok(lhs == rhs)
}
