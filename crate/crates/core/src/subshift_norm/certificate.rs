use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::intlat::{FundamentalDomain, IntMatrix, IntVector};

use super::NormError;

pub const DEFAULT_N_MAX: usize = 6;

/// `L^{-n} M L^n`, when it is integral.
pub fn conjugate_power(l: &IntMatrix, m: &IntMatrix, n: usize) -> Option<IntMatrix> {
    let ln = l.pow(n as u64);
    let num = &(&ln.adjugate() * m) * &ln;
    num.div_exact(&ln.det())
}

/// Action of an integral `C` with `C L(Z^d) = L(Z^d)` on the non-zero
/// digits: `images[i]` is the digit of `C · digits[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResiduePermutation {
    pub digits: Vec<IntVector>,
    pub images: Vec<IntVector>,
}

impl ResiduePermutation {
    pub fn of(c: &IntMatrix, f1: &FundamentalDomain) -> Self {
        let digits: Vec<IntVector> = f1.elements().iter().filter(|f| !f.is_zero()).cloned().collect();
        let images = digits.iter().map(|f| f1.digit(&c.mul_vec(f)).clone()).collect();
        ResiduePermutation { digits, images }
    }

    pub fn apply(&self, f: &IntVector) -> Option<&IntVector> {
        self.digits.iter().position(|g| g == f).map(|i| &self.images[i])
    }

    pub fn is_identity(&self) -> bool {
        self.digits == self.images
    }
}

/// `C L(Z^d) <= L(Z^d)`, i.e. `adj(L) C L ≡ 0 mod det L`.
fn preserves_base(c: &IntMatrix, l: &IntMatrix) -> bool {
    let det = l.det();
    (&(&l.adjugate() * c) * l).entries().iter().all(|x| (x % &det).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NlCertificate {
    pub l: IntMatrix,
    pub m: IntMatrix,
    pub n_max: usize,
    /// Least level from which every tested conjugate is integral.
    pub k: usize,
    /// Least level from which the residue action is constant.
    pub n0: usize,
    /// `L^{-n} M L^n` for `n = 0..=n_max`, `None` where not integral.
    pub conjugates: Vec<Option<IntMatrix>>,
    /// Residue action at levels `k..n_max`.
    pub actions: Vec<ResiduePermutation>,
}

impl NlCertificate {
    /// The action used at valuation `v` (levels past `n0` use the stable one).
    pub fn action_at(&self, v: usize) -> &ResiduePermutation {
        let v = v.clamp(self.k, self.n0);
        &self.actions[v - self.k]
    }

    pub fn stable_action(&self) -> &ResiduePermutation {
        self.action_at(self.n0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NlRejection {
    /// `C_level` is not integral and `level >= n_max / 2`; the last such level.
    NonIntegralConjugate { level: usize },
    /// The residue action had not settled for two levels by `n_max`.
    ResidueNotStabilized { n0: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NlVerdict {
    Accepted(NlCertificate),
    Rejected(NlRejection),
}

impl NlVerdict {
    pub fn accepted(&self) -> Option<&NlCertificate> {
        match self {
            NlVerdict::Accepted(c) => Some(c),
            NlVerdict::Rejected(_) => None,
        }
    }
}

/// Bounded test for `M ∈ N_L`: conjugates integral from some `k <= n_max/2`
/// and the residue action on `F_1 \ {0}` constant from some `n0 <= n_max - 2`.
pub fn nl_membership(l: &IntMatrix, m: &IntMatrix, f1: &FundamentalDomain, n_max: usize) -> Result<NlVerdict, NormError> {
    if !m.is_unimodular() || m.dim() != l.dim() {
        return Err(NormError::NotUnimodular(m.to_string()));
    }
    if f1.base() != l {
        return Err(NormError::DomainMismatch);
    }
    if n_max < 4 {
        return Err(NormError::DepthTooSmall(n_max));
    }
    let conjugates: Vec<Option<IntMatrix>> = (0..=n_max).map(|n| conjugate_power(l, m, n)).collect();
    let k = match conjugates.iter().rposition(Option::is_none) {
        None => 0,
        Some(last_bad) => last_bad + 1,
    };
    if k > n_max / 2 {
        return Ok(NlVerdict::Rejected(NlRejection::NonIntegralConjugate { level: k.saturating_sub(1) }));
    }
    let actions: Vec<ResiduePermutation> = (k..n_max)
        .map(|n| {
            let c = conjugates[n].as_ref().expect("integral past k");
            debug_assert!(preserves_base(c, l));
            ResiduePermutation::of(c, f1)
        })
        .collect();
    let last = actions.last().expect("k < n_max");
    let settled = actions.iter().rposition(|a| a != last).map_or(0, |i| i + 1);
    let n0 = k + settled;
    if n0 + 2 > n_max {
        return Ok(NlVerdict::Rejected(NlRejection::ResidueNotStabilized { n0 }));
    }
    Ok(NlVerdict::Accepted(NlCertificate { l: l.clone(), m: m.clone(), n_max, k, n0, conjugates, actions }))
}

/// For all non-zero `v` in `region`: `τ(Mv)` is the action at level
/// `val(v)` applied to `τ(v)`.
pub fn tau_equivariance(
    cert: &NlCertificate,
    s: &crate::substitution::Substitution,
    region: &[IntVector],
) -> Result<Option<IntVector>, NormError> {
    for v in region.iter().filter(|v| !v.is_zero()) {
        let (f, p) = s.tau(v)?;
        let (g, _) = s.tau(&cert.m.mul_vec(v))?;
        if cert.action_at(p as usize).apply(&f) != Some(&g) {
            return Ok(Some(v.clone()));
        }
    }
    Ok(None)
}
