use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::intlat::{IntMatrix, IntVector};
use crate::substitution::{disagreements, overlap, Letter, Patch, Substitution};

use super::{nl_membership, NlCertificate, NormError, ResiduePermutation};

/// Sliding block code realising `M ∈ N_L` on the digit subshift:
/// `φ_M(x)_n = A_{v}(x_{M^{-1} n})` where `v` is the level of `M^{-1} n`,
/// read off the pattern on `M^{-1} n + F_{n0}` and capped at `n0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalRule {
    pub m: IntMatrix,
    pub n0: usize,
    /// Action at levels `0..=n0`.
    pub per_level: Vec<ResiduePermutation>,
    /// Offsets `F_{n0} \ {0}` with the letter `τ(f)` and the first level
    /// whose support contains `f`.
    reference: Vec<(IntVector, Letter, usize)>,
    m_inv: IntMatrix,
}

pub fn build_local_rule(cert: &NlCertificate, s: &mut Substitution) -> Result<LocalRule, NormError> {
    if !s.is_digit_family() {
        return Err(NormError::NotDigitFamily);
    }
    if s.expansion() != &cert.l {
        return Err(NormError::DomainMismatch);
    }
    if cert.k > 0 {
        return Err(NormError::NotLocalBelow(cert.k));
    }
    let per_level = (0..=cert.n0).map(|v| cert.action_at(v).clone()).collect();
    let mut reference = Vec::new();
    let mut seen: HashSet<IntVector> = HashSet::new();
    for q in 1..=cert.n0 {
        for f in s.support(q)?.to_vec() {
            if !f.is_zero() && seen.insert(f.clone()) {
                let t = Letter::Digit(s.tau(&f)?.0);
                reference.push((f, t, q));
            }
        }
    }
    Ok(LocalRule { m: cert.m.clone(), n0: cert.n0, per_level, reference, m_inv: cert.m.inverse_unimodular()? })
}

impl LocalRule {
    /// Window offsets `F_{n0}` the rule reads around each source position.
    pub fn window(&self) -> impl Iterator<Item = &IntVector> {
        self.reference.iter().map(|(f, _, _)| f)
    }

    /// Level of position `u` in `x`, capped at `n0`; `None` if the window leaves the patch.
    fn level(&self, x: &Patch, u: &IntVector) -> Option<usize> {
        let mut broken = self.n0 + 1;
        for (f, t, q) in &self.reference {
            let a = x.get(&(u + f))?;
            if a != t {
                broken = broken.min(*q);
            }
        }
        Some(broken - 1)
    }

    fn letter_at(&self, x: &Patch, u: &IntVector) -> Result<Option<Letter>, NormError> {
        let (Some(a), Some(v)) = (x.get(u), self.level(x, u)) else {
            return Ok(None);
        };
        let f = a.digit().ok_or_else(|| NormError::NotDigitLetter(a.to_string()))?;
        let img = self.per_level[v].apply(f).ok_or_else(|| NormError::NotDigitLetter(a.to_string()))?;
        Ok(Some(Letter::Digit(img.clone())))
    }

    /// `φ_M` on a finite patch. With `targets`, every target must be
    /// computable from the patch; otherwise the full computable image is returned.
    pub fn apply(&self, x: &Patch, targets: Option<&[IntVector]>) -> Result<Patch, NormError> {
        let mut out = Patch::new();
        match targets {
            Some(ts) => {
                for n in ts {
                    let u = self.m_inv.mul_vec(n);
                    match self.letter_at(x, &u)? {
                        Some(a) => {
                            out.insert(n.clone(), a);
                        }
                        None => return Err(NormError::InsufficientMargin(n.to_string())),
                    }
                }
            }
            None => {
                for u in x.keys() {
                    if let Some(a) = self.letter_at(x, u)? {
                        out.insert(self.m.mul_vec(u), a);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Source positions needed to compute `targets`.
    pub fn preimage_region(&self, targets: &[IntVector]) -> Vec<IntVector> {
        let mut need: HashSet<IntVector> = HashSet::new();
        for n in targets {
            let u = self.m_inv.mul_vec(n);
            for f in self.window() {
                need.insert(&u + f);
            }
            need.insert(u);
        }
        let mut v: Vec<IntVector> = need.into_iter().collect();
        v.sort();
        v
    }
}

pub fn apply_endomorphism(rule: &LocalRule, x: &Patch, targets: Option<&[IntVector]>) -> Result<Patch, NormError> {
    rule.apply(x, targets)
}

/// `φ_M` maps every fixed point to a fixed point: off the origin the image
/// reads `τ(n)`.
pub fn maps_fixed_points(rule: &LocalRule, s: &Substitution, region: &[IntVector]) -> Result<bool, NormError> {
    for seed in s.fixed_point_seeds() {
        let src = s.fixed_point_patch(&seed, &rule.preimage_region(region))?;
        let img = rule.apply(&src, Some(region))?;
        let stable = rule.per_level[rule.n0].apply(seed.digit().expect("digit letter")).cloned();
        let want = s.fixed_point_patch(&Letter::Digit(stable.expect("seed is a digit")), region)?;
        if img != want {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionReport {
    pub compared: usize,
    pub mismatches: Vec<IntVector>,
}

impl CompositionReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.compared > 0
    }
}

/// Compares `φ_{MM'}` with `φ_M ∘ φ_{M'}` on every fixed point over `region`.
pub fn composition_check(
    s: &mut Substitution,
    m: &IntMatrix,
    m2: &IntMatrix,
    region: &[IntVector],
    n_max: usize,
) -> Result<CompositionReport, NormError> {
    let l = s.expansion().clone();
    let f1 = s.digits().clone();
    let rule_for = |s: &mut Substitution, a: &IntMatrix| -> Result<LocalRule, NormError> {
        let verdict = nl_membership(&l, a, &f1, n_max)?;
        let cert = verdict.accepted().ok_or_else(|| NormError::NotInNormalizer(a.to_string()))?.clone();
        build_local_rule(&cert, s)
    };
    let r1 = rule_for(s, m)?;
    let r2 = rule_for(s, m2)?;
    let r12 = rule_for(s, &(m * m2))?;
    let mid = r1.preimage_region(region);
    let src_region = {
        let mut v = r2.preimage_region(&mid);
        v.extend(r12.preimage_region(region));
        v.sort();
        v.dedup();
        v
    };
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for seed in s.fixed_point_seeds() {
        let x = s.fixed_point_patch(&seed, &src_region)?;
        let lhs = r12.apply(&x, Some(region))?;
        let rhs = r1.apply(&r2.apply(&x, Some(&mid))?, Some(region))?;
        compared += overlap(&lhs, &rhs);
        mismatches.extend(disagreements(&lhs, &rhs));
    }
    Ok(CompositionReport { compared, mismatches })
}
