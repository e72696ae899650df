use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::intlat::IntVector;
use crate::substitution::{Letter, Patch, Substitution};

use super::NormError;

/// Level-`n` coordinate of the factor map onto the odometer: the unique
/// `f ∈ F_n` with `patch[u] = τ(e)` wherever `e`, the `F_n`-digit of
/// `u + f`, is non-zero.
pub fn pi_factor(s: &mut Substitution, patch: &Patch, n: usize) -> Result<IntVector, NormError> {
    let dom = s.support_domain(n)?;
    let mut found = Vec::new();
    for f in dom.elements() {
        let fits = patch.iter().all(|(u, a)| {
            let e = dom.digit(&(u + f));
            e.is_zero() || s.tau(e).map(|(t, _)| Letter::Digit(t) == *a).unwrap_or(false)
        });
        if fits {
            found.push(f.clone());
        }
    }
    match found.len() {
        0 => Err(NormError::NoFactor(n)),
        1 => Ok(found.pop().expect("one candidate")),
        _ => Err(NormError::Ambiguous(found)),
    }
}

/// An odometer point, given either as the image of an integer vector or by its digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberQuery {
    /// `κ(-a)`: the fiber over it contains the fixed points shifted by `a`.
    Orbit { a: IntVector },
    /// `Σ L^i d_i` with `d_i ∈ F_1`.
    Digits { digits: Vec<IntVector> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub depth: usize,
    pub radius: i64,
    /// `g_depth ∈ F_depth`.
    pub residue: IntVector,
    pub undetermined: Vec<IntVector>,
    pub alphabet_size: usize,
    /// Points of the fiber told apart on the box: `|A|^{#undetermined}`.
    #[serde(with = "crate::intlat::bigint_serde")]
    pub count: BigInt,
    pub determined: Patch,
}

/// Positions in `[-radius, radius]^d` whose letter is not forced by the
/// level-`depth` coordinate of the query, and the forced letters elsewhere.
pub fn fiber_points(s: &mut Substitution, q: &FiberQuery, depth: usize, radius: i64) -> Result<FiberReport, NormError> {
    if !s.is_digit_family() {
        return Err(NormError::NotDigitFamily);
    }
    let d = s.dim();
    let dom = s.support_domain(depth)?;
    let g = match q {
        FiberQuery::Orbit { a } => dom.digit(&-a).clone(),
        FiberQuery::Digits { digits } => {
            if digits.len() < depth {
                return Err(NormError::DepthTooSmall(digits.len()));
            }
            let l = s.expansion().clone();
            let mut acc = IntVector::zeros(d);
            for dig in digits[..depth].iter().rev() {
                if s.digits().digit(dig) != dig {
                    return Err(NormError::NotADigit(dig.to_string()));
                }
                acc = &l.mul_vec(&acc) + dig;
            }
            dom.digit(&acc).clone()
        }
    };
    let mut undetermined = Vec::new();
    let mut determined = Patch::new();
    for u in crate::substitution::cube(d, -radius, radius) {
        let e = dom.digit(&(&u + &g));
        if e.is_zero() {
            undetermined.push(u);
        } else {
            determined.insert(u, Letter::Digit(s.tau(e)?.0));
        }
    }
    let alphabet_size = s.fixed_point_seeds().len();
    let count = BigInt::from(alphabet_size).pow(undetermined.len() as u32);
    Ok(FiberReport { depth, radius, residue: g, undetermined, alphabet_size, count, determined })
}
