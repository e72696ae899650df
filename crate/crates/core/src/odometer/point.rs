use std::sync::Arc;

use crate::intlat::IntVector;

use super::{OdometerBase, OdometerError};

/// A truncated point `(g_0, ..., g_N)` of the odometer: `g_n` is the box
/// representative of a coset of `Z_n`, and `g_{n+1} = g_n mod Z_n`.
#[derive(Clone, Debug)]
pub struct OdometerPoint {
    pub base: Arc<OdometerBase>,
    pub digits: Vec<IntVector>,
}

impl PartialEq for OdometerPoint {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base) && self.digits == other.digits
    }
}

impl Eq for OdometerPoint {}

/// The canonical embedding `v -> (v mod Z_n)_n`.
pub fn kappa_embed(base: &Arc<OdometerBase>, v: &IntVector, depth: usize) -> Result<OdometerPoint, OdometerError> {
    check_depth(base, depth)?;
    if v.dim() != base.dim() {
        return Err(OdometerError::DimensionMismatch { expected: base.dim(), found: v.dim() });
    }
    let digits = (0..=depth).map(|n| base.level(n).reduce_box(v)).collect();
    Ok(OdometerPoint { base: Arc::clone(base), digits })
}

fn check_depth(base: &OdometerBase, depth: usize) -> Result<(), OdometerError> {
    if depth > base.depth() {
        return Err(OdometerError::DepthExceeded { needed: depth, available: base.depth() });
    }
    Ok(())
}

impl OdometerPoint {
    /// Builds a point from raw digits, reducing each and checking compatibility.
    pub fn from_digits(base: &Arc<OdometerBase>, digits: Vec<IntVector>) -> Result<Self, OdometerError> {
        check_depth(base, digits.len().saturating_sub(1))?;
        let digits: Vec<IntVector> = digits.iter().enumerate().map(|(n, g)| base.level(n).reduce_box(g)).collect();
        let p = OdometerPoint { base: Arc::clone(base), digits };
        match p.first_incompatibility() {
            Some(n) => Err(OdometerError::Incompatible(n)),
            None => Ok(p),
        }
    }

    pub fn depth(&self) -> usize {
        self.digits.len() - 1
    }

    /// First level `n` with `g_{n+1} != g_n mod Z_n`.
    pub fn first_incompatibility(&self) -> Option<usize> {
        (0..self.depth()).find(|&n| {
            let lvl = self.base.level(n);
            lvl.reduce_box(&self.digits[n + 1]) != self.digits[n]
        })
    }

    pub fn truncate(&self, depth: usize) -> OdometerPoint {
        OdometerPoint { base: Arc::clone(&self.base), digits: self.digits[..=depth.min(self.depth())].to_vec() }
    }

    /// Digit-wise sum, at the smaller of the two depths.
    pub fn add(&self, other: &OdometerPoint) -> Result<OdometerPoint, OdometerError> {
        if !(Arc::ptr_eq(&self.base, &other.base) || self.base == other.base) {
            return Err(OdometerError::BaseMismatch);
        }
        let depth = self.depth().min(other.depth());
        let digits = (0..=depth)
            .map(|n| self.base.level(n).reduce_box(&(&self.digits[n] + &other.digits[n])))
            .collect();
        Ok(OdometerPoint { base: Arc::clone(&self.base), digits })
    }
}

/// For every probe `m`: `m ∈ Z_n` exactly when adding `m` keeps `κ(a)` in the
/// cylinder `[a]_n`.
pub fn return_time_check(
    base: &Arc<OdometerBase>,
    a: &IntVector,
    n: usize,
    probes: &[IntVector],
) -> Result<bool, OdometerError> {
    let p = kappa_embed(base, a, n)?;
    for m in probes {
        let moved = kappa_embed(base, m, n)?.add(&p)?;
        let stays = moved.digits[n] == p.digits[n];
        if stays != base.level(n).contains(m) {
            return Ok(false);
        }
    }
    Ok(true)
}
