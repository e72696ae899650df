use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::intlat::number::exact_sqrt;
use crate::intlat::IntMatrix;

use super::pell::{canonical_generator, fundamental_pm4};
use super::ClassifyError;

/// The integral centralizer `{M ∈ GL(2,Z) : ML = LM}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CentralizerGroup {
    /// `L` is scalar.
    Whole,
    Finite { elements: Vec<IntMatrix> },
    /// `{±Id} × <automorph>`.
    Infinite { torsion: IntMatrix, automorph: IntMatrix },
}

impl CentralizerGroup {
    pub fn is_finite(&self) -> bool {
        matches!(self, CentralizerGroup::Finite { .. })
    }

    pub fn generators(&self) -> Vec<IntMatrix> {
        match self {
            CentralizerGroup::Whole => vec![
                IntMatrix::from([[0, 1], [1, 0]]),
                IntMatrix::from([[1, 1], [0, 1]]),
                IntMatrix::from([[-1, 0], [0, 1]]),
            ],
            CentralizerGroup::Finite { elements } => elements.clone(),
            CentralizerGroup::Infinite { torsion, automorph } => vec![torsion.clone(), automorph.clone()],
        }
    }
}

/// Integral commutant of a non-scalar `L`: `Z·Id ⊕ Z·N` with
/// `N = (L - p Id) / gcd(q, r, p - s)`.
pub(crate) fn commutant_generator(l: &IntMatrix) -> Option<IntMatrix> {
    let (p, q, r, s) = (l.get(0, 0), l.get(0, 1), l.get(1, 0), l.get(1, 1));
    let g = q.gcd(r).gcd(&(p - s));
    if g.is_zero() {
        return None;
    }
    let shifted = l - &IntMatrix::scalar(2, p);
    Some(shifted.div_exact(&g).expect("gcd divides every entry"))
}

/// Unimodular matrices commuting with `L`.
pub fn centralizer(l: &IntMatrix) -> Result<CentralizerGroup, ClassifyError> {
    if l.rows() != 2 || l.cols() != 2 {
        return Err(ClassifyError::NotTwoByTwo);
    }
    let Some(n) = commutant_generator(l) else {
        return Ok(CentralizerGroup::Whole);
    };
    // det(x Id + y N) = x^2 + b x y + c y^2
    let b = n.trace();
    let c = n.det();
    let delta: BigInt = &b * &b - &c * 4;
    let build = |x: &BigInt, y: &BigInt| &IntMatrix::scalar(2, x) + &n.scale(y);
    let minus = IntMatrix::scalar(2, &BigInt::from(-1));
    if delta.is_negative() {
        // 4 det = (2x + b y)^2 + |delta| y^2 = 4
        let bound = (BigInt::from(4) / -&delta).sqrt();
        let mut elements = Vec::new();
        let mut y = -&bound;
        while y <= bound {
            let rest = BigInt::from(4) + &delta * &y * &y;
            if let Some(root) = exact_sqrt(&rest) {
                for t in [root.clone(), -&root] {
                    let num = &t - &b * &y;
                    if num.is_even() {
                        let m = build(&(num / 2), &y);
                        if !elements.contains(&m) {
                            elements.push(m);
                        }
                    }
                }
            }
            y += 1;
        }
        elements.sort();
        return Ok(CentralizerGroup::Finite { elements });
    }
    if delta.is_zero() {
        // b even; det = (x + b y / 2)^2, so x = 1 - b y / 2 gives a unipotent family.
        let gen = build(&(BigInt::one() - &b / 2), &BigInt::one());
        return Ok(CentralizerGroup::Infinite { torsion: minus, automorph: gen });
    }
    if let Some(k) = exact_sqrt(&delta) {
        // 4 det = u v with u = 2x + (b - k) y, v = 2x + (b + k) y
        let mut elements = Vec::new();
        for u in [1i64, 2, 4, -1, -2, -4] {
            for target in [4i64, -4] {
                if target % u != 0 {
                    continue;
                }
                let (u, v) = (BigInt::from(u), BigInt::from(target / u));
                let diff = &v - &u;
                if !diff.is_multiple_of(&(&k * 2)) {
                    continue;
                }
                let y = diff / (&k * 2);
                let num: BigInt = &u - (&b - &k) * &y;
                if num.is_even() {
                    let m = build(&(num / 2), &y);
                    if m.is_unimodular() && !elements.contains(&m) {
                        elements.push(m);
                    }
                }
            }
        }
        elements.sort();
        return Ok(CentralizerGroup::Finite { elements });
    }
    let (g, yy) = fundamental_pm4(&delta);
    let eps = build(&((&g - &yy * &b) / 2), &yy);
    Ok(CentralizerGroup::Infinite { torsion: minus, automorph: canonical_generator(&eps) })
}
