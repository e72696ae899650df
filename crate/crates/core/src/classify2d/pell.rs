use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::intlat::number::exact_sqrt;
use crate::intlat::IntMatrix;

use super::ClassifyError;

/// A unit `x + y·λ` of the order `Z[λ]`, where `λ^2 = tr·λ - det`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticUnit {
    #[serde(with = "crate::intlat::bigint_serde")]
    pub x: BigInt,
    #[serde(with = "crate::intlat::bigint_serde")]
    pub y: BigInt,
    #[serde(with = "crate::intlat::bigint_serde")]
    pub tr: BigInt,
    #[serde(with = "crate::intlat::bigint_serde")]
    pub det: BigInt,
}

impl QuadraticUnit {
    /// `x Id + y A`, for any `A` with the same trace and determinant.
    pub fn matrix_for(&self, a: &IntMatrix) -> IntMatrix {
        &IntMatrix::scalar(2, &self.x) + &a.scale(&self.y)
    }

    /// `x Id + y C` for the companion matrix `C = [[0, -det], [1, tr]]`.
    pub fn companion_matrix(&self) -> IntMatrix {
        let c = IntMatrix::from_rows(vec![
            vec![BigInt::zero(), -&self.det],
            vec![BigInt::one(), self.tr.clone()],
        ]);
        self.matrix_for(&c)
    }

    /// Norm `x^2 + tr·x·y + det·y^2`, which is `±1`.
    pub fn norm(&self) -> BigInt {
        &self.x * &self.x + &self.tr * &self.x * &self.y + &self.det * &self.y * &self.y
    }
}

/// Fundamental solution `(G, B)`, both positive, of `G^2 - D B^2 = ±4`,
/// from the continued fraction of `(P0 + sqrt D) / 2`.
pub(crate) fn fundamental_pm4(d: &BigInt) -> (BigInt, BigInt) {
    let s = d.sqrt();
    let q0 = BigInt::from(2);
    let p0 = if d.is_odd() { BigInt::one() } else { BigInt::zero() };
    let (mut p, mut q) = (p0.clone(), q0.clone());
    let (mut g2, mut g1) = (-p0, q0.clone());
    let (mut b2, mut b1) = (BigInt::one(), BigInt::zero());
    loop {
        let a = if q.is_positive() { (&p + &s).div_floor(&q) } else { (&p + &s + BigInt::one()).div_floor(&q) };
        let g = &a * &g1 + &g2;
        let b = &a * &b1 + &b2;
        let p_next = &a * &q - &p;
        let q_next = (d - &p_next * &p_next) / &q;
        if q_next == q0 {
            return (g, b);
        }
        (g2, g1, b2, b1, p, q) = (g1, g, b1, b, p_next, q_next);
    }
}

/// Fundamental unit of `Z[λ]`, `λ^2 - tr·λ + det = 0`, for a positive
/// non-square discriminant. Among `±ε^{±1}` the one whose companion matrix
/// has the smallest largest entry is returned; ties prefer the larger trace,
/// then the lexicographically larger entries.
pub fn pell_fundamental_automorph(tr: &BigInt, det: &BigInt) -> Result<QuadraticUnit, ClassifyError> {
    let disc = tr * tr - det * 4;
    if exact_sqrt(&disc).is_some() {
        return Err(ClassifyError::PerfectSquareDiscriminant(disc.to_string()));
    }
    if disc.is_negative() {
        return Err(ClassifyError::NotRealQuadratic(disc.to_string()));
    }
    let (g, b) = fundamental_pm4(&disc);
    let x = (&g - &b * tr) / 2;
    let eps = QuadraticUnit { x, y: b, tr: tr.clone(), det: det.clone() };
    // x Id + y C = [[x, -y det], [y, x + y tr]]
    let best = canonical_generator(&eps.companion_matrix());
    Ok(QuadraticUnit { x: best.get(0, 0).clone(), y: best.get(1, 0).clone(), tr: tr.clone(), det: det.clone() })
}

/// The preferred one of `±E^{±1}` for an infinite-order unimodular `E`.
pub fn canonical_generator(e: &IntMatrix) -> IntMatrix {
    let inv = e.inverse_unimodular().expect("unit matrices are unimodular");
    let mut cands = vec![e.clone(), -e, inv.clone(), -&inv];
    cands.sort_by(|a, b| {
        a.max_abs_entry()
            .cmp(&b.max_abs_entry())
            .then_with(|| b.trace().cmp(&a.trace()))
            .then_with(|| b.entries().cmp(a.entries()))
    });
    cands.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Smallest positive solution of `x^2 - D y^2 = ±4` by direct search.
    fn brute_pm4(d: i64) -> (i64, i64) {
        for y in 1..1_000_000i64 {
            let t = d * y * y;
            for target in [t - 4, t + 4] {
                if let Some(x) = exact_sqrt(&b(target)) {
                    if x > BigInt::zero() {
                        return (i64::try_from(x).unwrap(), y);
                    }
                }
            }
        }
        panic!("no solution for D = {d}")
    }

    #[test]
    fn continued_fraction_matches_search() {
        for d in 5..200i64 {
            if d % 4 == 2 || d % 4 == 3 || exact_sqrt(&b(d)).is_some() {
                continue;
            }
            let (g, bb) = fundamental_pm4(&b(d));
            assert_eq!((g, bb), (b(brute_pm4(d).0), b(brute_pm4(d).1)), "D = {d}");
        }
    }

    #[test]
    fn golden_ratio_unit() {
        let u = pell_fundamental_automorph(&b(3), &b(1)).unwrap();
        assert!(u.norm().abs().is_one());
        let m = u.companion_matrix();
        assert!(m.is_unimodular());
        assert_eq!(m.max_abs_entry(), b(2));
    }

    #[test]
    fn unit_commutes_with_matching_matrix() {
        let l = IntMatrix::from([[2, -1], [1, 5]]);
        let u = pell_fundamental_automorph(&b(7), &b(11)).unwrap();
        let m = u.matrix_for(&l);
        assert!(m.is_unimodular());
        assert_eq!(&m * &l, &l * &m);
        assert!(!m.is_identity() && !(-&m).is_identity());
    }

    #[test]
    fn square_discriminant_rejected() {
        assert_eq!(
            pell_fundamental_automorph(&b(4), &b(4)),
            Err(ClassifyError::PerfectSquareDiscriminant("0".into()))
        );
        assert!(matches!(
            pell_fundamental_automorph(&b(5), &b(4)),
            Err(ClassifyError::PerfectSquareDiscriminant(_))
        ));
        assert!(matches!(pell_fundamental_automorph(&b(1), &b(1)), Err(ClassifyError::NotRealQuadratic(_))));
    }
}
