use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::number::{exact_sqrt, factorize};
use super::IntMatrix;

/// Characteristic polynomial `det(x Id - A)` as coefficients `c[0..=d]`,
/// constant term first, monic. Faddeev-LeVerrier, all divisions exact.
pub fn char_poly(a: &IntMatrix) -> Vec<BigInt> {
    let d = a.dim();
    let mut c = vec![BigInt::zero(); d + 1];
    c[d] = BigInt::one();
    let mut m = IntMatrix::zero(d, d);
    for k in 1..=d {
        m = &(a * &m) + &IntMatrix::scalar(d, &c[d + 1 - k]);
        let am = a * &m;
        c[d - k] = -(am.trace() / BigInt::from(k));
    }
    c
}

/// Every complex eigenvalue of `L` has modulus strictly greater than one.
///
/// Runs the Schur-Cohn recursion on the reversed characteristic polynomial,
/// whose roots are the inverse eigenvalues.
pub fn is_expansion(l: &IntMatrix) -> bool {
    let c = char_poly(l);
    if c[0].is_zero() {
        return false;
    }
    let mut a: Vec<BigInt> = c.into_iter().rev().collect();
    while a.len() > 1 {
        let n = a.len() - 1;
        if a[0].abs() >= a[n].abs() {
            return false;
        }
        let next: Vec<BigInt> = (0..n).map(|j| &a[n] * &a[j + 1] - &a[0] * &a[n - 1 - j]).collect();
        a = next;
    }
    true
}

/// Closed form of [`is_expansion`] for `2 x 2`. Complex roots: `det > 1`.
/// Real roots: either `f(1) < 0` and `f(-1) < 0` (one root on each side of
/// `[-1, 1]`), or `f(1) > 0`, `f(-1) > 0` and `|tr| >= 2`.
pub fn is_expansion_2x2(tr: &BigInt, det: &BigInt) -> bool {
    let disc: BigInt = tr * tr - det * 4;
    if disc.is_negative() {
        return *det > BigInt::one();
    }
    let one = BigInt::one();
    let (at_one, at_minus_one): (BigInt, BigInt) = (&one - tr + det, &one + tr + det);
    let straddles = at_one.is_negative() && at_minus_one.is_negative();
    let same_side = at_one.is_positive() && at_minus_one.is_positive() && tr.abs() >= BigInt::from(2);
    straddles || same_side
}

/// Integer roots of the characteristic polynomial, with multiplicity, ascending.
pub fn integer_eigenvalues(l: &IntMatrix) -> Vec<BigInt> {
    if l.dim() == 2 {
        let tr = l.trace();
        let det = l.det();
        let disc = &tr * &tr - &det * 4;
        let Some(s) = exact_sqrt(&disc) else {
            return Vec::new();
        };
        if (&tr + &s).is_odd() {
            return Vec::new();
        }
        return vec![(&tr - &s) / 2, (&tr + &s) / 2];
    }
    let mut poly = char_poly(l);
    let mut roots = Vec::new();
    while poly.len() > 1 && poly[0].is_zero() {
        roots.push(BigInt::zero());
        poly.remove(0);
    }
    if poly.len() > 1 {
        let mut candidates = vec![BigInt::one()];
        for (p, e) in factorize(&poly[0]) {
            let mut more = Vec::new();
            for c in &candidates {
                let mut pk = BigInt::one();
                for _ in 0..=e {
                    more.push(c * &pk);
                    pk *= &p;
                }
            }
            candidates = more;
        }
        for c in candidates {
            for r in [c.clone(), -c] {
                while poly.len() > 1 {
                    match synthetic_division(&poly, &r) {
                        Some(q) => {
                            roots.push(r.clone());
                            poly = q;
                        }
                        None => break,
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn synthetic_division(poly: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let n = poly.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut acc = BigInt::zero();
    for i in (1..=n).rev() {
        acc = &acc * r + &poly[i];
        q[i - 1] = acc.clone();
    }
    (&acc * r + &poly[0]).is_zero().then_some(q)
}

/// Discriminant `tr^2 - 4 det` of a `2 x 2` matrix.
pub fn discriminant_2x2(l: &IntMatrix) -> BigInt {
    let tr = l.trace();
    &tr * &tr - l.det() * 4
}

/// Largest exponent of any prime in `|n|`.
pub fn max_valuation(n: &BigInt) -> u32 {
    factorize(n).into_iter().map(|(_, e)| e).max().unwrap_or(0)
}

/// `n` is divisible by `m` (with `0 | 0`).
pub fn divides(m: &BigInt, n: &BigInt) -> bool {
    if m.is_zero() {
        n.is_zero()
    } else {
        n.is_multiple_of(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn char_poly_2x2_and_3x3() {
        let l = IntMatrix::from([[2, -1], [1, 3]]);
        assert_eq!(char_poly(&l), vec![b(7), b(-5), b(1)]);
        let m = IntMatrix::from_rows_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 4]]);
        let c = char_poly(&m);
        assert_eq!(c[3], b(1));
        assert_eq!(c[2], -m.trace());
        assert_eq!(c[0], -m.det());
    }

    #[test]
    fn expansions() {
        assert!(is_expansion(&IntMatrix::from([[2, 0], [0, 2]])));
        assert!(!is_expansion(&IntMatrix::from([[1, 1], [0, 1]])));
        assert!(!is_expansion(&IntMatrix::from([[2, 1], [1, 1]])));
        assert!(is_expansion(&IntMatrix::from([[0, 2], [1, 0]])));
        assert!(is_expansion(&IntMatrix::from([[1, -1], [1, 1]])));
        assert!(!is_expansion(&IntMatrix::from([[0, -1], [1, 0]])));
        assert!(is_expansion(&IntMatrix::from_rows_i64(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]])));
        assert!(!is_expansion(&IntMatrix::from_rows_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 1]])));
    }

    #[test]
    fn closed_form_cases() {
        // (tr, det, expected): complex, same-side real, opposite-sign real, unit root
        for (tr, det, want) in [(5, 7, true), (1, 1, false), (5, 6, true), (3, 2, false), (0, -6, true), (1, -6, true), (0, -1, false), (2, -3, false)] {
            assert_eq!(is_expansion_2x2(&b(tr), &b(det)), want, "tr {tr} det {det}");
        }
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(integer_eigenvalues(&IntMatrix::from([[3, 1], [0, 5]])), vec![b(3), b(5)]);
        assert!(integer_eigenvalues(&IntMatrix::from([[2, -1], [1, 5]])).is_empty());
        assert_eq!(integer_eigenvalues(&IntMatrix::from([[2, 1], [0, 2]])), vec![b(2), b(2)]);
        let m = IntMatrix::from_rows_i64(&[&[2, 0, 0], &[1, -3, 0], &[4, 5, 2]]);
        assert_eq!(integer_eigenvalues(&m), vec![b(-3), b(2), b(2)]);
    }
}
