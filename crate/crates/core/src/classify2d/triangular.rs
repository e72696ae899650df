//! Expansions with integer spectrum, analysed in a basis where they are upper
//! triangular.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::intlat::number::{ext_gcd, mod_inverse, radical_divides};
use crate::intlat::{integer_eigenvalues, IntMatrix};

/// Which divisibility pattern the diagonal `(p, s)` of the triangular form follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangularCase {
    /// `rad(s) | p`, `rad(p) ∤ s`: one linear relation on the entries.
    SecondDividesFirst,
    /// `rad(p) | s`, `rad(s) ∤ p`: lower-left entry vanishes.
    FirstDividesSecond,
    /// Neither radical divides the other: the centralizer.
    Neither,
}

/// `T = P^{-1} L P` upper triangular with `P` unimodular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adapted {
    pub basis: IntMatrix,
    pub triangular: IntMatrix,
}

impl Adapted {
    pub fn p(&self) -> &BigInt {
        self.triangular.get(0, 0)
    }
    pub fn q(&self) -> &BigInt {
        self.triangular.get(0, 1)
    }
    pub fn s(&self) -> &BigInt {
        self.triangular.get(1, 1)
    }

    /// `P^{-1} M P`.
    pub fn to_adapted(&self, m: &IntMatrix) -> IntMatrix {
        let inv = self.basis.inverse_unimodular().expect("adapted basis is unimodular");
        &(&inv * m) * &self.basis
    }

    /// `P M P^{-1}`.
    pub fn from_adapted(&self, m: &IntMatrix) -> IntMatrix {
        self.basis.conjugate(m).expect("adapted basis is unimodular")
    }

    pub fn case(&self) -> TriangularCase {
        let (p, s) = (self.p(), self.s());
        match (radical_divides(p, s), radical_divides(s, p)) {
            (false, true) => TriangularCase::SecondDividesFirst,
            (true, false) => TriangularCase::FirstDividesSecond,
            _ => TriangularCase::Neither,
        }
    }
}

/// Unimodular triangularization. Upper triangular input is kept as is, lower
/// triangular input is flipped by the swap, otherwise the primitive
/// eigenvector of the smaller eigenvalue is completed to a basis.
pub fn triangularize(l: &IntMatrix) -> Option<Adapted> {
    let eig = integer_eigenvalues(l);
    if eig.len() != 2 {
        return None;
    }
    if l.is_upper_triangular() {
        return Some(Adapted { basis: IntMatrix::identity(2), triangular: l.clone() });
    }
    if l.is_lower_triangular() {
        let j = IntMatrix::from([[0, 1], [1, 0]]);
        let t = &(&j * l) * &j;
        return Some(Adapted { basis: j, triangular: t });
    }
    let t1 = &eig[0];
    // first row of L - t1 Id is (p - t1, q) with q != 0
    let (a, b) = (l.get(0, 1).clone(), t1 - l.get(0, 0));
    let g = a.gcd(&b);
    let (mut a, mut b) = (a / &g, b / &g);
    if a.is_negative() || (a.is_zero() && b.is_negative()) {
        a = -a;
        b = -b;
    }
    let (_, u, v) = ext_gcd(&a, &b);
    // a u + b v = 1, so [[a, -v], [b, u]] has determinant 1
    let basis = IntMatrix::from_rows(vec![vec![a, -v], vec![b, u]]);
    let inv = basis.inverse_unimodular().expect("determinant one");
    let t = &(&inv * l) * &basis;
    debug_assert!(t.is_upper_triangular());
    Some(Adapted { basis, triangular: t })
}

/// The relation `(p-s)^2 m12 = m21 q^2 + (p-s)(m11-m22) q` on the adapted entries.
pub fn relation_holds(t: &IntMatrix, m: &IntMatrix) -> bool {
    let (p, q, s) = (t.get(0, 0), t.get(0, 1), t.get(1, 1));
    let ps = p - s;
    let (m11, m12, m21, m22) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    &ps * &ps * m12 == m21 * q * q + &ps * (m11 - m22) * q
}

/// `P = [[e, f], [g, h]]` with `g = (p-s)/c`, `h = q/c`, `c = gcd(p-s, q)`,
/// `eh - gf = 1` and `e` the least non-negative choice. Conjugating by `P`
/// turns the relation group into the upper-triangular unimodular matrices.
pub fn bezout_conjugator(t: &IntMatrix) -> IntMatrix {
    let (p, q, s) = (t.get(0, 0), t.get(0, 1), t.get(1, 1));
    let ps = p - s;
    let c = ps.gcd(q);
    let (g, h) = (&ps / &c, q / &c);
    let e = if g.abs().is_one() {
        BigInt::zero()
    } else {
        mod_inverse(&h, &g.abs()).expect("g and h are coprime")
    };
    let f = (&e * &h - 1) / &g;
    IntMatrix::from_rows(vec![vec![e, f], vec![g, h]])
}

/// `k` with `q = k (p - s)`, when it exists and `q != 0`.
pub fn family_parameter(t: &IntMatrix) -> Option<BigInt> {
    let (p, q, s) = (t.get(0, 0), t.get(0, 1), t.get(1, 1));
    let ps = p - s;
    if q.is_zero() || !q.is_multiple_of(&ps) {
        return None;
    }
    Some(q / ps)
}

/// The four one-parameter families for `q = k (p - s)`, at parameter `m`.
pub fn family_members(k: &BigInt, m: &BigInt) -> [IntMatrix; 4] {
    let mk = m * k;
    let mkk = &mk * k;
    let one = BigInt::one();
    let row = |a: BigInt, b: BigInt, c: BigInt, d: BigInt| IntMatrix::from_rows(vec![vec![a, b], vec![c, d]]);
    [
        row(&one - &mk, -&mkk, m.clone(), &one + &mk),
        row(&one - &mk, k * 2 - &mkk, m.clone(), &mk - &one),
        row(-&one - &mk, -(k * BigInt::from(2)) - &mkk, m.clone(), &one + &mk),
        row(-&one - &mk, -&mkk, m.clone(), &mk - &one),
    ]
}

/// Elements `A = [[1, 2q/(p-s)], [0, -1]]` and `-A` completing `{±Id}` to a
/// Klein four-group, when `2q ∈ (p-s)Z`.
pub fn klein_partner(t: &IntMatrix) -> Option<IntMatrix> {
    let (p, q, s) = (t.get(0, 0), t.get(0, 1), t.get(1, 1));
    let ps = p - s;
    let two_q: BigInt = q * 2;
    two_q.is_multiple_of(&ps).then(|| {
        IntMatrix::from_rows(vec![vec![BigInt::one(), two_q / ps], vec![BigInt::zero(), BigInt::from(-1)]])
    })
}
