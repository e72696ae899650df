use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Prime factorisation of `|n|` by trial division. `n = 0` yields no factors.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut e = 0;
            while n.is_multiple_of(&p) {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Product of the distinct primes dividing `n` (so `rad(±1) = 1`, `rad(0) = 0`).
pub fn radical(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    factorize(n).into_iter().map(|(p, _)| p).product()
}

/// `rad(a)` divides `b`.
pub fn radical_divides(a: &BigInt, b: &BigInt) -> bool {
    let r = radical(a);
    !r.is_zero() && b.is_multiple_of(&r)
}

/// Exact square root of a non-negative perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of `a` modulo `m > 1`, if it exists, in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(&a.mod_floor(m), m);
    g.is_one().then(|| x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn radicals() {
        assert_eq!(radical(&b(12)), b(6));
        assert_eq!(radical(&b(-7)), b(7));
        assert_eq!(radical(&b(1)), b(1));
        assert_eq!(radical(&b(0)), b(0));
        assert_eq!(radical(&b(9)), b(3));
        assert!(radical_divides(&b(11), &b(0)));
        assert!(!radical_divides(&b(11), &b(7)));
    }

    #[test]
    fn factorization_roundtrip() {
        for n in 1..500i64 {
            let f = factorize(&b(n));
            let back: BigInt = f.iter().map(|(p, e)| num_traits::pow(p.clone(), *e as usize)).product();
            assert_eq!(back, b(n));
        }
    }

    #[test]
    fn ext_gcd_signs() {
        let (g, x, y) = ext_gcd(&b(-4), &b(6));
        assert_eq!(g, b(2));
        assert_eq!(b(-4) * x + b(6) * y, b(2));
        assert_eq!(mod_inverse(&b(3), &b(7)), Some(b(5)));
        assert_eq!(mod_inverse(&b(2), &b(4)), None);
    }
}
