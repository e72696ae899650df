//! Square matrices modulo `N`, with a `u128` fast path for moduli below 2^60.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::intlat::IntMatrix;

const SMALL_LIMIT: u128 = 1 << 60;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    Small(Vec<u128>),
    Big(Vec<BigUint>),
}

#[derive(Clone, Debug)]
pub(crate) struct ModRing {
    d: usize,
    modulus: BigInt,
    small: Option<u128>,
    big: BigUint,
}

impl ModRing {
    pub(crate) fn new(d: usize, modulus: &BigInt) -> Self {
        let big = modulus.magnitude().clone();
        let small = big.to_u128().filter(|&m| m < SMALL_LIMIT);
        ModRing { d, modulus: modulus.clone(), small, big }
    }

    pub(crate) fn lift(&self, m: &IntMatrix) -> Entries {
        let reduced = m.entries().iter().map(|x| x.mod_floor(&self.modulus));
        match self.small {
            Some(_) => Entries::Small(reduced.map(|x| x.to_u128().expect("reduced residue fits")).collect()),
            None => Entries::Big(
                reduced
                    .map(|x| x.to_biguint().expect("reduced residue is non-negative"))
                    .collect(),
            ),
        }
    }

    pub(crate) fn identity(&self) -> Entries {
        self.lift(&IntMatrix::identity(self.d))
    }

    pub(crate) fn mul(&self, a: &Entries, b: &Entries) -> Entries {
        let d = self.d;
        match (a, b) {
            (Entries::Small(a), Entries::Small(b)) => {
                let n = self.small.expect("small ring");
                let mut out = vec![0u128; d * d];
                for i in 0..d {
                    for j in 0..d {
                        let mut acc = 0u128;
                        for k in 0..d {
                            acc = (acc + a[i * d + k] * b[k * d + j]) % n;
                        }
                        out[i * d + j] = acc;
                    }
                }
                Entries::Small(out)
            }
            (Entries::Big(a), Entries::Big(b)) => {
                let mut out = vec![BigUint::zero(); d * d];
                for i in 0..d {
                    for j in 0..d {
                        let mut acc = BigUint::zero();
                        for k in 0..d {
                            acc += &a[i * d + k] * &b[k * d + j];
                        }
                        out[i * d + j] = acc % &self.big;
                    }
                }
                Entries::Big(out)
            }
            _ => unreachable!("mixed residue representations"),
        }
    }

    pub(crate) fn pow(&self, a: &Entries, mut e: u64) -> Entries {
        let mut base = a.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub(crate) fn to_matrix(&self, a: &Entries) -> IntMatrix {
        let data = match a {
            Entries::Small(v) => v.iter().map(|&x| BigInt::from(x)).collect(),
            Entries::Big(v) => v.iter().map(|x| BigInt::from_biguint(Sign::Plus, x.clone())).collect(),
        };
        IntMatrix::new(self.d, self.d, data)
    }
}

impl Entries {
    pub(crate) fn is_zero(&self) -> bool {
        match self {
            Entries::Small(v) => v.iter().all(|&x| x == 0),
            Entries::Big(v) => v.iter().all(Zero::is_zero),
        }
    }
}
