use num_bigint::BigInt;

use super::hnf::{hnf, HnfBasis};
use super::IntMatrix;

/// Every subgroup of `Z^d` of index at most `max_index`, as HNF bases,
/// ordered by index and then by matrix entries.
pub fn enumerate_subgroups(d: usize, max_index: u64) -> Vec<HnfBasis> {
    let mut out = Vec::new();
    let mut diag = Vec::with_capacity(d);
    diagonals(d, max_index, &mut diag, &mut |diag: &[u64]| {
        let mut m = IntMatrix::zero(d, d);
        for (i, &x) in diag.iter().enumerate() {
            m.set(i, i, BigInt::from(x));
        }
        fill(&mut m, diag, 1, 0, &mut out);
    });
    out.sort_by(|a, b| a.index().cmp(&b.index()).then_with(|| a.cmp(b)));
    out
}

fn diagonals(d: usize, budget: u64, acc: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64])) {
    if acc.len() == d {
        emit(acc);
        return;
    }
    for x in 1..=budget {
        acc.push(x);
        diagonals(d, budget / x, acc, emit);
        acc.pop();
    }
}

// Fill the strictly lower part row by row; entry (i, j) ranges over [0, diag[i]).
fn fill(m: &mut IntMatrix, diag: &[u64], i: usize, j: usize, out: &mut Vec<HnfBasis>) {
    let d = diag.len();
    if i >= d {
        out.push(hnf(m).expect("triangular with positive diagonal"));
        return;
    }
    if j >= i {
        fill(m, diag, i + 1, 0, out);
        return;
    }
    for x in 0..diag[i] {
        m.set(i, j, BigInt::from(x));
        fill(m, diag, i, j + 1, out);
    }
    m.set(i, j, BigInt::from(0));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(n: u64) -> usize {
        (1..=n).filter(|k| n % k == 0).map(|k| k as usize).sum()
    }

    /// Index-`n` subgroups of `Z^2` contain `nZ^2`, so each is determined by
    /// its image in `(Z/n)^2`; count those images directly.
    fn brute_count(n: i64) -> usize {
        use std::collections::BTreeSet;
        let mut seen = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        let mut pts = BTreeSet::new();
                        for s in 0..n {
                            for t in 0..n {
                                pts.insert(((s * a + t * c) % n, (s * b + t * e) % n));
                            }
                        }
                        if pts.len() as i64 == n {
                            seen.insert(pts);
                        }
                    }
                }
            }
        }
        seen.len()
    }

    #[test]
    fn rank_one_chain() {
        let subs = enumerate_subgroups(1, 3);
        let idx: Vec<String> = subs.iter().map(|h| h.index().to_string()).collect();
        assert_eq!(idx, ["1", "2", "3"]);
    }

    #[test]
    fn counts_match_divisor_sums() {
        let subs = enumerate_subgroups(2, 8);
        for n in 1..=8u64 {
            let c = subs.iter().filter(|h| h.index() == BigInt::from(n)).count();
            assert_eq!(c, sigma(n), "index {n}");
            if n <= 6 {
                assert_eq!(c, brute_count(n as i64), "index {n}");
            }
        }
    }
}
