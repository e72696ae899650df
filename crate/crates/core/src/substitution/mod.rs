//! Constant-shape substitutions on `Z^d`, the digit substitutions built from
//! an expansion and a digit set, and their fixed points.

mod letter;
mod recognize;
mod rule;

pub use letter::{disagreements, overlap, patch_from_cells, patch_to_cells, shift_patch, Cell, Letter, Patch};
pub use recognize::{recognizability_check, RecognizabilityReport};
pub use rule::{
    cube, half_hex_digits, CoverageReport, KSetReport, Substitution, SubstitutionSpec, TableRow, MAX_SUPPORT,
};

use crate::intlat::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstError {
    #[error("{0} is not an expansion")]
    NotExpansion(String),
    #[error("digit substitutions need |det L| >= 3, got {0}")]
    DeterminantTooSmall(String),
    #[error("image of {letter} has {len} letters, expected {expected}")]
    BadImage { letter: String, len: usize, expected: usize },
    #[error("unknown letter {0}")]
    UnknownLetter(String),
    #[error("letter {0} listed twice")]
    DuplicateLetter(String),
    #[error("F_{level} would have {size} points")]
    SupportTooLarge { level: usize, size: usize },
    #[error("τ is undefined at the origin")]
    TauAtOrigin,
    #[error("operation needs a digit substitution")]
    NotDigitFamily,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::{IntMatrix, IntVector};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn hh() -> Substitution {
        Substitution::digit(&IntMatrix::scalar(2, &BigInt::from(2)), &half_hex_digits()).unwrap()
    }

    #[test]
    fn supports_of_half_hex() {
        let mut s = hh();
        assert_eq!(s.support(1).unwrap().len(), 4);
        let f2 = s.support(2).unwrap().to_vec();
        assert_eq!(f2.len(), 16);
        for n in 1..=4 {
            let f = s.support(n).unwrap().to_vec();
            let m = (1i64 << n) - 1;
            for corner in [[0, 0], [0, m], [m, 0], [m, -m]] {
                assert!(f.contains(&IntVector::from(corner)), "n={n} {corner:?}");
            }
            assert!(s.support_domain(n).is_ok());
        }
    }

    #[test]
    fn tau_examples() {
        let s = hh();
        assert_eq!(s.tau(&IntVector::from([3, 1])).unwrap(), (IntVector::from([1, -1]), 0));
        assert_eq!(s.tau(&IntVector::from([4, 0])).unwrap().1, 2);
        assert!(s.tau(&IntVector::from([0, 0])).is_err());
    }

    #[test]
    fn digit_family_needs_three_digits() {
        let l = IntMatrix::from([[2, 0], [0, 1]]);
        assert!(matches!(
            Substitution::digit(&l, &[[0, 0].into(), [1, 0].into()]),
            Err(SubstError::DeterminantTooSmall(_))
        ));
    }

    #[test]
    fn half_hex_is_the_relabelled_digit_rule() {
        let table = Substitution::half_hex();
        let digit = hh();
        let relabel = |a: &Letter| match a {
            Letter::Symbol(0) => Letter::Digit([0, 1].into()),
            Letter::Symbol(1) => Letter::Digit([1, -1].into()),
            Letter::Symbol(2) => Letter::Digit([1, 0].into()),
            _ => unreachable!(),
        };
        for a in table.alphabet() {
            for f in half_hex_digits() {
                assert_eq!(relabel(table.image(a, &f).unwrap()), *digit.image(&relabel(a), &f).unwrap());
            }
        }
        let mut p = Patch::new();
        p.insert(IntVector::zeros(2), Letter::Symbol(0));
        let twice = table.substitute(&table.substitute(&p).unwrap()).unwrap();
        assert_eq!(twice.len(), 16);
    }

    #[test]
    fn folner_values() {
        let mut s = hh();
        let e1 = [IntVector::from([1, 0])];
        assert_eq!(s.folner_defect(1, &e1).unwrap(), BigRational::new(6.into(), 4.into()));
        assert_eq!(s.folner_defect(0, &e1).unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn k_set_of_half_hex() {
        let mut s = hh();
        let k = s.k_set(4).unwrap();
        let mut want: Vec<IntVector> = vec![[0, 0].into(), [-1, 0].into(), [0, -1].into(), [-1, 1].into()];
        want.sort();
        assert_eq!(k.points, want);
        assert_eq!(k.stable_from, 1);
        let cov = s.coverage(&k.points, 6, &cube(2, -8, 8)).unwrap();
        assert!(cov.covered, "{:?}", cov.uncovered);
    }

    #[test]
    fn one_dimensional_k_set() {
        let mut s = Substitution::digit(&IntMatrix::from([[3]]), &[[0].into(), [1].into(), [2].into()]).unwrap();
        let k = s.k_set(4).unwrap();
        assert_eq!(k.points, vec![IntVector::from([-1]), IntVector::from([0])]);
    }

    #[test]
    fn fixed_point_is_invariant() {
        let s = hh();
        for seed in s.alphabet() {
            let region = cube(2, -6, 6);
            let x = s.fixed_point_patch(seed, &region).unwrap();
            let y = s.substitute(&x).unwrap();
            assert!(overlap(&x, &y) > 100);
            assert!(disagreements(&x, &y).is_empty());
        }
        assert_eq!(s.fixed_point_seeds().len(), 3);
    }

    #[test]
    fn recognizable_windows() {
        let mut s = hh();
        for n in 1..=2 {
            assert!(recognizability_check(&mut s, n, 6).unwrap().holds());
        }
    }

    #[test]
    fn spec_roundtrip() {
        let s = Substitution::half_hex();
        let js = serde_json::to_string(&s.to_spec()).unwrap();
        let back: SubstitutionSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s.to_spec());
        let d = hh();
        assert!(d.to_spec().table.is_none());
    }

    #[test]
    fn iterated_seed_is_the_fixed_point_on_supports() {
        let mut s = hh();
        for seed in s.fixed_point_seeds() {
            let it = s.iterate_seed(&seed, 3).unwrap();
            let f3 = s.support(3).unwrap().to_vec();
            assert_eq!(it, s.fixed_point_patch(&seed, &f3).unwrap());
        }
    }
}
