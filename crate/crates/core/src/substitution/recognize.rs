use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::intlat::IntVector;

use super::{cube, Letter, SubstError, Substitution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognizabilityReport {
    pub n: usize,
    pub radius: i64,
    pub seeds_checked: usize,
    pub positions_checked: usize,
    /// `(a, b)` with equal patterns on `a + F_n`, `b + F_n` but `a ≢ b mod L^n`.
    pub counterexample: Option<(IntVector, IntVector)>,
}

impl RecognizabilityReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For every fixed point and all non-zero `a, b` in `[-radius, radius]^d`:
/// `x|_{a+F_n} = x|_{b+F_n}` forces `a ≡ b mod L^n(Z^d)`.
pub fn recognizability_check(s: &mut Substitution, n: usize, radius: i64) -> Result<RecognizabilityReport, SubstError> {
    let window: Vec<IntVector> = cube(s.dim(), -radius, radius).into_iter().filter(|v| !v.is_zero()).collect();
    let fnn = s.support(n)?.to_vec();
    let lattice = s.level_lattice(n);
    let seeds = s.fixed_point_seeds();
    for seed in &seeds {
        let mut groups: HashMap<Vec<Letter>, (IntVector, IntVector)> = HashMap::new();
        for a in &window {
            let pts: Vec<IntVector> = fnn.iter().map(|f| a + f).collect();
            let patch = s.fixed_point_patch(seed, &pts)?;
            let key: Vec<Letter> = pts.iter().map(|u| patch[u].clone()).collect();
            let residue = lattice.reduce_box(a);
            match groups.get(&key) {
                Some((b, r)) if *r != residue => {
                    return Ok(RecognizabilityReport {
                        n,
                        radius,
                        seeds_checked: seeds.len(),
                        positions_checked: window.len(),
                        counterexample: Some((b.clone(), a.clone())),
                    });
                }
                Some(_) => {}
                None => {
                    groups.insert(key, (a.clone(), residue));
                }
            }
        }
    }
    Ok(RecognizabilityReport { n, radius, seeds_checked: seeds.len(), positions_checked: window.len(), counterexample: None })
}
