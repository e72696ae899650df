use serde::{Deserialize, Serialize};

use crate::intlat::{enumerate_subgroups, hnf, is_expansion, HnfBasis, IntMatrix};

use super::OdometerError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseKind {
    /// `Z_n = L^n(Z^d)` for an expansion `L`.
    Constant { l: IntMatrix },
    /// An explicit nested chain of finite-index subgroups.
    Chain,
}

/// The decreasing sequence `Z^d = Z_0 >= Z_1 >= ... >= Z_N`, truncated at a
/// finite depth `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdometerBase {
    pub kind: BaseKind,
    levels: Vec<HnfBasis>,
}

impl OdometerBase {
    pub fn constant(l: &IntMatrix, depth: usize) -> Result<Self, OdometerError> {
        if !l.is_square() {
            return Err(OdometerError::NotExpansion(l.to_string()));
        }
        if !is_expansion(l) {
            return Err(OdometerError::NotExpansion(l.to_string()));
        }
        let d = l.dim();
        let mut power = IntMatrix::identity(d);
        let mut levels = Vec::with_capacity(depth + 1);
        for _ in 0..=depth {
            levels.push(hnf(&power)?);
            power = &power * l;
        }
        Ok(OdometerBase { kind: BaseKind::Constant { l: l.clone() }, levels })
    }

    /// A chain given level by level; must start at `Z^d` and be nested.
    pub fn chain(levels: Vec<HnfBasis>) -> Result<Self, OdometerError> {
        let first = levels.first().ok_or(OdometerError::EmptyChain)?;
        if !first.is_identity() {
            return Err(OdometerError::NotNested(0));
        }
        for (n, w) in levels.windows(2).enumerate() {
            if !w[1].is_sublattice_of(&w[0]) {
                return Err(OdometerError::NotNested(n + 1));
            }
        }
        Ok(OdometerBase { kind: BaseKind::Chain, levels })
    }

    pub fn dim(&self) -> usize {
        self.levels[0].dim()
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &HnfBasis {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[HnfBasis] {
        &self.levels
    }

    pub fn expansion(&self) -> Option<&IntMatrix> {
        match &self.kind {
            BaseKind::Constant { l } => Some(l),
            BaseKind::Chain => None,
        }
    }

    /// Least `m <= depth` with `M Z_m <= Z_n`, if the truncated chain has one.
    pub fn chain_witness(&self, m: &IntMatrix, n: usize) -> Option<usize> {
        let target = &self.levels[n];
        self.levels.iter().position(|lvl| {
            let image = m * lvl.matrix();
            (0..image.cols()).all(|j| target.contains(&image.column(j)))
        })
    }

    /// Levels `n` whose normalizer condition is decidable inside the truncated
    /// chain for every matrix, i.e. `Z_N <= [Z^d : Z_n] Z^d`.
    pub fn certifiable_levels(&self) -> usize {
        let last = self.levels.last().expect("non-empty");
        let d = self.dim();
        (0..=self.depth())
            .take_while(|&n| {
                let k = self.levels[n].index();
                let scaled = hnf(&IntMatrix::scalar(d, &k)).expect("non-zero scalar");
                last.is_sublattice_of(&scaled)
            })
            .count()
    }
}

/// `Lambda_0 = Gamma_0`, `Lambda_n = Lambda_{n-1} ∩ Gamma_n` over all
/// subgroups of index at most `max_index`; repeated levels are dropped.
pub fn universal_chain(max_index: u64, d: usize) -> Result<OdometerBase, OdometerError> {
    let gammas = enumerate_subgroups(d, max_index);
    let mut levels: Vec<HnfBasis> = Vec::new();
    for g in gammas {
        let next = match levels.last() {
            None => g,
            Some(prev) => prev.intersect(&g)?,
        };
        if levels.last() != Some(&next) {
            levels.push(next);
        }
    }
    OdometerBase::chain(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rank_one_universal_chain() {
        let base = universal_chain(3, 1).unwrap();
        let idx: Vec<BigInt> = base.levels().iter().map(HnfBasis::index).collect();
        assert_eq!(idx, [1, 2, 6].map(BigInt::from));
    }

    #[test]
    fn rejects_non_expansion() {
        assert!(OdometerBase::constant(&IntMatrix::from([[1, 1], [0, 1]]), 3).is_err());
    }
}
