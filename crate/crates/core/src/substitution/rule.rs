use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::intlat::{hnf, validate_domain, FundamentalDomain, HnfBasis, IntMatrix, IntVector};

use super::{Letter, Patch, SubstError};

/// Largest `|F_n|` the support builder will materialise.
pub const MAX_SUPPORT: usize = 1 << 22;

/// A constant-shape substitution: expansion `L`, digit set `F_1` and, for
/// every letter, one letter per digit of `F_1`, so that
/// `ζ(x)_{Lj + f} = ζ(x_j)_f`.
#[derive(Clone, Debug)]
pub struct Substitution {
    l: IntMatrix,
    f1: FundamentalDomain,
    alphabet: Vec<Letter>,
    table: BTreeMap<Letter, Vec<Letter>>,
    digit_family: bool,
    supports: Vec<Vec<IntVector>>,
}

/// Serialised form: `{L, F1, table?}`; no table means the digit substitution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionSpec {
    #[serde(rename = "L")]
    pub l: IntMatrix,
    #[serde(rename = "F1")]
    pub f1: Vec<IntVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableRow>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub letter: Letter,
    pub image: Vec<Letter>,
}

impl Substitution {
    /// General rule from an explicit table; `image[i]` sits at `F1[i]`.
    pub fn new(l: &IntMatrix, f1: &[IntVector], table: BTreeMap<Letter, Vec<Letter>>) -> Result<Self, SubstError> {
        let domain = validate_domain(l, f1)?;
        if !crate::intlat::is_expansion(l) {
            return Err(SubstError::NotExpansion(l.to_string()));
        }
        let alphabet: Vec<Letter> = table.keys().cloned().collect();
        for (a, img) in &table {
            if img.len() != domain.len() {
                return Err(SubstError::BadImage { letter: a.to_string(), len: img.len(), expected: domain.len() });
            }
            if let Some(bad) = img.iter().find(|b| !table.contains_key(*b)) {
                return Err(SubstError::UnknownLetter(bad.to_string()));
            }
        }
        Ok(Substitution {
            l: l.clone(),
            f1: domain,
            alphabet,
            table,
            digit_family: false,
            supports: vec![vec![IntVector::zeros(l.dim())]],
        })
    }

    /// The digit substitution: letters `F1 \ {0}`, `σ(a)_0 = a` and
    /// `σ(a)_f = f` for `f != 0`. Needs `|det L| >= 3`.
    pub fn digit(l: &IntMatrix, f1: &[IntVector]) -> Result<Self, SubstError> {
        let domain = validate_domain(l, f1)?;
        if domain.abs_det() < BigInt::from(3) {
            return Err(SubstError::DeterminantTooSmall(domain.abs_det().to_string()));
        }
        let letters: Vec<Letter> = f1.iter().filter(|f| !f.is_zero()).cloned().map(Letter::Digit).collect();
        let mut table = BTreeMap::new();
        for a in &letters {
            let img = f1
                .iter()
                .map(|f| if f.is_zero() { a.clone() } else { Letter::Digit(f.clone()) })
                .collect();
            table.insert(a.clone(), img);
        }
        let mut s = Self::new(l, f1, table)?;
        s.digit_family = true;
        Ok(s)
    }

    /// The half-hex rule on `L = 2 Id` with symbols 0, 1, 2.
    pub fn half_hex() -> Self {
        let l = IntMatrix::scalar(2, &BigInt::from(2));
        let f1 = half_hex_digits();
        let mut table = BTreeMap::new();
        for a in 0..3u32 {
            // F1 order: (0,0), (1,0), (0,1), (1,-1)
            let img = [a, 2, 0, 1].map(Letter::Symbol).to_vec();
            table.insert(Letter::Symbol(a), img);
        }
        Self::new(&l, &f1, table).expect("half-hex table is valid")
    }

    pub fn from_spec(spec: &SubstitutionSpec) -> Result<Self, SubstError> {
        match &spec.table {
            None => Self::digit(&spec.l, &spec.f1),
            Some(rows) => {
                let mut table = BTreeMap::new();
                for r in rows {
                    if table.insert(r.letter.clone(), r.image.clone()).is_some() {
                        return Err(SubstError::DuplicateLetter(r.letter.to_string()));
                    }
                }
                Self::new(&spec.l, &spec.f1, table)
            }
        }
    }

    pub fn to_spec(&self) -> SubstitutionSpec {
        let table = (!self.digit_family).then(|| {
            self.table.iter().map(|(a, img)| TableRow { letter: a.clone(), image: img.clone() }).collect()
        });
        SubstitutionSpec { l: self.l.clone(), f1: self.f1.elements().to_vec(), table }
    }

    pub fn expansion(&self) -> &IntMatrix {
        &self.l
    }

    pub fn digits(&self) -> &FundamentalDomain {
        &self.f1
    }

    pub fn dim(&self) -> usize {
        self.l.dim()
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn is_digit_family(&self) -> bool {
        self.digit_family
    }

    /// `ζ(a)_f`.
    pub fn image(&self, a: &Letter, f: &IntVector) -> Option<&Letter> {
        let img = self.table.get(a)?;
        let i = self.f1.elements().iter().position(|g| g == f)?;
        Some(&img[i])
    }

    /// Letters `a` with `ζ(a)_0 = a`, the seeds of fixed points.
    pub fn fixed_point_seeds(&self) -> Vec<Letter> {
        let zero = IntVector::zeros(self.dim());
        self.alphabet.iter().filter(|a| self.image(a, &zero) == Some(*a)).cloned().collect()
    }

    /// `F_n`, with `F_0 = {0}` and `F_{n+1} = L(F_n) + F_1`, sorted.
    pub fn support(&mut self, n: usize) -> Result<&[IntVector], SubstError> {
        while self.supports.len() <= n {
            let prev = self.supports.last().expect("F_0 present");
            let size = prev.len().saturating_mul(self.f1.len());
            if size > MAX_SUPPORT {
                return Err(SubstError::SupportTooLarge { level: self.supports.len(), size });
            }
            let mut next: Vec<IntVector> = Vec::with_capacity(size);
            for x in prev {
                let lx = self.l.mul_vec(x);
                next.extend(self.f1.elements().iter().map(|f| &lx + f));
            }
            next.sort_unstable();
            next.dedup();
            self.supports.push(next);
        }
        Ok(&self.supports[n])
    }

    /// `F_n` as a fundamental domain of `L^n(Z^d)`.
    pub fn support_domain(&mut self, n: usize) -> Result<FundamentalDomain, SubstError> {
        let ln = self.l.pow(n as u64);
        let f = self.support(n)?.to_vec();
        Ok(validate_domain(&ln, &f)?)
    }

    /// `ζ` applied to a patch: supported on `L(supp) + F_1`.
    pub fn substitute(&self, p: &Patch) -> Result<Patch, SubstError> {
        let mut out = Vec::with_capacity(p.len() * self.f1.len());
        for (j, a) in p {
            let img = self.table.get(a).ok_or_else(|| SubstError::UnknownLetter(a.to_string()))?;
            let lj = self.l.mul_vec(j);
            out.extend(self.f1.elements().iter().zip(img).map(|(f, b)| (&lj + f, b.clone())));
        }
        Ok(out.into_iter().collect())
    }

    /// `(τ(v), p)`: writing `v = L^{p+1} z + L^p f` with `f ∈ F_1 \ {0}`,
    /// `τ(v) = f` is the first non-zero digit of `v`.
    pub fn tau(&self, v: &IntVector) -> Result<(IntVector, u32), SubstError> {
        if v.is_zero() {
            return Err(SubstError::TauAtOrigin);
        }
        let mut v = v.clone();
        let mut p = 0u32;
        loop {
            let (f, q) = self.f1.reduce(&v);
            if !f.is_zero() {
                return Ok((f, p));
            }
            v = q;
            p += 1;
        }
    }

    /// The fixed point of a digit substitution with `x_0 = seed`, on `region`:
    /// `x_v = τ(v)` away from the origin.
    pub fn fixed_point_patch(&self, seed: &Letter, region: &[IntVector]) -> Result<Patch, SubstError> {
        if !self.digit_family {
            return Err(SubstError::NotDigitFamily);
        }
        if !self.table.contains_key(seed) {
            return Err(SubstError::UnknownLetter(seed.to_string()));
        }
        region
            .iter()
            .map(|v| {
                let a = if v.is_zero() { seed.clone() } else { Letter::Digit(self.tau(v)?.0) };
                Ok((v.clone(), a))
            })
            .collect()
    }

    /// `ζ^n` applied to the one-letter patch `{0: seed}`, supported on `F_n`.
    pub fn iterate_seed(&self, seed: &Letter, n: usize) -> Result<Patch, SubstError> {
        if !self.table.contains_key(seed) {
            return Err(SubstError::UnknownLetter(seed.to_string()));
        }
        let mut p = Patch::new();
        p.insert(IntVector::zeros(self.dim()), seed.clone());
        for level in 1..=n {
            let size = p.len().saturating_mul(self.f1.len());
            if size > MAX_SUPPORT {
                return Err(SubstError::SupportTooLarge { level, size });
            }
            p = self.substitute(&p)?;
        }
        Ok(p)
    }

    /// `max_v |F_n Δ (F_n + v)| / |F_n|`, exact.
    pub fn folner_defect(&mut self, n: usize, dirs: &[IntVector]) -> Result<num_rational::BigRational, SubstError> {
        let f = self.support(n)?;
        let set: HashSet<&IntVector> = f.iter().collect();
        let size = f.len();
        let mut worst = 0usize;
        for v in dirs {
            let common = f.iter().filter(|x| set.contains(&(*x - v))).count();
            worst = worst.max(2 * (size - common));
        }
        Ok(num_rational::BigRational::new(BigInt::from(worst), BigInt::from(size)))
    }

    /// `∪_{1 <= m <= m_max} (Id - L^m)^{-1}(F_m) ∩ Z^d`.
    pub fn k_set(&mut self, m_max: usize) -> Result<KSetReport, SubstError> {
        let d = self.dim();
        let mut points = BTreeSet::new();
        let mut sizes = Vec::with_capacity(m_max);
        for m in 1..=m_max {
            let a = &IntMatrix::identity(d) - &self.l.pow(m as u64);
            let det = a.det();
            if det.is_zero() {
                return Err(SubstError::NotExpansion(self.l.to_string()));
            }
            let adj = a.adjugate();
            for f in self.support(m)?.to_vec() {
                let w = adj.mul_vec(&f);
                if w.0.iter().all(|x| (x % &det).is_zero()) {
                    points.insert(IntVector(w.0.into_iter().map(|x| x / &det).collect()));
                }
            }
            sizes.push(points.len());
        }
        let stable_from = sizes.iter().position(|&s| Some(&s) == sizes.last()).map_or(m_max, |i| i + 1);
        Ok(KSetReport { points: points.into_iter().collect(), sizes, stable_from })
    }

    /// Checks `∪_{n <= n_max} (L^n(K) + F_n) ⊇ region`.
    pub fn coverage(&mut self, k: &[IntVector], n_max: usize, region: &[IntVector]) -> Result<CoverageReport, SubstError> {
        let kset: HashSet<&IntVector> = k.iter().collect();
        let domains: Vec<FundamentalDomain> =
            (0..=n_max).map(|n| self.support_domain(n)).collect::<Result<_, _>>()?;
        let mut uncovered = Vec::new();
        let mut deepest = 0usize;
        for v in region {
            match domains.iter().position(|dom| kset.contains(&dom.reduce(v).1)) {
                Some(n) => deepest = deepest.max(n),
                None => uncovered.push(v.clone()),
            }
        }
        Ok(CoverageReport { covered: uncovered.is_empty(), uncovered, deepest_level: deepest })
    }

    /// `L^n(Z^d)` in Hermite form.
    pub fn level_lattice(&self, n: usize) -> HnfBasis {
        hnf(&self.l.pow(n as u64)).expect("expansions are non-singular")
    }

    /// Largest coordinate of any point of `F_n`, a crude radius.
    pub fn support_radius(&mut self, n: usize) -> Result<BigInt, SubstError> {
        Ok(self.support(n)?.iter().map(|v| v.norm_inf()).max().unwrap_or_default().abs())
    }
}

/// The digit set `{(0,0), (1,0), (0,1), (1,-1)}` of the half-hex rule.
pub fn half_hex_digits() -> Vec<IntVector> {
    vec![[0, 0].into(), [1, 0].into(), [0, 1].into(), [1, -1].into()]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSetReport {
    pub points: Vec<IntVector>,
    /// Size of the union after each `m = 1..=m_max`.
    pub sizes: Vec<usize>,
    /// First `m` after which the union no longer grew.
    pub stable_from: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub covered: bool,
    pub uncovered: Vec<IntVector>,
    /// Largest level needed by any point of the region.
    pub deepest_level: usize,
}

/// Integer points of `[lo, hi]^d`.
pub fn cube(d: usize, lo: i64, hi: i64) -> Vec<IntVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(|v| IntVector::from_i64(&v)).collect()
}
