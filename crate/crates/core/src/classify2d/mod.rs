//! The group of `M ∈ GL(2,Z)` satisfying the normalizer condition for a
//! `2 x 2` expansion `L`, decided in closed form.

mod centralizer;
mod pell;
mod triangular;

pub use centralizer::{centralizer, CentralizerGroup};
pub use pell::{canonical_generator, pell_fundamental_automorph, QuadraticUnit};
pub use triangular::{
    bezout_conjugator, family_members, family_parameter, klein_partner, relation_holds, triangularize, Adapted,
    TriangularCase,
};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::intlat::number::radical_divides;
use crate::intlat::{is_expansion, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("expected a 2x2 matrix")]
    NotTwoByTwo,
    #[error("{0} is not an expansion")]
    NotExpansion(String),
    #[error("{0} is not unimodular")]
    NotUnimodular(String),
    #[error("discriminant {0} is a perfect square")]
    PerfectSquareDiscriminant(String),
    #[error("discriminant {0} is negative")]
    NotRealQuadratic(String),
}

/// Shape of an infinite, virtually cyclic answer in the adapted basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    /// All upper-triangular unimodular matrices.
    UpperTriangularUnimodular,
    /// The four families `[[±1 - mk, ...], [m, ...]]`, `q = k (p - s)`.
    ParamFamily {
        #[serde(with = "crate::intlat::bigint_serde")]
        k: BigInt,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtuallyCyclic {
    /// `C` with `C M C^{-1}` upper triangular for every member `M`.
    pub conjugator: IntMatrix,
    pub adapted: Adapted,
    pub case: TriangularCase,
    pub model: Model,
    /// Infinite-order generator.
    pub unipotent: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum NormalizerClass {
    /// Every matrix in `GL(2,Z)`.
    FullGl2,
    Centralizer { group: CentralizerGroup },
    KleinFour { elements: Vec<IntMatrix>, adapted: Adapted },
    /// `{±Id}`.
    OrderTwo { adapted: Adapted },
    VirtuallyZ(VirtuallyCyclic),
}

impl NormalizerClass {
    pub fn label(&self) -> &'static str {
        match self {
            NormalizerClass::FullGl2 => "full_gl2",
            NormalizerClass::Centralizer { .. } => "centralizer",
            NormalizerClass::KleinFour { .. } => "klein_four",
            NormalizerClass::OrderTwo { .. } => "order_two",
            NormalizerClass::VirtuallyZ(_) => "virtually_z",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub l: IntMatrix,
    #[serde(flatten)]
    pub class: NormalizerClass,
    pub finite: bool,
    pub generators: Vec<IntMatrix>,
    pub notes: Vec<String>,
}

fn check_input(l: &IntMatrix) -> Result<(), ClassifyError> {
    if l.rows() != 2 || l.cols() != 2 {
        return Err(ClassifyError::NotTwoByTwo);
    }
    if !is_expansion(l) {
        return Err(ClassifyError::NotExpansion(l.to_string()));
    }
    Ok(())
}

pub fn classify(l: &IntMatrix) -> Result<Classification, ClassifyError> {
    check_input(l)?;
    let minus = IntMatrix::scalar(2, &BigInt::from(-1));
    let det = l.det();
    let mut notes = Vec::new();
    if radical_divides(&det, &l.trace()) {
        notes.push(format!("rad({det}) divides trace {}", l.trace()));
        let generators = CentralizerGroup::Whole.generators();
        return Ok(Classification { l: l.clone(), class: NormalizerClass::FullGl2, finite: false, generators, notes });
    }
    let Some(adapted) = triangularize(l) else {
        let group = centralizer(l)?;
        notes.push("no integer eigenvalues: members commute with L".into());
        let finite = group.is_finite();
        let generators = group.generators();
        return Ok(Classification { l: l.clone(), class: NormalizerClass::Centralizer { group }, finite, generators, notes });
    };
    notes.push(format!("adapted triangular form {}", adapted.triangular));
    let case = adapted.case();
    let t = &adapted.triangular;
    let class = match case {
        TriangularCase::Neither => match klein_partner(t) {
            Some(a) => {
                let a = adapted.from_adapted(&a);
                let mut elements = vec![IntMatrix::identity(2), minus.clone(), -&a, a];
                elements.sort();
                NormalizerClass::KleinFour { elements, adapted }
            }
            None => NormalizerClass::OrderTwo { adapted },
        },
        TriangularCase::FirstDividesSecond => {
            let conjugator = adapted.basis.inverse_unimodular().expect("unimodular");
            let unipotent = adapted.from_adapted(&IntMatrix::from([[1, 1], [0, 1]]));
            NormalizerClass::VirtuallyZ(VirtuallyCyclic {
                conjugator,
                case,
                model: Model::UpperTriangularUnimodular,
                unipotent,
                adapted,
            })
        }
        TriangularCase::SecondDividesFirst => {
            let inv = adapted.basis.inverse_unimodular().expect("unimodular");
            let conjugator = &bezout_conjugator(t) * &inv;
            let (model, unipotent) = match family_parameter(t) {
                Some(k) => {
                    let g = family_members(&k, &BigInt::from(1))[0].clone();
                    (Model::ParamFamily { k }, adapted.from_adapted(&g))
                }
                None => {
                    let c_inv = conjugator.inverse_unimodular().expect("unimodular");
                    let u = &(&c_inv * &IntMatrix::from([[1, 1], [0, 1]])) * &conjugator;
                    (Model::UpperTriangularUnimodular, u)
                }
            };
            NormalizerClass::VirtuallyZ(VirtuallyCyclic { conjugator, case, model, unipotent, adapted })
        }
    };
    let (finite, generators) = match &class {
        NormalizerClass::KleinFour { elements, .. } => (true, elements.clone()),
        NormalizerClass::OrderTwo { .. } => (true, vec![IntMatrix::identity(2), minus]),
        NormalizerClass::VirtuallyZ(v) => (false, virtually_cyclic_generators(v)),
        _ => unreachable!("triangular branches only"),
    };
    Ok(Classification { l: l.clone(), class, finite, generators, notes })
}

fn virtually_cyclic_generators(v: &VirtuallyCyclic) -> Vec<IntMatrix> {
    let minus = IntMatrix::scalar(2, &BigInt::from(-1));
    match &v.model {
        Model::ParamFamily { k } => {
            let reflection = family_members(k, &BigInt::from(0))[1].clone();
            vec![v.unipotent.clone(), minus, v.adapted.from_adapted(&reflection)]
        }
        Model::UpperTriangularUnimodular => {
            let c_inv = v.conjugator.inverse_unimodular().expect("unimodular");
            let back = |x: IntMatrix| &(&c_inv * &x) * &v.conjugator;
            vec![
                v.unipotent.clone(),
                back(IntMatrix::from([[-1, 0], [0, 1]])),
                back(IntMatrix::from([[1, 0], [0, -1]])),
            ]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub member: bool,
    pub branch: String,
    pub reason: String,
}

/// Decides `M ∈ N(L)` from the closed-form description.
pub fn is_member(l: &IntMatrix, m: &IntMatrix) -> Result<MembershipVerdict, ClassifyError> {
    let c = classify(l)?;
    is_member_in(&c, m)
}

/// [`is_member`] against an existing classification.
pub fn is_member_in(c: &Classification, m: &IntMatrix) -> Result<MembershipVerdict, ClassifyError> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(ClassifyError::NotTwoByTwo);
    }
    if !m.is_unimodular() {
        return Err(ClassifyError::NotUnimodular(m.to_string()));
    }
    let l = &c.l;
    let commutes = &(m * l) == &(l * m);
    let (member, reason) = match &c.class {
        NormalizerClass::FullGl2 => (true, "every unimodular matrix".to_string()),
        NormalizerClass::Centralizer { .. } | NormalizerClass::KleinFour { .. } | NormalizerClass::OrderTwo { .. } => {
            (commutes, format!("commutes with L: {commutes}"))
        }
        NormalizerClass::VirtuallyZ(v) => {
            let a = v.adapted.to_adapted(m);
            match v.case {
                TriangularCase::FirstDividesSecond => {
                    let ok = num_traits::Zero::is_zero(a.get(1, 0));
                    (ok, format!("adapted lower-left entry {}", a.get(1, 0)))
                }
                TriangularCase::SecondDividesFirst => {
                    let ok = relation_holds(&v.adapted.triangular, &a);
                    (ok, format!("adapted relation holds: {ok}"))
                }
                TriangularCase::Neither => unreachable!("centralizer cases are finite"),
            }
        }
    };
    Ok(MembershipVerdict { member, branch: c.class.label().to_string(), reason })
}
