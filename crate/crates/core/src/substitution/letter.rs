use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::intlat::IntVector;

/// A tile label: either a digit vector (the natural alphabet of the digit
/// substitutions) or a bare symbol from a hand-written table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Letter {
    Symbol(u32),
    Digit(IntVector),
}

impl Letter {
    pub fn digit(&self) -> Option<&IntVector> {
        match self {
            Letter::Digit(v) => Some(v),
            Letter::Symbol(_) => None,
        }
    }
}

impl From<IntVector> for Letter {
    fn from(v: IntVector) -> Self {
        Letter::Digit(v)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Symbol(k) => write!(f, "{k}"),
            Letter::Digit(v) => write!(f, "{v}"),
        }
    }
}

/// A finite configuration: support point to letter.
pub type Patch = BTreeMap<IntVector, Letter>;

/// `(S^z x)_u = x_{u+z}` on a patch: the result is supported on `supp - z`.
pub fn shift_patch(p: &Patch, z: &IntVector) -> Patch {
    p.iter().map(|(u, a)| (u - z, a.clone())).collect()
}

/// Points where both patches are defined and differ.
pub fn disagreements(a: &Patch, b: &Patch) -> Vec<IntVector> {
    a.iter()
        .filter_map(|(u, x)| match b.get(u) {
            Some(y) if y != x => Some(u.clone()),
            _ => None,
        })
        .collect()
}

/// Number of points where both patches are defined.
pub fn overlap(a: &Patch, b: &Patch) -> usize {
    a.keys().filter(|u| b.contains_key(*u)).count()
}

/// One entry of a patch in list form, for JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub at: IntVector,
    pub letter: Letter,
}

pub fn patch_to_cells(p: &Patch) -> Vec<Cell> {
    p.iter().map(|(at, letter)| Cell { at: at.clone(), letter: letter.clone() }).collect()
}

pub fn patch_from_cells(cells: Vec<Cell>) -> Patch {
    cells.into_iter().map(|c| (c.at, c.letter)).collect()
}
