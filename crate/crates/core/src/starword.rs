//! The reduced word calculus on generators.
//!
//! Every word in the generators and their adjoints reduces to zero or to
//! a two-sided form `T_e T_f*` with source(e) = source(f). Products
//! reduce through the extension trichotomy of the underlying paths.

use crate::path::{self, Extension, Path};
use crate::presentation::Presentation;

/// Zero or `T_left · T_right*` with source(left) = source(right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarWord {
    Zero,
    Word { left: Path, right: Path },
}

impl StarWord {
    /// Builds `T_left T_right*`, collapsing to zero when the sources
    /// disagree (the inner projections are orthogonal).
    pub fn word(pres: &Presentation, left: Path, right: Path) -> StarWord {
        if left.source(pres) != right.source(pres) {
            StarWord::Zero
        } else {
            StarWord::Word { left, right }
        }
    }

    /// `T_e` as a word: right factor is the identity at source(e).
    pub fn of_path(pres: &Presentation, e: Path) -> StarWord {
        let id = Path::identity(e.source(pres));
        StarWord::Word { left: e, right: id }
    }

    /// `T_e*`.
    pub fn adjoint_of_path(pres: &Presentation, e: Path) -> StarWord {
        adjoint(&StarWord::of_path(pres, e))
    }

    /// The projection `T_v` for a vertex identity.
    pub fn vertex(v: crate::presentation::VertexId) -> StarWord {
        StarWord::Word {
            left: Path::identity(v),
            right: Path::identity(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, StarWord::Zero)
    }

    pub fn display(&self, pres: &Presentation) -> String {
        match self {
            StarWord::Zero => "0".to_string(),
            StarWord::Word { left, right } => {
                if right.is_identity() {
                    left.display(pres)
                } else {
                    format!("{} * {}", left.display(pres), right.display(pres))
                }
            }
        }
    }
}

/// Involution: (T_e T_f*)* = T_f T_e*.
pub fn adjoint(w: &StarWord) -> StarWord {
    match w {
        StarWord::Zero => StarWord::Zero,
        StarWord::Word { left, right } => StarWord::Word {
            left: right.clone(),
            right: left.clone(),
        },
    }
}

/// Product of reduced words. `T_f* T_g` reduces by comparing f and g in
/// the extension order: a common extension survives, disjoint paths
/// annihilate.
pub fn multiply(pres: &Presentation, w1: &StarWord, w2: &StarWord) -> StarWord {
    let (StarWord::Word { left: e, right: f }, StarWord::Word { left: g, right: h }) = (w1, w2)
    else {
        return StarWord::Zero;
    };
    match path::compare_extensions(pres, f, g) {
        Extension::Equal => StarWord::word(pres, e.clone(), h.clone()),
        Extension::ProperPrefixOf => {
            // g = f·p, so T_f* T_g = T_p
            let lf = path::length(pres, f);
            let (_, p) = path::split(pres, g, &lf).expect("f is a prefix of g");
            match path::compose(pres, e, &p) {
                Ok(ep) => StarWord::word(pres, ep, h.clone()),
                Err(_) => StarWord::Zero,
            }
        }
        Extension::ProperlyExtends => {
            // f = g·p, so T_f* T_g = T_p*
            let lg = path::length(pres, g);
            let (_, p) = path::split(pres, f, &lg).expect("g is a prefix of f");
            match path::compose(pres, h, &p) {
                Ok(hp) => StarWord::word(pres, e.clone(), hp),
                Err(_) => StarWord::Zero,
            }
        }
        Extension::Disjoint => StarWord::Zero,
    }
}
