use serde::Serialize;
use serde_json::{json, Value};

use crate::module::{Elem, FiniteModule};

/// The violating data behind a failed predicate, in the predicate's own terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Witness {
    /// A scalar and an element, e.g. `r^k x ∈ N` with both escapes failing.
    Scalar { r: u64, x: Elem },
    /// Two scalars and an element (quasi-prime).
    Pair { a: u64, b: u64, x: Elem },
    /// A multiset of scalars and an element (n-absorbing).
    Factors { factors: Vec<u64>, x: Elem },
    /// An ideal, by canonical generator, and an element (strong variants).
    Ideal { generator: u64, x: Elem },
    /// A scalar alone (homothety that is neither surjective nor nilpotent).
    Homothety { r: u64 },
}

impl Witness {
    pub fn element(&self) -> Option<Elem> {
        match self {
            Witness::Scalar { x, .. }
            | Witness::Pair { x, .. }
            | Witness::Factors { x, .. }
            | Witness::Ideal { x, .. } => Some(*x),
            Witness::Homothety { .. } => None,
        }
    }

    pub fn to_json(&self, module: &FiniteModule) -> Value {
        match self {
            Witness::Scalar { r, x } => json!({ "r": r, "x": module.format_element(*x) }),
            Witness::Pair { a, b, x } => json!({ "a": a, "b": b, "x": module.format_element(*x) }),
            Witness::Factors { factors, x } => {
                json!({ "a": factors, "x": module.format_element(*x) })
            }
            Witness::Ideal { generator, x } => {
                json!({ "ideal": generator, "x": module.format_element(*x) })
            }
            Witness::Homothety { r } => json!({ "r": r }),
        }
    }

    /// Short human form, e.g. `r=2 x=1`.
    pub fn describe(&self, module: &FiniteModule) -> String {
        match self {
            Witness::Scalar { r, x } => format!("r={r} x={}", module.format_element(*x)),
            Witness::Pair { a, b, x } => {
                format!("a={a} b={b} x={}", module.format_element(*x))
            }
            Witness::Factors { factors, x } => {
                let fs: Vec<String> = factors.iter().map(u64::to_string).collect();
                format!("a=({}) x={}", fs.join(","), module.format_element(*x))
            }
            Witness::Ideal { generator, x } => {
                format!("I=({generator}) x={}", module.format_element(*x))
            }
            Witness::Homothety { r } => format!("r={r}"),
        }
    }
}

/// Result of an exhaustive predicate scan. A witness is present exactly when
/// the predicate fails.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict { holds: true, witness: None }
    }

    pub fn fails(witness: Witness) -> Self {
        Verdict { holds: false, witness: Some(witness) }
    }

    pub fn from_search(found: Option<Witness>) -> Self {
        match found {
            Some(w) => Verdict::fails(w),
            None => Verdict::holds(),
        }
    }

    pub fn to_json(&self, module: &FiniteModule) -> Value {
        json!({
            "holds": self.holds,
            "witness": self.witness.as_ref().map(|w| w.to_json(module)),
        })
    }
}
