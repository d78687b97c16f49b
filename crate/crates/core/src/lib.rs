//! Exhaustive decision procedures for `(k,n)`-closed submodules of finite
//! modules over `Z/mZ`, plus a valuation engine for submodules `cZ` of `Z`.

pub mod constructions;
pub mod error;
pub mod module;
pub mod predicates;
pub mod ring;
pub mod symbolic;
pub mod verdict;

pub use error::{AlgebraError, Result};
pub use module::{build_module, reduce_integer_scalars, Elem, FiniteModule, ModuleHom, Submodule};
pub use predicates::{spectrum, ClosureSpectrum};
pub use ring::{RingIdeal, ZModRing};
pub use verdict::{Verdict, Witness};
