//! Executable catalog of statements about (k,n)-closed submodules, run over
//! finite modules and the symbolic family `cZ ⊆ Z`.

pub mod catalog;
pub mod context;
pub mod error;
pub mod hunt;
pub mod property;
pub mod props;
pub mod suite;

pub use catalog::{Catalog, CatalogEntry};
pub use context::SuiteBounds;
pub use error::{HarnessError, Result};
pub use hunt::{hunt, HuntFinding};
pub use property::{run_property, Outcome, PropertyCase, Tier, TierFilter};
pub use suite::{run_suite, Status, SuiteReport};
