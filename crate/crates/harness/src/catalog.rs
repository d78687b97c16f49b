//! Catalog files: the list of finite modules a suite runs over.

use std::path::Path;
use std::sync::Arc;

use knsub_core::module::build_named_module;
use knsub_core::{FiniteModule, ZModRing};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};

const DEFAULT_CATALOG: &str = include_str!("../data/default_catalog.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub zmod: u64,
}

/// One module `Z_{d_1} × … × Z_{d_r}` over `Z_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub ring: RingSpec,
    pub factors: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<String>,
}

impl CatalogEntry {
    pub fn label(&self) -> String {
        self.origin.clone().unwrap_or_else(|| {
            let parts: Vec<String> = self.factors.iter().map(|d| format!("Z_{d}")).collect();
            format!("{} over Z_{}", parts.join("×"), self.ring.zmod)
        })
    }

    pub fn build(&self, cap: usize) -> Result<Arc<FiniteModule>> {
        let size = self.factors.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize));
        match size {
            Some(size) if size <= cap => {}
            other => {
                return Err(HarnessError::CapExceeded { origin: self.label(), size: other.unwrap_or(usize::MAX), cap })
            }
        }
        let ring = ZModRing::new(self.ring.zmod)?;
        Ok(build_named_module(ring, &self.factors, self.label())?)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Self {
        Catalog { entries }
    }

    /// The shipped catalog of cyclic, rank-two and mixed modules.
    pub fn default_catalog() -> Self {
        Catalog::from_json(DEFAULT_CATALOG).expect("shipped catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<CatalogEntry> =
            serde_json::from_str(text).map_err(|e| HarnessError::Catalog(e.to_string()))?;
        Ok(Catalog { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| HarnessError::Io { path: path.display().to_string(), source })?;
        Catalog::from_json(&text)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries whose module has at most `size` elements.
    pub fn restricted(&self, size: u64) -> Catalog {
        let entries = self.entries.iter().filter(|e| e.factors.iter().product::<u64>() <= size).cloned().collect();
        Catalog { entries }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.entries).expect("catalog serializes")
    }

    /// SHA-256 of the canonical JSON form.
    pub fn fingerprint(&self) -> String {
        format!("{:x}", Sha256::digest(self.to_json().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_catalog_contents() {
        let c = Catalog::default_catalog();
        assert_eq!(c.entries().len(), 19);
        let m = c.entries()[0].build(4096).unwrap();
        assert_eq!(m.size(), 4);
        assert_eq!(m.describe(), "Z_4 over Z_4");
        assert_eq!(Catalog::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn rejects_malformed_and_oversized() {
        assert!(matches!(Catalog::from_json("{"), Err(HarnessError::Catalog(_))));
        let bad = Catalog::from_json(r#"[{"ring": {"zmod": 6}, "factors": [4]}]"#).unwrap();
        assert!(matches!(bad.entries()[0].build(4096), Err(HarnessError::Algebra(_))));
        let big = Catalog::from_json(r#"[{"ring": {"zmod": 64}, "factors": [64, 64, 2]}]"#).unwrap();
        assert!(matches!(big.entries()[0].build(4096), Err(HarnessError::CapExceeded { .. })));
    }
}
