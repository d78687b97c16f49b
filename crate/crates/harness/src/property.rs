//! Property cases and their evaluation.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::context::{ModuleData, SuiteBounds};
use crate::error::Result;

/// `Verified` properties must hold on every instance; `Scrutiny` properties
/// record claims that are suspected or known to fail and never gate status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Verified,
    Scrutiny,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Verified => "verified",
            Tier::Scrutiny => "scrutiny",
        })
    }
}

/// Which tiers a run includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TierFilter {
    Verified,
    Scrutiny,
    All,
}

impl TierFilter {
    pub fn includes(self, tier: Tier) -> bool {
        matches!(
            (self, tier),
            (TierFilter::All, _) | (TierFilter::Verified, Tier::Verified) | (TierFilter::Scrutiny, Tier::Scrutiny)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails { witness: String },
    Vacuous,
}

type Check<T> = Box<dyn Fn() -> Result<T> + Send + Sync>;

/// One instance of a property: a hypothesis and a conclusion over fixed data.
/// The conclusion returns a witness description when it fails.
pub struct PropertyCase {
    pub property: &'static str,
    pub tier: Tier,
    pub instance: String,
    hypothesis: Check<bool>,
    conclusion: Check<Option<String>>,
}

impl PropertyCase {
    pub fn new(
        property: &Property,
        instance: impl Into<String>,
        hypothesis: impl Fn() -> Result<bool> + Send + Sync + 'static,
        conclusion: impl Fn() -> Result<Option<String>> + Send + Sync + 'static,
    ) -> Self {
        PropertyCase {
            property: property.name,
            tier: property.tier,
            instance: instance.into(),
            hypothesis: Box::new(hypothesis),
            conclusion: Box::new(conclusion),
        }
    }

    /// A case whose hypothesis is unconditional.
    pub fn always(
        property: &Property,
        instance: impl Into<String>,
        conclusion: impl Fn() -> Result<Option<String>> + Send + Sync + 'static,
    ) -> Self {
        PropertyCase::new(property, instance, || Ok(true), conclusion)
    }
}

impl fmt::Debug for PropertyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PropertyCase({} [{}] on {})", self.property, self.tier, self.instance)
    }
}

/// Hypothesis first; the conclusion is evaluated only on non-vacuous instances.
pub fn run_property(case: &PropertyCase) -> Result<Outcome> {
    if !(case.hypothesis)()? {
        return Ok(Outcome::Vacuous);
    }
    Ok(match (case.conclusion)()? {
        None => Outcome::Holds,
        Some(witness) => Outcome::Fails { witness },
    })
}

/// Everything a property generator may draw instances from.
pub struct Context {
    pub modules: Vec<Arc<ModuleData>>,
    /// Prime fields `Z_p` over themselves, for the division-ring statements.
    pub fields: Vec<Arc<ModuleData>>,
    /// Whether the statements about submodules `cZ ⊆ Z` are included.
    pub symbolic: bool,
    pub bounds: SuiteBounds,
}

pub type Generator = fn(&Property, &Context) -> Result<Vec<PropertyCase>>;

pub struct Property {
    pub name: &'static str,
    pub tier: Tier,
    pub statement: &'static str,
    /// Present when the property may legitimately have no non-vacuous instance.
    pub vacuity_note: Option<&'static str>,
    pub generate: Generator,
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Property({} [{}])", self.name, self.tier)
    }
}

/// `Some(witness)` when `ok` is false.
pub fn unless(ok: bool, witness: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(witness())
    }
}
