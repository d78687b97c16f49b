//! Running the whole registry over a catalog.

use std::collections::BTreeSet;
use std::time::Instant;

use knsub_core::ring::factorize;
use knsub_core::{build_module, ZModRing};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::context::{ModuleData, SuiteBounds};
use crate::error::{HarnessError, Result};
use crate::property::{run_property, Context, Outcome, Tier, TierFilter};
use crate::props::registry;

/// Witnesses kept per property in the report.
pub const WITNESSES_PER_PROPERTY: usize = 3;

/// `Fail` exactly when a verified property has a counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseWitness {
    pub instance: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub tier: Tier,
    pub statement: String,
    pub instances: usize,
    pub holds: usize,
    pub fails: usize,
    pub vacuous: usize,
    pub witnesses: Vec<CaseWitness>,
}

impl PropertyReport {
    pub fn is_vacuous(&self) -> bool {
        self.holds + self.fails == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub instances: usize,
    pub holds: usize,
    pub fails: usize,
    pub vacuous: usize,
    pub verified_failures: usize,
    pub scrutiny_failures: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VacuityAudit {
    /// Verified properties with no non-vacuous instance and no explanation.
    pub flagged: Vec<String>,
    /// Properties allowed to be vacuous, with the reason.
    pub whitelisted: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub status: Status,
    pub catalog_fingerprint: String,
    pub bounds: SuiteBounds,
    pub properties: Vec<PropertyReport>,
    pub totals: Totals,
    pub vacuity: VacuityAudit,
    pub wall_time_ms: u128,
}

impl SuiteReport {
    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// The report without timing, for comparing runs.
    pub fn stable_json(&self) -> serde_json::Value {
        let mut v = self.to_json();
        if let Some(obj) = v.as_object_mut() {
            obj.remove("wall_time_ms");
        }
        v
    }
}

/// Build every catalog module, its lattice, and the prime fields for the catalog's moduli.
pub fn build_context(catalog: &Catalog, bounds: SuiteBounds) -> Result<Context> {
    if bounds.kmax == 0 || bounds.nabs_max == 0 {
        return Err(HarnessError::BadBound("kmax and nabs-max must be at least 1".into()));
    }
    let mut modules = Vec::with_capacity(catalog.entries().len());
    let mut primes = BTreeSet::new();
    for entry in catalog.entries() {
        let module = entry.build(bounds.module_cap)?;
        primes.extend(factorize(module.ring().modulus()).primes());
        modules.push(ModuleData::new(module, bounds)?);
    }
    let mut fields = Vec::with_capacity(primes.len());
    for p in primes {
        fields.push(ModuleData::new(build_module(ZModRing::new(p)?, &[p])?, bounds)?);
    }
    Ok(Context { modules, fields, symbolic: !catalog.is_empty(), bounds })
}

/// Run every registered property in `filter` on `jobs` worker threads.
/// The report does not depend on `jobs` apart from `wall_time_ms`.
pub fn run_suite(catalog: &Catalog, bounds: SuiteBounds, filter: TierFilter, jobs: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| HarnessError::BadBound(format!("worker pool: {e}")))?;
    let ctx = build_context(catalog, bounds)?;
    let mut properties = Vec::new();
    for p in registry().into_iter().filter(|p| filter.includes(p.tier)) {
        let cases = (p.generate)(p, &ctx)?;
        let outcomes: Vec<Outcome> = pool.install(|| cases.par_iter().map(run_property).collect::<Result<_>>())?;
        let mut report = PropertyReport {
            name: p.name.to_string(),
            tier: p.tier,
            statement: p.statement.to_string(),
            instances: cases.len(),
            holds: 0,
            fails: 0,
            vacuous: 0,
            witnesses: Vec::new(),
        };
        for (case, outcome) in cases.iter().zip(outcomes) {
            match outcome {
                Outcome::Holds => report.holds += 1,
                Outcome::Vacuous => report.vacuous += 1,
                Outcome::Fails { witness } => {
                    report.fails += 1;
                    if report.witnesses.len() < WITNESSES_PER_PROPERTY {
                        report.witnesses.push(CaseWitness { instance: case.instance.clone(), witness });
                    }
                }
            }
        }
        properties.push(report);
    }

    let mut totals = Totals::default();
    let mut vacuity = VacuityAudit::default();
    for r in &properties {
        totals.instances += r.instances;
        totals.holds += r.holds;
        totals.fails += r.fails;
        totals.vacuous += r.vacuous;
        match r.tier {
            Tier::Verified => totals.verified_failures += r.fails,
            Tier::Scrutiny => totals.scrutiny_failures += r.fails,
        }
    }
    if !catalog.is_empty() {
        for r in &properties {
            if !r.is_vacuous() {
                continue;
            }
            let note = registry().into_iter().find(|p| p.name == r.name).and_then(|p| p.vacuity_note);
            match note {
                Some(note) => vacuity.whitelisted.push((r.name.clone(), note.to_string())),
                None if r.tier == Tier::Verified => vacuity.flagged.push(r.name.clone()),
                None => {}
            }
        }
    }
    // Vacuity is reported, not gated: a small catalog may simply lack the shapes a property needs.
    let status = if totals.verified_failures == 0 { Status::Pass } else { Status::Fail };
    Ok(SuiteReport {
        status,
        catalog_fingerprint: catalog.fingerprint(),
        bounds,
        properties,
        totals,
        vacuity,
        wall_time_ms: start.elapsed().as_millis(),
    })
}
