//! The subcommands. Each returns an [`output::Document`]; rendering and exit
//! codes are left to `main`.

use std::sync::Arc;
use std::time::Instant;

use knsub_core::module::{build_named_module, enumerate_submodules, is_prime_submodule, residual_ring, span, DEFAULT_MODULE_CAP};
use knsub_core::predicates::{is_n_absorbing, is_quasi_prime, is_semi_n_absorbing, is_semiprime};
use knsub_core::ring::factorize;
use knsub_core::symbolic::{
    tkn_condition, zint_ideal_is_kn_closed, zint_is_kn_closed, zint_is_n_absorbing, zint_is_semi_n_absorbing,
};
use knsub_core::{spectrum as closure_spectrum, AlgebraError, FiniteModule, Submodule, Verdict, ZModRing};
use knsub_harness::property::TierFilter;
use knsub_harness::suite::{run_suite, Status};
use knsub_harness::{hunt as run_hunt, Catalog, SuiteBounds};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::output::{mark, Document, Table};
use crate::{CliError, TierArg, ZintPredicate};

type Result<T> = std::result::Result<T, CliError>;

const CAP_VAR: &str = "KNSUB_MAX_MODULE_SIZE";

/// The element cap, overridable through `KNSUB_MAX_MODULE_SIZE`.
pub fn module_cap() -> Result<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&n: &usize| n > 0)
            .ok_or_else(|| CliError::Usage(format!("{CAP_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MODULE_CAP),
    }
}

fn parse_ring(text: &str) -> Result<ZModRing> {
    let m = text
        .strip_prefix("zmod:")
        .and_then(|m| m.trim().parse::<u64>().ok())
        .ok_or_else(|| CliError::Usage(format!("--ring expects zmod:m, got {text:?}")))?;
    Ok(ZModRing::new(m)?)
}

fn parse_factors(text: Option<&str>, ring: ZModRing) -> Result<Vec<u64>> {
    let Some(text) = text else { return Ok(vec![ring.modulus()]) };
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("--factors: {s:?} is not an integer"))))
        .collect()
}

fn build(ring: &str, factors: Option<&str>, cap: usize) -> Result<Arc<FiniteModule>> {
    let ring = parse_ring(ring)?;
    let factors = parse_factors(factors, ring)?;
    let size = factors.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize));
    match size {
        Some(size) if size <= cap => {}
        other => return Err(AlgebraError::CapExceeded { size: other.unwrap_or(usize::MAX), cap }.into()),
    }
    let label = if factors.is_empty() {
        format!("0 over Z_{}", ring.modulus())
    } else {
        let parts: Vec<String> = factors.iter().map(|d| format!("Z_{d}")).collect();
        format!("{} over Z_{}", parts.join("×"), ring.modulus())
    };
    Ok(build_named_module(ring, &factors, label)?)
}

fn check_bound(name: &str, value: u32) -> Result<()> {
    if value == 0 {
        Err(CliError::Usage(format!("--{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn verdict_json(module: &FiniteModule, v: &Verdict) -> Value {
    json!({ "holds": v.holds, "witness": v.witness.as_ref().map(|w| w.to_json(module)) })
}

fn verdict_mark(module: &FiniteModule, v: &Verdict) -> String {
    mark(v.holds, v.witness.as_ref().map(|w| w.describe(module)))
}

pub fn spectrum(ring: &str, factors: Option<&str>, gens: &str, kmax: u32, cap: usize) -> Result<Document> {
    let start = Instant::now();
    check_bound("kmax", kmax)?;
    let module = build(ring, factors, cap)?;
    let n_sub = span(&module, &module.parse_generators(gens)?)?;
    let spec = closure_spectrum(&n_sub, kmax)?;

    let mut header = vec!["k\\n".to_string()];
    header.extend((1..=kmax).map(|n| n.to_string()));
    let mut table = Table { header, ..Table::default() };
    let mut witnesses = Vec::new();
    for k in 1..=kmax {
        let mut row = vec![k.to_string()];
        for n in 1..=kmax {
            let v = spec.verdict(k, n);
            row.push(verdict_mark(&module, v));
            if let Some(w) = &v.witness {
                witnesses.push(json!({ "k": k, "n": n, "witness": w.to_json(&module) }));
            }
        }
        table.row(row);
    }

    let named = [
        ("prime", is_prime_submodule(&n_sub)?),
        ("semiprime", is_semiprime(&n_sub)?),
        ("quasi-prime", is_quasi_prime(&n_sub)?),
    ];
    let semi: Vec<Verdict> = (1..=kmax).map(|n| is_semi_n_absorbing(&n_sub, n)).collect::<std::result::Result<_, _>>()?;
    let mut predicates = serde_json::Map::new();
    table.note(format!("N = {} in {}, |N| = {}, (N:M) = {}", n_sub.describe(), module, n_sub.len(), residual_ring(&n_sub)));
    for (name, v) in &named {
        table.note(format!("{name}: {}", verdict_mark(&module, v)));
        predicates.insert(name.to_string(), verdict_json(&module, v));
    }
    for (n, v) in (1..=kmax).zip(&semi) {
        table.note(format!("semi-{n}-absorbing: {}", verdict_mark(&module, v)));
        predicates.insert(format!("semi-{n}-absorbing"), verdict_json(&module, v));
    }

    Ok(Document {
        command: "spectrum",
        inputs: json!({ "ring": ring, "factors": factors, "gens": gens, "kmax": kmax }),
        result: json!({
            "module": module.describe(),
            "submodule": n_sub.describe(),
            "size": n_sub.len(),
            "residual": residual_ring(&n_sub).to_string(),
            "grid": spec.grid(),
            "fingerprint": spec.fingerprint(),
            "predicates": predicates,
        }),
        witnesses,
        wall_ms: start.elapsed().as_millis(),
        table,
    })
}

pub fn classify(ring: &str, factors: Option<&str>, kmax: u32, nabs_max: u32, cap: usize) -> Result<Document> {
    let start = Instant::now();
    check_bound("kmax", kmax)?;
    check_bound("nabs-max", nabs_max)?;
    let module = build(ring, factors, cap)?;
    let proper: Vec<Submodule> = enumerate_submodules(&module, cap)?.into_iter().filter(Submodule::is_proper).collect();

    let mut header = vec!["N", "|N|", "(N:M)", "prime", "semiprime", "quasi-prime"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    header.extend((1..=nabs_max).map(|n| format!("{n}-absorbing")));
    header.push("spectrum".into());
    let mut table = Table { header, ..Table::default() };
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    for n_sub in &proper {
        let mut checks = vec![
            ("prime".to_string(), is_prime_submodule(n_sub)?),
            ("semiprime".to_string(), is_semiprime(n_sub)?),
            ("quasi-prime".to_string(), is_quasi_prime(n_sub)?),
        ];
        for n in 1..=nabs_max {
            checks.push((format!("{n}-absorbing"), is_n_absorbing(n_sub, n, nabs_max)?));
        }
        let fingerprint = closure_spectrum(n_sub, kmax)?.fingerprint();
        let residual = residual_ring(n_sub).to_string();

        let mut row = vec![n_sub.describe(), n_sub.len().to_string(), residual.clone()];
        let mut predicates = serde_json::Map::new();
        for (name, v) in &checks {
            row.push(verdict_mark(&module, v));
            predicates.insert(name.clone(), json!(v.holds));
            if let Some(w) = &v.witness {
                witnesses.push(json!({ "submodule": n_sub.describe(), "predicate": name, "witness": w.to_json(&module) }));
            }
        }
        row.push(fingerprint.clone());
        table.row(row);
        rows.push(json!({
            "submodule": n_sub.describe(),
            "size": n_sub.len(),
            "residual": residual,
            "predicates": predicates,
            "fingerprint": fingerprint,
        }));
    }
    table.note(format!("{} proper submodules of {}", proper.len(), module));

    Ok(Document {
        command: "classify",
        inputs: json!({ "ring": ring, "factors": factors, "kmax": kmax, "nabs_max": nabs_max }),
        result: json!({ "module": module.describe(), "rows": rows }),
        witnesses,
        wall_ms: start.elapsed().as_millis(),
        table,
    })
}

fn load_catalog(path: Option<&str>) -> Result<Catalog> {
    Ok(match path {
        Some(p) => Catalog::load(p)?,
        None => Catalog::default_catalog(),
    })
}

/// The document and whether the verified tier came back clean.
pub fn verify(
    catalog: Option<&str>,
    kmax: u32,
    nabs_max: u32,
    tier: TierArg,
    jobs: Option<usize>,
    cap: usize,
) -> Result<(Document, bool)> {
    let start = Instant::now();
    let cat = load_catalog(catalog)?;
    let filter = match tier {
        TierArg::Verified => TierFilter::Verified,
        TierArg::Scrutiny => TierFilter::Scrutiny,
        TierArg::All => TierFilter::All,
    };
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let bounds = SuiteBounds { kmax, nabs_max, module_cap: cap };
    let report = run_suite(&cat, bounds, filter, jobs)?;

    let mut table = Table::new(&["property", "tier", "instances", "holds", "fails", "vacuous", "first witness"]);
    let mut witnesses = Vec::new();
    for p in &report.properties {
        let first = p.witnesses.first().map(|w| format!("{}: {}", w.instance, w.witness)).unwrap_or_default();
        table.row(vec![
            p.name.clone(),
            p.tier.to_string(),
            p.instances.to_string(),
            p.holds.to_string(),
            p.fails.to_string(),
            p.vacuous.to_string(),
            first,
        ]);
        for w in &p.witnesses {
            witnesses.push(json!({ "property": p.name, "tier": p.tier, "instance": w.instance, "witness": w.witness }));
        }
    }
    let t = &report.totals;
    table.note(format!(
        "{} instances: {} hold, {} fail ({} verified, {} scrutiny), {} vacuous",
        t.instances, t.holds, t.fails, t.verified_failures, t.scrutiny_failures, t.vacuous
    ));
    if report.vacuity.flagged.is_empty() {
        table.note("vacuity audit: clean");
    } else {
        table.note(format!("vacuity audit: fully vacuous {}", report.vacuity.flagged.join(", ")));
    }
    for (name, why) in &report.vacuity.whitelisted {
        table.note(format!("vacuity whitelist: {name} ({why})"));
    }
    let clean = report.status == Status::Pass;
    table.note(format!("status: {}", if clean { "PASS" } else { "FAIL" }));

    let doc = Document {
        command: "verify",
        inputs: json!({
            "catalog": catalog,
            "kmax": kmax,
            "nabs_max": nabs_max,
            "tier": tier.to_possible_value().map(|v| v.get_name().to_string()),
            "jobs": jobs,
        }),
        result: report.to_json(),
        witnesses,
        wall_ms: start.elapsed().as_millis(),
        table,
    };
    Ok((doc, clean))
}

pub fn hunt(property: &str, bound: u64, catalog: Option<&str>, cap: usize) -> Result<Document> {
    let start = Instant::now();
    let cat = load_catalog(catalog)?;
    let bounds = SuiteBounds { module_cap: cap, ..SuiteBounds::default() };
    let found = run_hunt(property, bound, &cat, bounds)?;
    let mut table = Table::default();
    let (result, witnesses) = match &found {
        Some(f) => {
            table.note(format!("{}: {}", f.instance, f.witness));
            (json!({ "found": true, "instance": f.instance, "details": f.details }), vec![json!(f.witness)])
        }
        None => {
            table.note("none within bound");
            (json!({ "found": false, "message": "none within bound" }), Vec::new())
        }
    };
    Ok(Document {
        command: "hunt",
        inputs: json!({ "property": property, "bound": bound, "catalog": catalog }),
        result,
        witnesses,
        wall_ms: start.elapsed().as_millis(),
        table,
    })
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn zint(c: u64, k: u32, n: u32, predicate: ZintPredicate) -> Result<Document> {
    let start = Instant::now();
    if c < 2 {
        return Err(AlgebraError::BadGenerator(c).into());
    }
    let (claim, holds, witness): (String, bool, Option<Value>) = match predicate {
        ZintPredicate::KnClosed => {
            let v = zint_is_kn_closed(c, k, n)?;
            let w = v.witness.map(|w| json!({ "r": w[0], "m": w[1] }));
            (format!("{c}Z is a ({k},{n})-closed submodule of Z"), v.holds, w)
        }
        ZintPredicate::SemiN => {
            let v = zint_is_semi_n_absorbing(c, n)?;
            let w = v.witness.map(|w| json!({ "r": w[0], "m": w[1] }));
            (format!("{c}Z is a semi-{n}-absorbing submodule of Z"), v.holds, w)
        }
        ZintPredicate::NAbsorbing => {
            let v = zint_is_n_absorbing(c, n)?;
            let w = v.witness.map(|w| {
                let (m, a) = w.split_last().expect("witness has an element");
                json!({ "a": a, "m": m })
            });
            (format!("{c}Z is a {n}-absorbing submodule of Z"), v.holds, w)
        }
        ZintPredicate::IdealKn => {
            let v = zint_ideal_is_kn_closed(c, k, n)?;
            let w = v.witness.map(|w| json!({ "x": w[0] }));
            (format!("{c}Z is a ({k},{n})-closed ideal of Z"), v.holds, w)
        }
        ZintPredicate::TknCondition => {
            let (p, t) = factorize(c)
                .as_prime_power()
                .ok_or_else(|| CliError::Usage(format!("tkn-condition needs a prime power, got {c}")))?;
            if k == 0 || n == 0 {
                return Err(CliError::Usage("k and n must be at least 1".into()));
            }
            (format!("{c} = {p}^{t} satisfies the t,k,n condition for ({k},{n})"), tkn_condition(t, k, n), None)
        }
    };
    let shown = witness.as_ref().map(|w| {
        let order = ["r", "a", "m", "x"];
        order
            .iter()
            .filter_map(|&key| {
                w.get(key).map(|v| match v {
                    Value::Array(a) => {
                        let nums: Vec<u64> = a.iter().filter_map(Value::as_u64).collect();
                        format!("{key}=({})", join(&nums))
                    }
                    other => format!("{key}={other}"),
                })
            })
            .collect::<Vec<_>>()
            .join(" ")
    });
    let mut table = Table::default();
    table.note(format!("{claim}: {}", mark(holds, shown)));
    Ok(Document {
        command: "zint",
        inputs: json!({ "c": c, "k": k, "n": n, "predicate": predicate.to_possible_value().map(|v| v.get_name().to_string()) }),
        result: json!({ "claim": claim, "holds": holds }),
        witnesses: witness.into_iter().collect(),
        wall_ms: start.elapsed().as_millis(),
        table,
    })
}
