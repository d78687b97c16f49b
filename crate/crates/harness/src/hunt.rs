//! Searching for the first instance where a claim fails.

use knsub_core::ring::factorize;
use knsub_core::symbolic::{zint_ideal_is_kn_closed, zint_is_kn_closed, zint_is_semi_n_absorbing};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::Catalog;
use crate::context::SuiteBounds;
use crate::error::{HarnessError, Result};
use crate::property::{run_property, Outcome};
use crate::props;
use crate::suite::build_context;

/// Hunts that search the symbolic family `cZ ⊆ Z` rather than a registered property.
pub const SYMBOLIC_HUNTS: &[&str] = &[
    "converse-of-T-t0",
    "intersection-of-semi-n-not-semi-n",
    "intersection-of-semi-n-not-semi-n-general",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntFinding {
    pub hunt: String,
    pub instance: String,
    pub witness: String,
    pub details: Value,
}

/// First failing instance of `name` in deterministic order. Symbolic hunts scan
/// `c ≤ bound`; a registered property runs on catalog modules of size at most `bound`.
pub fn hunt(name: &str, bound: u64, catalog: &Catalog, bounds: SuiteBounds) -> Result<Option<HuntFinding>> {
    match name {
        "converse-of-T-t0" => converse_of_t0(bound),
        "intersection-of-semi-n-not-semi-n" => intersection(bound),
        "intersection-of-semi-n-not-semi-n-general" => intersection_general(bound, bounds.kmax),
        _ => {
            let p = props::find(name).ok_or_else(|| HarnessError::UnknownProperty(name.to_string()))?;
            let ctx = build_context(&catalog.restricted(bound), bounds)?;
            for case in (p.generate)(p, &ctx)? {
                if let Outcome::Fails { witness } = run_property(&case)? {
                    return Ok(Some(HuntFinding {
                        hunt: name.to_string(),
                        instance: case.instance.clone(),
                        witness,
                        details: json!({ "property": p.name, "tier": p.tier }),
                    }));
                }
            }
            Ok(None)
        }
    }
}

/// `(cZ:Z) = cZ` a (2,1)-closed ideal while `cZ` is not a (2,1)-closed submodule.
fn converse_of_t0(bound: u64) -> Result<Option<HuntFinding>> {
    let (k, n) = (2, 1);
    for c in 2..=bound {
        if !zint_ideal_is_kn_closed(c, k, n)?.holds {
            continue;
        }
        if let Some(w) = zint_is_kn_closed(c, k, n)?.witness {
            return Ok(Some(HuntFinding {
                hunt: "converse-of-T-t0".into(),
                instance: format!("{c}Z, k={k}, n={n}"),
                witness: format!("r={}, m={}", w[0], w[1]),
                details: json!({ "c": c, "k": k, "n": n, "r": w[0], "m": w[1] }),
            }));
        }
    }
    Ok(None)
}

/// `p^n Z ∩ q^n Z = p^n q^n Z` with `p < q` and `n ≥ 2`, not semi-n-absorbing.
fn intersection(bound: u64) -> Result<Option<HuntFinding>> {
    for c in 2..=bound {
        let f = factorize(c);
        let parts: Vec<(u64, u32)> = f.factors().iter().map(|(&p, &e)| (p, e)).collect();
        let [(p, n), (q, nq)] = parts[..] else { continue };
        if n != nq || n < 2 {
            continue;
        }
        let semi = |x: u64| -> Result<bool> { Ok(zint_is_semi_n_absorbing(x, n)?.holds) };
        if !(semi(p.pow(n))? && semi(q.pow(n))?) {
            continue;
        }
        if let Some(w) = zint_is_semi_n_absorbing(c, n)?.witness {
            return Ok(Some(HuntFinding {
                hunt: "intersection-of-semi-n-not-semi-n".into(),
                instance: format!("{c}Z = {p}^{n}Z ∩ {q}^{n}Z, n={n}"),
                witness: format!("r={}, m={}", w[0], w[1]),
                details: json!({ "c": c, "n": n, "p": p, "q": q, "r": w[0], "m": w[1] }),
            }));
        }
    }
    Ok(None)
}

/// Any `cZ = aZ ∩ bZ` with `aZ`, `bZ` semi-n-absorbing and `cZ` not, for `2 ≤ n ≤ kmax`.
fn intersection_general(bound: u64, kmax: u32) -> Result<Option<HuntFinding>> {
    for c in 2..=bound {
        let divisors: Vec<u64> = factorize(c).divisors().into_iter().filter(|&d| d > 1 && d < c).collect();
        for n in 2..=kmax {
            let Some(w) = zint_is_semi_n_absorbing(c, n)?.witness else { continue };
            for (i, &a) in divisors.iter().enumerate() {
                for &b in &divisors[i + 1..] {
                    if num_integer::lcm(a, b) != c {
                        continue;
                    }
                    if zint_is_semi_n_absorbing(a, n)?.holds && zint_is_semi_n_absorbing(b, n)?.holds {
                        return Ok(Some(HuntFinding {
                            hunt: "intersection-of-semi-n-not-semi-n-general".into(),
                            instance: format!("{c}Z = {a}Z ∩ {b}Z, n={n}"),
                            witness: format!("r={}, m={}", w[0], w[1]),
                            details: json!({ "c": c, "n": n, "a": a, "b": b, "r": w[0], "m": w[1] }),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}
