//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p knsub-validation -- --nocapture` to see the report.

use knsub_core::module::enumerate_submodules;
use knsub_core::predicates::{colon_test, is_kn_closed, is_quasi_prime, is_semi_n_absorbing, is_strongly_kn_closed};
use knsub_core::ring::{factorize, pow_mod};
use knsub_core::symbolic::{
    replays_zint_violation, tkn_condition, zint_ideal_is_kn_closed, zint_is_kn_closed, zint_is_n_absorbing,
    zint_is_semi_n_absorbing,
};
use knsub_core::{reduce_integer_scalars, spectrum, Submodule};
use knsub_harness::property::TierFilter;
use knsub_harness::suite::run_suite;
use knsub_harness::{Catalog, SuiteBounds};
use serde_json::Value;

struct Check {
    ok: bool,
    lines: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { ok: true, lines: Vec::new() }
    }

    fn expect(&mut self, ok: bool, line: impl Into<String>) {
        let line = line.into();
        self.lines.push(format!("    [{}] {line}", if ok { "ok" } else { "FAIL" }));
        self.ok &= ok;
    }

    fn info(&mut self, line: impl Into<String>) {
        self.lines.push(format!("    {}", line.into()));
    }
}

fn catalog_submodules() -> Vec<Submodule> {
    let bounds = SuiteBounds::default();
    let mut out = Vec::new();
    for entry in Catalog::default_catalog().entries() {
        let module = entry.build(bounds.module_cap).unwrap();
        out.extend(enumerate_submodules(&module, bounds.module_cap).unwrap().into_iter().filter(Submodule::is_proper));
    }
    out
}

fn example_fixtures() -> Check {
    let mut c = Check::new();

    let v = zint_is_kn_closed(6, 2, 1).unwrap();
    c.expect(!v.holds, format!("6Z not a (2,1)-closed submodule (engine witness {:?})", v.witness));
    c.expect(replays_zint_violation(6, 2, 1, 2, 9), "printed witness r=2 m=9 replays as a violation of (2,1) on 6Z");
    c.expect(zint_ideal_is_kn_closed(6, 2, 1).unwrap().holds, "6Z is a (2,1)-closed ideal");

    let v = zint_is_kn_closed(8, 2, 2).unwrap();
    c.expect(!v.holds && v.witness == Some(vec![2, 2]), format!("8Z not (2,2)-closed, witness {:?}", v.witness));

    c.expect(zint_is_semi_n_absorbing(30, 2).unwrap().holds, "30Z semi-2-absorbing");
    let v = zint_is_n_absorbing(30, 2).unwrap();
    c.expect(!v.holds && v.witness == Some(vec![2, 3, 5]), format!("30Z not 2-absorbing, witness {:?}", v.witness));

    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let zero = Submodule::zero(&reduce_integer_scalars(&[p.pow(n)]).unwrap());
        let nn = is_kn_closed(&zero, n, n).unwrap().holds;
        let nn1 = is_kn_closed(&zero, n, n - 1).unwrap().holds;
        let qp = is_quasi_prime(&zero).unwrap().holds;
        let semi = is_semi_n_absorbing(&zero, n - 1).unwrap().holds;
        c.expect(
            nn && !nn1 && !qp && !semi,
            format!("{{0}} in Z_{}: ({n},{n}) {nn}, ({n},{}) {nn1}, quasi-prime {qp}, semi-{} {semi}", p.pow(n), n - 1, n - 1),
        );
    }

    for (p, q, n) in [(2u64, 3u64, 2u32), (2, 3, 3)] {
        let cz = p.pow(n) * q.pow(n);
        let v = zint_is_semi_n_absorbing(cz, n).unwrap();
        c.expect(
            !v.holds && v.witness == Some(vec![p, q.pow(n)]),
            format!("{cz}Z not semi-{n}-absorbing, witness {:?}", v.witness),
        );
    }
    c
}

fn verified_suite() -> Check {
    let mut c = Check::new();
    let out = knsub_cli::execute(["knsub", "verify", "--tier", "verified", "--kmax", "4", "--nabs-max", "3", "--format", "json"]);
    c.expect(out.code == 0, format!("knsub verify exit code {}", out.code));
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    let r = &doc["result"];
    c.info(format!(
        "{} instances, {} verified failures, {} vacuous",
        r["totals"]["instances"], r["totals"]["verified_failures"], r["totals"]["vacuous"]
    ));
    let flagged = r["vacuity"]["flagged"].as_array().unwrap();
    c.expect(flagged.is_empty(), format!("vacuity audit flags {flagged:?}"));
    for w in r["vacuity"]["whitelisted"].as_array().unwrap() {
        c.info(format!("whitelisted: {} ({})", w[0].as_str().unwrap(), w[1].as_str().unwrap()));
    }
    c
}

fn scrutiny_errata() -> Check {
    let mut c = Check::new();
    let report = run_suite(&Catalog::default_catalog(), SuiteBounds::default(), TierFilter::Scrutiny, 4).unwrap();
    let first = |name: &str| -> (usize, usize, String) {
        let p = report.property(name).unwrap();
        let w = p.witnesses.first().map(|w| format!("{}: {}", w.instance, w.witness)).unwrap_or_default();
        (p.instances, p.fails, w)
    };

    for name in ["T-t1-1-n1", "T-t2-n1"] {
        let (_, fails, w) = first(name);
        c.expect(fails > 0, format!("{name} fails {fails} times, e.g. {w}"));
    }
    let v = zint_is_kn_closed(6, 2, 1).unwrap();
    c.expect(!v.holds, format!("6Z is semiprime yet not (2,1)-closed, witness {:?}", v.witness));

    let (_, fails, w) = first("E-e1");
    c.expect(fails == 1 && w.contains("x=[4]"), format!("E-e1: {w}"));
    let (_, fails, w) = first("E-e");
    c.expect(fails > 0 && w.contains("[2, 3]"), format!("E-e: {w}"));

    for name in ["T-tf2-power", "T-sloc", "T-sloc-proof"] {
        let (instances, fails, w) = first(name);
        let shown = if w.is_empty() { String::new() } else { format!(", e.g. {w}") };
        c.expect(instances > 0, format!("{name} recorded: {fails} of {instances} instances fail{shown}"));
    }
    c
}

/// Brute force over divisor pairs of `c`, straight from the definition.
fn brute_force(c: u64, k: u32, n: u32) -> bool {
    let divisors = factorize(c).divisors();
    divisors.iter().all(|&r| {
        pow_mod(r, n, c) == 0
            || divisors.iter().all(|&m| {
                let rk_m = pow_mod(r, k, c) as u128 * m as u128 % c as u128;
                let rn1_m = pow_mod(r, n - 1, c) as u128 * m as u128 % c as u128;
                rk_m != 0 || rn1_m == 0
            })
    })
}

fn oracle_equivalences(subs: &[Submodule]) -> Check {
    let mut c = Check::new();
    let primes = [2u64, 3, 5, 7];
    let mut evaluations = 0;
    let mut disagreements = Vec::new();
    for code in 0..5u32.pow(4) {
        let exps = [code % 5, code / 5 % 5, code / 25 % 5, code / 125 % 5];
        if !(1..=3).contains(&exps.iter().filter(|&&e| e > 0).count()) {
            continue;
        }
        let cz: u64 = primes.iter().zip(exps).map(|(p, e)| p.pow(e)).product();
        for k in 1..=4 {
            for n in 1..=4 {
                evaluations += 1;
                if zint_is_kn_closed(cz, k, n).unwrap().holds != brute_force(cz, k, n) {
                    disagreements.push((cz, k, n));
                }
            }
        }
    }
    c.expect(
        evaluations >= 2000 && disagreements.is_empty(),
        format!("symbolic vs brute force: {evaluations} evaluations, disagreements {disagreements:?}"),
    );

    let mut cells = 0;
    let mut mismatch = None;
    for s in subs {
        for k in 1..=4 {
            for n in 1..=4 {
                cells += 1;
                let plain = is_kn_closed(s, k, n).unwrap().holds;
                if plain != is_strongly_kn_closed(s, k, n).unwrap().holds && mismatch.is_none() {
                    mismatch = Some(format!("{} in {}, ({k},{n})", s.describe(), s.module()));
                }
            }
        }
    }
    c.expect(mismatch.is_none(), format!("strongly (k,n) iff (k,n) on {cells} catalog cells; mismatch {mismatch:?}"));
    c
}

fn spectrum_laws(subs: &[Submodule]) -> Check {
    let mut c = Check::new();
    let (mut mono, mut collapse) = (0, 0);
    let mut colon_bad = Vec::new();
    let mut cells = 0;
    for s in subs {
        let spec = spectrum(s, 4).unwrap();
        mono += spec.monotonicity_violation().is_some() as usize;
        collapse += spec.collapse_violation().is_some() as usize;
        for k in 1..=4 {
            for n in 1..=4 {
                cells += 1;
                if colon_test(s, k, n).unwrap().holds != spec.holds(k, n) {
                    colon_bad.push((format!("{} in {}", s.describe(), s.module()), k, n));
                }
            }
        }
    }
    c.expect(mono == 0, format!("monotonicity violations: {mono} of {} submodules", subs.len()));
    c.expect(collapse == 0, format!("k>n collapse violations: {collapse} of {} submodules", subs.len()));
    let below = colon_bad.iter().filter(|(_, k, n)| k + 1 < *n).count();
    c.expect(
        colon_bad.is_empty(),
        format!("colon_test iff is_kn_closed: {} of {cells} cells disagree", colon_bad.len()),
    );
    if let Some((s, k, n)) = colon_bad.first() {
        c.info(format!("first disagreement: {s}, k={k}, n={n}"));
        c.info(format!("{below} of {} disagreements have k < n-1", colon_bad.len()));
    }
    c
}

fn tkn_arithmetic() -> Check {
    let mut c = Check::new();
    let mut bad = Vec::new();
    let mut checked = 0;
    for t in 1..=12u32 {
        for k in 1..=4 {
            for n in 1..=k {
                checked += 1;
                if zint_is_kn_closed(2u64.pow(t), k, n).unwrap().holds && !tkn_condition(t, k, n) {
                    bad.push((t, k, n));
                }
            }
        }
    }
    c.expect(bad.is_empty(), format!("closed(2^t,k,n) implies the t,k,n condition on {checked} triples; violations {bad:?}"));
    let semi2: Vec<u32> = (1..=12).filter(|&t| zint_is_semi_n_absorbing(2u64.pow(t), 2).unwrap().holds).collect();
    c.expect(semi2 == [1, 2], format!("semi-2-absorbing 2^t for t <= 12: t in {semi2:?}"));
    let v = zint_is_semi_n_absorbing(8, 2).unwrap();
    c.expect(!v.holds, format!("t=3 fails, witness {:?}", v.witness));
    c
}

#[test]
fn acceptance() {
    let subs = catalog_submodules();
    let criteria: Vec<(&str, Check)> = vec![
        ("worked-example fixtures", example_fixtures()),
        ("verified-tier suite", verified_suite()),
        ("scrutiny-tier errata", scrutiny_errata()),
        ("oracle equivalences", oracle_equivalences(&subs)),
        ("spectrum laws", spectrum_laws(&subs)),
        ("tkn arithmetic", tkn_arithmetic()),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        println!("criterion {}: {} {name}", i + 1, if check.ok { "PASS" } else { "FAIL" });
        for line in &check.lines {
            println!("{line}");
        }
        if !check.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
