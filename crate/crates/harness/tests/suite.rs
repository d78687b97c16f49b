use knsub_harness::catalog::{Catalog, CatalogEntry, RingSpec};
use knsub_harness::hunt::hunt;
use knsub_harness::property::{run_property, Outcome, TierFilter};
use knsub_harness::props::find;
use knsub_harness::suite::{build_context, run_suite, Status};
use knsub_harness::{HarnessError, SuiteBounds};

fn cyclic(m: u64) -> CatalogEntry {
    CatalogEntry { ring: RingSpec { zmod: m }, factors: vec![m], origin: None }
}

fn outcome_for(property: &str, catalog: &Catalog, instance: &str) -> Outcome {
    let p = find(property).unwrap();
    let ctx = build_context(catalog, SuiteBounds::default()).unwrap();
    let cases = (p.generate)(p, &ctx).unwrap();
    let case = cases
        .iter()
        .find(|c| c.instance == instance)
        .unwrap_or_else(|| panic!("no instance {instance:?}; have {:?}", cases.iter().take(5).collect::<Vec<_>>()));
    run_property(case).unwrap()
}

#[test]
fn residual_ideal_case_on_z12() {
    let catalog = Catalog::new(vec![cyclic(12)]);
    let got = outcome_for("T-t0", &catalog, "N=<4> in Z_12 over Z_12, k=2, n=2");
    assert_eq!(got, Outcome::Holds);
}

#[test]
fn semiprime_n1_fails_on_six_in_z36() {
    let catalog = Catalog::new(vec![cyclic(36)]);
    let got = outcome_for("T-t1-1-n1", &catalog, "N=<6> in Z_36 over Z_36, k=2, n=1");
    // Lex-least witness: 2^2·3 = 12 ∈ N, 2 ∉ (N:M), 3 ∉ N.
    assert_eq!(got, Outcome::Fails { witness: "r=2 x=3".into() });
}

#[test]
fn unsatisfied_hypothesis_is_vacuous() {
    let catalog = Catalog::new(vec![cyclic(8)]);
    // {0} ⊆ Z_8 is not semiprime.
    let got = outcome_for("T-t1-1", &catalog, "N=<0> in Z_8 over Z_8, k=1, n=2");
    assert_eq!(got, Outcome::Vacuous);
}

#[test]
fn empty_catalog_passes_with_no_instances() {
    let report = run_suite(&Catalog::default(), SuiteBounds::default(), TierFilter::All, 2).unwrap();
    assert_eq!(report.status, Status::Pass);
    assert_eq!(report.totals.instances, 0);
    assert!(report.vacuity.flagged.is_empty());
}

#[test]
fn z8_collapse_instances_hold() {
    let catalog = Catalog::new(vec![cyclic(8)]);
    let report = run_suite(&catalog, SuiteBounds::default(), TierFilter::Verified, 2).unwrap();
    let ciff = report.property("T-ciff").unwrap();
    assert!(ciff.instances > 0);
    assert_eq!(ciff.holds, ciff.instances);
}

#[test]
fn reports_are_deterministic_across_worker_counts() {
    let catalog = Catalog::new(vec![cyclic(12), cyclic(36)]);
    let a = run_suite(&catalog, SuiteBounds::default(), TierFilter::All, 1).unwrap();
    let b = run_suite(&catalog, SuiteBounds::default(), TierFilter::All, 4).unwrap();
    assert_eq!(a.stable_json(), b.stable_json());
}

#[test]
fn scrutiny_failures_do_not_gate() {
    let catalog = Catalog::new(vec![cyclic(36)]);
    let report = run_suite(&catalog, SuiteBounds::default(), TierFilter::Scrutiny, 2).unwrap();
    assert!(report.totals.scrutiny_failures > 0);
    assert_eq!(report.status, Status::Pass);
}

#[test]
fn oversized_module_is_named() {
    let catalog = Catalog::new(vec![cyclic(12), cyclic(5000)]);
    match build_context(&catalog, SuiteBounds::default()) {
        Err(HarnessError::CapExceeded { origin, size, .. }) => {
            assert_eq!(size, 5000);
            assert!(origin.contains("5000"));
        }
        other => panic!("expected cap error, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn converse_of_residual_theorem_hunt_finds_six() {
    let f = hunt("converse-of-T-t0", 100, &Catalog::default(), SuiteBounds::default()).unwrap().unwrap();
    assert_eq!(f.details["c"], 6);
    assert_eq!((f.details["k"].as_u64(), f.details["n"].as_u64()), (Some(2), Some(1)));
    assert_eq!((f.details["r"].as_u64(), f.details["m"].as_u64()), (Some(2), Some(3)));
}

#[test]
fn intersection_hunts() {
    let bounds = SuiteBounds::default();
    let f = hunt("intersection-of-semi-n-not-semi-n", 2000, &Catalog::default(), bounds).unwrap().unwrap();
    assert_eq!((f.details["c"].as_u64(), f.details["n"].as_u64()), (Some(36), Some(2)));
    assert_eq!((f.details["r"].as_u64(), f.details["m"].as_u64()), (Some(2), Some(9)));
    let g = hunt("intersection-of-semi-n-not-semi-n-general", 100, &Catalog::default(), bounds).unwrap().unwrap();
    assert_eq!(g.details["c"].as_u64(), Some(12));
}

#[test]
fn tautology_hunt_finds_nothing() {
    let got = hunt("T-t1-4", 16, &Catalog::default_catalog(), SuiteBounds::default()).unwrap();
    assert_eq!(got, None);
}

#[test]
fn unknown_hunt_is_an_error() {
    let err = hunt("no-such-claim", 10, &Catalog::default(), SuiteBounds::default()).unwrap_err();
    assert!(matches!(err, HarnessError::UnknownProperty(_)));
}
