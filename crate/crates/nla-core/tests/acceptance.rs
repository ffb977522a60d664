//! Acceptance gate: one test per criterion, each printing a single
//! `ACCEPT <name>: PASS|FAIL` line.  Suites are run once per process and
//! shared between the tests; towers are cached inside the library.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use nla_core::verify::{run_suite, Status, SuiteReport};

fn suites() -> &'static Mutex<HashMap<String, SuiteReport>> {
    static MEMO: OnceLock<Mutex<HashMap<String, SuiteReport>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn suite(name: &str) -> SuiteReport {
    let mut memo = suites().lock().expect("suite memo poisoned");
    if let Some(r) = memo.get(name) {
        return r.clone();
    }
    let r = run_suite(name).expect("known suite name");
    memo.insert(name.to_string(), r.clone());
    r
}

/// True when the named check exists and passed.
fn passed(rep: &SuiteReport, check: &str) -> bool {
    matches!(rep.check(check), Some(c) if c.status == Status::Pass)
}

fn all_passed(rep: &SuiteReport, prefix: &str) -> bool {
    let matching: Vec<_> = rep
        .checks
        .iter()
        .filter(|c| c.name.starts_with(prefix))
        .collect();
    !matching.is_empty() && matching.iter().all(|c| c.status == Status::Pass)
}

fn accept(slug: &str, ok: bool, context: &str) {
    if ok {
        println!("ACCEPT {slug}: PASS");
    } else {
        println!("ACCEPT {slug}: FAIL — {context}");
    }
    assert!(ok, "acceptance criterion {slug} failed: {context}");
}

fn failures(rep: &SuiteReport) -> String {
    let bad: Vec<String> = rep
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| format!("{}: {}", c.name, c.details))
        .collect();
    if bad.is_empty() {
        "all checks passed".into()
    } else {
        bad.join(" | ")
    }
}

#[test]
fn c01_small_pair_dimensions() {
    let rep = suite("examples");
    let ok = passed(&rep, "involutive-pair-dimension")
        && passed(&rep, "trivial-edge-kills-minus-bracket")
        && passed(&rep, "negative-edge-keeps-minus-bracket")
        && passed(&rep, "twist-equivalent-but-different-spans");
    accept("small-pair-dimensions", ok, &failures(&rep));
}

#[test]
fn c02_unbraided_pair_growth() {
    let rep = suite("examples");
    let ok = passed(&rep, "unbraided-pair-linear-growth");
    accept("unbraided-pair-growth", ok, &failures(&rep));
}

#[test]
fn c03_quantum_linear_decomposition() {
    let rep = suite("quantum-linear");
    accept("quantum-linear-decomposition", rep.ok(), &failures(&rep));
}

#[test]
fn c04_complete_diagram_span() {
    let rep = suite("complete-diagrams");
    accept("complete-diagram-span", rep.ok(), &failures(&rep));
}

#[test]
fn c05_symmetrizer_oracle() {
    let rep = suite("oracle");
    accept("symmetrizer-oracle", rep.ok(), &failures(&rep));
}

#[test]
fn c06_derivation_identities() {
    let rep = suite("identities");
    let ok = all_passed(&rep, "nested-bracket-derivations-")
        && all_passed(&rep, "bracket-derivation-transport-")
        && all_passed(&rep, "alternating-chain-pairings-")
        && passed(&rep, "power-derivation-expansion")
        && all_passed(&rep, "chain-derivations-");
    accept("derivation-identities", ok, &failures(&rep));
}

#[test]
fn c07_braided_jacobi() {
    let rep = suite("identities");
    let ok = passed(&rep, "braided-jacobi-random-triples");
    accept("braided-jacobi", ok, &failures(&rep));
}

#[test]
fn c08_power_nilpotency() {
    let rep = suite("nilpotency");
    accept("power-nilpotency", rep.ok(), &failures(&rep));
}

#[test]
fn c09_superletter_rows() {
    let rep = suite("superletter-rows");
    let ok = passed(&rep, "simply-laced-row")
        && passed(&rep, "two-root-length-row")
        && passed(&rep, "letter-code-table");
    accept("superletter-rows", ok, &failures(&rep));
}

#[test]
fn c10_closed_form_bounds() {
    let rep = suite("bounds");
    accept("closed-form-bounds", rep.ok(), &failures(&rep));
}

#[test]
fn c11_derived_series() {
    let rep = suite("derived-series");
    accept("derived-series", rep.ok(), &failures(&rep));
}

#[test]
fn c12_graded_product_basis() {
    let rep = suite("superletter-rows");
    let ok = all_passed(&rep, "graded-products-")
        && passed(&rep, "undecided-candidate-is-reported");
    accept("graded-product-basis", ok, &failures(&rep));
}
