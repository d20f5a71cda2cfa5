use fourfold_core::pipeline::{
    check_norm_certificate, check_simple_degeneration, clifford_symbol, extract_bundle, parse_and_validate,
    split_kernel_decision, NormCertificate, RamificationParams, X0_TEXT,
};
use fourfold_core::report::{analyze, canonical_json, AnalysisReport};
use fourfold_core::forms::DiagForm;
use fourfold_core::Error;
use serde_json::Value;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(parse_and_validate("x0*y0^2 + x1"), Err(Error::NotHomogeneousDegree3)));
    assert!(matches!(parse_and_validate("x0*y0^2 + y1^3"), Err(Error::PlaneNotContained(_))));
    assert!(matches!(parse_and_validate("x0*y0^2 +"), Err(Error::Syntax { .. })));
}

#[test]
fn fixture_matches_builtin() {
    assert_eq!(fixture("x0.cubic").trim(), X0_TEXT);
    let q = extract_bundle(&parse_and_validate(X0_TEXT).unwrap());
    assert_eq!(q.delta.total_degree(), 6);
    assert!(check_simple_degeneration(&q).unwrap().simple);
}

#[test]
fn report_is_reproducible() {
    let p = RamificationParams::default();
    let a = analyze(X0_TEXT, &p, false).unwrap();
    let b = analyze(X0_TEXT, &p, false).unwrap();
    assert_eq!(a.serialize(), b.serialize());
    assert!(a.verified());
    let back = AnalysisReport::parse(&a.serialize()).unwrap();
    assert_eq!(back.serialize(), a.serialize());
    let v: Value = serde_json::from_str(&a.serialize()).unwrap();
    assert_eq!(canonical_json(&v), a.serialize());
    assert_eq!(v["outcome"]["verdict"], "Verified");
    assert!(v.get("timing").is_none());
    let timed = analyze(X0_TEXT, &p, true).unwrap();
    assert!(timed.timing.is_some());
}

#[test]
fn seed_changes_only_sampling() {
    let base = analyze(X0_TEXT, &RamificationParams::default(), false).unwrap();
    let other = RamificationParams { seed: 7, ..RamificationParams::default() };
    let r = analyze(X0_TEXT, &other, false).unwrap();
    assert_eq!(r.alpha, base.alpha);
    assert_eq!(r.outcome, base.outcome);
}

#[test]
fn norm_fixture() {
    let cs = clifford_symbol(&extract_bundle(&parse_and_validate(fixture("norm_toy.cubic").trim()).unwrap())).unwrap();
    let v: Value = serde_json::from_str(&fixture("norm_toy_cert.json")).unwrap();
    let cert = NormCertificate::from_json(&v, &cs.chart.vars).unwrap();
    let chk = check_norm_certificate(&cert, &cs).unwrap();
    assert!(chk.passed(), "{:?}", chk.detail);
}

#[test]
fn kernel_of_split_fibers() {
    for xs in [[1, -1, 1, -1], [1, 2, 3, 6], [2, 3, 5, 30]] {
        let k = split_kernel_decision(&DiagForm::ints(&xs)).unwrap();
        assert!(k[0].is_zero());
        assert!(k.len() <= 2);
    }
    assert_eq!(split_kernel_decision(&DiagForm::ints(&[1, 1, 1, 3])).unwrap().len(), 1);
}
