use mqk::verify::{Check, Status, Suite, SuiteParams};

#[test]
fn panics_become_failures() {
    let c = Check::run("boom", || panic!("bad input"));
    assert_eq!(c.status, Status::Fail);
    assert!(c.witness.unwrap().contains("bad input"));
}

#[test]
fn failing_closure_keeps_witness() {
    let c = Check::run("x", || Err("coefficient of t^4: 1 vs 0".into()));
    assert!(!c.passed());
    assert_eq!(c.witness.as_deref(), Some("coefficient of t^4: 1 vs 0"));
    assert!(Check::run("y", || Ok(())).passed());
}

#[test]
fn verdicts_serialize_uppercase() {
    let json = serde_json::to_string(&Check::pass("a")).unwrap();
    assert_eq!(json, r#"{"name":"a","status":"PASS"}"#);
}

#[test]
fn sweeps_are_deterministic() {
    let p = SuiteParams { ns: vec![2], dmax: 6, seed: 99 };
    let a = mqk::verify::run(&[Suite::Algebra, Suite::Diagonal], &p);
    let b = mqk::verify::run(&[Suite::Algebra, Suite::Diagonal], &p);
    assert_eq!(a, b);
    assert!(a.iter().all(Check::passed));
}
