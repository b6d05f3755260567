use std::process::{Command, Output};

fn mqk(args: &[&str], seed: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mqk"))
        .args(args)
        .env("MQK_SEED", seed)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_example_passes() {
    let o = mqk(&["decompose", "--n", "2", "--dim", "3", "--coeff", "f2"], "1");
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Δ = 1×l_0 + l_0×1 + h×l_1 + l_1×h + v_2·l_0×l_0"), "{s}");
    assert!(s.lines().last().unwrap().starts_with("PASS"));
}

#[test]
fn table_has_height_relation() {
    let o = mqk(&["quadric-table", "--theory", "k2", "--coeff", "f2", "--dim", "7"], "1");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("h^4 = v_2·l_0"));
}

#[test]
fn json_is_byte_identical_for_a_seed() {
    let args = ["decompose", "--n", "2", "--dim", "9", "--coeff", "f2", "--format", "json"];
    let a = mqk(&args, "0x1234");
    let b = mqk(&args, "0x1234");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 0x1234);
    assert_eq!(v["config"]["subcommand"], "decompose");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn json_round_trip_reproduces_verdicts() {
    let o = mqk(&["verify", "--suite", "weyl,height", "--n", "2", "--dmax", "8", "--format", "json"], "7");
    assert_eq!(o.status.code(), Some(0));
    let report = mqk::driver::Report::from_json(&stdout(&o)).unwrap();
    let again = mqk::driver::rerun(&report).unwrap();
    assert_eq!(again.verdicts(), report.verdicts());
    assert_eq!(again.to_json(), stdout(&o));
}

#[test]
fn config_errors_exit_2() {
    for args in [
        vec!["decompose", "--n", "1", "--dim", "3"],
        vec!["decompose", "--n", "2", "--dim", "3", "--coeff", "q"],
        vec!["quadric-table", "--theory", "k2", "--coeff", "f2", "--dim", "5", "--trunc", "3"],
        vec!["verify", "--suite", "nope"],
        vec!["fgl", "--theory", "k9"],
    ] {
        let o = mqk(&args, "1");
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}
