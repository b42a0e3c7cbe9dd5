use std::process::{Command, Output};

use cli::Report;
use serde_json::Value;

fn wcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn rank_one_bracket() {
    let o = wcalc(&["bracket", "0", "0", "--t-eval", "1", "--horizon", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "{u[-T] λ u[-T]} = -λ\nPr_1: -λ\n");
}

#[test]
fn symbolic_bracket() {
    let o = wcalc(&["bracket", "0", "0", "--symbolic-t", "--horizon", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "{u[-T] λ u[-T]} = (-T)*λ");
    let o = wcalc(&["bracket", "2", "2", "--family", "poT", "--t-eval", "2", "--horizon", "10", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bracket"], "2*w[2]*λ + w[2]^(1) + (1/2)*λ^3");
    assert_eq!(v["family"], "poT");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(code(&wcalc(&["bracket", "9", "0"])), 2);
    assert_eq!(code(&wcalc(&["bracket", "0", "0", "--t-eval", "x"])), 2);
    assert_eq!(code(&wcalc(&["bracket", "0", "0", "--t-eval", "1", "--symbolic-t"])), 2);
    assert_eq!(code(&wcalc(&["bracket", "0", "0", "--family", "gl"])), 2);
    assert_eq!(code(&wcalc(&["verify", "nosuch"])), 2);
    assert_eq!(code(&wcalc(&["ssvec", "3", "--family", "sp", "--rank", "1"])), 2);
}

#[test]
fn horizon_exhaustion_exits_three() {
    let o = wcalc(&["bracket", "3", "3", "--horizon", "4"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8(o.stderr).unwrap().contains("horizon"));
}

#[test]
fn segal_sugawara_vectors() {
    let o = wcalc(&["ssvec", "1", "--family", "gl", "--rank", "2"]);
    assert_eq!(stdout(&o).trim(), "E[1,1](-1) + E[2,2](-1)");
    let o = wcalc(&["ssvec", "2", "--family", "sp", "--rank", "1"]);
    assert_eq!(stdout(&o).trim(), "-F[1,1](-1)*F[1,1](-1) - 2*F[1,1](-2) - F[2,1](-1)*F[1,2](-1)");
    let sym = wcalc(&["ssvec", "2", "--family", "gl", "--rank", "2", "--symbolic-t"]);
    assert!(stdout(&sym).contains('T'));
    let ev = wcalc(&["ssvec", "2", "--family", "gl", "--rank", "2", "--t-eval", "2"]);
    let classical = wcalc(&["ssvec", "2", "--family", "gl", "--rank", "2"]);
    assert_eq!(stdout(&ev), stdout(&classical));
}

#[test]
fn verify_suites() {
    assert_eq!(code(&wcalc(&["verify", "jacobi", "--family", "glT", "--t-eval", "2"])), 0);
    assert_eq!(code(&wcalc(&["verify", "central", "--family", "sp", "--rank", "1"])), 0);
    for suite in [["qcoeff", "glT"], ["ff", "gl"], ["skew", "glT"], ["central", "so"], ["diagrams", "gl"]] {
        let o = wcalc(&["verify", suite[0], "--family", suite[1], "--rank", "1", "--corrupt"]);
        assert_eq!(code(&o), 1, "{suite:?}");
    }
    assert_eq!(code(&wcalc(&["verify", "square", "--corrupt"])), 2);
}

#[test]
fn report_round_trips() {
    let o = wcalc(&["verify", "ff", "--family", "gl", "--rank", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let r: Report = serde_json::from_str(&text).unwrap();
    assert!(r.pass);
    assert_eq!(r.checked, 4);
    assert_eq!(r.records[1].lhs, "h[1](-1) + h[2](-1)");
    let again: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), again);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "invert", "--seed", "11", "--format", "json"];
    let (a, b) = (wcalc(&args), wcalc(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = wcalc(&["verify", "invert", "--seed", "12", "--format", "json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn compose_diagrams() {
    let cap_cup = "[(b1,b2),(t1,t2)]";
    let o = wcalc(&["diagram", "compose", "--family", "gl", "bo", "bo", "bo", cap_cup, cap_cup]);
    assert_eq!(stdout(&o).trim(), "(T)*[(b1,b2),(t1,t2)]");
    let o = wcalc(&["diagram", "compose", "--family", "sp", "bb", "bb", "bb", cap_cup, cap_cup, "--t-eval", "4"]);
    assert_eq!(stdout(&o).trim(), "(-4)*[(b1,b2),(t1,t2)]");
    assert_eq!(code(&wcalc(&["diagram", "compose", "--family", "gl", "bo", "bb", "bo", cap_cup, cap_cup])), 2);
}

#[test]
fn dump_schema() {
    let o = wcalc(&["dump", "--family", "poT", "--horizon", "10", "--table", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["family", "param", "horizon", "generators", "L", "brackets"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["generators"][0], "w[2]");
    assert_eq!(v["brackets"].as_array().unwrap().len(), 4);
}
