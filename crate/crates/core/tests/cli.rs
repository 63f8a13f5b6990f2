use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmatball")).args(args).env_remove("QMATBALL_QSAMPLE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_json_is_deterministic_and_versioned() {
    let args = ["--format", "json", "analyze", "--alpha", "0", "--beta", "-1", "--bound", "2", "--intertwiner"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["q_sample"], "49/100");
    assert_eq!(v["result"]["structure"]["case"], "case2");
    assert_eq!(v["result"]["structure"]["simples"].as_array().unwrap().len(), 2);
}

#[test]
fn plane_diagrams_follow_the_regimes() {
    // case 1: L1+ (k1 = 0) lies right of L1- (k1 = -1)
    let t = stdout(&run(&["render", "--alpha", "0", "--beta", "0", "--bound", "2"]));
    assert!(t.contains("L1+: k1 = 0") && t.contains("L1-: k1 = -1"), "{}", t);
    let ruler = t.lines().next().unwrap();
    assert!(ruler.find('-').unwrap() < ruler.find('+').unwrap(), "{}", ruler);
    // case 2: the lines coincide
    let t = stdout(&run(&["render", "--alpha", "0", "--beta", "-1", "--bound", "2"]));
    assert!(t.lines().next().unwrap().contains('*'));
    let t = stdout(&run(&["analyze", "--alpha", "0", "--beta", "-3"]));
    assert!(t.contains("Case4"), "{}", t);
    let svg = stdout(&run(&["--format", "svg", "render", "--alpha", "0", "--beta", "-2"]));
    assert!(svg.starts_with("<svg") && svg.contains("L2+"));
    let dot = stdout(&run(&["--format", "dot", "analyze", "--n", "3", "--alpha", "0", "--beta", "0", "--bound", "1"]));
    assert!(dot.starts_with("digraph") && dot.contains("->"));
    assert_eq!(run(&["--format", "svg", "render", "--n", "3", "--alpha", "0", "--beta", "0"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--suite", "confluence", "--n", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("0 failed"));
    let bad = run(&["--format", "json", "verify", "--suite", "prop21", "--n", "2"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert!(!v["result"]["checks"].as_array().unwrap().is_empty());
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn act_prints_the_poly_grammar() {
    let o = run(&["act", "--n", "1", "--alpha", "0", "--beta", "-1", "--word", "E1*F1 - F1*E1", "--poly", "z[1,1]^2"]);
    assert_eq!(stdout(&o).trim(), "(s^8+s^4+1+s^-4+s^-8)*z[1,1]^2");
    let o = run(&["act", "--n", "2", "--word", "K1", "--poly", "z[1,1]"]);
    assert_eq!(stdout(&o).trim(), "(s^2)*z[1,1]");
    assert_eq!(run(&["act", "--word", "E1*", "--poly", "z[1,1]"]).status.code(), Some(2));
    assert_eq!(run(&["act", "--word", "E9", "--poly", "z[1,1]"]).status.code(), Some(2));
}

#[test]
fn intertwiner_and_classify() {
    let t = stdout(&run(&["intertwiner", "--alpha", "1/2", "--beta", "-1/2", "--k", "1,0"]));
    assert!(t.contains("class: (1/2, -1/2) ~ (-3/2, -5/2)"), "{}", t);
    let t = stdout(&run(&["intertwiner", "--alpha", "0", "--beta", "0", "--k", "1,0"]));
    assert!(t.contains("a(1,0) = pole"), "{}", t);
    let t = stdout(&run(&["classify", "--alpha", "-1/2", "--beta", "-3/2"]));
    assert!(t.contains("principal unitary series") && t.contains(": positive"), "{}", t);
    let t = stdout(&run(&["classify", "--alpha", "-1/2", "--beta", "-1/2"]));
    assert!(t.contains("not unitarizable") && t.contains("not positive"), "{}", t);
}

#[test]
fn q_sample_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_qmatball"))
        .args(["--format", "json", "analyze", "--alpha", "0", "--beta", "0", "--bound", "1"])
        .env("QMATBALL_QSAMPLE", "1/4")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["q_sample"], "1/4");
    for bad in ["1/2", "2", "x"] {
        let o = Command::new(env!("CARGO_BIN_EXE_qmatball"))
            .args(["analyze", "--alpha", "0", "--beta", "0"])
            .env("QMATBALL_QSAMPLE", bad)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(2), "{}", bad);
    }
}
