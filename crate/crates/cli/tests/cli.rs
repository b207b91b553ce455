use std::process::{Command, Output};

fn berkred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berkred")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = berkred(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const LOX: [&str; 6] = ["--p", "3", "--e", "2", "--map", "-z*(z-10)/(z-4)"];

#[test]
fn eval_ordres_at_the_gauss_point() {
    assert_eq!(stdout(&["eval-ordres", "--p", "5", "--map", "z^2", "--point", "0@0"]), "0\n");
}

#[test]
fn eval_hypres() {
    assert_eq!(stdout(&["eval-hypres", "--p", "5", "--map", "5*z^2", "--point", "0@1"]), "-1/2\n");
    assert_eq!(stdout(&["eval-hypres", "--p", "5", "--map", "z^2", "--point", "0@-1"]), "1/2\n");
}

#[test]
fn profile_csv() {
    let out = stdout(&["profile", "--p", "5", "--map", "5*z^2", "--from", "0@-1", "--to", "0@2", "--samples", "4"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,ord_res,hyp_res"));
    let ord: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(ord, ["4", "2", "0", "2"]);
}

#[test]
fn verify_json_report() {
    let mut args = vec!["verify"];
    args.extend(LOX);
    args.extend(["--iters", "4", "--format", "json"]);
    let out = stdout(&args);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["classification"], "BijectiveCyclic");
    assert_eq!(v["period"], 2);
    assert_eq!(v["field"]["p"], 3);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    let loci: Vec<(String, String)> = v["per_j"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["locus"]["center"].as_str().unwrap().to_string(), r["locus"]["t"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(loci[0], ("0".into(), "0".into()));
    assert!(loci[1..].iter().all(|(_, t)| t == "-1/2"));
    assert!(v["per_j"].as_array().unwrap().iter().all(|r| r["millis"].is_null()));
    assert_eq!(out, stdout(&args), "output is deterministic");
}

#[test]
fn classify_and_minlocus() {
    let mut args = vec!["classify"];
    args.extend(LOX);
    assert_eq!(stdout(&args), "BijectiveCyclic(2)\n");
    assert_eq!(stdout(&["classify", "--backend", "laurent", "--map", "s*z*(z-(1+t^2))/(z-(1+t))"]), "BijectiveAcyclic\n");
    assert_eq!(stdout(&["minlocus", "--p", "5", "--map", "5*z^2"]), "0@1\n");
}

#[test]
fn depths_text_and_csv() {
    let out = stdout(&["depths", "--p", "3", "--map", "3*z^2", "--point", "0@0"]);
    assert!(out.ends_with("point_mass 0\n"), "{out}");
    let csv = stdout(&["depths", "--p", "3", "--map", "3*z^2", "--format", "csv"]);
    assert!(csv.starts_with("direction,depth\n"));
}

#[test]
fn usage_errors_exit_nonzero() {
    for args in [
        vec!["eval-ordres", "--map", "z^2"],
        vec!["bogus"],
        vec!["eval-ordres", "--p", "4", "--map", "z^2"],
        vec!["eval-ordres", "--p", "5", "--map", "z^"],
        vec!["classify", "--p", "5", "--map", "z^2", "--format", "csv"],
        vec!["verify", "--p", "5", "--map", "z^2", "--iters", "7"],
    ] {
        let out = berkred(&args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty(), "{args:?} should explain");
    }
}
