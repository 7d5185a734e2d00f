use std::process::{Command, Output};

use serde_json::Value;

fn frobenius(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobenius")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = frobenius(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn fs_closed_cubic_at_seven() {
    let v = json(&["fs-closed", "--p", "7", "--d", "3", "--n", "4"]);
    assert_eq!(v["result"]["s"], "21/170");
    assert_eq!(v["result"]["B"], 3);
    assert_eq!(v["result"]["fs_1"], 45);
    assert_eq!(v["result"]["cubic_formula_agrees"], true);
    assert_eq!(v["request"]["p"], 7);
    assert!(!v["anchors"].as_array().unwrap().is_empty());
}

#[test]
fn phi_point_and_table() {
    let v = json(&["phi", "--degrees", "2,2,2", "--p", "3", "--e", "1", "--a", "2"]);
    assert_eq!(v["result"]["phi"], "22/27");
    let v = json(&["psi", "--degrees", "2,2,2", "--p", "3", "--e", "1", "--a", "2"]);
    assert_eq!(v["result"]["psi"], "5/27");
    let v = json(&["phi", "--degrees", "2,2,2", "--p", "3", "--e", "1"]);
    let phis: Vec<&str> = v["result"]["rows"].as_array().unwrap().iter().map(|r| r["phi"].as_str().unwrap()).collect();
    assert_eq!(phis, ["0", "13/27", "22/27", "1"]);
}

#[test]
fn generic_polynomial_matches_diagonal() {
    let a = json(&["hk", "--degrees", "2,3,3", "--p", "5", "--e", "1"]);
    let b = json(&["hk", "--poly", "x^2 + y^3 + z^3", "--p", "5", "--e", "1"]);
    assert_eq!(a["result"]["hk"], b["result"]["hk"]);
    let a = json(&["fs", "--degrees", "2,2,2", "--p", "3", "--e", "2"]);
    let b = json(&["fs", "--poly", "x^2 + y^2 + z^2", "--p", "3", "--e", "2"]);
    assert_eq!(a["result"]["fs"], 41);
    assert_eq!(b["result"]["fs"], 41);
}

#[test]
fn limit_phi_of_the_cusp() {
    let v = json(&["limit-phi", "--degrees", "2,3"]);
    assert_eq!(v["result"]["breakpoints"], serde_json::json!(["0", "1/6", "5/6", "1"]));
    let pieces = v["result"]["pieces"].as_array().unwrap();
    assert_eq!(pieces[0], "[0, 1/6]: 2t");
    assert_eq!(pieces[2], "[5/6, 1]: 1");
    let v = json(&["lct", "--degrees", "2,3"]);
    assert_eq!(v["result"]["lct"], "5/6");
}

#[test]
fn quadric_limits() {
    let v = json(&["quadric", "--n", "3"]);
    assert_eq!(v["result"]["limit_hk"], "3/2");
    assert_eq!(v["result"]["limit_fs"], "1/2");
    let v = json(&["quadric", "--n", "3", "--decimal", "3"]);
    assert_eq!(v["result"]["limit_hk"], "1.500");
}

#[test]
fn exit_codes() {
    // shape hypothesis violated
    assert_eq!(frobenius(&["fs-closed", "--p", "7", "--d", "3", "--n", "3"]).status.code(), Some(2));
    // parity hypothesis violated
    assert_eq!(frobenius(&["fs-closed", "--p", "11", "--d", "4", "--n", "5"]).status.code(), Some(2));
    assert_eq!(frobenius(&["d-number", "--p", "3", "--k", "5,5", "--method", "hm"]).status.code(), Some(2));
    let out = frobenius(&["fs-series", "--rules", "/nonexistent/rules"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
    assert_eq!(frobenius(&["census", "--bound", "12"]).status.code(), Some(0));
}

#[test]
fn json_round_trips() {
    let text = stdout(&["fs-series", "--p", "5", "--d", "3", "--n", "4", "--terms", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    let fs: Vec<&Value> = v["result"]["rows"].as_array().unwrap().iter().map(|r| &r["fs"]).collect();
    assert_eq!(fs, [1, 16, 1891]);
    assert_eq!(v["result"]["s"], "15/124");
}

#[test]
fn csv_is_stable() {
    let args = ["phi", "--degrees", "2,2,2", "--p", "3", "--e", "1", "--format", "csv"];
    let first = stdout(&args);
    assert_eq!(first, "a,t,phi\n0,0,0\n1,1/3,13/27\n2,2/3,22/27\n3,1,1\n");
    assert_eq!(stdout(&args), first);
    let single = stdout(&["watanabe-yoshida", "--p", "19", "--d", "5", "--format", "csv"]);
    assert_eq!(single, "s,bound,verdict\n455/275122,1/384,strict-less\n");
}

#[test]
fn rule_file_from_disk() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/char7.rules");
    let v = json(&["fs-series", "--rules", path]);
    assert_eq!(v["result"]["s"], "182139/40118308");
}

#[test]
fn d_number_methods_agree() {
    let v = json(&["d-number", "--p", "3", "--k", "2,2,3"]);
    assert_eq!(v["result"]["d"], 4);
    assert_eq!(v["result"]["hm"], 4);
    assert_eq!(v["result"]["repring"], 4);
}

#[test]
fn verify_paper_subset() {
    let v = json(&["verify-paper", "--only", "cubic"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert!(rows.len() >= 5);
    assert!(rows.iter().all(|r| r["status"] == "pass"));
    assert_eq!(v["result"]["passed"], v["result"]["total"]);
}

#[test]
fn verify_paper_full_run_passes() {
    let out = frobenius(&["verify-paper"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(!text.contains("FAIL"));
}
