use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liespectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn invariants_su2() {
    let v = json_ok(&["invariants", path(&data("su2.alg"))]);
    assert_eq!(v["charpoly"], "z0^3 - 4*z0*z1^2 - 4*z0*z2^2 - 4*z0*z3^2");
    assert_eq!(v["solvable"], false);
    assert_eq!(v["poincare"], Value::Null);
    assert_eq!(v["z0_multiplicity"], 1);
}

#[test]
fn poincare_heisenberg_is_bare_list() {
    let out = run(&["poincare", path(&data("heisenberg.alg"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[1]");
    let out = run(&["poincare", path(&data("A_1_2.alg"))]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[1,3,2]");
}

#[test]
fn compare_a_family() {
    let v = json_ok(&["compare", path(&data("A_1_2.alg")), path(&data("A_1_3.alg"))]);
    assert_eq!(v["verdict"], "distinguished");
    assert_eq!(v["invariant"], "extension_spectrum_ratio");
    let v = json_ok(&["compare", path(&data("A_1_2.alg")), path(&data("A_1_2.alg"))]);
    assert_eq!(v["verdict"], "indistinguishable_by_computed_invariants");
    let v = json_ok(&["compare", path(&data("su2.alg")), path(&data("heisenberg.alg"))]);
    assert_eq!(v["invariant"], "solvable");
}

#[test]
fn domain_errors_exit_one() {
    let out = run(&["spectral", path(&data("sl2.alg"))]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "not_fully_factorable");
    let out = run(&["invariants", path(&data("L_1_1.alg")), "--tower-depth", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let f = temp("dim 3\nbracket 1 2 = 2i*x3\n");
    let out = run(&["invariants", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "consistency");

    let f = temp("dim 3\nbracket 1 2 = 2*x3 +\n");
    let out = run(&["charpoly", f.path().to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:"));

    assert_eq!(run(&["factor", "/definitely/not/here.alg"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "show", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["catalog", "show", "L_ab", "--param", "a=1", "--param", "b=0"]).status.code(),
        Some(2)
    );
}

#[test]
fn validate_reports_jacobi_failures() {
    let v = json_ok(&["validate", path(&data("sl2.alg"))]);
    assert_eq!(v["valid"], true);
    let f = temp("dim 3\nbracket 1 2 = 1*x3\nbracket 1 3 = 1*x1\n");
    let out = run(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["triple"], serde_json::json!([1, 2, 3]));
}

#[test]
fn charpoly_reduced_and_factor() {
    let v = json_ok(&["charpoly", path(&data("sl2.alg")), "--reduced"]);
    assert_eq!(v["charpoly"], "z0^2 - 4*z1^2 - 4*z2*z3");
    let v = json_ok(&["factor", path(&data("sl2.alg"))]);
    assert_eq!(v["complete"], false);
    assert_eq!(v["residual_degree"], 2);
    let v = json_ok(&["factor", path(&data("A_2+i_2.json"))]);
    assert_eq!(v["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn spectral_l_ab() {
    let v = json_ok(&["spectral", path(&data("L_1_1.alg"))]);
    assert_eq!(v["k"], 3);
    assert_eq!(v["rank_lambda"], 1);
    assert_eq!(v["nilradical_dim"], 2);
}

#[test]
fn transform_checks() {
    let u = temp(r#"{"rows": [["1","0","0"],["0","3/5+4/5i","0"],["0","0","3/5-4/5i"]]}"#);
    let v = json_ok(&[
        "transform",
        path(&data("sl2.alg")),
        "--matrix",
        u.path().to_str().unwrap(),
        "--check-aut",
        "--check-unitary",
    ]);
    assert_eq!(v["automorphism"], true);
    assert_eq!(v["unitary"], true);
    assert_eq!(v["charpoly_matches_substitution"], true);

    let swap = temp(r#"{"rows": [[0,1,0],[1,0,0],[0,0,1]]}"#);
    let v = json_ok(&[
        "transform",
        path(&data("sl2.alg")),
        "--matrix",
        swap.path().to_str().unwrap(),
        "--check-aut",
    ]);
    assert_eq!(v["automorphism"], false);
    assert_eq!(v["charpoly_matches_substitution"], true);

    let singular = temp(r#"{"rows": [[1,1,0],[1,1,0],[0,0,1]]}"#);
    let out = run(&[
        "transform",
        path(&data("sl2.alg")),
        "--matrix",
        singular.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_show_round_trips_through_files() {
    let list = json_ok(&["catalog", "list"]);
    assert!(list.as_array().unwrap().iter().any(|e| e["name"] == "A_ab"));
    for (fmt, suffix) in [("json", ".json"), ("dsl", ".alg")] {
        let out = run(&["catalog", "show", "L46", "--param", "a=1", "--param", "b=2", "--format", fmt]);
        assert_eq!(out.status.code(), Some(0));
        let f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
        std::fs::write(f.path(), &out.stdout).unwrap();
        let v = json_ok(&["poincare", f.path().to_str().unwrap()]);
        assert_eq!(v, serde_json::json!([1, 3, 2]));
    }
}

#[test]
fn rep_closed_form() {
    for m in 0..5 {
        let v = json_ok(&["rep", "sl2", "--m", &m.to_string(), "--closed-form"]);
        assert_eq!(v["matches_closed_form"], true);
        assert_eq!(v["dim"], m + 1);
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["invariants", path(&data("A_2+i_2.json"))]).stdout;
    let b = run(&["invariants", path(&data("A_2+i_2.json"))]).stdout;
    assert_eq!(a, b);
}
