use std::process::{Command, Output};

use serde_json::Value;

fn bianchi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bianchi"))
        .args(args)
        .env_remove("BIANCHI_SERIES_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn coords(v: &Value) -> String {
    v["coords"].to_string()
}

fn distance(a: &Value, b: &Value) -> f64 {
    let pts = |v: &Value| -> Vec<(f64, f64)> {
        v["coords"].as_array().unwrap().iter().map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap())).collect()
    };
    // both sides come normalized, so coordinates compare directly
    pts(a).iter().zip(pts(b)).map(|(x, y)| (x.0 - y.0).hypot(x.1 - y.1)).fold(0.0, f64::max)
}

#[test]
fn expand_g1_text() {
    let o = bianchi(&["expand", "g1", "--order", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0  1\n1  -2\n2  4\n3  -4\n4  2\n5  2\n6  -8\nO(q^7)\n");
}

#[test]
fn expand_phi_fractional_order() {
    let o = bianchi(&["expand", "phi", "--order", "52/5"]);
    let text = stdout(&o);
    assert!(text.contains("51/5  2\n"));
    assert!(!text.contains("16/5"));
    assert!(text.ends_with("O(q^52/5)\n"));
}

#[test]
fn expand_json_shape() {
    let v = json(&bianchi(&["expand", "j", "--order", "2", "--format", "json"]));
    assert_eq!(v["lo"], -1);
    assert_eq!(v["ram"], 1);
}

#[test]
fn order_flag_overrides_environment() {
    let env = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_bianchi"))
            .args(["expand", "j5"])
            .args(extra)
            .env("BIANCHI_SERIES_ORDER", "2")
            .output()
            .unwrap()
    };
    assert!(stdout(&env(&[])).ends_with("O(q^2)\n"));
    assert!(stdout(&env(&["--order", "3"])).ends_with("O(q^3)\n"));
    assert!(stdout(&bianchi(&["expand", "j5"])).ends_with("O(q^10)\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(bianchi(&["verify", "delta-squared", "sym-e1"]).status.code(), Some(0));
    assert_eq!(bianchi(&["verify", "no-such-identity"]).status.code(), Some(2));
    assert_eq!(bianchi(&["expand", "nope"]).status.code(), Some(2));
    assert_eq!(bianchi(&["group", "Gamma(31)"]).status.code(), Some(2));
    assert_eq!(bianchi(&["point", "add", "--phi", "0.3", "--p", "[[1,0]]", "--q", "[[1,0]]"]).status.code(), Some(2));
    // a tolerance nothing can meet makes the numeric checks fail
    let o = bianchi(&["verify", "jacobi-A4", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["checks"][0]["status"], "fail");
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "jacobi-A4", "addition-eq11", "sym-e2", "--seed", "11"];
    let a = bianchi(&args);
    let b = bianchi(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], 3);
    assert!(v.get("elapsed_ms").is_none());
    assert!(json(&bianchi(&["verify", "sym-e1", "--timing"])).get("elapsed_ms").is_some());
}

#[test]
fn points_round_trip() {
    let v = json(&bianchi(&["point", "theta", "--tau", "0.1+1.2i", "--z", "0.17+0.3i"]));
    let p = coords(&v["result"]);
    let o = json(&bianchi(&["point", "on-curve", "--tau", "0.1+1.2i", "--p", &p, "--tol", "1e-12"]));
    assert_eq!(o["on_curve"], true);

    let neutral = json(&bianchi(&["point", "theta", "--tau", "0.1+1.2i", "--z", "0"]));
    let sum = json(&bianchi(&["point", "add", "--tau", "0.1+1.2i", "--p", &p, "--q", &coords(&neutral["result"])]));
    assert!(distance(&sum["result"], &v["result"]) < 1e-9);
}

#[test]
fn two_torsion_doubles_to_neutral() {
    let v = json(&bianchi(&["point", "two-torsion", "--tau", "1.1i"]));
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 3);
    let neutral = json(&bianchi(&["point", "theta", "--tau", "1.1i", "--z", "0"]));
    for p in pts {
        let d = json(&bianchi(&["point", "double", "--tau", "1.1i", "--p", &coords(p)]));
        assert!(distance(&d["result"], &neutral["result"]) < 1e-9);
    }
}

#[test]
fn group_reports() {
    let v = json(&bianchi(&["group", "G4", "--inside", "Gamma(5)"]));
    assert_eq!(v["genus_data"]["genus"], 5);
    assert_eq!(v["report"]["index"], 2);
    let v = json(&bianchi(&["group", "Gamma(10)"]));
    assert_eq!(v["genus_data"]["genus"], 13);
    assert_eq!(v["genus_data"]["cusps"], 36);
}

#[test]
fn group_dot() {
    let o = bianchi(&["group", "--dot"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("label=\"G1\\n"));
    assert!(text.trim_end().ends_with('}'));
}

#[test]
fn list_sections() {
    let text = stdout(&bianchi(&["list", "identities"]));
    assert_eq!(text.lines().count(), 69);
    assert!(stdout(&bianchi(&["list", "groups"])).contains("Gamma(10)"));
}
