use bianchi_web::{expand, group, verify};
use serde_json::Value;

#[test]
fn expand_g1() {
    let text = expand("g1", "4").unwrap();
    assert_eq!(text, "0  1\n1  -2\n2  4\n3  -4\nO(q^4)");
    assert!(expand("nope", "4").is_err());
    assert!(expand("g1", "x").is_err());
}

#[test]
fn verify_one() {
    let v: Value = serde_json::from_str(&verify("delta-squared", "20", 20, 7).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    let v: Value = serde_json::from_str(&verify("addition-eq11", "20", 5, 7).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(verify("nope", "20", 5, 7).is_err());
}

#[test]
fn group_g3() {
    let v: Value = serde_json::from_str(&group("G3").unwrap()).unwrap();
    assert_eq!(v["genus_data"]["genus"], 4);
    assert!(group("Gamma(99)").is_err());
}
