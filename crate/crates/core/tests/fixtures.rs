use setcat::catalog::category;
use setcat::io::{parse_category, serialize_category, FormatError};
use setcat::premodular::{PremodularError, PremodularViolation};

fn toric_with_f_twist(twist: &str) -> String {
    let text = serialize_category(category("toric_code"));
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["twists"]["f"] = serde_json::Value::String(twist.into());
    v.to_string()
}

#[test]
fn toric_with_quarter_twist_on_f_is_rejected() {
    match parse_category(&toric_with_f_twist("1/4")) {
        Err(FormatError::Category(PremodularError::Invalid { violations, .. })) => {
            assert!(!violations.is_empty());
            assert!(violations.iter().any(|v| matches!(v, PremodularViolation::SmatrixCharacter { .. })), "{violations:?}");
        }
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn toric_fusion_with_trivial_twists_is_symmetric() {
    let p = parse_category(&toric_with_f_twist("0")).unwrap();
    assert!(p.is_symmetric());
    assert!(!p.is_nondegenerate().unwrap());
    assert_eq!(p.muger_center(), vec![0, 1, 2, 3]);
}

#[test]
fn float_dimensions_are_rejected() {
    let text = serialize_category(category("fibonacci"));
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["dims"]["tau"] = serde_json::json!(1.618);
    assert!(parse_category(&v.to_string()).unwrap_err().is_syntax());
}
