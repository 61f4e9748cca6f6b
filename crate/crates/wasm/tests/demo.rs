use std::f64::consts::FRAC_PI_6;

use syncorr_wasm::{classify, explore, landscape};

#[test]
fn explorer_reports_p0_violation() {
    let v = explore(FRAC_PI_6, 0.0, -FRAC_PI_6, 0.0).unwrap();
    assert_eq!(v["bell"]["violated"], "J0");
    assert!((v["bell"]["values"][0].as_f64().unwrap() - 1.125).abs() < 1e-12);
    assert_eq!(v["correlation"]["entries"].as_array().unwrap().len(), 4);
}

#[test]
fn landscape_floor_is_minus_one_eighth() {
    let v = landscape("J1", 0.0, 64).unwrap();
    assert_eq!(v["values"].as_array().unwrap().len(), 64 * 64);
    let min = v["min"].as_f64().unwrap();
    assert!((-0.125 - 1e-12..-0.1).contains(&min));
    assert!(landscape("J9", 0.0, 64).is_err());
    assert!(landscape("J0", 0.0, 4).is_err());
}

#[test]
fn classifier_verdicts() {
    let v = classify(r#"["1/2","0","0","0","1/2","1/2","0","1/2","1/2"]"#).unwrap();
    assert_eq!(v["classical"], true);

    let p0 = r#"["1/2","1/8","1/8","1/8","1/2","1/8","1/8","1/8","1/2"]"#;
    let v = classify(p0).unwrap();
    assert_eq!(v["classical"], false);
    assert_eq!(v["bell"]["violated"], "J0");
    assert!(v["certificate"]["functional"].is_object());

    let v = classify(r#"[0,"1/2",0,0,1,0,0,0,0]"#).unwrap();
    assert_eq!(v["nonsignaling"], false);
    assert!(classify("[1,2]").is_err());
    assert!(classify("not json").is_err());
}
