use std::process::Command;

fn modlie(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_modlie"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

#[test]
fn analyze_d8() {
    let (code, out) = modlie(&["analyze", "D8", "--prime", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "maximal");
    assert_eq!(v["t_upper_jennings"], 3);
    assert_eq!(v["oracle"]["t_upper"], 3);
}

#[test]
fn analyze_wreath_and_inline_entry() {
    let (code, out) = modlie(&["analyze", "C3wrC3", "--prime", "3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "almost_maximal.iv");
    assert_eq!(v["t_upper_jennings"], 8);

    let (code, out) = modlie(&[
        "analyze",
        r#"{"kind":"wreath_cyclic","p":2,"q":4}"#,
        "--json",
        "--no-oracle",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 64);
    assert_eq!(v["verdict"], "almost_maximal.iii");
    assert!(v["oracle"].is_null());
}

#[test]
fn analyze_negative_control_and_errors() {
    let (code, out) = modlie(&["analyze", "S3", "--prime", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "not_lie_nilpotent");

    assert_eq!(modlie(&["analyze", "NoSuchGroup"]).0, 2);
    assert_eq!(modlie(&["analyze", r#"{"kind":"mystery"}"#]).0, 2);
    assert_eq!(modlie(&["analyze", "D8", "--prime", "4"]).0, 2);
}

#[test]
fn json_output_is_byte_identical() {
    let a = modlie(&["scan", "--prime", "3", "--max-order", "81", "--json"]);
    let b = modlie(&["scan", "--prime", "3", "--max-order", "81", "--json"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(
        v["summary"]["biconditional_violations"]
            .as_array()
            .unwrap()
            .len(),
        0
    );
    assert_eq!(v["summary"]["sharpness_witnesses"][0]["name"], "C3wrC3");
}

#[test]
fn scans_pass() {
    for (p, max) in [("2", "64"), ("5", "128")] {
        let (code, out) = modlie(&["scan", "--prime", p, "--max-order", max]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("biconditional violations: 0"));
    }
}

#[test]
fn scan_with_bad_catalog() {
    let dir = std::env::temp_dir().join(format!("modlie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.jsonl");
    std::fs::write(&path, "{\"kind\":\"cyclic\",\"order\":4}\n{not json\n").unwrap();
    let (code, _) = modlie(&["scan", "--catalog", path.to_str().unwrap()]);
    assert_eq!(code, 2);

    let big = dir.join("big.jsonl");
    std::fs::write(&big, "{\"kind\":\"wreath_cyclic\",\"p\":2,\"q\":4}\n").unwrap();
    let (code, _) = modlie(&[
        "scan",
        "--catalog",
        big.to_str().unwrap(),
        "--order-cap",
        "32",
    ]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn selftest_runs() {
    let (code, out) = modlie(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 9);
    let (code, out) = modlie(&["selftest", "--cap", "0"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[SKIP]")).count(), 3);
}
