use std::process::Command;

fn reflinv(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_reflinv")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(reflinv(&["frobnicate"]).0, 2);
    assert_eq!(reflinv(&["group", "build", "E8"]).0, 2);
    assert_eq!(reflinv(&["verify", "no-such-check"]).0, 2);
}

#[test]
fn verify_exit_status_tracks_failures() {
    let (code, out) = reflinv(&["verify", "03-phi-listed-F8"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS 03-phi-listed-F8 lambda 3/64"));
    let (code, out) = reflinv(&["verify", "02-invariance-listed-F6", "--format", "json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["status"], "fail");
}

#[test]
fn group_and_invariant_exports() {
    let (code, out) = reflinv(&["group", "build", "Ttilde1", "--name", "T24"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# T24 order 24\n"));
    assert_eq!(out.split("\n\n").filter(|b| !b.trim().is_empty()).count(), 24);
    assert_eq!(reflinv(&["group", "build", "F4", "--bound", "100"]).0, 1);

    let (code, out) = reflinv(&["invariant", "compute", "q", "--route", "listed"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1 ; 2 0 0 0\n1 ; 0 2 0 0\n1 ; 0 0 2 0\n1 ; 0 0 0 2\n");

    let (_, out) = reflinv(&["export", "t1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["space"], "z");
    assert_eq!(v["terms"][0]["coeffs"].as_array().unwrap().len(), 16);

    let (code, out) = reflinv(&["molien", "F4", "--max-degree", "6"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0 1\n1 0\n2 1\n3 0\n4 1\n5 0\n6 2\n");
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("reflinv-cli-{}.txt", std::process::id()));
    let (code, out) = reflinv(&["export", "F8", "--route", "listed", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 35, "{text}");
}
