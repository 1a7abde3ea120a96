use std::path::PathBuf;
use std::process::{Command, Output};

fn gcsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcsym"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env("GCSYM_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).display().to_string()
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn verify_single_suite_passes() {
    let o = gcsym(&["verify", "--suite", "connected-sum"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("connected-sum"));
}

#[test]
fn verify_writes_identical_json_for_equal_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let md = dir.path().join("a.md");
    for (path, extra) in [(&a, Some(&md)), (&b, None)] {
        let mut args = vec!["verify", "--suite", "surgery", "--seed", "7", "--json", path.to_str().unwrap()];
        if let Some(m) = extra {
            args.extend(["--md", m.to_str().unwrap()]);
        }
        assert_eq!(gcsym(&args).status.code(), Some(0));
    }
    let ja = std::fs::read(&a).unwrap();
    assert_eq!(ja, std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["seed"], 7);
    assert!(std::fs::read_to_string(&md).unwrap().contains("## surgery (seed 7)"));
}

#[test]
fn unknown_suite_is_input_error() {
    assert_eq!(gcsym(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn bad_flag_is_input_error() {
    assert_eq!(gcsym(&["tables", "--surface", "torus"]).status.code(), Some(2));
}

#[test]
fn spinor_type_assertion() {
    let (f, p) = (data("log_spinor.json"), data("divisor_point.json"));
    let o = gcsym(&["spinor", &f, "--point", &p, "--type", "2", "--pure"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["type_number"], 2);
    assert_eq!(v["is_pure"], true);
    assert_eq!(gcsym(&["spinor", &f, "--point", &p, "--type", "1"]).status.code(), Some(1));
}

#[test]
fn malformed_spinor_file_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, "{ \"chart\": ").unwrap();
    let o = gcsym(&["spinor", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn cohomology_of_circle() {
    let o = gcsym(&["cohomology", "--input", &data("circle.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["cohomology"], serde_json::json!([1, 1]));
}

#[test]
fn cohomology_rejects_non_complex() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("dd.json");
    std::fs::write(&f, r#"{"dims":[1,1,1],"maps":[{"from":0,"to":1,"entries":[[0,0,1]]},{"from":1,"to":2,"entries":[[0,0,1]]}]}"#)
        .unwrap();
    assert_eq!(gcsym(&["cohomology", "--input", f.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn tables_exit_codes() {
    let o = gcsym(&["tables", "--surface", "delpezzo", "--param", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(gcsym(&["tables", "--surface", "hirzebruch", "--param", "6"]).status.code(), Some(0));
    assert_eq!(gcsym(&["tables", "--surface", "hirzebruch", "--param", "2"]).status.code(), Some(1));
    assert_eq!(gcsym(&["tables", "--surface", "delpezzo", "--param", "9"]).status.code(), Some(2));
}

#[test]
fn surgery_data_validation() {
    let o = gcsym(&["surgery", "--data", "3,2,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["report"]["data"], serde_json::json!([3, 2, 1, 1]));
    assert_eq!(gcsym(&["surgery", "--data", "3,2,1,2"]).status.code(), Some(2));
    assert_eq!(gcsym(&["surgery", "--connected-sum", "2,3"]).status.code(), Some(0));
}
