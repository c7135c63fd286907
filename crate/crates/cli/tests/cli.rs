use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const WORKED: &str = r#"{
  "format_version": 1,
  "ring": {"kind": "integers"},
  "complex": {
    "min_degree": -1,
    "ranks": [2, 1, 1],
    "differentials": [
      {"degree": -1, "matrix": {"rows": 1, "cols": 2, "entries": [["0", "3"]]}},
      {"degree": 0, "matrix": {"rows": 1, "cols": 1, "entries": [["0"]]}}
    ]
  },
  "lefschetz": {"mode": "power", "components": [{"degree": 0, "matrix": {"rows": 1, "cols": 2, "entries": [["1", "0"]]}}]}
}"#;

const PROFILE: &str = r#"{
  "ring": {"kind": "integers"},
  "n0": 2,
  "shapes": [
    {"degree": -2, "free_rank": 1},
    {"degree": -1, "torsion": [3]},
    {"degree": 0, "free_rank": 1, "torsion": [2]},
    {"degree": 1, "torsion": [3]},
    {"degree": 2, "free_rank": 1}
  ],
  "scramble_ops": 20
}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn generated(dir: &Path, seed: &str) -> std::path::PathBuf {
    let profile = dir.join("profile.json");
    fs::write(&profile, PROFILE).unwrap();
    let out = dir.join(format!("gen{seed}.json"));
    let o = run(&["generate", "--seed", seed, "--profile", p(&profile), "-o", p(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    out
}

#[test]
fn check_generated_instance() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path(), "4");
    let o = run(&["check", p(&inst)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("n=1:") && text.contains("n=2:"), "{text}");
    assert_eq!(text.matches("PASS").count(), 2);
}

#[test]
fn decompose_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path(), "9");
    let cert = dir.path().join("gen9.cert.json");
    let o = run(&["decompose", p(&inst), "-o", p(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["verify", p(&inst), p(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("PASS"));

    let o = run(&["--json", "verify", "--all", p(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["results"][0]["status"], "PASS");
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("w.json");
    fs::write(&inst, WORKED).unwrap();
    let cert = dir.path().join("w.cert.json");
    assert_eq!(run(&["decompose", p(&inst), "-o", p(&cert)]).status.code(), Some(0));
    let text = fs::read_to_string(&cert).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entry = &mut value["summands"][0]["prj"][2]["matrix"]["entries"][0][0];
    let old: i64 = entry.as_str().unwrap().parse().unwrap();
    *entry = serde_json::Value::String((old + 1).to_string());
    fs::write(&cert, serde_json::to_string_pretty(&value).unwrap()).unwrap();
    let o = run(&["verify", p(&inst), p(&cert)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("FAIL at"), "{}", stderr(&o));
}

#[test]
fn certificate_for_another_instance_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let a = generated(dir.path(), "1");
    let b = generated(dir.path(), "2");
    let cert = dir.path().join("a.cert.json");
    assert_eq!(run(&["decompose", p(&a), "-o", p(&cert)]).status.code(), Some(0));
    let o = run(&["verify", p(&b), p(&cert)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zero_lefschetz_map_fails_at_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("zero.json");
    let text = WORKED.replace(r#"[["1", "0"]]"#, r#"[["0", "0"]]"#);
    fs::write(&inst, text).unwrap();
    let o = run(&["decompose", p(&inst), "-o", p(&dir.path().join("c.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("hard Lefschetz fails at n=1"));
    assert_eq!(run(&["check", p(&inst)]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, WORKED.replace(r#""ranks": [2, 1, 1]"#, r#""ranks": [3, 1, 1]"#)).unwrap();
    let o = run(&["check", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("d^-1"), "{}", stderr(&o));
    assert_eq!(run(&["check", p(&dir.path().join("missing.json"))]).status.code(), Some(2));
    let profile = dir.path().join("asym.json");
    fs::write(&profile, PROFILE.replace(r#"{"degree": 2, "free_rank": 1}"#, r#"{"degree": 2, "free_rank": 2}"#))
        .unwrap();
    let o = run(&["generate", "--seed", "0", "--profile", p(&profile), "-o", p(&dir.path().join("x.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cohomology_and_hom_reports() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("w.json");
    fs::write(&inst, WORKED).unwrap();
    let o = run(&["cohomology", p(&inst)]);
    assert_eq!(stdout(&o), "H^-1 = Z\nH^0 = Z/3\nH^1 = Z\n");
    let o = run(&["--json", "cohomology", p(&inst)]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["cohomology"][1]["invariant_factors"][0], "3");

    let o = run(&["hom", p(&inst), p(&inst)]);
    assert_eq!(o.status.code(), Some(0));
    // A ~ Z[1] + Z/3 + Z[-1]: two endomorphism rings Z, End(Z/3) and
    // Ext^1(Z/3, Z) from degree 0 into degree 1.
    assert_eq!(stdout(&o), "Hom = Z^2 + Z/3 + Z/3\n");
}

#[test]
fn minimize_preserves_the_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path(), "5");
    let small = dir.path().join("small.json");
    let o = run(&["minimize", p(&inst), "-o", p(&small)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let before = stdout(&run(&["cohomology", p(&inst)]));
    let after = stdout(&run(&["cohomology", p(&small)]));
    for line in after.lines() {
        assert!(before.contains(line), "{line} not in {before}");
    }
    assert_eq!(run(&["check", p(&small)]).status.code(), Some(0));
    let cert = dir.path().join("small.cert.json");
    assert_eq!(run(&["decompose", p(&small), "-o", p(&cert)]).status.code(), Some(0));
    assert_eq!(run(&["verify", p(&small), p(&cert)]).status.code(), Some(0));
}

#[test]
fn outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let x = generated(a.path(), "12");
    let y = generated(b.path(), "12");
    assert_eq!(fs::read(&x).unwrap(), fs::read(&y).unwrap());
    let (cx, cy) = (a.path().join("c.json"), b.path().join("c.json"));
    run(&["decompose", p(&x), "-o", p(&cx)]);
    run(&["decompose", p(&y), "-o", p(&cy)]);
    assert_eq!(fs::read(&cx).unwrap(), fs::read(&cy).unwrap());
}
