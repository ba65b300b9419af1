use std::fs;

use qtoric::cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn qtoric(args: &[&str]) -> (i32, String) {
    run(std::iter::once("qtoric").chain(args.iter().copied()))
}

#[test]
fn golden_outputs() {
    assert_eq!(qtoric(&["chern", "n7", "--partition", "4,3"]), (EXIT_OK, "-2\n".into()));
    assert_eq!(qtoric(&["chern", "n8", "--partition", "4,4"]), (EXIT_OK, "4\n".into()));
    assert_eq!(qtoric(&["chern", "n12", "--partition", "6,6"]), (EXIT_OK, "64\n".into()));
    assert_eq!(qtoric(&["special", "n8"]), (EXIT_OK, "true\n".into()));
    assert_eq!(qtoric(&["stong", "--params", "1,1", "--indecomposable"]), (EXIT_OK, "false\n".into()));
    assert_eq!(qtoric(&["stong", "--params", "2,0,0,0", "--orientable"]), (EXIT_OK, "true\n".into()));
    assert_eq!(qtoric(&["validate", "type-b", "--l", "1"]), (EXIT_OK, "valid\n".into()));
}

#[test]
fn cohomology_of_n7() {
    let (code, out) = qtoric(&["cohomology", "n7"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("r1 = x^5\n"));
    assert!(out.contains("r2 = x*y^3 + y^4\n"));
    assert!(out.contains("F[2,1] = -x - y\n"));
    assert!(out.contains("top: x^4*y^3\n"));
}

#[test]
fn full_tables_and_verdicts() {
    let (code, out) = qtoric(&["chern", "n7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 15 + 2);
    assert!(out.contains("[4,3] -2\n"));
    assert!(out.contains("nonzero_unitary: [5,2]\n"));
    let (code, out) = qtoric(&["sw", "type-a"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("[3,2] 1\n"));
    assert!(out.contains("nonbounding_unoriented: [3,2]\n"));
}

#[test]
fn json_is_byte_stable() {
    let args = ["--json", "chern", "n8"];
    let (code, a) = qtoric(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, qtoric(&args).1);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in ["command", "inputs", "results", "verdicts", "timing"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "chern");
    assert!(v["timing"].is_null());
    assert_eq!(v["verdicts"]["nonzero_unitary"], serde_json::json!([4, 4]));

    let search = ["--json", "search", "--dims", "1,2", "--bound", "2", "--mode", "randomized", "--seed", "3", "--budget", "30"];
    assert_eq!(qtoric(&search), qtoric(&search));

    let (_, timed) = qtoric(&["--json", "--timing", "special", "n7"]);
    let v: serde_json::Value = serde_json::from_str(&timed).unwrap();
    assert!(v["timing"]["seconds"].is_number());
}

#[test]
fn matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp1.txt");
    fs::write(&path, "# interval\n1 2 INT\n1 -1\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(qtoric(&["chern", "--matrix", p, "--dims", "1"]), (EXIT_OK, "[1] 2\nnonzero_unitary: [1]\nnonbounding_unoriented: none\n".into()));
    assert_eq!(qtoric(&["special", "--matrix", p, "--dims", "1"]), (EXIT_OK, "false\n".into()));

    let (_, built) = qtoric(&["build", "n7"]);
    let n7 = dir.path().join("n7.txt");
    fs::write(&n7, &built).unwrap();
    let p7 = n7.to_str().unwrap();
    assert_eq!(qtoric(&["chern", "--matrix", p7, "--dims", "4,3", "--partition", "4,3"]), (EXIT_OK, "-2\n".into()));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 2 INT\n1 x\n").unwrap();
    let (code, out) = qtoric(&["validate", "--matrix", bad.to_str().unwrap(), "--dims", "1"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.starts_with("error: parse error"));

    let (code, out) = qtoric(&["validate", "--matrix", p, "--dims", "2"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.contains("dimension mismatch") || out.contains("parse error"), "{out}");

    let zero = dir.path().join("zero.txt");
    fs::write(&zero, "1 2 INT\n1 0\n").unwrap();
    let (code, out) = qtoric(&["validate", "--matrix", zero.to_str().unwrap(), "--dims", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("invalid: vertex"));
}

#[test]
fn error_codes() {
    assert_eq!(qtoric(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(qtoric(&["chern"]).0, EXIT_USAGE);
    assert_eq!(qtoric(&["chern", "n9"]).0, EXIT_USAGE);
    assert_eq!(qtoric(&["chern", "--matrix", "x.txt"]).0, EXIT_USAGE);
    assert_eq!(qtoric(&["search", "--dims", "1,1", "--mode", "sideways"]).0, EXIT_USAGE);

    let (code, out) = qtoric(&["chern", "n7", "--partition", "4,4"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.contains("invalid partition"));
    let (code, out) = qtoric(&["verify-main", "--lmax", "-1"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.contains("non-negative"));
    let (code, out) = qtoric(&["stong", "--params", "4,2,0,0,0,0", "--cross-check", "--cap", "8"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.contains("exceeds the configured cap"));
    assert_eq!(qtoric(&["stong", "--params", "1,2"]).0, EXIT_DOMAIN);
    assert_eq!(qtoric(&["search", "--dims", "1,1", "--bound", "0"]).0, EXIT_DOMAIN);
}

#[test]
fn verify_and_search() {
    let (code, out) = qtoric(&["verify-main", "--lmax", "0"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("overall: pass\n"));
    assert!(out.contains("n7 [4,3] = -2 (expected -2): pass"));

    let (code, out) = qtoric(&["search", "--dims", "1,1", "--bound", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "space 16 examined 16 valid 3 special 3 complete true\n");

    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck");
    let ck = ck.to_str().unwrap();
    let (_, first) = qtoric(&["search", "--dims", "1,1", "--bound", "2", "--budget", "10", "--checkpoint", ck]);
    assert!(first.contains("next 10"));
    let (_, second) = qtoric(&["search", "--dims", "1,1", "--bound", "2", "--budget", "10", "--checkpoint", ck]);
    assert!(second.starts_with("space 16 examined 6"));
}
