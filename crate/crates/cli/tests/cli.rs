use std::fs;
use std::path::PathBuf;
use std::process::Command;

use killform::curvature_file::CurvatureFile;
use killform_core::CurvatureTensor;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn killform(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_killform"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout))
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn catalog_lists_kinds_and_schemas() {
    let run = killform(&["catalog"]);
    assert_eq!(run.code, 0);
    for needle in ["weyl4", "sphere n kappa", "file <path>"] {
        assert!(run.stdout.contains(needle), "{needle}");
    }
    let v = json(&run);
    assert_eq!(v["kinds"].as_array().unwrap().len(), 6);
    assert!(v["probes"].as_array().unwrap().contains(&"weyl4".into()));
    let human = killform(&["catalog", "--human"]);
    assert!(human.stdout.contains("sphere n kappa"));
}

#[test]
fn verify_weyl4_in_degree_two() {
    let run = killform(&["verify", "--model", "weyl4", "--p", "2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    for name in ["lemma_l1", "sym_corollary", "lemma2", "cont_k1", "cont_k2"] {
        let c = checks.iter().find(|c| c["name"] == name).unwrap();
        assert!(c["residual"].as_f64().unwrap() < 1e-8, "{name}");
    }
}

#[test]
fn verify_round_sphere() {
    let run = killform(&["verify", "--model", "sphere", "--n", "5", "--kappa", "1"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 6);
    let checks = v["checks"].as_array().unwrap();
    // the volume form is the only fixed form in top degree
    let p1 = checks
        .iter()
        .find(|c| c["name"] == "p1" && c["p"] == 5)
        .unwrap();
    assert_eq!(p1["status"], "pass");
    assert!(checks.iter().any(|c| c["name"] == "casimir_kernel"));
}

#[test]
fn verify_other_models() {
    for args in [
        &["--model", "cpn", "--m", "2"][..],
        &["--model", "product", "--factors", "sphere:2:1,flat:2"],
        &["--model", "sphere:3*sphere:2"],
        &["--model", "weyl4", "--n", "5"],
        &["--model", "sphere", "--n", "4", "--kappa", "-1"],
    ] {
        let mut full = vec!["verify"];
        full.extend_from_slice(args);
        let run = killform(&full);
        assert_eq!(run.code, 0, "{args:?}: {}", run.stderr);
    }
}

#[test]
fn curvature_files() {
    let bad = scratch("bad.json");
    fs::write(
        &bad,
        r#"{"n": 4, "entries": [{"i": 1, "j": 2, "k": 3, "l": 4, "value": 1.0}]}"#,
    )
    .unwrap();
    let run = killform(&["verify", "--model", "file", "--path", bad.to_str().unwrap()]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("Bianchi"), "{}", run.stderr);

    let good = scratch("cp2.json");
    let file = CurvatureFile::from_tensor(&CurvatureTensor::fubini_study(2));
    fs::write(&good, serde_json::to_string(&file).unwrap()).unwrap();
    let path = good.to_str().unwrap();
    let run = killform(&["verify", "--model", "file", "--path", path]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let skipped = json(&run)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"] == "casimir_kernel")
        .all(|c| c["status"] == "skipped");
    assert!(skipped);
    let from_file = json(&killform(&[
        "classify", "--model", "file", "--path", path, "--p", "2",
    ]));
    let direct = json(&killform(&[
        "classify", "--model", "cpn", "--m", "2", "--p", "2",
    ]));
    assert_eq!(from_file["dims"], direct["dims"]);
    assert_eq!(from_file["branch"], direct["branch"]);

    let missing = killform(&["verify", "--model", "file", "--path", "/nonexistent.json"]);
    assert_eq!(missing.code, 2);
    let zero_index = scratch("zero.json");
    fs::write(
        &zero_index,
        r#"{"n": 3, "entries": [{"i": 0, "j": 1, "k": 0, "l": 1, "value": 1.0}]}"#,
    )
    .unwrap();
    let run = killform(&[
        "classify",
        "--model",
        "file",
        "--path",
        zero_index.to_str().unwrap(),
        "--p",
        "1",
    ]);
    assert_eq!(run.code, 2);
}

#[test]
fn classify_examples() {
    let v = json(&killform(&[
        "classify", "--model", "sphere", "--n", "5", "--p", "2",
    ]));
    assert_eq!(v["branch"], "SPACE_FORM");
    assert_eq!(v["dims"]["E"], 10);

    let v = json(&killform(&[
        "classify", "--model", "cpn", "--m", "2", "--p", "2",
    ]));
    assert_ne!(v["branch"], "SPACE_FORM");
    assert_eq!(v["flags"]["kahler"], true);
    for key in [
        "model",
        "n",
        "p",
        "dims",
        "branch",
        "flags",
        "residuals",
        "trace",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    for key in ["E0", "F0", "E", "F"] {
        assert!(v["dims"][key].is_u64());
    }

    let v = json(&killform(&["classify", "--model", "weyl4", "--p", "2"]));
    let beta = &v["beta_direction"];
    assert_eq!(beta["form"], "e1^e3 - e2^e4");
    assert_eq!(beta["excluded"], true);
    assert!(beta["k1_residual"].as_f64().unwrap() > 0.5);

    let v = json(&killform(&[
        "classify", "--model", "weyl4", "--n", "5", "--p", "3",
    ]));
    assert_eq!(v["beta_direction"]["form"], "e1^e3^e5 - e2^e4^e5");
    assert_ne!(v["branch"], "SPACE_FORM");
    assert!(v.get("beta_direction").is_some());
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["classify", "--model", "sphere", "--n", "5", "--p", "5"][..],
        &["classify", "--model", "sphere", "--n", "5", "--p", "0"],
        &["classify", "--model", "sphere", "--p", "2"],
        &["classify", "--model", "torus", "--n", "3", "--p", "1"],
        &["classify", "--model", "sphere", "--n", "5"],
        &["verify", "--model", "sphere", "--n", "11"],
        &["verify", "--model", "sphere", "--n", "5", "--p", "7"],
        &["verify", "--model", "weyl4", "--n", "3"],
        &[
            "verify",
            "--model",
            "product",
            "--factors",
            "sphere:2,torus:1",
        ],
    ] {
        let run = killform(args);
        assert_eq!(run.code, 2, "{args:?}");
        assert!(!run.stderr.is_empty());
    }
    let run = killform(&[
        "verify", "--model", "sphere", "--n", "11", "--max-n", "11", "--p", "1",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
}

#[test]
fn weyl_demo_transcript() {
    let run = killform(&["weyl-demo"]);
    assert!(run.stdout.contains("R+(X)beta = J(X) ⌟ omega: OK"));
    assert!(run.stdout.contains("gamma identity: OK"));
    assert!(run.stdout.contains("alpha = e1^e2 + e3^e4"));
    assert!(run.stdout.contains("R_(e1,e2)beta = -gamma: OK"));
    // R_(e1,e2)beta comes out as -gamma, so the closed form 0 is reported as a mismatch
    assert!(run.stdout.contains("R_(e1,e2)beta = 0: MISMATCH"));
    assert_eq!(run.code, 1);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &[
            "classify", "--model", "cpn", "--m", "3", "--p", "3", "--seed", "5",
        ][..],
        &["verify", "--model", "weyl4", "--n", "5", "--seed", "5"],
    ] {
        let a = killform(args);
        let b = killform(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch("report.json");
    let _ = fs::remove_file(&path);
    let run = killform(&[
        "classify",
        "--model",
        "flat",
        "--n",
        "4",
        "--p",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["branch"], "PARALLEL_ONLY");
}

#[test]
fn human_tables() {
    let run = killform(&[
        "classify", "--model", "cpn", "--m", "2", "--p", "2", "--human",
    ]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("PARALLEL_ONLY"));
    let run = killform(&["verify", "--model", "flat", "--n", "3", "--human"]);
    assert!(run.stdout.contains("all checks passed"));
}
