use std::fs;
use std::process::{Command, Output};

use qsigma_core::scalar::LaurentFraction;
use serde_json::Value;

fn qsigma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsigma")).args(args).env_remove("QSIGMA_CACHE").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = qsigma(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn assert_reparses(s: &str) {
    let f: LaurentFraction = s.parse().unwrap_or_else(|e| panic!("{s:?} does not parse: {e}"));
    assert_eq!(f.to_string(), s);
}

#[test]
fn rank_one_tangent_is_one_dimensional() {
    let v = json(&["tangent", "--series", "A", "--rank", "1", "--node", "1"]);
    assert_eq!(v["tangent_dim"], 1);
    assert_eq!(v["basis"][0]["word"], "E1");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn tangent_reports_levi_action() {
    let v = json(&["tangent", "--series", "A", "--rank", "3", "--node", "2"]);
    assert_eq!(v["tangent_dim"], 4);
    let gens: Vec<&str> = v["actions"].as_array().unwrap().iter().map(|a| a["generator"].as_str().unwrap()).collect();
    assert_eq!(gens, ["E1", "F1", "E3", "F3"]);
    assert!(v.get("claims").is_none());
}

#[test]
fn verify_paper_passes_on_a3() {
    let v = json(&["verify-paper", "--series", "A", "--rank", "3", "--node", "2"]);
    let claims = v["claims"].as_array().unwrap();
    assert!(!claims.is_empty());
    assert!(claims.iter().all(|c| c["passed"] == true));
    assert_eq!(v["ex_ex_sign"], -1);
    assert_eq!(v["nu"], "q - q^-1");
    assert_eq!(v["minus_one_dim"], 6);
    assert_eq!(v["classical_dim"], 6);
    assert_eq!(v["strongly_torsion_free"], true);
    assert_eq!(v["lowest_weight_vectors"].as_array().unwrap().len(), 4);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn verify_paper_passes_on_a2() {
    let out = qsigma(&["verify-paper", "--series", "A", "--rank", "2", "--node", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let two_term: Vec<&Value> = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["id"].as_str().unwrap().starts_with("two-term-eigenvalue"))
        .collect();
    assert_eq!(two_term.len(), 1);
    assert_eq!(two_term[0]["passed"], true);
    assert_eq!(v["minus_one_dim"], 1);
}

#[test]
fn lowest_weight_vectors_carry_coordinates() {
    let v = json(&["spectrum", "--series", "A", "--rank", "3", "--node", "2"]);
    let first = &v["lowest_weight_vectors"][0];
    assert_eq!(first["vector"], "E2 ⊗ E2");
    assert_eq!(first["coords"], serde_json::json!([{"index": 0, "label": "E2 ⊗ E2", "coeff": "1"}]));
    assert_eq!(first["eigenvalue"], "q^-2");
}

#[test]
fn json_scalars_reparse() {
    let v = json(&["verify-paper", "--series", "B", "--rank", "2", "--node", "1"]);
    for e in v["spectrum"].as_array().unwrap() {
        assert_reparses(e["eigenvalue"].as_str().unwrap());
    }
    for l in v["lowest_weight_vectors"].as_array().unwrap() {
        assert_reparses(l["eigenvalue"].as_str().unwrap());
        let coords = l["coords"].as_array().unwrap();
        assert!(!coords.is_empty());
        for c in coords {
            assert_reparses(c["coeff"].as_str().unwrap());
        }
    }
    let s = json(&["sigma", "--series", "A", "--rank", "3", "--node", "2"]);
    let entries = s["sigma"]["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        assert_reparses(e["value"].as_str().unwrap());
    }
    let r = json(&["relations", "--series", "A", "--rank", "3", "--node", "2"]);
    assert_eq!(r["relations"]["dim"], 6);
    for vec in r["relations"]["vectors"].as_array().unwrap() {
        for c in vec["coords"].as_array().unwrap() {
            assert_reparses(c["coeff"].as_str().unwrap());
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["spectrum", "--series", "B", "--rank", "3", "--node", "2"][..],
        &["spectrum", "--series", "A", "--node", "2"],
        &["spectrum", "--series", "A", "--rank", "3", "--node", "4"],
        &["spectrum", "--series", "Q", "--rank", "3", "--node", "1"],
        &["spectrum", "--series", "A", "--rank", "3", "--node", "1", "--specialize", "-1"],
        &["spectrum", "--series", "A", "--rank", "3", "--node", "1", "--specialize", "two"],
        &["spectrum", "--series", "A", "--rank", "3", "--node", "1", "--bogus"],
        &["frobnicate"],
    ] {
        let out = qsigma(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn exceptional_rank_is_implied() {
    let v = json(&["tangent", "--series", "E6", "--node", "1"]);
    assert_eq!(v["tangent_dim"], 16);
    assert_eq!(v["config"]["rank"], 6);
}

#[test]
fn timing_is_opt_in() {
    let v = json(&["spectrum", "--series", "A", "--rank", "2", "--node", "1", "--timing"]);
    assert!(v["timing_ms"]["total"].is_u64());
}

#[test]
fn custom_specialization_points_are_echoed() {
    let v = json(&["spectrum", "--series", "A", "--rank", "2", "--node", "1", "--specialize", "3,-5/2"]);
    assert_eq!(v["config"]["specialize"], serde_json::json!(["3", "-5/2"]));
    for e in v["spectrum"].as_array().unwrap() {
        let qs: Vec<&str> = e["specialized"].as_array().unwrap().iter().map(|s| s["q"].as_str().unwrap()).collect();
        assert_eq!(qs, ["3", "-5/2"]);
    }
}

#[test]
fn text_output_is_readable() {
    let out = qsigma(&["spectrum", "--series", "A", "--rank", "3", "--node", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("spectrum A3 x=2"));
    assert!(text.contains("dim ker(sigma + 1) = 6, classical dim = 6"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache");
    let args = ["sigma", "--series", "A", "--rank", "3", "--node", "2", "--format", "json"];
    let run = |env_cache: bool| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qsigma"));
        cmd.args(args).env_remove("QSIGMA_CACHE");
        if env_cache {
            cmd.env("QSIGMA_CACHE", &path);
        } else {
            cmd.arg("--cache-dir").arg(&path);
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        (out.stdout, String::from_utf8(out.stderr).unwrap())
    };
    let (first, err1) = run(false);
    assert!(err1.contains("computed and cached"));
    let files: Vec<_> = fs::read_dir(&path).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let (second, err2) = run(true);
    assert!(err2.contains("loaded from cache"));
    assert_eq!(first, second);
    assert_eq!(first, qsigma(&args).stdout);

    fs::write(&files[0], "not json").unwrap();
    let (third, err3) = run(false);
    assert!(err3.contains("computed and cached"));
    assert_eq!(first, third);
}

#[test]
fn environment_cache_dir_takes_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let (env_dir, flag_dir) = (dir.path().join("env"), dir.path().join("flag"));
    let out = Command::new(env!("CARGO_BIN_EXE_qsigma"))
        .args(["sigma", "--series", "A", "--rank", "2", "--node", "1", "--cache-dir"])
        .arg(&flag_dir)
        .env("QSIGMA_CACHE", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_dir(&env_dir).unwrap().count(), 1);
    assert!(!flag_dir.exists());
}
