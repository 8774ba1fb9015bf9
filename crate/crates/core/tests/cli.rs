use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quartic-points"));
    cmd.args(args).env_remove("QP_PRECISION_BITS").env_remove("QP_MAX_PRECISION_BITS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn count_over_presets() {
    for (label, n) in [("Q", 16), ("Qi", 44), ("Qsqrt2", 28)] {
        let out = bin(&["count", "--preset", label], &[]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["gamma2_count"], n, "{label}");
    }
}

#[test]
fn compute_is_deterministic() {
    let a = bin(&["compute", "--preset", "Qalpha"], &[]);
    let b = bin(&["compute", "--preset", "Qalpha"], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["identified_L"], "Qalpha");
    assert_eq!(v["s0"].as_array().map(Vec::len), Some(2));
    assert!(v["assumptions"].as_array().unwrap().iter().any(|s| s == "rank_zero_E1"));
}

#[test]
fn text_output_and_out_file() {
    let dir = std::env::temp_dir().join(format!("qp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.txt");
    let out = bin(&["compute", "--preset", "Q", "--format", "text", "--out", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("gamma2 count: 16"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn user_field_needs_rank_assumption() {
    let out = bin(&["count", "--field", "1,0,-3,-1"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["count", "--field", "1,0,-3,-1", "--assume-rank-zero"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["gamma2_count"], 16);
    assert!(v["assumptions"].as_array().unwrap().iter().any(|s| s == "user_assumed"));
}

#[test]
fn identify_l_of_catalog_fields() {
    for (label, l) in [("Qzeta16", "Qzeta8"), ("quartic-3", "Qi"), ("cubic-1", "Q")] {
        let out = bin(&["identify-L", "--preset", label], &[]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["identified_L"], l, "{label}");
    }
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["count", "--preset", "Qnope"][..],
        &["count", "--field", "1,x,1", "--assume-rank-zero"],
        &["count", "--field", "0", "--assume-rank-zero"],
        &["count"],
        &["frobnicate"],
    ] {
        assert_eq!(bin(args, &[]).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn capped_precision_exits_3() {
    let out = bin(&["count", "--preset", "Qalpha"], &[("QP_PRECISION_BITS", "64"), ("QP_MAX_PRECISION_BITS", "64")]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["exit_code"], 3);
}

#[test]
fn verify_paper_passes() {
    let out = bin(&["verify-paper", "--format", "text"], &[]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn infinity_points_over_q_sqrt_minus_2_are_flagged() {
    let out = bin(&["count", "--preset", "Qsqrt-2"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["gamma2_count"], 20);
    assert_eq!(v["notes"][0], "infinity_points_via_sqrt_minus_2");
    assert_eq!(json(&bin(&["count", "--preset", "Qi"], &[]))["notes"].as_array().map(Vec::len), Some(0));
}
