use std::process::{Command, Output};

use sumfree::report::ReportEnvelope;

fn sumfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumfree"))
        .args(args)
        .env_remove("SUMFREE_MAX_NODES")
        .output()
        .unwrap()
}

fn envelope(out: &Output) -> ReportEnvelope {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_p3_exits_zero() {
    let out = sumfree(&["verify", "--group", "Z:3^2", "--theorem", "p3"]);
    assert_eq!(out.status.code(), Some(0));
    let env = envelope(&out);
    assert_eq!(env.schema_version, 1);
    assert!(env.verdicts().all(|v| v.clauses.iter().all(|c| c.holds)));
}

#[test]
fn c4_reports_obstruction_witness() {
    let out = sumfree(&["verify", "-g", "C:4", "--theorem", "p2"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let clauses = json["results"][0]["verdicts"][0]["clauses"]
        .as_array()
        .unwrap();
    let c = clauses
        .iter()
        .find(|c| c["label"] == "elementary_abelian_2")
        .unwrap();
    assert_eq!(c["holds"], false);
    assert_eq!(c["witness"]["set"]["indices"], serde_json::json!([1, 3]));
    assert_eq!(c["witness"]["set"]["labels"], serde_json::json!(["1", "3"]));
}

#[test]
fn enumerate_csv() {
    let out = sumfree(&["enumerate", "-g", "Z:3^3", "-g", "Z:2^4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "group,order,max_size,maximum_count,truncated\nZ:3^3,27,9,26,false\nZ:2^4,16,8,15,false\n"
    );
}

#[test]
fn usage_errors_exit_two() {
    let out = sumfree(&["analyze", "--group", "Z:4^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 2"));
    assert_eq!(sumfree(&["analyze"]).status.code(), Some(2));
    assert_eq!(sumfree(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        sumfree(&["verify", "-g", "C:4", "--timeout", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sumfree(&["verify", "-g", "C:4", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn budget_from_environment_truncates() {
    let out = Command::new(env!("CARGO_BIN_EXE_sumfree"))
        .args(["verify", "-g", "Z:3^3", "--theorem", "p3"])
        .env("SUMFREE_MAX_NODES", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let env = envelope(&out);
    assert!(env.truncated && !env.verified);
    assert_eq!(env.config.max_nodes, Some(3));
}

#[test]
fn text_output_and_out_file() {
    let dir = std::env::temp_dir().join(format!("sumfree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let out = sumfree(&[
        "verify",
        "--theorem",
        "c2_4",
        "--format",
        "text",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("not_a_maximal_subgroup_complement: true"));
    assert!(text.contains("status: verified (exit 0)"));
    std::fs::remove_dir_all(&dir).unwrap();
}
