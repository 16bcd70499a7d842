use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn mesml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mesml"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn clean_fixture_exits_zero() {
    let out = mesml(&["validate", &fixture("yogurt.mesml")]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "");
}

#[test]
fn gateway_mutation_is_one_error_line() {
    let out = mesml(&["validate", &data("gateway_mutation.mesml")]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1, "{text}");
    assert!(text.starts_with("error W-GW-02 pp:gw_pm_split:"), "{text}");
}

#[test]
fn warnings_and_deny_warnings() {
    let file = data("no_links.mesml");
    let out = mesml(&["validate", &file]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("W-LK-07"));
    assert_eq!(code(&mesml(&["validate", &file, "--deny-warnings"])), 2);
}

#[test]
fn rule_filter_drops_other_codes() {
    let file = data("gateway_mutation.mesml");
    let out = mesml(&["validate", &file, "--rule", "W-LK-07"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
    let out = mesml(&["validate", &file, "--rule", "w-gw-02", "--rule", "W-LK-07"]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&mesml(&["validate", &file, "--rule", "W-NOPE-1"])), 4);
}

#[test]
fn structured_output_is_json() {
    let out = mesml(&[
        "validate",
        &data("gateway_mutation.mesml"),
        "--format",
        "structured",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["errors"], 1);
    assert_eq!(v["diagnostics"][0]["rule"], "W-GW-02");
    assert_eq!(v["diagnostics"][0]["severity"], "error");
}

#[test]
fn parse_failures_exit_three_with_every_error() {
    let out = mesml(&["validate", &data("parse_errors.mesml")]);
    assert_eq!(code(&out), 3);
    let err = stderr(&out);
    assert!(err.contains(":14:"), "{err}");
    assert!(err.contains(":15:"), "{err}");
    assert!(err.contains("bad-enum"), "{err}");
    assert_eq!(
        code(&mesml(&[
            "export",
            &data("parse_errors.mesml"),
            "--view",
            "pp"
        ])),
        3
    );
}

#[test]
fn usage_errors_exit_four() {
    assert_eq!(code(&mesml(&["validate", "does/not/exist.mesml"])), 4);
    assert_eq!(code(&mesml(&["frobnicate"])), 4);
    assert_eq!(code(&mesml(&["export", &fixture("yogurt.mesml")])), 4);
    assert_eq!(
        code(&mesml(&[
            "export",
            &fixture("yogurt.mesml"),
            "--view",
            "pp",
            "--diagram",
            "Nope"
        ])),
        4
    );
    assert_eq!(
        code(&mesml(&[
            "export",
            &fixture("yogurt.mesml"),
            "--view",
            "ts",
            "--diagram",
            "x"
        ])),
        4
    );
    assert_eq!(code(&mesml(&["--help"])), 0);
}

#[test]
fn pp_export_has_five_level_zero_activities() {
    let out = mesml(&["export", &fixture("yogurt.mesml"), "--view", "pp"]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("style=\"rounded,filled\"").count(), 5, "{dot}");
}

#[test]
fn mes_quality_test_has_two_subprocesses() {
    let out = mesml(&[
        "export",
        &fixture("yogurt.mesml"),
        "--view",
        "mes",
        "--diagram",
        "Quality Test",
    ]);
    let dot = stdout(&out);
    assert!(dot.contains("\"q_create\"") && dot.contains("\"q_collect\""));
    assert_eq!(dot.matches("[+]").count(), 2, "{dot}");
}

#[test]
fn ts_export_is_an_indented_tree() {
    let out = mesml(&["export", &fixture("yogurt.mesml"), "--view", "ts"]);
    let tree = stdout(&out);
    assert!(
        tree.lines()
            .any(|l| l.starts_with("      Tank 101 (unit u_tank101)")),
        "{tree}"
    );
}

#[test]
fn export_to_file() {
    let dir = std::env::temp_dir().join(format!("mesml-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("pp.dot");
    let target_str = target.display().to_string();
    let out = mesml(&[
        "export",
        &fixture("minimal.mesml"),
        "--view",
        "pp",
        "--out",
        &target_str,
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
    assert!(std::fs::read_to_string(&target)
        .unwrap()
        .starts_with("digraph \"pp\""));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn stats_match_golden() {
    let out = mesml(&["report", &fixture("yogurt.mesml"), "--kind", "stats"]);
    assert_eq!(code(&out), 0);
    let golden = std::fs::read_to_string(data("yogurt_stats.txt")).unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn interfaces_one_row_per_data_transfer() {
    let out = mesml(&["report", &fixture("yogurt.mesml"), "--kind", "interfaces"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4, "{text}");
    assert!(text.contains("[MQTT-bridge]"));
    let out = mesml(&[
        "report",
        &fixture("yogurt.mesml"),
        "--kind",
        "interfaces",
        "--format",
        "structured",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn status_of_fully_implemented_spec() {
    let out = mesml(&["report", &data("all_implemented.mesml"), "--kind", "status"]);
    assert_eq!(code(&out), 0);
    for line in stdout(&out).lines().filter(|l| !l.starts_with(' ')) {
        assert!(line.contains("to_implement=0"), "{line}");
    }
}

#[test]
fn illegal_links_block_link_reports() {
    let file = data("illegal_deployment.mesml");
    for kind in ["deployment", "links"] {
        let out = mesml(&["report", &file, "--kind", kind]);
        assert_eq!(code(&out), 2, "{kind}");
        assert!(
            stderr(&out).contains("W-LK-06 link:lk_bad"),
            "{}",
            stderr(&out)
        );
        assert_eq!(stdout(&out), "");
    }
    // interfaces only depend on data-transfer links
    assert_eq!(code(&mesml(&["report", &file, "--kind", "interfaces"])), 0);
    assert_eq!(code(&mesml(&["report", &file, "--kind", "stats"])), 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["validate", "GATE", "--format", "structured"],
        vec!["export", "YOG", "--view", "mes"],
        vec!["report", "YOG", "--kind", "links", "--format", "structured"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| match *a {
                "GATE" => data("gateway_mutation.mesml"),
                "YOG" => fixture("yogurt.mesml"),
                other => other.to_string(),
            })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = mesml(&args);
        let second = mesml(&args);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(code(&first), code(&second));
    }
}

#[test]
fn exit_code_never_drops_when_findings_are_added() {
    // clean < warnings-only < errors, each file adding findings to the last
    let clean = code(&mesml(&["validate", &fixture("minimal.mesml")]));
    let warned = code(&mesml(&["validate", &data("no_links.mesml")]));
    let failed = code(&mesml(&["validate", &data("gateway_mutation.mesml")]));
    assert!(
        clean <= warned && warned <= failed,
        "{clean} {warned} {failed}"
    );
}
