use std::path::PathBuf;
use std::process::{Command, Output};

fn scenario(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(format!("{name}.scenario"))
        .display()
        .to_string()
}

fn siccost(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siccost"))
        .args(args)
        .env_remove("SICCOST_FORMAT")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cost_report_shows_worked_example() {
    let out = siccost(&["cost", "--scenario", &scenario("paper_300mm")]);
    assert!(out.status.success());
    let text = stdout(&out);
    for needle in ["6857", "0.8999991", "0.3646", "0.60", "6121", "30500000", "48800000"] {
        assert!(text.contains(needle), "missing {needle} in\n{text}");
    }
}

#[test]
fn json_cost_report_prints_four_decimals() {
    let out = siccost(&["cost", "--scenario", &scenario("paper_300mm"), "--format", "json"]);
    let text = stdout(&out);
    assert!(text.contains("\"total_chip_cost_eur\": 0.5998"), "{text}");
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["provenance"]["rounding_mode"], "paper");
    assert_eq!(doc["tables"][0]["rows"][0]["dice_per_wafer"], 6857);
}

#[test]
fn format_from_environment_and_flag_precedence() {
    let run = |env: &str, extra: &[&str]| {
        let mut args = vec!["cost", "--scenario"];
        let path = scenario("paper_450mm");
        args.push(&path);
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_siccost"))
            .args(&args)
            .env("SICCOST_FORMAT", env)
            .output()
            .unwrap()
    };
    assert!(stdout(&run("markdown", &[])).starts_with("# siccost cost: paper_450mm"));
    assert!(stdout(&run("markdown", &["--format", "csv"])).starts_with("config,dice_per_wafer"));
}

#[test]
fn csv_round_trips_printed_values() {
    let report = siccost::run_subcommand(
        siccost::Subcommand::Sweep,
        &siccost::LoadedScenario::load(scenario("paper_300mm").as_ref()).unwrap(),
        &siccost::Flags {
            sweep_parameter: Some("wafer_cost".into()),
            sweep_values: vec![2000.0, 2250.0, 2500.0],
            ..Default::default()
        },
    )
    .unwrap();
    let bytes = siccost::emit(&report, siccost::Format::Csv);
    let mut reader = csv::Reader::from_reader(bytes.as_slice());
    let table = report.table("sweep").unwrap();
    for (row, record) in table.rows.iter().zip(reader.records()) {
        let record = record.unwrap();
        for (cell, text) in row.iter().zip(record.iter()) {
            if let Some(v) = cell.numeric() {
                assert_eq!(text.parse::<f64>().unwrap(), v);
            }
        }
    }
    let header = String::from_utf8(bytes).unwrap();
    assert!(header.starts_with("parameter,value,total_chip_cost_eur,relative_delta,elasticity\n"));
}

#[test]
fn zero_overlay_has_zero_delta() {
    let out = siccost(&[
        "overlay",
        "--scenario",
        &scenario("paper_300mm"),
        "--variant",
        "none",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = &doc["tables"][1]["rows"][0];
    assert_eq!(row["absolute_delta_eur"], 0.0);
    assert_eq!(row["relative_delta"], 0.0);
    assert!(row["magnitude_transfer_ratio"].is_null());
}

#[test]
fn transition_by_sibling_name() {
    let out = siccost(&[
        "transition",
        "--scenario",
        &scenario("paper_300mm"),
        "--variant",
        "paper_450mm",
        "--format",
        "csv",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("0.60,0.53,-0.07,"));
}

#[test]
fn writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.md");
    let out = siccost(&[
        "worth-it",
        "--scenario",
        &scenario("paper_300mm"),
        "--format",
        "markdown",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(target).unwrap();
    assert!(text.contains("## security_assessment"));
    assert!(text.contains("## Assumptions"));
}

fn write_scenario(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("s.scenario");
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    // usage
    assert_eq!(siccost(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        siccost(&["transition", "--scenario", &scenario("paper_300mm")]).status.code(),
        Some(2)
    );
    assert_eq!(
        siccost(&["overlay", "--scenario", &scenario("paper_300mm"), "--variant", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        siccost(&["sweep", "--scenario", &scenario("paper_300mm"), "--param", "area", "--values", "1"])
            .status
            .code(),
        Some(2)
    );

    // parse / validation
    let empty = write_scenario(&dir, "");
    assert_eq!(siccost(&["cost", "--scenario", &empty]).status.code(), Some(3));
    let text = std::fs::read_to_string(scenario("paper_300mm"))
        .unwrap()
        .replace("\"die_area\": 10", "\"die_area\": -1");
    let bad = write_scenario(&dir, &text);
    let out = siccost(&["cost", "--scenario", &bad]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("die.die_area"));

    // domain
    let out = siccost(&[
        "sweep",
        "--scenario",
        &scenario("paper_300mm"),
        "--param",
        "die_area",
        "--values",
        "10,70000",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("70000"));
}
