use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_heron-rhombus"));
    cmd.env_remove("HERON_RHOMBUS_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn pair_lines(out: &Output) -> Vec<String> {
    stdout(out)
        .lines()
        .filter(|l| l.contains("\"kind\":\"pair\""))
        .map(String::from)
        .collect()
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn generate_u1_integral() {
    let out = run(&["generate", "--u", "1", "--integral"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    let r = &lines[0];
    assert_eq!(r["triangle"], serde_json::json!(["8", "15", "17"]));
    assert_eq!(r["rhombus_side"], "10");
    assert_eq!(r["sin_theta"], "3/5");
    assert_eq!(r["witness"]["lambda"], "25/2");
}

#[test]
fn generate_without_integral_keeps_rational_pair() {
    let out = run(&["generate", "--u", "1"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["triangle"], serde_json::json!(["16/25", "6/5", "34/25"]));
    assert_eq!(r["rhombus_side"], "4/5");
    assert_eq!(r["heron"], false);
    assert!(r["witness"].get("lambda").is_none());
}

#[test]
fn generate_skips_out_of_range() {
    let out = run(&["generate", "--u", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("skipped u=1/2: u² ≤ 1/3"));
    assert!(stdout(&out).is_empty());

    let out = run(&["generate", "--u", "1/2", "--u", "1"]);
    assert!(out.status.success());
    assert_eq!(json_lines(&out).len(), 1);
    assert!(stderr(&out).contains("skipped u=1/2"));
}

#[test]
fn generate_rejects_malformed_rationals() {
    for bad in ["1.5", "abc", "1/0", "2//3"] {
        let out = run(&["generate", "--u", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
    }
}

#[test]
fn generate_explicit_scale_and_height_sweep() {
    let out = run(&["generate", "--u", "2", "--scale", "289"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["triangle"], serde_json::json!(["1804", "2040", "1732"]));
    assert_eq!(r["rhombus_side"], "1394");
    assert_eq!(
        run(&["generate", "--u", "2", "--scale", "-1"])
            .status
            .code(),
        Some(2)
    );

    // heights ≤ 3: 1/1, 2/1, 3/1, 1/2 (rejected), 2/3, 3/2, 1/3 (rejected) → 5 members
    let out = run(&["generate", "--max-height", "3", "--integral"]);
    assert!(out.status.success());
    let us: Vec<String> = json_lines(&out)
        .iter()
        .map(|r| r["u"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(us, ["2/3", "1", "3/2", "2", "3"]);
}

#[test]
fn verify_round_trips_and_names_failures() {
    let dir = tempfile::tempdir().unwrap();
    let generated = stdout(&run(&["generate", "--u", "1", "--integral"]));
    let good = write(dir.path(), "good.jsonl", &generated);
    let out = run(&["verify", &good]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json_lines(&out)[0]["records"], 1);

    let tampered = write(
        dir.path(),
        "bad.jsonl",
        &generated.replace("\"area\":\"60\"", "\"area\":\"61\""),
    );
    let out = run(&["verify", &tampered]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("area equality"), "{}", stderr(&out));

    let empty = write(dir.path(), "empty.jsonl", "");
    let out = run(&["verify", &empty]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"));
    assert_eq!(json_lines(&out)[0]["records"], 0);

    let garbage = write(dir.path(), "garbage.jsonl", "{not json\n");
    assert_eq!(run(&["verify", &garbage]).status.code(), Some(2));
    let bad_number = write(
        dir.path(),
        "badnum.jsonl",
        &generated.replace("\"area\":\"60\"", "\"area\":\"six\""),
    );
    assert_eq!(run(&["verify", &bad_number]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn search_output_verifies_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let json = stdout(&run(&["search", "--max-perimeter", "200"]));
    let path = write(dir.path(), "search.jsonl", &json);
    assert!(run(&["verify", &path]).status.success());

    let csv = stdout(&run(&[
        "search",
        "--max-perimeter",
        "200",
        "--csv",
        "--decimal",
    ]));
    assert!(csv.starts_with("source,u,a,b,c,"));
    assert!(csv.lines().next().unwrap().ends_with("area_approx"));
    let path = write(dir.path(), "search.csv", &csv);
    let out = run(&["verify", &path]);
    assert!(out.status.success(), "{}", stderr(&out));

    let gen_csv = stdout(&run(&["generate", "--u", "2", "--integral", "--csv"]));
    let path = write(dir.path(), "gen.csv", &gen_csv);
    assert!(run(&["verify", &path]).status.success());
}

#[test]
fn search_usage_errors() {
    assert_eq!(
        run(&["search", "--max-perimeter", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["search", "--max-perimeter", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["search", "--max-perimeter", "40", "--filter", "scalene"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["search", "--max-perimeter", "40", "--threads", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn thread_count_does_not_change_records() {
    let one = pair_lines(&run(&[
        "--threads",
        "1",
        "search",
        "--max-perimeter",
        "300",
    ]));
    let four = pair_lines(&run(&[
        "search",
        "--max-perimeter",
        "300",
        "--threads",
        "4",
    ]));
    let env = pair_lines(
        &bin()
            .env("HERON_RHOMBUS_THREADS", "2")
            .args(["search", "--max-perimeter", "300"])
            .output()
            .unwrap(),
    );
    assert!(!one.is_empty());
    assert_eq!(one, four);
    assert_eq!(one, env);
}

#[test]
fn output_file_written_only_on_success() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.jsonl");
    let t = target.to_str().unwrap();
    let out = run(&["generate", "--u", "1/2", "--output", t]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!target.exists());

    let out = run(&["generate", "--u", "1", "--integral", "--output", t]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let content = std::fs::read_to_string(&target).unwrap();
    assert!(content.contains("\"triangle\":[\"8\",\"15\",\"17\"]"));
}

#[test]
fn sextic_scan_reports() {
    let out = run(&["sextic-scan", "--height", "1"]);
    let lines = json_lines(&out);
    let points: Vec<(String, String)> = lines
        .iter()
        .filter(|l| l["kind"] == "point")
        .map(|l| {
            (
                l["U"].as_str().unwrap().into(),
                l["W"].as_str().unwrap().into(),
            )
        })
        .collect();
    let expected: Vec<(String, String)> = [("-1", "-1"), ("-1", "1"), ("1", "-1"), ("1", "1")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    assert_eq!(points, expected);
    let summary = lines.last().unwrap();
    assert_eq!(summary["kind"], "scan");
    assert_eq!(summary["height"], 1);
    assert_eq!(summary["points_found"], 4);
    assert_eq!(
        run(&["sextic-scan", "--height", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn cross_validate_reports() {
    let out = run(&["cross-validate", "--u", "1", "--max-perimeter", "40"]);
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["passed"], true);
    assert_eq!(r["confirmed"].as_array().unwrap().len(), 1);

    let out = run(&["cross-validate", "--u", "2", "--max-perimeter", "39"]);
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["skipped"][0]["u"], "2");

    let out = run(&["cross-validate", "--max-perimeter", "40"]);
    assert!(out.status.success());
    assert_eq!(
        run(&["cross-validate", "--u", "1/2", "--max-perimeter", "40"])
            .status
            .code(),
        Some(2)
    );
}
