use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tropcount_cli::report::CountReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropcount"))
}

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_problem(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.display().to_string()
}

#[test]
fn line_prints_half_integer_exponents() {
    let file = problems().join("line.json");
    let o = run(&["count", file.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("N_trop = q^(1/2) - q^(-1/2)"), "{}", stdout(&o));
}

#[test]
fn json_report_round_trips() {
    let file = problems().join("example.json");
    let o = run(&["count", file.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let report: CountReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.polynomial_text, "q^2 - 2*q + 2*q^-1 - q^-2");
    assert_eq!(report.to_json().trim_end(), text.trim_end());
}

#[test]
fn same_seed_gives_identical_output() {
    let file = problems().join("conic.json");
    let a = run(&["count", file.to_str().unwrap(), "--seed", "17", "--json"]);
    let b = run(&["count", file.to_str().unwrap(), "--seed", "17", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["count", missing.to_str().unwrap()]).status.code(), Some(1));

    let bad = write_problem(dir.path(), "bad.json", "{ not json");
    assert_eq!(run(&["count", &bad]).status.code(), Some(2));

    let unbalanced = write_problem(dir.path(), "unbalanced.json", r#"{"delta":[[1,0],[0,1],[-1,0],[0,-1]],"k":[0,0,1]}"#);
    assert_eq!(run(&["count", &unbalanced]).status.code(), Some(3));

    // Both points on one horizontal line.
    let special = write_problem(
        dir.path(),
        "special.json",
        r#"{"delta":[[1,0],[0,1],[-1,-1]],"k":[0,0],"points":[["0","0"],["1","0"]]}"#,
    );
    assert_eq!(run(&["count", &special]).status.code(), Some(4));

    assert_eq!(run(&["oracle", "-1"]).status.code(), Some(3));
}

#[test]
fn checks_exit_zero_when_they_hold() {
    let file = problems().join("line.json");
    let o = run(&["invariance", file.to_str().unwrap(), "--seeds", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS"));
    let o = run(&["vertex-series", "fmp", "1,0 0,1 -1,0 0,-1", "--order", "6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("fmp: 1 - (1/6)*u^2"));
}

fn count_tag(svg: &str, tag: &str) -> usize {
    svg.matches(tag).count()
}

#[test]
fn render_example_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("example");
    let file = problems().join("example.json");
    let o = run(&["render", file.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(out.join("curve-1.svg")).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    // 4 points and 6 ends; 2n - 2 = 6 bounded edges and 7 vertices.
    assert_eq!(count_tag(&svg, "<path "), 4);
    assert_eq!(count_tag(&svg, "<circle "), 7);
    let ends = svg.split(r#"<g id="ends""#).nth(1).unwrap().split("</g>").next().unwrap();
    assert_eq!(count_tag(ends, "<line "), 6);
    let edges = svg.split(r#"<g id="edges""#).nth(1).unwrap().split("</g>").next().unwrap();
    assert_eq!(count_tag(edges, "<line "), 6);

    let out = dir.path().join("line");
    let file = problems().join("line.json");
    let o = run(&["render", file.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_dir(&out).unwrap().count(), 1);
    let svg = std::fs::read_to_string(out.join("curve-1.svg")).unwrap();
    assert_eq!(count_tag(&svg, "<path "), 2);
}

#[test]
fn empty_count_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    // Horizontal curves cannot pass through three generic points.
    let file = write_problem(dir.path(), "flat.json", r#"{"delta":[[1,0],[1,0],[-1,0],[-1,0]],"k":[0,0,0]}"#);
    let out = dir.path().join("svg");
    let o = run(&["render", &file, "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 file(s) written"));
    assert!(!out.exists());
}
