use conekit::builder::Figure;
use conekit::cli::{run, EXIT_DETERMINATE, EXIT_INCONCLUSIVE, EXIT_INPUT_ERROR};
use conekit::exactgeom::ConeRep;
use conekit::orchestrate::{verify_report, ReportJson, Verdict};
use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("conekit").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn reports(stdout: &str) -> Vec<ReportJson> {
    serde_json::from_str(stdout).unwrap()
}

#[test]
fn analyze_example_one_both() {
    let o = cli(&["analyze", &fixture("ex1.crn"), "--both"]);
    assert_eq!(o.code, EXIT_DETERMINATE, "{}", o.stderr);
    assert!(
        o.stdout.contains("non-expansive: NO (unbounded ray, α=2)"),
        "{}",
        o.stdout
    );
    assert!(
        o.stdout
            .contains("monotone: NO (reaction [-1,-1,1] absorbed)"),
        "{}",
        o.stdout
    );
    let non_exp = o.stdout.find("non-expansive:").unwrap();
    let mono = o.stdout.find("monotone:").unwrap();
    assert!(non_exp < mono);
}

#[test]
fn analyze_example_three_json() {
    let o = cli(&[
        "analyze",
        &fixture("ex3.crn"),
        "--monotone",
        "--output",
        "json",
    ]);
    assert_eq!(o.code, EXIT_DETERMINATE);
    let rs = reports(&o.stdout);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0].verdict, Verdict::Yes);
    let Some(Figure::Cone(cone)) = &rs[0].certificate.figure else {
        panic!("no cone in {}", o.stdout)
    };
    assert!(cone.same_cone(&ConeRep::from_ints(3, &[&[0, 1, -1], &[-1, 0, 1]])));
    assert_eq!(verify_report(&rs[0]), Ok(()));
}

#[test]
fn text_and_json_agree_on_verdicts() {
    for f in [
        "ex1.crn",
        "ex2.crn",
        "ex3.crn",
        "duality.crn",
        "disconnected.crn",
    ] {
        let text = cli(&["analyze", &fixture(f)]);
        let json = cli(&["analyze", &fixture(f), "--output", "json"]);
        assert_eq!(text.code, json.code, "{f}");
        let rs = reports(&json.stdout);
        assert_eq!(rs.len(), 2);
        for r in &rs {
            let word = match r.verdict {
                Verdict::Yes => "YES",
                Verdict::No => "NO (",
                Verdict::NoForConesContainingV => "NO for cones",
                Verdict::Inconclusive => "INCONCLUSIVE",
            };
            assert!(
                text.stdout.contains(&format!("{}: {word}", r.question)),
                "{f}: {}",
                text.stdout
            );
            assert_eq!(verify_report(r), Ok(()), "{f}");
        }
    }
}

#[test]
fn missing_file_is_an_input_error() {
    let o = cli(&["analyze", "missing.crn"]);
    assert_eq!(o.code, EXIT_INPUT_ERROR);
    assert!(o.stderr.contains("no such file"), "{}", o.stderr);
}

#[test]
fn parse_error_reports_location() {
    let o = cli(&["analyze", &fixture("malformed.crn")]);
    assert_eq!(o.code, EXIT_INPUT_ERROR);
    assert!(o.stderr.contains("line 2, column"), "{}", o.stderr);
}

#[test]
fn bad_flags_are_input_errors() {
    assert_eq!(
        cli(&["analyze", &fixture("ex1.crn"), "--start", "[1,2]"]).code,
        EXIT_INPUT_ERROR
    );
    assert_eq!(
        cli(&["analyze", &fixture("ex1.crn"), "--snap-distance", "0"]).code,
        EXIT_INPUT_ERROR
    );
    assert_eq!(
        cli(&["analyze", &fixture("ex1.crn"), "--monotone", "--both"]).code,
        EXIT_INPUT_ERROR
    );
    assert_eq!(
        cli(&["grow", &fixture("seed.crn"), "--range", "2..1"]).code,
        EXIT_INPUT_ERROR
    );
}

#[test]
fn inconclusive_exit_status() {
    let o = cli(&[
        "analyze",
        &fixture("ex2.crn"),
        "--monotone",
        "--max-iterations",
        "1",
    ]);
    assert_eq!(o.code, EXIT_INCONCLUSIVE);
    assert!(o.stdout.contains("monotone: INCONCLUSIVE"));
    assert!(
        o.stdout.contains("pass(es)"),
        "state summary missing: {}",
        o.stdout
    );
}

#[test]
fn start_override_is_used() {
    let o = cli(&[
        "analyze",
        &fixture("ex2.crn"),
        "--non-expansive",
        "--start",
        "[0,0,1,0]",
        "--output",
        "json",
    ]);
    assert_eq!(o.code, EXIT_DETERMINATE);
    let rs = reports(&o.stdout);
    assert_eq!(rs[0].certificate.kind, "unbounded-ray");
    let trace = rs[0].certificate.trace.as_ref().unwrap();
    let d = rs[0]
        .certificate
        .witness
        .as_ref()
        .unwrap()
        .descendant
        .unwrap();
    assert_eq!(trace[d].vector.to_string(), "[0,0,2,0]");
}

#[test]
fn dualize_additional_example_one() {
    let o = cli(&[
        "dualize",
        &fixture("additional1.crn"),
        "--cone",
        &fixture("additional1_cone.json"),
    ]);
    assert_eq!(o.code, EXIT_DETERMINATE, "{}", o.stderr);
    assert!(o.stdout.contains("[-715,715,574,-65]"), "{}", o.stdout);
    assert!(o.stdout.contains("verification: 0 closure violation(s)"));
}

#[test]
fn dualize_refuses_uncertified_cone() {
    let o = cli(&[
        "dualize",
        &fixture("ex1.crn"),
        "--cone",
        &fixture("ex1_bad_cone.json"),
    ]);
    assert_eq!(o.code, EXIT_INPUT_ERROR);
    assert!(o.stderr.contains("[-2,0,1] -> [0,2,-1]"), "{}", o.stderr);
}

#[test]
fn dualize_accepts_analysis_output() {
    let analysis = cli(&[
        "analyze",
        &fixture("ex3.crn"),
        "--monotone",
        "--output",
        "json",
    ]);
    let path = std::env::temp_dir().join(format!("conekit_ex3_report_{}.json", std::process::id()));
    std::fs::write(&path, &analysis.stdout).unwrap();
    let o = cli(&[
        "dualize",
        &fixture("ex3.crn"),
        "--cone",
        &path.to_string_lossy(),
        "--output",
        "json",
    ]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(o.code, EXIT_DETERMINATE, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["violations"], 0);
}

#[test]
fn grow_range_zero_gives_seed_only() {
    let o = cli(&["grow", &fixture("seed.crn"), "--range", "0..0"]);
    assert_eq!(o.code, EXIT_DETERMINATE);
    assert!(o.stdout.starts_with("seed: 1 reaction(s)"));
    assert!(o.stdout.contains("accepted 0 extension(s)"));
}

#[test]
fn grow_rejects_non_monotone_seed() {
    let o = cli(&["grow", &fixture("ex1.crn"), "--range", "-1..1"]);
    assert_eq!(o.code, EXIT_INPUT_ERROR);
    assert!(o.stderr.contains("not certified monotone"));
    assert!(o.stderr.contains("absorbed"));
}

#[test]
fn grow_capped_entries_are_audited() {
    let o = cli(&[
        "grow",
        &fixture("seed.crn"),
        "--range=-2..2",
        "--limit",
        "3",
        "--output",
        "json",
    ]);
    assert_eq!(o.code, EXIT_DETERMINATE, "{}", o.stderr);
    let steps: Vec<serde_json::Value> = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(steps.len(), 4);
    assert!(steps.iter().all(|s| s["violations"] == 0));
    assert!(steps[1..].iter().all(|s| s["added"].is_string()));
}

#[test]
fn fixture_suite_passes() {
    let o = cli(&[
        "suite",
        &PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures")
            .to_string_lossy(),
    ]);
    assert_eq!(o.code, EXIT_DETERMINATE, "{}", o.stdout);
    assert!(!o.stdout.contains("FAIL"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_conekit");
    let ok = Command::new(bin)
        .args(["analyze", &fixture("ex3.crn"), "--monotone"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_DETERMINATE));
    let missing = Command::new(bin)
        .args(["analyze", "missing.crn"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_INPUT_ERROR));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("no such file"));
}
