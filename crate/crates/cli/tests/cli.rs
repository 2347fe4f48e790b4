use std::io::Write;
use std::process::{Command, Output, Stdio};

use carrousel_cli::golden::{fixture_dir, run_fixture, select};
use carrousel_cli::{run_analysis, AnalysisConfig, Report};

fn carrousel(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_carrousel"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn structured(args: &[&str], stdin: &str) -> (Report, i32) {
    let mut a = args.to_vec();
    a.extend(["--format", "structured"]);
    let out = carrousel(&a, stdin);
    let code = out.status.code().unwrap();
    assert!(code <= 1, "{}", String::from_utf8_lossy(&out.stderr));
    (Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap(), code)
}

#[test]
fn whitney_umbrella_is_case_1() {
    let (r, code) = structured(&["analyze", "--input", "-", "--vars", "t,x,y", "--chi-link", "1"], "y^2 - x^3 - t*x^2");
    assert_eq!(code, 0);
    assert_eq!(r.invariants.tau, 3);
    assert_eq!(r.options.len(), 1);
    assert_eq!(r.options[0].b_n, 1);
    let cases = r.cases.unwrap();
    assert_eq!(cases.admissible, vec!["Case 1a", "Case 1b"]);
}

#[test]
fn quadric_even_dimension_with_negative_trace() {
    let (r, _) = structured(&["analyze", "--input", "-", "--vars", "z0,z1,z2", "--trace", "-1"], "z0^2 + z1^2 + z2^2");
    assert_eq!(r.cases.unwrap().admissible, vec!["Case 1b"]);
    assert_eq!(r.options[0].cases, vec!["Case 1b"]);
}

#[test]
fn config_errors_exit_3() {
    let out = carrousel(&["analyze", "--input", "-", "--vars", "x,y", "--z0", "w"], "y^2 - x^3");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cli.config"));
    let out = carrousel(&["analyze", "--input", "-", "--vars", "x"], "x^-1");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:3"));
    let out = carrousel(&["analyze", "--input", "-", "--vars", "x,y", "--slice-char", "(L^2-2)"], "y^2 - x^3");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn analysis_errors_exit_2() {
    let out = carrousel(&["analyze", "--input", "-", "--vars", "x,y", "--trace", "-1"], "y^2 - x^3");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("monodromy.empty-admissible-set"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["analyze", "--input", "-", "--vars", "s,t,x,y", "--slice-char", "(L^8±1)(L+1)/(L^4-1)", "--format", "structured"];
    let f = "y^2 - x^4 + s^3*x^3 - t^2*x^3";
    let a = carrousel(&args, f);
    let b = carrousel(&args, f);
    assert_eq!(a.stdout, b.stdout);
    let text = ["analyze", "--input", "-", "--vars", "s,t,x,y"];
    assert_eq!(carrousel(&text, f).stdout, carrousel(&text, f).stdout);
}

#[test]
fn structured_report_round_trips() {
    let cfg = AnalysisConfig {
        input: "y^2 - x^4 + s^3*x^3 - t^2*x^3".into(),
        vars: ["s", "t", "x", "y"].map(String::from).to_vec(),
        slice_chars: vec!["(L^8±1)(L+1)/(L^4-1)".into()],
        ..Default::default()
    };
    let r = run_analysis(&cfg).unwrap();
    let json = r.to_json();
    let back = Report::from_json(&json).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_json(), json);
}

#[test]
fn text_output_follows_narrative_order() {
    let out = carrousel(&["analyze", "--input", "-", "--vars", "t,x,y", "--chi-link", "1"], "y^2 - x^3 - t*x^2");
    let s = String::from_utf8(out.stdout).unwrap();
    let pos: Vec<usize> = ["== cycles", "== Lê numbers", "== invariants", "== classification", "== candidates", "== cases"]
        .iter()
        .map(|h| s.find(h).unwrap_or_else(|| panic!("missing {h}")))
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{s}");
}

#[test]
fn hint_file_is_consumed() {
    let dir = std::env::temp_dir().join(format!("carrousel-hints-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hints.txt");
    // a (correct) parameterization of the Whitney polar curve
    std::fs::write(&path, "component V(2*t + 3*x, y): t = -3*T, x = 2*T, y = 0\n").unwrap();
    let (r, _) = structured(&["analyze", "--input", "-", "--vars", "t,x,y", "--hints", path.to_str().unwrap()], "y^2 - x^3 - t*x^2");
    assert_eq!(r.invariants.tau, 3);
    std::fs::write(&path, "component V(2*t + 3*x, y): t = T, x = T, y = 0\n").unwrap();
    let out = carrousel(&["analyze", "--input", "-", "--vars", "t,x,y", "--hints", path.to_str().unwrap()], "y^2 - x^3 - t*x^2");
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn golden_all_passes() {
    let fixtures = select(&fixture_dir(), "all").unwrap();
    assert!(fixtures.len() >= 12);
    for (_, f) in &fixtures {
        let o = run_fixture(f);
        assert!(o.passed(), "{}: {:#?}", o.name, o.diffs);
    }
}

#[test]
fn golden_by_name() {
    let out = carrousel(&["golden", "example-3.1 a=4 b=3 c=2"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("pass example-3.1-a4-b3-c2"));
    let out = carrousel(&["golden", "example-3.2"], "");
    assert_eq!(out.status.code(), Some(0));
    let out = carrousel(&["golden", "nonexistent"], "");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn golden_reports_drift() {
    let (_, mut f) = select(&fixture_dir(), "example-2.7").unwrap().remove(0);
    f.expected.as_mut().unwrap().invariants.tau = 4;
    let o = run_fixture(&f);
    assert_eq!(o.diffs, vec!["invariants.tau: expected 4, got 3".to_string()]);
}
