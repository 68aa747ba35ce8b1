use std::path::PathBuf;
use std::process::{Command, Output};

fn model(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diagasym")).args(args).output().expect("binary runs")
}

fn run_model(sub: &str, name: &str, rest: &[&str]) -> Output {
    let path = model(name);
    let mut args = vec![sub, path.to_str().unwrap()];
    args.extend_from_slice(rest);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_counterexample_names_condition_three() {
    let o = run_model("analyze", "counterexample.json", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("condition (III) positive coefficients: FAIL factor 2"));
    assert!(stderr(&o).contains("error[ValidationFailed]"));
}

#[test]
fn analyze_coin_reports_everything() {
    let o = run_model("analyze", "coin.json", &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("vertices: (0, 0), (3/2, 0), (1, 1), (0, 3/2)"));
    assert!(out.contains("A_1,2 = 1"));
    assert!(out.contains("(p,q) = (1, 1): C = 3, Omega_1,2"));
}

#[test]
fn verify_vertex_regime_passes() {
    let o = run_model("verify", "coin.json", &["-p", "1", "-q", "1", "--kmax", "100", "--tol", "0.01"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn verify_fails_with_tight_tolerance() {
    let o = run_model("verify", "coin.json", &["-p", "1", "-q", "4", "--kmax", "50", "--tol", "0.001"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    let o = run_model("verify", "three_line.json", &["-p", "1", "-q", "1", "--k", "20,40,80", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,exact_log,pred_log,ratio");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("80,"));
}

#[test]
fn boundary_direction_exits_three() {
    let o = run_model("asymptotic", "coin.json", &["-p", "1", "-q", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error[BoundaryDirection]"));
}

#[test]
fn asymptotic_saddle_prints_constant() {
    let o = run_model("asymptotic", "coin.json", &["-p", "1", "-q", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("base: z^ = 3/5, w^ = 6/5"));
    assert!(out.contains("constant C: 1.60571170454"));
    assert!(out.contains("C/sqrt(k) * P(3/5, 6/5)"));
}

#[test]
fn non_primitive_direction_is_reduced() {
    let a = run_model("asymptotic", "coin.json", &["-p", "1", "-q", "4"]);
    let b = run_model("asymptotic", "coin.json", &["-p", "3/2", "-q", "6"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn force_is_refused_for_asymptotic() {
    let o = run_model("asymptotic", "counterexample.json", &["-p", "1", "-q", "1", "--force"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error[ForceRefused]"));
}

#[test]
fn force_allows_expansion_of_counterexample() {
    let refused = run_model("expand", "counterexample.json", &["--xmax", "3", "--ymax", "3"]);
    assert_eq!(refused.status.code(), Some(2));
    let o = run_model("expand", "counterexample.json", &["--xmax", "3", "--ymax", "3", "--force"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("x,y,numerator,denominator\n"));
    assert!(out.contains("\n1,2,0,1\n"));
    assert!(out.contains("\n2,1,4,1\n"));
}

#[test]
fn horn_on_counterexample_reports_zero_coefficient() {
    let o = run_model("horn", "counterexample.json", &["-p", "1", "-q", "1", "--force"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("error[ZeroCoefficient]"));
}

#[test]
fn horn_single_factor() {
    let o = run_model("horn", "single.json", &["-p", "1", "-q", "1", "--kmax", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("limit (1/z^, 1/w^) = (2, 2)"));
}

#[test]
fn fan_csv_row_counts() {
    for (name, rows) in [("coin.json", 3), ("three_line.json", 3), ("single.json", 1)] {
        let o = run_model("fan", name, &["--emit", "csv"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).lines().count(), rows + 1, "{name}");
    }
    let out = stdout(&run_model("fan", "three_line.json", &["--emit", "csv"]));
    let kinds: Vec<String> = out.lines().skip(1).map(|l| l.split(',').take(3).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(kinds, ["saddle,3,", "vertex,2,3", "saddle,2,"]);
}

#[test]
fn fan_svg_to_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for path in [&a, &b] {
        let o = run_model("fan", "coin.json", &["--emit", "svg", "--output", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn decompose_csv_and_status() {
    let o = run_model("decompose", "three_line.json", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "i,j,A_num,A_den\n1,2,-1,1\n1,3,-1,1\n2,3,3,1\n");
    assert!(stderr(&o).contains("exact identity holds"));

    let o = run_model("decompose", "single.json", &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("error[TooFewFactors]"));
}

#[test]
fn coeff_is_exact() {
    let o = run_model("coeff", "coin.json", &["1", "1"]);
    assert_eq!(stdout(&o), "13/9\n");
}

#[test]
fn usage_and_parse_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run_model("verify", "coin.json", &["-p", "1"]).status.code(), Some(1));
    assert_eq!(run_model("verify", "coin.json", &["-p", "1", "-q", "1", "--k", "0"]).status.code(), Some(1));
    assert_eq!(run_model("asymptotic", "coin.json", &["-p", "1/0", "-q", "1"]).status.code(), Some(1));
    assert_eq!(run_model("asymptotic", "coin.json", &["-p", "-1", "-q", "1"]).status.code(), Some(1));
    let o = run(&["coeff", "/nonexistent/model.json", "0", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[Io]"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"factors": [{"a": "1/0", "b": "1"}]}"#).unwrap();
    let o = run(&["coeff", bad.to_str().unwrap(), "0", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[BadRational]"));
    std::fs::write(&bad, r#"{"factors": [], "color": "red"}"#).unwrap();
    assert!(stderr(&run(&["coeff", bad.to_str().unwrap(), "0", "0"])).starts_with("error[Syntax]"));
}

#[test]
fn axis_direction_exits_three() {
    let o = run_model("asymptotic", "coin.json", &["-p", "0", "-q", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let args = ["-p", "1", "-q", "1", "--k", "5,10,15"];
    assert_eq!(run_model("verify", "coin.json", &args).stdout, run_model("verify", "coin.json", &args).stdout);
    assert_eq!(run_model("analyze", "three_line.json", &[]).stdout, run_model("analyze", "three_line.json", &[]).stdout);
}
