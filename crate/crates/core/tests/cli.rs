use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use momenta::report::{Format, Report, Status};
use momenta::scenario::{exit_code, run, run_scenario, Overrides, Scenario};
use momenta::Error;

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.json"))
}

fn momenta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momenta")).args(args).env_remove("MOMENTA_SEED").output().unwrap()
}

fn write_temp(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("momenta_cli_{name}.json"));
    std::fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn text_report_lines() {
    let o = momenta(&["verify", scenario("canonical_rotation").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("SCENARIO canonical_rotation (seed 2, order 3)\n"));
    assert!(text.contains("CHECK noether: PASS [exact]\n"));
    assert!(text.ends_with("OVERALL: PASS\n"));
}

#[test]
fn noether_failure_exits_one_with_witness() {
    let body = r#"{
        "space": {"variables": ["q", "p"], "order": 3},
        "poisson": [["0", "1"], ["-1", "0"]],
        "lie": {"basis": ["xi"]},
        "momentum": {"xi": "(q^2 + p^2)/2"},
        "hamiltonians": ["q"],
        "checks": ["noether"]
    }"#;
    let o = momenta(&["verify", write_temp("noether", body).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("CHECK noether: FAIL (witness: {q, J(xi)} = p)"));
}

#[test]
fn jacobi_failure_line() {
    let body = r#"{
        "space": {"variables": ["x1", "x2", "x3", "x4"], "order": 2},
        "poisson": [["0", "x3", "0", "0"], ["-x3", "0", "0", "0"], ["0", "0", "0", "x1"], ["0", "0", "-x1", "0"]],
        "checks": ["jacobi"]
    }"#;
    let path = write_temp("jacobi", body);
    let report = run_scenario(&path, &Overrides::default()).unwrap();
    let c = report.check("jacobi").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert!(c.headline().starts_with("CHECK jacobi: FAIL (witness: "));
}

#[test]
fn input_errors_exit_two() {
    let missing = write_temp("missing_space", r#"{"checks": ["jacobi"]}"#);
    let o = momenta(&["verify", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing section `space`"));
    assert!(matches!(run_scenario(&missing, &Overrides::default()), Err(Error::MissingSection(s)) if s == "space"));

    let o = momenta(&["verify", scenario("trivial").to_str().unwrap(), "--checks", "jacobi,nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown check `nonsense`"));

    let o = momenta(&["verify", scenario("trivial").to_str().unwrap(), "--checks", "hopf_action"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing section"));

    let bad = write_temp("bad_expr", r#"{"space": {"variables": ["q"], "order": 2}, "hamiltonians": ["q +* 1"], "checks": []}"#);
    let o = momenta(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("in section `hamiltonians`"));

    let o = momenta(&["verify", "/nonexistent/scenario.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = momenta(&["verify", scenario("trivial").to_str().unwrap(), "--format", "xml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn overrides_apply() {
    let path = scenario("r2_abelian");
    let o = momenta(&["verify", path.to_str().unwrap(), "--order", "5", "--seed", "42", "--checks", "higher_action", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!((r.order, r.seed, r.checks.len()), (5, 42, 1));
    assert_eq!(r.checks[0].certified, momenta::report::Certified::Order(3));
}

#[test]
fn seed_environment_default() {
    let sc = Scenario::from_json(r#"{"space": {"variables": ["q", "p"], "order": 2}, "poisson": [["0","1"],["-1","0"]], "checks": ["koszul"]}"#).unwrap();
    let path = write_temp("env_seed", r#"{"space": {"variables": ["q", "p"], "order": 2}, "poisson": [["0","1"],["-1","0"]], "checks": ["koszul"]}"#);
    let o = Command::new(env!("CARGO_BIN_EXE_momenta")).args(["verify", path.to_str().unwrap()]).env("MOMENTA_SEED", "17").output().unwrap();
    assert!(stdout(&o).starts_with("SCENARIO momenta_cli_env_seed (seed 17, order 2)"));
    let r = run(&sc, "inline", &Overrides { seed: Some(3), ..Overrides::default() }).unwrap();
    assert_eq!(r.seed, 3);
}

#[test]
fn json_round_trip_and_determinism() {
    for name in ["r2_nonabelian", "so3_lie_poisson"] {
        let a = run_scenario(&scenario(name), &Overrides::default()).unwrap();
        let b = run_scenario(&scenario(name), &Overrides::default()).unwrap();
        assert_eq!(a.emit(Format::Json), b.emit(Format::Json));
        assert_eq!(a.emit(Format::Text), b.emit(Format::Text));
        assert_eq!(Report::from_json(&a.emit(Format::Json)).unwrap(), a);
        let names: Vec<&str> = a.checks.iter().map(|c| c.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}

#[test]
fn corpus_exit_codes_and_anchors() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let sc = Scenario::load(&path).unwrap();
        assert!(sc.description.as_deref().is_some_and(|d| d.len() > 20), "{path:?} lacks a description");
        let report = run_scenario(&path, &Overrides::default()).unwrap();
        let expected = if path.ends_with("r2_nonabelian.json") { 1 } else { 0 };
        assert_eq!(exit_code(&report), expected, "{}", report.to_text());
        seen += 1;
    }
    assert!(seen >= 7);
}

#[test]
fn stated_relation_reports_its_residual() {
    let r = run_scenario(&scenario("r2_nonabelian"), &Overrides::default()).unwrap();
    let br = r.check("bracket_representation").unwrap();
    assert_eq!(br.failing_order, Some(0));
    assert!(br.notes.iter().any(|n| n.contains("[xi,eta] = h*eta^2 - eta")));
    assert!(r.check("eq_br").unwrap().passed());
    assert!(r.check("hopf_action").unwrap().passed());
    assert!(r.check("coproduct_welldefined").unwrap().failed());
}

#[test]
fn checks_listing() {
    let o = momenta(&["checks"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("eq_br: quantum_action\n"));
}
