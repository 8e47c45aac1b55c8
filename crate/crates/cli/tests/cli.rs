use accr_cli::ManifoldDefinition;
use accr_core::scenarios::build_example2;
use std::path::Path;
use std::process::{Command, Output};

fn accr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_accr")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_def(dir: &Path, name: &str, def: &ManifoldDefinition) -> String {
    let path = dir.join(name);
    std::fs::write(&path, def.to_json()).unwrap();
    path.display().to_string()
}

#[test]
fn inspect_example2() {
    let o = accr(&["inspect", "--scenario", "example2", "--p", "0", "--q", "0"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    for line in [
        "tau = 4",
        "tau_tilde = 4",
        "tau_star = 0",
        "sasaki_like = true",
        "eta_einstein (a,b,c)=(0,0,4)",
    ] {
        assert!(out.contains(line), "missing `{line}` in\n{out}");
    }
    for c in [
        "R_0110 = 1",
        "R_0220 = 1",
        "R_0330 = -1",
        "R_0440 = -1",
        "R_1331 = 1",
        "R_2442 = 1",
        "R_1432 = 1",
    ] {
        assert!(out.contains(c), "missing `{c}`");
    }
    assert!(out.contains("rho_00 = 4"));
}

#[test]
fn soliton_solve_example2() {
    let o = accr(&[
        "soliton",
        "--scenario",
        "example2",
        "--beta",
        "0",
        "--t0",
        "1",
        "--solve",
    ]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(
        out.contains("lambda = 2\n") && out.contains("lambda_tilde = -2\n"),
        "{out}"
    );
    let rb: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("rb_residual = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(rb < 1e-10);
}

#[test]
fn soliton_example1_curve() {
    let o = accr(&[
        "soliton",
        "--scenario",
        "example1",
        "--t",
        "0",
        "--n",
        "2",
        "--beta",
        "0",
    ]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("tau+tau_tilde = 24"), "{out}");
}

#[test]
fn wrong_lambda_exits_one() {
    let o = accr(&[
        "soliton",
        "--scenario",
        "example2",
        "--beta",
        "0",
        "--t0",
        "1",
        "--lambda",
        "5",
        "--lambda-tilde",
        "-2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains("lambda = 5"));
}

#[test]
fn excluded_t_is_an_error() {
    let o = accr(&["soliton", "--scenario", "example1", "--t", "0.75pi"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn bad_tolerance_and_usage() {
    assert_eq!(
        accr(&["inspect", "--scenario", "example2", "--tol", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(accr(&["inspect"]).status.code(), Some(2));
    assert_eq!(
        accr(&[
            "soliton",
            "--scenario",
            "example2",
            "--solve",
            "--lambda",
            "1",
            "--lambda-tilde",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(accr(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn default_example2_sweep_passes() {
    let o = accr(&["sweep", "--scenario", "example2"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        out.contains("rows = 700, passed = 700, failed = 0"),
        "{}",
        out.lines().last().unwrap()
    );
}

#[test]
fn degenerate_row_does_not_fail_the_sweep() {
    let o = accr(&[
        "sweep",
        "--scenario",
        "example1",
        "--grid-t",
        "0,3pi/4,1",
        "--grid-n",
        "2",
        "--grid-beta",
        "0,0.5",
    ]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert_eq!(out.lines().filter(|l| l.contains("  degenerate  ")).count(), 2, "{out}");
    assert!(out.contains("passed = 4, failed = 0, degenerate = 2"));
}

#[test]
fn json_sweep_is_parseable() {
    let o = accr(&[
        "sweep",
        "--scenario",
        "example1",
        "--grid-t",
        "0,0.75pi",
        "--grid-n",
        "1,2",
        "--grid-beta",
        "0",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        for key in [
            "scenario",
            "index",
            "params",
            "scalars",
            "status",
            "worst_check",
            "worst_residual",
            "failed_checks",
        ] {
            assert!(r.get(key).is_some(), "{key}");
        }
    }
    assert_eq!(rows[2]["status"], "degenerate");
    assert_eq!(rows[0]["params"]["n"], 1.0);
}

#[test]
fn json_reports_are_arrays() {
    for args in [
        &["inspect", "--scenario", "example2", "--format", "json"][..],
        &["soliton", "--scenario", "example2", "--t0", "1", "--format", "json"][..],
        &["inspect", "--scenario", "example1", "--t", "0.3", "--format", "json"][..],
    ] {
        let o = accr(args);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let r = &v.as_array().unwrap()[0];
        assert_eq!(r["passed"], true);
        assert!(r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["residual"].is_number()));
    }
}

#[test]
fn round_trip_reproduces_text_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = accr(&["export", "--p", "0.3", "--q", "-1.7"]);
    let path = dir.path().join("e2.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let path = path.display().to_string();
    let pairs = [
        (
            vec!["inspect", "--input", &path],
            vec!["inspect", "--scenario", "example2", "--p", "0.3", "--q", "-1.7"],
        ),
        (
            vec![
                "soliton",
                "--input",
                &path,
                "--k",
                "-2",
                "--k-prime",
                "-2",
                "--beta",
                "0.25",
            ],
            vec![
                "soliton",
                "--scenario",
                "example2",
                "--p",
                "0.3",
                "--q",
                "-1.7",
                "--t0",
                "1",
                "--beta",
                "0.25",
            ],
        ),
    ];
    for (a, b) in pairs {
        let (x, y) = (accr(&a), accr(&b));
        assert_eq!(x.status.code(), Some(0));
        assert_eq!(stdout(&x), stdout(&y));
    }
}

#[test]
fn non_jacobi_definition_is_rejected() {
    let (alg, s) = build_example2(0.0, 0.0).unwrap();
    let mut def = ManifoldDefinition::from_model(&alg, &s);
    def.structure_constants.push(accr_cli::definition::Bracket {
        i: 1,
        j: 2,
        k: 3,
        value: 1.0,
    });
    let dir = tempfile::tempdir().unwrap();
    let path = write_def(dir.path(), "bad.json", &def);
    let o = accr(&["inspect", "--input", &path]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("Jacobi") && err.contains('('), "{err}");
}

#[test]
fn abelian_algebra_is_not_sasaki_like() {
    let (alg, s) = build_example2(0.0, 0.0).unwrap();
    let mut def = ManifoldDefinition::from_model(&alg, &s);
    def.structure_constants.clear();
    let dir = tempfile::tempdir().unwrap();
    let path = write_def(dir.path(), "flat.json", &def);
    let o = accr(&["inspect", "--input", &path]);
    let out = stdout(&o);
    assert!(out.contains("sasaki_like = false"), "{out}");
    assert!(out.contains("tau = 0"));
    let o = accr(&["soliton", "--input", &path, "--solve"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn malformed_input_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"dim\": 5,\n  \"phi\": [\n").unwrap();
    let o = accr(&["inspect", "--input", &path.display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let o = accr(&["inspect", "--input", "/nonexistent/def.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn eta_rb_and_conformal_model() {
    let o = accr(&["soliton", "--scenario", "example2", "--t0", "1", "--mu", "0"]);
    assert!(stdout(&o).contains("eta_rb_residual = "));
    let o = accr(&[
        "soliton",
        "--scenario",
        "example2",
        "--psi",
        "0",
        "--psi-tilde",
        "0",
        "--beta",
        "0",
    ]);
    let out = stdout(&o);
    assert!(out.contains("conformal potential"), "{out}");
}
