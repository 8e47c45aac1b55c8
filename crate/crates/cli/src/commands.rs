use crate::args::{Cli, Command, ExportArgs, InspectArgs, Scenario, SolitonArgs, SourceArgs, SweepArgs};
use crate::definition::ManifoldDefinition;
use crate::error::CliError;
use crate::render::{fmt_num, json_report, text_report};
use accr_core::geometry::{
    bianchi_residual, curvature_symmetry_residual, reeb_gradient_residual, sasaki_identity_residuals,
};
use accr_core::scenarios::{self, RowStatus, SweepGrid, SweepTable};
use accr_core::soliton::{ConformalTheoremInput, VerticalTheoremInput};
use accr_core::structure::structure_residuals;
use accr_core::{
    einstein_like_fit, eta_rb_residual, lie_derivative_metric, phi_trace, rb_like_residual, solve_vertical_soliton,
    standard_structure, trace_g, verify_conformal_theorem, verify_vertical_theorem, AccRStructure64, EinsteinClass,
    EinsteinFit, LieAlgebra64, PotentialSpec, SolitonSpec, StructureGeometry, Tensor64, TheoremReport, VerticalScalar,
};
use serde_json::{json, Value};
use std::fmt::Write;

/// Result of one command: what to print and whether every check passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Inspect(a) => inspect(a),
        Command::Soliton(a) => soliton(a),
        Command::Sweep(a) => sweep(a),
        Command::Export(a) => export(a),
    }
}

fn check_tol(tol: f64) -> Result<f64, CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!("tolerance must be positive, got {tol}")))
    }
}

enum Source {
    Model(Box<(LieAlgebra64, AccRStructure64)>),
    Example1 { t: f64, n: usize },
}

fn load_source(src: &SourceArgs) -> Result<Source, CliError> {
    match (&src.input, src.scenario) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let (alg, s) = ManifoldDefinition::from_json(&text)?.load()?;
            Ok(Source::Model(Box::new((alg, s))))
        }
        (None, Some(Scenario::Example2)) => Ok(Source::Model(Box::new(scenarios::build_example2(src.p, src.q)?))),
        (None, Some(Scenario::Example1)) => Ok(Source::Example1 { t: src.t, n: src.n }),
        (None, None) => Err(CliError::Usage("one of --input or --scenario is required".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("--input and --scenario are mutually exclusive".into())),
    }
}

fn finish(mut text: String, report: &TheoremReport, extra: Value) -> Outcome {
    text.push_str(&text_report(report));
    let mut j = json_report(report);
    if let (Value::Object(m), Value::Object(e)) = (&mut j, extra) {
        m.extend(e);
    }
    Outcome {
        text,
        json: Value::Array(vec![j]),
        passed: report.passed(),
    }
}

fn fit_line(fit: &EinsteinFit<f64>) -> String {
    format!(
        "{} (a,b,c)=({},{},{}) residual {:.3e}\n",
        fit.class.label(),
        fmt_num(fit.a),
        fmt_num(fit.b),
        fmt_num(fit.c),
        fit.residual
    )
}

fn fit_json(fit: &EinsteinFit<f64>) -> Value {
    json!({"class": fit.class.label(), "a": fit.a, "b": fit.b, "c": fit.c, "residual": fit.residual})
}

fn add_fit_checks(report: &mut TheoremReport, fit: &EinsteinFit<f64>) {
    if fit.class != EinsteinClass::NotEinsteinLike {
        report.check("tau = (2n+1) a + b + c", fit.tau_residual);
        report.check("tau* = -2n b", fit.tau_star_residual);
    }
}

/// Nonzero components `R_ijlk` with `i < j`, `k < l`, `(i,j) <= (k,l)`, listed
/// with the last pair descending.
fn curvature_components(r: &Tensor64) -> Vec<(usize, usize, usize, usize, f64)> {
    let n = r.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in i..n {
                for l in k + 1..n {
                    if (k, l) < (i, j) {
                        continue;
                    }
                    let v = r.at4(i, j, l, k);
                    if v.abs() > 1e-12 {
                        out.push((i, j, l, k, v));
                    }
                }
            }
        }
    }
    out
}

pub fn inspect_model(alg: &LieAlgebra64, s: &AccRStructure64, tol: f64) -> Result<Outcome, CliError> {
    let geo = StructureGeometry::analyze(alg, s)?;
    let fit = einstein_like_fit(&geo.basic.ricci, s)?;
    let mut report = TheoremReport::new("inspect", tol);
    for (name, r) in structure_residuals(s.phi(), s.xi(), s.eta(), s.g()) {
        report.check(name, r);
    }
    report.check("torsion-free", geo.basic.conn.torsion_residual(alg));
    report.check("metric compatibility", geo.basic.conn.metric_residual(s.g()));
    report.check("torsion-free (g~)", geo.associated.conn.torsion_residual(alg));
    report.check(
        "metric compatibility (g~)",
        geo.associated.conn.metric_residual(s.g_tilde()),
    );
    report.check("curvature symmetries", curvature_symmetry_residual(&geo.basic.riemann));
    report.check("first Bianchi identity", bianchi_residual(&geo.basic.riemann));
    report.check("F symmetries", geo.fundamental.symmetry_residual(s));
    report.check(
        "F(x, phi y, xi) = g(nabla_x xi, y)",
        geo.fundamental.reeb_residual(&geo.basic.conn, s),
    );
    if geo.sasaki.is_sasaki_like {
        for (name, r) in sasaki_identity_residuals(&geo.basic, s) {
            report.check(name, r);
        }
        report.check("nabla~_x xi = -phi x", reeb_gradient_residual(&geo.associated.conn, s));
        report.check(
            "tau~ = -tau* + 2n",
            geo.tau_tilde() + geo.tau_star() - (2 * s.n()) as f64,
        );
    }
    add_fit_checks(&mut report, &fit);

    let mut text = String::new();
    writeln!(text, "dim = {} (n = {})", s.dim(), s.n()).unwrap();
    writeln!(text, "structure = valid").unwrap();
    writeln!(
        text,
        "sasaki_like = {} (residual {:.3e})",
        geo.sasaki.is_sasaki_like, geo.sasaki.residual
    )
    .unwrap();
    let comps = curvature_components(&geo.basic.riemann);
    writeln!(text, "curvature components ({} nonzero, i<j, k>l):", comps.len()).unwrap();
    for &(i, j, k, l, v) in &comps {
        writeln!(text, "  R_{i}{j}{k}{l} = {}", fmt_num(v)).unwrap();
    }
    writeln!(text, "ricci components (i<=j):").unwrap();
    let mut rho = Vec::new();
    for i in 0..s.dim() {
        for j in i..s.dim() {
            let v = geo.basic.ricci.at2(i, j);
            if v.abs() > 1e-12 {
                writeln!(text, "  rho_{i}{j} = {}", fmt_num(v)).unwrap();
                rho.push(json!({"i": i, "j": j, "value": v}));
            }
        }
    }
    writeln!(text, "tau = {}", fmt_num(geo.tau())).unwrap();
    writeln!(text, "tau_star = {}", fmt_num(geo.tau_star())).unwrap();
    writeln!(text, "tau_tilde = {}", fmt_num(geo.tau_tilde())).unwrap();
    text.push_str(&fit_line(&fit));

    let extra = json!({
        "dim": s.dim(),
        "n": s.n(),
        "sasaki_like": geo.sasaki.is_sasaki_like,
        "sasaki_residual": geo.sasaki.residual,
        "curvature": comps.iter().map(|&(i, j, k, l, v)| json!({"i": i, "j": j, "k": k, "l": l, "value": v})).collect::<Vec<_>>(),
        "ricci": rho,
        "tau": geo.tau(),
        "tau_star": geo.tau_star(),
        "tau_tilde": geo.tau_tilde(),
        "einstein": fit_json(&fit),
    });
    Ok(finish(text, &report, extra))
}

fn inspect_example1(t: f64, n: usize, tol: f64) -> Result<Outcome, CliError> {
    let pt = scenarios::example1_curve(t, n, 0.0)?;
    let s = standard_structure::<f64>(n)?;
    let rho = scenarios::example1_ricci(&s, pt.p, pt.q);
    let tau_star = phi_trace(&rho, s.metric(), s.phi())?;
    let fit = einstein_like_fit(&rho, &s)?;
    let mut report = TheoremReport::new("inspect", tol);
    report.check("p^2 + q^2 - p + q = 0", pt.constraint);
    report.check("tau: (p, q) form = t form", pt.tau - pt.tau_via_pq);
    report.check("tau~: (p, q) form = t form", pt.tau_tilde - pt.tau_tilde_via_pq);
    report.check("tau = tr_g rho", pt.tau - trace_g(&rho, s.metric())?);
    report.check("tau~ = -tau* + 2n", pt.tau_tilde + tau_star - (2 * n) as f64);
    report.check(
        "tau + tau~ = 4n (n + 1)",
        pt.tau + pt.tau_tilde - (4 * n * (n + 1)) as f64,
    );
    add_fit_checks(&mut report, &fit);

    let mut text = String::new();
    writeln!(text, "dim = {} (n = {})", 2 * n + 1, n).unwrap();
    writeln!(text, "t = {}", fmt_num(t)).unwrap();
    writeln!(text, "p = {}", fmt_num(pt.p)).unwrap();
    writeln!(text, "q = {}", fmt_num(pt.q)).unwrap();
    writeln!(text, "tau = {}", fmt_num(pt.tau)).unwrap();
    writeln!(text, "tau_star = {}", fmt_num(tau_star)).unwrap();
    writeln!(text, "tau_tilde = {}", fmt_num(pt.tau_tilde)).unwrap();
    writeln!(text, "tau+tau_tilde = {}", fmt_num(pt.tau + pt.tau_tilde)).unwrap();
    text.push_str(&fit_line(&fit));
    let extra = json!({
        "dim": 2 * n + 1, "n": n, "t": t, "p": pt.p, "q": pt.q,
        "tau": pt.tau, "tau_star": tau_star, "tau_tilde": pt.tau_tilde,
        "einstein": fit_json(&fit),
    });
    Ok(finish(text, &report, extra))
}

fn inspect(a: &InspectArgs) -> Result<Outcome, CliError> {
    let tol = check_tol(a.output.tol)?;
    match load_source(&a.source)? {
        Source::Model(m) => inspect_model(&m.0, &m.1, tol),
        Source::Example1 { t, n } => inspect_example1(t, n, tol),
    }
}

fn soliton(a: &SolitonArgs) -> Result<Outcome, CliError> {
    let tol = check_tol(a.output.tol)?;
    if a.solve && (a.lambda.is_some() || a.lambda_tilde.is_some()) {
        return Err(CliError::Usage(
            "--solve cannot be combined with --lambda/--lambda-tilde".into(),
        ));
    }
    if a.lambda.is_some() != a.lambda_tilde.is_some() {
        return Err(CliError::Usage(
            "--lambda and --lambda-tilde must be given together".into(),
        ));
    }
    let conformal = a.psi.is_some() || a.psi_tilde.is_some();
    match load_source(&a.source)? {
        Source::Example1 { t, n } => {
            if a.k.is_some() || a.k_prime.is_some() {
                return Err(CliError::Usage(
                    "example1 carries a conformal potential; use --psi/--psi-tilde".into(),
                ));
            }
            conformal_example1(a, t, n, tol)
        }
        Source::Model(m) if conformal => conformal_model(a, &m.0, &m.1, tol),
        Source::Model(m) => {
            let example2 = a.source.scenario == Some(Scenario::Example2);
            let default_k = if example2 { -2.0 * a.t0 } else { 0.0 };
            let default_dk = if example2 { -2.0 } else { 0.0 };
            let k = VerticalScalar::new(a.k.unwrap_or(default_k), a.k_prime.unwrap_or(default_dk));
            vertical_model(a, &m.0, &m.1, k, tol)
        }
    }
}

fn lambdas(a: &SolitonArgs) -> Option<(f64, f64)> {
    a.lambda.zip(a.lambda_tilde)
}

fn vertical_model(
    a: &SolitonArgs,
    alg: &LieAlgebra64,
    s: &AccRStructure64,
    k: VerticalScalar<f64>,
    tol: f64,
) -> Result<Outcome, CliError> {
    let geo = StructureGeometry::analyze(alg, s)?;
    let (lambda, lambda_tilde) = match lambdas(a) {
        Some(l) => l,
        None => {
            let sol = solve_vertical_soliton(a.beta, &k, geo.tau(), geo.tau_tilde(), s.n(), &geo.sasaki)?;
            (sol.lambda, sol.lambda_tilde)
        }
    };
    let pot = PotentialSpec::Vertical(k);
    let lg = lie_derivative_metric(s.metric(), &geo.basic.conn, &pot, s)?;
    let lgt = lie_derivative_metric(s.assoc(), &geo.associated.conn, &pot, s)?;
    let mut spec = SolitonSpec::new(a.beta, lambda, lambda_tilde);
    let rb = rb_like_residual(&geo.basic.ricci, &lg, &lgt, s, &spec, geo.tau(), geo.tau_tilde()).max_abs();

    let mut report = TheoremReport::new("vertical potential", tol);
    report.check("RB-like soliton residual", rb);
    if geo.sasaki.is_sasaki_like {
        report.merge(verify_vertical_theorem(&VerticalTheoremInput {
            structure: s,
            ricci: &geo.basic.ricci,
            tau: geo.tau(),
            tau_tilde: geo.tau_tilde(),
            tau_star: geo.tau_star(),
            beta: a.beta,
            k,
            lambda,
            lambda_tilde,
        })?);
    } else {
        report.note("structure is not Sasaki-like: only the soliton residual is checked");
    }
    let mut eta_rb = None;
    if let Some(mu) = a.mu {
        spec = spec.with_mu(mu);
        let r = eta_rb_residual(&geo.basic.ricci, &lg, s, &spec, geo.tau())?.max_abs();
        report.check("eta-RB-like soliton residual", r);
        eta_rb = Some(r);
    }

    let mut text = String::new();
    writeln!(
        text,
        "vertical potential: k = {}, dk(xi) = {}, beta = {}",
        fmt_num(k.value),
        fmt_num(k.xi_derivative),
        fmt_num(a.beta)
    )
    .unwrap();
    writeln!(text, "lambda = {}", fmt_num(lambda)).unwrap();
    writeln!(text, "lambda_tilde = {}", fmt_num(lambda_tilde)).unwrap();
    writeln!(text, "tau = {}", fmt_num(geo.tau())).unwrap();
    writeln!(text, "tau_tilde = {}", fmt_num(geo.tau_tilde())).unwrap();
    writeln!(text, "rb_residual = {rb:.3e}").unwrap();
    if let Some(r) = eta_rb {
        writeln!(text, "eta_rb_residual = {r:.3e}").unwrap();
    }
    let extra = json!({
        "potential": "vertical", "k": k.value, "k_prime": k.xi_derivative, "beta": a.beta,
        "lambda": lambda, "lambda_tilde": lambda_tilde, "tau": geo.tau(), "tau_tilde": geo.tau_tilde(),
        "rb_residual": rb, "eta_rb_residual": eta_rb,
    });
    Ok(finish(text, &report, extra))
}

struct ConformalData<'a> {
    s: &'a AccRStructure64,
    ricci: &'a Tensor64,
    tau: f64,
    tau_tilde: f64,
    /// `psi + lambda` and `psi~ + lambda~` when the caller gives no lambdas.
    solved: (f64, f64),
}

fn conformal_report(
    a: &SolitonArgs,
    d: &ConformalData<'_>,
    report: &mut TheoremReport,
) -> Result<(String, Value), CliError> {
    let psi = a.psi.unwrap_or(0.0);
    let psi_tilde = a.psi_tilde.unwrap_or(0.0);
    let (lambda, lambda_tilde) = lambdas(a).unwrap_or((d.solved.0 - psi, d.solved.1 - psi_tilde));
    report.merge(verify_conformal_theorem(&ConformalTheoremInput {
        structure: d.s,
        ricci: d.ricci,
        beta: a.beta,
        psi,
        psi_tilde,
        lambda,
        lambda_tilde,
        tau: d.tau,
        tau_tilde: d.tau_tilde,
    })?);
    // L g = 2 psi g and L g~ = 2 psi~ g~
    let lg = d.s.g().scale(2.0 * psi);
    let lgt = d.s.g_tilde().scale(2.0 * psi_tilde);
    let mut spec = SolitonSpec::new(a.beta, lambda, lambda_tilde);
    let rb = rb_like_residual(d.ricci, &lg, &lgt, d.s, &spec, d.tau, d.tau_tilde).max_abs();
    report.check("RB-like soliton residual", rb);
    let mut eta_rb = None;
    if let Some(mu) = a.mu {
        spec = spec.with_mu(mu);
        let r = eta_rb_residual(d.ricci, &lg, d.s, &spec, d.tau)?.max_abs();
        report.check("eta-RB-like soliton residual", r);
        eta_rb = Some(r);
    }
    let mut text = String::new();
    writeln!(
        text,
        "conformal potential: psi = {}, psi_tilde = {}, beta = {}",
        fmt_num(psi),
        fmt_num(psi_tilde),
        fmt_num(a.beta)
    )
    .unwrap();
    writeln!(text, "lambda = {}", fmt_num(lambda)).unwrap();
    writeln!(text, "lambda_tilde = {}", fmt_num(lambda_tilde)).unwrap();
    writeln!(text, "tau = {}", fmt_num(d.tau)).unwrap();
    writeln!(text, "tau_tilde = {}", fmt_num(d.tau_tilde)).unwrap();
    writeln!(text, "tau+tau_tilde = {}", fmt_num(d.tau + d.tau_tilde)).unwrap();
    writeln!(text, "rb_residual = {rb:.3e}").unwrap();
    if let Some(r) = eta_rb {
        writeln!(text, "eta_rb_residual = {r:.3e}").unwrap();
    }
    let extra = json!({
        "potential": "conformal", "psi": psi, "psi_tilde": psi_tilde, "beta": a.beta,
        "lambda": lambda, "lambda_tilde": lambda_tilde, "tau": d.tau, "tau_tilde": d.tau_tilde,
        "rb_residual": rb, "eta_rb_residual": eta_rb,
    });
    Ok((text, extra))
}

fn conformal_example1(a: &SolitonArgs, t: f64, n: usize, tol: f64) -> Result<Outcome, CliError> {
    let pt = scenarios::example1_curve(t, n, a.beta)?;
    let s = standard_structure::<f64>(n)?;
    let rho = scenarios::example1_ricci(&s, pt.p, pt.q);
    let mut report = TheoremReport::new("conformal potential", tol);
    report.check("p^2 + q^2 - p + q = 0", pt.constraint);
    report.check("tau: (p, q) form = t form", pt.tau - pt.tau_via_pq);
    report.check("tau~: (p, q) form = t form", pt.tau_tilde - pt.tau_tilde_via_pq);
    report.check("tau = tr_g rho", pt.tau - trace_g(&rho, s.metric())?);
    let data = ConformalData {
        s: &s,
        ricci: &rho,
        tau: pt.tau,
        tau_tilde: pt.tau_tilde,
        solved: (pt.psi_plus_lambda, pt.psi_tilde_plus_lambda_tilde),
    };
    let (body, extra) = conformal_report(a, &data, &mut report)?;
    let text = format!(
        "t = {}, n = {}, p = {}, q = {}\n{body}",
        fmt_num(t),
        n,
        fmt_num(pt.p),
        fmt_num(pt.q)
    );
    Ok(finish(text, &report, extra))
}

fn conformal_model(a: &SolitonArgs, alg: &LieAlgebra64, s: &AccRStructure64, tol: f64) -> Result<Outcome, CliError> {
    let geo = StructureGeometry::analyze(alg, s)?;
    let psi = a.psi.unwrap_or(0.0);
    let psi_tilde = a.psi_tilde.unwrap_or(0.0);
    let (l, lt) =
        accr_core::soliton::solve_conformal_soliton(a.beta, psi, psi_tilde, geo.tau(), geo.tau_tilde(), s.n());
    let mut report = TheoremReport::new("conformal potential", tol);
    let data = ConformalData {
        s,
        ricci: &geo.basic.ricci,
        tau: geo.tau(),
        tau_tilde: geo.tau_tilde(),
        solved: (l + psi, lt + psi_tilde),
    };
    let (text, extra) = conformal_report(a, &data, &mut report)?;
    Ok(finish(text, &report, extra))
}

fn export(a: &ExportArgs) -> Result<Outcome, CliError> {
    let (alg, s) = scenarios::build_example2(a.p, a.q)?;
    let def = ManifoldDefinition::from_model(&alg, &s);
    let json = serde_json::to_value(&def).expect("definitions always serialize");
    Ok(Outcome {
        text: def.to_json() + "\n",
        json,
        passed: true,
    })
}

fn grid_from(a: &SweepArgs) -> SweepGrid {
    match (a.scenario, SweepGrid::default_example1(), SweepGrid::default_example2()) {
        (Scenario::Example1, SweepGrid::Example1 { t, n, beta }, _) => SweepGrid::Example1 {
            t: a.grid_t.clone().unwrap_or(t),
            n: a.grid_n.clone().unwrap_or(n),
            beta: a.grid_beta.clone().unwrap_or(beta),
        },
        (Scenario::Example2, _, SweepGrid::Example2 { p, q, beta, t0 }) => SweepGrid::Example2 {
            p: a.grid_p.clone().unwrap_or(p),
            q: a.grid_q.clone().unwrap_or(q),
            beta: a.grid_beta.clone().unwrap_or(beta),
            t0: a.grid_t0.clone().unwrap_or(t0),
        },
        _ => unreachable!("default grids have fixed kinds"),
    }
}

fn sweep_text(table: &SweepTable) -> String {
    let mut out = String::new();
    let Some(first) = table.rows.first() else {
        return out;
    };
    let mut header: Vec<String> = vec!["row".into()];
    header.extend(first.params.iter().map(|(n, _)| n.clone()));
    header.extend(["status".into(), "worst residual".into(), "worst check".into()]);
    let mut lines: Vec<Vec<String>> = Vec::new();
    for (i, r) in table.rows.iter().enumerate() {
        let mut line = vec![i.to_string()];
        line.extend(r.params.iter().map(|(_, v)| fmt_num(*v)));
        line.push(
            match r.status {
                RowStatus::Pass => "pass",
                RowStatus::Fail => "FAIL",
                RowStatus::Degenerate => "degenerate",
            }
            .into(),
        );
        line.push(format!("{:.3e}", r.worst_residual));
        line.push(r.worst_check.clone().unwrap_or_else(|| "-".into()));
        lines.push(line);
    }
    let cols = header.len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            std::iter::once(&header)
                .chain(&lines)
                .map(|l| l[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for line in std::iter::once(&header).chain(&lines) {
        let cells: Vec<String> = line
            .iter()
            .enumerate()
            .map(|(c, s)| {
                if c + 1 == cols {
                    s.clone()
                } else {
                    format!("{s:>w$}", w = widths[c])
                }
            })
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    for r in table.rows.iter().filter(|r| r.status == RowStatus::Fail) {
        writeln!(out, "failed at {:?}: {}", r.index, r.failed_checks.join("; ")).unwrap();
    }
    out
}

fn sweep(a: &SweepArgs) -> Result<Outcome, CliError> {
    let tol = check_tol(a.output.tol)?;
    let grid = grid_from(a);
    let table = scenarios::sweep(&grid, tol)?;
    let mut text = sweep_text(&table);
    writeln!(
        text,
        "scenario = {}, rows = {}, passed = {}, failed = {}, degenerate = {}, tolerance = {:e}",
        table.scenario,
        table.rows.len(),
        table.passed,
        table.failed,
        table.degenerate,
        tol
    )
    .unwrap();
    let json = Value::Array(
        table
            .rows
            .iter()
            .map(|r| {
                let params: serde_json::Map<String, Value> =
                    r.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                let scalars: serde_json::Map<String, Value> =
                    r.scalars.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                json!({
                    "scenario": table.scenario,
                    "index": r.index,
                    "params": params,
                    "scalars": scalars,
                    "status": r.status,
                    "worst_check": r.worst_check,
                    "worst_residual": r.worst_residual,
                    "failed_checks": r.failed_checks,
                })
            })
            .collect(),
    );
    Ok(Outcome {
        text,
        json,
        passed: table.all_passed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::Cli;
    use clap::Parser;

    fn run_args(args: &[&str]) -> Outcome {
        run(&Cli::try_parse_from(std::iter::once("accr").chain(args.iter().copied())).unwrap()).unwrap()
    }

    #[test]
    fn inspect_lists_the_table() {
        let (alg, s) = scenarios::build_example2(1.0, 2.0).unwrap();
        let out = inspect_model(&alg, &s, 1e-9).unwrap();
        assert!(out.passed);
        assert_eq!(out.json[0]["curvature"].as_array().unwrap().len(), 8);
        assert_eq!(out.json[0]["einstein"]["class"], "eta_einstein");
    }

    #[test]
    fn example1_inspect() {
        let out = run_args(&["inspect", "--scenario", "example1", "--t", "0", "--n", "2"]);
        assert!(out.passed, "{}", out.text);
        assert!(out.text.contains("tau+tau_tilde = 24"));
        assert!((out.json[0]["tau"].as_f64().unwrap() - (4.0 + 8.0 * 2f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn grid_overrides_keep_other_defaults() {
        let cli = Cli::try_parse_from(["accr", "sweep", "--scenario", "example2", "--grid-p", "1"]).unwrap();
        let Command::Sweep(a) = &cli.command else {
            unreachable!()
        };
        match grid_from(a) {
            SweepGrid::Example2 { p, q, beta, t0 } => {
                assert_eq!(p, vec![1.0]);
                assert_eq!(q.len(), 5);
                assert_eq!(beta, scenarios::default_betas());
                assert_eq!(t0.len(), 4);
            }
            g => panic!("{g:?}"),
        }
    }

    #[test]
    fn given_lambdas_are_used() {
        let out = run_args(&[
            "soliton",
            "--scenario",
            "example2",
            "--t0",
            "1",
            "--lambda",
            "2",
            "--lambda-tilde",
            "-2",
        ]);
        assert!(out.passed);
        let out = run_args(&[
            "soliton",
            "--scenario",
            "example2",
            "--t0",
            "1",
            "--lambda",
            "2.5",
            "--lambda-tilde",
            "-2",
        ]);
        assert!(!out.passed);
        assert_eq!(out.json[0]["lambda"], 2.5);
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(check_tol(0.0).is_err() && check_tol(f64::NAN).is_err() && check_tol(f64::INFINITY).is_err());
        assert_eq!(check_tol(1e-3).unwrap(), 1e-3);
    }

    #[test]
    fn conformal_solve_moves_lambda_with_psi() {
        let a = run_args(&["soliton", "--scenario", "example1", "--t", "0.4", "--beta", "0.25"]);
        let b = run_args(&[
            "soliton",
            "--scenario",
            "example1",
            "--t",
            "0.4",
            "--beta",
            "0.25",
            "--psi",
            "1",
            "--psi-tilde",
            "-1",
        ]);
        assert!(a.passed && b.passed);
        let (la, lb) = (
            a.json[0]["lambda"].as_f64().unwrap(),
            b.json[0]["lambda"].as_f64().unwrap(),
        );
        assert!((la - lb - 1.0).abs() < 1e-12);
    }
}
