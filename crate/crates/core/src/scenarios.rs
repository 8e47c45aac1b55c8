//! The two worked families: a conformal-potential curve of contact
//! homothetic deformations (example 1) and the five-dimensional Sasaki-like
//! Lie group with a vertical potential (example 2), plus grid sweeps.

use crate::error::{GeometryError, Result};
use crate::geometry::{reeb_gradient_residual, sasaki_identity_residuals, LieAlgebra, StructureGeometry};
use crate::report::TheoremReport;
use crate::scalar::Scalar;
use crate::soliton::{
    einstein_like_fit, lie_derivative_metric, rb_like_residual, solve_vertical_soliton, verify_conformal_theorem,
    verify_vertical_theorem, vertical_h, vertical_lie_closed_form, ConformalTheoremInput, EinsteinClass, PotentialSpec,
    SolitonSpec, VerticalScalar, VerticalTheoremInput,
};
use crate::structure::{standard_structure, AccRStructure};
use crate::tensor::{trace_g, Frame, Tensor};
use rayon::prelude::*;
use serde::Serialize;

/// Five-dimensional algebra with `[e_0, e_i]` the only nonzero brackets.
pub fn example2_algebra<T: Scalar>(p: T, q: T) -> Result<LieAlgebra<T>> {
    let one = T::one();
    let brackets = [
        (0, 1, 2, p),
        (0, 1, 3, one),
        (0, 1, 4, q),
        (0, 2, 1, -p),
        (0, 2, 3, -q),
        (0, 2, 4, one),
        (0, 3, 1, -one),
        (0, 3, 2, -q),
        (0, 3, 4, p),
        (0, 4, 1, q),
        (0, 4, 2, -one),
        (0, 4, 3, -p),
    ];
    LieAlgebra::from_brackets(Frame::new(5)?, &brackets)
}

/// Algebra and structure `xi = e_0`, `phi e_1 = e_3`, `phi e_2 = e_4`,
/// `g = diag(1, 1, 1, -1, -1)`.
pub fn build_example2<T: Scalar>(p: T, q: T) -> Result<(LieAlgebra<T>, AccRStructure<T>)> {
    Ok((example2_algebra(p, q)?, standard_structure(2)?))
}

/// The printed nonzero curvature components of example 2, closed under
/// `R_ijkl = -R_jikl = -R_ijlk = R_klij`.
pub fn example2_expected_riemann<T: Scalar>() -> Tensor<T> {
    let base: [([usize; 4], f64); 10] = [
        ([0, 1, 1, 0], 1.0),
        ([0, 2, 2, 0], 1.0),
        ([0, 3, 3, 0], -1.0),
        ([0, 4, 4, 0], -1.0),
        ([1, 2, 3, 4], 1.0),
        ([1, 4, 3, 2], 1.0),
        ([2, 3, 4, 1], 1.0),
        ([3, 4, 1, 2], 1.0),
        ([1, 3, 3, 1], 1.0),
        ([2, 4, 4, 2], 1.0),
    ];
    let mut r = Tensor::zeros(5, 4);
    for ([i, j, k, l], v) in base {
        let v = T::lit(v);
        for (idx, s) in [
            ([i, j, k, l], v),
            ([j, i, k, l], -v),
            ([i, j, l, k], -v),
            ([j, i, l, k], v),
            ([k, l, i, j], v),
            ([l, k, i, j], -v),
            ([k, l, j, i], -v),
            ([l, k, j, i], v),
        ] {
            r.set(&idx, s);
        }
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Example2Params<T> {
    pub p: T,
    pub q: T,
    pub beta: T,
    pub t0: T,
}

/// End-to-end check of example 2 at one grid point with the vertical
/// potential `k = -2t`, `dk(xi) = -2`, evaluated at `t = t0`.
pub fn run_example2_report<T: Scalar>(params: &Example2Params<T>) -> Result<TheoremReport> {
    let Example2Params { p, q, beta, t0 } = *params;
    let (alg, s) = build_example2(p, q)?;
    let geo = StructureGeometry::analyze(&alg, &s)?;
    let n = s.n();
    let two_n = T::count(2 * n);
    let f = |x: T| x.as_f64();
    let lit = T::lit;
    let ee = s.eta_eta();

    let mut report = TheoremReport::new("example 2", T::check_tol().as_f64());
    report.check(
        "curvature components match the printed table",
        f((&geo.basic.riemann - &example2_expected_riemann()).max_abs()),
    );
    report.check(
        "rho = 4 eta (x) eta",
        f((&geo.basic.ricci - &ee.scale(lit(4.0))).max_abs()),
    );
    report.check("tau = 4", f(geo.tau() - lit(4.0)));
    report.check("tau* = 0", f(geo.tau_star()));
    report.check("tau~ = 4", f(geo.tau_tilde() - lit(4.0)));
    report.check("tau~ = -tau* + 2n", f(geo.tau_tilde() + geo.tau_star() - two_n));
    report.check("Sasaki-like residual", f(geo.sasaki.residual));
    for (name, r) in sasaki_identity_residuals(&geo.basic, &s) {
        report.check(name, f(r));
    }
    report.check(
        "nabla~_x xi = -phi x",
        f(reeb_gradient_residual(&geo.associated.conn, &s)),
    );

    let fit = einstein_like_fit(&geo.basic.ricci, &s)?;
    report.check(
        "einstein-like fit (0, 0, 4)",
        f(fit
            .a
            .abs()
            .max(fit.b.abs())
            .max((fit.c - lit(4.0)).abs())
            .max(fit.residual)),
    );
    report.check(
        "eta-Einstein",
        if fit.class == EinsteinClass::EtaEinstein {
            0.0
        } else {
            1.0
        },
    );

    let k = VerticalScalar::new(lit(-2.0) * t0, lit(-2.0));
    let sol = solve_vertical_soliton(beta, &k, geo.tau(), geo.tau_tilde(), n, &geo.sasaki)?;
    report.check(
        "lambda = 2 (t - 2 beta)",
        f(sol.lambda - lit(2.0) * (t0 - lit(2.0) * beta)),
    );
    report.check(
        "lambda~ = -2 (t + 2 beta)",
        f(sol.lambda_tilde + lit(2.0) * (t0 + lit(2.0) * beta)),
    );

    report.check(
        "h = -4 eta (x) eta",
        f((&vertical_h(&k, &s) + &ee.scale(lit(4.0))).max_abs()),
    );
    let (lg_closed, lgt_closed) = vertical_lie_closed_form(&k, &s, &geo.sasaki)?;
    let pot = PotentialSpec::Vertical(k);
    let lg = lie_derivative_metric(s.metric(), &geo.basic.conn, &pot, &s)?;
    let lgt = lie_derivative_metric(s.assoc(), &geo.associated.conn, &pot, &s)?;
    report.check("L g closed form = connection-based", f((&lg_closed - &lg).max_abs()));
    report.check("L g~ closed form = connection-based", f((&lgt_closed - &lgt).max_abs()));
    let four_t = lit(4.0) * t0;
    let lg_expected = &s.g_tilde().scale(four_t) - &ee.scale(lit(4.0) * (t0 + T::one()));
    let lgt_expected = &ee.scale(lit(4.0) * (t0 - T::one())) - &s.g().scale(four_t);
    report.check(
        "L g = 4t g~ - 4(t+1) eta (x) eta",
        f((&lg_closed - &lg_expected).max_abs()),
    );
    report.check(
        "L g~ = -4t g + 4(t-1) eta (x) eta",
        f((&lgt_closed - &lgt_expected).max_abs()),
    );

    report.merge(verify_vertical_theorem(&VerticalTheoremInput {
        structure: &s,
        ricci: &geo.basic.ricci,
        tau: geo.tau(),
        tau_tilde: geo.tau_tilde(),
        tau_star: geo.tau_star(),
        beta,
        k,
        lambda: sol.lambda,
        lambda_tilde: sol.lambda_tilde,
    })?);

    let spec = SolitonSpec::new(beta, sol.lambda, sol.lambda_tilde);
    let res = rb_like_residual(&geo.basic.ricci, &lg, &lgt, &s, &spec, geo.tau(), geo.tau_tilde());
    report.check("RB-like soliton residual", f(res.max_abs()));

    report.value("tau", f(geo.tau()));
    report.value("tau_star", f(geo.tau_star()));
    report.value("tau_tilde", f(geo.tau_tilde()));
    report.value("lambda", f(sol.lambda));
    report.value("lambda_tilde", f(sol.lambda_tilde));
    report.value("sasaki_residual", f(geo.sasaki.residual));
    Ok(report)
}

/// One point of the example 1 curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Example1Point<T> {
    pub t: T,
    pub n: usize,
    pub beta: T,
    pub p: T,
    pub q: T,
    /// Scalar curvatures from the closed form in `t`.
    pub tau: T,
    pub tau_tilde: T,
    /// Scalar curvatures through `(p, q)`.
    pub tau_via_pq: T,
    pub tau_tilde_via_pq: T,
    pub psi_plus_lambda: T,
    pub psi_tilde_plus_lambda_tilde: T,
    /// `p^2 + q^2 - p + q`.
    pub constraint: T,
    pub report: TheoremReport,
}

/// `sqrt(2) + cos t - sin t`, which vanishes at `t = (8l+3) pi / 4`.
/// Evaluated as `2 sqrt2 cos^2((t + pi/4) / 2)` to keep relative accuracy
/// near the zeros.
pub fn example1_denominator<T: Scalar>(t: T) -> T {
    let c = ((t + T::lit(std::f64::consts::FRAC_PI_4)) * T::lit(0.5)).cos();
    T::lit(2.0 * std::f64::consts::SQRT_2) * c * c
}

/// `(p, q) = ((1 + sqrt2 cos t) / 2, -(1 - sqrt2 sin t) / 2)` in product form.
pub fn example1_pq<T: Scalar>(t: T) -> (T, T) {
    let quarter = T::lit(std::f64::consts::FRAC_PI_4);
    let half = T::lit(0.5);
    let sqrt2 = T::lit(std::f64::consts::SQRT_2);
    let a = ((t + quarter) * half).cos();
    let p = sqrt2 * a * ((t - quarter) * half).cos();
    let q = -sqrt2 * a * ((quarter - t) * half).sin();
    (p, q)
}

/// Ricci tensor of the contact homothetic image of a Sasaki-like Einstein
/// manifold: `rho = 2n/(p^2+q^2) (p g - q g~ + (p^2+q^2-p+q) eta (x) eta)`.
pub fn example1_ricci<T: Scalar>(s: &AccRStructure<T>, p: T, q: T) -> Tensor<T> {
    let pp = p * p + q * q;
    let scale = T::count(2 * s.n()) / pp;
    let inner = &(&s.g().scale(p) - &s.g_tilde().scale(q)) + &s.eta_eta().scale(pp - p + q);
    inner.scale(scale)
}

/// Evaluates the curve `p = (1 + sqrt2 cos t)/2`, `q = -(1 - sqrt2 sin t)/2`
/// and runs the conformal-potential checks on it.
///
/// Only `psi + lambda` and `psi~ + lambda~` are determined; the split uses
/// `psi = psi~ = 0`.
pub fn example1_curve<T: Scalar>(t: T, n: usize, beta: T) -> Result<Example1Point<T>> {
    let denom = example1_denominator(t);
    if !(denom.abs() > T::check_tol()) {
        return Err(GeometryError::DegenerateParameter {
            t: t.as_f64(),
            denominator: denom.as_f64(),
        });
    }
    let one = T::one();
    let two_n = T::count(2 * n);
    let np1 = T::count(n + 1);
    let nn = T::count(n);

    let (p, q) = example1_pq(t);
    let pp = p * p + q * q;
    let constraint = pp - p + q;

    let tau_via_pq = two_n * (one + two_n * p / pp);
    let tau_tilde_via_pq = two_n * (one - two_n * q / pp);
    // ((n+1) sqrt2 + (2n+1) cos t - sin t) / D = (n+1) + n (cos t + sin t) / D
    let sum = T::lit(std::f64::consts::SQRT_2) * (t + T::lit(std::f64::consts::FRAC_PI_4)).sin();
    let ratio = np1 + nn * sum / denom;
    let ratio_tilde = np1 - nn * sum / denom;
    let tau = two_n * ratio;
    let tau_tilde = two_n * ratio_tilde;

    // equals 1 on both sides at beta = -1/(2n)
    let d = one + two_n * beta;
    let psi_plus_lambda = one - d * ratio;
    let psi_tilde_plus_lambda_tilde = one - d * ratio_tilde;

    let s = standard_structure::<T>(n)?;
    let rho = example1_ricci(&s, p, q);
    let f = |x: T| x.as_f64();

    let mut report = TheoremReport::new("example 1", T::check_tol().as_f64());
    report.check("p^2 + q^2 - p + q = 0", f(constraint));
    report.check("tau: (p, q) form = t form", f(tau - tau_via_pq));
    report.check("tau~: (p, q) form = t form", f(tau_tilde - tau_tilde_via_pq));
    report.check("tau = tr_g rho", f(tau - trace_g(&rho, s.metric())?));
    report.check("rho(xi, xi) = 2n", f(rho.form(s.xi(), s.xi()) - two_n));
    report.merge(verify_conformal_theorem(&ConformalTheoremInput {
        structure: &s,
        ricci: &rho,
        beta,
        psi: T::zero(),
        psi_tilde: T::zero(),
        lambda: psi_plus_lambda,
        lambda_tilde: psi_tilde_plus_lambda_tilde,
        tau,
        tau_tilde,
    })?);
    report.value("p", f(p));
    report.value("q", f(q));
    report.value("tau", f(tau));
    report.value("tau_tilde", f(tau_tilde));
    report.value("tau+tau_tilde", f(tau + tau_tilde));
    report.value("psi+lambda", f(psi_plus_lambda));
    report.value("psi_tilde+lambda_tilde", f(psi_tilde_plus_lambda_tilde));

    Ok(Example1Point {
        t,
        n,
        beta,
        p,
        q,
        tau,
        tau_tilde,
        tau_via_pq,
        tau_tilde_via_pq,
        psi_plus_lambda,
        psi_tilde_plus_lambda_tilde,
        constraint,
        report,
    })
}

/// Parameter grid for [`sweep`]; rows run over the cartesian product in
/// the field order shown.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepGrid {
    Example1 {
        t: Vec<f64>,
        n: Vec<usize>,
        beta: Vec<f64>,
    },
    Example2 {
        p: Vec<f64>,
        q: Vec<f64>,
        beta: Vec<f64>,
        t0: Vec<f64>,
    },
}

/// Includes `-1/(2n)` and `-1/(2n+1)` for `n = 2`.
pub fn default_betas() -> Vec<f64> {
    vec![-1.0, -0.25, -0.2, 0.0, 0.25, 0.5, 1.0]
}

impl SweepGrid {
    pub fn default_example2() -> Self {
        Self::Example2 {
            p: (-2..=2).map(f64::from).collect(),
            q: (-2..=2).map(f64::from).collect(),
            beta: default_betas(),
            t0: vec![-1.0, 0.0, 1.0, 2.0],
        }
    }

    /// 37 equally spaced `t` in `[0, 2 pi)`, none at an excluded value.
    pub fn default_example1() -> Self {
        Self::Example1 {
            t: example1_t_grid(37),
            n: (1..=5).collect(),
            beta: default_betas(),
        }
    }

    pub fn scenario(&self) -> &'static str {
        match self {
            Self::Example1 { .. } => "example1",
            Self::Example2 { .. } => "example2",
        }
    }

    fn shape(&self) -> Vec<usize> {
        match self {
            Self::Example1 { t, n, beta } => vec![t.len(), n.len(), beta.len()],
            Self::Example2 { p, q, beta, t0 } => vec![p.len(), q.len(), beta.len(), t0.len()],
        }
    }
}

pub fn example1_t_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| 2.0 * std::f64::consts::PI * i as f64 / points as f64)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub index: Vec<usize>,
    pub params: Vec<(String, f64)>,
    pub scalars: Vec<(String, f64)>,
    pub status: RowStatus,
    pub worst_check: Option<String>,
    pub worst_residual: f64,
    pub failed_checks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub scenario: String,
    pub tolerance: f64,
    pub rows: Vec<SweepRow>,
    pub passed: usize,
    pub failed: usize,
    pub degenerate: usize,
}

impl SweepTable {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn unravel(mut flat: usize, shape: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for pos in (0..shape.len()).rev() {
        idx[pos] = flat % shape[pos];
        flat /= shape[pos];
    }
    idx
}

fn row_from_report(
    index: Vec<usize>,
    params: Vec<(String, f64)>,
    report: TheoremReport,
    scalar_names: &[&str],
) -> SweepRow {
    let worst = report.worst().cloned();
    SweepRow {
        index,
        params,
        scalars: scalar_names
            .iter()
            .filter_map(|&n| report.get_value(n).map(|v| (n.to_string(), v)))
            .collect(),
        status: if report.passed() {
            RowStatus::Pass
        } else {
            RowStatus::Fail
        },
        worst_check: worst.as_ref().map(|c| c.name.clone()),
        worst_residual: worst.map_or(0.0, |c| c.residual),
        failed_checks: report.failures().map(|c| c.name.clone()).collect(),
    }
}

/// Runs the scenario report at every grid point. Rows come back in
/// lexicographic grid-index order whatever the evaluation order.
pub fn sweep(grid: &SweepGrid, tol: f64) -> Result<SweepTable> {
    let shape = grid.shape();
    let total: usize = shape.iter().product();
    if total == 0 {
        return Err(GeometryError::EmptyGrid);
    }
    let rows = (0..total)
        .into_par_iter()
        .map(|flat| {
            let index = unravel(flat, &shape);
            match grid {
                SweepGrid::Example1 { t, n, beta } => {
                    let (tv, nv, bv) = (t[index[0]], n[index[1]], beta[index[2]]);
                    let params = vec![
                        ("t".to_string(), tv),
                        ("n".to_string(), nv as f64),
                        ("beta".to_string(), bv),
                    ];
                    match example1_curve(tv, nv, bv) {
                        Ok(pt) => Ok(row_from_report(
                            index,
                            params,
                            pt.report.with_tolerance(tol),
                            &[
                                "p",
                                "q",
                                "tau",
                                "tau_tilde",
                                "tau+tau_tilde",
                                "psi+lambda",
                                "psi_tilde+lambda_tilde",
                            ],
                        )),
                        Err(GeometryError::DegenerateParameter { .. }) => Ok(SweepRow {
                            index,
                            params,
                            scalars: Vec::new(),
                            status: RowStatus::Degenerate,
                            worst_check: None,
                            worst_residual: 0.0,
                            failed_checks: Vec::new(),
                        }),
                        Err(e) => Err(e),
                    }
                }
                SweepGrid::Example2 { p, q, beta, t0 } => {
                    let params = Example2Params {
                        p: p[index[0]],
                        q: q[index[1]],
                        beta: beta[index[2]],
                        t0: t0[index[3]],
                    };
                    let report = run_example2_report(&params)?.with_tolerance(tol);
                    Ok(row_from_report(
                        index,
                        vec![
                            ("p".to_string(), params.p),
                            ("q".to_string(), params.q),
                            ("beta".to_string(), params.beta),
                            ("t0".to_string(), params.t0),
                        ],
                        report,
                        &["tau", "tau_tilde", "lambda", "lambda_tilde"],
                    ))
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let count = |s: RowStatus| rows.iter().filter(|r| r.status == s).count();
    Ok(SweepTable {
        scenario: grid.scenario().to_string(),
        tolerance: tol,
        passed: count(RowStatus::Pass),
        failed: count(RowStatus::Fail),
        degenerate: count(RowStatus::Degenerate),
        rows,
    })
}
