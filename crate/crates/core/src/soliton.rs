//! Lie derivatives along soliton potentials, residuals of the two-metric
//! Ricci-Bourguignon-like soliton equation, Einstein-like fitting and the
//! per-equation checks for conformal and vertical potentials.
//!
//! Soliton functions are evaluated pointwise: every routine here works with
//! the values `lambda`, `lambda~`, `k`, `dk(xi)`, `psi`, `psi~` at a single
//! point.

use crate::error::{GeometryError, Result};
use crate::geometry::{Connection, SasakiLike};
use crate::report::TheoremReport;
use crate::scalar::Scalar;
use crate::structure::AccRStructure;
use crate::tensor::{phi_trace, trace_g, MetricPair, Tensor};
use serde::Serialize;

/// A function `k` with `dk = dk(xi) eta`, sampled at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerticalScalar<T> {
    pub value: T,
    pub xi_derivative: T,
}

impl<T: Scalar> VerticalScalar<T> {
    pub fn new(value: T, xi_derivative: T) -> Self {
        Self { value, xi_derivative }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec<T> {
    /// `theta = k xi`.
    Vertical(VerticalScalar<T>),
    /// `L_theta g = 2 psi g` and `L_theta g~ = 2 psi~ g~`, assumed rather than constructed.
    Conformal { psi: T, psi_tilde: T },
    /// A left-invariant field with constant components.
    LeftInvariant(Tensor<T>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonSpec<T> {
    pub beta: T,
    pub lambda: T,
    pub lambda_tilde: T,
    pub mu: Option<T>,
}

impl<T: Scalar> SolitonSpec<T> {
    pub fn new(beta: T, lambda: T, lambda_tilde: T) -> Self {
        Self {
            beta,
            lambda,
            lambda_tilde,
            mu: None,
        }
    }

    pub fn with_mu(mut self, mu: T) -> Self {
        self.mu = Some(mu);
        self
    }
}

/// Whether `1 + 2n beta` vanishes (to 1e-9).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaBranch {
    Regular,
    Degenerate,
}

pub fn beta_branch<T: Scalar>(beta: T, n: usize) -> BetaBranch {
    if (T::one() + T::count(2 * n) * beta).abs() < T::check_tol() {
        BetaBranch::Degenerate
    } else {
        BetaBranch::Regular
    }
}

/// `nabla_{e_i} theta` for every basis vector.
pub fn potential_gradient<T: Scalar>(
    pot: &PotentialSpec<T>,
    conn: &Connection<T>,
    s: &AccRStructure<T>,
) -> Result<Vec<Tensor<T>>> {
    let n = s.dim();
    match pot {
        PotentialSpec::Vertical(k) => Ok((0..n)
            .map(|i| {
                // nabla_x (k xi) = dk(x) xi + k nabla_x xi, dk(e_i) = dk(xi) eta_i
                let dk = k.xi_derivative * s.eta().at1(i);
                &s.xi().scale(dk) + &conn.nabla(i, s.xi()).scale(k.value)
            })
            .collect()),
        PotentialSpec::LeftInvariant(v) => {
            v.require(n, 1)?;
            Ok((0..n).map(|i| conn.nabla(i, v)).collect())
        }
        PotentialSpec::Conformal { .. } => Err(GeometryError::UnsupportedPotential(
            "covariant differentiation (conformal potentials carry no vector field)",
        )),
    }
}

/// `(L_theta g)(x, y) = g(nabla_x theta, y) + g(x, nabla_y theta)` where
/// `conn` is the Levi-Civita connection of `metric`.
pub fn lie_derivative_metric<T: Scalar>(
    metric: &MetricPair<T>,
    conn: &Connection<T>,
    pot: &PotentialSpec<T>,
    s: &AccRStructure<T>,
) -> Result<Tensor<T>> {
    let grad = potential_gradient(pot, conn, s)?;
    let n = s.dim();
    let low: Vec<Tensor<T>> = grad.iter().map(|v| metric.lower(v)).collect();
    let out = Tensor::from_fn(n, 2, |ix| {
        let (i, j) = (ix[0], ix[1]);
        low[i].at1(j) + low[j].at1(i)
    });
    Ok(out)
}

/// `h = dk (x) eta + eta (x) dk = 2 dk(xi) eta (x) eta`.
pub fn vertical_h<T: Scalar>(k: &VerticalScalar<T>, s: &AccRStructure<T>) -> Tensor<T> {
    s.eta_eta().scale(T::lit(2.0) * k.xi_derivative)
}

/// Closed forms on a Sasaki-like structure:
/// `L_theta g = h - 2k (g~ - eta (x) eta)` and `L_theta g~ = h + 2k (g - eta (x) eta)`.
pub fn vertical_lie_closed_form<T: Scalar>(
    k: &VerticalScalar<T>,
    s: &AccRStructure<T>,
    class: &SasakiLike<T>,
) -> Result<(Tensor<T>, Tensor<T>)> {
    if !class.is_sasaki_like {
        return Err(GeometryError::NotSasakiLike {
            residual: class.residual.as_f64(),
        });
    }
    let h = vertical_h(k, s);
    let ee = s.eta_eta();
    let two_k = T::lit(2.0) * k.value;
    let lg = &h - &(s.g_tilde() - &ee).scale(two_k);
    let lgt = &h + &(s.g() - &ee).scale(two_k);
    Ok((lg, lgt))
}

/// Left side of `rho + L_theta g / 2 + L_theta g~ / 2 + (lambda + beta tau) g
/// + (lambda~ + beta tau~) g~ = 0`.
#[allow(clippy::too_many_arguments)]
pub fn rb_like_residual<T: Scalar>(
    ricci: &Tensor<T>,
    lg: &Tensor<T>,
    lg_tilde: &Tensor<T>,
    s: &AccRStructure<T>,
    spec: &SolitonSpec<T>,
    tau: T,
    tau_tilde: T,
) -> Tensor<T> {
    let half = T::lit(0.5);
    let a = spec.lambda + spec.beta * tau;
    let b = spec.lambda_tilde + spec.beta * tau_tilde;
    let lie = (lg + lg_tilde).scale(half);
    &(&(ricci + &lie) + &s.g().scale(a)) + &s.g_tilde().scale(b)
}

/// Left side of `rho + L_theta g / 2 + (lambda + beta tau) g + mu eta (x) eta = 0`.
pub fn eta_rb_residual<T: Scalar>(
    ricci: &Tensor<T>,
    lg: &Tensor<T>,
    s: &AccRStructure<T>,
    spec: &SolitonSpec<T>,
    tau: T,
) -> Result<Tensor<T>> {
    let mu = spec.mu.ok_or(GeometryError::MissingParameter("mu"))?;
    let base = &(ricci + &lg.scale(T::lit(0.5))) + &s.g().scale(spec.lambda + spec.beta * tau);
    if mu == T::zero() {
        return Ok(base);
    }
    Ok(&base + &s.eta_eta().scale(mu))
}

/// `Div theta = g^{ij} g(nabla_{e_i} theta, e_j)`, checked against
/// `tr_g(L_theta g) / 2`.
pub fn divergence<T: Scalar>(
    pot: &PotentialSpec<T>,
    conn: &Connection<T>,
    m: &MetricPair<T>,
    s: &AccRStructure<T>,
) -> Result<T> {
    let grad = potential_gradient(pot, conn, s)?;
    let n = s.dim();
    let gi = m.inv();
    let mut div = T::zero();
    for (i, gr) in grad.iter().enumerate() {
        let low = m.lower(gr);
        for j in 0..n {
            div = div + gi.at2(i, j) * low.at1(j);
        }
    }
    let lie = lie_derivative_metric(m, conn, pot, s)?;
    let half_trace = trace_g(&lie, m)? * T::lit(0.5);
    let r = (div - half_trace).abs();
    if !(r < T::check_tol()) {
        return Err(GeometryError::IdentityFailed {
            identity: "Div theta = tr_g(L_theta g) / 2",
            residual: r.as_f64(),
        });
    }
    Ok(div)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EinsteinClass {
    Einstein,
    EtaEinstein,
    EinsteinLike,
    NotEinsteinLike,
}

impl EinsteinClass {
    pub fn label(self) -> &'static str {
        match self {
            Self::Einstein => "einstein",
            Self::EtaEinstein => "eta_einstein",
            Self::EinsteinLike => "einstein_like",
            Self::NotEinsteinLike => "not_einstein_like",
        }
    }
}

/// Least-squares decomposition `rho ~ a g + b g~ + c eta (x) eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EinsteinFit<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub residual: T,
    pub class: EinsteinClass,
    /// |tau - ((2n+1) a + b + c)|, meaningful when the fit is exact.
    pub tau_residual: T,
    /// |tau* + 2n b|.
    pub tau_star_residual: T,
}

pub fn einstein_like_fit<T: Scalar>(ricci: &Tensor<T>, s: &AccRStructure<T>) -> Result<EinsteinFit<T>> {
    let basis = [s.g().clone(), s.g_tilde().clone(), s.eta_eta()];
    let mut gram = [T::zero(); 9];
    let mut rhs = [T::zero(); 3];
    for i in 0..3 {
        for j in 0..3 {
            gram[i * 3 + j] = basis[i].dot(&basis[j]);
        }
        rhs[i] = basis[i].dot(ricci);
    }
    let coef = crate::linalg::solve(&gram, &rhs, T::linalg_tol()).ok_or(GeometryError::SingularFit)?;
    let (a, b, c) = (coef[0], coef[1], coef[2]);
    let model = &(&basis[0].scale(a) + &basis[1].scale(b)) + &basis[2].scale(c);
    let residual = (ricci - &model).max_abs();

    let n = s.n();
    let tau = trace_g(ricci, s.metric())?;
    let tau_star = phi_trace(ricci, s.metric(), s.phi())?;
    let tau_residual = (tau - (T::count(2 * n + 1) * a + b + c)).abs();
    let tau_star_residual = (tau_star + T::count(2 * n) * b).abs();

    let tol = T::check_tol();
    let class = if !(residual < tol) {
        EinsteinClass::NotEinsteinLike
    } else if b.abs() < tol && c.abs() < tol {
        EinsteinClass::Einstein
    } else if b.abs() < tol {
        EinsteinClass::EtaEinstein
    } else {
        EinsteinClass::EinsteinLike
    };
    if class != EinsteinClass::NotEinsteinLike {
        if !(tau_residual < tol) {
            return Err(GeometryError::IdentityFailed {
                identity: "tau = (2n+1) a + b + c",
                residual: tau_residual.as_f64(),
            });
        }
        if !(tau_star_residual < tol) {
            return Err(GeometryError::IdentityFailed {
                identity: "tau* = -2n b",
                residual: tau_star_residual.as_f64(),
            });
        }
    }
    Ok(EinsteinFit {
        a,
        b,
        c,
        residual,
        class,
        tau_residual,
        tau_star_residual,
    })
}

/// Soliton functions solved from the scalar curvatures for a vertical potential.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalSolution<T> {
    pub lambda: T,
    pub lambda_tilde: T,
    pub branch: BetaBranch,
    pub report: TheoremReport,
}

/// Inverts `tau (1 + 2n beta) = -2n (lambda + k - 1)` and its `g~`
/// counterpart. The solved form has no small denominator, so it is used on
/// both branches; at `beta = -1/(2n)` it reduces to `lambda = 1 - k`,
/// `lambda~ = 1 + k`, and the scalar curvatures are not determined.
pub fn solve_vertical_soliton<T: Scalar>(
    beta: T,
    k: &VerticalScalar<T>,
    tau: T,
    tau_tilde: T,
    n: usize,
    class: &SasakiLike<T>,
) -> Result<VerticalSolution<T>> {
    if !class.is_sasaki_like {
        return Err(GeometryError::NotSasakiLike {
            residual: class.residual.as_f64(),
        });
    }
    let branch = beta_branch(beta, n);
    let two_n = T::count(2 * n);
    let d = T::one() + two_n * beta;
    let lambda = T::one() - k.value - tau * d / two_n;
    let lambda_tilde = T::one() + k.value - tau_tilde * d / two_n;
    let mut report = TheoremReport::new("vertical potential (scalar identities)", T::check_tol().as_f64());
    vertical_scalar_checks(&mut report, beta, k, lambda, lambda_tilde, tau, tau_tilde, n);
    report.value("lambda", lambda.as_f64());
    report.value("lambda_tilde", lambda_tilde.as_f64());
    Ok(VerticalSolution {
        lambda,
        lambda_tilde,
        branch,
        report,
    })
}

#[allow(clippy::too_many_arguments)]
fn vertical_scalar_checks<T: Scalar>(
    report: &mut TheoremReport,
    beta: T,
    k: &VerticalScalar<T>,
    lambda: T,
    lambda_tilde: T,
    tau: T,
    tau_tilde: T,
    n: usize,
) {
    let one = T::one();
    let two = T::lit(2.0);
    let two_n = T::count(2 * n);
    let np1 = T::count(n + 1);
    let sum_l = lambda + lambda_tilde;
    let sum_t = tau + tau_tilde;
    let dk = k.xi_derivative;
    let f = |x: T| x.as_f64();

    report.check(
        "dk(xi) = -(lambda + lambda~ + beta (tau + tau~) + 2n) / 2",
        f(dk + (sum_l + beta * sum_t + two_n) / two),
    );
    report.check("tau + tau~ = 4n (dk(xi) + n + 1)", f(sum_t - two * two_n * (dk + np1)));
    match beta_branch(beta, n) {
        BetaBranch::Regular => {
            let d = one + two_n * beta;
            report.check(
                "tau = -2n (lambda + k - 1) / (1 + 2n beta)",
                f(tau + two_n * (lambda + k.value - one) / d),
            );
            report.check(
                "tau~ = -2n (lambda~ - k - 1) / (1 + 2n beta)",
                f(tau_tilde + two_n * (lambda_tilde - k.value - one) / d),
            );
            report.check(
                "dk(xi) = -(lambda + lambda~ - 2) / (2 (1 + 2n beta)) - n - 1",
                f(dk + (sum_l - two) / (two * d) + np1),
            );
            report.check(
                "tau + tau~ = -2n (lambda + lambda~ - 2) / (1 + 2n beta)",
                f(sum_t + two_n * (sum_l - two) / d),
            );
        }
        BetaBranch::Degenerate => {
            let d = one + two_n * beta;
            report.check(
                "(1 + 2n beta) tau = -2n (lambda + k - 1)",
                f(d * tau + two_n * (lambda + k.value - one)),
            );
            report.check(
                "(1 + 2n beta) tau~ = -2n (lambda~ - k - 1)",
                f(d * tau_tilde + two_n * (lambda_tilde - k.value - one)),
            );
            report.note("beta = -1/(2n): tau and tau~ are not separately determined");
        }
    }
}

/// Inputs for the vertical-potential checks at one point.
#[derive(Debug, Clone)]
pub struct VerticalTheoremInput<'a, T> {
    pub structure: &'a AccRStructure<T>,
    pub ricci: &'a Tensor<T>,
    pub tau: T,
    pub tau_tilde: T,
    pub tau_star: T,
    pub beta: T,
    pub k: VerticalScalar<T>,
    pub lambda: T,
    pub lambda_tilde: T,
}

/// Every identity satisfied by a Sasaki-like vertical-potential soliton:
/// scalar relations plus the Ricci forms and Einstein-like coefficients.
pub fn verify_vertical_theorem<T: Scalar>(input: &VerticalTheoremInput<'_, T>) -> Result<TheoremReport> {
    let s = input.structure;
    let n = s.n();
    let (beta, k) = (input.beta, input.k);
    let (tau, tau_tilde) = (input.tau, input.tau_tilde);
    let (lambda, lambda_tilde) = (input.lambda, input.lambda_tilde);
    let one = T::one();
    let two_n = T::count(2 * n);
    let np1 = T::count(n + 1);
    let f = |x: T| x.as_f64();

    let mut report = TheoremReport::new("vertical potential", T::check_tol().as_f64());
    vertical_scalar_checks(&mut report, beta, &k, lambda, lambda_tilde, tau, tau_tilde, n);

    let g = s.g();
    let gt = s.g_tilde();
    let ee = s.eta_eta();
    let h = vertical_h(&k, s);
    let coef_g = lambda + beta * tau + k.value;
    let coef_gt = lambda_tilde + beta * tau_tilde - k.value;
    let eta_coef = lambda + lambda_tilde + beta * (tau + tau_tilde) + two_n;
    let soliton_part = &g.scale(coef_g) + &gt.scale(coef_gt);

    report.check(
        "rho = -(lambda + beta tau + k) g - (lambda~ + beta tau~ - k) g~ - h",
        f((&(input.ricci + &soliton_part) + &h).max_abs()),
    );
    report.check(
        "h = -(lambda + lambda~ + beta (tau + tau~) + 2n) eta (x) eta",
        f((&h + &ee.scale(eta_coef)).max_abs()),
    );
    report.check(
        "rho = -(..) g - (..) g~ + (lambda + lambda~ + beta (tau + tau~) + 2n) eta (x) eta",
        f((&(input.ricci + &soliton_part) - &ee.scale(eta_coef)).max_abs()),
    );

    let a = tau / two_n - one;
    let b = tau_tilde / two_n - one;
    let c = -((tau + tau_tilde) / two_n - T::lit(2.0) * np1);
    let model = &(&g.scale(a) + &gt.scale(b)) + &ee.scale(c);
    report.check(
        "rho = (tau/2n - 1) g + (tau~/2n - 1) g~ - ((tau + tau~)/2n - 2(n+1)) eta (x) eta",
        f((input.ricci - &model).max_abs()),
    );
    report.check(
        "tau* = 2n (lambda~ + beta tau~ - k)",
        f(input.tau_star - two_n * (lambda_tilde + beta * tau_tilde - k.value)),
    );
    report.check("tau~ = -tau* + 2n", f(tau_tilde + input.tau_star - two_n));

    let fit = einstein_like_fit(input.ricci, s)?;
    report.check("einstein-like fit residual", f(fit.residual));
    report.check(
        "einstein-like coefficients (a, b, c)",
        f((fit.a - a).abs().max((fit.b - b).abs()).max((fit.c - c).abs())),
    );
    report.value("a", f(fit.a));
    report.value("b", f(fit.b));
    report.value("c", f(fit.c));
    Ok(report)
}

/// Inputs for the conformal-potential checks at one point.
#[derive(Debug, Clone)]
pub struct ConformalTheoremInput<'a, T> {
    pub structure: &'a AccRStructure<T>,
    pub ricci: &'a Tensor<T>,
    pub beta: T,
    pub psi: T,
    pub psi_tilde: T,
    pub lambda: T,
    pub lambda_tilde: T,
    pub tau: T,
    pub tau_tilde: T,
}

/// `lambda`, `lambda~` from `tau (1 + 2n beta) = -2n (psi + lambda - 1)` and
/// its `g~` counterpart.
pub fn solve_conformal_soliton<T: Scalar>(beta: T, psi: T, psi_tilde: T, tau: T, tau_tilde: T, n: usize) -> (T, T) {
    let two_n = T::count(2 * n);
    let d = T::one() + two_n * beta;
    (
        T::one() - psi - tau * d / two_n,
        T::one() - psi_tilde - tau_tilde * d / two_n,
    )
}

/// Every identity satisfied by a Sasaki-like conformal-potential soliton.
///
/// `tau*` is taken from the supplied Ricci tensor. Checks that only apply
/// on one side of `beta = -1/(2n)`, `beta = -1/(2n+1)` or `beta = 0` are
/// skipped elsewhere and the skip is noted.
pub fn verify_conformal_theorem<T: Scalar>(input: &ConformalTheoremInput<'_, T>) -> Result<TheoremReport> {
    let s = input.structure;
    let n = s.n();
    let beta = input.beta;
    let (tau, tau_tilde) = (input.tau, input.tau_tilde);
    let pl = input.psi + input.lambda;
    let plt = input.psi_tilde + input.lambda_tilde;
    let one = T::one();
    let two_n = T::count(2 * n);
    let np1 = T::count(n + 1);
    let m1 = T::count(2 * n + 1);
    let f = |x: T| x.as_f64();
    let tol = T::check_tol();

    let tau_star = phi_trace(input.ricci, s.metric(), s.phi())?;
    let g = s.g();
    let gt = s.g_tilde();

    let mut report = TheoremReport::new("conformal potential", tol.as_f64());
    report.value("tau_star", f(tau_star));

    let model = &g.scale(tau / two_n - one) + &gt.scale(tau_tilde / two_n - one);
    report.check(
        "rho = (tau/2n - 1) g + (tau~/2n - 1) g~",
        f((input.ricci - &model).max_abs()),
    );
    let soliton = &g.scale(pl + beta * tau) + &gt.scale(plt + beta * tau_tilde);
    report.check(
        "rho = -(psi + lambda + beta tau) g - (psi~ + lambda~ + beta tau~) g~",
        f((input.ricci + &soliton).max_abs()),
    );
    report.check(
        "tau + tau~ = 4n (n + 1)",
        f(tau + tau_tilde - T::lit(2.0) * two_n * np1),
    );
    report.check(
        "(1 + (2n+1) beta) tau + beta tau~ + (2n+1)(psi + lambda) + psi~ + lambda~ = 0",
        f((one + m1 * beta) * tau + beta * tau_tilde + m1 * pl + plt),
    );
    report.check(
        "tau* = 2n (psi~ + lambda~ + beta tau~)",
        f(tau_star - two_n * (plt + beta * tau_tilde)),
    );
    report.check("tau~ = -tau* + 2n", f(tau_tilde + tau_star - two_n));
    report.check(
        "beta (tau + tau~) + psi + lambda + psi~ + lambda~ + 2n = 0",
        f(beta * (tau + tau_tilde) + pl + plt + two_n),
    );

    match beta_branch(beta, n) {
        BetaBranch::Regular => {
            let d = one + two_n * beta;
            report.check(
                "tau = -2n (psi + lambda - 1) / (1 + 2n beta)",
                f(tau + two_n * (pl - one) / d),
            );
            report.check(
                "tau~ = -2n (psi~ + lambda~ - 1) / (1 + 2n beta)",
                f(tau_tilde + two_n * (plt - one) / d),
            );
            report.check(
                "psi + lambda + psi~ + lambda~ + 2n (1 + 2(n+1) beta) = 0",
                f(pl + plt + two_n * (one + T::lit(2.0) * np1 * beta)),
            );
            let d1 = one + m1 * beta;
            if d1.abs() < tol {
                report.note("beta = -1/(2n+1): combined tau formula skipped");
            } else {
                let rhs = -(m1 * pl + one + (plt - one) / d) / d1;
                report.check(
                    "tau = -((2n+1)(psi + lambda) + 1 + (psi~ + lambda~ - 1)/(1 + 2n beta)) / (1 + (2n+1) beta)",
                    f(tau - rhs),
                );
            }
            if beta.abs() < tol {
                report.check(
                    "beta = 0: tau = -2n (psi + lambda - 1), tau~ = -2n (psi~ + lambda~ - 1)",
                    f((tau + two_n * (pl - one))
                        .abs()
                        .max((tau_tilde + two_n * (plt - one)).abs())),
                );
            } else {
                let rhs = -((pl - one) / d + plt + m1) / beta;
                report.check(
                    "tau~ = -((psi + lambda - 1)/(1 + 2n beta) + psi~ + lambda~ + 2n + 1) / beta",
                    f(tau_tilde - rhs),
                );
            }
        }
        BetaBranch::Degenerate => {
            let d = one + two_n * beta;
            report.check(
                "(1 + 2n beta) tau = -2n (psi + lambda - 1)",
                f(d * tau + two_n * (pl - one)),
            );
            report.check(
                "(1 + 2n beta) tau~ = -2n (psi~ + lambda~ - 1)",
                f(d * tau_tilde + two_n * (plt - one)),
            );
            report.note("beta = -1/(2n): tau and tau~ are not separately determined");
        }
    }
    Ok(report)
}
