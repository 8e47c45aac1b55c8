//! Almost contact B-metric structures `(phi, xi, eta, g)` with constant
//! coefficients in a left-invariant frame.

use crate::error::{GeometryError, Result, Violation};
use crate::linalg;
use crate::scalar::Scalar;
use crate::tensor::{invert_metric, Frame, MetricPair, Tensor};

/// A validated accR structure together with its associated B-metric.
#[derive(Debug, Clone, PartialEq)]
pub struct AccRStructure<T> {
    frame: Frame,
    phi: Tensor<T>,
    xi: Tensor<T>,
    eta: Tensor<T>,
    g: MetricPair<T>,
    g_assoc: MetricPair<T>,
}

impl<T: Scalar> AccRStructure<T> {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn phi(&self) -> &Tensor<T> {
        &self.phi
    }

    pub fn xi(&self) -> &Tensor<T> {
        &self.xi
    }

    pub fn eta(&self) -> &Tensor<T> {
        &self.eta
    }

    pub fn metric(&self) -> &MetricPair<T> {
        &self.g
    }

    pub fn g(&self) -> &Tensor<T> {
        self.g.g()
    }

    pub fn assoc(&self) -> &MetricPair<T> {
        &self.g_assoc
    }

    pub fn g_tilde(&self) -> &Tensor<T> {
        self.g_assoc.g()
    }

    /// `eta (x) eta`.
    pub fn eta_eta(&self) -> Tensor<T> {
        self.eta.outer(&self.eta)
    }

    /// The same `(phi, xi, eta)` with `g~` promoted to the basic metric.
    pub fn with_associated_as_basic(&self) -> Result<Self> {
        validate_structure(
            &self.frame,
            self.phi.clone(),
            self.xi.clone(),
            self.eta.clone(),
            self.g_tilde().clone(),
        )
    }
}

/// `g~(x, y) = g(x, phi y) + eta(x) eta(y)` as a covariant tensor.
pub fn associated_metric_tensor<T: Scalar>(phi: &Tensor<T>, eta: &Tensor<T>, g: &Tensor<T>) -> Tensor<T> {
    &g.matmul(phi) + &eta.outer(eta)
}

/// Counts (positive, negative) eigenvalues of a symmetric matrix.
pub fn signature<T: Scalar>(g: &Tensor<T>) -> (usize, usize) {
    let ev = linalg::symmetric_eigenvalues(g.as_slice(), g.dim());
    let tol = T::check_tol();
    let pos = ev.iter().filter(|&&x| x > tol).count();
    let neg = ev.iter().filter(|&&x| x < -tol).count();
    (pos, neg)
}

/// Max-abs residuals of every defining identity of an accR structure,
/// in a fixed order.
pub fn structure_residuals<T: Scalar>(
    phi: &Tensor<T>,
    xi: &Tensor<T>,
    eta: &Tensor<T>,
    g: &Tensor<T>,
) -> Vec<(&'static str, T)> {
    let n = g.dim();
    let id = Tensor::<T>::identity(n);
    let xi_eta = xi.outer(eta);
    let eta_eta = eta.outer(eta);
    let phi2 = phi.matmul(phi);
    let phit = phi.transpose();
    let g_phi = g.matmul(phi);
    let eta_phi = Tensor::from_fn(n, 1, |ix| (0..n).map(|k| eta.at1(k) * phi.at2(k, ix[0])).sum());
    let eta_xi: T = (0..n).map(|k| eta.at1(k) * xi.at1(k)).sum();

    vec![
        ("phi xi = 0", phi.apply(xi).max_abs()),
        ("phi^2 = -id + eta (x) xi", (&(&phi2 + &id) - &xi_eta).max_abs()),
        ("eta o phi = 0", eta_phi.max_abs()),
        ("eta(xi) = 1", (eta_xi - T::one()).abs()),
        (
            "g(phi x, phi y) = -g(x, y) + eta(x) eta(y)",
            (&(&phit.matmul(&g_phi) + g) - &eta_eta).max_abs(),
        ),
        ("g(phi x, y) = g(x, phi y)", (&phit.matmul(g) - &g_phi).max_abs()),
        ("g(x, xi) = eta(x)", (&g.apply(xi) - eta).max_abs()),
        ("g(xi, xi) = 1", (g.form(xi, xi) - T::one()).abs()),
    ]
}

fn violations<T: Scalar>(residuals: Vec<(&'static str, T)>, tol: T) -> Vec<Violation> {
    residuals
        .into_iter()
        .filter(|(_, r)| !(*r < tol))
        .map(|(identity, r)| Violation {
            identity,
            residual: r.as_f64(),
        })
        .collect()
}

/// Residual of `g~(phi x, phi y) = -g~(x, y) + eta(x) eta(y)`.
pub fn b_metric_residual<T: Scalar>(phi: &Tensor<T>, eta: &Tensor<T>, h: &Tensor<T>) -> T {
    let lhs = phi.transpose().matmul(&h.matmul(phi));
    (&(&lhs + h) - &eta.outer(eta)).max_abs()
}

/// Checks shapes, signature `(n+1, n)` and every accR identity, then builds
/// the associated metric.
pub fn validate_structure<T: Scalar>(
    frame: &Frame,
    phi: Tensor<T>,
    xi: Tensor<T>,
    eta: Tensor<T>,
    g: Tensor<T>,
) -> Result<AccRStructure<T>> {
    let dim = frame.dim();
    phi.require(dim, 2)?;
    xi.require(dim, 1)?;
    eta.require(dim, 1)?;
    g.require(dim, 2)?;

    let metric = invert_metric(&g)?;
    let n = frame.n();
    let found = signature(&g);
    if found != (n + 1, n) {
        return Err(GeometryError::WrongSignature {
            expected: (n + 1, n),
            found,
        });
    }

    let tol = T::check_tol();
    let failed = violations(structure_residuals(&phi, &xi, &eta, &g), tol);
    if !failed.is_empty() {
        return Err(GeometryError::StructureViolation(failed));
    }

    // g~ is symmetric once g(phi x, y) = g(x, phi y) holds; averaging removes rounding.
    let g_tilde = associated_metric_tensor(&phi, &eta, &g).symmetrized();
    let g_assoc = invert_metric(&g_tilde)?;
    let r = b_metric_residual(&phi, &eta, &g_tilde);
    if !(r < tol) {
        return Err(GeometryError::StructureViolation(vec![Violation {
            identity: "g~(phi x, phi y) = -g~(x, y) + eta(x) eta(y)",
            residual: r.as_f64(),
        }]));
    }

    Ok(AccRStructure {
        frame: frame.clone(),
        phi,
        xi,
        eta,
        g: metric,
        g_assoc,
    })
}

/// Recomputes `g~` from the structure and checks that it is a B-metric.
pub fn associated_metric<T: Scalar>(s: &AccRStructure<T>) -> Result<MetricPair<T>> {
    let g_tilde = associated_metric_tensor(s.phi(), s.eta(), s.g()).symmetrized();
    let m = invert_metric(&g_tilde)?;
    let r = b_metric_residual(s.phi(), s.eta(), &g_tilde);
    if !(r < T::check_tol()) {
        return Err(GeometryError::IdentityFailed {
            identity: "g~(phi x, phi y) = -g~(x, y) + eta(x) eta(y)",
            residual: r.as_f64(),
        });
    }
    Ok(m)
}

/// `g' = p g + q g~ + (1 - p - q) eta (x) eta`, keeping `(phi, xi, eta)`.
pub fn contact_homothetic_transform<T: Scalar>(s: &AccRStructure<T>, p: T, q: T) -> Result<AccRStructure<T>> {
    if p == T::zero() && q == T::zero() {
        return Err(GeometryError::ZeroTransform);
    }
    if p == T::one() && q == T::zero() {
        return Ok(s.clone());
    }
    let ee = s.eta_eta();
    let g_new = &(&s.g().scale(p) + &s.g_tilde().scale(q)) + &ee.scale(T::one() - p - q);
    validate_structure(
        s.frame(),
        s.phi().clone(),
        s.xi().clone(),
        s.eta().clone(),
        g_new.symmetrized(),
    )
}

/// The model structure on a (2n+1)-dimensional frame: `xi = e_0`,
/// `phi e_i = e_{n+i}`, `phi e_{n+i} = -e_i`, `g = diag(1, 1.., -1..)`.
pub fn standard_structure<T: Scalar>(n: usize) -> Result<AccRStructure<T>> {
    let frame = Frame::odd(n)?;
    let dim = frame.dim();
    let mut phi = Tensor::zeros(dim, 2);
    for i in 1..=n {
        phi.set(&[n + i, i], T::one());
        phi.set(&[i, n + i], -T::one());
    }
    let xi = Tensor::basis_vector(dim, 0);
    let eta = Tensor::basis_vector(dim, 0);
    let diag: Vec<T> = (0..dim).map(|i| if i <= n { T::one() } else { -T::one() }).collect();
    validate_structure(&frame, phi, xi, eta, Tensor::diagonal(&diag))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example2_parts() -> (Frame, Tensor<f64>, Tensor<f64>, Tensor<f64>, Tensor<f64>) {
        let frame = Frame::new(5).unwrap();
        let mut phi = Tensor::zeros(5, 2);
        phi.set(&[3, 1], 1.0);
        phi.set(&[4, 2], 1.0);
        phi.set(&[1, 3], -1.0);
        phi.set(&[2, 4], -1.0);
        let xi = Tensor::basis_vector(5, 0);
        let eta = Tensor::basis_vector(5, 0);
        let g = Tensor::diagonal(&[1.0, 1.0, 1.0, -1.0, -1.0]);
        (frame, phi, xi, eta, g)
    }

    #[test]
    fn example2_structure_is_valid() {
        let (f, phi, xi, eta, g) = example2_parts();
        let s = validate_structure(&f, phi, xi, eta, g).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s, standard_structure::<f64>(2).unwrap());
    }

    #[test]
    fn flipped_sign_is_wrong_signature() {
        let (f, phi, xi, eta, _) = example2_parts();
        let g = Tensor::diagonal(&[1.0, 1.0, 1.0, 1.0, -1.0]);
        assert_eq!(
            validate_structure(&f, phi, xi, eta, g),
            Err(GeometryError::WrongSignature {
                expected: (3, 2),
                found: (4, 1)
            })
        );
    }

    #[test]
    fn broken_phi_reports_phi_squared() {
        let (f, mut phi, xi, eta, g) = example2_parts();
        phi.set(&[3, 1], 0.0);
        phi.set(&[1, 1], 1.0);
        match validate_structure(&f, phi, xi, eta, g) {
            Err(GeometryError::StructureViolation(v)) => {
                assert!(v.iter().any(|x| x.identity == "phi^2 = -id + eta (x) xi"));
                assert!(v.len() > 1, "all violated identities are reported");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn associated_metric_entries() {
        let s = standard_structure::<f64>(2).unwrap();
        let gt = associated_metric(&s).unwrap();
        let gt = gt.g();
        assert_eq!(gt.at2(0, 0), 1.0);
        assert_eq!(gt.at2(1, 3), -1.0);
        assert_eq!(gt.at2(3, 1), -1.0);
        assert_eq!(gt.at2(2, 4), -1.0);
        for i in 1..5 {
            assert_eq!(gt.at2(i, i), 0.0);
        }
        for x in 0..5 {
            assert_eq!(gt.at2(0, x), s.eta().at1(x));
        }
    }

    #[test]
    fn transform_identity_and_swap() {
        let s = standard_structure::<f64>(2).unwrap();
        assert_eq!(contact_homothetic_transform(&s, 1.0, 0.0).unwrap(), s);
        let t = contact_homothetic_transform(&s, 0.0, 1.0).unwrap();
        assert_eq!(t.g(), s.g_tilde());
        assert_eq!(
            contact_homothetic_transform(&s, 0.0, 0.0),
            Err(GeometryError::ZeroTransform)
        );
    }

    #[test]
    fn transform_keeps_reeb_unit() {
        let s = standard_structure::<f64>(2).unwrap();
        for (p, q) in [(2.0, -1.0), (-0.5, 3.0), (0.0, -2.0)] {
            let t = contact_homothetic_transform(&s, p, q).unwrap();
            assert!((t.g().form(t.xi(), t.xi()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn associated_of_associated_flips_the_contact_part() {
        let s = standard_structure::<f64>(3).unwrap();
        let back = associated_metric_tensor(s.phi(), s.eta(), s.g_tilde());
        let expected = &s.eta_eta().scale(2.0) - s.g();
        assert!((&back - &expected).max_abs() < 1e-12);
    }

    #[test]
    fn standard_structures_in_several_dimensions() {
        for n in 1..=4 {
            let s = standard_structure::<f64>(n).unwrap();
            assert_eq!(signature(s.g()), (n + 1, n));
            assert_eq!(signature(s.g_tilde()), (n + 1, n));
        }
    }
}
