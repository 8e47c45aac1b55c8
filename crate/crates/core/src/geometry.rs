//! Left-invariant Levi-Civita geometry on a Lie group.
//!
//! All coefficients are constant in the left-invariant frame, so covariant
//! derivatives of frame fields reduce to contractions with the connection
//! coefficients and no derivative-of-coefficient terms appear.
//!
//! Curvature convention: `R(x, y) z = nabla_x nabla_y z - nabla_y nabla_x z
//! - nabla_[x,y] z`, `R_ijkl = g(R(e_i, e_j) e_k, e_l)` and
//! `rho_jk = g^{il} R_ijkl`.

use crate::error::{GeometryError, Result};
use crate::scalar::Scalar;
use crate::structure::AccRStructure;
use crate::tensor::{phi_trace, trace_g, Frame, MetricPair, Tensor};

/// Structure constants `[e_i, e_j] = c^k_ij e_k`, stored as `c[k, i, j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<T> {
    frame: Frame,
    c: Tensor<T>,
}

impl<T: Scalar> LieAlgebra<T> {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(frame: Frame, c: Tensor<T>) -> Result<Self> {
        let n = frame.dim();
        c.require(n, 3)?;
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let r = (c.at3(k, i, j) + c.at3(k, j, i)).abs();
                    if r > T::linalg_tol() {
                        return Err(GeometryError::NotAntisymmetric {
                            i,
                            j,
                            k,
                            residual: r.as_f64(),
                        });
                    }
                }
            }
        }
        let alg = Self { frame, c };
        let (residual, (i, j, l)) = alg.jacobi_residual();
        if !(residual < T::check_tol()) {
            return Err(GeometryError::JacobiViolation {
                i,
                j,
                l,
                residual: residual.as_f64(),
            });
        }
        Ok(alg)
    }

    /// Builds the algebra from brackets `[e_i, e_j] = value e_k` given as
    /// `(i, j, k, value)`; the antisymmetric counterparts are filled in.
    pub fn from_brackets(frame: Frame, brackets: &[(usize, usize, usize, T)]) -> Result<Self> {
        let n = frame.dim();
        let mut c = Tensor::zeros(n, 3);
        for &(i, j, k, v) in brackets {
            c.set(&[k, i, j], c.at3(k, i, j) + v);
            c.set(&[k, j, i], c.at3(k, j, i) - v);
        }
        Self::new(frame, c)
    }

    pub fn abelian(frame: Frame) -> Self {
        let n = frame.dim();
        Self {
            frame,
            c: Tensor::zeros(n, 3),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn constants(&self) -> &Tensor<T> {
        &self.c
    }

    /// `[x, y]` for constant-coefficient vectors.
    pub fn bracket(&self, x: &Tensor<T>, y: &Tensor<T>) -> Tensor<T> {
        let n = self.dim();
        Tensor::from_fn(n, 1, |ix| {
            let k = ix[0];
            let mut acc = T::zero();
            for i in 0..n {
                for j in 0..n {
                    acc = acc + self.c.at3(k, i, j) * x.at1(i) * y.at1(j);
                }
            }
            acc
        })
    }

    /// Worst cyclic sum `[[e_i, e_j], e_l] + [[e_j, e_l], e_i] + [[e_l, e_i], e_j]`
    /// over all triples, with the triple attaining it.
    pub fn jacobi_residual(&self) -> (T, (usize, usize, usize)) {
        let n = self.dim();
        let c = &self.c;
        let nested =
            |i: usize, j: usize, l: usize, r: usize| -> T { (0..n).map(|m| c.at3(m, i, j) * c.at3(r, m, l)).sum() };
        let mut worst = (T::zero(), (0, 0, 0));
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for r in 0..n {
                        let s = (nested(i, j, l, r) + nested(j, l, i, r) + nested(l, i, j, r)).abs();
                        if s > worst.0 {
                            worst = (s, (i, j, l));
                        }
                    }
                }
            }
        }
        worst
    }
}

/// Connection coefficients `nabla_{e_i} e_j = Gamma^k_ij e_k`, stored as `gamma[k, i, j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection<T> {
    gamma: Tensor<T>,
}

impl<T: Scalar> Connection<T> {
    pub fn from_coefficients(gamma: Tensor<T>) -> Self {
        Self { gamma }
    }

    pub fn gamma(&self) -> &Tensor<T> {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    /// `nabla_{e_i} v` for a constant-coefficient vector `v`.
    pub fn nabla(&self, i: usize, v: &Tensor<T>) -> Tensor<T> {
        let n = self.dim();
        Tensor::from_fn(n, 1, |ix| (0..n).map(|m| self.gamma.at3(ix[0], i, m) * v.at1(m)).sum())
    }

    /// Max |Gamma^k_ij - Gamma^k_ji - c^k_ij|.
    pub fn torsion_residual(&self, alg: &LieAlgebra<T>) -> T {
        let n = self.dim();
        let c = alg.constants();
        let g = &self.gamma;
        Tensor::from_fn(n, 3, |ix| {
            let (k, i, j) = (ix[0], ix[1], ix[2]);
            g.at3(k, i, j) - g.at3(k, j, i) - c.at3(k, i, j)
        })
        .max_abs()
    }

    /// Max |g(nabla_i e_j, e_k) + g(e_j, nabla_i e_k)|.
    pub fn metric_residual(&self, g: &Tensor<T>) -> T {
        let n = self.dim();
        let low = lowered(&self.gamma, g);
        Tensor::from_fn(n, 3, |ix| {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            low.at3(i, j, k) + low.at3(i, k, j)
        })
        .max_abs()
    }
}

/// `L[i, j, k] = g(nabla_{e_i} e_j, e_k)`.
fn lowered<T: Scalar>(gamma: &Tensor<T>, g: &Tensor<T>) -> Tensor<T> {
    let n = g.dim();
    Tensor::from_fn(n, 3, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        (0..n).map(|m| gamma.at3(m, i, j) * g.at2(m, k)).sum()
    })
}

/// Koszul formula for left-invariant fields:
/// `2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)`.
pub fn levi_civita<T: Scalar>(alg: &LieAlgebra<T>, m: &MetricPair<T>) -> Result<Connection<T>> {
    let n = alg.dim();
    m.g().require(n, 2)?;
    let g = m.g();
    let c = alg.constants();
    // cl[a, b, z] = g([e_a, e_b], e_z)
    let cl = Tensor::from_fn(n, 3, |ix| {
        (0..n).map(|k| c.at3(k, ix[0], ix[1]) * g.at2(k, ix[2])).sum::<T>()
    });
    let half = T::lit(0.5);
    let koszul = Tensor::from_fn(n, 3, |ix| {
        let (i, j, z) = (ix[0], ix[1], ix[2]);
        half * (cl.at3(i, j, z) - cl.at3(j, z, i) + cl.at3(z, i, j))
    });
    let gi = m.inv();
    let gamma = Tensor::from_fn(n, 3, |ix| {
        let (k, i, j) = (ix[0], ix[1], ix[2]);
        (0..n).map(|z| gi.at2(k, z) * koszul.at3(i, j, z)).sum()
    });
    let conn = Connection { gamma };

    let tol = T::check_tol();
    let torsion = conn.torsion_residual(alg);
    if !(torsion < tol) {
        return Err(GeometryError::IdentityFailed {
            identity: "torsion-free",
            residual: torsion.as_f64(),
        });
    }
    let compat = conn.metric_residual(g);
    if !(compat < tol) {
        return Err(GeometryError::IdentityFailed {
            identity: "metric compatibility",
            residual: compat.as_f64(),
        });
    }
    Ok(conn)
}

/// `R_ijkl = g(R(e_i, e_j) e_k, e_l)`.
pub fn riemann<T: Scalar>(conn: &Connection<T>, alg: &LieAlgebra<T>, m: &MetricPair<T>) -> Tensor<T> {
    let n = alg.dim();
    let gam = conn.gamma();
    let c = alg.constants();
    let g = m.g();
    // R(e_i, e_j) e_k = (G^m_jk G^r_im - G^m_ik G^r_jm - c^m_ij G^r_mk) e_r
    let endo = Tensor::from_fn(n, 4, |ix| {
        let (r, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
        (0..n)
            .map(|s| {
                gam.at3(s, j, k) * gam.at3(r, i, s)
                    - gam.at3(s, i, k) * gam.at3(r, j, s)
                    - c.at3(s, i, j) * gam.at3(r, s, k)
            })
            .sum::<T>()
    });
    Tensor::from_fn(n, 4, |ix| {
        let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
        (0..n).map(|r| endo.at4(r, i, j, k) * g.at2(r, l)).sum()
    })
}

/// `rho_jk = g^{il} R_ijkl`.
pub fn ricci<T: Scalar>(r: &Tensor<T>, m: &MetricPair<T>) -> Tensor<T> {
    let n = m.dim();
    let gi = m.inv();
    Tensor::from_fn(n, 2, |ix| {
        let (j, k) = (ix[0], ix[1]);
        let mut acc = T::zero();
        for i in 0..n {
            for l in 0..n {
                acc = acc + gi.at2(i, l) * r.at4(i, j, k, l);
            }
        }
        acc
    })
}

/// Max deviation from `R_ijkl = -R_jikl = -R_ijlk = R_klij`.
pub fn curvature_symmetry_residual<T: Scalar>(r: &Tensor<T>) -> T {
    let n = r.dim();
    Tensor::from_fn(n, 4, |ix| {
        let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
        let v = r.at4(i, j, k, l);
        (v + r.at4(j, i, k, l))
            .abs()
            .max((v + r.at4(i, j, l, k)).abs())
            .max((v - r.at4(k, l, i, j)).abs())
    })
    .max_abs()
}

/// Max |R_ijkl + R_jkil + R_kijl|.
pub fn bianchi_residual<T: Scalar>(r: &Tensor<T>) -> T {
    let n = r.dim();
    Tensor::from_fn(n, 4, |ix| {
        let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
        r.at4(i, j, k, l) + r.at4(j, k, i, l) + r.at4(k, i, j, l)
    })
    .max_abs()
}

/// Connection, curvature and scalar curvatures of one metric.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvaturePackage<T> {
    pub conn: Connection<T>,
    pub riemann: Tensor<T>,
    pub ricci: Tensor<T>,
    pub tau: T,
    pub tau_star: T,
}

impl<T: Scalar> CurvaturePackage<T> {
    /// Full package for `metric`; `tau_star` is taken with respect to the same metric.
    pub fn new(alg: &LieAlgebra<T>, metric: &MetricPair<T>, phi: &Tensor<T>) -> Result<Self> {
        let conn = levi_civita(alg, metric)?;
        let r = riemann(&conn, alg, metric);
        let tol = T::check_tol();
        let sym = curvature_symmetry_residual(&r);
        if !(sym < tol) {
            return Err(GeometryError::IdentityFailed {
                identity: "curvature symmetries",
                residual: sym.as_f64(),
            });
        }
        let b = bianchi_residual(&r);
        if !(b < tol) {
            return Err(GeometryError::IdentityFailed {
                identity: "first Bianchi identity",
                residual: b.as_f64(),
            });
        }
        let rho_raw = ricci(&r, metric);
        let asym = rho_raw.max_asymmetry();
        if !(asym < tol) {
            return Err(GeometryError::IdentityFailed {
                identity: "Ricci symmetry",
                residual: asym.as_f64(),
            });
        }
        let rho = rho_raw.symmetrized();
        let tau = trace_g(&rho, metric)?;
        let tau_star = phi_trace(&rho, metric, phi)?;
        Ok(Self {
            conn,
            riemann: r,
            ricci: rho,
            tau,
            tau_star,
        })
    }

    /// Package of the basic metric `g`.
    pub fn for_structure(alg: &LieAlgebra<T>, s: &AccRStructure<T>) -> Result<Self> {
        check_frames(alg, s)?;
        Self::new(alg, s.metric(), s.phi())
    }

    /// Package of the associated metric `g~` with its own connection.
    pub fn for_associated(alg: &LieAlgebra<T>, s: &AccRStructure<T>) -> Result<Self> {
        check_frames(alg, s)?;
        Self::new(alg, s.assoc(), s.phi())
    }
}

fn check_frames<T: Scalar>(alg: &LieAlgebra<T>, s: &AccRStructure<T>) -> Result<()> {
    if alg.dim() != s.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: s.dim(),
            found: alg.dim(),
        });
    }
    Ok(())
}

/// `(tau, tau*)` with `tau = g^{ij} rho_ij` and `tau* = g^{ij} rho(e_i, phi e_j)`.
pub fn scalar_invariants<T: Scalar>(pkg: &CurvaturePackage<T>, s: &AccRStructure<T>) -> Result<(T, T)> {
    Ok((
        trace_g(&pkg.ricci, s.metric())?,
        phi_trace(&pkg.ricci, s.metric(), s.phi())?,
    ))
}

/// Scalar curvature of `g~` through its own Levi-Civita connection.
///
/// For Sasaki-like structures `tau~ = -tau* + 2n` is enforced as well.
pub fn tau_tilde<T: Scalar>(s: &AccRStructure<T>, alg: &LieAlgebra<T>) -> Result<T> {
    let tilde = CurvaturePackage::for_associated(alg, s)?;
    let pkg = CurvaturePackage::for_structure(alg, s)?;
    let f = fundamental_tensor(&pkg.conn, s)?;
    if classify_sasaki_like(&f, s).is_sasaki_like {
        let r = (tilde.tau + pkg.tau_star - T::count(2 * s.n())).abs();
        if !(r < T::check_tol()) {
            return Err(GeometryError::IdentityFailed {
                identity: "tau~ = -tau* + 2n",
                residual: r.as_f64(),
            });
        }
    }
    Ok(tilde.tau)
}

/// `F(x, y, z) = g((nabla_x phi) y, z)`, stored as `f[i, j, k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalTensor<T> {
    pub f: Tensor<T>,
}

impl<T: Scalar> FundamentalTensor<T> {
    /// Max residual of `F(x,y,z) = F(x,z,y)` and
    /// `F(x,y,z) = F(x,phi y,phi z) + eta(y) F(x,xi,z) + eta(z) F(x,y,xi)`.
    pub fn symmetry_residual(&self, s: &AccRStructure<T>) -> T {
        let n = s.dim();
        let f = &self.f;
        let phi = s.phi();
        let xi = s.xi();
        let eta = s.eta();
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = f.at3(i, j, k);
                    worst = worst.max((v - f.at3(i, k, j)).abs());
                    let mut phiphi = T::zero();
                    let mut xi_z = T::zero();
                    let mut y_xi = T::zero();
                    for a in 0..n {
                        xi_z = xi_z + xi.at1(a) * f.at3(i, a, k);
                        y_xi = y_xi + xi.at1(a) * f.at3(i, j, a);
                        for b in 0..n {
                            phiphi = phiphi + phi.at2(a, j) * phi.at2(b, k) * f.at3(i, a, b);
                        }
                    }
                    let rhs = phiphi + eta.at1(j) * xi_z + eta.at1(k) * y_xi;
                    worst = worst.max((v - rhs).abs());
                }
            }
        }
        worst
    }

    /// Max |F(x, phi y, xi) - g(nabla_x xi, y)|.
    pub fn reeb_residual(&self, conn: &Connection<T>, s: &AccRStructure<T>) -> T {
        let n = s.dim();
        let phi = s.phi();
        let xi = s.xi();
        let mut worst = T::zero();
        for i in 0..n {
            let nx = conn.nabla(i, xi);
            let lowered = s.g().apply(&nx);
            for j in 0..n {
                let mut lhs = T::zero();
                for a in 0..n {
                    for b in 0..n {
                        lhs = lhs + phi.at2(a, j) * xi.at1(b) * self.f.at3(i, a, b);
                    }
                }
                worst = worst.max((lhs - lowered.at1(j)).abs());
            }
        }
        worst
    }
}

/// Computes `F` from the Levi-Civita connection of `s.g` and checks its
/// two basic properties.
pub fn fundamental_tensor<T: Scalar>(conn: &Connection<T>, s: &AccRStructure<T>) -> Result<FundamentalTensor<T>> {
    let n = s.dim();
    let gam = conn.gamma();
    let phi = s.phi();
    let g = s.g();
    // ((nabla_i phi) e_j)^r = G^r_im phi^m_j - phi^r_m G^m_ij
    let dphi = Tensor::from_fn(n, 3, |ix| {
        let (i, r, j) = (ix[0], ix[1], ix[2]);
        (0..n)
            .map(|m| gam.at3(r, i, m) * phi.at2(m, j) - phi.at2(r, m) * gam.at3(m, i, j))
            .sum::<T>()
    });
    let f = Tensor::from_fn(n, 3, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        (0..n).map(|r| dphi.at3(i, r, j) * g.at2(r, k)).sum()
    });
    let out = FundamentalTensor { f };
    let tol = T::check_tol();
    let r1 = out.symmetry_residual(s);
    if !(r1 < tol) {
        return Err(GeometryError::IdentityFailed {
            identity: "F(x,y,z) = F(x,z,y) = F(x,phi y,phi z) + eta(y)F(x,xi,z) + eta(z)F(x,y,xi)",
            residual: r1.as_f64(),
        });
    }
    let r2 = out.reeb_residual(conn, s);
    if !(r2 < tol) {
        return Err(GeometryError::IdentityFailed {
            identity: "F(x, phi y, xi) = g(nabla_x xi, y)",
            residual: r2.as_f64(),
        });
    }
    Ok(out)
}

/// Right-hand side `g(phi x, phi y) eta(z) + g(phi x, phi z) eta(y)` of the
/// Sasaki-like condition.
pub fn sasaki_like_model<T: Scalar>(s: &AccRStructure<T>) -> Tensor<T> {
    let n = s.dim();
    let phi = s.phi();
    let gpp = phi.transpose().matmul(&s.g().matmul(phi));
    let eta = s.eta();
    Tensor::from_fn(n, 3, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        gpp.at2(i, j) * eta.at1(k) + gpp.at2(i, k) * eta.at1(j)
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SasakiLike<T> {
    pub is_sasaki_like: bool,
    pub residual: T,
}

pub fn classify_sasaki_like<T: Scalar>(f: &FundamentalTensor<T>, s: &AccRStructure<T>) -> SasakiLike<T> {
    let residual = (&f.f - &sasaki_like_model(s)).max_abs();
    SasakiLike {
        is_sasaki_like: residual < T::check_tol(),
        residual,
    }
}

/// Max |nabla_{e_i} xi + phi e_i| over the basis, for any connection.
pub fn reeb_gradient_residual<T: Scalar>(conn: &Connection<T>, s: &AccRStructure<T>) -> T {
    let n = s.dim();
    (0..n)
        .map(|i| {
            let nx = conn.nabla(i, s.xi());
            let phi_e = Tensor::from_fn(n, 1, |ix| s.phi().at2(ix[0], i));
            (&nx + &phi_e).max_abs()
        })
        .fold(T::zero(), T::max)
}

/// Residuals of the identities every Sasaki-like structure satisfies.
pub fn sasaki_identity_residuals<T: Scalar>(pkg: &CurvaturePackage<T>, s: &AccRStructure<T>) -> Vec<(&'static str, T)> {
    let n = s.dim();
    let two_n = T::count(2 * s.n());
    let eta_nabla_xi = (0..n)
        .map(|i| {
            let nx = pkg.conn.nabla(i, s.xi());
            (0..n).map(|k| s.eta().at1(k) * nx.at1(k)).sum::<T>().abs()
        })
        .fold(T::zero(), T::max);
    let rho_xi = pkg.ricci.apply(s.xi());
    let rho_xi_res = (&rho_xi - &s.eta().scale(two_n)).max_abs();
    let rho_xixi = (pkg.ricci.form(s.xi(), s.xi()) - two_n).abs();
    vec![
        ("eta(nabla_x xi) = 0", eta_nabla_xi),
        ("nabla_x xi = -phi x", reeb_gradient_residual(&pkg.conn, s)),
        ("rho(x, xi) = 2n eta(x)", rho_xi_res),
        ("rho(xi, xi) = 2n", rho_xixi),
    ]
}

/// Everything derivable from an algebra and a structure on it.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureGeometry<T> {
    pub basic: CurvaturePackage<T>,
    pub associated: CurvaturePackage<T>,
    pub fundamental: FundamentalTensor<T>,
    pub sasaki: SasakiLike<T>,
}

impl<T: Scalar> StructureGeometry<T> {
    pub fn analyze(alg: &LieAlgebra<T>, s: &AccRStructure<T>) -> Result<Self> {
        let basic = CurvaturePackage::for_structure(alg, s)?;
        let associated = CurvaturePackage::for_associated(alg, s)?;
        let fundamental = fundamental_tensor(&basic.conn, s)?;
        let sasaki = classify_sasaki_like(&fundamental, s);
        if sasaki.is_sasaki_like {
            for (identity, r) in sasaki_identity_residuals(&basic, s) {
                if !(r < T::check_tol()) {
                    return Err(GeometryError::IdentityFailed {
                        identity,
                        residual: r.as_f64(),
                    });
                }
            }
        }
        Ok(Self {
            basic,
            associated,
            fundamental,
            sasaki,
        })
    }

    pub fn tau(&self) -> T {
        self.basic.tau
    }

    pub fn tau_star(&self) -> T {
        self.basic.tau_star
    }

    pub fn tau_tilde(&self) -> T {
        self.associated.tau
    }
}
