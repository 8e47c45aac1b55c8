//! Second implementations of the core quantities, built only from brackets,
//! basis vectors and `Tensor::form`, compared with the library pipeline.

use accr_core::scenarios::build_example2;
use accr_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn e(i: usize) -> Tensor64 {
    Tensor::basis_vector(5, i)
}

type Sample = (f64, f64, Option<(f64, f64)>);

fn samples() -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut out = vec![(0.0, 0.0, None), (2.0, -3.0, None), (1.0, 1.0, Some((0.0, 1.0)))];
    for _ in 0..12 {
        let pq = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let tr = if rng.gen_bool(0.5) {
            Some((rng.gen_range(0.5..3.0), rng.gen_range(-2.0..2.0)))
        } else {
            None
        };
        out.push((pq.0, pq.1, tr));
    }
    out
}

fn setup(p: f64, q: f64, tr: Option<(f64, f64)>) -> (LieAlgebra64, AccRStructure64) {
    let (alg, s) = build_example2(p, q).unwrap();
    let s = match tr {
        Some((a, b)) => contact_homothetic_transform(&s, a, b).unwrap(),
        None => s,
    };
    (alg, s)
}

/// `2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)` for left-invariant fields.
fn koszul(alg: &LieAlgebra64, g: &Tensor64, i: usize, j: usize, k: usize) -> f64 {
    let (x, y, z) = (e(i), e(j), e(k));
    0.5 * (g.form(&alg.bracket(&x, &y), &z) - g.form(&alg.bracket(&y, &z), &x) + g.form(&alg.bracket(&z, &x), &y))
}

#[test]
fn koszul_brute_force_matches_connection() {
    for (p, q, tr) in samples() {
        let (alg, s) = setup(p, q, tr);
        for metric in [s.metric(), s.assoc()] {
            let conn = levi_civita(&alg, metric).unwrap();
            for i in 0..5 {
                for j in 0..5 {
                    let v = conn.nabla(i, &e(j));
                    for k in 0..5 {
                        let lib = metric.g().form(&v, &e(k));
                        let brute = koszul(&alg, metric.g(), i, j, k);
                        assert!(
                            (lib - brute).abs() < 1e-12,
                            "({i},{j},{k}) at p={p} q={q}: {lib} vs {brute}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn koszul_component_equals_p() {
    for p in [-2.0, -0.5, 0.0, 1.0, 3.25] {
        let (alg, s) = build_example2(p, 0.7).unwrap();
        assert!((koszul(&alg, s.g(), 0, 1, 2) - p).abs() < 1e-14);
        let conn = levi_civita(&alg, s.metric()).unwrap();
        assert!((s.g().form(&conn.nabla(0, &e(1)), &e(2)) - p).abs() < 1e-14);
    }
}

/// `R(x,y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z`, composed from `nabla`.
fn curvature_by_composition(conn: &Connection64, alg: &LieAlgebra64, g: &Tensor64) -> Tensor64 {
    let nabla_v = |x: &Tensor64, v: &Tensor64| {
        let mut out = Tensor::zeros(5, 1);
        for i in 0..5 {
            out = &out + &conn.nabla(i, v).scale(x.at1(i));
        }
        out
    };
    Tensor::from_fn(5, 4, |ix| {
        let (x, y, z, w) = (e(ix[0]), e(ix[1]), e(ix[2]), e(ix[3]));
        let r = &(&nabla_v(&x, &nabla_v(&y, &z)) - &nabla_v(&y, &nabla_v(&x, &z))) - &nabla_v(&alg.bracket(&x, &y), &z);
        g.form(&r, &w)
    })
}

#[test]
fn curvature_and_ricci_by_composition() {
    for (p, q, tr) in samples() {
        let (alg, s) = setup(p, q, tr);
        for metric in [s.metric(), s.assoc()] {
            let pkg = CurvaturePackage::new(&alg, metric, s.phi()).unwrap();
            let r = curvature_by_composition(&pkg.conn, &alg, metric.g());
            assert!((&r - &pkg.riemann).max_abs() < 1e-11);
            let gi = metric.inv();
            let rho = Tensor::from_fn(5, 2, |ix| {
                let mut acc = 0.0;
                for i in 0..5 {
                    for l in 0..5 {
                        acc += gi.at2(i, l) * r.at4(i, ix[0], ix[1], l);
                    }
                }
                acc
            });
            assert!((&rho - &pkg.ricci).max_abs() < 1e-11);
        }
    }
}

/// `(L_{k xi} g)(x, y) = -k g([xi,x],y) - k g(x,[xi,y]) + dk(x) eta(y) + dk(y) eta(x)`.
fn lie_by_brackets(alg: &LieAlgebra64, s: &AccRStructure64, g: &Tensor64, k: VerticalScalar<f64>) -> Tensor64 {
    let xi = s.xi();
    Tensor::from_fn(5, 2, |ix| {
        let (x, y) = (e(ix[0]), e(ix[1]));
        let dk = |v: &Tensor64| k.xi_derivative * s.eta().dot(v);
        -k.value * g.form(&alg.bracket(xi, &x), &y) - k.value * g.form(&x, &alg.bracket(xi, &y))
            + dk(&x) * s.eta().dot(&y)
            + dk(&y) * s.eta().dot(&x)
    })
}

#[test]
fn lie_derivative_by_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (p, q, tr) in samples() {
        let (alg, s) = setup(p, q, tr);
        let geo = StructureGeometry::analyze(&alg, &s).unwrap();
        for _ in 0..5 {
            let k = VerticalScalar::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            let pot = PotentialSpec::Vertical(k);
            let lg = lie_derivative_metric(s.metric(), &geo.basic.conn, &pot, &s).unwrap();
            let lgt = lie_derivative_metric(s.assoc(), &geo.associated.conn, &pot, &s).unwrap();
            assert!((&lg - &lie_by_brackets(&alg, &s, s.g(), k)).max_abs() < 1e-11);
            assert!((&lgt - &lie_by_brackets(&alg, &s, s.g_tilde(), k)).max_abs() < 1e-11);
            let (cg, cgt) = vertical_lie_closed_form(&k, &s, &geo.sasaki).unwrap();
            assert!((&cg - &lg).max_abs() < 1e-10 && (&cgt - &lgt).max_abs() < 1e-10);
        }
    }
}

#[test]
fn fundamental_tensor_by_brackets() {
    // nabla phi computed from Koszul values and phi applied to basis vectors
    for (p, q, tr) in samples() {
        let (alg, s) = setup(p, q, tr);
        let geo = StructureGeometry::analyze(&alg, &s).unwrap();
        let gi = s.metric().inv();
        let nabla = |i: usize, v: &Tensor64| {
            Tensor::from_fn(5, 1, |ix| {
                let mut acc = 0.0;
                for j in 0..5 {
                    for z in 0..5 {
                        acc += v.at1(j) * gi.at2(ix[0], z) * koszul(&alg, s.g(), i, j, z);
                    }
                }
                acc
            })
        };
        for i in 0..5 {
            for j in 0..5 {
                let dphi = &nabla(i, &s.phi().apply(&e(j))) - &s.phi().apply(&nabla(i, &e(j)));
                for k in 0..5 {
                    let brute = s.g().form(&dphi, &e(k));
                    assert!((brute - geo.fundamental.f.at3(i, j, k)).abs() < 1e-11);
                }
            }
        }
    }
}

#[test]
fn single_precision_path() {
    let (alg, s) = build_example2(1.0f32, -0.5f32).unwrap();
    let geo: StructureGeometry32 = StructureGeometry::analyze(&alg, &s).unwrap();
    assert!((geo.tau() - 4.0).abs() < 1e-5);
    assert!(geo.tau_star().abs() < 1e-5);
    assert!((geo.tau_tilde() - 4.0).abs() < 1e-5);
    assert!(geo.sasaki.is_sasaki_like);
    let k = VerticalScalar::new(-2.0f32, -2.0);
    let sol = solve_vertical_soliton(0.0f32, &k, geo.tau(), geo.tau_tilde(), 2, &geo.sasaki).unwrap();
    assert!((sol.lambda - 2.0).abs() < 1e-5 && (sol.lambda_tilde + 2.0).abs() < 1e-5);
    let pt = accr_core::scenarios::example1_curve(0.4f32, 2, 0.25).unwrap();
    assert!((pt.tau + pt.tau_tilde - 24.0).abs() < 1e-3);
    assert!(pt.report.passed(), "{:#?}", pt.report);
}
