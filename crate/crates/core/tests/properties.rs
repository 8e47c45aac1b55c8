use accr_core::geometry::{bianchi_residual, curvature_symmetry_residual};
use accr_core::scenarios::build_example2;
use accr_core::structure::{associated_metric_tensor, structure_residuals};
use accr_core::*;
use proptest::prelude::*;

fn tensor2(entries: Vec<f64>) -> Tensor64 {
    Tensor::from_vec(5, 2, entries).unwrap()
}

fn entries() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, 25)
}

/// Pairs `(p, q)` bounded away from the zero transform.
fn transform() -> impl Strategy<Value = (f64, f64)> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_filter("nonzero", |(p, q)| p * p + q * q > 0.01)
}

proptest! {
    #[test]
    fn trace_is_linear(t in entries(), u in entries(), a in -5.0..5.0f64, b in -5.0..5.0f64) {
        let s = standard_structure::<f64>(2).unwrap();
        let (t, u) = (tensor2(t), tensor2(u));
        let lhs = trace_g(&(&t.scale(a) + &u.scale(b)), s.metric()).unwrap();
        let rhs = a * trace_g(&t, s.metric()).unwrap() + b * trace_g(&u, s.metric()).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn metric_inverse_is_inverse(m in entries(), shift in 6.0..12.0f64) {
        // diagonally dominant symmetric matrices are well conditioned
        let a = tensor2(m).symmetrized();
        let g = &a + &Tensor::identity(5).scale(shift * 5.0);
        let mp = invert_metric(&g).unwrap();
        let prod = g.matmul(mp.inv());
        prop_assert!((&prod - &Tensor::identity(5)).max_abs() < 1e-12);
        prop_assert!(mp.inv().max_asymmetry() == 0.0);
    }

    #[test]
    fn homothety_keeps_structure_and_sasaki_likeness((a, b) in transform(), p in -2.0..2.0f64, q in -2.0..2.0f64) {
        let (alg, s) = build_example2(p, q).unwrap();
        let t = contact_homothetic_transform(&s, a, b).unwrap();
        for (name, r) in structure_residuals(t.phi(), t.xi(), t.eta(), t.g()) {
            prop_assert!(r < 1e-9, "{} = {}", name, r);
        }
        let geo = StructureGeometry::analyze(&alg, &t).unwrap();
        prop_assert!(geo.sasaki.is_sasaki_like, "residual {}", geo.sasaki.residual);
        prop_assert!((geo.tau_tilde() + geo.tau_star() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn double_association((a, b) in transform()) {
        let s = standard_structure::<f64>(2).unwrap();
        let t = contact_homothetic_transform(&s, a, b).unwrap();
        let twice = associated_metric_tensor(t.phi(), t.eta(), t.g_tilde());
        let expected = &t.eta_eta().scale(2.0) - t.g();
        prop_assert!((&twice - &expected).max_abs() < 1e-12);
        let back = t.with_associated_as_basic().unwrap();
        prop_assert!((back.g() - t.g_tilde()).max_abs() == 0.0);
    }

    #[test]
    fn curvature_identities_hold(p in -3.0..3.0f64, q in -3.0..3.0f64, (a, b) in transform()) {
        let (alg, s) = build_example2(p, q).unwrap();
        let t = contact_homothetic_transform(&s, a, b).unwrap();
        let pkg = CurvaturePackage::for_structure(&alg, &t).unwrap();
        prop_assert!(curvature_symmetry_residual(&pkg.riemann) < 1e-9);
        prop_assert!(bianchi_residual(&pkg.riemann) < 1e-9);
        prop_assert!(pkg.conn.torsion_residual(&alg) < 1e-9);
        prop_assert!(pkg.conn.metric_residual(t.g()) < 1e-9);
    }

    #[test]
    fn lambda_is_affine_in_beta(b1 in -2.0..2.0f64, b2 in -2.0..2.0f64, k in -3.0..3.0f64, dk in -3.0..3.0f64) {
        let (alg, s) = build_example2(0.0, 0.0).unwrap();
        let geo = StructureGeometry::analyze(&alg, &s).unwrap();
        let kk = VerticalScalar::new(k, dk);
        let sol = |b: f64| solve_vertical_soliton(b, &kk, geo.tau(), geo.tau_tilde(), 2, &geo.sasaki).unwrap();
        let (s1, s2, mid) = (sol(b1), sol(b2), sol(0.5 * (b1 + b2)));
        prop_assert!((s1.lambda + s2.lambda - 2.0 * mid.lambda).abs() < 1e-12);
        prop_assert!((s1.lambda_tilde + s2.lambda_tilde - 2.0 * mid.lambda_tilde).abs() < 1e-12);
    }

    #[test]
    fn einstein_fit_recovers_coefficients(a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64, n in 1usize..4) {
        let s = standard_structure::<f64>(n).unwrap();
        let rho = &(&s.g().scale(a) + &s.g_tilde().scale(b)) + &s.eta_eta().scale(c);
        let fit = einstein_like_fit(&rho, &s).unwrap();
        prop_assert!((fit.a - a).abs() < 1e-10 && (fit.b - b).abs() < 1e-10 && (fit.c - c).abs() < 1e-10);
        prop_assert!(fit.residual < 1e-10);
        prop_assert!(fit.class != EinsteinClass::NotEinsteinLike);
    }

    #[test]
    fn rb_residual_is_affine_in_lambda(l in -5.0..5.0f64, dl in -5.0..5.0f64, beta in -1.0..1.0f64) {
        let (alg, s) = build_example2(0.5, -1.0).unwrap();
        let geo = StructureGeometry::analyze(&alg, &s).unwrap();
        let (lg, lgt) = vertical_lie_closed_form(&VerticalScalar::new(1.0, -2.0), &s, &geo.sasaki).unwrap();
        let r = |lam: f64| rb_like_residual(&geo.basic.ricci, &lg, &lgt, &s, &SolitonSpec::new(beta, lam, 0.3), 4.0, 4.0);
        let diff = &r(l + dl) - &r(l);
        prop_assert!((&diff - &s.g().scale(dl)).max_abs() < 1e-12);
    }
}
