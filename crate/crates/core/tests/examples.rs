use affsphere::bundle::{
    fiber_metric, fiber_metric_complex, holomorphic_tangent_matrix, FiberMetricContext,
};
use affsphere::chart::{
    frame_at, halfplane_to_klein, klein_to_halfplane, parametrize_hyperboloid, second_derivatives,
    DiskPoint, HalfPlanePoint,
};
use affsphere::cocycle::{
    evaluate_cocycle, integrate_along, Cocycle, FreeGroupWord, Letter,
};
use affsphere::cone::{
    characteristic_function, cheng_yau_metric, koszul_vinberg_metric, normalize_to_level_set,
    ConePoint,
};
use affsphere::duality::{conormal_analytic, dual_fiber_metric, verify_dual_metric};
use affsphere::forms::{
    codifferential_residual, exterior_derivative_numeric, harmonicity_check, nonharmonic_probe,
    sharp_at, wp_integrand_ratio, FormValue, OneForm, QuadraticDifferentialSample,
};
use affsphere::linalg::{complexify, max_abs, max_abs_c, CMat3, Mat3, Vec3};
use affsphere::rep::{basis, phi_algebra, phi_group, verify_equivariance, GroupElement3, Sl2Element};
use affsphere::GeomError;
use approx::assert_abs_diff_eq;
use nalgebra::Matrix2;
use num_complex::Complex64;

const STEP: f64 = 1e-5;

fn assert_close(got: Complex64, want: Complex64, eps: f64) {
    assert!((got - want).norm() <= eps, "{got} vs {want}");
}

fn hp(x: f64, y: f64) -> HalfPlanePoint {
    HalfPlanePoint::new(x, y).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn characteristic_function_values() {
    let k = |x1, x2, x3| characteristic_function(&ConePoint::new(x1, x2, x3).unwrap());
    assert_abs_diff_eq!(k(0.0, 0.0, 1.0), 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(k(1.0, 1.0, 2.0), 2f64.powf(-1.5), epsilon = 1e-15);
    for t in [2.0, 4.0] {
        assert_abs_diff_eq!(k(0.0, 0.0, t), t.powi(-3), epsilon = 1e-15);
    }
}

#[test]
fn boundary_and_exterior_points_rejected() {
    assert!(matches!(ConePoint::new(1.0, 0.0, 1.0), Err(GeomError::OutsideCone { .. })));
    assert!(ConePoint::new(0.0, 0.0, -1.0).is_err());
    assert!(matches!(DiskPoint::new(0.6, 0.8), Err(GeomError::OutsideDisk { .. })));
    assert!(matches!(HalfPlanePoint::new(0.0, 0.0), Err(GeomError::OutsideHalfPlane { .. })));
}

#[test]
fn apex_metrics() {
    let apex = ConePoint::new(0.0, 0.0, 1.0).unwrap();
    assert_abs_diff_eq!(*cheng_yau_metric(&apex).matrix(), Mat3::identity(), epsilon = 1e-15);
    assert_abs_diff_eq!(
        *koszul_vinberg_metric(&apex).matrix(),
        Mat3::identity() * 3.0,
        epsilon = 1e-15
    );
}

#[test]
fn level_set_matches_projective_lift() {
    let q = DiskPoint::new(0.3, -0.4).unwrap();
    let p = normalize_to_level_set(&q);
    assert_abs_diff_eq!(characteristic_function(&p), 1.0, epsilon = 1e-12);
    let u = -(1.0 - 0.09 - 0.16f64).sqrt();
    let g = Vec3::new(0.3, -0.4, 1.0) * (-1.0 / u);
    assert_abs_diff_eq!(p.coords(), g, epsilon = 1e-14);
    let apex = normalize_to_level_set(&DiskPoint::new(0.0, 0.0).unwrap());
    assert_abs_diff_eq!(apex.coords(), Vec3::new(0.0, 0.0, 1.0), epsilon = 1e-15);
}

#[test]
fn chart_values() {
    let z = klein_to_halfplane(&DiskPoint::new(0.0, 0.0).unwrap());
    assert_abs_diff_eq!(z.x(), 0.0, epsilon = 1e-15);
    assert_abs_diff_eq!(z.y(), 1.0, epsilon = 1e-15);

    let q = DiskPoint::new(0.5, 0.0).unwrap();
    let z = klein_to_halfplane(&q);
    assert_abs_diff_eq!(z.x(), 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(z.y(), 3f64.sqrt() / 2.0, epsilon = 1e-15);
    let back = halfplane_to_klein(&z);
    assert_abs_diff_eq!(back.t1(), 0.5, epsilon = 1e-12);
    assert_abs_diff_eq!(back.t2(), 0.0, epsilon = 1e-12);

    let q = halfplane_to_klein(&hp(1.0, 1.0));
    assert_abs_diff_eq!(q.t1(), 2.0 / 3.0, epsilon = 1e-15);
    assert_abs_diff_eq!(q.t2(), 1.0 / 3.0, epsilon = 1e-15);
    let z = klein_to_halfplane(&q);
    assert_close(z.z(), c(1.0, 1.0), 1e-12);
}

#[test]
fn hyperboloid_values() {
    assert_abs_diff_eq!(
        parametrize_hyperboloid(&HalfPlanePoint::i()).coords(),
        Vec3::new(0.0, 0.0, 1.0),
        epsilon = 1e-15
    );
    let p = parametrize_hyperboloid(&hp(1.0, 1.0));
    assert_abs_diff_eq!(p.coords(), Vec3::new(1.0, 0.5, 1.5), epsilon = 1e-15);
    assert_abs_diff_eq!(p.lorentz_norm_sq(), 1.0, epsilon = 1e-15);
}

#[test]
fn frame_at_i() {
    let d = frame_at(&HalfPlanePoint::i());
    assert_abs_diff_eq!(d.f, Vec3::new(0.0, 0.0, 1.0), epsilon = 1e-15);
    assert_abs_diff_eq!(d.f_x, Vec3::new(1.0, 0.0, 0.0), epsilon = 1e-15);
    assert_abs_diff_eq!(d.f_y, Vec3::new(0.0, 1.0, 0.0), epsilon = 1e-15);
    let a = d.frame_matrix();
    assert_abs_diff_eq!(a.transpose() * a, Mat3::identity(), epsilon = 1e-15);

    let s = second_derivatives(&HalfPlanePoint::i());
    assert_abs_diff_eq!(s.xx, Vec3::new(0.0, 1.0, 1.0), epsilon = 1e-15);
    // f_xy = Γ^x_xy f_x = -f_x at i.
    assert_abs_diff_eq!(s.xy, -d.f_x, epsilon = 1e-15);
}

#[test]
fn phi_of_unipotent() {
    let g = phi_group(&Matrix2::new(1.0, 1.0, 0.0, 1.0)).unwrap();
    let expected = Mat3::new(1.0, -1.0, 1.0, 1.0, 0.5, 0.5, 1.0, -0.5, 1.5);
    assert_abs_diff_eq!(*g.matrix(), expected, epsilon = 1e-15);
    assert!(g.so21_defect() < 1e-15);
    assert_abs_diff_eq!(
        *phi_group(&Matrix2::identity()).unwrap().matrix(),
        Mat3::identity(),
        epsilon = 1e-15
    );
    assert!(matches!(
        phi_group(&Matrix2::new(2.0, 0.0, 0.0, 1.0)),
        Err(GeomError::NotUnimodular(_))
    ));
}

#[test]
fn phi_algebra_raising_is_e1() {
    let e1 = Mat3::new(0.0, -1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0);
    assert_abs_diff_eq!(*phi_algebra(&Sl2Element::raising()).matrix(), e1, epsilon = 1e-15);
    assert_abs_diff_eq!(*basis()[0].matrix(), e1, epsilon = 1e-15);
    assert_eq!(max_abs(phi_algebra(&Sl2Element::new(0.0, 0.0, 0.0)).matrix()), 0.0);
}

#[test]
fn equivariance_examples() {
    assert!(verify_equivariance(&Matrix2::identity(), &hp(0.7, 1.3)).unwrap() < 1e-15);
    let s = Matrix2::new(0.0, 1.0, -1.0, 0.0);
    assert!(verify_equivariance(&s, &hp(0.0, 2.0)).unwrap() < 1e-9);
    let lhs = parametrize_hyperboloid(&hp(0.0, 0.5)).coords();
    let rhs = phi_group(&s).unwrap().matrix() * parametrize_hyperboloid(&hp(0.0, 2.0)).coords();
    assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
}

#[test]
fn fiber_metric_at_i() {
    let ctx = FiberMetricContext::at(&HalfPlanePoint::i());
    let mut e = Mat3::zeros();
    e[(0, 1)] = 1.0;
    let e = affsphere::rep::Sl3Element::new(e).unwrap();
    assert_abs_diff_eq!(fiber_metric(&ctx, &e, &e), 1.0, epsilon = 1e-14);
    let e1 = basis()[0];
    assert_abs_diff_eq!(fiber_metric(&ctx, &e1, &e1), 4.0, epsilon = 1e-14);
    let e1c = e1.complexify();
    assert_close(fiber_metric_complex(&ctx, &e1c, &e1c), c(4.0, 0.0), 1e-14);
}

#[test]
fn pairing_is_sixteen_y_squared() {
    for (x, y) in [(0.0, 1.0), (0.3, 0.7), (-2.0, 3.0), (1.5, 0.25)] {
        let z = hp(x, y);
        let a = holomorphic_tangent_matrix(&z);
        let l = fiber_metric_complex(&FiberMetricContext::at(&z), &a, &a);
        assert!((l.re - 16.0 * y * y).abs() <= 1e-10 * 16.0 * y * y, "{x} {y}: {l}");
        assert!(l.im.abs() < 1e-10);
    }
}

#[test]
fn tangent_matrix_examples() {
    let at0 = holomorphic_tangent_matrix(&hp(0.0, 1e-300)).matrix().map(|v| c(v.re, 0.0));
    let e3 = complexify(basis()[2].matrix());
    assert_abs_diff_eq!(max_abs_c(&(at0 + e3)), 0.0, epsilon = 1e-15);

    let ai = *holomorphic_tangent_matrix(&HalfPlanePoint::i()).matrix();
    let z = c(0.0, 0.0);
    let m2 = c(-2.0, 0.0);
    let m2i = c(0.0, -2.0);
    let expected = CMat3::new(z, z, m2, z, z, m2i, m2, m2i, z);
    assert!(max_abs_c(&(ai - expected)) < 1e-15);
    assert!(ai.trace().norm() < 1e-15);
}

#[test]
fn sharp_examples_at_i() {
    let ctx = FiberMetricContext::at(&HalfPlanePoint::i());
    let b = basis();
    let s1 = sharp_at(&ctx, &complexify(b[0].matrix()));
    let want1 = [4.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0];
    let s2 = sharp_at(&ctx, &complexify(b[1].matrix()));
    let want2 = [0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0];
    for j in [0, 1, 2, 3, 4, 7] {
        assert_close(s1[j], c(want1[j], 0.0), 1e-13);
        assert_close(s2[j], c(want2[j], 0.0), 1e-13);
    }
}

#[test]
fn hodge_star_of_dx_is_dy() {
    let e1 = complexify(basis()[0].matrix());
    let dx = FormValue::from_real(e1, CMat3::zeros());
    let (cx, cy) = dx.star().to_real();
    assert!(max_abs_c(&cx) < 1e-15);
    assert!(max_abs_c(&(cy - e1)) < 1e-15);
}

#[test]
fn exterior_derivative_examples() {
    let x_dy: OneForm<Complex64> =
        OneForm::new(|z| FormValue::from_real(c(0.0, 0.0), c(z.x(), 0.0)));
    let d = exterior_derivative_numeric(&x_dy, &hp(0.4, 1.2), STEP).unwrap();
    assert_close(d, c(1.0, 0.0), 1e-9);

    // d(z^2) = 2z dz is exact.
    let exact: OneForm<Complex64> =
        OneForm::new(|z| FormValue::new(z.z() * 2.0, c(0.0, 0.0)));
    let d = exterior_derivative_numeric(&exact, &hp(-0.3, 0.9), STEP).unwrap();
    assert!(d.norm() < 1e-8);

    assert!(matches!(
        exterior_derivative_numeric(&exact, &hp(0.0, 1e-6), STEP),
        Err(GeomError::StencilOutsideChart { .. })
    ));
}

#[test]
fn harmonic_family_examples() {
    let one = QuadraticDifferentialSample::monomial(0, 4).unwrap();
    let (d, delta) = harmonicity_check(&one, &hp(0.0, 2.0), STEP).unwrap();
    assert!(d < 1e-6 && delta < 1e-6, "{d} {delta}");
    let cube = QuadraticDifferentialSample::monomial(3, 4).unwrap();
    let (d, delta) = harmonicity_check(&cube, &hp(1.0, 1.0), STEP).unwrap();
    assert!(d < 1e-6 && delta < 1e-6, "{d} {delta}");
    assert!(matches!(
        QuadraticDifferentialSample::monomial(5, 4),
        Err(GeomError::DegreeTooHigh { .. })
    ));
}

#[test]
fn probe_is_detected() {
    let probe = nonharmonic_probe();
    let z = HalfPlanePoint::i();
    let d = affsphere::forms::closed_residual(&probe, &z, STEP).unwrap();
    let delta = codifferential_residual(&probe, &z, STEP).unwrap();
    assert!(d.max(delta) > 1e-2, "{d} {delta}");
}

#[test]
fn wp_ratio_examples() {
    let one = QuadraticDifferentialSample::monomial(0, 4).unwrap();
    let z1 = QuadraticDifferentialSample::monomial(1, 4).unwrap();
    let z2 = QuadraticDifferentialSample::monomial(2, 4).unwrap();
    assert_abs_diff_eq!(
        wp_integrand_ratio(&one, &one, &HalfPlanePoint::i()).unwrap(),
        32.0,
        epsilon = 1e-12
    );
    for (x, y) in [(0.3, 0.8), (-1.2, 2.5)] {
        let r = wp_integrand_ratio(&z1, &z1, &hp(x, y)).unwrap();
        assert!((r - 32.0).abs() < 32e-9);
        let r = wp_integrand_ratio(&one, &z2, &hp(x, y)).unwrap();
        assert!((r - 32.0).abs() < 32e-9);
    }
    // Re(z^2) vanishes on the diagonal x = y.
    assert!(matches!(
        wp_integrand_ratio(&one, &z2, &hp(1.0, 1.0)),
        Err(GeomError::DegenerateRatio)
    ));
}

#[test]
fn conormal_at_i() {
    let d = conormal_analytic(&HalfPlanePoint::i());
    let a = Mat3::new(0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0);
    assert_abs_diff_eq!(d.a, a, epsilon = 1e-15);
    assert_abs_diff_eq!(d.nu, Vec3::new(0.0, 0.0, 1.0), epsilon = 1e-15);
    assert!(verify_dual_metric(&HalfPlanePoint::i()).unwrap().max() < 1e-12);
}

#[test]
fn dual_metric_at_i() {
    let e1 = complexify(basis()[0].matrix());
    let l = dual_fiber_metric(&HalfPlanePoint::i(), &-e1.transpose(), &-e1.transpose()).unwrap();
    assert_close(l, c(4.0, 0.0), 1e-14);
}

fn sample_cocycle() -> Cocycle {
    let rho_a = phi_group(&Matrix2::new(1.0, 1.0, 0.0, 1.0)).unwrap();
    let rho_b = phi_group(&Matrix2::new(2.0, 0.0, 0.5, 0.5)).unwrap();
    let b = basis();
    Cocycle { rho_a, rho_b, u_a: b[0] + b[5] * 0.5, u_b: b[2] - b[6] }
}

#[test]
fn cocycle_word_examples() {
    let c = sample_cocycle();
    assert_eq!(max_abs(evaluate_cocycle(&c, &FreeGroupWord::identity()).matrix()), 0.0);
    let a = FreeGroupWord::new(vec![Letter::A]).unwrap();
    assert!(max_abs(&(evaluate_cocycle(&c, &a).matrix() - c.u_a.matrix())) < 1e-15);
    assert!(matches!(
        FreeGroupWord::new(vec![Letter::A, Letter::AInv]),
        Err(GeomError::NotReduced(0))
    ));
    let zero = Cocycle::zero(GroupElement3::identity(), GroupElement3::identity());
    let w = FreeGroupWord::new(vec![Letter::A, Letter::B, Letter::AInv]).unwrap();
    assert_eq!(max_abs(evaluate_cocycle(&zero, &w).matrix()), 0.0);
}

#[test]
fn exact_form_integrates_to_endpoint_difference() {
    // w = d(z^2) (x) E2
    let e2 = complexify(basis()[1].matrix());
    let w = OneForm::new(move |z: &HalfPlanePoint| {
        FormValue::new(e2 * (z.z() * 2.0), CMat3::zeros())
    });
    let (p, q) = (hp(-0.5, 0.7), hp(1.0, 1.5));
    let straight = integrate_along(&w, &[p, q]).unwrap();
    let detour = integrate_along(&w, &[p, hp(0.0, 3.0), hp(2.0, 0.4), q]).unwrap();
    let expected = e2 * (q.z() * q.z() - p.z() * p.z());
    assert!(max_abs_c(&(straight - expected)) < 1e-8);
    assert!(max_abs_c(&(detour - expected)) < 1e-8);
    assert!(matches!(integrate_along(&w, &[p]), Err(GeomError::PathTooShort)));
}
