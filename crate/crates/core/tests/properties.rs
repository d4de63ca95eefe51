use affsphere::bundle::{
    fiber_metric, fiber_metric_complex, holomorphic_tangent_matrix, FiberMetricContext,
};
use affsphere::chart::{
    halfplane_to_klein, hyperboloid_to_halfplane, klein_to_halfplane, mobius,
    parametrize_hyperboloid, DiskPoint, HalfPlanePoint,
};
use affsphere::cocycle::{cocycle_identity_residual, dual_cocycle, Cocycle, FreeGroupWord, Letter};
use affsphere::cone::{characteristic_function, cheng_yau_metric, ConePoint};
use affsphere::duality::dual_fiber_metric_isometry;
use affsphere::forms::{wp_integrand_ratio, FormValue, QuadraticDifferentialSample};
use affsphere::linalg::{max_abs, Mat3};
use affsphere::rep::{phi_algebra, phi_group, verify_equivariance, Sl2Element, Sl3Element};
use nalgebra::Matrix2;
use num_complex::Complex64;
use proptest::prelude::*;

fn cone_point() -> impl Strategy<Value = ConePoint> {
    (1.0..5.0f64, 0.0..0.9f64, 0.0..std::f64::consts::TAU).prop_map(|(x3, r, th)| {
        ConePoint::new(x3 * r * th.cos(), x3 * r * th.sin(), x3).unwrap()
    })
}

fn halfplane() -> impl Strategy<Value = HalfPlanePoint> {
    (-3.0..3.0f64, 0.2..5.0f64).prop_map(|(x, y)| HalfPlanePoint::new(x, y).unwrap())
}

fn form_point() -> impl Strategy<Value = HalfPlanePoint> {
    (-1.0..1.0f64, 0.5..2.0f64).prop_map(|(x, y)| HalfPlanePoint::new(x, y).unwrap())
}

fn sl2() -> impl Strategy<Value = Sl2Element> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b, c)| Sl2Element::new(a, b, c))
}

fn sl3() -> impl Strategy<Value = Sl3Element> {
    prop::array::uniform9(-1.0..1.0f64)
        .prop_map(|v| Sl3Element::project(Mat3::from_row_slice(&v)))
}

fn word(max_len: usize) -> impl Strategy<Value = FreeGroupWord> {
    prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 0..=max_len)
        .prop_map(FreeGroupWord::reduce)
}

fn cocycle() -> impl Strategy<Value = Cocycle> {
    let half = |x: Sl2Element| Sl2Element::new(0.5 * x.a, 0.5 * x.b, 0.5 * x.c);
    (sl2(), sl2(), sl3(), sl3()).prop_map(move |(x, y, u, v)| Cocycle {
        rho_a: phi_group(&half(x).exp()).unwrap(),
        rho_b: phi_group(&half(y).exp()).unwrap(),
        u_a: u,
        u_b: v,
    })
}

proptest! {
    #[test]
    fn characteristic_function_scales(p in cone_point(), s in 0.2..5.0f64) {
        let q = ConePoint::from_vec(&(p.coords() * s)).unwrap();
        let k = characteristic_function(&p);
        prop_assert!((characteristic_function(&q) - k * s.powi(-3)).abs() <= 1e-12 * k * s.powi(-3));
    }

    #[test]
    fn monge_ampere(p in cone_point()) {
        let k = characteristic_function(&p);
        let det = cheng_yau_metric(&p).determinant();
        prop_assert!((det - k * k).abs() <= 1e-9 * k * k);
    }

    #[test]
    fn cheng_yau_is_positive_definite(p in cone_point()) {
        prop_assert!(cheng_yau_metric(&p).is_positive_definite());
    }

    #[test]
    fn k_invariant_under_so21(p in cone_point(), x in sl2()) {
        let g = phi_group(&x.exp()).unwrap();
        let q = p.transform(g.matrix()).unwrap();
        let k = characteristic_function(&p);
        prop_assert!((characteristic_function(&q) - k).abs() <= 1e-9 * k);
    }

    #[test]
    fn klein_roundtrip(r in 0.0..0.95f64, th in 0.0..std::f64::consts::TAU) {
        let q = DiskPoint::new(r * th.cos(), r * th.sin()).unwrap();
        let back = halfplane_to_klein(&klein_to_halfplane(&q));
        prop_assert!((back.t1() - q.t1()).abs() < 1e-12 && (back.t2() - q.t2()).abs() < 1e-12);
    }

    #[test]
    fn hyperboloid_roundtrip(z in halfplane()) {
        let back = hyperboloid_to_halfplane(&parametrize_hyperboloid(&z));
        prop_assert!((back.z() - z.z()).norm() < 1e-12 * z.z().norm().max(1.0));
    }

    #[test]
    fn phi_is_homomorphism(x in sl2(), y in sl2()) {
        let (a, b) = (x.exp(), y.exp());
        let lhs = phi_group(&(a * b)).unwrap();
        let rhs = phi_group(&a).unwrap().compose(&phi_group(&b).unwrap());
        prop_assert!(max_abs(&(lhs.matrix() - rhs.matrix())) < 1e-9 * max_abs(lhs.matrix()).max(1.0));
        prop_assert!(lhs.so21_defect() < 1e-9);
    }

    #[test]
    fn phi_ignores_sign(x in sl2()) {
        let a = x.exp();
        prop_assert!(max_abs(&(phi_group(&-a).unwrap().matrix() - phi_group(&a).unwrap().matrix())) == 0.0);
    }

    #[test]
    fn phi_algebra_respects_bracket(x in sl2(), y in sl2()) {
        let lhs = phi_algebra(&x.bracket(&y));
        let rhs = phi_algebra(&x).bracket(&phi_algebra(&y));
        prop_assert!(max_abs(&(lhs.matrix() - rhs.matrix())) < 1e-12);
    }

    #[test]
    fn chart_is_equivariant(x in sl2(), z in halfplane()) {
        let a = x.exp();
        prop_assume!(mobius(&a, &z).is_ok());
        prop_assert!(verify_equivariance(&a, &z).unwrap() < 1e-9);
    }

    #[test]
    fn fiber_metric_symmetric_positive(z in halfplane(), a in sl3(), b in sl3()) {
        let ctx = FiberMetricContext::at(&z);
        let (ab, ba) = (fiber_metric(&ctx, &a, &b), fiber_metric(&ctx, &b, &a));
        let (aa, bb) = (fiber_metric(&ctx, &a, &a), fiber_metric(&ctx, &b, &b));
        prop_assert!((ab - ba).abs() <= 1e-12 * (aa * bb).sqrt());
        prop_assert!(aa > 0.0);
        prop_assert!(ab * ab <= aa * bb * (1.0 + 1e-12));
    }

    #[test]
    fn fiber_metric_ad_invariant(z in halfplane(), a in sl3(), b in sl3(), x in sl2()) {
        let m = x.exp();
        let g = phi_group(&m).unwrap();
        let gz = mobius(&m, &z).unwrap();
        let l0 = fiber_metric(&FiberMetricContext::at(&z), &a, &b);
        let l1 = fiber_metric(&FiberMetricContext::at(&gz), &a.conjugate_by(&g), &b.conjugate_by(&g));
        let ctx = FiberMetricContext::at(&z);
        let scale = (fiber_metric(&ctx, &a, &a) * fiber_metric(&ctx, &b, &b)).sqrt();
        prop_assert!((l0 - l1).abs() < 1e-8 * scale);
    }

    #[test]
    fn tangent_pairing_is_sixteen_y2(z in halfplane()) {
        let a = holomorphic_tangent_matrix(&z);
        let l = fiber_metric_complex(&FiberMetricContext::at(&z), &a, &a);
        let want = 16.0 * z.y() * z.y();
        prop_assert!((l - want).norm() < 1e-10 * want);
    }

    #[test]
    fn dual_metric_is_isometry(z in halfplane(), a in sl3(), b in sl3()) {
        prop_assert!(dual_fiber_metric_isometry(&z, &a, &b).unwrap() < 1e-9);
    }

    #[test]
    fn star_squares_to_minus_one(p in -5.0..5.0f64, q in -5.0..5.0f64, r in -5.0..5.0f64, s in -5.0..5.0f64) {
        let w = FormValue::new(Complex64::new(p, q), Complex64::new(r, s));
        let ww = w.star().star();
        prop_assert!((ww.dz + w.dz).norm() < 1e-12 && (ww.dzbar + w.dzbar).norm() < 1e-12);
    }

    #[test]
    fn wp_ratio_is_32(z in form_point(), c in prop::collection::vec(-2.0..2.0f64, 6)) {
        let phi = QuadraticDifferentialSample::real(&c[..3], 4).unwrap();
        let psi = QuadraticDifferentialSample::real(&c[3..], 4).unwrap();
        let den = (phi.eval(z.z()) * psi.eval(z.z()).conj()).re * z.y() * z.y();
        prop_assume!(den.abs() > 1e-6);
        let r = wp_integrand_ratio(&phi, &psi, &z).unwrap();
        prop_assert!((r - 32.0).abs() < 32e-9, "{r}");
    }

    #[test]
    fn word_inverse_cancels(w in word(10)) {
        prop_assert!(w.concat(&w.inverse()).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn cocycle_identity_holds(c in cocycle(), x in word(4), y in word(4)) {
        prop_assert!(cocycle_identity_residual(&c, &x, &y) < 1e-10);
        prop_assert!(cocycle_identity_residual(&dual_cocycle(&c), &x, &y) < 1e-10);
    }

    #[test]
    fn dual_is_involution(c in cocycle()) {
        let back = dual_cocycle(&dual_cocycle(&c));
        prop_assert_eq!(back, c);
    }
}

#[test]
fn identity_rho_is_exact() {
    assert_eq!(phi_group(&Matrix2::identity()).unwrap().so21_defect(), 0.0);
}
