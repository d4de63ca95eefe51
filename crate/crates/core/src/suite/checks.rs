//! The check table. Each entry samples its own points and returns the worst
//! residual; residuals are relative to `max(1, |reference|)` unless noted.

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Check, Outcome, Suite, SuiteConfig, Tol};
use crate::bundle::{
    fiber_metric, fiber_metric_complex, fiber_metric_trace, holomorphic_tangent_matrix,
    FiberMetricContext,
};
use crate::chart::{
    blaschke_metric_disk, cheng_yau_metric_halfplane, disk_to_hyperboloid, frame_at,
    halfplane_to_klein, klein_jacobian, klein_to_halfplane, mobius, parametrize_hyperboloid,
    verify_structure_equation, verify_structure_equation_fd, HalfPlanePoint,
};
use crate::cocycle::{
    cocycle_identity_residual, dual_cocycle, evaluate_cocycle, integrate_along,
    integrate_form_to_cocycle, Cocycle, FreeGroupWord,
};
use crate::cone::{
    characteristic_function, cheng_yau_metric, cheng_yau_potential, koszul_vinberg_metric,
    normalize_to_level_set, ConePoint,
};
use crate::duality::{
    conormal_analytic, conormal_at, dual_fiber_metric_isometry, pairing_preservation,
    transported_residuals, verify_dual_metric,
};
use crate::error::{GeomError, Result};
use crate::forms::{
    closed_residual, codifferential_residual, gram_condition, harmonicity_check,
    hodge_dual_residual, nonharmonic_probe, sharp_at, sharp_closed_form, sharp_inverse,
    wp_integrand_ratio, FormValue, LieValuedOneForm, OneForm, QuadraticDifferentialSample,
    CLOSED_FORM_SLOTS,
};
use crate::linalg::{complexify, eta, lorentz_quadratic, max_abs, max_abs_c, rel_diff, CMat3, Mat3, Vec3};
use crate::numdiff::{central, hessian};
use crate::rep::{basis, phi_algebra, phi_group, verify_equivariance, Sl3Element};
use crate::sampling::{sample_disk, sample_sl2_algebra, sample_sl2_group, sample_sl3, sample_so21};

type R = Result<Outcome>;

fn rel_mat(a: &Mat3, b: &Mat3) -> f64 {
    max_abs(&(a - b)) / max_abs(b).max(1.0)
}

fn rel_cmat(a: &CMat3, b: &CMat3) -> f64 {
    max_abs_c(&(a - b)) / max_abs_c(b).max(1.0)
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The harmonic-family test polynomials `1, z, z^2, z^3, 2 + 3z`.
fn test_polynomials(cfg: &SuiteConfig) -> Result<Vec<QuadraticDifferentialSample>> {
    [
        vec![1.0],
        vec![0.0, 1.0],
        vec![0.0, 0.0, 1.0],
        vec![0.0, 0.0, 0.0, 1.0],
        vec![2.0, 3.0],
    ]
    .iter()
    .map(|p| QuadraticDifferentialSample::real(p, cfg.max_degree))
    .collect()
}

/// Five `(phi, psi)` pairs for the Weil-Petersson ratio.
fn wp_pairs(cfg: &SuiteConfig) -> Result<Vec<(QuadraticDifferentialSample, QuadraticDifferentialSample)>> {
    let p = test_polynomials(cfg)?;
    Ok(vec![
        (p[0].clone(), p[0].clone()),
        (p[1].clone(), p[1].clone()),
        (p[0].clone(), p[2].clone()),
        (p[3].clone(), p[4].clone()),
        (p[2].clone(), p[4].clone()),
    ])
}

// ---------------------------------------------------------------- cone

/// `Hess log k` from `grad t = 2 eta p` and `Hess t = 2 eta`.
fn kv_from_gradient(p: &ConePoint) -> Mat3 {
    let v = p.coords();
    let t = p.lorentz_norm_sq();
    let g = 2.0 * eta() * v;
    -1.5 * (2.0 * eta() / t - g * g.transpose() / (t * t))
}

fn cone_monge_ampere(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let p = cfg.cone_region.sample(rng);
        let s = characteristic_function(&p);
        o.record((cheng_yau_metric(&p).determinant() - s * s).abs() / (s * s));
    }
    Ok(o)
}

/// Second differences of an O(1) potential balance truncation against
/// rounding near `h ~ eps^{1/4}`; scaling by `x3` keeps the relative step
/// fixed along rays.
fn fd_hessian_step(p: &ConePoint) -> f64 {
    3e-5 * p.x3()
}

fn cone_monge_ampere_fd(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let p = cfg.cone_region.sample(rng);
        let pot = |x: &Vec3| cheng_yau_potential(x).unwrap_or(f64::NAN);
        let h = hessian(pot, &p.coords(), fd_hessian_step(&p));
        let s = characteristic_function(&p);
        o.record((h.determinant() - s * s).abs() / (s * s));
    }
    Ok(o)
}

fn cone_kv(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let p = cfg.cone_region.sample(rng);
        let kv = kv_from_gradient(&p);
        let r1 = rel_mat(koszul_vinberg_metric(&p).matrix(), &kv);
        let r2 = rel_mat(&(3.0 * cheng_yau_metric(&p).matrix()), &kv);
        o.record(r1.max(r2));
    }
    Ok(o)
}

fn cone_kv_fd(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let p = cfg.cone_region.sample(rng);
        let logk = |x: &Vec3| {
            let t = lorentz_quadratic(x);
            if t > 0.0 { -1.5 * t.ln() } else { f64::NAN }
        };
        let h = hessian(logk, &p.coords(), fd_hessian_step(&p));
        let kv = koszul_vinberg_metric(&p);
        o.record(max_abs(&(h - kv.matrix())) / max_abs(kv.matrix()));
    }
    Ok(o)
}

fn cone_k_equivariance(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let p = cfg.cone_region.sample(rng);
        let g = sample_so21(rng, 1.0);
        let q = p.transform(g.matrix())?;
        let (kp, kq) = (characteristic_function(&p), characteristic_function(&q));
        o.record((kq - kp).abs() / kp);
    }
    Ok(o)
}

fn cone_h_invariance(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let p = cfg.cone_region.sample(rng);
        let g = sample_so21(rng, 1.0);
        let q = p.transform(g.matrix())?;
        let pulled = g.matrix().transpose() * cheng_yau_metric(&q).matrix() * g.matrix();
        o.record(rel_mat(&pulled, cheng_yau_metric(&p).matrix()));
    }
    Ok(o)
}

/// Residual is the number of sampled points where `h` fails Sylvester's test.
fn cone_positive_definite(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let p = cfg.cone_region.sample(rng);
        let bad = !cheng_yau_metric(&p).is_positive_definite();
        o.points += 1;
        o.max_residual += f64::from(u8::from(bad));
    }
    Ok(o)
}

fn cone_level_set(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let q = sample_disk(rng, cfg.disk_radius);
        let m = normalize_to_level_set(&q);
        let g = disk_to_hyperboloid(&q);
        o.record((characteristic_function(&m) - 1.0).abs().max(rel_diff(m.x3(), g.x3())));
    }
    Ok(o)
}

// ----------------------------------------------------------- embedding

fn embedding_roundtrip(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let back = klein_to_halfplane(&halfplane_to_klein(&z));
        let q = sample_disk(rng, cfg.disk_radius);
        let q2 = halfplane_to_klein(&klein_to_halfplane(&q));
        let r1 = (back.z() - z.z()).norm() / z.z().norm().max(1.0);
        let r2 = (q2.t1() - q.t1()).abs().max((q2.t2() - q.t2()).abs());
        o.record(r1.max(r2));
    }
    Ok(o)
}

fn embedding_isometry_disk(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let q = sample_disk(rng, cfg.disk_radius);
        let z = klein_to_halfplane(&q);
        let j = klein_jacobian(&q);
        let pulled = j.transpose() * j * z.conformal_factor();
        let b = blaschke_metric_disk(&q);
        o.record((pulled - b).amax() / b.amax().max(1.0));
    }
    Ok(o)
}

fn embedding_isometry_hyperboloid(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let g = frame_at(&z).induced_metric();
        let expected = Matrix2::identity() * z.conformal_factor();
        o.record((g - expected).amax() / expected.amax().max(1.0));
    }
    Ok(o)
}

fn embedding_chart_commutes(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let q = sample_disk(rng, cfg.disk_radius);
        let a = disk_to_hyperboloid(&q).coords();
        let b = parametrize_hyperboloid(&klein_to_halfplane(&q)).coords();
        o.record((a - b).amax() / b.amax().max(1.0));
    }
    Ok(o)
}

fn embedding_level_set(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        o.record((characteristic_function(&parametrize_hyperboloid(&z)) - 1.0).abs());
    }
    Ok(o)
}

fn structure_scale(z: &HalfPlanePoint) -> f64 {
    (frame_at(z).f.amax() * z.conformal_factor()).max(1.0)
}

fn embedding_structure(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        o.record(verify_structure_equation(&z) / structure_scale(&z));
    }
    Ok(o)
}

fn embedding_structure_fd(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        o.record(verify_structure_equation_fd(&z, cfg.fd_step)? / structure_scale(&z));
    }
    Ok(o)
}

fn embedding_metric_splitting(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let d = frame_at(&z);
        let h = cheng_yau_metric(&ConePoint::from_vec(&d.f)?);
        let g = z.conformal_factor();
        let scale = h.matrix().amax().max(1.0);
        let r = [
            (h.apply(&d.f, &d.f) - 1.0).abs(),
            h.apply(&d.f, &d.f_x).abs(),
            h.apply(&d.f, &d.f_y).abs(),
            (h.apply(&d.f_x, &d.f_x) - g).abs() / g.max(1.0),
            h.apply(&d.f_x, &d.f_y).abs(),
            (h.apply(&d.f_y, &d.f_y) - g).abs() / g.max(1.0),
        ];
        o.record(r.into_iter().fold(0.0, f64::max) / scale);
    }
    Ok(o)
}

fn embedding_frame_fd(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let d = frame_at(&z);
        let f = |dx: f64, dy: f64| parametrize_hyperboloid(&HalfPlanePoint::new(z.x() + dx, z.y() + dy).expect("step below y_min")).coords();
        let fx = central(|t| f(t, 0.0), 0.0, cfg.fd_step);
        let fy = central(|t| f(0.0, t), 0.0, cfg.fd_step);
        let r = |a: &Vec3, b: &Vec3| (a - b).amax() / b.amax().max(1.0);
        o.record(r(&fx, &d.f_x).max(r(&fy, &d.f_y)));
    }
    Ok(o)
}

// ----------------------------------------------------------------- rep

fn rep_homomorphism(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(200) {
        let a = sample_sl2_group(rng, 1.0);
        let b = sample_sl2_group(rng, 1.0);
        let ab = phi_group(&(a * b))?;
        let prod = phi_group(&a)?.matrix() * phi_group(&b)?.matrix();
        o.record(rel_mat(&prod, ab.matrix()));
    }
    Ok(o)
}

fn rep_so21(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(200) {
        let g = phi_group(&sample_sl2_group(rng, 1.0))?;
        let scale = max_abs(g.matrix()).powi(2).max(1.0);
        o.record((g.so21_defect() / scale).max((g.matrix().determinant() - 1.0).abs() / scale));
    }
    Ok(o)
}

fn rep_equivariance(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let a = sample_sl2_group(rng, 1.0);
        let z = cfg.z_region.sample(rng);
        let w = mobius(&a, &z)?;
        let scale = parametrize_hyperboloid(&w).coords().amax().max(1.0);
        o.record(verify_equivariance(&a, &z)? / scale);
    }
    Ok(o)
}

fn rep_algebra_derivative(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let x = sample_sl2_algebra(rng, 1.0);
        let g = |t: f64| {
            let scaled = crate::rep::Sl2Element::new(t * x.a, t * x.b, t * x.c);
            *phi_group(&scaled.exp()).expect("exp is unimodular").matrix()
        };
        let d = central(g, 0.0, cfg.fd_step);
        o.record(rel_mat(&d, phi_algebra(&x).matrix()));
    }
    Ok(o)
}

fn rep_so21_algebra(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let x = *phi_algebra(&sample_sl2_algebra(rng, 1.0)).matrix();
        let a = sample_sl2_group(rng, 1.0);
        let sign = max_abs(&(phi_group(&-a)?.matrix() - phi_group(&a)?.matrix()));
        o.record(max_abs(&(x.transpose() * eta() + eta() * x)).max(sign));
    }
    Ok(o)
}

fn rep_bracket(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let x = sample_sl2_algebra(rng, 1.0);
        let y = sample_sl2_algebra(rng, 1.0);
        let lhs = phi_algebra(&x.bracket(&y));
        let rhs = phi_algebra(&x).bracket(&phi_algebra(&y));
        o.record(rel_mat(lhs.matrix(), rhs.matrix()));
    }
    Ok(o)
}

// -------------------------------------------------------------- bundle

fn bundle_symmetry(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let ctx = FiberMetricContext::at(&z);
        let (a, b, d) = (sample_sl3(rng), sample_sl3(rng), sample_sl3(rng));
        let s: f64 = rng.random_range(-2.0..2.0);
        let lab = fiber_metric(&ctx, &a, &b);
        let sym = (lab - fiber_metric(&ctx, &b, &a)).abs();
        let (lad, lbd) = (fiber_metric(&ctx, &a, &d), fiber_metric(&ctx, &b, &d));
        let lin = (fiber_metric(&ctx, &(a * s + b), &d) - s * lad - lbd).abs();
        let scale = lab.abs().max(lad.abs()).max(lbd.abs()).max(1.0);
        o.record(sym.max(lin) / scale);
    }
    Ok(o)
}

/// Residual is the number of samples with `l(A, A) <= 0`.
fn bundle_positive(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let a = sample_sl3(rng);
        let v = fiber_metric(&FiberMetricContext::at(&z), &a, &a);
        o.points += 1;
        o.max_residual += f64::from(u8::from(!(v > 0.0)));
    }
    Ok(o)
}

fn bundle_ad_invariance(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let m = sample_sl2_group(rng, 1.0);
        let g = phi_group(&m)?;
        let (a, b) = (sample_sl3(rng), sample_sl3(rng));
        let l0 = fiber_metric(&FiberMetricContext::at(&z), &a, &b);
        let ctx1 = FiberMetricContext::at(&mobius(&m, &z)?);
        let l1 = fiber_metric(&ctx1, &a.conjugate_by(&g), &b.conjugate_by(&g));
        o.record(rel_diff(l1, l0));
    }
    Ok(o)
}

fn bundle_sixteen(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let a = holomorphic_tangent_matrix(&z);
        let v = fiber_metric_complex(&FiberMetricContext::at(&z), &a, &a);
        let expected = 16.0 * z.y() * z.y();
        o.record((v - c(expected)).norm() / expected);
    }
    Ok(o)
}

fn bundle_sixteen_at_i(_: &SuiteConfig, _: &mut ChaCha8Rng) -> R {
    let z = HalfPlanePoint::i();
    let a = holomorphic_tangent_matrix(&z);
    let v = fiber_metric_complex(&FiberMetricContext::at(&z), &a, &a);
    let mut o = Outcome::default();
    o.record((v - c(16.0)).norm());
    Ok(o)
}

fn bundle_trace_oracle(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let ctx = FiberMetricContext::at(&z);
        let (a, b) = (sample_sl3(rng), sample_sl3(rng));
        let l = fiber_metric(&ctx, &a, &b);
        // Both sides carry cancellation of order l(A,A) l(B,B).
        let scale = (fiber_metric(&ctx, &a, &a) * fiber_metric(&ctx, &b, &b)).sqrt().max(1.0);
        o.record((fiber_metric_trace(&ctx, a.matrix(), b.matrix()) - l).abs() / scale);
    }
    Ok(o)
}

fn bundle_halfplane_matrix(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let h = cheng_yau_metric(&parametrize_hyperboloid(&z));
        o.record(rel_mat(h.matrix(), &cheng_yau_metric_halfplane(&z)));
    }
    Ok(o)
}

fn bundle_tangent_decomposition(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    let e = basis().map(|b| complexify(b.matrix()));
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let w = z.z();
        let lin = e[0] * (w * w) - e[2] - e[1] * (w * 2.0);
        o.record(rel_cmat(holomorphic_tangent_matrix(&z).matrix(), &lin));
    }
    Ok(o)
}

// ------------------------------------------------------------ harmonic

fn harmonic_closed(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let polys = test_polynomials(cfg)?;
    let mut o = Outcome::default();
    for _ in 0..cfg.count(50) {
        let z = cfg.form_region.sample(rng);
        for p in &polys {
            o.record(closed_residual(&p.harmonic_form(), &z, cfg.fd_step)?);
        }
    }
    Ok(o)
}

fn harmonic_coclosed(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let polys = test_polynomials(cfg)?;
    let mut o = Outcome::default();
    for _ in 0..cfg.count(50) {
        let z = cfg.form_region.sample(rng);
        for p in &polys {
            o.record(harmonicity_check(p, &z, cfg.fd_step)?.1);
        }
    }
    Ok(o)
}

/// Residual is `0.01 / max(|dw|, |d * sharp w|)` for the probe at `i`, so the
/// check passes exactly when some residual reaches `0.01`.
fn harmonic_probe(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> R {
    let w = nonharmonic_probe();
    let z = HalfPlanePoint::i();
    let d = closed_residual(&w, &z, cfg.fd_step)?;
    let delta = codifferential_residual(&w, &z, cfg.fd_step)?;
    let mut o = Outcome::default();
    o.record(1e-2 / d.max(delta));
    Ok(o)
}

fn harmonic_sharp_closed_forms(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let e = basis();
    let mut o = Outcome::default();
    for _ in 0..cfg.count(50) {
        let z = cfg.z_region.sample(rng);
        let ctx = FiberMetricContext::at(&z);
        let mut worst: f64 = 0.0;
        for (k, ek) in e.iter().enumerate().take(3) {
            let s = sharp_at(&ctx, ek.complexify().matrix());
            let cf = sharp_closed_form(k, &z);
            for &j in &CLOSED_FORM_SLOTS {
                worst = worst.max((s[j] - c(cf[j])).norm() / cf[j].abs().max(1.0));
            }
        }
        o.record(worst);
    }
    Ok(o)
}

fn harmonic_sharp_tangent(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(50) {
        let z = cfg.z_region.sample(rng);
        let w = z.z();
        let s = sharp_at(&FiberMetricContext::at(&z), holomorphic_tangent_matrix(&z).matrix());
        let expected = [
            (0, c(-4.0)),
            (1, w * -4.0),
            (2, w * w * 4.0),
            (3, w * w + 1.0),
            (4, w * w - 1.0),
            (7, w * -2.0),
        ];
        let worst = expected
            .iter()
            .map(|(j, v)| (s[*j] - v).norm() / v.norm().max(1.0))
            .fold(0.0, f64::max);
        o.record(worst);
    }
    Ok(o)
}

fn harmonic_sharp_definition(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let e = basis();
    let mut o = Outcome::default();
    for _ in 0..cfg.count(50) {
        let z = cfg.z_region.sample(rng);
        let ctx = FiberMetricContext::at(&z);
        let a = sample_sl3(rng);
        let s = sharp_at(&ctx, a.complexify().matrix());
        for _ in 0..20 {
            let coords: [f64; 8] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let b = (0..8).fold(Sl3Element::zero(), |acc, i| acc + e[i] * coords[i]);
            let paired: Complex64 = (0..8).map(|i| s[i] * coords[i]).sum();
            let l = fiber_metric(&ctx, &a, &b);
            let scale = (fiber_metric(&ctx, &a, &a) * fiber_metric(&ctx, &b, &b)).sqrt().max(1.0);
            o.record((paired - c(l)).norm() / scale);
        }
    }
    Ok(o)
}

fn harmonic_gram_condition(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(50) {
        let z = cfg.form_region.sample(rng);
        o.record(gram_condition(&FiberMetricContext::at(&z)));
    }
    Ok(o)
}

fn harmonic_sharp_roundtrip(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(50) {
        let z = cfg.form_region.sample(rng);
        let ctx = FiberMetricContext::at(&z);
        let a = sample_sl3(rng).complexify();
        let back = sharp_inverse(&ctx, &sharp_at(&ctx, a.matrix()))?;
        o.record(rel_cmat(&back, a.matrix()));
    }
    Ok(o)
}

fn harmonic_hodge_dual(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let mut pair = || (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let (a, b) = (pair(), pair());
        o.record(hodge_dual_residual(a, b, &z));
    }
    Ok(o)
}

fn harmonic_star_involution(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let a = complexify(sample_sl3(rng).matrix());
        let b = complexify(sample_sl3(rng).matrix());
        let w = FormValue::from_real(a, b);
        let ss = w.star().star();
        o.record(max_abs_c(&(ss.dz + w.dz)).max(max_abs_c(&(ss.dzbar + w.dzbar))));
    }
    Ok(o)
}

fn harmonic_exact_form(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(50) {
        let z = cfg.form_region.sample(rng);
        let e = complexify(sample_sl3(rng).matrix());
        let w: LieValuedOneForm = OneForm::new(move |z| FormValue::new(e * (z.z() * 2.0), CMat3::zeros()));
        o.record(closed_residual(&w, &z, cfg.fd_step)?);
    }
    Ok(o)
}

// ------------------------------------------------------------------ wp

fn wp_ratio(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let pairs = wp_pairs(cfg)?;
    let mut o = Outcome::default();
    for _ in 0..cfg.count(50) {
        let z = cfg.z_region.sample(rng);
        for (phi, psi) in &pairs {
            match wp_integrand_ratio(phi, psi, &z) {
                Ok(r) => o.record((r - 32.0).abs() / 32.0),
                Err(GeomError::DegenerateRatio) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(o)
}

fn wp_ratio_at_i(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> R {
    let one = QuadraticDifferentialSample::real(&[1.0], cfg.max_degree)?;
    let mut o = Outcome::default();
    o.record((wp_integrand_ratio(&one, &one, &HalfPlanePoint::i())? - 32.0).abs() / 32.0);
    Ok(o)
}

// ------------------------------------------------------------ duality

fn duality_metric(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, pick: fn(&crate::duality::DualMetricResidual) -> f64) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        o.record(pick(&verify_dual_metric(&z)?));
    }
    Ok(o)
}

fn duality_orthonormal(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    duality_metric(cfg, rng, |r| r.orthonormality)
}

fn duality_frame_inverse(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    duality_metric(cfg, rng, |r| r.frame_vs_inverse)
}

fn duality_dual_metric(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    duality_metric(cfg, rng, |r| r.dual_vs_inverse)
}

fn duality_dual_level(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    duality_metric(cfg, rng, |r| r.dual_level)
}

fn duality_pairings(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let d = conormal_at(&z, cfg.fd_step)?;
        let stack = max_abs(&(d.row_stack() * d.a - Mat3::identity()));
        o.record(d.pairing_residual().max(stack));
    }
    Ok(o)
}

fn duality_conormal_closed_form(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let n = conormal_at(&z, cfg.fd_step)?;
        let a = conormal_analytic(&z);
        let r = |u: &Vec3, v: &Vec3| (u - v).amax() / v.amax().max(1.0);
        o.record(r(&n.nu, &a.nu).max(r(&n.nu_x, &a.nu_x)).max(r(&n.nu_y, &a.nu_y)));
    }
    Ok(o)
}

fn duality_isometry(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z = cfg.z_region.sample(rng);
        let (a, b) = (sample_sl3(rng), sample_sl3(rng));
        o.record(dual_fiber_metric_isometry(&z, &a, &b)?);
    }
    Ok(o)
}

fn duality_transport(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, coclosed: bool) -> R {
    let polys = test_polynomials(cfg)?;
    let mut o = Outcome::default();
    for _ in 0..cfg.count(30) {
        let z = cfg.form_region.sample(rng);
        for p in &polys {
            let (d, delta) = transported_residuals(&p.harmonic_form(), &z, cfg.fd_step)?;
            o.record(if coclosed { delta } else { d });
        }
    }
    Ok(o)
}

fn duality_transport_closed(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    duality_transport(cfg, rng, false)
}

fn duality_transport_coclosed(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    duality_transport(cfg, rng, true)
}

fn duality_pairing_preservation(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let pairs = wp_pairs(cfg)?;
    let mut o = Outcome::default();
    for _ in 0..cfg.count(30) {
        let z = cfg.z_region.sample(rng);
        for (phi, psi) in &pairs {
            o.record(pairing_preservation(phi, psi, &z)?);
        }
    }
    Ok(o)
}

// ------------------------------------------------------------- cocycle

const MAX_WORD: usize = 8;

fn random_cocycle(rng: &mut ChaCha8Rng) -> Cocycle {
    Cocycle {
        rho_a: sample_so21(rng, 0.5),
        rho_b: sample_so21(rng, 0.5),
        u_a: sample_sl3(rng),
        u_b: sample_sl3(rng),
    }
}

fn random_word(rng: &mut ChaCha8Rng) -> FreeGroupWord {
    let len = rng.random_range(0..=MAX_WORD);
    FreeGroupWord::random(rng, len)
}

fn cocycle_identity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let c = random_cocycle(rng);
        let (x, y) = (random_word(rng), random_word(rng));
        o.record(cocycle_identity_residual(&c, &x, &y));
    }
    Ok(o)
}

fn cocycle_dual_identity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let c = dual_cocycle(&random_cocycle(rng));
        let (x, y) = (random_word(rng), random_word(rng));
        o.record(cocycle_identity_residual(&c, &x, &y));
    }
    Ok(o)
}

/// Exact comparison: residual is the largest entry of `tau* tau* c - c`.
fn cocycle_involution(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let c = random_cocycle(rng);
        let cc = dual_cocycle(&dual_cocycle(&c));
        let r = [
            max_abs(&(cc.rho_a.matrix() - c.rho_a.matrix())),
            max_abs(&(cc.rho_b.matrix() - c.rho_b.matrix())),
            max_abs(&(cc.u_a.matrix() - c.u_a.matrix())),
            max_abs(&(cc.u_b.matrix() - c.u_b.matrix())),
        ];
        o.record(r.into_iter().fold(0.0, f64::max));
    }
    Ok(o)
}

fn cocycle_coboundary(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let (ra, rb) = (sample_so21(rng, 0.5), sample_so21(rng, 0.5));
        let v = sample_sl3(rng);
        let dual = dual_cocycle(&Cocycle::coboundary(ra, rb, &v));
        let expected = Cocycle::coboundary(dual.rho_a, dual.rho_b, &v.neg_transpose());
        let w = random_word(rng);
        o.record(rel_mat(
            evaluate_cocycle(&dual, &w).matrix(),
            evaluate_cocycle(&expected, &w).matrix(),
        ));
    }
    Ok(o)
}

fn cocycle_word_duality(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let c = random_cocycle(rng);
        let w = random_word(rng);
        let lhs = evaluate_cocycle(&dual_cocycle(&c), &w);
        let rhs = evaluate_cocycle(&c, &w).neg_transpose();
        o.record(rel_mat(lhs.matrix(), rhs.matrix()));
    }
    Ok(o)
}

/// Straight path and a two-segment detour through a point above the chord.
fn paths(start: HalfPlanePoint, end: HalfPlanePoint, lift: f64) -> Result<[Vec<HalfPlanePoint>; 2]> {
    let mid = (start.z() + end.z()) * 0.5;
    let detour = HalfPlanePoint::new(mid.re, mid.im + lift)?;
    Ok([vec![start, end], vec![start, detour, end]])
}

fn cocycle_path_independence(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let polys = test_polynomials(cfg)?;
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z0 = cfg.form_region.sample(rng);
        let gamma = sample_sl2_group(rng, 0.5);
        let z1 = mobius(&gamma, &z0)?;
        let w = polys[rng.random_range(0..polys.len())].harmonic_form();
        let [p1, p2] = paths(z0, z1, rng.random_range(0.1..1.0))?;
        let a = integrate_form_to_cocycle(&w, &p1, &gamma)?;
        let b = integrate_form_to_cocycle(&w, &p2, &gamma)?;
        o.record(rel_cmat(&b, &a));
    }
    Ok(o)
}

fn cocycle_exact_form(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> R {
    let mut o = Outcome::default();
    for _ in 0..cfg.count(100) {
        let z0 = cfg.z_region.sample(rng);
        let z1 = cfg.z_region.sample(rng);
        let e = complexify(sample_sl3(rng).matrix());
        let w: LieValuedOneForm = OneForm::new(move |z| FormValue::new(e * (z.z() * 2.0), CMat3::zeros()));
        let expected = e * (z1.z() * z1.z() - z0.z() * z0.z());
        let [p1, p2] = paths(z0, z1, rng.random_range(0.1..1.0))?;
        o.record(rel_cmat(&integrate_along(&w, &p1)?, &expected).max(rel_cmat(&integrate_along(&w, &p2)?, &expected)));
    }
    Ok(o)
}

macro_rules! check {
    ($id:literal, $suite:ident, $anchor:literal, $tol:expr, $run:ident) => {
        Check {
            id: $id,
            suite: Suite::$suite,
            anchor: $anchor,
            tol: $tol,
            run: $run,
        }
    };
}

static CHECKS: &[Check] = &[
    check!("cone.monge_ampere", Cone, "det((1/3)(log σ)_{ij}) = σ^2", Tol::Analytic, cone_monge_ampere),
    check!("cone.monge_ampere_fd", Cone, "det((1/3)(log σ)_{ij}) = σ^2", Tol::Fixed(1e-5), cone_monge_ampere_fd),
    check!("cone.kv_equals_3cy", Cone, "Hess(log k) = 3h", Tol::Analytic, cone_kv),
    check!("cone.kv_fd", Cone, "Hess(log k) = 3h", Tol::Fixed(1e-5), cone_kv_fd),
    check!("cone.k_equivariance", Cone, "k(γx) = k(x), γ ∈ SO(2,1)", Tol::Analytic, cone_k_equivariance),
    check!("cone.h_invariance", Cone, "γ^T h_{γp} γ = h_p", Tol::Analytic, cone_h_invariance),
    check!("cone.positive_definite", Cone, "h > 0", Tol::Fixed(0.0), cone_positive_definite),
    check!("cone.level_set", Cone, "k(m(q)) = 1, m = G", Tol::Analytic, cone_level_set),
    check!("embedding.klein_roundtrip", Embedding, "F∘F^{-1} = id, F^{-1}∘F = id", Tol::Fixed(1e-12), embedding_roundtrip),
    check!("embedding.isometry_disk", Embedding, "F^*(|dz|^2/y^2) = -(1/u)u_{ij}dt^i dt^j", Tol::Analytic, embedding_isometry_disk),
    check!("embedding.isometry_hyperboloid", Embedding, "f^*h = |dz|^2/y^2", Tol::Analytic, embedding_isometry_hyperboloid),
    check!("embedding.chart_commutes", Embedding, "G = f∘F", Tol::Analytic, embedding_chart_commutes),
    check!("embedding.level_set", Embedding, "x_3^2 - x_1^2 - x_2^2 = 1", Tol::Analytic, embedding_level_set),
    check!("embedding.structure_equation", Embedding, "D_X f_*Y = f_*(∇_X Y) + g(X,Y)f", Tol::Analytic, embedding_structure),
    check!("embedding.structure_equation_fd", Embedding, "D_X f_*Y = f_*(∇_X Y) + g(X,Y)f", Tol::Fd, embedding_structure_fd),
    check!("embedding.metric_splitting", Embedding, "h(f,f) = 1, h(f,f_x) = h(f,f_y) = 0, h(f_x,f_x) = e^ψ", Tol::Analytic, embedding_metric_splitting),
    check!("embedding.frame_fd", Embedding, "f_x, f_y closed form vs central differences", Tol::Fd, embedding_frame_fd),
    check!("rep.homomorphism", Rep, "Φ(AB) = Φ(A)Φ(B)", Tol::Analytic, rep_homomorphism),
    check!("rep.so21", Rep, "Φ(A)^T η Φ(A) = η, det Φ(A) = 1", Tol::Analytic, rep_so21),
    check!("rep.equivariance", Rep, "f(Az) = Φ(A)f(z)", Tol::Analytic, rep_equivariance),
    check!("rep.algebra_derivative", Rep, "Φ_*(X) = d/dt Φ(exp tX)|_{t=0}", Tol::Fd, rep_algebra_derivative),
    check!("rep.so21_algebra", Rep, "Φ_*(X)^T η + η Φ_*(X) = 0, Φ(-A) = Φ(A)", Tol::Fixed(1e-12), rep_so21_algebra),
    check!("rep.bracket", Rep, "Φ_*[X,Y] = [Φ_*X, Φ_*Y]", Tol::Analytic, rep_bracket),
    check!("bundle.symmetry_bilinearity", Bundle, "l_p(A,B)=tr(A^Th^{-1}Bh)", Tol::Fixed(1e-12), bundle_symmetry),
    check!("bundle.positive_definite", Bundle, "l_p(A,A) > 0", Tol::Fixed(0.0), bundle_positive),
    check!("bundle.ad_invariance", Bundle, "l_{γx}(Ad(γ)φ, Ad(γ)φ') = l_x(φ, φ')", Tol::Fixed(1e-8), bundle_ad_invariance),
    check!("bundle.sixteen_y2", Bundle, "=16y^{2}", Tol::Fixed(1e-10), bundle_sixteen),
    check!("bundle.sixteen_at_i", Bundle, "=16y^{2}, y = 1", Tol::Fixed(1e-10), bundle_sixteen_at_i),
    check!("bundle.trace_oracle", Bundle, "l_p(A,B)=tr(A^Th^{-1}Bh)", Tol::Analytic, bundle_trace_oracle),
    check!("bundle.halfplane_matrix", Bundle, "h_{11} = \\frac{2x^2}{y^2}+1", Tol::Fixed(1e-10), bundle_halfplane_matrix),
    check!("bundle.tangent_decomposition", Bundle, "Φ([[-z,z^2],[-1,z]]) = z^2E_1 - E_3 - 2zE_2", Tol::Fixed(1e-14), bundle_tangent_decomposition),
    check!("harmonic.closed", Harmonic, "d(φ(z)dz ⊗ Φ([[-z,z^2],[-1,z]])) = 0 (pointwise/local)", Tol::Fd, harmonic_closed),
    check!("harmonic.coclosed", Harmonic, "d*(♯)(φ(z)dz ⊗ Φ([[-z,z^2],[-1,z]])) = 0 (pointwise/local)", Tol::Fd, harmonic_coclosed),
    check!("harmonic.probe_detects", Harmonic, "z̄dz ⊗ E_1 not harmonic: 0.01/max(|dω|,|d*♯ω|)", Tol::Fixed(1.0), harmonic_probe),
    check!("harmonic.sharp_closed_forms", Harmonic, "\\sharp(E_1), \\sharp(E_2), \\sharp(E_3)", Tol::Analytic, harmonic_sharp_closed_forms),
    check!("harmonic.sharp_tangent_expansion", Harmonic, "-4E_1^* + 4z^2E_3^* - 4zE_2^* + (z^2+1)E_4^* + (z^2-1)E_5^* - 2zE_8^*", Tol::Analytic, harmonic_sharp_tangent),
    check!("harmonic.sharp_definition", Harmonic, "(\\sharp v)_x(u_x)=l_x(u_x,v_x)", Tol::Fixed(1e-10), harmonic_sharp_definition),
    check!("harmonic.gram_condition", Harmonic, "cond [l(E_i,E_j)] < 1e8", Tol::Fixed(1e8), harmonic_gram_condition),
    check!("harmonic.sharp_roundtrip", Harmonic, "\\sharp^{-1}\\sharp = id", Tol::Fixed(1e-8), harmonic_sharp_roundtrip),
    check!("harmonic.hodge_dual", Harmonic, "\\alpha\\wedge*\\beta=<\\alpha,\\beta>dvol", Tol::Fixed(1e-10), harmonic_hodge_dual),
    check!("harmonic.star_involution", Harmonic, "** = -1", Tol::Analytic, harmonic_star_involution),
    check!("harmonic.exact_form", Harmonic, "d(d(z^2) ⊗ E) = 0", Tol::Fd, harmonic_exact_form),
    check!("wp.ratio", Wp, "32{<\\phi dz^2,\\psi dz^2>}_{WP}", Tol::Fixed(1e-9), wp_ratio),
    check!("wp.ratio_at_i", Wp, "32{<\\phi dz^2,\\psi dz^2>}_{WP}, φ = ψ = 1, z = i", Tol::Fixed(1e-9), wp_ratio_at_i),
    check!("duality.orthonormal_frame", Duality, "A^T h A=I", Tol::Fixed(1e-9), duality_orthonormal),
    check!("duality.frame_inverse", Duality, "h^*=h^{-1}=AA^T", Tol::Fixed(1e-8), duality_frame_inverse),
    check!("duality.dual_metric", Duality, "h_{\\nu(p)}^*=h_{p}^{-1}", Tol::Fixed(1e-8), duality_dual_metric),
    check!("duality.dual_level_set", Duality, "σ^*(ν) = 1", Tol::Analytic, duality_dual_level),
    check!("duality.conormal_pairings", Duality, "\\nu(f)=1,\\nu(f_x)=0,\\nu(f_y)=0; \\nu_{*}(Y)(X)=-g(Y,X)", Tol::Fixed(1e-8), duality_pairings),
    check!("duality.conormal_closed_form", Duality, "ν = ηf", Tol::Fd, duality_conormal_closed_form),
    check!("duality.fiber_isometry", Duality, "l^*(-A^T,-B^T) = l(A,B)", Tol::Fixed(1e-9), duality_isometry),
    check!("duality.transport_closed", Duality, "d(σ⊗(-φ^T)) = 0 (pointwise/local)", Tol::Fd, duality_transport_closed),
    check!("duality.transport_coclosed", Duality, "δ^*(σ⊗(-φ^T)) = 0 (pointwise/local)", Tol::Fd, duality_transport_coclosed),
    check!("duality.pairing_preservation", Duality, "g̃(τ^*ω, τ^*ω') = g̃(ω, ω')", Tol::Fixed(1e-9), duality_pairing_preservation),
    check!("cocycle.identity", Cocycle, "u(xy)-u(x)=Ad(\\rho(x))(u(y)) (free group of rank 2)", Tol::Fixed(1e-10), cocycle_identity),
    check!("cocycle.dual_identity", Cocycle, "u(xy)-u(x)=Ad(\\rho(x))(u(y)) for ρ^*", Tol::Fixed(1e-10), cocycle_dual_identity),
    check!("cocycle.dual_involution", Cocycle, "τ_*τ_* = id", Tol::Fixed(0.0), cocycle_involution),
    check!("cocycle.coboundary_preserved", Cocycle, "τ_*(v - Ad(ρ)v) = (-v^T) - Ad(ρ^*)(-v^T)", Tol::Fixed(1e-10), cocycle_coboundary),
    check!("cocycle.word_duality", Cocycle, "\\tau_*(u)(\\gamma)=-(u(\\gamma))^T", Tol::Fixed(1e-10), cocycle_word_duality),
    check!("cocycle.path_independence", Cocycle, "u_{\\sigma\\otimes\\phi}(\\gamma):=\\int_{\\widetilde{\\gamma}}\\sigma\\otimes\\phi", Tol::Fixed(1e-6), cocycle_path_independence),
    check!("cocycle.exact_form", Cocycle, "∫ d(z^2) ⊗ E = (z_1^2 - z_0^2)E", Tol::Fixed(1e-8), cocycle_exact_form),
];

pub(crate) fn all() -> &'static [Check] {
    CHECKS
}
