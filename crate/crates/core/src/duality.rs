//! The conormal map of the hyperboloid, the dual frame, the dual Cheng-Yau
//! metric `h* = h^{-1}`, and the fiber-level isometry `A -> -A^T` between
//! `l` and its dual `l*`.

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::bundle::{holomorphic_tangent_matrix, FiberMetricContext};
use crate::chart::{frame_at, HalfPlanePoint};
use crate::cone::{cheng_yau_metric, cheng_yau_metric_inverse, characteristic_function, ConePoint};
use crate::error::{GeomError, Result};
use crate::forms::{
    exterior_derivative_numeric, loftin_integrand_with, DualBasisCovector, LieValuedOneForm,
    OneForm, QuadraticDifferentialSample,
};
use crate::linalg::{complexify, eta, frobenius_bilinear, max_abs, max_abs_c, CMat3, Mat3, Vec3};
use crate::rep::{basis, Sl3Element};

/// Frame `A = (f, y f_x, y f_y)` with the conormal `nu` and its derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualFrame {
    pub point: HalfPlanePoint,
    pub a: Mat3,
    pub f: Vec3,
    pub f_x: Vec3,
    pub f_y: Vec3,
    pub nu: Vec3,
    pub nu_x: Vec3,
    pub nu_y: Vec3,
}

impl DualFrame {
    /// Rows `nu`, `-y nu_x`, `-y nu_y`; the inverse of `a`.
    pub fn row_stack(&self) -> Mat3 {
        let y = self.point.y();
        Matrix3::from_rows(&[
            self.nu.transpose(),
            (-y * self.nu_x).transpose(),
            (-y * self.nu_y).transpose(),
        ])
    }

    /// Max deviation over `nu(f) = 1`, `nu(f_x) = nu(f_y) = 0`,
    /// `nu_x(f_x) = nu_y(f_y) = -e^psi`, `nu_x(f_y) = nu_y(f_x) = 0`.
    pub fn pairing_residual(&self) -> f64 {
        let g = self.point.conformal_factor();
        let scale = g.max(1.0);
        [
            (self.nu.dot(&self.f) - 1.0).abs(),
            self.nu.dot(&self.f_x).abs(),
            self.nu.dot(&self.f_y).abs(),
            (self.nu_x.dot(&self.f_x) + g).abs() / scale,
            self.nu_x.dot(&self.f_y).abs() / scale,
            self.nu_y.dot(&self.f_x).abs() / scale,
            (self.nu_y.dot(&self.f_y) + g).abs() / scale,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn solve_conormal(z: &HalfPlanePoint) -> Result<Vec3> {
    let d = frame_at(z);
    let m = Matrix3::from_rows(&[d.f.transpose(), d.f_x.transpose(), d.f_y.transpose()]);
    m.lu()
        .solve(&Vec3::new(1.0, 0.0, 0.0))
        .ok_or(GeomError::SingularFrame)
}

/// Conormal by a linear solve of `nu(f) = 1`, `nu(f_x) = nu(f_y) = 0`, with
/// `nu_x`, `nu_y` by central differences of the solve.
pub fn conormal_at(z: &HalfPlanePoint, step: f64) -> Result<DualFrame> {
    if !(step > 0.0) || z.y() - step <= 0.0 {
        return Err(GeomError::StencilOutsideChart { y: z.y(), step });
    }
    let d = frame_at(z);
    let nu = solve_conormal(z)?;
    let nu_x = (solve_conormal(&z.offset(step, 0.0)?)? - solve_conormal(&z.offset(-step, 0.0)?)?)
        * (0.5 / step);
    let nu_y = (solve_conormal(&z.offset(0.0, step)?)? - solve_conormal(&z.offset(0.0, -step)?)?)
        * (0.5 / step);
    Ok(DualFrame {
        point: *z,
        a: d.frame_matrix(),
        f: d.f,
        f_x: d.f_x,
        f_y: d.f_y,
        nu,
        nu_x,
        nu_y,
    })
}

/// Closed form on the hyperboloid: `nu = eta f`, hence `nu_x = eta f_x`,
/// `nu_y = eta f_y`.
pub fn conormal_analytic(z: &HalfPlanePoint) -> DualFrame {
    let d = frame_at(z);
    let e = eta();
    DualFrame {
        point: *z,
        a: d.frame_matrix(),
        f: d.f,
        f_x: d.f_x,
        f_y: d.f_y,
        nu: e * d.f,
        nu_x: e * d.f_x,
        nu_y: e * d.f_y,
    }
}

/// Residuals of the dual-metric identities at `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualMetricResidual {
    /// `|h*(nu) - h^{-1}(f)|`, relative to `max(1, |h^{-1}|)`.
    pub dual_vs_inverse: f64,
    /// `|A A^T - h^{-1}|`, relative to `max(1, |h^{-1}|)`.
    pub frame_vs_inverse: f64,
    /// `|A^T h A - I|`.
    pub orthonormality: f64,
    /// `|sigma*(nu) - 1|`, the dual hyperboloid condition.
    pub dual_level: f64,
}

impl DualMetricResidual {
    pub fn max(&self) -> f64 {
        self.dual_vs_inverse
            .max(self.frame_vs_inverse)
            .max(self.orthonormality)
            .max(self.dual_level)
    }
}

pub fn verify_dual_metric(z: &HalfPlanePoint) -> Result<DualMetricResidual> {
    let d = conormal_analytic(z);
    let p = ConePoint::from_vec(&d.f)?;
    let nu = ConePoint::from_vec(&d.nu)?;
    let h = cheng_yau_metric(&p);
    let h_inv = *cheng_yau_metric_inverse(&p).matrix();
    let h_dual = *cheng_yau_metric(&nu).matrix();
    let scale = max_abs(&h_inv).max(1.0);
    Ok(DualMetricResidual {
        dual_vs_inverse: max_abs(&(h_dual - h_inv)) / scale,
        frame_vs_inverse: max_abs(&(d.a * d.a.transpose() - h_inv)) / scale,
        orthonormality: max_abs(&(d.a.transpose() * h.matrix() * d.a - Mat3::identity())),
        dual_level: (characteristic_function(&nu) - 1.0).abs(),
    })
}

/// `l*` at the conormal of `f(z)`: `tr(A H*^{-1} B^T H*)` with `H* = h(nu)`
/// from the closed form in dual coordinates.
pub fn dual_fiber_metric(z: &HalfPlanePoint, a: &CMat3, b: &CMat3) -> Result<Complex64> {
    let nu = ConePoint::from_vec(&(eta() * frame_at(z).f))?;
    let hs = complexify(cheng_yau_metric(&nu).matrix());
    let hs_inv = complexify(cheng_yau_metric_inverse(&nu).matrix());
    Ok((a * hs_inv * b.transpose() * hs).trace())
}

/// `|l*(-A^T, -B^T) - l(A, B)| / max(1, |l(A, B)|)`.
pub fn dual_fiber_metric_isometry(z: &HalfPlanePoint, a: &Sl3Element, b: &Sl3Element) -> Result<f64> {
    let ctx = FiberMetricContext::at(z);
    let l = crate::bundle::fiber_metric(&ctx, a, b);
    let ta = complexify(&-a.matrix().transpose());
    let tb = complexify(&-b.matrix().transpose());
    let ls = dual_fiber_metric(z, &ta, &tb)?;
    Ok((ls - Complex64::new(l, 0.0)).norm() / l.abs().max(1.0))
}

/// `tau*`: the Lie coefficient `A` of a form becomes `-A^T`.
pub fn dual_transport(w: &LieValuedOneForm) -> LieValuedOneForm {
    w.map(|_, a| -a.transpose())
}

/// `sharp*` built from `l*`: coefficients `l*(A, E_j)` over the same basis.
/// Evaluated through the frame as `<F^T A F^{-T}, F^T E_j F^{-T}>`, which
/// equals the trace form with `H* = F F^T`.
pub fn dual_sharp_at(ctx: &FiberMetricContext, a: &CMat3) -> DualBasisCovector {
    let f = complexify(&ctx.frame);
    let f_inv_t = complexify(&ctx.frame_inv.transpose());
    let conj = |m: &CMat3| f.transpose() * m * f_inv_t;
    let fa = conj(a);
    let b = basis().map(|e| conj(e.complexify().matrix()));
    DualBasisCovector::from_fn(|j, _| frobenius_bilinear(&fa, &b[j]))
}

/// Closed and coclosed (for `delta*`) residuals of `tau* w`.
pub fn transported_residuals(w: &LieValuedOneForm, z: &HalfPlanePoint, step: f64) -> Result<(f64, f64)> {
    let t = dual_transport(w);
    let closed = max_abs_c(&exterior_derivative_numeric(&t, z, step)?);
    let sharp: OneForm<DualBasisCovector> =
        t.map(|z, a| dual_sharp_at(&FiberMetricContext::at(z), a));
    let coclosed = exterior_derivative_numeric(&sharp.hodge_star(), z, step)?;
    Ok((closed, coclosed.iter().fold(0.0, |m, v| m.max(v.norm()))))
}

/// `|g~(tau* w, tau* w') - g~(w, w')|` for the harmonic family, relative to
/// `max(1, |g~(w, w')|)`.
pub fn pairing_preservation(
    phi: &QuadraticDifferentialSample,
    psi: &QuadraticDifferentialSample,
    z: &HalfPlanePoint,
) -> Result<f64> {
    let ctx = FiberMetricContext::at(z);
    let a = holomorphic_tangent_matrix(z);
    let l = crate::bundle::fiber_metric_complex(&ctx, &a, &a);
    let ta = -a.matrix().transpose();
    let ls = dual_fiber_metric(z, &ta, &ta.map(|v| v.conj()))?;
    let before = loftin_integrand_with(phi, psi, z, l);
    let after = loftin_integrand_with(phi, psi, z, ls);
    Ok((after - before).abs() / before.abs().max(1.0))
}
