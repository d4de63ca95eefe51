//! The fiber metric `l = h (x) h*` on `sl(3,R)` and its complexification.
//!
//! With column-vector conventions the pairing is
//! `l_p(A, B) = tr(A H^{-1} B^T H)`, `H` the Cheng-Yau matrix at `p`.
//! Writing `H^{-1} = F F^T` for the `h`-orthonormal frame `F` of the chart
//! turns this into the Frobenius product of `F^{-1} A F` and `F^{-1} B F`,
//! which is how it is evaluated here. The four-matrix trace is kept as
//! [`fiber_metric_trace`] for cross-checking.

use num_complex::Complex64;

use crate::chart::{frame_at, hyperboloid_to_halfplane, HalfPlanePoint};
use crate::cone::{cheng_yau_metric, cheng_yau_metric_inverse, ConePoint, MetricTensor3};
use crate::linalg::{complexify, eta, frobenius, frobenius_bilinear, frobenius_sesq, CMat3, Mat3};
use crate::rep::{CSl3Element, Sl3Element};

/// Everything needed to evaluate `l` at `f(z)`.
#[derive(Debug, Clone, Copy)]
pub struct FiberMetricContext {
    pub point: HalfPlanePoint,
    pub cone_point: ConePoint,
    pub h: MetricTensor3,
    pub h_inv: MetricTensor3,
    /// Columns `f`, `y f_x`, `y f_y`; satisfies `F^T h F = I`.
    pub frame: Mat3,
    /// `J F^T eta` with `J = diag(1, -1, -1)`, the exact inverse of `frame`.
    pub frame_inv: Mat3,
}

impl FiberMetricContext {
    pub fn at(z: &HalfPlanePoint) -> Self {
        let data = frame_at(z);
        let frame = data.frame_matrix();
        let j = Mat3::from_diagonal(&crate::linalg::Vec3::new(1.0, -1.0, -1.0));
        let frame_inv = j * frame.transpose() * eta();
        let cone_point = ConePoint::from_vec(&data.f).expect("f(z) lies on H");
        Self {
            point: *z,
            cone_point,
            h: cheng_yau_metric(&cone_point),
            h_inv: cheng_yau_metric_inverse(&cone_point),
            frame,
            frame_inv,
        }
    }

    /// Context at an arbitrary cone point. `l` only depends on the ray
    /// through `p`, since `H(sp) = H(p)/s^2`, so `p` is first scaled onto `H`.
    pub fn at_cone_point(p: &ConePoint) -> Self {
        Self::at(&hyperboloid_to_halfplane(&p.to_hyperboloid()))
    }

    /// `F^{-1} A F`, the matrix of `A` in the orthonormal frame.
    pub fn in_frame(&self, a: &Mat3) -> Mat3 {
        self.frame_inv * a * self.frame
    }

    pub fn in_frame_c(&self, a: &CMat3) -> CMat3 {
        complexify(&self.frame_inv) * a * complexify(&self.frame)
    }
}

/// `l(A, B)` for real `A`, `B`.
pub fn fiber_metric(ctx: &FiberMetricContext, a: &Sl3Element, b: &Sl3Element) -> f64 {
    frobenius(&ctx.in_frame(a.matrix()), &ctx.in_frame(b.matrix()))
}

/// `tr(A H^{-1} B^T H)` evaluated literally.
pub fn fiber_metric_trace(ctx: &FiberMetricContext, a: &Mat3, b: &Mat3) -> f64 {
    (a * ctx.h_inv.matrix() * b.transpose() * ctx.h.matrix()).trace()
}

/// Sesquilinear extension `tr(A H^{-1} conj(B)^T H)`, conjugate-linear in `B`.
pub fn fiber_metric_complex(ctx: &FiberMetricContext, a: &CSl3Element, b: &CSl3Element) -> Complex64 {
    frobenius_sesq(&ctx.in_frame_c(a.matrix()), &ctx.in_frame_c(b.matrix()))
}

/// Complex-bilinear extension `tr(A H^{-1} B^T H)`.
pub fn fiber_metric_bilinear(ctx: &FiberMetricContext, a: &CMat3, b: &CMat3) -> Complex64 {
    frobenius_bilinear(&ctx.in_frame_c(a), &ctx.in_frame_c(b))
}

/// `Phi_C([[-z, z^2], [-1, z]])`, the `sl(3,C)` value of the harmonic
/// family at `z`.
pub fn holomorphic_tangent_matrix(z: &HalfPlanePoint) -> CSl3Element {
    tangent_matrix_at(z.z())
}

pub(crate) fn tangent_matrix_at(z: Complex64) -> CSl3Element {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let z2 = z * z;
    CSl3Element::new(CMat3::new(
        zero,
        -z2 - one,
        z2 - one,
        z2 + one,
        zero,
        -z * 2.0,
        z2 - one,
        -z * 2.0,
        zero,
    ))
    .expect("zero diagonal")
}
