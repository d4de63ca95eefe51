//! The Lorentz cone `C = {x3^2 > x1^2 + x2^2, x3 > 0}`, its characteristic
//! function and the Cheng-Yau / Koszul-Vinberg metrics.
//!
//! On this cone the characteristic function `k = t^{-3/2}`, with
//! `t = x3^2 - x1^2 - x2^2`, also solves the Cheng-Yau equation
//! `det((1/3) Hess log sigma) = sigma^2`, so `sigma = k` and every metric below
//! has a closed form.

use serde::Serialize;

use crate::chart::DiskPoint;
use crate::error::{GeomError, Result};
use crate::linalg::{eta, lorentz_quadratic, Mat3, Vec3};

/// Points with `t` at or below this are rejected as lying on the boundary.
pub const BOUNDARY_EPS: f64 = 1e-12;

/// A point strictly inside the Lorentz cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConePoint {
    x1: f64,
    x2: f64,
    x3: f64,
}

impl ConePoint {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let t = x3 * x3 - x1 * x1 - x2 * x2;
        if !(x3 > 0.0) || !(t > BOUNDARY_EPS) || !t.is_finite() {
            return Err(GeomError::OutsideCone { x1, x2, x3 });
        }
        Ok(Self { x1, x2, x3 })
    }

    pub fn from_vec(v: &Vec3) -> Result<Self> {
        Self::new(v.x, v.y, v.z)
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn x3(&self) -> f64 {
        self.x3
    }

    pub fn coords(&self) -> Vec3 {
        Vec3::new(self.x1, self.x2, self.x3)
    }

    /// `t = x3^2 - x1^2 - x2^2 > 0`.
    pub fn lorentz_norm_sq(&self) -> f64 {
        lorentz_quadratic(&self.coords())
    }

    /// Radial rescaling onto the unit hyperboloid `t = 1`.
    pub fn to_hyperboloid(&self) -> ConePoint {
        let s = self.lorentz_norm_sq().sqrt();
        ConePoint {
            x1: self.x1 / s,
            x2: self.x2 / s,
            x3: self.x3 / s,
        }
    }

    /// Image under a linear map that preserves the cone (e.g. an element of
    /// `SO(2,1)` or a positive scaling).
    pub fn transform(&self, m: &Mat3) -> Result<ConePoint> {
        ConePoint::from_vec(&(m * self.coords()))
    }
}

/// Symmetric positive-definite 3x3 matrix: the value of a metric field at a
/// point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor3(Mat3);

impl MetricTensor3 {
    /// Builds the tensor from its upper triangle; the lower triangle is copied,
    /// so the result is exactly symmetric.
    pub fn from_upper(m: &Mat3) -> Self {
        let mut s = *m;
        for i in 0..3 {
            for j in 0..i {
                s[(i, j)] = m[(j, i)];
            }
        }
        MetricTensor3(s)
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn apply(&self, u: &Vec3, v: &Vec3) -> f64 {
        u.dot(&(self.0 * v))
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    pub fn scaled(&self, s: f64) -> Self {
        MetricTensor3(self.0 * s)
    }

    /// Leading principal minors, all positive for a positive-definite tensor.
    pub fn leading_minors(&self) -> [f64; 3] {
        let m = &self.0;
        let d1 = m[(0, 0)];
        let d2 = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        [d1, d2, m.determinant()]
    }

    pub fn is_positive_definite(&self) -> bool {
        self.leading_minors().iter().all(|&d| d > 0.0)
    }
}

/// `k(p) = (x3^2 - x1^2 - x2^2)^{-3/2}`.
pub fn characteristic_function(p: &ConePoint) -> f64 {
    p.lorentz_norm_sq().powf(-1.5)
}

/// The Cheng-Yau potential `(1/3) log sigma = -(1/2) log t` at an arbitrary
/// point of R^3, or `None` outside the cone. Used by the finite-difference
/// oracles, which need to evaluate off the validated type.
pub fn cheng_yau_potential(x: &Vec3) -> Option<f64> {
    let t = lorentz_quadratic(x);
    (t > 0.0 && x.z > 0.0).then(|| -0.5 * t.ln())
}

/// `h = (1/3) Hess log sigma` in closed form:
///
/// ```text
///        1   | 2 x1^2 + t   2 x1 x2      -2 x1 x3   |
/// h  =  ---  | 2 x1 x2      2 x2^2 + t   -2 x2 x3   |
///       t^2  | -2 x1 x3     -2 x2 x3     2 x3^2 - t |
/// ```
pub fn cheng_yau_metric(p: &ConePoint) -> MetricTensor3 {
    let t = p.lorentz_norm_sq();
    let (x1, x2, x3) = (p.x1, p.x2, p.x3);
    let inv = 1.0 / (t * t);
    MetricTensor3::from_upper(&Mat3::new(
        (2.0 * x1 * x1 + t) * inv,
        2.0 * x1 * x2 * inv,
        -2.0 * x1 * x3 * inv,
        0.0,
        (2.0 * x2 * x2 + t) * inv,
        -2.0 * x2 * x3 * inv,
        0.0,
        0.0,
        (2.0 * x3 * x3 - t) * inv,
    ))
}

/// Closed-form inverse of [`cheng_yau_metric`]: `h^{-1} = 2 p p^T - t eta`.
pub fn cheng_yau_metric_inverse(p: &ConePoint) -> MetricTensor3 {
    let v = p.coords();
    let t = p.lorentz_norm_sq();
    MetricTensor3::from_upper(&(2.0 * v * v.transpose() - t * eta()))
}

/// `Hess log k`, which is three times the Cheng-Yau metric on this cone.
pub fn koszul_vinberg_metric(p: &ConePoint) -> MetricTensor3 {
    cheng_yau_metric(p).scaled(3.0)
}

/// The map `[p] -> k(p)^{1/3} p` from the Klein disk to the level set
/// `k = 1`, applied to the lift `(t1, t2, 1)`.
pub fn normalize_to_level_set(q: &DiskPoint) -> ConePoint {
    let lift = ConePoint {
        x1: q.t1(),
        x2: q.t2(),
        x3: 1.0,
    };
    let s = characteristic_function(&lift).cbrt();
    ConePoint {
        x1: s * lift.x1,
        x2: s * lift.x2,
        x3: s,
    }
}
