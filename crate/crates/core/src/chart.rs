//! Charts on the hyperboloid `H = {x3^2 - x1^2 - x2^2 = 1}`: the Klein disk
//! `Omega`, the upper half-plane, the isometries between them, and the
//! affine-sphere structure equations of `H`.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::Serialize;

use crate::cone::{cheng_yau_metric, ConePoint, MetricTensor3};
use crate::error::{GeomError, Result};
use crate::linalg::Vec3;

/// A point of the open unit disk `t1^2 + t2^2 < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskPoint {
    t1: f64,
    t2: f64,
}

impl DiskPoint {
    pub fn new(t1: f64, t2: f64) -> Result<Self> {
        let r2 = t1 * t1 + t2 * t2;
        if !(r2 < 1.0) {
            return Err(GeomError::OutsideDisk { t1, t2 });
        }
        Ok(Self { t1, t2 })
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }
}

/// A point `z = x + iy` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlanePoint {
    x: f64,
    y: f64,
}

impl HalfPlanePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(GeomError::OutsideHalfPlane { x, y });
        }
        Ok(Self { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    /// The base point `i`.
    pub fn i() -> Self {
        Self { x: 0.0, y: 1.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Shifted copy, failing if the result leaves the chart.
    pub fn offset(&self, dx: f64, dy: f64) -> Result<Self> {
        Self::new(self.x + dx, self.y + dy)
    }

    /// Conformal factor `e^psi = 1/y^2` of the hyperbolic metric.
    pub fn conformal_factor(&self) -> f64 {
        1.0 / (self.y * self.y)
    }
}

/// The isometry `F: Omega -> H^2`,
/// `F(t1, t2) = t1/(1 - t2) + i sqrt(1 - t1^2 - t2^2)/(1 - t2)`.
pub fn klein_to_halfplane(q: &DiskPoint) -> HalfPlanePoint {
    let s = (1.0 - q.t1 * q.t1 - q.t2 * q.t2).sqrt();
    let d = 1.0 - q.t2;
    HalfPlanePoint {
        x: q.t1 / d,
        y: s / d,
    }
}

/// `F^{-1}(x, y) = (2x / (x^2 + y^2 + 1), 1 - 2 / (x^2 + y^2 + 1))`.
pub fn halfplane_to_klein(z: &HalfPlanePoint) -> DiskPoint {
    let n = z.x * z.x + z.y * z.y + 1.0;
    DiskPoint {
        t1: 2.0 * z.x / n,
        t2: 1.0 - 2.0 / n,
    }
}

/// Jacobian `d(x, y) / d(t1, t2)` of [`klein_to_halfplane`], rows `dx`, `dy`.
pub fn klein_jacobian(q: &DiskPoint) -> Matrix2<f64> {
    let (t1, t2) = (q.t1, q.t2);
    let s = (1.0 - t1 * t1 - t2 * t2).sqrt();
    let d = 1.0 - t2;
    Matrix2::new(
        1.0 / d,
        t1 / (d * d),
        -t1 / (d * s),
        (1.0 - t1 * t1 - t2) / (d * d * s),
    )
}

/// The Blaschke metric `-(1/u) u_ij dt^i dt^j` on `Omega`, with
/// `u = -sqrt(1 - t1^2 - t2^2)` the solution of `det(u_ij) = u^{-4}`.
pub fn blaschke_metric_disk(q: &DiskPoint) -> Matrix2<f64> {
    let (t1, t2) = (q.t1, q.t2);
    let s2 = 1.0 - t1 * t1 - t2 * t2;
    let s4 = s2 * s2;
    Matrix2::new(
        (1.0 - t2 * t2) / s4,
        t1 * t2 / s4,
        t1 * t2 / s4,
        (1.0 - t1 * t1) / s4,
    )
}

/// `G(t1, t2) = -(1/u)(t1, t2, 1)`, the radial graph of `-1/u`.
pub fn disk_to_hyperboloid(q: &DiskPoint) -> ConePoint {
    let s = (1.0 - q.t1 * q.t1 - q.t2 * q.t2).sqrt();
    ConePoint::new(q.t1 / s, q.t2 / s, 1.0 / s).expect("G maps the disk into the cone")
}

/// `f(z) = (x/y, (x^2 + y^2 - 1)/2y, (x^2 + y^2 + 1)/2y)`.
pub fn parametrize_hyperboloid(z: &HalfPlanePoint) -> ConePoint {
    let v = hyperboloid_vec(z);
    ConePoint::new(v.x, v.y, v.z).expect("f maps the half-plane onto H")
}

pub(crate) fn hyperboloid_vec(z: &HalfPlanePoint) -> Vec3 {
    let (x, y) = (z.x, z.y);
    let r = x * x + y * y;
    Vec3::new(x / y, (r - 1.0) / (2.0 * y), (r + 1.0) / (2.0 * y))
}

/// Inverse of [`parametrize_hyperboloid`] on `H`; for a general cone point
/// the ray through it is used.
pub fn hyperboloid_to_halfplane(p: &ConePoint) -> HalfPlanePoint {
    let q = p.to_hyperboloid();
    let y = 1.0 / (q.x3() - q.x2());
    HalfPlanePoint { x: q.x1() * y, y }
}

/// The parametrization `f` at a point together with its first derivatives
/// and the conformal factor of the affine metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlaschkeData {
    pub point: HalfPlanePoint,
    /// `e^psi = 1/y^2`.
    pub conformal_factor: f64,
    pub f: Vec3,
    pub f_x: Vec3,
    pub f_y: Vec3,
}

impl BlaschkeData {
    /// Matrix with columns `(f, e^{-psi/2} f_x, e^{-psi/2} f_y)`; it is
    /// orthonormal for the Cheng-Yau metric.
    pub fn frame_matrix(&self) -> crate::linalg::Mat3 {
        let y = self.point.y;
        crate::linalg::Mat3::from_columns(&[self.f, self.f_x * y, self.f_y * y])
    }

    /// The affine metric in the coordinates `(x, y)`, computed as the
    /// restriction of the Cheng-Yau metric to the tangent plane of `H`.
    pub fn induced_metric(&self) -> Matrix2<f64> {
        let h = cheng_yau_metric(&ConePoint::from_vec(&self.f).expect("f lies on H"));
        let g = |u: &Vec3, v: &Vec3| h.apply(u, v);
        Matrix2::new(
            g(&self.f_x, &self.f_x),
            g(&self.f_x, &self.f_y),
            g(&self.f_y, &self.f_x),
            g(&self.f_y, &self.f_y),
        )
    }
}

/// Closed-form `f`, `f_x`, `f_y` at `z`.
pub fn frame_at(z: &HalfPlanePoint) -> BlaschkeData {
    let (x, y) = (z.x, z.y);
    let y2 = y * y;
    BlaschkeData {
        point: *z,
        conformal_factor: 1.0 / y2,
        f: hyperboloid_vec(z),
        f_x: Vec3::new(1.0 / y, x / y, x / y),
        f_y: Vec3::new(
            -x / y2,
            (y2 - x * x + 1.0) / (2.0 * y2),
            (y2 - x * x - 1.0) / (2.0 * y2),
        ),
    }
}

/// Second partial derivatives `f_xx`, `f_xy`, `f_yy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondDerivatives {
    pub xx: Vec3,
    pub xy: Vec3,
    pub yy: Vec3,
}

pub fn second_derivatives(z: &HalfPlanePoint) -> SecondDerivatives {
    let (x, y) = (z.x, z.y);
    let y2 = y * y;
    let y3 = y2 * y;
    SecondDerivatives {
        xx: Vec3::new(0.0, 1.0 / y, 1.0 / y),
        xy: Vec3::new(-1.0 / y2, -x / y2, -x / y2),
        yy: Vec3::new(2.0 * x / y3, (x * x - 1.0) / y3, (x * x + 1.0) / y3),
    }
}

/// Second derivatives from central differences of the closed-form first
/// derivatives.
pub fn second_derivatives_fd(z: &HalfPlanePoint, step: f64) -> Result<SecondDerivatives> {
    if z.y - step <= 0.0 {
        return Err(GeomError::StencilOutsideChart { y: z.y, step });
    }
    let at = |dx: f64, dy: f64| frame_at(&HalfPlanePoint { x: z.x + dx, y: z.y + dy });
    let (xp, xm) = (at(step, 0.0), at(-step, 0.0));
    let (yp, ym) = (at(0.0, step), at(0.0, -step));
    let inv = 0.5 / step;
    Ok(SecondDerivatives {
        xx: (xp.f_x - xm.f_x) * inv,
        xy: (yp.f_x - ym.f_x) * inv,
        yy: (yp.f_y - ym.f_y) * inv,
    })
}

/// Residual of `D_X Y = nabla_X Y + g(X, Y) f` over `X, Y in {d_x, d_y}`, with
/// `nabla` the Levi-Civita connection of `(1/y^2)|dz|^2`. The Blaschke
/// connection equals `nabla` exactly when the Pick form vanishes, so a zero
/// residual certifies both.
pub fn verify_structure_equation(z: &HalfPlanePoint) -> f64 {
    structure_residual(z, &second_derivatives(z))
}

/// Same as [`verify_structure_equation`] with finite-difference second
/// derivatives.
pub fn verify_structure_equation_fd(z: &HalfPlanePoint, step: f64) -> Result<f64> {
    Ok(structure_residual(z, &second_derivatives_fd(z, step)?))
}

fn structure_residual(z: &HalfPlanePoint, d2: &SecondDerivatives) -> f64 {
    let fr = frame_at(z);
    let y = z.y;
    let g = fr.conformal_factor;
    // Christoffel symbols of (1/y^2)(dx^2 + dy^2):
    // G^y_xx = 1/y, G^x_xy = -1/y, G^y_yy = -1/y, all others zero.
    let rxx = d2.xx - fr.f_y / y - fr.f * g;
    let rxy = d2.xy + fr.f_x / y;
    let ryy = d2.yy + fr.f_y / y - fr.f * g;
    rxx.amax().max(rxy.amax()).max(ryy.amax())
}

/// `z -> (a z + b) / (c z + d)`; `m` must have determinant 1.
pub fn mobius(m: &Matrix2<f64>, z: &HalfPlanePoint) -> Result<HalfPlanePoint> {
    let det = m.determinant();
    if (det - 1.0).abs() > 1e-9 {
        return Err(GeomError::NotUnimodular(det));
    }
    let zc = z.z();
    let den = m[(1, 0)] * zc + m[(1, 1)];
    if den.norm() == 0.0 {
        return Err(GeomError::MobiusPole);
    }
    HalfPlanePoint::from_complex((m[(0, 0)] * zc + m[(0, 1)]) / den)
}

/// Metric tensor of `h` at `f(z)` written directly in half-plane coordinates.
pub fn cheng_yau_metric_halfplane(z: &HalfPlanePoint) -> crate::linalg::Mat3 {
    let (x, y) = (z.x, z.y);
    let y2 = y * y;
    let r = x * x + y2;
    let (m, p) = (r - 1.0, r + 1.0);
    crate::linalg::Mat3::new(
        2.0 * x * x / y2 + 1.0,
        x * m / y2,
        -x * p / y2,
        x * m / y2,
        m * m / (2.0 * y2) + 1.0,
        -m * p / (2.0 * y2),
        -x * p / y2,
        -m * p / (2.0 * y2),
        p * p / (2.0 * y2) - 1.0,
    )
}

pub fn metric_at(z: &HalfPlanePoint) -> MetricTensor3 {
    cheng_yau_metric(&parametrize_hyperboloid(z))
}
