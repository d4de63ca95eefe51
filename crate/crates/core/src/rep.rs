//! The irreducible representation `Phi: PSL(2,R) -> SL(3,R)` with image
//! `SO(2,1)`, its derivative `sl(2,R) -> so(2,1)`, and the `Phi`-equivariance
//! of the hyperboloid parametrization.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::chart::{mobius, parametrize_hyperboloid, HalfPlanePoint};
use crate::error::{GeomError, Result};
use crate::linalg::{commutator, eta, CMat3, Mat3};

/// Tolerance on `|trace|` accepted by [`Sl3Element::new`].
pub const TRACE_TOL: f64 = 1e-12;
/// Tolerance on `|det - 1|` for group elements.
pub const DET_TOL: f64 = 1e-9;

/// `[[a, b], [c, -a]]` in `sl(2,R)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2Element {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Sl2Element {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// `[[0, 1], [0, 0]]`
    pub const fn raising() -> Self {
        Self::new(0.0, 1.0, 0.0)
    }

    /// `[[1/2, 0], [0, -1/2]]`
    pub const fn half_cartan() -> Self {
        Self::new(0.5, 0.0, 0.0)
    }

    /// `[[0, 0], [1, 0]]`
    pub const fn lowering() -> Self {
        Self::new(0.0, 0.0, 1.0)
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.a, self.b, self.c, -self.a)
    }

    pub fn bracket(&self, other: &Sl2Element) -> Sl2Element {
        let m = self.matrix() * other.matrix() - other.matrix() * self.matrix();
        Sl2Element::new(m[(0, 0)], m[(0, 1)], m[(1, 0)])
    }

    /// Matrix exponential. `X^2 = (a^2 + bc) I`, so the series sums to
    /// `cosh(s) I + sinh(s)/s X` with `s^2 = a^2 + bc` (or the trigonometric
    /// version when `s^2 < 0`).
    pub fn exp(&self) -> Matrix2<f64> {
        let d = self.a * self.a + self.b * self.c;
        let (c0, c1) = if d > 1e-16 {
            let s = d.sqrt();
            (s.cosh(), s.sinh() / s)
        } else if d < -1e-16 {
            let s = (-d).sqrt();
            (s.cos(), s.sin() / s)
        } else {
            (1.0 + d / 2.0, 1.0 + d / 6.0)
        };
        Matrix2::identity() * c0 + self.matrix() * c1
    }
}

/// A real traceless 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl3Element(Mat3);

impl Sl3Element {
    pub fn new(m: Mat3) -> Result<Self> {
        let tr = m.trace();
        if !(tr.abs() <= TRACE_TOL) {
            return Err(GeomError::NotTraceless(tr));
        }
        Ok(Self(m))
    }

    /// Projects an arbitrary matrix onto `sl(3,R)` by removing `tr/3` from
    /// the diagonal.
    pub fn project(m: Mat3) -> Self {
        let s = m.trace() / 3.0;
        Self(m - Mat3::identity() * s)
    }

    pub fn zero() -> Self {
        Self(Mat3::zeros())
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn bracket(&self, other: &Sl3Element) -> Sl3Element {
        Sl3Element(commutator(&self.0, &other.0))
    }

    /// `-A^T`, the action of the dual tangent map on Lie algebra values.
    pub fn neg_transpose(&self) -> Sl3Element {
        Sl3Element(-self.0.transpose())
    }

    /// `Ad(g) A = g A g^{-1}`.
    pub fn conjugate_by(&self, g: &GroupElement3) -> Sl3Element {
        Sl3Element(g.0 * self.0 * g.inverse_matrix())
    }

    pub fn complexify(&self) -> CSl3Element {
        CSl3Element(crate::linalg::complexify(&self.0))
    }
}

impl Add for Sl3Element {
    type Output = Sl3Element;
    fn add(self, rhs: Self) -> Self {
        Sl3Element(self.0 + rhs.0)
    }
}

impl Sub for Sl3Element {
    type Output = Sl3Element;
    fn sub(self, rhs: Self) -> Self {
        Sl3Element(self.0 - rhs.0)
    }
}

impl Neg for Sl3Element {
    type Output = Sl3Element;
    fn neg(self) -> Self {
        Sl3Element(-self.0)
    }
}

impl Mul<f64> for Sl3Element {
    type Output = Sl3Element;
    fn mul(self, rhs: f64) -> Self {
        Sl3Element(self.0 * rhs)
    }
}

/// A complex traceless 3x3 matrix, an element of `sl(3,C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CSl3Element(CMat3);

impl CSl3Element {
    pub fn new(m: CMat3) -> Result<Self> {
        let tr = m.trace();
        if !(tr.norm() <= TRACE_TOL) {
            return Err(GeomError::NotTraceless(tr.norm()));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &CMat3 {
        &self.0
    }

    pub fn conj(&self) -> CSl3Element {
        CSl3Element(self.0.map(|v| v.conj()))
    }

    pub fn neg_transpose(&self) -> CSl3Element {
        CSl3Element(-self.0.transpose())
    }

    pub fn scale(&self, s: Complex64) -> CSl3Element {
        CSl3Element(self.0 * s)
    }

    pub fn real_part(&self) -> Mat3 {
        crate::linalg::real_part(&self.0)
    }
}

impl Add for CSl3Element {
    type Output = CSl3Element;
    fn add(self, rhs: Self) -> Self {
        CSl3Element(self.0 + rhs.0)
    }
}

impl Sub for CSl3Element {
    type Output = CSl3Element;
    fn sub(self, rhs: Self) -> Self {
        CSl3Element(self.0 - rhs.0)
    }
}

/// An element of `SL(3,R)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement3(Mat3);

impl GroupElement3 {
    pub fn new(m: Mat3) -> Result<Self> {
        let det = m.determinant();
        if !((det - 1.0).abs() <= DET_TOL) {
            return Err(GeomError::NotUnimodular(det));
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Mat3::identity())
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn compose(&self, other: &GroupElement3) -> GroupElement3 {
        GroupElement3(self.0 * other.0)
    }

    /// Inverse. For elements of `SO(2,1)` this is `eta M^T eta`, which is
    /// exact; other elements fall back to a general inverse.
    pub fn inverse_matrix(&self) -> Mat3 {
        let e = eta();
        let candidate = e * self.0.transpose() * e;
        if ((candidate * self.0) - Mat3::identity()).abs().max() < 1e-12 {
            candidate
        } else {
            self.0.try_inverse().expect("determinant is 1")
        }
    }

    pub fn inverse(&self) -> GroupElement3 {
        GroupElement3(self.inverse_matrix())
    }

    /// Contragredient `(M^T)^{-1}`, the dual representation on `R_3`.
    pub fn contragredient(&self) -> GroupElement3 {
        GroupElement3(self.inverse_matrix().transpose())
    }

    /// `|M^T eta M - eta|_max`, zero for members of `SO(2,1)`.
    pub fn so21_defect(&self) -> f64 {
        let e = eta();
        (self.0.transpose() * e * self.0 - e).abs().max()
    }
}

fn check_unimodular(a: &Matrix2<f64>) -> Result<()> {
    let det = a.determinant();
    if !((det - 1.0).abs() < DET_TOL) {
        return Err(GeomError::NotUnimodular(det));
    }
    Ok(())
}

/// `Phi(A)` for `A = [[a, b], [c, d]]` with `ad - bc = 1`.
pub fn phi_group(m: &Matrix2<f64>) -> Result<GroupElement3> {
    check_unimodular(m)?;
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let (a2, b2, c2, d2) = (a * a, b * b, c * c, d * d);
    Ok(GroupElement3(Mat3::new(
        a * d + b * c,
        a * c - b * d,
        a * c + b * d,
        a * b - c * d,
        (a2 - b2 - c2 + d2) / 2.0,
        (a2 + b2 - c2 - d2) / 2.0,
        a * b + c * d,
        (a2 - b2 + c2 - d2) / 2.0,
        (a2 + b2 + c2 + d2) / 2.0,
    )))
}

/// Derivative of [`phi_group`] at the identity:
/// `[[0, c-b, c+b], [b-c, 0, 2a], [b+c, 2a, 0]]`.
pub fn phi_algebra(x: &Sl2Element) -> Sl3Element {
    let (a, b, c) = (x.a, x.b, x.c);
    Sl3Element(Mat3::new(
        0.0,
        c - b,
        c + b,
        b - c,
        0.0,
        2.0 * a,
        b + c,
        2.0 * a,
        0.0,
    ))
}

/// Complex-linear extension of [`phi_algebra`] to `sl(2,C)`.
pub fn phi_algebra_complex(a: Complex64, b: Complex64, c: Complex64) -> CSl3Element {
    let zero = Complex64::new(0.0, 0.0);
    CSl3Element(CMat3::new(
        zero,
        c - b,
        c + b,
        b - c,
        zero,
        a * 2.0,
        b + c,
        a * 2.0,
        zero,
    ))
}

/// `|f(A z) - Phi(A) f(z)|`, Euclidean norm in R^3.
pub fn verify_equivariance(a: &Matrix2<f64>, z: &HalfPlanePoint) -> Result<f64> {
    let g = phi_group(a)?;
    let w = mobius(a, z)?;
    let lhs = parametrize_hyperboloid(&w).coords();
    let rhs = g.matrix() * parametrize_hyperboloid(z).coords();
    Ok((lhs - rhs).norm())
}

fn unit(i: usize, j: usize) -> Mat3 {
    let mut m = Mat3::zeros();
    m[(i, j)] = 1.0;
    m
}

/// The basis `E1..E8` of `sl(3,R)` used for dual coordinates.
///
/// `E1 = Phi(raising)`, `E2 = Phi(half_cartan)`, `E3 = Phi(lowering)`,
/// `E4 = e12`, `E5 = e13`, `E8 = e23`, and the diagonal completion
/// `E6 = diag(1, -1, 0)`, `E7 = diag(0, 1, -1)`.
pub fn basis() -> [Sl3Element; 8] {
    [
        phi_algebra(&Sl2Element::raising()),
        phi_algebra(&Sl2Element::half_cartan()),
        phi_algebra(&Sl2Element::lowering()),
        Sl3Element(unit(0, 1)),
        Sl3Element(unit(0, 2)),
        Sl3Element(unit(0, 0) - unit(1, 1)),
        Sl3Element(unit(1, 1) - unit(2, 2)),
        Sl3Element(unit(1, 2)),
    ]
}
