//! Fixed-size matrix aliases and a few helpers shared by every module.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

pub type Mat3 = Matrix3<f64>;
pub type Vec3 = Vector3<f64>;
pub type CMat3 = Matrix3<Complex64>;

/// The Lorentz form `-x1^2 - x2^2 + x3^2` preserved by `SO(2,1)`.
pub fn eta() -> Mat3 {
    Mat3::from_diagonal(&Vec3::new(-1.0, -1.0, 1.0))
}

pub fn lorentz_quadratic(v: &Vec3) -> f64 {
    v.z * v.z - v.x * v.x - v.y * v.y
}

pub fn complexify(m: &Mat3) -> CMat3 {
    m.map(|v| Complex64::new(v, 0.0))
}

pub fn real_part(m: &CMat3) -> Mat3 {
    m.map(|v| v.re)
}

pub fn max_abs(m: &Mat3) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

pub fn max_abs_c(m: &CMat3) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.norm()))
}

pub fn commutator(a: &Mat3, b: &Mat3) -> Mat3 {
    a * b - b * a
}

/// Entrywise (Frobenius) inner product `sum a_ij b_ij`.
pub fn frobenius(a: &Mat3, b: &Mat3) -> f64 {
    a.component_mul(b).sum()
}

/// Sesquilinear Frobenius product `sum a_ij conj(b_ij)`.
pub fn frobenius_sesq(a: &CMat3, b: &CMat3) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

/// Complex-bilinear Frobenius product `sum a_ij b_ij`.
pub fn frobenius_bilinear(a: &CMat3, b: &CMat3) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Relative difference `|a - b| / max(1, |b|)`.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
