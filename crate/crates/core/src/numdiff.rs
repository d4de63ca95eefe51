//! Central finite differences. These are the independent oracles that the
//! closed-form derivatives are checked against.

use std::ops::{Mul, Sub};

use crate::linalg::{Mat3, Vec3};

/// `(g(t + h) - g(t - h)) / 2h` for any value type closed under subtraction
/// and real scaling.
pub fn central<V, F>(g: F, t: f64, h: f64) -> V
where
    F: Fn(f64) -> V,
    V: Sub<Output = V> + Mul<f64, Output = V>,
{
    (g(t + h) - g(t - h)) * (0.5 / h)
}

/// Hessian of a scalar function on R^3 by the standard central stencil.
///
/// Diagonal entries use the three-point second difference; mixed entries use
/// the four-point cross stencil. The result is symmetrized.
pub fn hessian<F>(f: F, at: &Vec3, h: f64) -> Mat3
where
    F: Fn(&Vec3) -> f64,
{
    let mut out = Mat3::zeros();
    let f0 = f(at);
    for i in 0..3 {
        let mut ei = Vec3::zeros();
        ei[i] = h;
        out[(i, i)] = (f(&(at + ei)) - 2.0 * f0 + f(&(at - ei))) / (h * h);
        for j in (i + 1)..3 {
            let mut ej = Vec3::zeros();
            ej[j] = h;
            let v = (f(&(at + ei + ej)) - f(&(at + ei - ej)) - f(&(at - ei + ej))
                + f(&(at - ei - ej)))
                / (4.0 * h * h);
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
    }
    out
}
