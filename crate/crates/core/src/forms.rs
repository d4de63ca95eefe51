//! One-forms on the half-plane chart with values in `sl(3,C)`, in its dual,
//! or in `C`: Hodge star, the metric duality `sharp`, a central-difference
//! exterior derivative, and the codifferential test `d * sharp = 0`.

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use crate::bundle::{
    fiber_metric_bilinear, fiber_metric_complex, holomorphic_tangent_matrix, FiberMetricContext,
};
use crate::chart::HalfPlanePoint;
use crate::error::{GeomError, Result};
use crate::linalg::{max_abs_c, CMat3};
use crate::rep::basis;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Coordinates over the dual basis `E1*, ..., E8*`.
pub type DualBasisCovector = SVector<Complex64, 8>;

/// A coefficient type for one-forms.
pub trait FormCoeff:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Complex64, Output = Self> + Send + Sync
{
    fn conj(&self) -> Self;
    fn magnitude(&self) -> f64;
}

impl FormCoeff for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl<const R: usize, const C: usize> FormCoeff for SMatrix<Complex64, R, C> {
    fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }
    fn magnitude(&self) -> f64 {
        self.iter().fold(0.0_f64, |m, v| m.max(v.norm()))
    }
}

/// Pointwise value `dz (x) P + dzbar (x) Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormValue<V> {
    pub dz: V,
    pub dzbar: V,
}

impl<V: FormCoeff> FormValue<V> {
    pub fn new(dz: V, dzbar: V) -> Self {
        Self { dz, dzbar }
    }

    /// From `coeff_x dx + coeff_y dy`.
    pub fn from_real(coeff_x: V, coeff_y: V) -> Self {
        let half = Complex64::new(0.5, 0.0);
        Self {
            dz: (coeff_x - coeff_y * I) * half,
            dzbar: (coeff_x + coeff_y * I) * half,
        }
    }

    /// `(coeff_x, coeff_y)` with `dz = dx + i dy`, `dzbar = dx - i dy`.
    pub fn to_real(&self) -> (V, V) {
        (self.dz + self.dzbar, (self.dz - self.dzbar) * I)
    }

    /// `*(P dz + Q dzbar) = -i conj(Q) dz + i conj(P) dzbar`. On real forms
    /// this is `*dx = dy`, `*dy = -dx`.
    pub fn star(&self) -> Self {
        Self {
            dz: self.dzbar.conj() * (-I),
            dzbar: self.dz.conj() * I,
        }
    }

    pub fn map<W: FormCoeff>(&self, f: impl Fn(&V) -> W) -> FormValue<W> {
        FormValue {
            dz: f(&self.dz),
            dzbar: f(&self.dzbar),
        }
    }
}

/// `dx ^ dy` coefficient of `(a dz + b dzbar) ^ (c dz + d dzbar)`, using
/// `dz ^ dzbar = -2i dx ^ dy`.
pub fn wedge(a: &FormValue<Complex64>, b: &FormValue<Complex64>) -> Complex64 {
    (a.dz * b.dzbar - a.dzbar * b.dz) * Complex64::new(0.0, -2.0)
}

type Coefficients<V> = Arc<dyn Fn(&HalfPlanePoint) -> FormValue<V> + Send + Sync>;

/// A one-form given by closed-form coefficient functions.
#[derive(Clone)]
pub struct OneForm<V> {
    eval: Coefficients<V>,
}

impl<V: FormCoeff + 'static> OneForm<V> {
    pub fn new(f: impl Fn(&HalfPlanePoint) -> FormValue<V> + Send + Sync + 'static) -> Self {
        Self { eval: Arc::new(f) }
    }

    pub fn eval(&self, z: &HalfPlanePoint) -> FormValue<V> {
        (self.eval)(z)
    }

    pub fn hodge_star(&self) -> OneForm<V> {
        let inner = self.clone();
        OneForm::new(move |z| inner.eval(z).star())
    }

    pub fn map<W: FormCoeff + 'static>(
        &self,
        f: impl Fn(&HalfPlanePoint, &V) -> W + Send + Sync + 'static,
    ) -> OneForm<W> {
        let inner = self.clone();
        OneForm::new(move |z| {
            let v = inner.eval(z);
            FormValue::new(f(z, &v.dz), f(z, &v.dzbar))
        })
    }
}

pub type LieValuedOneForm = OneForm<CMat3>;
pub type ScalarOneForm = OneForm<Complex64>;

/// `*` on Lie-valued forms.
pub fn hodge_star_oneform(w: &LieValuedOneForm) -> LieValuedOneForm {
    w.hodge_star()
}

/// Holomorphic function `sum c_k z^k` defining `phi(z) dz^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticDifferentialSample {
    coeffs: Vec<Complex64>,
}

impl QuadraticDifferentialSample {
    /// Coefficients in increasing degree; trailing zeros are dropped before
    /// the degree is compared against `max_degree`.
    pub fn new(coeffs: Vec<Complex64>, max_degree: usize) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.len() > max_degree + 1 {
            return Err(GeomError::DegreeTooHigh {
                degree: coeffs.len() - 1,
                cap: max_degree,
            });
        }
        Ok(Self { coeffs })
    }

    pub fn real(coeffs: &[f64], max_degree: usize) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(), max_degree)
    }

    pub fn monomial(k: usize, max_degree: usize) -> Result<Self> {
        let mut c = vec![Complex64::new(0.0, 0.0); k + 1];
        c[k] = Complex64::new(1.0, 0.0);
        Self::new(c, max_degree)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `phi(z) dz (x) Phi_C([[-z, z^2], [-1, z]])`.
    pub fn harmonic_form(&self) -> LieValuedOneForm {
        let phi = self.clone();
        OneForm::new(move |z| {
            let a = holomorphic_tangent_matrix(z);
            FormValue::new(a.matrix() * phi.eval(z.z()), CMat3::zeros())
        })
    }
}

/// Coefficients `l(A, E_j)` of `sharp(A) = sum_j l(A, E_j) E_j*`, extended
/// complex-linearly in `A`.
pub fn sharp_at(ctx: &FiberMetricContext, a: &CMat3) -> DualBasisCovector {
    let b = basis().map(|e| *e.complexify().matrix());
    DualBasisCovector::from_fn(|j, _| fiber_metric_bilinear(ctx, a, &b[j]))
}

/// `sharp` applied to a one-form value at `z`.
pub fn sharp(w: &LieValuedOneForm, z: &HalfPlanePoint) -> FormValue<DualBasisCovector> {
    let ctx = FiberMetricContext::at(z);
    w.eval(z).map(|a| sharp_at(&ctx, a))
}

/// `sharp` as a form-level operator.
pub fn sharp_form(w: &LieValuedOneForm) -> OneForm<DualBasisCovector> {
    w.map(|z, a| sharp_at(&FiberMetricContext::at(z), a))
}

/// Gram matrix `[l(E_i, E_j)]` at `z`.
pub fn gram_matrix(ctx: &FiberMetricContext) -> nalgebra::SMatrix<f64, 8, 8> {
    let b = basis();
    let fb: Vec<_> = b.iter().map(|e| ctx.in_frame(e.matrix())).collect();
    nalgebra::SMatrix::<f64, 8, 8>::from_fn(|i, j| crate::linalg::frobenius(&fb[i], &fb[j]))
}

/// Condition number of the Gram matrix in the 2-norm.
pub fn gram_condition(ctx: &FiberMetricContext) -> f64 {
    let sv = gram_matrix(ctx).singular_values();
    sv.max() / sv.min()
}

/// Coordinates of `A` over `E1..E8`.
pub fn basis_coordinates(a: &CMat3) -> SVector<Complex64, 8> {
    let b = basis();
    let m = nalgebra::SMatrix::<f64, 9, 8>::from_fn(|r, c| b[c].matrix()[(r % 3, r / 3)]);
    let svd = m.svd(true, true);
    let solve = |rhs: SVector<f64, 9>| svd.solve(&rhs, 1e-14).expect("full column rank");
    let re = solve(SVector::<f64, 9>::from_fn(|r, _| a[(r % 3, r / 3)].re));
    let im = solve(SVector::<f64, 9>::from_fn(|r, _| a[(r % 3, r / 3)].im));
    SVector::<Complex64, 8>::from_fn(|i, _| Complex64::new(re[i], im[i]))
}

/// `sharp^{-1}`: solves `G a = c` for the basis coordinates `a` and returns
/// `sum a_i E_i`.
pub fn sharp_inverse(ctx: &FiberMetricContext, c: &DualBasisCovector) -> Result<CMat3> {
    let g = gram_matrix(ctx);
    let lu = g.lu();
    let b = basis();
    let solve = |rhs: SVector<f64, 8>| lu.solve(&rhs).ok_or(GeomError::SingularFrame);
    let re = solve(c.map(|v| v.re))?;
    let im = solve(c.map(|v| v.im))?;
    Ok((0..8).fold(CMat3::zeros(), |acc, i| {
        acc + crate::linalg::complexify(b[i].matrix()) * Complex64::new(re[i], im[i])
    }))
}

/// `d/dx coeff_y - d/dy coeff_x` by central differences.
pub fn exterior_derivative_numeric<V: FormCoeff + 'static>(
    w: &OneForm<V>,
    z: &HalfPlanePoint,
    step: f64,
) -> Result<V> {
    if !(step > 0.0) || z.y() - step <= 0.0 {
        return Err(GeomError::StencilOutsideChart { y: z.y(), step });
    }
    let at = |dx: f64, dy: f64| -> Result<(V, V)> { Ok(w.eval(&z.offset(dx, dy)?).to_real()) };
    let (_, yp) = at(step, 0.0)?;
    let (_, ym) = at(-step, 0.0)?;
    let (xp, _) = at(0.0, step)?;
    let (xm, _) = at(0.0, -step)?;
    let s = Complex64::new(0.5 / step, 0.0);
    Ok((yp - ym) * s - (xp - xm) * s)
}

/// `|d(* sharp w)|` at `z`; vanishes exactly where `delta w = 0`.
pub fn codifferential_residual(w: &LieValuedOneForm, z: &HalfPlanePoint, step: f64) -> Result<f64> {
    let s = sharp_form(w).hodge_star();
    Ok(exterior_derivative_numeric(&s, z, step)?.magnitude())
}

/// `|dw|` at `z`.
pub fn closed_residual(w: &LieValuedOneForm, z: &HalfPlanePoint, step: f64) -> Result<f64> {
    Ok(max_abs_c(&exterior_derivative_numeric(w, z, step)?))
}

/// `(|d w|, |d * sharp w|)` for the harmonic family built from `phi`.
pub fn harmonicity_check(
    phi: &QuadraticDifferentialSample,
    z: &HalfPlanePoint,
    step: f64,
) -> Result<(f64, f64)> {
    let w = phi.harmonic_form();
    Ok((closed_residual(&w, z, step)?, codifferential_residual(&w, z, step)?))
}

/// The non-harmonic probe `zbar dz (x) E1`.
pub fn nonharmonic_probe() -> LieValuedOneForm {
    let e1 = crate::linalg::complexify(basis()[0].matrix());
    OneForm::new(move |z| FormValue::new(e1 * z.z().conj(), CMat3::zeros()))
}

/// `dx ^ dy` coefficient of `Re{ (phi dz ^ *(psi dz)) l(A, A) }`,
/// `A = Phi_C([[-z, z^2], [-1, z]])`.
pub fn loftin_integrand(
    phi: &QuadraticDifferentialSample,
    psi: &QuadraticDifferentialSample,
    z: &HalfPlanePoint,
) -> f64 {
    let ctx = FiberMetricContext::at(z);
    let a = holomorphic_tangent_matrix(z);
    let l = fiber_metric_complex(&ctx, &a, &a);
    loftin_integrand_with(phi, psi, z, l)
}

pub(crate) fn loftin_integrand_with(
    phi: &QuadraticDifferentialSample,
    psi: &QuadraticDifferentialSample,
    z: &HalfPlanePoint,
    pairing: Complex64,
) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    let a = FormValue::new(phi.eval(z.z()), zero);
    let b = FormValue::new(psi.eval(z.z()), zero).star();
    (wedge(&a, &b) * pairing).re
}

/// `Re(phi conj(psi)) y^2`.
pub fn wp_integrand(
    phi: &QuadraticDifferentialSample,
    psi: &QuadraticDifferentialSample,
    z: &HalfPlanePoint,
) -> f64 {
    (phi.eval(z.z()) * psi.eval(z.z()).conj()).re * z.y() * z.y()
}

/// Loftin integrand over Weil-Petersson integrand. Fails with
/// [`GeomError::DegenerateRatio`] where the denominator is below `1e-12`.
pub fn wp_integrand_ratio(
    phi: &QuadraticDifferentialSample,
    psi: &QuadraticDifferentialSample,
    z: &HalfPlanePoint,
) -> Result<f64> {
    let den = wp_integrand(phi, psi, z);
    if !(den.abs() > 1e-12) {
        return Err(GeomError::DegenerateRatio);
    }
    Ok(loftin_integrand(phi, psi, z) / den)
}

/// Pointwise inner product of real scalar one-forms for `e^psi |dz|^2`.
pub fn conformal_inner_product(a: (f64, f64), b: (f64, f64), z: &HalfPlanePoint) -> f64 {
    (a.0 * b.0 + a.1 * b.1) / z.conformal_factor()
}

/// `|alpha ^ *beta - <alpha, beta> e^psi dx ^ dy|` for real scalar forms.
pub fn hodge_dual_residual(a: (f64, f64), b: (f64, f64), z: &HalfPlanePoint) -> f64 {
    let c = |v: f64| Complex64::new(v, 0.0);
    let alpha = FormValue::from_real(c(a.0), c(a.1));
    let beta = FormValue::from_real(c(b.0), c(b.1));
    let lhs = wedge(&alpha, &beta.star());
    let rhs = conformal_inner_product(a, b, z) * z.conformal_factor();
    (lhs - c(rhs)).norm()
}

/// Closed forms of `sharp(E1)`, `sharp(E2)`, `sharp(E3)` over
/// `E1*..E5*, E8*` (indices 0..=4 and 7).
///
/// The `E8*` coefficient of `sharp(E3)` is `-2x(x^2 + y^2)/y^2`. This is the
/// value for which `z^2 sharp(E1) - sharp(E3) - 2z sharp(E2)` has the
/// holomorphic `E8*` coefficient `-2z`; the shorter `-2x/y^2` does not.
pub fn sharp_closed_form(k: usize, z: &HalfPlanePoint) -> [f64; 8] {
    let (x, y) = (z.x(), z.y());
    let (x2, y2) = (x * x, y * y);
    let r = x2 + y2;
    let q = 4.0 / y2;
    match k {
        0 => [q, q * x, -q * x2, (-1.0 - x2) / y2, (1.0 - x2) / y2, 0.0, 0.0, 2.0 * x / y2],
        1 => [
            q * x,
            q * (x2 + 0.5 * y2),
            -q * x * r,
            (-x2 * x - x - x * y2) / y2,
            (-x2 * x + x - x * y2) / y2,
            0.0,
            0.0,
            2.0 * x2 / y2 + 1.0,
        ],
        2 => [
            -q * x2,
            -q * x * r,
            q * r * r,
            (r * r + x2) / y2,
            (r * r - x2) / y2,
            0.0,
            0.0,
            -2.0 * x * r / y2,
        ],
        _ => panic!("closed forms exist for E1, E2, E3 only"),
    }
}

/// Dual-coordinate indices that the closed forms determine.
pub const CLOSED_FORM_SLOTS: [usize; 6] = [0, 1, 2, 3, 4, 7];
