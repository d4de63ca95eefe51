//! Group 1-cocycles of a rank-2 free group with values in `sl(3,R)`, the
//! dual map `u -> -u^T`, and cocycles obtained by integrating closed forms.

use std::fmt;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;

use crate::chart::{mobius, HalfPlanePoint};
use crate::error::{GeomError, Result};
use crate::forms::LieValuedOneForm;
use crate::linalg::{eta, CMat3, Mat3};
use crate::quadrature::gauss_legendre_16;
use crate::rep::{GroupElement3, Sl3Element};

/// A generator of the free group on `a`, `b`, or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeGroupWord(Vec<Letter>);

impl FreeGroupWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    /// Fails with [`GeomError::NotReduced`] at the first cancelling pair.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if let Some(i) = letters.windows(2).position(|p| p[0].inverse() == p[1]) {
            return Err(GeomError::NotReduced(i));
        }
        Ok(Self(letters))
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reduced product `self * other`.
    pub fn concat(&self, other: &FreeGroupWord) -> FreeGroupWord {
        Self::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> FreeGroupWord {
        Self(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Uniform reduced word of the given length.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> FreeGroupWord {
        let mut out: Vec<Letter> = Vec::with_capacity(len);
        while out.len() < len {
            let l = Letter::ALL[rng.random_range(0..4)];
            if out.last() != Some(&l.inverse()) {
                out.push(l);
            }
        }
        Self(out)
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for l in &self.0 {
            let s = match l {
                Letter::A => "a",
                Letter::AInv => "A",
                Letter::B => "b",
                Letter::BInv => "B",
            };
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A cocycle, determined by `rho` and `u` on the generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cocycle {
    pub rho_a: GroupElement3,
    pub rho_b: GroupElement3,
    pub u_a: Sl3Element,
    pub u_b: Sl3Element,
}

impl Cocycle {
    pub fn zero(rho_a: GroupElement3, rho_b: GroupElement3) -> Self {
        Self {
            rho_a,
            rho_b,
            u_a: Sl3Element::zero(),
            u_b: Sl3Element::zero(),
        }
    }

    /// `u(g) = v - Ad(rho(g)) v`.
    pub fn coboundary(rho_a: GroupElement3, rho_b: GroupElement3, v: &Sl3Element) -> Self {
        Self {
            rho_a,
            rho_b,
            u_a: *v - v.conjugate_by(&rho_a),
            u_b: *v - v.conjugate_by(&rho_b),
        }
    }

    fn letter(&self, l: Letter) -> (Mat3, Mat3) {
        let inv = |g: &GroupElement3, u: &Sl3Element| {
            let gi = g.inverse_matrix();
            (gi, -(gi * u.matrix() * g.matrix()))
        };
        match l {
            Letter::A => (*self.rho_a.matrix(), *self.u_a.matrix()),
            Letter::B => (*self.rho_b.matrix(), *self.u_b.matrix()),
            Letter::AInv => inv(&self.rho_a, &self.u_a),
            Letter::BInv => inv(&self.rho_b, &self.u_b),
        }
    }

    /// `rho(w)`.
    pub fn holonomy(&self, w: &FreeGroupWord) -> Mat3 {
        w.letters()
            .iter()
            .fold(Mat3::identity(), |acc, l| acc * self.letter(*l).0)
    }
}

/// `u(w)` by the left fold `u(xy) = u(x) + Ad(rho(x)) u(y)`.
pub fn evaluate_cocycle(c: &Cocycle, w: &FreeGroupWord) -> Sl3Element {
    let mut rho = Mat3::identity();
    let mut rho_inv = Mat3::identity();
    let mut u = Mat3::zeros();
    for l in w.letters() {
        let (g, ul) = c.letter(*l);
        u += rho * ul * rho_inv;
        let gi = c.letter(l.inverse()).0;
        rho *= g;
        rho_inv = gi * rho_inv;
    }
    Sl3Element::project(u)
}

/// `u(xy) - u(x) - Ad(rho(x)) u(y)`, relative to the largest of the three
/// terms (or 1).
pub fn cocycle_identity_residual(c: &Cocycle, x: &FreeGroupWord, y: &FreeGroupWord) -> f64 {
    let uxy = *evaluate_cocycle(c, &x.concat(y)).matrix();
    let ux = *evaluate_cocycle(c, x).matrix();
    let g = c.holonomy(x);
    let gi = c.holonomy(&x.inverse());
    let ad = g * evaluate_cocycle(c, y).matrix() * gi;
    let scale = uxy.amax().max(ux.amax()).max(ad.amax()).max(1.0);
    (uxy - ux - ad).amax() / scale
}

/// `rho* = (rho^T)^{-1}` and `u* = -u^T`. On `SO(2,1)` the contragredient is
/// `eta rho eta`, so applying this twice returns the input exactly.
pub fn dual_cocycle(c: &Cocycle) -> Cocycle {
    let dual_rho = |g: &GroupElement3| {
        let e = eta();
        if g.so21_defect() < 1e-12 {
            GroupElement3::new(e * g.matrix() * e).expect("conjugate of det 1")
        } else {
            g.contragredient()
        }
    };
    Cocycle {
        rho_a: dual_rho(&c.rho_a),
        rho_b: dual_rho(&c.rho_b),
        u_a: c.u_a.neg_transpose(),
        u_b: c.u_b.neg_transpose(),
    }
}

/// Integral of `w` along the polyline through `path`, with 16-point
/// Gauss-Legendre on each segment.
pub fn integrate_along(w: &LieValuedOneForm, path: &[HalfPlanePoint]) -> Result<CMat3> {
    if path.len() < 2 {
        return Err(GeomError::PathTooShort);
    }
    let (nodes, weights) = gauss_legendre_16();
    let mut total = CMat3::zeros();
    for seg in path.windows(2) {
        let (p, q) = (seg[0].z(), seg[1].z());
        let half = (q - p) * 0.5;
        let mid = (p + q) * 0.5;
        for (t, wt) in nodes.iter().zip(weights) {
            let z = HalfPlanePoint::from_complex(mid + half * *t)?;
            let v = w.eval(&z);
            total += (v.dz * half + v.dzbar * half.conj()) * Complex64::new(*wt, 0.0);
        }
    }
    Ok(total)
}

/// `u(gamma) = integral of w` along a path from `z0` to `gamma z0`. The path
/// must end at the Mobius image of its start.
pub fn integrate_form_to_cocycle(
    w: &LieValuedOneForm,
    path: &[HalfPlanePoint],
    gamma: &Matrix2<f64>,
) -> Result<CMat3> {
    let (start, end) = match (path.first(), path.last()) {
        (Some(s), Some(e)) if path.len() >= 2 => (*s, *e),
        _ => return Err(GeomError::PathTooShort),
    };
    let target = mobius(gamma, &start)?;
    if (target.z() - end.z()).norm() > 1e-9 * target.z().norm().max(1.0) {
        return Err(GeomError::EndpointMismatch {
            expected: format!("{}", target.z()),
            got: format!("{}", end.z()),
        });
    }
    integrate_along(w, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormValue;
    use crate::rep::basis;
    use rand::SeedableRng;

    fn rho_pair() -> (GroupElement3, GroupElement3) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        (
            crate::sampling::sample_so21(&mut rng, 0.5),
            crate::sampling::sample_so21(&mut rng, 0.5),
        )
    }

    #[test]
    fn word_reduction() {
        use Letter::*;
        assert!(matches!(FreeGroupWord::new(vec![A, B, BInv]), Err(GeomError::NotReduced(1))));
        let w = FreeGroupWord::reduce([A, B, BInv, AInv, B]);
        assert_eq!(w.letters(), &[B]);
        assert_eq!(w.to_string(), "b");
        let x = FreeGroupWord::new(vec![A, B]).unwrap();
        assert!(x.concat(&x.inverse()).is_empty());
    }

    #[test]
    fn generator_values() {
        let (ra, rb) = rho_pair();
        let e = basis();
        let c = Cocycle { rho_a: ra, rho_b: rb, u_a: e[0], u_b: e[3] };
        assert_eq!(evaluate_cocycle(&c, &FreeGroupWord::identity()), Sl3Element::zero());
        let a = FreeGroupWord::new(vec![Letter::A]).unwrap();
        assert!((evaluate_cocycle(&c, &a).matrix() - e[0].matrix()).amax() < 1e-15);
        let aa = FreeGroupWord::new(vec![Letter::A, Letter::AInv]);
        assert!(aa.is_err());
        let r = FreeGroupWord::reduce([Letter::A, Letter::AInv]);
        assert_eq!(evaluate_cocycle(&c, &r), Sl3Element::zero());
    }

    #[test]
    fn double_dual_is_identity() {
        let (ra, rb) = rho_pair();
        let e = basis();
        let c = Cocycle { rho_a: ra, rho_b: rb, u_a: e[1], u_b: e[6] };
        assert_eq!(dual_cocycle(&dual_cocycle(&c)), c);
    }

    #[test]
    fn zero_form_integrates_to_zero() {
        let w: LieValuedOneForm =
            crate::forms::OneForm::new(|_| FormValue::new(CMat3::zeros(), CMat3::zeros()));
        let p = [HalfPlanePoint::i(), HalfPlanePoint::new(1.0, 1.0).unwrap()];
        let t = Matrix2::new(1.0, 1.0, 0.0, 1.0);
        assert_eq!(integrate_form_to_cocycle(&w, &p, &t).unwrap(), CMat3::zeros());
        let bad = [HalfPlanePoint::i(), HalfPlanePoint::new(2.0, 1.0).unwrap()];
        assert!(matches!(
            integrate_form_to_cocycle(&w, &bad, &t),
            Err(GeomError::EndpointMismatch { .. })
        ));
        assert!(matches!(integrate_along(&w, &p[..1]), Err(GeomError::PathTooShort)));
    }
}
