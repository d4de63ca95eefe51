//! Random sample generators for the verification suites.

use nalgebra::Matrix2;
use rand::Rng;
use serde::Serialize;

use crate::chart::{DiskPoint, HalfPlanePoint};
use crate::cone::ConePoint;
use crate::linalg::Mat3;
use crate::rep::{phi_group, GroupElement3, Sl2Element, Sl3Element};

/// Axis-aligned box in the half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlaneRegion {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl HalfPlaneRegion {
    /// `x in [-3, 3]`, `y in [0.2, 5]`.
    pub const DEFAULT: Self = Self {
        x_min: -3.0,
        x_max: 3.0,
        y_min: 0.2,
        y_max: 5.0,
    };

    /// `x in [-1, 1]`, `y in [0.5, 2]`, used where finite differences act on
    /// quantities with large intermediate values.
    pub const FORMS: Self = Self {
        x_min: -1.0,
        x_max: 1.0,
        y_min: 0.5,
        y_max: 2.0,
    };

    pub fn is_valid(&self) -> bool {
        self.x_min.is_finite()
            && self.x_max.is_finite()
            && self.y_max.is_finite()
            && self.x_min < self.x_max
            && self.y_min > 0.0
            && self.y_min < self.y_max
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> HalfPlanePoint {
        let x = rng.random_range(self.x_min..=self.x_max);
        let y = rng.random_range(self.y_min..=self.y_max);
        HalfPlanePoint::new(x, y).expect("region lies in the half-plane")
    }
}

/// Cone sampling box: `x3 in [x3_min, x3_max]` and
/// `x1^2 + x2^2 <= aperture^2 x3^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeRegion {
    pub x3_min: f64,
    pub x3_max: f64,
    pub aperture: f64,
}

impl ConeRegion {
    pub const DEFAULT: Self = Self {
        x3_min: 1.0,
        x3_max: 5.0,
        aperture: 0.8,
    };

    pub fn is_valid(&self) -> bool {
        self.x3_min > 0.0
            && self.x3_min < self.x3_max
            && self.x3_max.is_finite()
            && self.aperture > 0.0
            && self.aperture < 1.0
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ConePoint {
        let x3 = rng.random_range(self.x3_min..=self.x3_max);
        let r = self.aperture * x3 * rng.random_range(0.0_f64..=1.0).sqrt();
        let th = rng.random_range(0.0..std::f64::consts::TAU);
        ConePoint::new(r * th.cos(), r * th.sin(), x3).expect("aperture below 1")
    }
}

/// Point of the disk of radius `max_radius < 1`.
pub fn sample_disk<R: Rng + ?Sized>(rng: &mut R, max_radius: f64) -> DiskPoint {
    let r = max_radius * rng.random_range(0.0_f64..=1.0).sqrt();
    let th = rng.random_range(0.0..std::f64::consts::TAU);
    DiskPoint::new(r * th.cos(), r * th.sin()).expect("radius below 1")
}

pub fn sample_sl2_algebra<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Sl2Element {
    Sl2Element::new(
        rng.random_range(-scale..=scale),
        rng.random_range(-scale..=scale),
        rng.random_range(-scale..=scale),
    )
}

/// `exp(X)` for `X` with entries uniform in `[-scale, scale]`.
pub fn sample_sl2_group<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Matrix2<f64> {
    sample_sl2_algebra(rng, scale).exp()
}

/// `Phi(exp(X))`, an element of `SO(2,1)`.
pub fn sample_so21<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> GroupElement3 {
    phi_group(&sample_sl2_group(rng, scale)).expect("exp lands in SL(2,R)")
}

/// Traceless matrix with entries uniform in `[-1, 1]` before projection.
pub fn sample_sl3<R: Rng + ?Sized>(rng: &mut R) -> Sl3Element {
    Sl3Element::project(Mat3::from_fn(|_, _| rng.random_range(-1.0..=1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_respect_regions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let z = HalfPlaneRegion::DEFAULT.sample(&mut rng);
            assert!((-3.0..=3.0).contains(&z.x()) && (0.2..=5.0).contains(&z.y()));
            let p = ConeRegion::DEFAULT.sample(&mut rng);
            assert!(p.x1().hypot(p.x2()) <= 0.8 * p.x3() + 1e-12);
            let g = sample_so21(&mut rng, 1.0);
            assert!(g.so21_defect() < 1e-10);
            assert!(sample_sl3(&mut rng).matrix().trace().abs() < 1e-15);
        }
    }

    #[test]
    fn regions_validate() {
        assert!(HalfPlaneRegion::DEFAULT.is_valid());
        assert!(HalfPlaneRegion::FORMS.is_valid());
        let bad = HalfPlaneRegion {
            y_min: 0.0,
            ..HalfPlaneRegion::DEFAULT
        };
        assert!(!bad.is_valid());
        assert!(!ConeRegion { aperture: 1.0, ..ConeRegion::DEFAULT }.is_valid());
    }
}
