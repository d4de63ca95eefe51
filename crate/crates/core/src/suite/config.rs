use serde::Serialize;

use super::SuiteError;
use crate::sampling::{ConeRegion, HalfPlaneRegion};

/// Sampling and tolerance settings shared by every check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol_analytic: f64,
    pub tol_fd: f64,
    pub fd_step: f64,
    pub z_region: HalfPlaneRegion,
    /// Region for finite-difference checks on Lie-valued forms.
    pub form_region: HalfPlaneRegion,
    pub cone_region: ConeRegion,
    pub disk_radius: f64,
    pub max_degree: usize,
    /// Record wall-clock times. Off by default so reports are reproducible.
    #[serde(skip)]
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            samples: 100,
            seed: 0x5eed,
            tol_analytic: 1e-9,
            tol_fd: 1e-6,
            fd_step: 1e-5,
            z_region: HalfPlaneRegion::DEFAULT,
            form_region: HalfPlaneRegion::FORMS,
            cone_region: ConeRegion::DEFAULT,
            disk_radius: 0.9,
            max_degree: 4,
            timings: false,
        }
    }
}

/// Lowest degree cap that admits the built-in test polynomials.
pub const MIN_DEGREE_CAP: usize = 3;

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), SuiteError> {
        let bad = |msg: &str| Err(SuiteError::InvalidConfig(msg.to_string()));
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if self.samples == 0 {
            return bad("samples must be positive");
        }
        if !positive(self.tol_analytic) || !positive(self.tol_fd) {
            return bad("tolerances must be positive");
        }
        if !positive(self.fd_step) {
            return bad("fd_step must be positive");
        }
        if !self.z_region.is_valid() || !self.form_region.is_valid() {
            return bad("half-plane regions must be nonempty with y_min > 0");
        }
        if self.fd_step >= self.z_region.y_min.min(self.form_region.y_min) {
            return bad("fd_step must be smaller than the lowest sampled y");
        }
        if !self.cone_region.is_valid() {
            return bad("cone region must satisfy 0 < x3_min < x3_max and 0 < aperture < 1");
        }
        if !(self.disk_radius > 0.0 && self.disk_radius < 1.0) {
            return bad("disk_radius must lie in (0, 1)");
        }
        if self.max_degree < MIN_DEGREE_CAP {
            return bad("max_degree must be at least 3");
        }
        Ok(())
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), SuiteError> {
        let value = value.trim();
        let invalid = || SuiteError::InvalidConfig(format!("cannot parse {key} = {value}"));
        let f = || value.parse::<f64>().map_err(|_| invalid());
        match key.trim() {
            "samples" => self.samples = value.parse().map_err(|_| invalid())?,
            "seed" => self.seed = value.parse().map_err(|_| invalid())?,
            "tol" | "tol_analytic" => self.tol_analytic = f()?,
            "tol_fd" => self.tol_fd = f()?,
            "fd_step" => self.fd_step = f()?,
            "max_degree" => self.max_degree = value.parse().map_err(|_| invalid())?,
            "disk_radius" => self.disk_radius = f()?,
            "timings" => self.timings = value.parse().map_err(|_| invalid())?,
            "z_x_min" => self.z_region.x_min = f()?,
            "z_x_max" => self.z_region.x_max = f()?,
            "z_y_min" => self.z_region.y_min = f()?,
            "z_y_max" => self.z_region.y_max = f()?,
            "form_x_min" => self.form_region.x_min = f()?,
            "form_x_max" => self.form_region.x_max = f()?,
            "form_y_min" => self.form_region.y_min = f()?,
            "form_y_max" => self.form_region.y_max = f()?,
            "cone_x3_min" => self.cone_region.x3_min = f()?,
            "cone_x3_max" => self.cone_region.x3_max = f()?,
            "cone_aperture" => self.cone_region.aperture = f()?,
            other => return Err(SuiteError::InvalidConfig(format!("unknown key {other}"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file. Blank lines and `#` comments are
    /// ignored.
    pub fn apply_file(&mut self, text: &str) -> Result<(), SuiteError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                SuiteError::InvalidConfig(format!("line {}: expected key = value", n + 1))
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub(crate) fn count(&self, per_hundred: usize) -> usize {
        (self.samples * per_hundred / 100).max(1)
    }
}
