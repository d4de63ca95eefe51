//! C ABI for the `affsphere` kernels and verification runner.
//!
//! Conventions:
//! - every function returns an [`AffsStatus`]; results go through out
//!   pointers, which must be non-null;
//! - 3x3 matrices are `double[9]` in row-major order, 2x2 matrices
//!   `double[4]` row-major;
//! - configurations and reports are opaque handles released with their
//!   `_free` function;
//! - the message for the most recent failure on the calling thread is
//!   available from [`affs_last_error`].
//!
//! Panics never cross the boundary; they are reported as
//! `AFFS_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use affsphere::bundle::{fiber_metric, fiber_metric_complex, holomorphic_tangent_matrix, FiberMetricContext};
use affsphere::chart::{halfplane_to_klein, klein_to_halfplane, parametrize_hyperboloid, DiskPoint, HalfPlanePoint};
use affsphere::cone::{characteristic_function, cheng_yau_metric, ConePoint};
use affsphere::rep::{phi_algebra, phi_group, Sl2Element, Sl3Element};
use affsphere::suite::{render_report, run_suite, CheckResult, ReportFormat, SuiteConfig, SuiteError};
use affsphere::GeomError;
use nalgebra::{Matrix2, Matrix3};

/// Status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffsStatus {
    Ok = 0,
    NullPointer = 1,
    DomainError = 2,
    InvalidArgument = 3,
    UnknownSuite = 4,
    ConfigError = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// Numeric fields of one check result.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AffsCheck {
    pub points_tested: u64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub wall_time_ms: u64,
}

/// Opaque suite configuration.
pub struct AffsConfig(SuiteConfig);

/// Opaque list of check results together with the configuration used.
pub struct AffsReport {
    config: SuiteConfig,
    results: Vec<CheckResult>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: AffsStatus, msg: impl Into<String>) -> AffsStatus {
    set_error(msg);
    status
}

fn geom(e: GeomError) -> AffsStatus {
    let status = match e {
        GeomError::InvalidArgument(_) | GeomError::DegreeTooHigh { .. } => AffsStatus::InvalidArgument,
        _ => AffsStatus::DomainError,
    };
    fail(status, e.to_string())
}

fn suite_err(e: SuiteError) -> AffsStatus {
    let status = match e {
        SuiteError::UnknownSuite(_) => AffsStatus::UnknownSuite,
        SuiteError::InvalidConfig(_) => AffsStatus::ConfigError,
        SuiteError::UnknownFormat(_) | SuiteError::EmptyResults => AffsStatus::InvalidArgument,
        SuiteError::Io(_) | SuiteError::Json(_) => AffsStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `f`, converting panics into `Internal`.
fn guard(f: impl FnOnce() -> AffsStatus) -> AffsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(AffsStatus::Internal, "internal panic"),
    }
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(AffsStatus::NullPointer, concat!("null pointer: ", stringify!($p)));
        })+
    };
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, AffsStatus> {
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(AffsStatus::InvalidArgument, "string is not valid UTF-8"))
}

unsafe fn read_mat3(p: *const f64) -> Matrix3<f64> {
    let s = std::slice::from_raw_parts(p, 9);
    Matrix3::from_row_slice(s)
}

unsafe fn write_mat3(m: &Matrix3<f64>, out: *mut f64) {
    let s = std::slice::from_raw_parts_mut(out, 9);
    for r in 0..3 {
        for c in 0..3 {
            s[3 * r + c] = m[(r, c)];
        }
    }
}

/// Copies `text` plus a terminating NUL into `buf`. `needed` receives the
/// required capacity including the NUL, even when the buffer is too small.
unsafe fn copy_out(text: &[u8], buf: *mut c_char, cap: usize, needed: *mut usize) -> AffsStatus {
    let want = text.len() + 1;
    if !needed.is_null() {
        *needed = want;
    }
    if buf.is_null() || cap < want {
        // Not recorded as the last error: this would clobber the message
        // that affs_last_error is being asked for.
        return AffsStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
    *buf.add(text.len()) = 0;
    AffsStatus::Ok
}

/// Copies the last error message of this thread into `buf`.
///
/// # Safety
/// `buf` must be writable for `cap` bytes or null; `needed` must be null or
/// valid for one write.
#[no_mangle]
pub unsafe extern "C" fn affs_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> AffsStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    copy_out(msg.as_bytes(), buf, cap, needed)
}

// ---------------------------------------------------------------- config

/// New configuration with default settings. Never returns null.
#[no_mangle]
pub extern "C" fn affs_config_new() -> *mut AffsConfig {
    Box::into_raw(Box::new(AffsConfig(SuiteConfig::default())))
}

/// # Safety
/// `cfg` must come from [`affs_config_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn affs_config_free(cfg: *mut AffsConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Sets one configuration key, using the same names as the CLI config file.
///
/// # Safety
/// `cfg` must be a live handle; `key` and `value` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn affs_config_set(
    cfg: *mut AffsConfig,
    key: *const c_char,
    value: *const c_char,
) -> AffsStatus {
    nonnull!(cfg, key, value);
    guard(|| {
        let (k, v) = match (read_str(key), read_str(value)) {
            (Ok(k), Ok(v)) => (k, v),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match (*cfg).0.set(k, v) {
            Ok(()) => AffsStatus::Ok,
            Err(e) => suite_err(e),
        }
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn affs_config_set_samples(cfg: *mut AffsConfig, samples: usize) -> AffsStatus {
    nonnull!(cfg);
    (*cfg).0.samples = samples;
    AffsStatus::Ok
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn affs_config_set_seed(cfg: *mut AffsConfig, seed: u64) -> AffsStatus {
    nonnull!(cfg);
    (*cfg).0.seed = seed;
    AffsStatus::Ok
}

// ---------------------------------------------------------------- suites

/// Runs the named suite and stores a new report handle in `out`.
///
/// # Safety
/// `suite` must be a NUL-terminated string, `cfg` a live handle, `out` valid
/// for one write.
#[no_mangle]
pub unsafe extern "C" fn affs_run_suite(
    suite: *const c_char,
    cfg: *const AffsConfig,
    out: *mut *mut AffsReport,
) -> AffsStatus {
    nonnull!(suite, cfg, out);
    guard(|| {
        let name = match read_str(suite) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let config = (*cfg).0.clone();
        match run_suite(name, &config) {
            Ok(results) => {
                *out = Box::into_raw(Box::new(AffsReport { config, results }));
                AffsStatus::Ok
            }
            Err(e) => suite_err(e),
        }
    })
}

/// # Safety
/// `report` must come from [`affs_run_suite`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn affs_report_free(report: *mut AffsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `len` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn affs_report_len(report: *const AffsReport, len: *mut usize) -> AffsStatus {
    nonnull!(report, len);
    *len = (*report).results.len();
    AffsStatus::Ok
}

/// # Safety
/// `report` must be a live handle and `passed` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn affs_report_all_passed(report: *const AffsReport, passed: *mut bool) -> AffsStatus {
    nonnull!(report, passed);
    *passed = affsphere::suite::all_passed(&(*report).results);
    AffsStatus::Ok
}

unsafe fn result_at<'a>(report: *const AffsReport, index: usize) -> Result<&'a CheckResult, AffsStatus> {
    let report = &*report;
    report
        .results
        .get(index)
        .ok_or_else(|| fail(AffsStatus::InvalidArgument, format!("index {index} out of range")))
}

/// Numeric fields of result `index`.
///
/// # Safety
/// `report` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn affs_report_check(
    report: *const AffsReport,
    index: usize,
    out: *mut AffsCheck,
) -> AffsStatus {
    nonnull!(report, out);
    match result_at(report, index) {
        Ok(r) => {
            *out = AffsCheck {
                points_tested: r.points_tested as u64,
                max_residual: r.max_residual,
                tolerance: r.tolerance,
                pass: r.pass,
                wall_time_ms: r.wall_time_ms,
            };
            AffsStatus::Ok
        }
        Err(s) => s,
    }
}

/// Check id of result `index`, copied as a NUL-terminated string.
///
/// # Safety
/// `report` must be a live handle; see [`affs_last_error`] for the buffer
/// contract.
#[no_mangle]
pub unsafe extern "C" fn affs_report_check_id(
    report: *const AffsReport,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> AffsStatus {
    nonnull!(report);
    match result_at(report, index) {
        Ok(r) => copy_out(r.check_id.as_bytes(), buf, cap, needed),
        Err(s) => s,
    }
}

/// Renders the report; `format` is 0 for JSON and 1 for markdown.
///
/// # Safety
/// `report` must be a live handle; see [`affs_last_error`] for the buffer
/// contract.
#[no_mangle]
pub unsafe extern "C" fn affs_report_render(
    report: *const AffsReport,
    format: u32,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> AffsStatus {
    nonnull!(report);
    let format = match format {
        0 => ReportFormat::Json,
        1 => ReportFormat::Markdown,
        other => return fail(AffsStatus::InvalidArgument, format!("unknown format {other}")),
    };
    guard(|| match render_report(&(*report).results, &(*report).config, format) {
        Ok(bytes) => copy_out(&bytes, buf, cap, needed),
        Err(e) => suite_err(e),
    })
}

// ---------------------------------------------------------------- kernels

unsafe fn cone_point(x: *const f64) -> Result<ConePoint, AffsStatus> {
    let s = std::slice::from_raw_parts(x, 3);
    ConePoint::new(s[0], s[1], s[2]).map_err(geom)
}

/// `k(x) = (x3^2 - x1^2 - x2^2)^{-3/2}` for `x` inside the cone.
///
/// # Safety
/// `x` must point to 3 doubles, `out` to one.
#[no_mangle]
pub unsafe extern "C" fn affs_characteristic_function(x: *const f64, out: *mut f64) -> AffsStatus {
    nonnull!(x, out);
    match cone_point(x) {
        Ok(p) => {
            *out = characteristic_function(&p);
            AffsStatus::Ok
        }
        Err(s) => s,
    }
}

/// Cheng-Yau metric matrix at `x`.
///
/// # Safety
/// `x` must point to 3 doubles, `out` to 9.
#[no_mangle]
pub unsafe extern "C" fn affs_cheng_yau_metric(x: *const f64, out: *mut f64) -> AffsStatus {
    nonnull!(x, out);
    match cone_point(x) {
        Ok(p) => {
            write_mat3(cheng_yau_metric(&p).matrix(), out);
            AffsStatus::Ok
        }
        Err(s) => s,
    }
}

/// Klein disk to upper half-plane; `out = (x, y)`.
///
/// # Safety
/// `out` must point to 2 doubles.
#[no_mangle]
pub unsafe extern "C" fn affs_klein_to_halfplane(t1: f64, t2: f64, out: *mut f64) -> AffsStatus {
    nonnull!(out);
    match DiskPoint::new(t1, t2) {
        Ok(q) => {
            let z = klein_to_halfplane(&q);
            *out = z.x();
            *out.add(1) = z.y();
            AffsStatus::Ok
        }
        Err(e) => geom(e),
    }
}

/// Upper half-plane to Klein disk; `out = (t1, t2)`.
///
/// # Safety
/// `out` must point to 2 doubles.
#[no_mangle]
pub unsafe extern "C" fn affs_halfplane_to_klein(x: f64, y: f64, out: *mut f64) -> AffsStatus {
    nonnull!(out);
    match HalfPlanePoint::new(x, y) {
        Ok(z) => {
            let q = halfplane_to_klein(&z);
            *out = q.t1();
            *out.add(1) = q.t2();
            AffsStatus::Ok
        }
        Err(e) => geom(e),
    }
}

/// `f(x + iy)` on the hyperboloid.
///
/// # Safety
/// `out` must point to 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn affs_parametrize_hyperboloid(x: f64, y: f64, out: *mut f64) -> AffsStatus {
    nonnull!(out);
    match HalfPlanePoint::new(x, y) {
        Ok(z) => {
            let p = parametrize_hyperboloid(&z).coords();
            for i in 0..3 {
                *out.add(i) = p[i];
            }
            AffsStatus::Ok
        }
        Err(e) => geom(e),
    }
}

/// `Phi(A)` for `A` in `SL(2,R)`.
///
/// # Safety
/// `a` must point to 4 doubles, `out` to 9.
#[no_mangle]
pub unsafe extern "C" fn affs_phi_group(a: *const f64, out: *mut f64) -> AffsStatus {
    nonnull!(a, out);
    let s = std::slice::from_raw_parts(a, 4);
    match phi_group(&Matrix2::from_row_slice(s)) {
        Ok(g) => {
            write_mat3(g.matrix(), out);
            AffsStatus::Ok
        }
        Err(e) => geom(e),
    }
}

/// Derivative of `Phi` at `[[a, b], [c, -a]]`.
///
/// # Safety
/// `out` must point to 9 doubles.
#[no_mangle]
pub unsafe extern "C" fn affs_phi_algebra(a: f64, b: f64, c: f64, out: *mut f64) -> AffsStatus {
    nonnull!(out);
    write_mat3(phi_algebra(&Sl2Element::new(a, b, c)).matrix(), out);
    AffsStatus::Ok
}

/// Fiber metric `l(A, B)` at `f(x + iy)` for traceless `A`, `B`.
///
/// # Safety
/// `a`, `b` must point to 9 doubles each, `out` to one.
#[no_mangle]
pub unsafe extern "C" fn affs_fiber_metric(
    x: f64,
    y: f64,
    a: *const f64,
    b: *const f64,
    out: *mut f64,
) -> AffsStatus {
    nonnull!(a, b, out);
    let z = match HalfPlanePoint::new(x, y) {
        Ok(z) => z,
        Err(e) => return geom(e),
    };
    let (a, b) = match (Sl3Element::new(read_mat3(a)), Sl3Element::new(read_mat3(b))) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return geom(e),
    };
    *out = fiber_metric(&FiberMetricContext::at(&z), &a, &b);
    AffsStatus::Ok
}

/// `l(A, A)` for the holomorphic tangent matrix `A` at `x + iy`; the value
/// is real and equals `16 y^2`.
///
/// # Safety
/// `out` must point to one double.
#[no_mangle]
pub unsafe extern "C" fn affs_holomorphic_pairing(x: f64, y: f64, out: *mut f64) -> AffsStatus {
    nonnull!(out);
    match HalfPlanePoint::new(x, y) {
        Ok(z) => {
            let a = holomorphic_tangent_matrix(&z);
            *out = fiber_metric_complex(&FiberMetricContext::at(&z), &a, &a).re;
            AffsStatus::Ok
        }
        Err(e) => geom(e),
    }
}
