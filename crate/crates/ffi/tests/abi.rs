use std::ffi::{c_char, CString};
use std::ptr;

use affsphere_ffi::*;

fn last_error() -> String {
    let mut needed = 0usize;
    unsafe { affs_last_error(ptr::null_mut(), 0, &mut needed) };
    let mut buf = vec![0u8; needed];
    let st = unsafe { affs_last_error(buf.as_mut_ptr().cast::<c_char>(), buf.len(), &mut needed) };
    assert_eq!(st, AffsStatus::Ok);
    buf.pop();
    String::from_utf8(buf).unwrap()
}

#[test]
fn kernels_match_closed_forms() {
    let mut k = 0.0;
    let apex = [0.0, 0.0, 1.0];
    assert_eq!(unsafe { affs_characteristic_function(apex.as_ptr(), &mut k) }, AffsStatus::Ok);
    assert_eq!(k, 1.0);

    let mut h = [0.0; 9];
    assert_eq!(unsafe { affs_cheng_yau_metric(apex.as_ptr(), h.as_mut_ptr()) }, AffsStatus::Ok);
    assert_eq!(h, [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);

    let mut z = [0.0; 2];
    assert_eq!(unsafe { affs_klein_to_halfplane(0.0, 0.0, z.as_mut_ptr()) }, AffsStatus::Ok);
    assert_eq!(z, [0.0, 1.0]);
    let mut q = [0.0; 2];
    assert_eq!(unsafe { affs_halfplane_to_klein(0.0, 1.0, q.as_mut_ptr()) }, AffsStatus::Ok);
    assert_eq!(q, [0.0, 0.0]);

    let mut f = [0.0; 3];
    assert_eq!(unsafe { affs_parametrize_hyperboloid(0.0, 1.0, f.as_mut_ptr()) }, AffsStatus::Ok);
    assert_eq!(f, [0.0, 0.0, 1.0]);

    let mut v = 0.0;
    assert_eq!(unsafe { affs_holomorphic_pairing(0.5, 2.0, &mut v) }, AffsStatus::Ok);
    assert!((v - 64.0).abs() < 1e-10);
}

#[test]
fn representation_row_major() {
    let unipotent = [1.0, 1.0, 0.0, 1.0];
    let mut g = [0.0; 9];
    assert_eq!(unsafe { affs_phi_group(unipotent.as_ptr(), g.as_mut_ptr()) }, AffsStatus::Ok);
    assert_eq!(g, [1.0, -1.0, 1.0, 1.0, 0.5, 0.5, 1.0, -0.5, 1.5]);

    let mut e1 = [0.0; 9];
    assert_eq!(unsafe { affs_phi_algebra(0.0, 1.0, 0.0, e1.as_mut_ptr()) }, AffsStatus::Ok);
    assert_eq!(e1, [0.0, -1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);

    let mut l = 0.0;
    let st = unsafe { affs_fiber_metric(0.0, 1.0, e1.as_ptr(), e1.as_ptr(), &mut l) };
    assert_eq!(st, AffsStatus::Ok);
    assert_eq!(l, 4.0);
}

#[test]
fn domain_and_argument_errors() {
    let outside = [1.0, 0.0, 1.0];
    let mut k = 0.0;
    assert_eq!(
        unsafe { affs_characteristic_function(outside.as_ptr(), &mut k) },
        AffsStatus::DomainError
    );
    assert!(last_error().contains("cone"));

    let mut f = [0.0; 3];
    assert_eq!(
        unsafe { affs_parametrize_hyperboloid(0.0, -1.0, f.as_mut_ptr()) },
        AffsStatus::DomainError
    );

    let scaled = [2.0, 0.0, 0.0, 1.0];
    let mut g = [0.0; 9];
    assert_eq!(unsafe { affs_phi_group(scaled.as_ptr(), g.as_mut_ptr()) }, AffsStatus::DomainError);

    let id = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
    let mut l = 0.0;
    assert_eq!(
        unsafe { affs_fiber_metric(0.0, 1.0, id.as_ptr(), id.as_ptr(), &mut l) },
        AffsStatus::DomainError
    );
    assert_eq!(
        unsafe { affs_characteristic_function(ptr::null(), &mut k) },
        AffsStatus::NullPointer
    );
}

#[test]
fn suite_through_handles() {
    let cfg = affs_config_new();
    assert_eq!(unsafe { affs_config_set_samples(cfg, 5) }, AffsStatus::Ok);
    assert_eq!(unsafe { affs_config_set_seed(cfg, 11) }, AffsStatus::Ok);
    let key = CString::new("tol_fd").unwrap();
    let val = CString::new("1e-6").unwrap();
    assert_eq!(unsafe { affs_config_set(cfg, key.as_ptr(), val.as_ptr()) }, AffsStatus::Ok);

    let mut report = ptr::null_mut();
    let name = CString::new("bundle").unwrap();
    assert_eq!(unsafe { affs_run_suite(name.as_ptr(), cfg, &mut report) }, AffsStatus::Ok);

    let mut len = 0usize;
    assert_eq!(unsafe { affs_report_len(report, &mut len) }, AffsStatus::Ok);
    assert!(len > 0);
    let mut passed = false;
    assert_eq!(unsafe { affs_report_all_passed(report, &mut passed) }, AffsStatus::Ok);
    assert!(passed);

    let mut check = AffsCheck::default();
    assert_eq!(unsafe { affs_report_check(report, 0, &mut check) }, AffsStatus::Ok);
    assert!(check.pass && check.points_tested > 0);
    assert_eq!(
        unsafe { affs_report_check(report, len, &mut check) },
        AffsStatus::InvalidArgument
    );

    let mut needed = 0usize;
    let mut small = [0 as c_char; 4];
    assert_eq!(
        unsafe { affs_report_check_id(report, 0, small.as_mut_ptr(), small.len(), &mut needed) },
        AffsStatus::BufferTooSmall
    );
    let mut id = vec![0u8; needed];
    assert_eq!(
        unsafe { affs_report_check_id(report, 0, id.as_mut_ptr().cast(), id.len(), &mut needed) },
        AffsStatus::Ok
    );
    assert!(String::from_utf8_lossy(&id).starts_with("bundle."));

    unsafe { affs_report_render(report, 0, ptr::null_mut(), 0, &mut needed) };
    let mut json = vec![0u8; needed];
    assert_eq!(
        unsafe { affs_report_render(report, 0, json.as_mut_ptr().cast(), json.len(), &mut needed) },
        AffsStatus::Ok
    );
    json.pop();
    let text = String::from_utf8(json).unwrap();
    assert!(text.contains("\"samples\": 5"));
    assert!(text.contains("=16y^{2}"));

    unsafe {
        affs_report_free(report);
        affs_config_free(cfg);
    }
}

#[test]
fn suite_errors() {
    let cfg = affs_config_new();
    let mut report = ptr::null_mut();
    let bogus = CString::new("bogus").unwrap();
    assert_eq!(
        unsafe { affs_run_suite(bogus.as_ptr(), cfg, &mut report) },
        AffsStatus::UnknownSuite
    );
    assert!(report.is_null());

    let key = CString::new("samples").unwrap();
    let zero = CString::new("0").unwrap();
    assert_eq!(unsafe { affs_config_set(cfg, key.as_ptr(), zero.as_ptr()) }, AffsStatus::Ok);
    let all = CString::new("all").unwrap();
    assert_eq!(unsafe { affs_run_suite(all.as_ptr(), cfg, &mut report) }, AffsStatus::ConfigError);

    let junk = CString::new("nope").unwrap();
    assert_eq!(
        unsafe { affs_config_set(cfg, junk.as_ptr(), zero.as_ptr()) },
        AffsStatus::ConfigError
    );
    assert!(last_error().contains("unknown key"));
    unsafe { affs_config_free(cfg) };
}

#[test]
fn header_is_current() {
    let header = include_str!("../include/affsphere.h");
    for sym in [
        "affs_config_new",
        "affs_run_suite",
        "affs_report_render",
        "affs_fiber_metric",
        "AFFS_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
}
