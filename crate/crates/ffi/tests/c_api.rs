use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use sigma_verify_ffi::*;

fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sv_string_free(s) };
    owned
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sv_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn run_and_inspect_report() {
    let filter = CString::new("eq1*").unwrap();
    let mut r = ptr::null_mut();
    let status = unsafe { sv_run(128, filter.as_ptr(), 2, &mut r) };
    assert_eq!(status, SvStatus::Ok);
    let n = unsafe { sv_report_len(r) };
    assert!(n >= 4);
    assert_eq!(unsafe { sv_report_passed_count(r) }, n);
    assert_eq!(unsafe { sv_report_failed_count(r) }, 0);
    assert_eq!(take_string(unsafe { sv_report_check_id(r, 0) }), "eq10");
    assert_eq!(unsafe { sv_report_check_passed(r, 0) }, 1);
    assert_eq!(unsafe { sv_report_check_passed(r, n) }, -1);
    assert!(unsafe { sv_report_check_id(r, n) }.is_null());
    let json: serde_json::Value =
        serde_json::from_str(&take_string(unsafe { sv_report_to_json(r) })).unwrap();
    assert_eq!(json["precision_bits"], 128);
    assert_eq!(json["checks"].as_array().unwrap().len(), n);
    unsafe { sv_report_free(r) };
}

#[test]
fn usage_errors_leave_no_report() {
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { sv_run(32, ptr::null(), 1, &mut r) },
        SvStatus::UsageError
    );
    assert!(r.is_null());
    assert!(last_error().contains("at least 64"));

    let filter = CString::new("no_such_check").unwrap();
    assert_eq!(
        unsafe { sv_run(128, filter.as_ptr(), 1, &mut r) },
        SvStatus::UsageError
    );
    assert!(r.is_null());
    assert_eq!(
        unsafe { sv_run(128, ptr::null(), 1, ptr::null_mut()) },
        SvStatus::NullPointer
    );
}

#[test]
fn invalid_utf8_rejected() {
    let bad = [0xffu8, 0];
    let mut r = ptr::null_mut();
    let status = unsafe { sv_run(128, bad.as_ptr().cast(), 1, &mut r) };
    assert_eq!(status, SvStatus::InvalidUtf8);
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        assert_eq!(sv_report_len(ptr::null()), 0);
        assert_eq!(sv_report_check_passed(ptr::null(), 0), -1);
        assert!(sv_report_to_json(ptr::null()).is_null());
        sv_report_free(ptr::null_mut());
        sv_string_free(ptr::null_mut());
    }
}

#[test]
fn constants() {
    let mut out = ptr::null_mut();
    for (name, prefix) in [
        ("pi", "3.14159265358979323846"),
        ("ln2", "0.69314718055994530941"),
        ("catalan", "0.91596559417721901505"),
        ("sigma", "-0.02899509302173870080"),
    ] {
        let n = CString::new(name).unwrap();
        assert_eq!(
            unsafe { sv_constant(n.as_ptr(), 128, &mut out) },
            SvStatus::Ok
        );
        let s = take_string(out);
        assert!(s.starts_with(prefix), "{name}: {s}");
    }
    let n = CString::new("e").unwrap();
    assert_eq!(
        unsafe { sv_constant(n.as_ptr(), 128, &mut out) },
        SvStatus::UsageError
    );
    assert!(out.is_null());
    assert!(last_error().contains("unknown constant"));
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(sv_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("include/sigma_verify.h"),
    )
    .unwrap();
    for f in [
        "sv_run",
        "sv_report_len",
        "sv_report_passed_count",
        "sv_report_failed_count",
        "sv_report_check_passed",
        "sv_report_check_id",
        "sv_report_to_json",
        "sv_report_free",
        "sv_string_free",
        "sv_constant",
        "sv_last_error_message",
        "sv_version",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f}");
    }
    assert!(header.contains("typedef struct sv_report sv_report;"));
    assert!(header.contains("SV_STATUS_CHECKS_FAILED = 1"));
}

/// target/<profile>, found from the test binary in target/<profile>/deps.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = profile_dir().join("libsigma_verify_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("sv_smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("3.14159265358979323846"));
}
