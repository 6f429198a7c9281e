//! C ABI over the `sigma-verify` catalog runner.
//!
//! Reports are opaque handles owned by the caller and released with
//! `sv_report_free`. Strings returned by the library are heap-allocated and
//! released with `sv_string_free`, except `sv_version` and
//! `sv_last_error_message`, which the library owns. Every entry point catches
//! panics and reports them as `SV_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sigma_verify::cli::{self, Report, RunConfig, RunError};
use sigma_verify::identities::forms;
use sigma_verify::numeric::constants::{const_catalan, const_ln2, const_pi};
use sigma_verify::{HPReal, Precision};

/// Result of a library call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SvStatus {
    /// Success; for `sv_run`, every selected check passed.
    Ok = 0,
    /// `sv_run` produced a report in which some check failed.
    ChecksFailed = 1,
    /// Bad argument: precision below 64 bits, bad filter, unknown name.
    UsageError = 2,
    /// A check could not be evaluated (non-convergence, domain error).
    InternalError = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// A finished run. Opaque to C.
pub struct SvReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> SvStatus) -> SvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_last_error("panic inside sigma-verify");
            SvStatus::Panic
        }
    }
}

/// Reads an optional C string; null means `None`.
unsafe fn opt_str<'a>(s: *const c_char) -> Result<Option<&'a str>, SvStatus> {
    if s.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(s).to_str().map(Some).map_err(|_| {
        set_last_error("argument is not valid UTF-8");
        SvStatus::InvalidUtf8
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Runs the checks whose id matches `filter` (null means all) at
/// `precision_bits` on `jobs` threads and stores the report in `*out`.
///
/// The report is stored for `SV_STATUS_OK` and `SV_STATUS_CHECKS_FAILED`;
/// on any other status `*out` is set to null.
///
/// # Safety
/// `filter` must be null or a valid NUL-terminated string; `out` must be a
/// valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sv_run(
    precision_bits: u32,
    filter: *const c_char,
    jobs: u32,
    out: *mut *mut SvReport,
) -> SvStatus {
    guard(|| {
        if out.is_null() {
            set_last_error("`out` is null");
            return SvStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let filter = match opt_str(filter) {
            Ok(f) => f.unwrap_or("*").to_string(),
            Err(s) => return s,
        };
        let config = RunConfig {
            precision_bits,
            filter,
            jobs: jobs.max(1) as usize,
            ..RunConfig::default()
        };
        match cli::run(&config) {
            Ok(report) => {
                let status = if report.all_passed() {
                    SvStatus::Ok
                } else {
                    SvStatus::ChecksFailed
                };
                *out = Box::into_raw(Box::new(SvReport { report }));
                status
            }
            Err(e) => {
                set_last_error(e.to_string());
                match e {
                    RunError::Usage(_) => SvStatus::UsageError,
                    RunError::Internal { .. } => SvStatus::InternalError,
                }
            }
        }
    })
}

/// Number of checks in the report; 0 for a null handle.
///
/// # Safety
/// `r` must be null or a handle returned by `sv_run` and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sv_report_len(r: *const SvReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.checks.len())
}

/// # Safety
/// As for `sv_report_len`.
#[no_mangle]
pub unsafe extern "C" fn sv_report_passed_count(r: *const SvReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.passed_count)
}

/// # Safety
/// As for `sv_report_len`.
#[no_mangle]
pub unsafe extern "C" fn sv_report_failed_count(r: *const SvReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.failed_count)
}

/// 1 if check `index` passed, 0 if it failed, -1 if the handle is null or the
/// index is out of range.
///
/// # Safety
/// As for `sv_report_len`.
#[no_mangle]
pub unsafe extern "C" fn sv_report_check_passed(r: *const SvReport, index: usize) -> i32 {
    match r.as_ref().and_then(|r| r.report.checks.get(index)) {
        Some(c) => i32::from(c.passed),
        None => -1,
    }
}

/// Id of check `index`, or null. Free with `sv_string_free`.
///
/// # Safety
/// As for `sv_report_len`.
#[no_mangle]
pub unsafe extern "C" fn sv_report_check_id(r: *const SvReport, index: usize) -> *mut c_char {
    match r.as_ref().and_then(|r| r.report.checks.get(index)) {
        Some(c) => into_c_string(c.id.clone()),
        None => ptr::null_mut(),
    }
}

/// The report as the JSON document the `verify` binary prints. Free with
/// `sv_string_free`.
///
/// # Safety
/// As for `sv_report_len`.
#[no_mangle]
pub unsafe extern "C" fn sv_report_to_json(r: *const SvReport) -> *mut c_char {
    match r.as_ref() {
        Some(r) => into_c_string(cli::render_json(&r.report)),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `r` must be null or a handle returned by `sv_run` and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sv_report_free(r: *mut SvReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Decimal expansion of a named constant ("pi", "ln2", "catalan", "sigma")
/// at `precision_bits`, stored in `*out`. Free with `sv_string_free`.
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sv_constant(
    name: *const c_char,
    precision_bits: u32,
    out: *mut *mut c_char,
) -> SvStatus {
    guard(|| {
        if out.is_null() {
            set_last_error("`out` is null");
            return SvStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let name = match opt_str(name) {
            Ok(Some(n)) => n,
            Ok(None) => {
                set_last_error("`name` is null");
                return SvStatus::NullPointer;
            }
            Err(s) => return s,
        };
        let p = match Precision::new(precision_bits) {
            Ok(p) => p,
            Err(e) => {
                set_last_error(e.to_string());
                return SvStatus::UsageError;
            }
        };
        let value: HPReal = match name {
            "pi" => const_pi(p),
            "ln2" => const_ln2(p),
            "catalan" => const_catalan(p),
            "sigma" => forms::sigma().eval(p),
            other => {
                set_last_error(format!("unknown constant `{other}`"));
                return SvStatus::UsageError;
            }
        };
        *out = into_c_string(value.to_decimal());
        SvStatus::Ok
    })
}

/// Message of the last failed call on this thread; empty if none. Owned by
/// the library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
