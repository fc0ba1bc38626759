//! C ABI over the vanlab library: opaque report handles, integer status
//! codes, caller-freed strings. The corresponding header is generated into
//! `include/vanlab.h` at build time.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use vanlab::{invariant_report, InvariantReport, VanlabError};

/// Opaque handle to the invariant report of one odd prime.
pub struct VanlabReport(InvariantReport);

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanlabStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The prime argument is not an odd prime.
    NotOddPrime = 2,
    /// The eigenspace-exponent computation ran out of integer precision.
    PrecisionExhausted = 3,
    /// The operation is not defined for this prime.
    Unsupported = 4,
    /// A panic or other unexpected failure; the output is untouched.
    Internal = 5,
}

fn status_of(e: &VanlabError) -> VanlabStatus {
    match e {
        VanlabError::NotOddPrime(_) => VanlabStatus::NotOddPrime,
        VanlabError::PrecisionExhausted { .. } => VanlabStatus::PrecisionExhausted,
        VanlabError::UnsupportedPrime(_) => VanlabStatus::Unsupported,
        _ => VanlabStatus::Internal,
    }
}

/// Compute the full invariant report for the odd prime `p` and store a
/// heap-allocated handle in `*out`.
///
/// `max_aux` is the number of auxiliary primes tried per irregular pair and
/// `precision_cap` the ceiling for eigenspace-exponent precision; pass 10
/// and 16 for the defaults used by the CLI.
///
/// On success returns `Ok` and `*out` must later be released with
/// [`vanlab_report_free`]; on any other status `*out` is left untouched.
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn vanlab_report_compute(
    p: u64,
    max_aux: u64,
    precision_cap: u32,
    out: *mut *mut VanlabReport,
) -> VanlabStatus {
    if out.is_null() {
        return VanlabStatus::NullArgument;
    }
    let computed = catch_unwind(AssertUnwindSafe(|| {
        invariant_report(p, max_aux as usize, precision_cap)
    }));
    match computed {
        Ok(Ok(report)) => {
            *out = Box::into_raw(Box::new(VanlabReport(report)));
            VanlabStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => VanlabStatus::Internal,
    }
}

/// Release a handle returned by [`vanlab_report_compute`]. Null is a no-op.
///
/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vanlab_report_free(report: *mut VanlabReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Serialize the report as a JSON document and store a NUL-terminated,
/// heap-allocated string in `*out`; release it with [`vanlab_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer to writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn vanlab_report_to_json(
    report: *const VanlabReport,
    out: *mut *mut c_char,
) -> VanlabStatus {
    if report.is_null() || out.is_null() {
        return VanlabStatus::NullArgument;
    }
    let json = serde_json::to_string(&(*report).0).expect("reports serialize");
    let cstr = CString::new(json).expect("JSON contains no NUL");
    *out = cstr.into_raw();
    VanlabStatus::Ok
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vanlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The prime the report was computed for, or 0 if `report` is null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vanlab_report_p(report: *const VanlabReport) -> u64 {
    report.as_ref().map_or(0, |r| r.0.p)
}

/// The unit-side invariant r0, or 0 if `report` is null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vanlab_report_r0(report: *const VanlabReport) -> u64 {
    report.as_ref().map_or(0, |r| r.0.r_numbers.r0)
}

/// dim V = (p-3)/2 + r0, or 0 if `report` is null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vanlab_report_dim_v(report: *const VanlabReport) -> u64 {
    report.as_ref().map_or(0, |r| r.0.dim_v)
}

/// The index of irregularity i(p), or 0 if `report` is null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vanlab_report_index_of_irregularity(
    report: *const VanlabReport,
) -> u64 {
    report.as_ref().map_or(0, |r| r.0.index_of_irregularity)
}

/// True when every identity check in the report passed; false for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vanlab_report_checks_pass(report: *const VanlabReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.checks_pass())
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn vanlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    unsafe fn compute(p: u64) -> (VanlabStatus, *mut VanlabReport) {
        let mut handle: *mut VanlabReport = ptr::null_mut();
        let status = vanlab_report_compute(p, 10, 16, &mut handle);
        (status, handle)
    }

    #[test]
    fn compute_and_inspect_37() {
        unsafe {
            let (status, handle) = compute(37);
            assert_eq!(status, VanlabStatus::Ok);
            assert_eq!(vanlab_report_p(handle), 37);
            assert_eq!(vanlab_report_r0(handle), 1);
            assert_eq!(vanlab_report_dim_v(handle), 18);
            assert_eq!(vanlab_report_index_of_irregularity(handle), 1);
            assert!(vanlab_report_checks_pass(handle));
            vanlab_report_free(handle);
        }
    }

    #[test]
    fn json_round_trips() {
        unsafe {
            let (status, handle) = compute(13);
            assert_eq!(status, VanlabStatus::Ok);
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(vanlab_report_to_json(handle, &mut s), VanlabStatus::Ok);
            let text = CStr::from_ptr(s).to_str().unwrap();
            let v: serde_json::Value = serde_json::from_str(text).unwrap();
            assert_eq!(v["p"], 13);
            assert_eq!(v["dim_V"], 5);
            vanlab_string_free(s);
            vanlab_report_free(handle);
        }
    }

    #[test]
    fn rejects_bad_input_without_touching_out() {
        unsafe {
            let sentinel = 0xDEAD as *mut VanlabReport;
            let mut handle = sentinel;
            assert_eq!(
                vanlab_report_compute(4, 10, 16, &mut handle),
                VanlabStatus::NotOddPrime
            );
            assert_eq!(handle, sentinel);
            assert_eq!(
                vanlab_report_compute(7, 10, 16, ptr::null_mut()),
                VanlabStatus::NullArgument
            );
        }
    }

    #[test]
    fn null_handles_are_harmless() {
        unsafe {
            assert_eq!(vanlab_report_p(ptr::null()), 0);
            assert_eq!(vanlab_report_r0(ptr::null()), 0);
            assert!(!vanlab_report_checks_pass(ptr::null()));
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(
                vanlab_report_to_json(ptr::null(), &mut s),
                VanlabStatus::NullArgument
            );
            vanlab_report_free(ptr::null_mut());
            vanlab_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn version_matches_package() {
        unsafe {
            let v = CStr::from_ptr(vanlab_version()).to_str().unwrap();
            assert_eq!(v, env!("CARGO_PKG_VERSION"));
        }
    }
}
