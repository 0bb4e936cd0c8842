//! C ABI surface for the raabe library.
//!
//! Conventions: every function returns a [`RaabeStatus`] (or a pointer
//! that is null on failure); results come back through out-pointers;
//! heap objects cross the boundary as opaque handles with paired
//! `_new`/`_free` functions; strings are NUL-terminated and owned by
//! Rust until released with [`raabe_string_free`]. Panics are caught at
//! the boundary and reported as `RAABE_STATUS_INTERNAL_ERROR`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};

use raabe::bernoulli::BernoulliTable;
use raabe::fourier::{
    builtin_spec, coeff_residual_check, fourier_eval_with_cap, periodized_bernoulli_eval_with_cap,
    FourierError,
};
use raabe::probes::dense_approximate;
use raabe::residual::{carlitz_residual, raabe_residual, solution_kernel, RaabeParams};

/// Result codes shared by every binding.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RaabeStatus {
    RaabeStatusOk = 0,
    /// The checked residual is not zero.
    RaabeStatusNonzeroResidual = 1,
    RaabeStatusInvalidArgument = 2,
    RaabeStatusNullPointer = 3,
    /// The requested tolerance needs more terms than the cap allows.
    RaabeStatusToleranceUnreachable = 4,
    RaabeStatusInternalError = 5,
}

use RaabeStatus::*;

/// Opaque table of exact Bernoulli polynomials.
pub struct RaabeBernoulliTable {
    inner: BernoulliTable,
}

/// One evaluated series value with its truncation certificate.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RaabeEvalResult {
    pub value: f64,
    pub truncation_n: u64,
    pub tail_bound: f64,
}

/// Floor-sequence approximant r/(a^s - 1) of a real number.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RaabeDenseApprox {
    /// Numerator, clamped into i64 (status reports overflow).
    pub r: i64,
    pub value: f64,
    pub error: f64,
    /// 1 when the scaled input was within 1e-12 of an integer.
    pub boundary: u8,
}

fn guarded(f: impl FnOnce() -> RaabeStatus + UnwindSafe) -> RaabeStatus {
    catch_unwind(f).unwrap_or(RaabeStatusInternalError)
}

fn status_of_fourier_error(err: FourierError) -> RaabeStatus {
    match err {
        FourierError::ToleranceUnreachable { .. } => RaabeStatusToleranceUnreachable,
        _ => RaabeStatusInvalidArgument,
    }
}

/// Builds a table of B_0 .. B_max_index. Returns null when the table
/// would be unreasonably large (max_index > 4096) or on internal error.
#[no_mangle]
pub extern "C" fn raabe_bernoulli_table_new(max_index: u32) -> *mut RaabeBernoulliTable {
    if max_index > 4096 {
        return std::ptr::null_mut();
    }
    catch_unwind(|| {
        Box::into_raw(Box::new(RaabeBernoulliTable {
            inner: BernoulliTable::new(max_index as usize),
        }))
    })
    .unwrap_or(std::ptr::null_mut())
}

/// Releases a table created by [`raabe_bernoulli_table_new`].
///
/// # Safety
/// `table` must be a pointer previously returned by
/// [`raabe_bernoulli_table_new`] and not yet freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn raabe_bernoulli_table_free(table: *mut RaabeBernoulliTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Returns the coefficient of X^i in B_n as a string "p/q" (or "p" for
/// integers), or null when the indices are out of range. The caller
/// frees the string with [`raabe_string_free`].
///
/// # Safety
/// `table` must be a live pointer from [`raabe_bernoulli_table_new`].
#[no_mangle]
pub unsafe extern "C" fn raabe_bernoulli_coeff_string(
    table: *const RaabeBernoulliTable,
    n: u32,
    i: u32,
) -> *mut c_char {
    let Some(table) = table.as_ref() else {
        return std::ptr::null_mut();
    };
    let Some(poly) = table.inner.get(n as usize) else {
        return std::ptr::null_mut();
    };
    if i as usize > poly.degree().unwrap_or(0) {
        return std::ptr::null_mut();
    }
    let rendered = poly.coeff(i as usize).to_string();
    CString::new(rendered).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must originate from this library and not have been freed; null
/// is ignored.
#[no_mangle]
pub unsafe extern "C" fn raabe_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Checks that B_n solves the multiplication equation at multiplier `a`.
#[no_mangle]
pub extern "C" fn raabe_verify_raabe(n: u32, a: u32) -> RaabeStatus {
    if a < 1 {
        return RaabeStatusInvalidArgument;
    }
    guarded(|| {
        let b = raabe::bernoulli::bernoulli_poly(n as usize);
        if raabe_residual(&b, RaabeParams::new(n, a)).is_zero() {
            RaabeStatusOk
        } else {
            RaabeStatusNonzeroResidual
        }
    })
}

/// Checks the symmetric two-modulus identity for B_n.
#[no_mangle]
pub extern "C" fn raabe_verify_carlitz(n: u32, a: u32, b: u32) -> RaabeStatus {
    if a < 1 || b < 1 {
        return RaabeStatusInvalidArgument;
    }
    guarded(|| {
        if carlitz_residual(n, a, b).is_zero() {
            RaabeStatusOk
        } else {
            RaabeStatusNonzeroResidual
        }
    })
}

/// Dimension of the exact solution kernel on polynomials of degree at
/// most `max_degree`.
///
/// # Safety
/// `out_dim` must be a valid pointer to writable memory.
#[no_mangle]
pub unsafe extern "C" fn raabe_kernel_dimension(
    n: u32,
    a: u32,
    max_degree: u32,
    out_dim: *mut u64,
) -> RaabeStatus {
    if out_dim.is_null() {
        return RaabeStatusNullPointer;
    }
    if a < 2 || max_degree > 256 {
        return RaabeStatusInvalidArgument;
    }
    guarded(|| {
        let basis = solution_kernel(n, a, max_degree as usize);
        *out_dim = basis.len() as u64;
        RaabeStatusOk
    })
}

/// Exact coefficient relation check for a named builtin spec. `Ok`
/// means the relation holds up to `k_max`; a nonzero-residual status
/// writes the first failing base index through `out_witness_k` (when
/// non-null).
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out_witness_k` may be null.
#[no_mangle]
pub unsafe extern "C" fn raabe_coeff_residual_check(
    spec: *const c_char,
    n: u32,
    a: u64,
    k_max: u64,
    out_witness_k: *mut u64,
) -> RaabeStatus {
    if spec.is_null() {
        return RaabeStatusNullPointer;
    }
    let Ok(name) = CStr::from_ptr(spec).to_str() else {
        return RaabeStatusInvalidArgument;
    };
    if a < 2 || k_max < a {
        return RaabeStatusInvalidArgument;
    }
    let name = name.to_owned();
    guarded(move || match builtin_spec(&name, n) {
        Err(_) => RaabeStatusInvalidArgument,
        Ok(spec_obj) => {
            let report = coeff_residual_check(&spec_obj, a, k_max);
            if report.is_zero {
                RaabeStatusOk
            } else {
                if let (Some(k), false) = (report.mismatch_index(), out_witness_k.is_null()) {
                    *out_witness_k = k;
                }
                RaabeStatusNonzeroResidual
            }
        }
    })
}

/// Evaluates a named builtin spec's series at `x` to within `tol`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn raabe_fourier_eval(
    spec: *const c_char,
    n: u32,
    x: f64,
    tol: f64,
    truncation_cap: u64,
    out: *mut RaabeEvalResult,
) -> RaabeStatus {
    if spec.is_null() || out.is_null() {
        return RaabeStatusNullPointer;
    }
    let Ok(name) = CStr::from_ptr(spec).to_str() else {
        return RaabeStatusInvalidArgument;
    };
    if !(tol > 0.0) || truncation_cap == 0 {
        return RaabeStatusInvalidArgument;
    }
    let name = name.to_owned();
    guarded(move || match builtin_spec(&name, n) {
        Err(e) => status_of_fourier_error(e),
        Ok(spec_obj) => match fourier_eval_with_cap(&spec_obj, x, tol, truncation_cap) {
            Err(e) => status_of_fourier_error(e),
            Ok(eval) => {
                *out = RaabeEvalResult {
                    value: eval.value,
                    truncation_n: eval.truncation_n,
                    tail_bound: eval.tail_bound,
                };
                RaabeStatusOk
            }
        },
    })
}

/// Evaluates the periodized Bernoulli series to within `tol`.
///
/// # Safety
/// `out` must be a valid pointer to writable memory.
#[no_mangle]
pub unsafe extern "C" fn raabe_periodized_bernoulli_eval(
    n: u32,
    x: f64,
    tol: f64,
    truncation_cap: u64,
    out: *mut RaabeEvalResult,
) -> RaabeStatus {
    if out.is_null() {
        return RaabeStatusNullPointer;
    }
    if !(tol > 0.0) || truncation_cap == 0 {
        return RaabeStatusInvalidArgument;
    }
    guarded(move || match periodized_bernoulli_eval_with_cap(n, x, tol, truncation_cap) {
        Err(e) => status_of_fourier_error(e),
        Ok(eval) => {
            *out = RaabeEvalResult {
                value: eval.value,
                truncation_n: eval.truncation_n,
                tail_bound: eval.tail_bound,
            };
            RaabeStatusOk
        }
    })
}

/// Approximates `u` by `floor((a^s - 1) u) / (a^s - 1)`.
///
/// # Safety
/// `out` must be a valid pointer to writable memory.
#[no_mangle]
pub unsafe extern "C" fn raabe_dense_approximate(
    u: f64,
    a: u32,
    s: u32,
    out: *mut RaabeDenseApprox,
) -> RaabeStatus {
    if out.is_null() {
        return RaabeStatusNullPointer;
    }
    if a < 2 || s < 1 || !u.is_finite() {
        return RaabeStatusInvalidArgument;
    }
    guarded(move || {
        let d = dense_approximate(u, a, s);
        let Ok(r) = i64::try_from(d.r.clone()) else {
            return RaabeStatusInvalidArgument;
        };
        *out = RaabeDenseApprox {
            r,
            value: d.value_f64(),
            error: d.error_f64(),
            boundary: d.boundary as u8,
        };
        RaabeStatusOk
    })
}
