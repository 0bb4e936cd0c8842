//! Exercises the C ABI exactly the way a foreign caller would: raw
//! pointers, out-parameters, and status codes.

use std::ffi::{CStr, CString};

use raabe_ffi::*;

#[test]
fn bernoulli_table_round_trip() {
    let table = raabe_bernoulli_table_new(8);
    assert!(!table.is_null());
    unsafe {
        // B_2 = X^2 - X + 1/6
        for (i, expected) in [(0u32, "1/6"), (1, "-1"), (2, "1")] {
            let s = raabe_bernoulli_coeff_string(table, 2, i);
            assert!(!s.is_null());
            assert_eq!(CStr::from_ptr(s).to_str().unwrap(), expected);
            raabe_string_free(s);
        }
        // Out of range in either index: null, no crash.
        assert!(raabe_bernoulli_coeff_string(table, 9, 0).is_null());
        assert!(raabe_bernoulli_coeff_string(table, 2, 3).is_null());
        assert!(raabe_bernoulli_coeff_string(std::ptr::null(), 2, 0).is_null());
        raabe_bernoulli_table_free(table);
        raabe_bernoulli_table_free(std::ptr::null_mut());
    }
}

#[test]
fn verification_status_codes() {
    assert_eq!(raabe_verify_raabe(5, 3), RaabeStatus::RaabeStatusOk);
    assert_eq!(raabe_verify_carlitz(4, 2, 3), RaabeStatus::RaabeStatusOk);
    assert_eq!(
        raabe_verify_raabe(2, 0),
        RaabeStatus::RaabeStatusInvalidArgument
    );
}

#[test]
fn kernel_dimension_through_the_boundary() {
    let mut dim = u64::MAX;
    unsafe {
        assert_eq!(
            raabe_kernel_dimension(3, 2, 8, &mut dim),
            RaabeStatus::RaabeStatusOk
        );
        assert_eq!(dim, 1);
        assert_eq!(
            raabe_kernel_dimension(5, 2, 3, &mut dim),
            RaabeStatus::RaabeStatusOk
        );
        assert_eq!(dim, 0);
        assert_eq!(
            raabe_kernel_dimension(3, 1, 8, &mut dim),
            RaabeStatus::RaabeStatusInvalidArgument
        );
        assert_eq!(
            raabe_kernel_dimension(3, 2, 8, std::ptr::null_mut()),
            RaabeStatus::RaabeStatusNullPointer
        );
    }
}

#[test]
fn coefficient_check_reports_witness() {
    let s2 = CString::new("s2").unwrap();
    let mut witness = 0u64;
    unsafe {
        assert_eq!(
            raabe_coeff_residual_check(s2.as_ptr(), 3, 2, 4096, &mut witness),
            RaabeStatus::RaabeStatusOk
        );
        assert_eq!(
            raabe_coeff_residual_check(s2.as_ptr(), 3, 3, 4096, &mut witness),
            RaabeStatus::RaabeStatusNonzeroResidual
        );
        assert_eq!(witness, 1);

        let bogus = CString::new("bogus").unwrap();
        assert_eq!(
            raabe_coeff_residual_check(bogus.as_ptr(), 3, 2, 4096, std::ptr::null_mut()),
            RaabeStatus::RaabeStatusInvalidArgument
        );
    }
}

#[test]
fn series_evaluation_through_the_boundary() {
    let constant = CString::new("constant").unwrap();
    let mut out = RaabeEvalResult {
        value: 0.0,
        truncation_n: 0,
        tail_bound: 0.0,
    };
    unsafe {
        assert_eq!(
            raabe_fourier_eval(constant.as_ptr(), 2, 0.0, 1e-5, 10_000_000, &mut out),
            RaabeStatus::RaabeStatusOk
        );
        assert!((out.value - std::f64::consts::PI.powi(2) / 6.0).abs() < 2e-5);
        assert!(out.tail_bound <= 1e-5);

        assert_eq!(
            raabe_fourier_eval(constant.as_ptr(), 2, 0.0, 1e-12, 1_000, &mut out),
            RaabeStatus::RaabeStatusToleranceUnreachable
        );

        assert_eq!(
            raabe_periodized_bernoulli_eval(4, 0.5, 1e-8, 10_000_000, &mut out),
            RaabeStatus::RaabeStatusOk
        );
        assert!((out.value - 7.0 / 240.0).abs() < 1e-8 + 1e-12);

        // The excluded point of the first-index series.
        assert_eq!(
            raabe_periodized_bernoulli_eval(1, 0.0, 1e-8, 10_000_000, &mut out),
            RaabeStatus::RaabeStatusInvalidArgument
        );
    }
}

#[test]
fn dense_approximation_through_the_boundary() {
    let mut out = RaabeDenseApprox {
        r: 0,
        value: 0.0,
        error: 0.0,
        boundary: 0,
    };
    unsafe {
        assert_eq!(
            raabe_dense_approximate(std::f64::consts::SQRT_2, 2, 10, &mut out),
            RaabeStatus::RaabeStatusOk
        );
        assert_eq!(out.r, 1446);
        assert!(out.error >= 0.0 && out.error < 1.0 / 1023.0);
        assert_eq!(out.boundary, 0);

        assert_eq!(
            raabe_dense_approximate(f64::NAN, 2, 10, &mut out),
            RaabeStatus::RaabeStatusInvalidArgument
        );
    }
}
