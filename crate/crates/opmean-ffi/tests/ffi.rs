//! Exercises the C interface through raw pointers, the way a foreign
//! caller would use it.

use std::ffi::{CStr, CString};
use std::ptr;

use opmean_ffi::{
    opmean_counterexample_verify, opmean_last_error_message, opmean_loewner_leq,
    opmean_matrix_dim, opmean_matrix_entries, opmean_matrix_free, opmean_matrix_new, opmean_mean,
    OpmeanMatrix, OpmeanStatus,
};

unsafe fn make(n: usize, re: &[f64]) -> *mut OpmeanMatrix {
    let mut out: *mut OpmeanMatrix = ptr::null_mut();
    let status = opmean_matrix_new(n, re.as_ptr(), ptr::null(), &mut out);
    assert_eq!(status, OpmeanStatus::Ok);
    out
}

unsafe fn last_error_text() -> String {
    let msg = opmean_last_error_message();
    assert!(!msg.is_null());
    CStr::from_ptr(msg).to_str().unwrap().to_string()
}

#[test]
fn matrix_round_trips_through_handles() {
    unsafe {
        let re_in = [2.0, 0.5, 0.5, 3.0];
        let im_in = [0.0, 0.25, -0.25, 0.0];
        let mut m: *mut OpmeanMatrix = ptr::null_mut();
        let status = opmean_matrix_new(2, re_in.as_ptr(), im_in.as_ptr(), &mut m);
        assert_eq!(status, OpmeanStatus::Ok);
        assert_eq!(opmean_matrix_dim(m), 2);

        let mut re_out = [0.0; 4];
        let mut im_out = [0.0; 4];
        let status = opmean_matrix_entries(m, re_out.as_mut_ptr(), im_out.as_mut_ptr());
        assert_eq!(status, OpmeanStatus::Ok);
        assert_eq!(re_out, re_in);
        assert_eq!(im_out, im_in);

        opmean_matrix_free(m);
    }
}

#[test]
fn geometric_mean_matches_the_library() {
    unsafe {
        let a = make(2, &[2.0, 0.0, 0.0, 8.0]);
        let b = make(2, &[8.0, 0.0, 0.0, 2.0]);
        let spec = CString::new("geometric:0.5").unwrap();
        let mut out: *mut OpmeanMatrix = ptr::null_mut();
        let status = opmean_mean(spec.as_ptr(), a, b, &mut out);
        assert_eq!(status, OpmeanStatus::Ok);

        let mut re = [0.0; 4];
        let status = opmean_matrix_entries(out, re.as_mut_ptr(), ptr::null_mut());
        assert_eq!(status, OpmeanStatus::Ok);
        assert!((re[0] - 4.0).abs() <= 1e-12);
        assert!((re[3] - 4.0).abs() <= 1e-12);
        assert!(re[1].abs() <= 1e-12 && re[2].abs() <= 1e-12);

        opmean_matrix_free(a);
        opmean_matrix_free(b);
        opmean_matrix_free(out);
    }
}

#[test]
fn null_pointers_are_rejected() {
    unsafe {
        let mut out: *mut OpmeanMatrix = ptr::null_mut();
        let status = opmean_matrix_new(2, ptr::null(), ptr::null(), &mut out);
        assert_eq!(status, OpmeanStatus::NullPointer);
        assert!(last_error_text().contains("null"));

        let re = [1.0, 0.0, 0.0, 1.0];
        let status = opmean_matrix_new(2, re.as_ptr(), ptr::null(), ptr::null_mut());
        assert_eq!(status, OpmeanStatus::NullPointer);

        assert_eq!(opmean_matrix_dim(ptr::null()), 0);
    }
}

#[test]
fn non_hermitian_entries_are_invalid_input() {
    unsafe {
        let re = [1.0, 2.0, 3.0, 1.0];
        let mut out: *mut OpmeanMatrix = ptr::null_mut();
        let status = opmean_matrix_new(2, re.as_ptr(), ptr::null(), &mut out);
        assert_eq!(status, OpmeanStatus::InvalidInput);
        assert!(!last_error_text().is_empty());
    }
}

#[test]
fn dimension_mismatch_is_invalid_input() {
    unsafe {
        let a = make(2, &[1.0, 0.0, 0.0, 1.0]);
        let b = make(1, &[1.0]);
        let spec = CString::new("geometric:0.5").unwrap();
        let mut out: *mut OpmeanMatrix = ptr::null_mut();
        let status = opmean_mean(spec.as_ptr(), a, b, &mut out);
        assert_eq!(status, OpmeanStatus::InvalidInput);
        opmean_matrix_free(a);
        opmean_matrix_free(b);
    }
}

#[test]
fn indefinite_mean_argument_violates_preconditions() {
    unsafe {
        let a = make(2, &[1.0, 0.0, 0.0, -1.0]);
        let b = make(2, &[1.0, 0.0, 0.0, 1.0]);
        let spec = CString::new("geometric:0.5").unwrap();
        let mut out: *mut OpmeanMatrix = ptr::null_mut();
        let status = opmean_mean(spec.as_ptr(), a, b, &mut out);
        assert_eq!(status, OpmeanStatus::PreconditionViolated);
        opmean_matrix_free(a);
        opmean_matrix_free(b);
    }
}

#[test]
fn bad_spec_reports_a_parse_message() {
    unsafe {
        let a = make(1, &[1.0]);
        let b = make(1, &[2.0]);
        let spec = CString::new("bogus:0.5").unwrap();
        let mut out: *mut OpmeanMatrix = ptr::null_mut();
        let status = opmean_mean(spec.as_ptr(), a, b, &mut out);
        assert_eq!(status, OpmeanStatus::InvalidInput);
        assert!(last_error_text().contains("bogus"));
        opmean_matrix_free(a);
        opmean_matrix_free(b);
    }
}

#[test]
fn loewner_comparison_reports_order_and_witness_eigenvalue() {
    unsafe {
        let a = make(2, &[1.0, 0.0, 0.0, 1.0]);
        let b = make(2, &[2.0, 0.0, 0.0, 3.0]);
        let mut holds = false;
        let mut min_eig = f64::NAN;
        let status = opmean_loewner_leq(a, b, 1e-12, &mut holds, &mut min_eig);
        assert_eq!(status, OpmeanStatus::Ok);
        assert!(holds);
        assert!((min_eig - 1.0).abs() <= 1e-12);

        let status = opmean_loewner_leq(b, a, 1e-12, &mut holds, &mut min_eig);
        assert_eq!(status, OpmeanStatus::Ok);
        assert!(!holds);
        assert!((min_eig + 2.0).abs() <= 1e-12);

        opmean_matrix_free(a);
        opmean_matrix_free(b);
    }
}

#[test]
fn counterexample_reproduces() {
    unsafe {
        let mut reproduced = false;
        let status = opmean_counterexample_verify(&mut reproduced);
        assert_eq!(status, OpmeanStatus::Ok);
        assert!(reproduced);
    }
}

#[test]
fn generated_header_declares_the_interface() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/opmean.h");
    let header = std::fs::read_to_string(path).expect("header should be generated by the build");
    for symbol in [
        "opmean_matrix_new",
        "opmean_matrix_free",
        "opmean_mean",
        "opmean_loewner_leq",
        "opmean_counterexample_verify",
        "opmean_last_error_message",
        "OpmeanStatus",
    ] {
        assert!(header.contains(symbol), "header is missing `{symbol}`");
    }
}
