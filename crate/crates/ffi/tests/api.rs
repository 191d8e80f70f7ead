use std::ffi::{CStr, CString};
use std::ptr;

use cubedom_ffi::*;

fn last_error() -> String {
    let p = cubedom_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut libc::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { cubedom_string_free(p) };
    s
}

#[test]
fn scalar_calls() {
    let mut v = 0u64;
    unsafe {
        assert_eq!(cubedom_binomial(64, 32, &mut v), CubedomStatus::Ok);
        assert_eq!(v, 1_832_624_140_942_590_534);
        assert_eq!(cubedom_binomial(70, 35, &mut v), CubedomStatus::Overflow);
        assert!(last_error().contains("overflows"));
        assert_eq!(cubedom_counting_lower_bound(4, 3, 2, &mut v), CubedomStatus::Ok);
        assert_eq!(v, 3);
        let mut x = 0.0;
        assert_eq!(cubedom_conjecture_main_term(10, 3, &mut x), CubedomStatus::Ok);
        assert_eq!(x, 37.5);
        assert_eq!(cubedom_conjecture_main_term(10, 2, &mut x), CubedomStatus::InvalidParameters);
        assert_eq!(cubedom_binomial(5, 2, ptr::null_mut()), CubedomStatus::NullPointer);
    }
    assert!(cubedom_last_error_message().is_null() || !last_error().is_empty());
}

#[test]
fn certificate_lifecycle() {
    unsafe {
        let mut cert = ptr::null_mut();
        assert_eq!(cubedom_theorem1_construct(6, 4, &mut cert), CubedomStatus::Ok);
        assert_eq!(cubedom_certificate_size(cert), 6);

        let mut ok = false;
        let mut witness = ptr::null_mut();
        assert_eq!(cubedom_certificate_verify(cert, &mut ok, &mut witness), CubedomStatus::Ok);
        assert!(ok);
        assert!(witness.is_null());

        let mut verdict = CubedomVerdict::Inconclusive;
        assert_eq!(cubedom_certificate_verify_structural(cert, &mut verdict), CubedomStatus::Ok);
        assert_eq!(verdict, CubedomVerdict::Verified);

        let mut json = ptr::null_mut();
        assert_eq!(cubedom_certificate_to_json(cert, &mut json), CubedomStatus::Ok);
        let text = take_string(json);
        assert!(text.starts_with(r#"{"n":6,"k":4,"l":2,"provenance":"theorem1","members":["#));
        cubedom_certificate_free(cert);
        assert_eq!(cubedom_certificate_size(ptr::null()), 0);
        cubedom_certificate_free(ptr::null_mut());
    }
}

#[test]
fn failing_certificate_reports_witness() {
    let json = CString::new(
        r#"{"n":4,"k":3,"l":2,"provenance":"external","members":[{"level":"upper","elements":[1,2,3]}]}"#,
    )
    .unwrap();
    unsafe {
        let mut cert = ptr::null_mut();
        assert_eq!(cubedom_certificate_from_json(json.as_ptr(), &mut cert), CubedomStatus::Ok);
        let mut ok = true;
        let mut witness = ptr::null_mut();
        assert_eq!(cubedom_certificate_verify(cert, &mut ok, &mut witness), CubedomStatus::Ok);
        assert!(!ok);
        assert_eq!(take_string(witness), r#"{"level":"lower","elements":[1,4]}"#);
        cubedom_certificate_free(cert);

        let bad = CString::new("{not json").unwrap();
        assert_eq!(cubedom_certificate_from_json(bad.as_ptr(), &mut cert), CubedomStatus::InvalidInput);
        assert_eq!(cubedom_certificate_from_json(ptr::null(), &mut cert), CubedomStatus::NullPointer);
    }
}

#[test]
fn solver_reports() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(cubedom_exact(6, 4, 2, 10_000_000, 2, &mut r), CubedomStatus::Ok);
        let (mut value, mut lb, mut proven) = (0, 0, false);
        assert_eq!(cubedom_report_value(r, &mut value), CubedomStatus::Ok);
        assert_eq!(cubedom_report_lower_bound(r, &mut lb), CubedomStatus::Ok);
        assert_eq!(cubedom_report_proven_optimal(r, &mut proven), CubedomStatus::Ok);
        assert_eq!((value, lb, proven), (6, 6, true));

        let mut w = ptr::null_mut();
        assert_eq!(cubedom_report_witness(r, &mut w), CubedomStatus::Ok);
        assert_eq!(cubedom_certificate_size(w), 6);
        cubedom_certificate_free(w);

        let mut json = ptr::null_mut();
        assert_eq!(cubedom_report_to_json(r, &mut json), CubedomStatus::Ok);
        assert!(take_string(json).contains(r#""method":"branch_and_bound""#));
        cubedom_report_free(r);

        assert_eq!(cubedom_brute_force(5, 2, 1, 10, &mut r), CubedomStatus::Ok);
        assert_eq!(cubedom_report_value(r, &mut value), CubedomStatus::Ok);
        assert_eq!(value, 4);
        cubedom_report_free(r);

        assert_eq!(cubedom_greedy(20, 10, 2, &mut r), CubedomStatus::TooLarge);
        assert_eq!(cubedom_exact(7, 3, 2, 1, 1, &mut r), CubedomStatus::Ok);
        assert_eq!(cubedom_report_proven_optimal(r, &mut proven), CubedomStatus::Ok);
        assert!(!proven);
        let mut nodes = 0;
        assert_eq!(cubedom_report_nodes_explored(r, &mut nodes), CubedomStatus::Ok);
        assert_eq!(nodes, 1);
        cubedom_report_free(r);
        assert_eq!(cubedom_report_value(ptr::null(), &mut value), CubedomStatus::NullPointer);
    }
}
