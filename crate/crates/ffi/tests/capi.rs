use std::ffi::{CStr, CString};
use std::ptr;

use wqa_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { wqa_string_free(s) };
    out
}

fn last_error() -> String {
    let e = wqa_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
}

#[test]
fn handle_lifecycle_and_reduce() {
    let a = [2i64, -1, -1, 2];
    let mut p = ptr::null_mut();
    let st = unsafe { wqa_presentation_new(a.as_ptr(), 2, ptr::null(), ptr::null(), ptr::null(), 3, &mut p) };
    assert_eq!(st, WqaStatus::Ok);
    assert_eq!(unsafe { wqa_presentation_rank(p) }, 2);

    let expr = CString::new("J^3 E1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wqa_reduce(p, expr.as_ptr(), &mut out) }, WqaStatus::Ok);
    assert_eq!(take(out), "J*E1");

    let rel = CString::new("E0*F0 - F0*E0 - (K0 - Kb0)/(q - q^-1)").unwrap();
    let mut z = false;
    assert_eq!(unsafe { wqa_is_zero(p, rel.as_ptr(), &mut z) }, WqaStatus::Ok);
    assert!(z);

    let bad = CString::new("E0 +").unwrap();
    assert_eq!(unsafe { wqa_reduce(p, bad.as_ptr(), &mut out) }, WqaStatus::Syntax);
    assert!(last_error().contains("syntax error at 4"));
    let oob = CString::new("E5").unwrap();
    assert_eq!(unsafe { wqa_reduce(p, oob.as_ptr(), &mut out) }, WqaStatus::IndexOutOfRange);

    unsafe { wqa_presentation_free(p) };
    unsafe { wqa_presentation_free(ptr::null_mut()) };
}

#[test]
fn construction_errors() {
    let mut p = ptr::null_mut();
    let a = [2i64, -1, 0, 2];
    assert_eq!(unsafe { wqa_presentation_new(a.as_ptr(), 2, ptr::null(), ptr::null(), ptr::null(), 3, &mut p) }, WqaStatus::Validation);
    assert!(last_error().contains("ZeroPairViolation(1,0)"));
    assert!(p.is_null());
    let sl2 = [2i64];
    assert_eq!(unsafe { wqa_presentation_new(sl2.as_ptr(), 1, ptr::null(), ptr::null(), ptr::null(), 1, &mut p) }, WqaStatus::UnsupportedM);
    assert_eq!(unsafe { wqa_presentation_new(ptr::null(), 1, ptr::null(), ptr::null(), ptr::null(), 3, &mut p) }, WqaStatus::NullPointer);
    let zero = [0u8];
    assert_eq!(unsafe { wqa_presentation_new(sl2.as_ptr(), 1, ptr::null(), zero.as_ptr(), ptr::null(), 4, &mut p) }, WqaStatus::Ok);
    let e = CString::new("J^3 E0 - E0").unwrap();
    let mut z = false;
    assert_eq!(unsafe { wqa_is_zero(p, e.as_ptr(), &mut z) }, WqaStatus::Ok);
    assert!(z, "type-zero E absorbs J^(m-1)");
    unsafe { wqa_presentation_free(p) };
}

#[test]
fn suite_report() {
    let cfg = CString::new(r#"{"matrix":[[2]],"m":4}"#).unwrap();
    let suite = CString::new("gate").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wqa_run_suite(cfg.as_ptr(), suite.as_ptr(), &mut out) }, WqaStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(json["suite"], "gate");
    assert!(json["checks"].as_array().unwrap().iter().any(|c| c["status"] == "expected-fail"));

    let bad = CString::new("nope").unwrap();
    assert_eq!(unsafe { wqa_run_suite(cfg.as_ptr(), bad.as_ptr(), &mut out) }, WqaStatus::Parse);

    let mut p = ptr::null_mut();
    assert_eq!(unsafe { wqa_presentation_from_config(cfg.as_ptr(), &mut p) }, WqaStatus::Ok);
    assert_eq!(unsafe { wqa_presentation_rank(p) }, 1);
    unsafe { wqa_presentation_free(p) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(wqa_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
