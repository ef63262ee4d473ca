//! C ABI over the wqa engine.
//!
//! Every fallible function returns a [`WqaStatus`]; on failure a message is
//! available from [`wqa_last_error`] until the next call on the same thread.
//! Strings returned through out-pointers are owned by the caller and must be
//! released with [`wqa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wqa::cli::{parse_config, parse_expression, run_suite};
use wqa::{validate_datum, Error, GenType, Presentation, TypeTable};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WqaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Validation = 3,
    Parse = 4,
    Syntax = 5,
    UnknownGenerator = 6,
    IndexOutOfRange = 7,
    UnsupportedM = 8,
    BudgetExceeded = 9,
    /// The suite ran but some check failed; the report is still written.
    ChecksFailed = 10,
    Other = 11,
    Panic = 12,
}

/// Opaque presentation handle.
pub struct WqaPresentation {
    inner: Presentation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> WqaStatus {
    match e {
        Error::Validation(_) => WqaStatus::Validation,
        Error::Parse(_) | Error::Io(_) => WqaStatus::Parse,
        Error::Syntax { .. } => WqaStatus::Syntax,
        Error::UnknownGenerator(_) => WqaStatus::UnknownGenerator,
        Error::IndexOutOfRange { .. } => WqaStatus::IndexOutOfRange,
        Error::UnsupportedM(_) => WqaStatus::UnsupportedM,
        Error::ReductionBudgetExceeded(_) => WqaStatus::BudgetExceeded,
        _ => WqaStatus::Other,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<WqaStatus, (WqaStatus, String)>) -> WqaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            WqaStatus::Panic
        }
    }
}

fn engine(e: Error) -> (WqaStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (WqaStatus, String)> {
    if s.is_null() {
        return Err((WqaStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (WqaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn types(flags: *const u8, n: usize) -> Vec<GenType> {
    if flags.is_null() {
        return vec![GenType::One; n];
    }
    std::slice::from_raw_parts(flags, n).iter().map(|&b| if b == 0 { GenType::Zero } else { GenType::One }).collect()
}

/// Builds a presentation from a row-major `rank x rank` matrix.
///
/// `symmetrizers`, `tau_e` and `tau_f` may be null (all ones, all type one).
/// A nonzero entry of `tau_e`/`tau_f` means type one, zero means type zero.
///
/// # Safety
/// Non-null pointers must reference `rank * rank` (matrix) or `rank`
/// readable elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wqa_presentation_new(
    matrix: *const i64,
    rank: usize,
    symmetrizers: *const i64,
    tau_e: *const u8,
    tau_f: *const u8,
    m: i64,
    out: *mut *mut WqaPresentation,
) -> WqaStatus {
    guard(|| {
        if matrix.is_null() || out.is_null() {
            return Err((WqaStatus::NullPointer, "matrix or out is null".into()));
        }
        let flat = std::slice::from_raw_parts(matrix, rank * rank);
        let a: Vec<Vec<i64>> = flat.chunks(rank.max(1)).map(<[i64]>::to_vec).collect();
        let s = if symmetrizers.is_null() { vec![1; rank] } else { std::slice::from_raw_parts(symmetrizers, rank).to_vec() };
        let d = validate_datum(&a, &s).map_err(engine)?;
        let tau = TypeTable { e: types(tau_e, rank), f: types(tau_f, rank) };
        let p = Presentation::build(&d, &tau, m).map_err(engine)?;
        *out = Box::into_raw(Box::new(WqaPresentation { inner: p }));
        Ok(WqaStatus::Ok)
    })
}

/// Builds a presentation from a JSON configuration document.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wqa_presentation_from_config(config_json: *const c_char, out: *mut *mut WqaPresentation) -> WqaStatus {
    guard(|| {
        if out.is_null() {
            return Err((WqaStatus::NullPointer, "out is null".into()));
        }
        let cfg = parse_config(read_str(config_json, "config")?).map_err(engine)?;
        let p = cfg.presentation().map_err(engine)?;
        *out = Box::into_raw(Box::new(WqaPresentation { inner: p }));
        Ok(WqaStatus::Ok)
    })
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wqa_presentation_free(p: *mut WqaPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Rank of the datum, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wqa_presentation_rank(p: *const WqaPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.inner.rank())
}

/// Reduces `expr` and writes its normal form.
///
/// # Safety
/// `p` must be a live handle, `expr` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wqa_reduce(p: *const WqaPresentation, expr: *const c_char, out: *mut *mut c_char) -> WqaStatus {
    guard(|| {
        let (Some(p), false) = (p.as_ref(), out.is_null()) else {
            return Err((WqaStatus::NullPointer, "handle or out is null".into()));
        };
        let x = parse_expression(read_str(expr, "expr")?, &p.inner).map_err(engine)?;
        let r = p.inner.reduce(&x).map_err(engine)?;
        *out = into_c(r.to_string());
        Ok(WqaStatus::Ok)
    })
}

/// Writes whether `expr` reduces to zero.
///
/// # Safety
/// `p` must be a live handle, `expr` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wqa_is_zero(p: *const WqaPresentation, expr: *const c_char, out: *mut bool) -> WqaStatus {
    guard(|| {
        let (Some(p), false) = (p.as_ref(), out.is_null()) else {
            return Err((WqaStatus::NullPointer, "handle or out is null".into()));
        };
        let x = parse_expression(read_str(expr, "expr")?, &p.inner).map_err(engine)?;
        *out = p.inner.is_zero(&x).map_err(engine)?;
        Ok(WqaStatus::Ok)
    })
}

/// Runs a suite on a JSON configuration and writes the JSON report.
/// Returns `ChecksFailed` when the report contains unexpected outcomes.
///
/// # Safety
/// `config_json` and `suite` must be NUL-terminated; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn wqa_run_suite(config_json: *const c_char, suite: *const c_char, out_json: *mut *mut c_char) -> WqaStatus {
    guard(|| {
        if out_json.is_null() {
            return Err((WqaStatus::NullPointer, "out_json is null".into()));
        }
        let cfg = parse_config(read_str(config_json, "config")?).map_err(engine)?;
        let rep = run_suite(&cfg, read_str(suite, "suite")?).map_err(engine)?;
        *out_json = into_c(rep.to_json());
        Ok(if rep.passed() { WqaStatus::Ok } else { WqaStatus::ChecksFailed })
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wqa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wqa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn wqa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
