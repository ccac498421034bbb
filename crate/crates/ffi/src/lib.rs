//! C ABI over `laguerre_deform`.
//!
//! Rationals cross the boundary as NUL-terminated strings (`"p/q"` or
//! integers). Polynomials and weight vectors are opaque handles owned by the
//! caller and released with the matching `*_free` function. Every call
//! returns an `LdStatus`; on failure `ld_last_error` describes the cause for
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use laguerre_deform::algebra::{int, parse_rational, Poly, Rational};
use laguerre_deform::deform::{apply_deformation, Alpha};
use laguerre_deform::gram;
use laguerre_deform::laguerre::laguerre;
use laguerre_deform::measure;
use laguerre_deform::numeric::gamma_value_to_f64;
use laguerre_deform::Error;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LdStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed rational or non-UTF-8 string.
    Parse = 2,
    /// Measure parameters with beta - s <= -1.
    Inadmissible = 3,
    DegenerateGram = 4,
    InvalidArgument = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

/// Opaque exact polynomial.
pub struct LdPoly(Poly);

/// Opaque vector of exact weights.
pub struct LdWeights(Vec<Rational>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(LdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => LdStatus::Parse,
            Error::Integrability { .. } => LdStatus::Inadmissible,
            Error::DegenerateGram { .. } => LdStatus::DegenerateGram,
            _ => LdStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LdStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LdStatus::Internal
        }
    }
}

fn null() -> Fail {
    Fail(LdStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_rational(s: *const c_char) -> Result<Rational, Fail> {
    if s.is_null() {
        return Err(null());
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(LdStatus::Parse, "string is not UTF-8".into()))?;
    Ok(parse_rational(text)?)
}

unsafe fn poly_ref<'a>(p: *const LdPoly) -> Result<&'a Poly, Fail> {
    p.as_ref().map(|p| &p.0).ok_or_else(null)
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

unsafe fn store_poly(out: *mut *mut LdPoly, p: Poly) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(LdPoly(p)));
    Ok(())
}

fn alpha_from(alpha: i32) -> Result<Alpha, Fail> {
    match alpha {
        1 => Ok(Alpha::Plus),
        -1 => Ok(Alpha::Minus),
        _ => Err(Fail(
            LdStatus::InvalidArgument,
            format!("alpha must be 1 or -1, got {alpha}"),
        )),
    }
}

/// Laguerre polynomial L(n, beta).
///
/// # Safety
/// `beta` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_laguerre(
    n: u32,
    beta: *const c_char,
    out: *mut *mut LdPoly,
) -> LdStatus {
    guard(|| {
        let beta = read_rational(beta)?;
        store_poly(out, laguerre(n as usize, &beta))
    })
}

/// Deformed Laguerre polynomial; `alpha` is 1 or -1 (-1 gives the M family).
///
/// # Safety
/// `beta` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_deformed(
    n: u32,
    beta: *const c_char,
    s: u32,
    alpha: i32,
    out: *mut *mut LdPoly,
) -> LdStatus {
    guard(|| {
        let beta = read_rational(beta)?;
        let alpha = alpha_from(alpha)?;
        store_poly(
            out,
            apply_deformation(&laguerre(n as usize, &beta), &int(s as i64), alpha),
        )
    })
}

/// Orthogonalized polynomial C_n for the measure with parameters (s, beta).
///
/// # Safety
/// `beta` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_c_poly(
    n: u32,
    s: u32,
    beta: *const c_char,
    out: *mut *mut LdPoly,
) -> LdStatus {
    guard(|| {
        let beta = read_rational(beta)?;
        store_poly(out, gram::c_poly(n as usize, s, &beta)?)
    })
}

/// Undeformed pre-image W_n of C_n.
///
/// # Safety
/// `beta` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_w_poly(
    n: u32,
    s: u32,
    beta: *const c_char,
    out: *mut *mut LdPoly,
) -> LdStatus {
    guard(|| {
        let beta = read_rational(beta)?;
        store_poly(out, gram::w_poly(n as usize, s, &beta)?)
    })
}

/// Degree of `p`, or -1 for the zero polynomial.
///
/// # Safety
/// `p` must be a handle from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_poly_degree(p: *const LdPoly, out: *mut i64) -> LdStatus {
    guard(|| {
        let p = poly_ref(p)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = p.degree().map_or(-1, |d| d as i64);
        Ok(())
    })
}

/// Coefficient of z^k as a newly allocated string; free with `ld_string_free`.
///
/// # Safety
/// `p` must be a handle from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_poly_coeff(
    p: *const LdPoly,
    k: u32,
    out: *mut *mut c_char,
) -> LdStatus {
    guard(|| {
        let p = poly_ref(p)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = to_c_string(p.coeff(k as usize).to_string());
        Ok(())
    })
}

/// Exact value at the rational `z`. Either output pointer may be null.
///
/// # Safety
/// `p` must be a handle from this library and `z` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ld_poly_eval(
    p: *const LdPoly,
    z: *const c_char,
    exact: *mut *mut c_char,
    value: *mut f64,
) -> LdStatus {
    guard(|| {
        let p = poly_ref(p)?;
        let z = read_rational(z)?;
        let v = p.evaluate(&z);
        if let Some(value) = value.as_mut() {
            *value = v.to_f64().unwrap_or(f64::NAN);
        }
        if let Some(exact) = exact.as_mut() {
            *exact = to_c_string(v.to_string());
        }
        Ok(())
    })
}

/// Floating-point value at `x`.
///
/// # Safety
/// `p` must be a handle from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_poly_eval_f64(p: *const LdPoly, x: f64, out: *mut f64) -> LdStatus {
    guard(|| {
        let p = poly_ref(p)?;
        *out.as_mut().ok_or_else(null)? = p.eval_f64(x);
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ld_poly_free(p: *mut LdPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// n-th moment as `coeff` times Gamma(beta + 1). `coeff` receives the
/// rational as a string and `value` the full floating-point moment; either
/// may be null.
///
/// # Safety
/// `beta` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ld_moment(
    n: u32,
    s: u32,
    beta: *const c_char,
    coeff: *mut *mut c_char,
    value: *mut f64,
) -> LdStatus {
    guard(|| {
        let beta = read_rational(beta)?;
        let m = measure::moment(n, s, &beta)?;
        if let Some(value) = value.as_mut() {
            *value = gamma_value_to_f64(&m);
        }
        if let Some(coeff) = coeff.as_mut() {
            *coeff = to_c_string(m.coeff.to_string());
        }
        Ok(())
    })
}

/// Weights expressing C_n through M_n, ..., M_1.
///
/// # Safety
/// `beta` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_weights(
    n: u32,
    s: u32,
    beta: *const c_char,
    out: *mut *mut LdWeights,
) -> LdStatus {
    guard(|| {
        let beta = read_rational(beta)?;
        let w = gram::weights(n as usize, s, &beta)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = Box::into_raw(Box::new(LdWeights(w.into_vec())));
        Ok(())
    })
}

/// # Safety
/// `w` must be a handle from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_weights_len(w: *const LdWeights, out: *mut usize) -> LdStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = w.0.len();
        Ok(())
    })
}

/// Weight `i` as a newly allocated string; free with `ld_string_free`.
///
/// # Safety
/// `w` must be a handle from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_weights_get(
    w: *const LdWeights,
    i: usize,
    out: *mut *mut c_char,
) -> LdStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(null)?;
        let x = w.0.get(i).ok_or_else(|| {
            Fail(
                LdStatus::InvalidArgument,
                format!("weight index {i} out of range {}", w.0.len()),
            )
        })?;
        *out.as_mut().ok_or_else(null)? = to_c_string(x.to_string());
        Ok(())
    })
}

/// # Safety
/// `w` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ld_weights_free(w: *mut LdWeights) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ld_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ld_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
