//! C ABI for `plotkin-wef`.
//!
//! Enumerators and code trees are handed out as opaque pointers that the
//! caller releases with the matching `*_free` function. Fallible calls return
//! a [`PwStatus`] and write their result through an out-pointer; on failure
//! [`pw_last_error`] describes what went wrong. Strings returned by this
//! library are owned by the caller and released with [`pw_string_free`].
//!
//! Coefficients cross the boundary as decimal strings (`"14"`, `"2/3"`) so
//! no precision is lost.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use plotkin_wef::bounds::{truncated_union_bound, ChannelPoint};
use plotkin_wef::enumerator::format_rational;
use plotkin_wef::oracle::{ensemble_wef_exhaustive, BinaryMatrix};
use plotkin_wef::{plotkin, CodeTree, Error, WeightEnumerator};

/// Result codes of the fallible entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    LengthMismatch = 4,
    Budget = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

/// Opaque weight enumerator.
pub struct PwEnumerator(WeightEnumerator);

/// Opaque code tree.
pub struct PwTree(CodeTree);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

impl From<&Error> for PwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Json(_) | Error::ExponentTooLarge { .. } => {
                PwStatus::Parse
            }
            Error::LengthMismatch { .. } => PwStatus::LengthMismatch,
            Error::Budget(_) => PwStatus::Budget,
            _ => PwStatus::InvalidArgument,
        }
    }
}

/// Runs `f`, recording errors and converting panics into `PwStatus::Panic`.
fn guard(f: impl FnOnce() -> Result<(), (PwStatus, String)>) -> PwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PwStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PwStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (PwStatus, String) {
    ((&e).into(), e.to_string())
}

fn null_err(what: &str) -> (PwStatus, String) {
    (PwStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (PwStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (PwStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (PwStatus, String)> {
    p.as_ref().ok_or_else(|| null_err(what))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn store<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn pw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial such as `"1 + 14x^4 + x^8"` into a length-`n` enumerator.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_enumerator_parse_poly(
    text: *const c_char,
    n: usize,
    out: *mut *mut PwEnumerator,
) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let text = read_str(text, "text")?;
        let e = WeightEnumerator::parse_poly(text, n).map_err(lib_err)?;
        store(out, PwEnumerator(e));
        Ok(())
    })
}

/// Parses `{"n": ..., "coeffs": {...}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_enumerator_from_json(
    json: *const c_char,
    out: *mut *mut PwEnumerator,
) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let e = WeightEnumerator::from_json(read_str(json, "json")?).map_err(lib_err)?;
        store(out, PwEnumerator(e));
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pw_enumerator_free(e: *mut PwEnumerator) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Code length `n`, or 0 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pw_enumerator_length(e: *const PwEnumerator) -> usize {
    e.as_ref().map_or(0, |e| e.0.length())
}

/// Smallest positive weight with a nonzero coefficient, or -1 if there is
/// none (or `e` is null).
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pw_enumerator_min_positive_weight(e: *const PwEnumerator) -> i64 {
    e.as_ref()
        .and_then(|e| e.0.min_positive_weight())
        .map_or(-1, |w| w as i64)
}

/// Coefficient of `X^w` as `"p"` or `"p/q"`.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_enumerator_coefficient(
    e: *const PwEnumerator,
    w: usize,
    out: *mut *mut c_char,
) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let e = deref(e, "enumerator")?;
        if w > e.0.length() {
            return Err(lib_err(Error::Range {
                what: "weight",
                value: w as i64,
                min: 0,
                max: e.0.length() as i64,
            }));
        }
        *out = into_c_string(format_rational(&e.0.coeffs()[w]));
        Ok(())
    })
}

/// Canonical polynomial text; null if `e` is null. Free with [`pw_string_free`].
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pw_enumerator_to_poly(e: *const PwEnumerator) -> *mut c_char {
    e.as_ref()
        .map_or(ptr::null_mut(), |e| into_c_string(e.0.format_poly()))
}

/// JSON form; null if `e` is null. Free with [`pw_string_free`].
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pw_enumerator_to_json(e: *const PwEnumerator) -> *mut c_char {
    e.as_ref()
        .map_or(ptr::null_mut(), |e| into_c_string(e.0.to_json()))
}

/// Ensemble enumerator of `{(u + vP, v)}` with `u` from `a0` and `v` from `a1`.
///
/// # Safety
/// `a0`, `a1` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_combine(
    a0: *const PwEnumerator,
    a1: *const PwEnumerator,
    out: *mut *mut PwEnumerator,
) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let (a0, a1) = (deref(a0, "a0")?, deref(a1, "a1")?);
        let a = plotkin::combine(&a0.0, &a1.0).map_err(lib_err)?;
        store(out, PwEnumerator(a));
        Ok(())
    })
}

/// Single coefficient `A_w` of [`pw_combine`], as a string.
///
/// # Safety
/// `a0`, `a1` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_combine_single_weight(
    a0: *const PwEnumerator,
    a1: *const PwEnumerator,
    w: usize,
    out: *mut *mut c_char,
) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let (a0, a1) = (deref(a0, "a0")?, deref(a1, "a1")?);
        let c = plotkin::combine_single_weight(&a0.0, &a1.0, w).map_err(lib_err)?;
        *out = into_c_string(format_rational(&c));
        Ok(())
    })
}

/// Truncated union bound `sum_{w=1}^{W} A_w Q(sqrt(2 w R Eb/N0))`.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_truncated_union_bound(
    e: *const PwEnumerator,
    truncate: usize,
    rate: f64,
    ebn0_db: f64,
    out: *mut f64,
) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let e = deref(e, "enumerator")?;
        let ch = ChannelPoint::new(rate, ebn0_db).map_err(lib_err)?;
        *out = truncated_union_bound(&e.0, truncate, ch).map_err(lib_err)?;
        Ok(())
    })
}

/// Exhaustive permutation-average spectrum for two generator matrices in
/// JSON (`{"n": 3, "rows": ["110", "011"]}`).
///
/// # Safety
/// `g0_json`, `g1_json` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_oracle_exhaustive(
    g0_json: *const c_char,
    g1_json: *const c_char,
    out: *mut *mut PwEnumerator,
) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let g0 = BinaryMatrix::from_json(read_str(g0_json, "g0_json")?).map_err(lib_err)?;
        let g1 = BinaryMatrix::from_json(read_str(g1_json, "g1_json")?).map_err(lib_err)?;
        let a = ensemble_wef_exhaustive(&g0, &g1).map_err(lib_err)?;
        store(out, PwEnumerator(a));
        Ok(())
    })
}

/// Reed-Muller tree `RM(r, m)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_tree_reed_muller(r: i64, m: u32, out: *mut *mut PwTree) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        store(out, PwTree(CodeTree::reed_muller(r, m).map_err(lib_err)?));
        Ok(())
    })
}

/// Depth-`m` tree with the given active leaf indices (`active` may be null
/// when `len` is 0).
///
/// # Safety
/// `active` must point to `len` readable `size_t` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pw_tree_from_active_set(
    m: u32,
    active: *const usize,
    len: usize,
    out: *mut *mut PwTree,
) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let idx: &[usize] = if len == 0 {
            &[]
        } else if active.is_null() {
            return Err(null_err("active"));
        } else {
            std::slice::from_raw_parts(active, len)
        };
        store(
            out,
            PwTree(CodeTree::from_active_set(m, idx).map_err(lib_err)?),
        );
        Ok(())
    })
}

/// Tree from `{"m": ..., "active": [...]}` or `{"rm": {"r": ..., "m": ...}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_tree_from_json(json: *const c_char, out: *mut *mut PwTree) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        store(
            out,
            PwTree(CodeTree::from_json(read_str(json, "json")?).map_err(lib_err)?),
        );
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pw_tree_free(t: *mut PwTree) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pw_tree_length(t: *const PwTree) -> usize {
    t.as_ref().map_or(0, |t| t.0.length())
}

/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pw_tree_dimension(t: *const PwTree) -> usize {
    t.as_ref().map_or(0, |t| t.0.dimension())
}

/// Ensemble spectrum of the tree.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_tree_ensemble_wef(
    t: *const PwTree,
    out: *mut *mut PwEnumerator,
) -> PwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let t = deref(t, "tree")?;
        store(out, PwEnumerator(t.0.ensemble_wef()));
        Ok(())
    })
}

/// Identity-interleaver generator matrix as JSON; null if `t` is null.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pw_tree_generator_json(t: *const PwTree) -> *mut c_char {
    t.as_ref().map_or(ptr::null_mut(), |t| {
        into_c_string(t.0.generator_matrix().to_json())
    })
}
