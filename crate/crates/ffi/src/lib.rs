//! C interface to the `markov-ehrhart` engine.
//!
//! Triangles are handed out as opaque `MeTriangle` pointers. Every fallible
//! function returns an `MeStatus` and writes its result through an out
//! pointer; on failure a message describing the problem is available from
//! [`me_last_error`] on the same thread. Strings returned by the library are
//! owned by the caller and must be released with [`me_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use markov_ehrhart::ehrhart::{certify_with_cap, count_lattice_points, EhrhartError};
use markov_ehrhart::factory::{denominator, standard_triangle, StandardPositionSpec};
use markov_ehrhart::markov::{tree, MarkovTriple};
use markov_ehrhart::spec::{parse_triangle, AnyTriangle};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

/// Result codes shared by every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    Overflow = 4,
    NotRational = 5,
    Internal = 6,
}

/// An owned triangle, rational or over a real quadratic field.
pub struct MeTriangle {
    inner: AnyTriangle,
}

#[derive(Debug, Error)]
enum FfiError {
    #[error("argument `{0}` is a null pointer")]
    Null(&'static str),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0} does not fit in 64 bits")]
    Overflow(String),
    #[error("the triangle has irrational vertices")]
    NotRational,
    #[error("internal error: {0}")]
    Internal(String),
}

impl FfiError {
    fn status(&self) -> MeStatus {
        match self {
            FfiError::Null(_) => MeStatus::NullPointer,
            FfiError::Invalid(_) => MeStatus::InvalidInput,
            FfiError::Budget(_) => MeStatus::BudgetExceeded,
            FfiError::Overflow(_) => MeStatus::Overflow,
            FfiError::NotRational => MeStatus::NotRational,
            FfiError::Internal(_) => MeStatus::Internal,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn guard<F>(body: F) -> MeStatus
where
    F: FnOnce() -> Result<(), FfiError>,
{
    clear_last_error();
    let outcome = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            Err(FfiError::Internal(msg))
        }
    };
    match outcome {
        Ok(()) => MeStatus::Ok,
        Err(e) => {
            set_last_error(&e.to_string());
            e.status()
        }
    }
}

unsafe fn triangle_ref<'a>(tri: *const MeTriangle) -> Result<&'a MeTriangle, FfiError> {
    tri.as_ref().ok_or(FfiError::Null("triangle"))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &'static str) -> Result<(), FfiError> {
    if out.is_null() {
        return Err(FfiError::Null(name));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, FfiError> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| FfiError::Internal(e.to_string()))
}

fn boxed(inner: AnyTriangle) -> *mut MeTriangle {
    Box::into_raw(Box::new(MeTriangle { inner }))
}

/// Builds the standard-position triangle of the Markov triple
/// `(p1, p2, p3)` with entry `apex` (0, 1 or 2) at the origin and the
/// default companion lift.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn me_triangle_standard(
    p1: u64,
    p2: u64,
    p3: u64,
    apex: u32,
    out: *mut *mut MeTriangle,
) -> MeStatus {
    guard(|| {
        if out.is_null() {
            return Err(FfiError::Null("out"));
        }
        if apex > 2 {
            return Err(FfiError::Invalid(format!("apex {apex} is not 0, 1 or 2")));
        }
        let triple = MarkovTriple::new(p1, p2, p3).map_err(|e| FfiError::Invalid(e.to_string()))?;
        let spec = StandardPositionSpec::new(triple, apex as usize);
        let t = standard_triangle(&spec).map_err(|e| FfiError::Invalid(e.to_string()))?;
        write_out(out, boxed(AnyTriangle::Rational(t)), "out")
    })
}

/// Parses a triangle description such as `"standard triple=2,5,29 p=5"`
/// or `"vertices (0,0) (1,0) (0,1/2)"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` valid for a pointer
/// write.
#[no_mangle]
pub unsafe extern "C" fn me_triangle_parse(
    spec: *const c_char,
    out: *mut *mut MeTriangle,
) -> MeStatus {
    guard(|| {
        if spec.is_null() {
            return Err(FfiError::Null("spec"));
        }
        if out.is_null() {
            return Err(FfiError::Null("out"));
        }
        let text = CStr::from_ptr(spec)
            .to_str()
            .map_err(|e| FfiError::Invalid(format!("spec is not UTF-8: {e}")))?;
        let t = parse_triangle(text).map_err(|e| FfiError::Invalid(e.to_string()))?;
        write_out(out, boxed(t), "out")
    })
}

/// Releases a triangle. Passing null is a no-op.
///
/// # Safety
/// `tri` must be null or a pointer obtained from this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn me_triangle_free(tri: *mut MeTriangle) {
    if !tri.is_null() {
        drop(Box::from_raw(tri));
    }
}

/// Writes `true` when every vertex of the triangle is rational.
///
/// # Safety
/// `tri` must be a live triangle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn me_triangle_is_rational(
    tri: *const MeTriangle,
    out: *mut bool,
) -> MeStatus {
    guard(|| {
        let t = triangle_ref(tri)?;
        write_out(out, t.inner.as_rational().is_some(), "out")
    })
}

/// Number of lattice points in the closed dilate `t·Δ`. Reports
/// `ME_STATUS_OVERFLOW` when the count needs more than 64 bits; use
/// [`me_count_string`] in that case.
///
/// # Safety
/// `tri` must be a live triangle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn me_count(tri: *const MeTriangle, t: u64, out: *mut u64) -> MeStatus {
    guard(|| {
        let tri = triangle_ref(tri)?;
        let n = count_any(&tri.inner, t);
        let v = n
            .to_u64()
            .ok_or_else(|| FfiError::Overflow(format!("count {n}")))?;
        write_out(out, v, "out")
    })
}

/// Same as [`me_count`], with the count written as a decimal string.
///
/// # Safety
/// `tri` must be a live triangle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn me_count_string(
    tri: *const MeTriangle,
    t: u64,
    out: *mut *mut c_char,
) -> MeStatus {
    guard(|| {
        let tri = triangle_ref(tri)?;
        if out.is_null() {
            return Err(FfiError::Null("out"));
        }
        let s = into_c_string(count_any(&tri.inner, t).to_string())?;
        write_out(out, s, "out")
    })
}

fn count_any(t: &AnyTriangle, k: u64) -> BigInt {
    match t {
        AnyTriangle::Rational(t) => count_lattice_points(t, k),
        AnyTriangle::Quadratic(t) => count_lattice_points(t, k),
    }
}

/// Least common multiple of the vertex-coordinate denominators, as a
/// decimal string. Irrational triangles report `ME_STATUS_NOT_RATIONAL`.
///
/// # Safety
/// `tri` must be a live triangle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn me_denominator(tri: *const MeTriangle, out: *mut *mut c_char) -> MeStatus {
    guard(|| {
        let tri = triangle_ref(tri)?;
        if out.is_null() {
            return Err(FfiError::Null("out"));
        }
        let r = tri.inner.as_rational().ok_or(FfiError::NotRational)?;
        let s = into_c_string(denominator(r).to_string())?;
        write_out(out, s, "out")
    })
}

/// Certified minimal Ehrhart period of a rational triangle. Triangles whose
/// denominator exceeds `cap` give `ME_STATUS_BUDGET_EXCEEDED`.
///
/// # Safety
/// `tri` must be a live triangle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn me_certify_period(
    tri: *const MeTriangle,
    cap: u64,
    out: *mut u64,
) -> MeStatus {
    guard(|| {
        let tri = triangle_ref(tri)?;
        if out.is_null() {
            return Err(FfiError::Null("out"));
        }
        let r = tri.inner.as_rational().ok_or(FfiError::NotRational)?;
        let cert = certify_with_cap(r, cap).map_err(|e| match e {
            EhrhartError::BudgetExceeded { .. } => FfiError::Budget(e.to_string()),
            other => FfiError::Internal(other.to_string()),
        })?;
        write_out(out, cert.period, "out")
    })
}

/// JSON description of the triangle: vertices, area and, where defined,
/// denominator and integral barycentre.
///
/// # Safety
/// `tri` must be a live triangle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn me_triangle_to_json(
    tri: *const MeTriangle,
    out: *mut *mut c_char,
) -> MeStatus {
    guard(|| {
        let tri = triangle_ref(tri)?;
        if out.is_null() {
            return Err(FfiError::Null("out"));
        }
        let s = into_c_string(tri.inner.describe().to_string())?;
        write_out(out, s, "out")
    })
}

/// The first `generations` levels of the Markov tree as a JSON array.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn me_tree_json(generations: u32, out: *mut *mut c_char) -> MeStatus {
    guard(|| {
        if out.is_null() {
            return Err(FfiError::Null("out"));
        }
        if generations > 24 {
            return Err(FfiError::Invalid(format!(
                "{generations} generations is more than the supported 24"
            )));
        }
        let nodes = tree(generations as usize);
        let json = serde_json::to_string(&nodes).map_err(|e| FfiError::Internal(e.to_string()))?;
        write_out(out, into_c_string(json)?, "out")
    })
}

/// Releases a string returned by this library. Passing null is a no-op.
///
/// # Safety
/// `s` must be null or a string obtained from this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn me_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on the calling thread, or null if
/// the last call succeeded. The pointer stays valid until the next call
/// into the library from the same thread.
#[no_mangle]
pub extern "C" fn me_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(c) => c.as_ptr(),
        None => ptr::null(),
    })
}
