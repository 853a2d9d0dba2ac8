//! C interface to `gridhfk`.
//!
//! Grids and results are opaque handles created by this library and released
//! with the matching `_free` function. Every fallible call returns a
//! [`GridHfkStatus`]; on failure a description of the last error on the calling
//! thread is available from [`gridhfk_last_error`].
//!
//! Strings returned by this library stay valid until the handle that owns them
//! is freed (or, for the error message, until the next failing call on the same
//! thread).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gridhfk::fixtures::{compute, FixtureRecord, GridSpec};
use gridhfk::{AlexanderRange, BigradedPoly, GridDiagram, TauResult};

/// Result codes. Zero means success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridHfkStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The grid text or arrays do not describe a valid grid diagram.
    InvalidGrid = 3,
    /// An internal consistency check failed during the computation.
    ComputeFailed = 4,
    /// The requested value was not computed or is not determined.
    Unavailable = 5,
    /// The library panicked. This is a bug.
    Panic = 6,
}

/// Which Alexander gradings to compute directly.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridHfkRange {
    /// Gradings >= 0, the rest by symmetry. Faster.
    NonNegative = 0,
    /// Every grading.
    Full = 1,
}

/// An opaque grid diagram.
pub struct GridHfkGrid {
    grid: GridDiagram,
}

/// The outcome of [`gridhfk_compute`].
pub struct GridHfkResult {
    hfk: BigradedPoly,
    tau: Option<TauResult>,
    e2: Option<BigradedPoly>,
    hfk_text: CString,
    e2_text: Option<CString>,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn fail(status: GridHfkStatus, message: impl Into<String>) -> GridHfkStatus {
    set_error(message);
    status
}

/// Runs `f`, turning a panic into [`GridHfkStatus::Panic`].
fn guarded(f: impl FnOnce() -> GridHfkStatus) -> GridHfkStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(GridHfkStatus::Panic, "internal panic"))
}

fn c_string(s: String) -> CString {
    CString::new(s).expect("library output contains no NUL bytes")
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message describing the most recent failure on this thread, or an empty
/// string.
#[no_mangle]
pub extern "C" fn gridhfk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gridhfk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a grid in the text format read by the command line tool.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_grid_parse(text: *const c_char, out: *mut *mut GridHfkGrid) -> GridHfkStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return fail(GridHfkStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(GridHfkStatus::InvalidUtf8, "grid text is not UTF-8");
        };
        match text.parse::<GridDiagram>() {
            Ok(grid) => {
                write_handle(out, GridHfkGrid { grid });
                GridHfkStatus::Ok
            }
            Err(e) => fail(GridHfkStatus::InvalidGrid, e.to_string()),
        }
    })
}

/// Builds a grid from mark rows: `x_rows[c]` and `o_rows[c]` are the rows of
/// the X and O in column `c`, each an array of length `n`.
///
/// # Safety
/// `x_rows` and `o_rows` must point to `n` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_grid_from_rows(
    n: usize,
    x_rows: *const u32,
    o_rows: *const u32,
    out: *mut *mut GridHfkGrid,
) -> GridHfkStatus {
    guarded(|| {
        if x_rows.is_null() || o_rows.is_null() || out.is_null() {
            return fail(GridHfkStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let rows = |p: *const u32| std::slice::from_raw_parts(p, n).iter().map(|&r| r as usize).collect();
        match GridDiagram::with_size(n, rows(x_rows), rows(o_rows)) {
            Ok(grid) => {
                write_handle(out, GridHfkGrid { grid });
                GridHfkStatus::Ok
            }
            Err(e) => fail(GridHfkStatus::InvalidGrid, e.to_string()),
        }
    })
}

/// Number of columns, or 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_grid_size(grid: *const GridHfkGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.grid.size())
}

/// A new grid for the mirror knot.
///
/// # Safety
/// `grid` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_grid_mirror(grid: *const GridHfkGrid, out: *mut *mut GridHfkGrid) -> GridHfkStatus {
    guarded(|| {
        let (Some(g), false) = (grid.as_ref(), out.is_null()) else {
            return fail(GridHfkStatus::NullPointer, "null argument");
        };
        write_handle(out, GridHfkGrid { grid: g.grid.mirror() });
        GridHfkStatus::Ok
    })
}

/// # Safety
/// `grid` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_grid_free(grid: *mut GridHfkGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Computes HFK and, when `spectral` is true, tau and the E2 page.
///
/// # Safety
/// `grid` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_compute(
    grid: *const GridHfkGrid,
    range: GridHfkRange,
    spectral: bool,
    out: *mut *mut GridHfkResult,
) -> GridHfkStatus {
    guarded(|| {
        let (Some(g), false) = (grid.as_ref(), out.is_null()) else {
            return fail(GridHfkStatus::NullPointer, "null argument");
        };
        *out = ptr::null_mut();
        let range = match range {
            GridHfkRange::NonNegative => AlexanderRange::NonNegative,
            GridHfkRange::Full => AlexanderRange::Full,
        };
        let computed = match compute(&g.grid, range, spectral) {
            Ok(c) => c,
            Err(e) => return fail(GridHfkStatus::ComputeFailed, e.to_string()),
        };
        let (tau, tau_reason) = match &computed.tau {
            Some(TauResult::Value(v)) => (Some(*v), None),
            Some(TauResult::Indeterminate(why)) => (None, Some(why.clone())),
            None => (None, None),
        };
        let record = FixtureRecord {
            name: String::new(),
            grid: Some(GridSpec::from(&g.grid)),
            hfk: computed.hfk.clone(),
            tau,
            tau_reason,
            e2: computed.e2.clone(),
        };
        let json = match serde_json::to_string(&record) {
            Ok(s) => s,
            Err(e) => return fail(GridHfkStatus::ComputeFailed, e.to_string()),
        };
        write_handle(
            out,
            GridHfkResult {
                hfk_text: c_string(computed.hfk.to_string()),
                e2_text: computed.e2.as_ref().map(|p| c_string(p.to_string())),
                json: c_string(json),
                hfk: computed.hfk,
                tau: computed.tau,
                e2: computed.e2,
            },
        );
        GridHfkStatus::Ok
    })
}

/// Dimension of HFK in Alexander grading `a` and Maslov grading `m`.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_result_hfk_dim(result: *const GridHfkResult, a: i32, m: i32) -> u64 {
    result.as_ref().map_or(0, |r| r.hfk.get(a, m))
}

/// Dimension of the E2 page at `(a, m)`; 0 when it was not computed.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_result_e2_dim(result: *const GridHfkResult, a: i32, m: i32) -> u64 {
    result.as_ref().and_then(|r| r.e2.as_ref()).map_or(0, |p| p.get(a, m))
}

/// Writes tau to `out`. Returns [`GridHfkStatus::Unavailable`] when tau was
/// not requested or is not determined by the E2 page.
///
/// # Safety
/// `result` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_result_tau(result: *const GridHfkResult, out: *mut i32) -> GridHfkStatus {
    let (Some(r), false) = (result.as_ref(), out.is_null()) else {
        return fail(GridHfkStatus::NullPointer, "null argument");
    };
    match &r.tau {
        Some(TauResult::Value(v)) => {
            *out = *v;
            GridHfkStatus::Ok
        }
        Some(TauResult::Indeterminate(why)) => fail(GridHfkStatus::Unavailable, format!("tau undetermined: {why}")),
        None => fail(GridHfkStatus::Unavailable, "tau was not computed"),
    }
}

/// HFK as a polynomial string such as `t^{-1}+q+q^2t`.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_result_hfk_string(result: *const GridHfkResult) -> *const c_char {
    result.as_ref().map_or(ptr::null(), |r| r.hfk_text.as_ptr())
}

/// The E2 page as a polynomial string, or null when it was not computed.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_result_e2_string(result: *const GridHfkResult) -> *const c_char {
    result
        .as_ref()
        .and_then(|r| r.e2_text.as_ref())
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// The whole result as a JSON record in the fixture format.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_result_json(result: *const GridHfkResult) -> *const c_char {
    result.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `result` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gridhfk_result_free(result: *mut GridHfkResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}
