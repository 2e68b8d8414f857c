//! C interface to `borelpaths-core`.
//!
//! Diagrams are passed as opaque [`BpPartition`] handles. Big integers come
//! back as NUL-terminated decimal strings owned by the caller, who releases
//! them with [`bp_string_free`]. Every fallible call returns a [`BpStatus`];
//! [`bp_last_error`] describes the most recent failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use borelpaths_core::hilbert::{chain_f_vector, hf_from_fvector};
use borelpaths_core::verify::{verdict, Classification};
use borelpaths_core::{
    lex_multiplicity, lex_segment, path_count, revlex_multiplicity, revlex_segment, Error,
    SegmentSpec, StrictPartition,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Resource = 4,
    Inconclusive = 5,
    UnsupportedDegree = 6,
    Panic = 7,
}

/// Outcome of the exhaustive minimality check at one size.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpClassification {
    Lex = 0,
    Revlex = 1,
    TieLexRevlex = 2,
    UniqueSingleSet = 3,
    Other = 4,
}

impl From<Classification> for BpClassification {
    fn from(c: Classification) -> Self {
        match c {
            Classification::Lex => BpClassification::Lex,
            Classification::Revlex => BpClassification::Revlex,
            Classification::TieLexRevlex => BpClassification::TieLexRevlex,
            Classification::UniqueSingleSet => BpClassification::UniqueSingleSet,
            Classification::Other => BpClassification::Other,
        }
    }
}

/// Opaque handle to a strict partition (a shifted Ferrers diagram).
pub struct BpPartition {
    inner: StrictPartition,
}

/// Largest `n` accepted by [`bp_classify`].
pub const BP_EXHAUSTIVE_CAP: u32 = 20;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn status_of(err: &Error) -> BpStatus {
    match err {
        Error::Validation(_) => BpStatus::InvalidArgument,
        Error::Range(_) => BpStatus::OutOfRange,
        Error::Resource(_) => BpStatus::Resource,
        Error::Inconclusive(_) => BpStatus::Inconclusive,
        Error::UnsupportedDegree(_) => BpStatus::UnsupportedDegree,
    }
}

fn fail(status: BpStatus, message: &str) -> BpStatus {
    set_last_error(message);
    status
}

/// Runs `body`, mapping errors and panics to status codes.
fn guarded(body: impl FnOnce() -> Result<(), BpStatus>) -> BpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            BpStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(BpStatus::Panic, "internal panic"),
    }
}

fn core_error(err: Error) -> BpStatus {
    fail(status_of(&err), &err.to_string())
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), BpStatus> {
    if out.is_null() {
        return Err(fail(BpStatus::NullPointer, "output pointer is null"));
    }
    // SAFETY: `out` is non-null and the caller guarantees it is writable.
    unsafe { out.write(value) };
    Ok(())
}

fn write_decimal(out: *mut *mut c_char, value: impl ToString) -> Result<(), BpStatus> {
    if out.is_null() {
        return Err(fail(BpStatus::NullPointer, "output pointer is null"));
    }
    let text = CString::new(value.to_string()).expect("decimal text contains no NUL");
    write_out(out, text.into_raw())
}

fn write_handle(out: *mut *mut BpPartition, inner: StrictPartition) -> Result<(), BpStatus> {
    if out.is_null() {
        return Err(fail(BpStatus::NullPointer, "output pointer is null"));
    }
    write_out(out, Box::into_raw(Box::new(BpPartition { inner })))
}

fn borrow<'a>(handle: *const BpPartition) -> Result<&'a StrictPartition, BpStatus> {
    if handle.is_null() {
        return Err(fail(BpStatus::NullPointer, "partition handle is null"));
    }
    // SAFETY: non-null handles come from this library and are live per the caller.
    Ok(unsafe { &(*handle).inner })
}

fn spec(n: u32, u: u64) -> Result<SegmentSpec, BpStatus> {
    SegmentSpec::new(n, u).map_err(core_error)
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bp_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a partition from `len` strictly decreasing positive parts.
///
/// # Safety
/// `parts` must point to `len` readable values (or be null when `len` is 0);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_partition_new(
    parts: *const u32,
    len: usize,
    out: *mut *mut BpPartition,
) -> BpStatus {
    guarded(|| {
        let rows: &[u32] = match (parts.is_null(), len) {
            (_, 0) => &[],
            (true, _) => return Err(fail(BpStatus::NullPointer, "parts is null")),
            // SAFETY: caller guarantees `len` readable values.
            (false, _) => unsafe { std::slice::from_raw_parts(parts, len) },
        };
        let p = StrictPartition::from_rows(rows).map_err(core_error)?;
        write_handle(out, p)
    })
}

/// Parses a comma-separated partition such as `"12,11,10,9,8,7,6,5,3"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_partition_parse(
    text: *const c_char,
    out: *mut *mut BpPartition,
) -> BpStatus {
    guarded(|| {
        if text.is_null() {
            return Err(fail(BpStatus::NullPointer, "text is null"));
        }
        // SAFETY: caller guarantees a NUL-terminated string.
        let text = unsafe { CStr::from_ptr(text) }
            .to_str()
            .map_err(|_| fail(BpStatus::InvalidArgument, "text is not UTF-8"))?;
        let p: StrictPartition = text.parse().map_err(core_error)?;
        write_handle(out, p)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `handle` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bp_partition_free(handle: *mut BpPartition) {
    if !handle.is_null() {
        // SAFETY: the handle was produced by `Box::into_raw` here.
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Largest part (number of columns); 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_partition_n(handle: *const BpPartition) -> u32 {
    borrow(handle).map(StrictPartition::n).unwrap_or(0)
}

/// Number of boxes; 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_partition_size(handle: *const BpPartition) -> u64 {
    borrow(handle).map(StrictPartition::u).unwrap_or(0)
}

/// Comma-separated text form, freed with [`bp_string_free`].
///
/// # Safety
/// `handle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_partition_to_string(
    handle: *const BpPartition,
    out: *mut *mut c_char,
) -> BpStatus {
    guarded(|| write_decimal(out, borrow(handle)?))
}

/// Number of maximal NE-paths, as a decimal string.
///
/// # Safety
/// `handle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_path_count(
    handle: *const BpPartition,
    out: *mut *mut c_char,
) -> BpStatus {
    guarded(|| write_decimal(out, path_count(borrow(handle)?)))
}

/// `HF(i)` of the algebra generated by the diagram's monomials, as a decimal string.
///
/// # Safety
/// `handle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_hilbert_function(
    handle: *const BpPartition,
    i: u64,
    out: *mut *mut c_char,
) -> BpStatus {
    guarded(|| write_decimal(out, hf_from_fvector(&chain_f_vector(borrow(handle)?), i)))
}

/// Lex segment of size `u` in `n` variables; requires `C(n,2) < u <= C(n+1,2)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_lex_segment(n: u32, u: u64, out: *mut *mut BpPartition) -> BpStatus {
    guarded(|| write_handle(out, lex_segment(spec(n, u)?)))
}

/// RevLex segment of size `u` in `n` variables.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_revlex_segment(n: u32, u: u64, out: *mut *mut BpPartition) -> BpStatus {
    guarded(|| write_handle(out, revlex_segment(spec(n, u)?)))
}

/// Closed-form multiplicity of the Lex segment, as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_lex_multiplicity(n: u32, u: u64, out: *mut *mut c_char) -> BpStatus {
    guarded(|| write_decimal(out, lex_multiplicity(spec(n, u)?)))
}

/// Closed-form multiplicity of the RevLex segment, as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_revlex_multiplicity(n: u32, u: u64, out: *mut *mut c_char) -> BpStatus {
    guarded(|| write_decimal(out, revlex_multiplicity(spec(n, u)?)))
}

/// Exhaustive minimality verdict at `(n, u)`; `n` is limited to [`BP_EXHAUSTIVE_CAP`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_classify(n: u32, u: u64, out: *mut BpClassification) -> BpStatus {
    guarded(|| {
        if n > BP_EXHAUSTIVE_CAP {
            return Err(fail(
                BpStatus::Resource,
                &format!("n = {n} exceeds the exhaustive cap {BP_EXHAUSTIVE_CAP}"),
            ));
        }
        write_out(out, verdict(spec(n, u)?).classification.into())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bp_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string was produced by `CString::into_raw` here.
        drop(unsafe { CString::from_raw(s) });
    }
}
