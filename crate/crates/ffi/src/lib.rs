//! C ABI over the chow-kunneth engine.
//!
//! Rings and projector sets are handed out as opaque heap handles that the
//! caller releases with the matching `*_free` function. Every fallible call
//! returns a [`CkStatus`]; on failure a message is kept per thread and can be
//! read with [`ck_last_error_message`]. Strings returned by the library are
//! owned by the caller and released with [`ck_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use chow_kunneth::io;
use chow_kunneth::kunneth::{chow_kunneth_projectors, verify_ck, VerificationReport};
use chow_kunneth::{Error, GradedBasisRing, ProjectorSet, SpaceSpec};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Unparseable document or invalid space description.
    Malformed = 3,
    DegeneratePairing = 4,
    RingMismatch = 5,
    NotIdempotent = 6,
    PreconditionViolated = 7,
    /// Any other engine error; see the last error message.
    Engine = 8,
    /// A panic was caught at the boundary.
    Internal = 9,
}

/// Opaque cohomology ring.
pub struct CkRing(Arc<GradedBasisRing>);

/// Opaque projector set.
pub struct CkProjectorSet(ProjectorSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> CkStatus {
    match e {
        Error::Serialization(_)
        | Error::InvalidSpec(_)
        | Error::UnknownLabel(_)
        | Error::MalformedRational(_)
        | Error::MalformedPushforward(_)
        | Error::Inhomogeneous(_) => CkStatus::Malformed,
        Error::DegeneratePairing { .. } => CkStatus::DegeneratePairing,
        Error::RingMismatch(_) => CkStatus::RingMismatch,
        Error::NotIdempotent { .. } => CkStatus::NotIdempotent,
        Error::PreconditionViolated(_) => CkStatus::PreconditionViolated,
        _ => CkStatus::Engine,
    }
}

/// Runs `f`, recording errors and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), CkStatus>) -> CkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CkStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            CkStatus::Internal
        }
    }
}

fn fail(e: Error) -> CkStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CkStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(CkStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        CkStatus::InvalidUtf8
    })
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, CkStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        CkStatus::NullPointer
    })
}

fn check_out<T>(out: *mut T) -> Result<(), CkStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(CkStatus::NullPointer);
    }
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ck_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a ring from a JSON space description.
///
/// # Safety
/// `spec_json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ck_ring_from_spec(spec_json: *const c_char, out: *mut *mut CkRing) -> CkStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(spec_json)?;
        let spec = SpaceSpec::from_json(text).map_err(fail)?;
        let ring = spec.build().map_err(fail)?;
        *out = Box::into_raw(Box::new(CkRing(ring)));
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a handle from [`ck_ring_from_spec`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ck_ring_free(ring: *mut CkRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Number of basis elements, 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ck_ring_rank(ring: *const CkRing) -> usize {
    ring.as_ref().map_or(0, |r| r.0.rank())
}

/// Copies the Betti numbers `b_0 .. b_{2d}` into `out`, which holds `len`
/// entries, and stores the count in `written`. Fails with `PreconditionViolated`
/// if `len` is too small.
///
/// # Safety
/// `ring` must be a live handle, `out` must hold `len` entries and `written`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_ring_betti_numbers(
    ring: *const CkRing,
    out: *mut usize,
    len: usize,
    written: *mut usize,
) -> CkStatus {
    guard(|| {
        let ring = deref(ring)?;
        check_out(out)?;
        check_out(written)?;
        let betti = ring.0.betti_numbers();
        if betti.len() > len {
            set_error(format!("need room for {} entries, got {len}", betti.len()));
            return Err(CkStatus::PreconditionViolated);
        }
        ptr::copy_nonoverlapping(betti.as_ptr(), out, betti.len());
        *written = betti.len();
        Ok(())
    })
}

/// The ring written out in full as JSON, or null on failure.
///
/// # Safety
/// `ring` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ck_ring_to_json(ring: *const CkRing) -> *mut c_char {
    match deref(ring) {
        Ok(r) => into_c_string(io::to_json(&io::ring_file(&r.0))),
        Err(_) => ptr::null_mut(),
    }
}

/// Constructs a complete Chow–Künneth projector set on `ring`.
///
/// # Safety
/// `ring` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ck_projectors_build(ring: *const CkRing, out: *mut *mut CkProjectorSet) -> CkStatus {
    guard(|| {
        check_out(out)?;
        let ring = deref(ring)?;
        let set = chow_kunneth_projectors(&ring.0).map_err(fail)?;
        *out = Box::into_raw(Box::new(CkProjectorSet(set)));
        Ok(())
    })
}

/// Parses a projector file.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ck_projectors_from_json(json: *const c_char, out: *mut *mut CkProjectorSet) -> CkStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(json)?;
        let file: io::ProjectorFile = io::from_json(text).map_err(fail)?;
        let set = io::projectors_from_file(&file).map_err(fail)?;
        *out = Box::into_raw(Box::new(CkProjectorSet(set)));
        Ok(())
    })
}

/// The projector file as JSON, or null for a null handle.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ck_projectors_to_json(set: *const CkProjectorSet) -> *mut c_char {
    match deref(set) {
        Ok(s) => into_c_string(io::to_json(&io::projector_file(&s.0))),
        Err(_) => ptr::null_mut(),
    }
}

/// Number of members, counting the remainder.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ck_projectors_len(set: *const CkProjectorSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.members().len())
}

/// Verifies the set. `all_pass` receives the verdict; when `report_json`
/// is not null it receives the report, to be freed with [`ck_string_free`].
///
/// # Safety
/// `set` must be a live handle, `all_pass` writable and `report_json` null
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn ck_projectors_verify(
    set: *const CkProjectorSet,
    all_pass: *mut bool,
    report_json: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        let set = deref(set)?;
        check_out(all_pass)?;
        let report: VerificationReport = verify_ck(&set.0);
        *all_pass = report.all_pass;
        if !report_json.is_null() {
            *report_json = into_c_string(report.to_json());
        }
        Ok(())
    })
}

/// # Safety
/// `set` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ck_projectors_free(set: *mut CkProjectorSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}
