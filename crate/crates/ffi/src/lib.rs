//! C ABI over `sdcodes`.
//!
//! Every function returns an [`SdStatus`]; on failure [`sd_last_error`] holds a
//! message for the calling thread. Strings handed out are freed with
//! [`sd_string_free`], code sets with [`sd_code_set_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigUint;
use sdcodes::doc::CodeDocument;
use sdcodes::duality::{is_self_dual, span_build};
use sdcodes::selfdual::{
    check_enumeration_budget, count_nprime, enumerate_all, CountReport, SelfDualCode,
};
use sdcodes::{CodeRing, Error, FieldCtx};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Budget = 4,
    Inconsistent = 5,
    IndexOutOfRange = 6,
    Overflow = 7,
    Panic = 8,
}

/// Opaque set of enumerated self-dual codes.
pub struct SdCodeSet {
    ring: CodeRing,
    codes: Vec<SelfDualCode>,
    report: CountReport,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SdCounts {
    pub type4: u64,
    pub n: u64,
    pub nprime: u64,
    pub total: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SdStatus {
    match e {
        Error::Budget { .. } => SdStatus::Budget,
        Error::Parse(_) => SdStatus::Parse,
        Error::Inconsistent(_) => SdStatus::Inconsistent,
        _ => SdStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (SdStatus, String)>) -> SdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SdStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside sdcodes");
            SdStatus::Panic
        }
    }
}

fn lib(e: Error) -> (SdStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (SdStatus, String) {
    (SdStatus::NullPointer, format!("{name} is null"))
}

fn ring(s: u32, m: u32) -> Result<CodeRing, (SdStatus, String)> {
    CodeRing::new(FieldCtx::new(m).map_err(lib)?, s).map_err(lib)
}

fn counts(rep: &CountReport) -> Result<SdCounts, (SdStatus, String)> {
    let fit = |v: &BigUint| {
        u64::try_from(v).map_err(|_| (SdStatus::Overflow, format!("{v} does not fit in 64 bits")))
    };
    Ok(SdCounts {
        type4: rep.count_type4 as u64,
        n: fit(&rep.count_n)?,
        nprime: fit(&rep.count_nprime)?,
        total: fit(&rep.total())?,
    })
}

/// Message for the last failed call on this thread; empty if none.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Enumerates every self-dual code for `(s, m)` into `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sd_enumerate(
    s: u32,
    m: u32,
    budget: u64,
    out: *mut *mut SdCodeSet,
) -> SdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let r = ring(s, m)?;
        check_enumeration_budget(&r, budget).map_err(lib)?;
        let (codes, report) = enumerate_all(&r).map_err(lib)?;
        let set = Box::new(SdCodeSet {
            ring: r,
            codes,
            report,
        });
        *out = Box::into_raw(set);
        Ok(())
    })
}

/// Releases a set from [`sd_enumerate`]; null is ignored.
///
/// # Safety
/// `set` must come from [`sd_enumerate`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sd_code_set_free(set: *mut SdCodeSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be a live set and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sd_code_set_len(set: *const SdCodeSet, out: *mut usize) -> SdStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = set.codes.len();
        Ok(())
    })
}

/// # Safety
/// `set` must be a live set and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sd_code_set_counts(set: *const SdCodeSet, out: *mut SdCounts) -> SdStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = counts(&set.report)?;
        Ok(())
    })
}

/// Type tag (1..=8) of code `index`.
///
/// # Safety
/// `set` must be a live set and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sd_code_set_type(
    set: *const SdCodeSet,
    index: usize,
    out: *mut u8,
) -> SdStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let code = set.codes.get(index).ok_or_else(|| {
            (
                SdStatus::IndexOutOfRange,
                format!("index {index} of {}", set.codes.len()),
            )
        })?;
        *out = code.spec.type_tag;
        Ok(())
    })
}

/// JSON document for code `index`; free with [`sd_string_free`].
///
/// # Safety
/// `set` must be a live set and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sd_code_set_json(
    set: *const SdCodeSet,
    index: usize,
    out: *mut *mut c_char,
) -> SdStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let code = set.codes.get(index).ok_or_else(|| {
            (
                SdStatus::IndexOutOfRange,
                format!("index {index} of {}", set.codes.len()),
            )
        })?;
        let json = CodeDocument::from_code(&set.ring, code).to_json();
        *out = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// `1`, `N`, `N′` and the total for `(s, m)` without materializing codes.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sd_count(s: u32, m: u32, budget: u64, out: *mut SdCounts) -> SdStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let r = ring(s, m)?;
        check_enumeration_budget(&r, budget).map_err(lib)?;
        *out = counts(&count_nprime(&r).map_err(lib)?)?;
        Ok(())
    })
}

/// Parses one JSON code document and reports whether it is self-dual.
///
/// # Safety
/// `doc` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sd_verify_json(doc: *const c_char, out: *mut bool) -> SdStatus {
    guard(|| {
        if doc.is_null() {
            return Err(null("doc"));
        }
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let text = CStr::from_ptr(doc)
            .to_str()
            .map_err(|e| (SdStatus::Parse, e.to_string()))?;
        let doc = CodeDocument::parse(text).map_err(lib)?;
        let r = doc.ring().map_err(lib)?;
        let gens = doc.generators(&r).map_err(lib)?;
        *out = is_self_dual(&r, &span_build(&r, &gens)).map_err(lib)?;
        Ok(())
    })
}

/// Frees a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static name of a status code, e.g. `"budget exceeded"`.
#[no_mangle]
pub extern "C" fn sd_status_name(status: SdStatus) -> *const c_char {
    let name: &'static CStr = match status {
        SdStatus::Ok => c"ok",
        SdStatus::NullPointer => c"null pointer",
        SdStatus::InvalidArgument => c"invalid argument",
        SdStatus::Parse => c"parse error",
        SdStatus::Budget => c"budget exceeded",
        SdStatus::Inconsistent => c"internal inconsistency",
        SdStatus::IndexOutOfRange => c"index out of range",
        SdStatus::Overflow => c"overflow",
        SdStatus::Panic => c"panic",
    };
    name.as_ptr()
}
