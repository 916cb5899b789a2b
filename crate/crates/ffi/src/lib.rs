//! C ABI for `flowgame`.
//!
//! Networks and verdicts are opaque handles released with their `_free`
//! function. Every fallible call returns an [`FgStatus`]; on failure the
//! message is available from [`fg_last_error_message`] on the same thread.
//! Strings handed out through `char **out` parameters are owned by the caller
//! and must be released with [`fg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use flowgame::io::report::{allocation_json, render_json, verdict_json};
use flowgame::io::{parse, serialize};
use flowgame::recognition::{gamma_fast, shapley_fast};
use flowgame::{recognize, Coalition, Error, FlowNetwork, Verdict};

/// Result codes. `FG_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownArc = 4,
    NotConvex = 5,
    Panic = 6,
}

/// A parsed flow network.
pub struct FgNetwork {
    network: FlowNetwork,
}

/// The outcome of [`fg_recognize`], with the network it refers to.
pub struct FgVerdict {
    network: FlowNetwork,
    verdict: Verdict,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

type Failure = (FgStatus, String);

fn fail<T>(status: FgStatus, message: impl Into<String>) -> Result<T, Failure> {
    Err((status, message.into()))
}

/// Runs `body`, recording any failure or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FgStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".to_owned());
        Err((FgStatus::Panic, msg))
    });
    match outcome {
        Ok(()) => {
            set_error("");
            FgStatus::Ok
        }
        Err((status, msg)) => {
            set_error(&msg);
            status
        }
    }
}

/// # Safety
/// `p` is null or points to a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return fail(FgStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(FgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live value of `T`.
unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().map_or_else(
        || fail(FgStatus::NullPointer, format!("{what} is null")),
        Ok,
    )
}

/// # Safety
/// `out` is null or writable.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return fail(FgStatus::NullPointer, "output pointer is null");
    }
    let c = CString::new(s).or_else(|_| fail(FgStatus::Panic, "interior NUL in output"))?;
    *out = c.into_raw();
    Ok(())
}

fn coalition(network: &FlowNetwork, list: &str) -> Result<Coalition, Failure> {
    if list.trim() == "@all" {
        return Ok(network.grand_coalition());
    }
    let labels = list.split(',').map(str::trim).filter(|s| !s.is_empty());
    network.coalition(labels).map_err(|e| match e {
        Error::UnknownArcId(_) => (FgStatus::UnknownArc, e.to_string()),
        other => (FgStatus::Panic, other.to_string()),
    })
}

/// Parses an instance document. On success `*out` holds a new handle.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fg_network_parse(
    text: *const c_char,
    out: *mut *mut FgNetwork,
) -> FgStatus {
    guard(|| {
        if out.is_null() {
            return fail(FgStatus::NullPointer, "output pointer is null");
        }
        *out = ptr::null_mut();
        let text = read_str(text, "text")?;
        let network = parse(text).map_err(|e| (FgStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(FgNetwork { network }));
        Ok(())
    })
}

/// # Safety
/// `network` is null or a handle from [`fg_network_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fg_network_free(network: *mut FgNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// Number of arcs, or 0 for a null handle.
///
/// # Safety
/// `network` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fg_network_arc_count(network: *const FgNetwork) -> usize {
    network.as_ref().map_or(0, |n| n.network.arc_count())
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `network` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fg_network_vertex_count(network: *const FgNetwork) -> usize {
    network.as_ref().map_or(0, |n| n.network.vertex_count())
}

/// Canonical instance document.
///
/// # Safety
/// `network` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fg_network_to_text(
    network: *const FgNetwork,
    out: *mut *mut c_char,
) -> FgStatus {
    guard(|| {
        let n = deref(network, "network")?;
        write_string(out, serialize(&n.network))
    })
}

/// Decides convexity. The verdict is returned whether or not the game is
/// convex; query it with [`fg_verdict_is_convex`].
///
/// # Safety
/// `network` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fg_recognize(
    network: *const FgNetwork,
    out: *mut *mut FgVerdict,
) -> FgStatus {
    guard(|| {
        if out.is_null() {
            return fail(FgStatus::NullPointer, "output pointer is null");
        }
        *out = ptr::null_mut();
        let n = deref(network, "network")?;
        let verdict = recognize(&n.network);
        *out = Box::into_raw(Box::new(FgVerdict {
            network: n.network.clone(),
            verdict,
        }));
        Ok(())
    })
}

/// # Safety
/// `verdict` is null or a handle from [`fg_recognize`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fg_verdict_free(verdict: *mut FgVerdict) {
    if !verdict.is_null() {
        drop(Box::from_raw(verdict));
    }
}

/// # Safety
/// `verdict` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fg_verdict_is_convex(verdict: *const FgVerdict) -> bool {
    verdict.as_ref().is_some_and(|v| v.verdict.is_convex())
}

/// Number of certificate paths; 0 when not convex or null.
///
/// # Safety
/// `verdict` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fg_verdict_path_count(verdict: *const FgVerdict) -> usize {
    verdict
        .as_ref()
        .and_then(|v| v.verdict.certificate())
        .map_or(0, |c| c.paths().len())
}

/// The verdict document, as printed by `flowgame check --format json`.
///
/// # Safety
/// `verdict` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fg_verdict_to_json(
    verdict: *const FgVerdict,
    out: *mut *mut c_char,
) -> FgStatus {
    guard(|| {
        let v = deref(verdict, "verdict")?;
        write_string(
            out,
            render_json(&verdict_json(&v.network, &v.verdict, None)),
        )
    })
}

/// Value of a coalition, written as `"p/q"` or an integer. `coalition` is a
/// comma-separated list of arc labels, or `@all`.
///
/// # Safety
/// `network` is a live handle; `coalition` is a NUL-terminated string; `out`
/// is writable.
#[no_mangle]
pub unsafe extern "C" fn fg_gamma(
    network: *const FgNetwork,
    coalition: *const c_char,
    out: *mut *mut c_char,
) -> FgStatus {
    guard(|| {
        let n = deref(network, "network")?;
        let s = self::coalition(&n.network, read_str(coalition, "coalition")?)?;
        let value = match recognize(&n.network).certificate() {
            Some(c) => gamma_fast(c, &s),
            None => flowgame::game::gamma(&n.network, &s),
        }
        .map_err(|e| (FgStatus::UnknownArc, e.to_string()))?;
        write_string(out, value.to_string())
    })
}

/// Shapley value of a convex instance as a JSON object keyed by arc label.
/// Returns `FG_STATUS_NOT_CONVEX` otherwise.
///
/// # Safety
/// `network` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fg_shapley_json(
    network: *const FgNetwork,
    out: *mut *mut c_char,
) -> FgStatus {
    guard(|| {
        let n = deref(network, "network")?;
        let verdict = recognize(&n.network);
        let Some(cert) = verdict.certificate() else {
            return fail(FgStatus::NotConvex, "game is not convex");
        };
        let phi = shapley_fast(cert);
        write_string(out, render_json(&allocation_json(&n.network, &phi)))
    })
}

/// Message for the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn fg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn fg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
