//! C interface to flatvol.
//!
//! All values cross the boundary as NUL-terminated strings in the same exact
//! formats the CLI prints ("p/q", "c*pi^k"). Strings returned through `out`
//! pointers are owned by the caller and must be released with
//! `fv_string_free`. On failure the message is available from
//! `fv_last_error` until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use flatvol::charts::{mv_ratio, mv_table_entry_with};
use flatvol::recursion::Engine;
use flatvol::{Error, Signature, WeightVector};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    Unsupported = 5,
    Internal = 6,
}

/// Opaque evaluation context holding the memo table.
pub struct FvEngine {
    engine: Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> FvStatus {
    match e {
        Error::Parse { .. } => FvStatus::Parse,
        Error::UnsupportedChart(_) | Error::UnsupportedLevel(_) => FvStatus::Unsupported,
        Error::Internal(_) => FvStatus::Internal,
        _ => FvStatus::Invalid,
    }
}

fn fail(status: FvStatus, msg: &str) -> FvStatus {
    set_error(msg);
    status
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, FvStatus> {
    if p.is_null() {
        return Err(fail(FvStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(FvStatus::InvalidUtf8, "argument is not UTF-8"))
}

/// Runs `f`, writes its string result to `out` and maps errors and panics to status codes.
unsafe fn run(out: *mut *mut c_char, f: impl FnOnce() -> Result<String, FvStatus>) -> FvStatus {
    if out.is_null() {
        return fail(FvStatus::NullPointer, "null output pointer");
    }
    *out = ptr::null_mut();
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            *out = CString::new(s).expect("no interior NUL").into_raw();
            FvStatus::Ok
        }
        Ok(Err(st)) => st,
        Err(_) => fail(FvStatus::Internal, "panic inside flatvol"),
    }
}

fn lib<T>(r: flatvol::Result<T>) -> Result<T, FvStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn engine_ref<'a>(e: *const FvEngine) -> Result<&'a Engine, FvStatus> {
    e.as_ref().map(|x| &x.engine).ok_or_else(|| fail(FvStatus::NullPointer, "null engine"))
}

/// New engine with an empty memo. Free with `fv_engine_free`.
#[no_mangle]
pub extern "C" fn fv_engine_new() -> *mut FvEngine {
    Box::into_raw(Box::new(FvEngine { engine: Engine::new() }))
}

/// # Safety
/// `engine` must come from `fv_engine_new` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fv_engine_free(engine: *mut FvEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Number of memo hits so far; 0 for a null engine.
///
/// # Safety
/// `engine` must be null or a live engine.
#[no_mangle]
pub unsafe extern "C" fn fv_engine_memo_hits(engine: *const FvEngine) -> u64 {
    engine.as_ref().map_or(0, |e| e.engine.memo_hits())
}

/// A_n at weights "mu_1,...,mu_n".
///
/// # Safety
/// `weights` must be a valid C string, `out` a valid pointer, `engine` null or live.
#[no_mangle]
pub unsafe extern "C" fn fv_an(engine: *const FvEngine, weights: *const c_char, out: *mut *mut c_char) -> FvStatus {
    run(out, || {
        let e = engine_ref(engine)?;
        let mu = lib(WeightVector::parse(read_str(weights)?))?;
        Ok(e.a_n(&mu).to_string())
    })
}

/// J_n at weights "mu_1,...,mu_n".
///
/// # Safety
/// As for `fv_an`.
#[no_mangle]
pub unsafe extern "C" fn fv_jn(engine: *const FvEngine, weights: *const c_char, out: *mut *mut c_char) -> FvStatus {
    run(out, || {
        let e = engine_ref(engine)?;
        let mu = lib(WeightVector::parse(read_str(weights)?))?;
        Ok(e.j_n(&mu).to_string())
    })
}

/// vol1 at weights "mu_1,...,mu_n", as "c*pi^k".
///
/// # Safety
/// As for `fv_an`.
#[no_mangle]
pub unsafe extern "C" fn fv_vol1(engine: *const FvEngine, weights: *const c_char, out: *mut *mut c_char) -> FvStatus {
    run(out, || {
        let e = engine_ref(engine)?;
        let mu = lib(WeightVector::parse(read_str(weights)?))?;
        Ok(e.vol1(&mu).to_string())
    })
}

/// Volume-form ratio of a signature "k_1,...,k_n:d"; with `neg_orders` the
/// list holds -k_i.
///
/// # Safety
/// `signature` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fv_mv_ratio(signature: *const c_char, neg_orders: bool, out: *mut *mut c_char) -> FvStatus {
    run(out, || {
        let k = lib(Signature::parse(read_str(signature)?, neg_orders))?;
        Ok(lib(mv_ratio(&k))?.to_string())
    })
}

/// Table volume (1/d) * ratio * vol1 of a signature, as "c*pi^k".
///
/// # Safety
/// As for `fv_mv_ratio`; `engine` null or live.
#[no_mangle]
pub unsafe extern "C" fn fv_mv_volume(
    engine: *const FvEngine,
    signature: *const c_char,
    neg_orders: bool,
    out: *mut *mut c_char,
) -> FvStatus {
    run(out, || {
        let e = engine_ref(engine)?;
        let k = lib(Signature::parse(read_str(signature)?, neg_orders))?;
        Ok(lib(mv_table_entry_with(e, &k))?.to_string())
    })
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into the library on the same thread; do not free.
#[no_mangle]
pub extern "C" fn fv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn fv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
