//! C ABI over the gnum library: opaque hyperreal handles, status codes, and
//! string-based results. Every returned `char*` is owned by the caller and
//! must be released with `gnum_string_free`; handles with `gnum_hyper_free`.
//!
//! The generated header lives at `include/gnum.h`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use gnum::bisection;
use gnum::dedekind_set;
use gnum::hyperreal::{parse_hyperreal, Class, Hyperreal};
use gnum::randomness::{self, Alpha, BatteryConfig, NullCoverSpec};
use gnum::sequences::{self, format_rational, DigitString, SequenceSpec};
use gnum::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GnumStatus {
    GnumOk = 0,
    GnumErrDomain = 1,
    GnumErrArithmetic = 2,
    GnumErrSyntax = 3,
    GnumErrNullPointer = 4,
    GnumErrUtf8 = 5,
}

/// Magnitude classes, mirroring the library taxonomy.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GnumClass {
    GnumZero = 0,
    GnumInfinitesimal = 1,
    GnumAppreciable = 2,
    GnumUnbounded = 3,
}

/// Opaque hyperreal element.
pub struct GnumHyper(Hyperreal);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(e: &Error) -> GnumStatus {
    let status = match e {
        Error::Domain(_) => GnumStatus::GnumErrDomain,
        Error::Arithmetic(_) => GnumStatus::GnumErrArithmetic,
        Error::Syntax { .. } => GnumStatus::GnumErrSyntax,
    };
    let msg = CString::new(e.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
    status
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Message for the most recent error on this thread, or null. Borrowed;
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gnum_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |msg| msg.as_ptr())
    })
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, GnumStatus> {
    if ptr.is_null() {
        return Err(GnumStatus::GnumErrNullPointer);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| GnumStatus::GnumErrUtf8)
}

fn give_string(out: *mut *mut c_char, text: String) -> GnumStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => return GnumStatus::GnumErrDomain,
    };
    unsafe { *out = c.into_raw() };
    clear_error();
    GnumStatus::GnumOk
}

macro_rules! ffi_try {
    ($expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(e) => return set_error(&e),
        }
    };
}

/// Frees a string returned by this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn gnum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the hyperreal text grammar into a new handle.
#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_parse(
    text: *const c_char,
    out: *mut *mut GnumHyper,
) -> GnumStatus {
    if out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let value = ffi_try!(parse_hyperreal(text));
    *out = Box::into_raw(Box::new(GnumHyper(value)));
    clear_error();
    GnumStatus::GnumOk
}

#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_free(h: *mut GnumHyper) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_clone(h: *const GnumHyper) -> *mut GnumHyper {
    if h.is_null() {
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(GnumHyper((*h).0.clone())))
}

unsafe fn binary_op(
    a: *const GnumHyper,
    b: *const GnumHyper,
    out: *mut *mut GnumHyper,
    op: impl Fn(&Hyperreal, &Hyperreal) -> Result<Hyperreal, Error>,
) -> GnumStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let value = ffi_try!(op(&(*a).0, &(*b).0));
    *out = Box::into_raw(Box::new(GnumHyper(value)));
    clear_error();
    GnumStatus::GnumOk
}

#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_add(
    a: *const GnumHyper,
    b: *const GnumHyper,
    out: *mut *mut GnumHyper,
) -> GnumStatus {
    binary_op(a, b, out, |x, y| Ok(x.add(y)))
}

#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_sub(
    a: *const GnumHyper,
    b: *const GnumHyper,
    out: *mut *mut GnumHyper,
) -> GnumStatus {
    binary_op(a, b, out, |x, y| Ok(x.sub(y)))
}

#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_mul(
    a: *const GnumHyper,
    b: *const GnumHyper,
    out: *mut *mut GnumHyper,
) -> GnumStatus {
    binary_op(a, b, out, |x, y| Ok(x.mul(y)))
}

#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_div(
    a: *const GnumHyper,
    b: *const GnumHyper,
    out: *mut *mut GnumHyper,
) -> GnumStatus {
    binary_op(a, b, out, |x, y| x.div(y))
}

/// Writes −1, 0, or 1 to `out` for less / equal / greater.
#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_compare(
    a: *const GnumHyper,
    b: *const GnumHyper,
    out: *mut c_int,
) -> GnumStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    *out = match (*a).0.compare(&(*b).0) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    };
    clear_error();
    GnumStatus::GnumOk
}

#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_classify(
    h: *const GnumHyper,
    out: *mut GnumClass,
) -> GnumStatus {
    if h.is_null() || out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    *out = match (*h).0.classify() {
        Class::Zero => GnumClass::GnumZero,
        Class::Infinitesimal => GnumClass::GnumInfinitesimal,
        Class::Appreciable => GnumClass::GnumAppreciable,
        Class::Unbounded => GnumClass::GnumUnbounded,
    };
    clear_error();
    GnumStatus::GnumOk
}

/// Standard part of a finite element as "p/q" text.
#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_std(
    h: *const GnumHyper,
    out: *mut *mut c_char,
) -> GnumStatus {
    if h.is_null() || out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let std = ffi_try!((*h).0.std_part());
    give_string(out, format_rational(&std))
}

/// Canonical text form, re-parseable by `gnum_hyper_parse`.
#[no_mangle]
pub unsafe extern "C" fn gnum_hyper_to_string(
    h: *const GnumHyper,
    out: *mut *mut c_char,
) -> GnumStatus {
    if h.is_null() || out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    give_string(out, (*h).0.to_string())
}

fn parse_spec(text: &str) -> Result<SequenceSpec, Error> {
    serde_json::from_str(text).map_err(|e| Error::domain(format!("invalid spec JSON: {e}")))
}

/// Exact value of a sequence spec given as JSON, returned as "p/q".
#[no_mangle]
pub unsafe extern "C" fn gnum_value_exact(
    spec_json: *const c_char,
    out: *mut *mut c_char,
) -> GnumStatus {
    if out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let text = match read_str(spec_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let spec = ffi_try!(parse_spec(text));
    give_string(out, format_rational(&spec.value_exact()))
}

/// Nonterminating expansion of a rational in [0, 1], returned as spec JSON.
#[no_mangle]
pub unsafe extern "C" fn gnum_expand(
    value: *const c_char,
    base: u32,
    out: *mut *mut c_char,
) -> GnumStatus {
    if out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let text = match read_str(value) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let q = ffi_try!(sequences::parse_rational(text));
    let spec = ffi_try!(sequences::expand(&q, base));
    give_string(out, serde_json::to_string(&spec).expect("spec serializes"))
}

/// Value-preserving change of basis; input and output are spec JSON.
#[no_mangle]
pub unsafe extern "C" fn gnum_change_basis(
    spec_json: *const c_char,
    target_base: u32,
    out: *mut *mut c_char,
) -> GnumStatus {
    if out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let text = match read_str(spec_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let spec = ffi_try!(parse_spec(text));
    let converted = ffi_try!(sequences::change_basis(&spec, target_base));
    give_string(out, serde_json::to_string(&converted).expect("spec serializes"))
}

/// Bit-encodes a rational relative to [lo, hi]; all three are "p/q" text.
#[no_mangle]
pub unsafe extern "C" fn gnum_encode(
    value: *const c_char,
    lo: *const c_char,
    hi: *const c_char,
    depth: usize,
    out: *mut *mut c_char,
) -> GnumStatus {
    if out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let (value, lo, hi) = match (read_str(value), read_str(lo), read_str(hi)) {
        (Ok(v), Ok(l), Ok(h)) => (v, l, h),
        (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
    };
    let c = ffi_try!(sequences::parse_rational(value));
    let a = ffi_try!(sequences::parse_rational(lo));
    let b = ffi_try!(sequences::parse_rational(hi));
    let bits = ffi_try!(bisection::encode(&c, &a, &b, depth));
    give_string(out, bits.to_string())
}

/// The chain-limit value lo + (hi − lo) · v₂(spec), as "p/q".
#[no_mangle]
pub unsafe extern "C" fn gnum_dedekind_value(
    lo: *const c_char,
    hi: *const c_char,
    spec_json: *const c_char,
    out: *mut *mut c_char,
) -> GnumStatus {
    if out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let (lo, hi, spec) = match (read_str(lo), read_str(hi), read_str(spec_json)) {
        (Ok(l), Ok(h), Ok(s)) => (l, h, s),
        (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
    };
    let a = ffi_try!(sequences::parse_rational(lo));
    let b = ffi_try!(sequences::parse_rational(hi));
    let spec = ffi_try!(parse_spec(spec));
    let value = ffi_try!(bisection::dedekind_value(&a, &b, &spec));
    give_string(out, format_rational(&value))
}

/// Classifies the bisection-limit set for hyperreal endpoint expressions;
/// returns the descriptor JSON.
#[no_mangle]
pub unsafe extern "C" fn gnum_dedekind_classify(
    lo_expr: *const c_char,
    hi_expr: *const c_char,
    spec_json: *const c_char,
    out: *mut *mut c_char,
) -> GnumStatus {
    if out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let (lo, hi, spec) = match (read_str(lo_expr), read_str(hi_expr), read_str(spec_json)) {
        (Ok(l), Ok(h), Ok(s)) => (l, h, s),
        (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
    };
    let a = ffi_try!(parse_hyperreal(lo));
    let b = ffi_try!(parse_hyperreal(hi));
    let spec = ffi_try!(parse_spec(spec));
    let descriptor = ffi_try!(dedekind_set::classify_dedekind_set(&a, &b, &spec));
    give_string(out, descriptor.to_json().to_string())
}

/// Exact cylinder measure of comma-separated digit strings, as "p/q".
#[no_mangle]
pub unsafe extern "C" fn gnum_cylinder_measure(
    base: u32,
    strings: *const c_char,
    out: *mut *mut c_char,
) -> GnumStatus {
    if out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let text = match read_str(strings) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let parsed = ffi_try!(text
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| DigitString::parse(base, s.trim()))
        .collect::<Result<Vec<_>, Error>>());
    let set = ffi_try!(randomness::StringSet::new(base, parsed));
    give_string(out, format_rational(&randomness::cylinder_measure(&set)))
}

/// Validates a cover JSON, optionally against a target spec JSON (nullable);
/// returns the report JSON.
#[no_mangle]
pub unsafe extern "C" fn gnum_verify_cover(
    cover_json: *const c_char,
    target_json: *const c_char,
    out: *mut *mut c_char,
) -> GnumStatus {
    if out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let cover_text = match read_str(cover_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let cover: NullCoverSpec = ffi_try!(serde_json::from_str(cover_text)
        .map_err(|e| Error::domain(format!("invalid cover JSON: {e}"))));
    let target = if target_json.is_null() {
        None
    } else {
        let t = match read_str(target_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        Some(ffi_try!(parse_spec(t)))
    };
    let report = ffi_try!(randomness::verify_null_cover(&cover, target.as_ref()));
    give_string(out, report.to_json().to_string())
}

/// Runs the statistical proxy battery on an ASCII '0'/'1' sample (whitespace
/// ignored) at the given alpha ("0.01" or "0.05"); returns the report JSON.
#[no_mangle]
pub unsafe extern "C" fn gnum_battery(
    sample: *const c_char,
    alpha: *const c_char,
    out: *mut *mut c_char,
) -> GnumStatus {
    if out.is_null() {
        return GnumStatus::GnumErrNullPointer;
    }
    let (sample, alpha) = match (read_str(sample), read_str(alpha)) {
        (Ok(s), Ok(a)) => (s, a),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let cleaned: String = sample.chars().filter(|c| !c.is_whitespace()).collect();
    let bits = ffi_try!(DigitString::parse(2, &cleaned));
    let alpha = ffi_try!(Alpha::parse(alpha));
    let config = BatteryConfig { alpha, ..BatteryConfig::default() };
    let report = ffi_try!(randomness::battery(&bits, &config));
    give_string(out, serde_json::to_string(&report).expect("report serializes"))
}
