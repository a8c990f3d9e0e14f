//! C interface. Handles are opaque and owned by the caller once returned;
//! free each with its `*_free` function. Strings handed out by the library
//! are freed with `np_string_free`. On failure a function returns a nonzero
//! `NpStatus` and `np_last_error` describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nanophrase::formal::{angle_bracket, FormalSum};
use nanophrase::groups::{gamma_coordinates, group_structure, AbelianGroupStructure};
use nanophrase::invariants::{evaluate, InvariantArgs, InvariantName};
use nanophrase::{Error, HomotopyData, Nanophrase};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed data, phrase or sum text.
    Parse = 3,
    /// Well-formed input the operation does not accept.
    Precondition = 4,
    /// The output buffer is too short; the needed length was written.
    BufferTooSmall = 5,
    /// Internal error; the library state is unchanged.
    Panic = 6,
}

/// Homotopy data `(alpha, tau, S, nu)`.
pub struct NpData(HomotopyData);

/// A nanophrase, tied to the data it was parsed with.
pub struct NpPhrase(Nanophrase);

/// A computed group `G_n` together with its coordinate maps.
pub struct NpGroup(AbelianGroupStructure);

/// An invariant value: an integer when `modulus` is 0, otherwise a residue.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NpValue {
    pub value: i64,
    pub modulus: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

struct Fail(NpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = if e.is_input_error() {
            NpStatus::Parse
        } else {
            NpStatus::Precondition
        };
        Fail(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Fail>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> NpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            NpStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NpStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail(NpStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(NpStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| Fail(NpStatus::NullPointer, format!("{what} is null")))
}

fn out_arg<T>(p: *mut T, what: &str) -> FfiResult<()> {
    if p.is_null() {
        Err(Fail(NpStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn np_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn np_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Built-in data: `"gauss"` or `"vknot"`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn np_data_preset(name: *const c_char, out: *mut *mut NpData) -> NpStatus {
    guard(|| {
        out_arg(out, "out")?;
        let d = HomotopyData::preset(str_arg(name, "name")?)?;
        *out = Box::into_raw(Box::new(NpData(d)));
        Ok(())
    })
}

/// Data from the `alpha: / tau: / S: / nu:` text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn np_data_parse(text: *const c_char, out: *mut *mut NpData) -> NpStatus {
    guard(|| {
        out_arg(out, "out")?;
        let d = HomotopyData::parse(str_arg(text, "text")?)?;
        *out = Box::into_raw(Box::new(NpData(d)));
        Ok(())
    })
}

/// # Safety
/// `data` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn np_data_free(data: *mut NpData) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

/// Parses a phrase such as `AB|A|B:ab`.
///
/// # Safety
/// Pointers must be valid; `text` nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn np_phrase_parse(data: *const NpData, text: *const c_char, out: *mut *mut NpPhrase) -> NpStatus {
    guard(|| {
        out_arg(out, "out")?;
        let d = ref_arg(data, "data")?;
        let p = Nanophrase::parse(str_arg(text, "text")?, &d.0)?;
        *out = Box::into_raw(Box::new(NpPhrase(p)));
        Ok(())
    })
}

/// # Safety
/// `phrase` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn np_phrase_free(phrase: *mut NpPhrase) {
    if !phrase.is_null() {
        drop(Box::from_raw(phrase));
    }
}

/// Number of letters and number of components.
///
/// # Safety
/// `phrase` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn np_phrase_shape(phrase: *const NpPhrase, rank: *mut usize, components: *mut usize) -> NpStatus {
    guard(|| {
        out_arg(rank, "rank")?;
        out_arg(components, "components")?;
        let p = ref_arg(phrase, "phrase")?;
        *rank = p.0.rank();
        *components = p.0.component_count();
        Ok(())
    })
}

/// Canonical text of the phrase's isomorphism class. Free the result with
/// `np_string_free`.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn np_phrase_canonical(
    data: *const NpData,
    phrase: *const NpPhrase,
    out: *mut *mut c_char,
) -> NpStatus {
    guard(|| {
        out_arg(out, "out")?;
        let d = ref_arg(data, "data")?;
        let p = ref_arg(phrase, "phrase")?;
        *out = to_c_string(p.0.canonical_form().to_text(&d.0));
        Ok(())
    })
}

/// Evaluates a named invariant (`linking`, `t`, `u`, `l`, `lp`, `lpp`,
/// `v4`). Component indices are zero based, negative meaning absent;
/// symbols are given by name or null. Writes up to `cap` values and sets
/// `len` to the full count.
///
/// # Safety
/// Handles must be live; strings nul-terminated or null where allowed;
/// `values` must hold `cap` entries; `len` writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn np_invariant(
    data: *const NpData,
    phrase: *const NpPhrase,
    name: *const c_char,
    i: i32,
    j: i32,
    a: *const c_char,
    b: *const c_char,
    values: *mut NpValue,
    cap: usize,
    len: *mut usize,
) -> NpStatus {
    guard(|| {
        out_arg(len, "len")?;
        let d = &ref_arg(data, "data")?.0;
        let p = &ref_arg(phrase, "phrase")?.0;
        let name: InvariantName = str_arg(name, "name")?.parse()?;
        let symbol = |s: *const c_char, what| -> FfiResult<_> {
            if s.is_null() {
                Ok(None)
            } else {
                Ok(Some(d.symbol(str_arg(s, what)?)?))
            }
        };
        let args = InvariantArgs {
            i: usize::try_from(i).ok(),
            j: usize::try_from(j).ok(),
            a: symbol(a, "a")?,
            b: symbol(b, "b")?,
        };
        let out = evaluate(name, &args, p, d)?;
        *len = out.len();
        if out.len() > cap {
            return Err(Fail(NpStatus::BufferTooSmall, format!("need {} values", out.len())));
        }
        if !out.is_empty() && values.is_null() {
            return Err(Fail(NpStatus::NullPointer, "values is null".into()));
        }
        for (k, v) in out.iter().enumerate() {
            *values.add(k) = NpValue {
                value: v.value,
                modulus: v.modulus,
            };
        }
        Ok(())
    })
}

/// `<u, x>` for two formal sums in text form, e.g. `"ABAB:aa"` and
/// `"ABACBC:aaa -2 AA:a"`.
///
/// # Safety
/// `data` must be live; strings nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn np_bracket(data: *const NpData, u: *const c_char, x: *const c_char, out: *mut i64) -> NpStatus {
    guard(|| {
        out_arg(out, "out")?;
        let d = &ref_arg(data, "data")?.0;
        let u = FormalSum::parse(str_arg(u, "u")?, d)?;
        let x = FormalSum::parse(str_arg(x, "x")?, d)?;
        let v = angle_bracket(&u, &x)?;
        *out = i64::try_from(v).map_err(|_| Fail(NpStatus::Precondition, "bracket overflows i64".into()))?;
        Ok(())
    })
}

/// Computes `G_n` for `r`-component phrases, or its closed-homotopy
/// quotient when `closed` is nonzero.
///
/// # Safety
/// `data` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn np_group(data: *const NpData, r: usize, n: usize, closed: bool, out: *mut *mut NpGroup) -> NpStatus {
    guard(|| {
        out_arg(out, "out")?;
        let d = &ref_arg(data, "data")?.0;
        if r == 0 {
            return Err(Fail(NpStatus::Precondition, "need at least one component".into()));
        }
        let g = group_structure(d, r, n, closed)?;
        *out = Box::into_raw(Box::new(NpGroup(g)));
        Ok(())
    })
}

/// # Safety
/// `group` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn np_group_free(group: *mut NpGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// The group as `Z^f (+) Z/d1 (+) ...`. Free with `np_string_free`.
///
/// # Safety
/// `group` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn np_group_describe(group: *const NpGroup, out: *mut *mut c_char) -> NpStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = to_c_string(ref_arg(group, "group")?.0.to_string());
        Ok(())
    })
}

/// Coordinates of the universal invariant on `phrase`: free coordinates
/// first, then one residue per torsion factor. With `normalize` the
/// trivial phrase maps to zero. Buffer protocol as in `np_invariant`.
///
/// # Safety
/// Handles must be live; `values` must hold `cap` entries; `len` writable.
#[no_mangle]
pub unsafe extern "C" fn np_gamma(
    group: *const NpGroup,
    phrase: *const NpPhrase,
    normalize: bool,
    values: *mut NpValue,
    cap: usize,
    len: *mut usize,
) -> NpStatus {
    guard(|| {
        out_arg(len, "len")?;
        let g = &ref_arg(group, "group")?.0;
        let p = &ref_arg(phrase, "phrase")?.0;
        let out = gamma_coordinates(p, g, normalize)?;
        *len = out.len();
        if out.len() > cap {
            return Err(Fail(NpStatus::BufferTooSmall, format!("need {} values", out.len())));
        }
        if !out.is_empty() && values.is_null() {
            return Err(Fail(NpStatus::NullPointer, "values is null".into()));
        }
        for (k, v) in out.iter().enumerate() {
            *values.add(k) = NpValue {
                value: v.value,
                modulus: v.modulus,
            };
        }
        Ok(())
    })
}
