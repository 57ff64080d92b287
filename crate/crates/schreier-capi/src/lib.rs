//! C ABI for the schreier library.
//!
//! Coverings and bases are opaque handles created and released by this
//! library. Every fallible function returns a [`SchreierStatus`]; on
//! failure a description is stored per thread and can be read back with
//! [`schreier_last_error_message`]. Strings returned through `char**`
//! out-parameters are NUL-terminated, UTF-8, owned by the caller, and
//! must be released with [`schreier_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schreier::basis::{rewrite_in_basis, subgroup_basis, Basis, BasisError};
use schreier::covering::{fold_words, Covering, CoveringError};
use schreier::io::{CoveringDoc, InfiniteIndexDoc, ReportDoc};
use schreier::word::Alphabet;

/// Result of a C API call.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SchreierStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input text did not parse (JSON document or word syntax).
    ParseError = 3,
    /// Input parsed but violates an invariant (not a permutation, bad
    /// basepoint, alphabet mismatch, ...).
    InvalidData = 4,
    /// The covering is not connected.
    NotConnected = 5,
    /// The word is not a member of the subgroup.
    NotMember = 6,
    /// The generated subgroup has infinite index; the folded-graph
    /// diagnostic is stored as the error message (JSON).
    InfiniteIndex = 7,
    /// An index argument was out of range.
    OutOfRange = 8,
    /// An internal panic was caught; the handle states are unchanged.
    Internal = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: SchreierStatus, message: impl Into<String>) -> SchreierStatus {
    set_error(message.into());
    status
}

/// Message describing the most recent failure on this thread, or NULL if
/// none. The pointer stays valid until the next failing call on the same
/// thread; do not free it.
#[no_mangle]
pub extern "C" fn schreier_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(message) => message.as_ptr(),
        None => ptr::null(),
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through a `char**`
/// out-parameter of this library, not yet freed, or NULL.
#[no_mangle]
pub unsafe extern "C" fn schreier_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Opaque covering handle.
pub struct SchreierCovering {
    inner: Covering,
}

/// Opaque basis handle; bundles the covering it was computed from so that
/// rewriting needs no second argument.
pub struct SchreierBasis {
    covering: Covering,
    basis: Basis,
}

fn covering_status(err: &CoveringError) -> SchreierStatus {
    match err {
        CoveringError::NotConnected { .. } => SchreierStatus::NotConnected,
        CoveringError::InfiniteIndex(_) => SchreierStatus::InfiniteIndex,
        CoveringError::PointOutOfRange { .. } => SchreierStatus::OutOfRange,
        _ => SchreierStatus::InvalidData,
    }
}

unsafe fn read_utf8<'a>(s: *const c_char) -> Result<&'a str, SchreierStatus> {
    if s.is_null() {
        return Err(fail(SchreierStatus::NullPointer, "NULL string argument"));
    }
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| fail(SchreierStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn write_string(out: *mut *mut c_char, value: String) -> SchreierStatus {
    match CString::new(value) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SchreierStatus::Ok
        }
        Err(_) => fail(SchreierStatus::Internal, "output contained an interior NUL"),
    }
}

fn guard(body: impl FnOnce() -> SchreierStatus) -> SchreierStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(SchreierStatus::Internal, "internal panic"),
    }
}

/// Parse a covering from its JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
/// On success `*out` owns a covering that must be released with
/// [`schreier_covering_free`].
#[no_mangle]
pub unsafe extern "C" fn schreier_covering_from_json(
    json: *const c_char,
    out: *mut *mut SchreierCovering,
) -> SchreierStatus {
    guard(|| {
        if out.is_null() {
            return fail(SchreierStatus::NullPointer, "NULL out pointer");
        }
        let text = match unsafe { read_utf8(json) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let doc: CoveringDoc = match serde_json::from_str(text) {
            Ok(doc) => doc,
            Err(e) => return fail(SchreierStatus::ParseError, format!("covering document: {e}")),
        };
        match doc.to_covering() {
            Ok(covering) => {
                unsafe { *out = Box::into_raw(Box::new(SchreierCovering { inner: covering })) };
                SchreierStatus::Ok
            }
            Err(e) => fail(SchreierStatus::InvalidData, e.to_string()),
        }
    })
}

/// Serialize a covering to its JSON document.
///
/// # Safety
/// `covering` must be a live handle from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn schreier_covering_to_json(
    covering: *const SchreierCovering,
    out: *mut *mut c_char,
) -> SchreierStatus {
    guard(|| {
        if covering.is_null() || out.is_null() {
            return fail(SchreierStatus::NullPointer, "NULL argument");
        }
        let covering = unsafe { &*covering };
        let doc = CoveringDoc::from_covering(&covering.inner);
        let json = serde_json::to_string_pretty(&doc).expect("document serializes");
        write_string(out, json)
    })
}

/// Fold generator words into the covering of the subgroup they generate.
/// `names` holds `name_count` generator names; `words` holds `word_count`
/// words in apostrophe syntax over those names.
///
/// Returns `InfiniteIndex` (with a JSON diagnostic as the error message)
/// when the subgroup has no finite covering.
///
/// # Safety
/// All array pointers must be valid for their stated lengths and the
/// strings NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn schreier_covering_fold(
    names: *const *const c_char,
    name_count: usize,
    words: *const *const c_char,
    word_count: usize,
    out: *mut *mut SchreierCovering,
) -> SchreierStatus {
    guard(|| {
        if out.is_null() || (name_count > 0 && names.is_null()) || (word_count > 0 && words.is_null())
        {
            return fail(SchreierStatus::NullPointer, "NULL argument");
        }
        let mut name_vec = Vec::with_capacity(name_count);
        for i in 0..name_count {
            match unsafe { read_utf8(*names.add(i)) } {
                Ok(name) => name_vec.push(name.to_string()),
                Err(status) => return status,
            }
        }
        let alphabet = match Alphabet::with_names(name_vec) {
            Ok(a) => a,
            Err(e) => return fail(SchreierStatus::InvalidData, e.to_string()),
        };
        let mut gens = Vec::with_capacity(word_count);
        for i in 0..word_count {
            let text = match unsafe { read_utf8(*words.add(i)) } {
                Ok(t) => t,
                Err(status) => return status,
            };
            match alphabet.parse_word(text) {
                Ok(word) => gens.push(word),
                Err(e) => return fail(SchreierStatus::ParseError, format!("word {text:?}: {e}")),
            }
        }
        match fold_words(&alphabet, &gens) {
            Ok(covering) => {
                unsafe { *out = Box::into_raw(Box::new(SchreierCovering { inner: covering })) };
                SchreierStatus::Ok
            }
            Err(CoveringError::InfiniteIndex(folded)) => {
                let doc = InfiniteIndexDoc::from_folded(&folded);
                fail(
                    SchreierStatus::InfiniteIndex,
                    serde_json::to_string(&doc).expect("diagnostic serializes"),
                )
            }
            Err(other) => fail(covering_status(&other), other.to_string()),
        }
    })
}

/// Release a covering handle.
///
/// # Safety
/// `covering` must be a handle from this library, not yet freed, or NULL.
#[no_mangle]
pub unsafe extern "C" fn schreier_covering_free(covering: *mut SchreierCovering) {
    if !covering.is_null() {
        drop(unsafe { Box::from_raw(covering) });
    }
}

/// Number of free generators of the base group (0 on NULL).
///
/// # Safety
/// `covering` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn schreier_covering_rank(covering: *const SchreierCovering) -> usize {
    if covering.is_null() {
        return 0;
    }
    unsafe { &*covering }.inner.rank()
}

/// Index of the subgroup: the fiber size (0 on NULL).
///
/// # Safety
/// `covering` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn schreier_covering_fiber_size(covering: *const SchreierCovering) -> usize {
    if covering.is_null() {
        return 0;
    }
    unsafe { &*covering }.inner.fiber_size()
}

/// Basepoint of the covering (0 on NULL).
///
/// # Safety
/// `covering` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn schreier_covering_basepoint(covering: *const SchreierCovering) -> usize {
    if covering.is_null() {
        return 0;
    }
    unsafe { &*covering }.inner.basepoint()
}

/// Whether the total space is connected (false on NULL).
///
/// # Safety
/// `covering` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn schreier_covering_is_connected(
    covering: *const SchreierCovering,
) -> bool {
    if covering.is_null() {
        return false;
    }
    unsafe { &*covering }.inner.is_connected()
}

/// Test membership of a word (apostrophe syntax) in the subgroup.
///
/// # Safety
/// `covering` must be a live handle, `word` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn schreier_covering_is_member(
    covering: *const SchreierCovering,
    word: *const c_char,
    out: *mut bool,
) -> SchreierStatus {
    guard(|| {
        if covering.is_null() || out.is_null() {
            return fail(SchreierStatus::NullPointer, "NULL argument");
        }
        let covering = unsafe { &*covering };
        let text = match unsafe { read_utf8(word) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let parsed = match covering.inner.alphabet().parse_word(text) {
            Ok(w) => w,
            Err(e) => return fail(SchreierStatus::ParseError, format!("word {text:?}: {e}")),
        };
        match covering.inner.is_member(&parsed) {
            Ok(member) => {
                unsafe { *out = member };
                SchreierStatus::Ok
            }
            Err(e) => fail(covering_status(&e), e.to_string()),
        }
    })
}

/// Trace a fiber point along a word.
///
/// # Safety
/// `covering` must be a live handle, `word` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn schreier_covering_trace(
    covering: *const SchreierCovering,
    word: *const c_char,
    start: usize,
    out: *mut usize,
) -> SchreierStatus {
    guard(|| {
        if covering.is_null() || out.is_null() {
            return fail(SchreierStatus::NullPointer, "NULL argument");
        }
        let covering = unsafe { &*covering };
        let text = match unsafe { read_utf8(word) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let parsed = match covering.inner.alphabet().parse_word(text) {
            Ok(w) => w,
            Err(e) => return fail(SchreierStatus::ParseError, format!("word {text:?}: {e}")),
        };
        match covering.inner.trace(&parsed, start) {
            Ok(end) => {
                unsafe { *out = end };
                SchreierStatus::Ok
            }
            Err(e) => fail(covering_status(&e), e.to_string()),
        }
    })
}

/// Whether two connected coverings present the same subgroup.
///
/// # Safety
/// Both handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn schreier_coverings_isomorphic(
    left: *const SchreierCovering,
    right: *const SchreierCovering,
    out: *mut bool,
) -> SchreierStatus {
    guard(|| {
        if left.is_null() || right.is_null() || out.is_null() {
            return fail(SchreierStatus::NullPointer, "NULL argument");
        }
        let (left, right) = unsafe { (&*left, &*right) };
        match left.inner.isomorphic(&right.inner) {
            Ok(iso) => {
                unsafe { *out = iso };
                SchreierStatus::Ok
            }
            Err(e) => fail(covering_status(&e), e.to_string()),
        }
    })
}

/// Compute the free basis of the subgroup a connected covering presents.
///
/// # Safety
/// `covering` must be a live handle; `out` must be valid. On success
/// `*out` owns a basis that must be released with [`schreier_basis_free`].
#[no_mangle]
pub unsafe extern "C" fn schreier_basis_compute(
    covering: *const SchreierCovering,
    out: *mut *mut SchreierBasis,
) -> SchreierStatus {
    guard(|| {
        if covering.is_null() || out.is_null() {
            return fail(SchreierStatus::NullPointer, "NULL argument");
        }
        let covering = unsafe { &*covering };
        match subgroup_basis(&covering.inner) {
            Ok(basis) => {
                let handle = SchreierBasis { covering: covering.inner.clone(), basis };
                unsafe { *out = Box::into_raw(Box::new(handle)) };
                SchreierStatus::Ok
            }
            Err(e) => fail(covering_status(&e), e.to_string()),
        }
    })
}

/// Release a basis handle.
///
/// # Safety
/// `basis` must be a handle from this library, not yet freed, or NULL.
#[no_mangle]
pub unsafe extern "C" fn schreier_basis_free(basis: *mut SchreierBasis) {
    if !basis.is_null() {
        drop(unsafe { Box::from_raw(basis) });
    }
}

/// Number of free generators in the basis (0 on NULL).
///
/// # Safety
/// `basis` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn schreier_basis_rank(basis: *const SchreierBasis) -> usize {
    if basis.is_null() {
        return 0;
    }
    unsafe { &*basis }.basis.rank()
}

/// The `index`-th generator word, in the base alphabet's syntax.
///
/// # Safety
/// `basis` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn schreier_basis_generator(
    basis: *const SchreierBasis,
    index: usize,
    out: *mut *mut c_char,
) -> SchreierStatus {
    guard(|| {
        if basis.is_null() || out.is_null() {
            return fail(SchreierStatus::NullPointer, "NULL argument");
        }
        let handle = unsafe { &*basis };
        if index >= handle.basis.rank() {
            return fail(
                SchreierStatus::OutOfRange,
                format!("generator {index} out of range for rank {}", handle.basis.rank()),
            );
        }
        let word = &handle.basis.generators()[index];
        write_string(out, handle.covering.alphabet().format_word(word))
    })
}

/// Rewrite a member word over the basis; the result uses the derived
/// names `s0, s1, …`. Returns `NotMember` for non-members.
///
/// # Safety
/// `basis` must be a live handle, `word` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn schreier_basis_rewrite(
    basis: *const SchreierBasis,
    word: *const c_char,
    out: *mut *mut c_char,
) -> SchreierStatus {
    guard(|| {
        if basis.is_null() || out.is_null() {
            return fail(SchreierStatus::NullPointer, "NULL argument");
        }
        let handle = unsafe { &*basis };
        let text = match unsafe { read_utf8(word) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let parsed = match handle.covering.alphabet().parse_word(text) {
            Ok(w) => w,
            Err(e) => return fail(SchreierStatus::ParseError, format!("word {text:?}: {e}")),
        };
        match rewrite_in_basis(&handle.basis, &handle.covering, &parsed) {
            Ok(rewritten) => {
                write_string(out, handle.basis.derived_alphabet().format_word(&rewritten))
            }
            Err(err @ BasisError::NotMember { .. }) => {
                fail(SchreierStatus::NotMember, err.to_string())
            }
            Err(other) => fail(SchreierStatus::InvalidData, other.to_string()),
        }
    })
}

/// Evaluate a word over the basis (names `s0, s1, …`) back into the base
/// free group.
///
/// # Safety
/// `basis` must be a live handle, `basis_word` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn schreier_basis_eval(
    basis: *const SchreierBasis,
    basis_word: *const c_char,
    out: *mut *mut c_char,
) -> SchreierStatus {
    guard(|| {
        if basis.is_null() || out.is_null() {
            return fail(SchreierStatus::NullPointer, "NULL argument");
        }
        let handle = unsafe { &*basis };
        let text = match unsafe { read_utf8(basis_word) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let parsed = match handle.basis.derived_alphabet().parse_word(text) {
            Ok(w) => w,
            Err(e) => return fail(SchreierStatus::ParseError, format!("word {text:?}: {e}")),
        };
        match handle.basis.eval(&parsed) {
            Ok(value) => write_string(out, handle.covering.alphabet().format_word(&value)),
            Err(e) => fail(SchreierStatus::InvalidData, e.to_string()),
        }
    })
}

/// Run the equivariance verification suite; writes the JSON report and
/// returns `Ok` whether or not all checks passed (consult the report).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn schreier_counterexample_report(out: *mut *mut c_char) -> SchreierStatus {
    guard(|| {
        if out.is_null() {
            return fail(SchreierStatus::NullPointer, "NULL argument");
        }
        let report = schreier::counterexample::verify_explicit_basis();
        let doc = ReportDoc {
            checks: report
                .checks
                .iter()
                .map(|c| schreier::io::CheckDoc {
                    name: c.name.clone(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
            all_passed: report.all_passed(),
        };
        write_string(out, serde_json::to_string_pretty(&doc).expect("report serializes"))
    })
}
