//! C interface to `palper`.
//!
//! Words live behind the opaque [`PalperWord`] handle. Every call returns a
//! [`PalperStatus`]; on failure the message is available from
//! [`palper_last_error`] on the same thread. Strings handed out by the
//! library are JSON (one value per line, as the command-line tool prints)
//! and are released with [`palper_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use palper::generic::{build_table, Parity};
use palper::gword::gword_params;
use palper::palperiod::{enumerate_parameterizations, find_maximal_pps};
use palper::{Error, HalfPos, Word};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PalperStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 2,
    /// Malformed or out-of-range input.
    InvalidInput = 3,
    /// The input does not satisfy the hypotheses of the requested operation.
    Hypothesis = 4,
    /// A derived fact failed its check on the letters.
    Verification = 5,
    /// The library panicked; the message holds the panic payload.
    Panic = 6,
}

impl From<&Error> for PalperStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Verification(_) => PalperStatus::Verification,
            Error::Hypothesis(_) | Error::Premise(_) | Error::Degenerate(_) | Error::NotBorder(_) => {
                PalperStatus::Hypothesis
            }
            _ => PalperStatus::InvalidInput,
        }
    }
}

/// Opaque word handle.
pub struct PalperWord {
    word: Word,
}

/// The parameters of a g-word, with every ℤ/2 value doubled.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PalperGWordParams {
    pub doubled_offset: i64,
    pub doubled_centre: i64,
    pub doubled_half_period: i64,
    pub g: usize,
    pub n: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(PalperStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(PalperStatus::from(&e), e.to_string())
    }
}

/// Runs `f`, turning errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PalperStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PalperStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            PalperStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PalperStatus::NullPointer, format!("{what} is null"))
}

unsafe fn word_ref<'a>(word: *const PalperWord) -> Result<&'a Word, Failure> {
    word.as_ref().map(|w| &w.word).ok_or_else(|| null("word"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn json_string(lines: Vec<serde_json::Value>) -> Result<*mut c_char, Failure> {
    let mut text = String::new();
    for l in lines {
        text.push_str(&l.to_string());
        text.push('\n');
    }
    CString::new(text).map(CString::into_raw).map_err(|e| Failure(PalperStatus::Panic, e.to_string()))
}

fn to_json<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("library types serialize")
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn palper_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn palper_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a word in letter form (`"accab"`) or integer form (`"i:0,2,2"`).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn palper_word_parse(text: *const c_char, out: *mut *mut PalperWord) -> PalperStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(PalperStatus::InvalidUtf8, e.to_string()))?;
        let word: Word = s.parse()?;
        put(out, Box::into_raw(Box::new(PalperWord { word })))
    })
}

/// Builds a word from `len` integer letters.
///
/// # Safety
/// `letters` must point to `len` readable values (it may be null when `len`
/// is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palper_word_from_letters(letters: *const u32, len: usize, out: *mut *mut PalperWord) -> PalperStatus {
    guard(|| {
        let slice = match (letters.is_null(), len) {
            (_, 0) => &[][..],
            (true, _) => return Err(null("letters")),
            (false, _) => std::slice::from_raw_parts(letters, len),
        };
        let word = Word::from_letters(slice.to_vec());
        put(out, Box::into_raw(Box::new(PalperWord { word })))
    })
}

/// Number of letters; 0 for a null handle.
///
/// # Safety
/// `word` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn palper_word_len(word: *const PalperWord) -> usize {
    word.as_ref().map_or(0, |w| w.word.len())
}

/// Releases a word. Null is ignored.
///
/// # Safety
/// `word` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn palper_word_free(word: *mut PalperWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn palper_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes into `out` the least period, or 0 for the empty word.
///
/// # Safety
/// `word` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn palper_least_period(word: *const PalperWord, out: *mut usize) -> PalperStatus {
    guard(|| {
        let w = word_ref(word)?;
        let p = if w.is_empty() { 0 } else { w.least_period()? };
        put(out, p)
    })
}

/// Maximal palindromic periodicities, one JSON object per line.
///
/// # Safety
/// `word` must be a live handle and `out` writable; free the result with
/// [`palper_string_free`].
#[no_mangle]
pub unsafe extern "C" fn palper_detect_json(word: *const PalperWord, out: *mut *mut c_char) -> PalperStatus {
    guard(|| {
        let w = word_ref(word)?;
        let lines = find_maximal_pps(w).iter().map(|o| to_json(&o.record(w))).collect();
        put(out, json_string(lines)?)
    })
}

/// Writes the number of (offset, half-period) pairs under which the whole
/// word is a palindromic periodicity.
///
/// # Safety
/// `word` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn palper_parameterization_count(word: *const PalperWord, out: *mut usize) -> PalperStatus {
    guard(|| {
        let w = word_ref(word)?;
        put(out, enumerate_parameterizations(w).len())
    })
}

/// g-word parameters from doubled offset, centre and half-period.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn palper_gword_params(
    doubled_offset: i64,
    doubled_centre: i64,
    doubled_half_period: i64,
    out: *mut PalperGWordParams,
) -> PalperStatus {
    guard(|| {
        let p = gword_params(HalfPos(doubled_offset), HalfPos(doubled_centre), HalfPos(doubled_half_period))?;
        put(
            out,
            PalperGWordParams {
                doubled_offset: p.offset_r.0,
                doubled_centre: p.centre_c.0,
                doubled_half_period: p.half_period_h.0,
                g: p.g,
                n: p.n,
            },
        )
    })
}

/// Least-period table of generic double palindromic periodicities for
/// lengths `max_len` down to `min_len`, as one JSON object.
///
/// # Safety
/// `out` must be writable; free the result with [`palper_string_free`].
#[no_mangle]
pub unsafe extern "C" fn palper_table_json(
    doubled_h1: i64,
    doubled_h2: i64,
    opposite_parity: bool,
    max_len: usize,
    min_len: usize,
    out: *mut *mut c_char,
) -> PalperStatus {
    guard(|| {
        if min_len == 0 || min_len > max_len {
            return Err(Failure(PalperStatus::InvalidInput, format!("lengths {max_len}:{min_len} must be positive and decreasing")));
        }
        let parity = if opposite_parity { Parity::Opposite } else { Parity::Same };
        let lengths: Vec<usize> = (min_len..=max_len).rev().collect();
        let table = build_table(HalfPos(doubled_h1), HalfPos(doubled_h2), parity, &lengths)?;
        put(out, json_string(vec![to_json(&table)])?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> *mut PalperWord {
        let text = CString::new(s).unwrap();
        let mut w = ptr::null_mut();
        assert_eq!(unsafe { palper_word_parse(text.as_ptr(), &mut w) }, PalperStatus::Ok);
        w
    }

    fn last_error() -> String {
        unsafe { CStr::from_ptr(palper_last_error()) }.to_str().unwrap().to_string()
    }

    #[test]
    fn word_round_trip() {
        let w = parse("accabaccab");
        unsafe {
            assert_eq!(palper_word_len(w), 10);
            let mut p = 0;
            assert_eq!(palper_least_period(w, &mut p), PalperStatus::Ok);
            assert_eq!(p, 5);
            assert!(palper_last_error().is_null());
            palper_word_free(w);
            palper_word_free(ptr::null_mut());
            assert_eq!(palper_word_len(ptr::null()), 0);
        }
    }

    #[test]
    fn from_letters() {
        let letters = [0u32, 1, 0, 0, 1, 0];
        let mut w = ptr::null_mut();
        unsafe {
            assert_eq!(palper_word_from_letters(letters.as_ptr(), letters.len(), &mut w), PalperStatus::Ok);
            let mut n = 0;
            assert_eq!(palper_parameterization_count(w, &mut n), PalperStatus::Ok);
            assert_eq!(n, 4);
            palper_word_free(w);
            assert_eq!(palper_word_from_letters(ptr::null(), 0, &mut w), PalperStatus::Ok);
            assert_eq!(palper_word_len(w), 0);
            palper_word_free(w);
            assert_eq!(palper_word_from_letters(ptr::null(), 3, &mut w), PalperStatus::NullPointer);
        }
    }

    #[test]
    fn errors_carry_messages() {
        let bad = CString::new("i:0,x").unwrap();
        let mut w = ptr::null_mut();
        unsafe {
            assert_eq!(palper_word_parse(bad.as_ptr(), &mut w), PalperStatus::InvalidInput);
            assert!(w.is_null());
            assert!(last_error().contains("parse"));
            assert_eq!(palper_word_parse(ptr::null(), &mut w), PalperStatus::NullPointer);
            let invalid = [0xffu8, 0];
            assert_eq!(palper_word_parse(invalid.as_ptr().cast(), &mut w), PalperStatus::InvalidUtf8);
            let mut p = PalperGWordParams::default();
            assert_eq!(palper_gword_params(2, 4, 4, &mut p), PalperStatus::Hypothesis);
            assert!(!last_error().is_empty());
            assert_eq!(palper_least_period(ptr::null(), ptr::null_mut()), PalperStatus::NullPointer);
        }
    }

    #[test]
    fn detect_and_gword() {
        let w = parse("accabaccab");
        let mut json = ptr::null_mut();
        unsafe {
            assert_eq!(palper_detect_json(w, &mut json), PalperStatus::Ok);
            let text = CStr::from_ptr(json).to_str().unwrap().to_string();
            palper_string_free(json);
            palper_word_free(w);
            assert!(text.lines().count() >= 3);
            assert!(text.contains("\"half_period\":\"5/2\""));

            let mut p = PalperGWordParams::default();
            assert_eq!(palper_gword_params(13, 49, 60, &mut p), PalperStatus::Ok);
            assert_eq!((p.g, p.n), (12, 48));
        }
    }

    #[test]
    fn table() {
        let mut json = ptr::null_mut();
        unsafe {
            assert_eq!(palper_table_json(8, 12, false, 16, 6, &mut json), PalperStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
            palper_string_free(json);
            assert_eq!(v["rows"].as_array().unwrap().len(), 12);
            assert_eq!(palper_table_json(8, 12, true, 6, 16, &mut json), PalperStatus::InvalidInput);
        }
        let v = unsafe { CStr::from_ptr(palper_version()) }.to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
