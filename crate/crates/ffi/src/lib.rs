//! C ABI for ppbackoff.
//!
//! Models are opaque `PpbModel` handles created by one of the
//! `ppb_model_*` constructors and released with [`ppb_model_free`]. Every
//! fallible call returns a [`PpbStatus`]; on failure the message is
//! available from [`ppb_last_error_message`] on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ppbackoff::corpus::read_tuple_file;
use ppbackoff::counts::{load_model, save_model};
use ppbackoff::estimator::{find_best_configuration, Preference};
use ppbackoff::{estimate, BackoffLevel, FrequencyDatabase, Heads, Kind, Normalization};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    InvalidArgument = 5,
    Panic = 6,
}

/// `level` value for decisions made by the competitive procedure.
pub const PPB_LEVEL_COMPETITIVE: i32 = -1;
/// `level` value for the evidence-free default (noun attachment).
pub const PPB_LEVEL_DEFAULT: i32 = -2;

/// An attachment decision.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PpbDecision {
    /// Configuration code, 1-based within the query's kind.
    pub config: u8,
    /// Back-off depth (0 = full tuple), or one of the `PPB_LEVEL_*` values.
    pub level: i32,
    /// Estimated probability of the chosen configuration.
    pub probability: f64,
}

/// Opaque trained model.
pub struct PpbModel {
    db: FrequencyDatabase,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PpbStatus, String);

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> PpbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PpbStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PpbStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PpbStatus::NullPointer, format!("{name} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(PpbStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn bytes_arg<'a>(data: *const u8, len: usize) -> Result<&'a [u8], Failure> {
    if data.is_null() {
        if len == 0 {
            return Ok(&[]);
        }
        return Err(Failure(PpbStatus::NullPointer, "data is NULL".into()));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn emit_model(out: *mut *mut PpbModel, db: FrequencyDatabase) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PpbStatus::NullPointer, "out is NULL".into()));
    }
    *out = Box::into_raw(Box::new(PpbModel { db }));
    Ok(())
}

fn parse_model(bytes: &[u8]) -> Result<FrequencyDatabase, Failure> {
    load_model(bytes).map_err(|e| Failure(PpbStatus::Parse, e.to_string()))
}

/// Load a model file. On success `*out` receives a handle owned by the caller.
#[no_mangle]
pub unsafe extern "C" fn ppb_model_load(path: *const c_char, out: *mut *mut PpbModel) -> PpbStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let bytes = std::fs::read(path).map_err(|e| Failure(PpbStatus::Io, format!("{path}: {e}")))?;
        let db = parse_model(&bytes).map_err(|Failure(s, m)| Failure(s, format!("{path}: {m}")))?;
        emit_model(out, db)
    })
}

/// Load a model from the bytes of a model file.
#[no_mangle]
pub unsafe extern "C" fn ppb_model_load_from_bytes(data: *const u8, len: usize, out: *mut *mut PpbModel) -> PpbStatus {
    guard(|| emit_model(out, parse_model(bytes_arg(data, len)?)?))
}

/// Train a model from the bytes of a tuple file. `lowercase` selects the
/// normalization policy the words must already satisfy.
#[no_mangle]
pub unsafe extern "C" fn ppb_model_train_from_tuples(
    data: *const u8,
    len: usize,
    lowercase: bool,
    out: *mut *mut PpbModel,
) -> PpbStatus {
    guard(|| {
        let records = read_tuple_file(bytes_arg(data, len)?).map_err(|e| Failure(PpbStatus::Parse, e.to_string()))?;
        let policy = if lowercase { Normalization::Lower } else { Normalization::Preserve };
        let db = FrequencyDatabase::build(&records, policy)
            .map_err(|e| Failure(PpbStatus::InvalidArgument, e.to_string()))?;
        emit_model(out, db)
    })
}

/// Write the model to `path` in the model file format.
#[no_mangle]
pub unsafe extern "C" fn ppb_model_save(model: *const PpbModel, path: *const c_char) -> PpbStatus {
    guard(|| {
        let model = model.as_ref().ok_or(Failure(PpbStatus::NullPointer, "model is NULL".into()))?;
        let path = str_arg(path, "path")?;
        std::fs::write(path, save_model(&model.db)).map_err(|e| Failure(PpbStatus::Io, format!("{path}: {e}")))
    })
}

/// Release a model. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ppb_model_free(model: *mut PpbModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Decide the attachment of a `kind`-PP query. `heads` points to
/// `2 * kind + 1` strings in the order v, n1, p1, n2, p2, n3, p3. Words are
/// normalized with the model's policy.
#[no_mangle]
pub unsafe extern "C" fn ppb_predict(
    model: *const PpbModel,
    kind: u8,
    heads: *const *const c_char,
    out: *mut PpbDecision,
) -> PpbStatus {
    guard(|| {
        let model = model.as_ref().ok_or(Failure(PpbStatus::NullPointer, "model is NULL".into()))?;
        let kind = Kind::from_pp_count(kind as usize)
            .ok_or(Failure(PpbStatus::InvalidArgument, format!("kind must be 1, 2 or 3, got {kind}")))?;
        if heads.is_null() || out.is_null() {
            return Err(Failure(PpbStatus::NullPointer, "heads or out is NULL".into()));
        }
        let n = 2 * kind.pp_count() + 1;
        let policy = model.db.normalization();
        let mut words = Vec::with_capacity(7);
        for i in 0..n {
            let w = str_arg(*heads.add(i), &format!("heads[{i}]"))?;
            if w.is_empty() || w.contains(['\t', '\n', '\r']) {
                return Err(Failure(PpbStatus::InvalidArgument, format!("heads[{i}] is not a word")));
            }
            words.push(policy.apply(w));
        }
        words.resize(7, String::new());
        let full = Heads::pp3([&words[0], &words[1], &words[2], &words[3], &words[4], &words[5], &words[6]]);
        let d = estimate(&model.db, &full.project(kind));
        *out = PpbDecision {
            config: d.config.code(),
            level: match d.level {
                BackoffLevel::Full => 0,
                BackoffLevel::Backoff(n) => n as i32,
                BackoffLevel::Competitive => PPB_LEVEL_COMPETITIVE,
                BackoffLevel::Default => PPB_LEVEL_DEFAULT,
            },
            probability: d.probability(),
        };
        Ok(())
    })
}

/// Combine three first-PP preferences (1 = verb, 2 = noun) into a two-PP
/// configuration code.
#[no_mangle]
pub unsafe extern "C" fn ppb_find_best_configuration(
    first: u8,
    vs_n2: u8,
    vs_n1: u8,
    support_n2: u64,
    support_n1: u64,
    out: *mut u8,
) -> PpbStatus {
    guard(|| {
        let pref = |c: u8| match c {
            1 => Ok(Preference::Verb),
            2 => Ok(Preference::Noun),
            _ => Err(Failure(PpbStatus::InvalidArgument, format!("preference must be 1 or 2, got {c}"))),
        };
        let config = find_best_configuration(pref(first)?, pref(vs_n2)?, pref(vs_n1)?, support_n2, support_n1);
        if out.is_null() {
            return Err(Failure(PpbStatus::NullPointer, "out is NULL".into()));
        }
        *out = config.code();
        Ok(())
    })
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ppb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ppb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
