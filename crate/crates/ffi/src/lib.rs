//! C ABI for morikit.
//!
//! Models are opaque handles created by `morikit_model_from_*` and released
//! with `morikit_model_free`. Functions return a [`MorikitStatus`]; on failure
//! `morikit_last_error_message` describes the error for the calling thread.
//! Strings returned through out-parameters are owned by the caller and must
//! be released with `morikit_string_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use morikit::cli::{self, report, CliError, Command, Format, JobConfig, ModelSpec, Options};
use morikit::linalg::Int;
use morikit::ExtendedAlgebraicLattice;

/// Opaque model handle.
pub struct MorikitModel {
    config: JobConfig,
    model: ExtendedAlgebraicLattice,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorikitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Incomplete = 3,
    UnknownCommand = 4,
    Io = 5,
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &CliError) -> MorikitStatus {
    set_error(e.to_string());
    match e {
        CliError::Usage(_) => MorikitStatus::UnknownCommand,
        CliError::Invalid(_) => MorikitStatus::InvalidArgument,
        CliError::Io(_) => MorikitStatus::Io,
    }
}

fn guarded(f: impl FnOnce() -> MorikitStatus) -> MorikitStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            MorikitStatus::Panic
        }
    }
}

unsafe fn read_ints(p: *const i64, len: usize) -> Vec<Int> {
    std::slice::from_raw_parts(p, len)
        .iter()
        .map(|&x| Int::from(x))
        .collect()
}

unsafe fn read_matrix(p: *const i64, rank: usize) -> Vec<Vec<Int>> {
    read_ints(p, rank * rank)
        .chunks(rank)
        .map(<[Int]>::to_vec)
        .collect()
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, MorikitStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(MorikitStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        MorikitStatus::InvalidArgument
    })
}

fn finish(config: JobConfig, out: *mut *mut MorikitModel) -> MorikitStatus {
    match config.model() {
        Ok(model) => {
            let handle = Box::new(MorikitModel { config, model });
            unsafe { *out = Box::into_raw(handle) };
            MorikitStatus::Ok
        }
        Err(errs) => status_of(&CliError::Invalid(errs)),
    }
}

/// Builds `S^[n]` from a K3 Picard lattice (`pic_rank`×`pic_rank` row-major
/// Gram matrix) and a polarization in Picard coordinates. `ample` is either
/// null or `pic_rank + 2` coordinates of an ample class overriding the
/// polarization.
///
/// # Safety
/// Pointers must be valid for the stated lengths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn morikit_model_from_k3(
    pic_gram: *const i64,
    pic_rank: usize,
    polarization: *const i64,
    n: i64,
    ample: *const i64,
    out: *mut *mut MorikitModel,
) -> MorikitStatus {
    guarded(|| {
        if pic_gram.is_null() || polarization.is_null() || out.is_null() || pic_rank == 0 {
            set_error("null pointer or zero rank");
            return MorikitStatus::NullPointer;
        }
        let config = JobConfig {
            model: ModelSpec::K3 {
                gram: read_matrix(pic_gram, pic_rank),
                polarization: read_ints(polarization, pic_rank),
                n: Int::from(n),
            },
            ample: (!ample.is_null()).then(|| read_ints(ample, pic_rank + 2)),
            height_bound: None,
            word_bound: None,
            format: None,
            path: None,
        };
        finish(config, out)
    })
}

/// Builds a model from a `rank`×`rank` row-major Gram matrix, a Mukai
/// vector and an ample class, both of length `rank`.
///
/// # Safety
/// Pointers must be valid for the stated lengths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn morikit_model_from_raw(
    gram: *const i64,
    rank: usize,
    v: *const i64,
    ample: *const i64,
    out: *mut *mut MorikitModel,
) -> MorikitStatus {
    guarded(|| {
        if gram.is_null() || v.is_null() || ample.is_null() || out.is_null() || rank == 0 {
            set_error("null pointer or zero rank");
            return MorikitStatus::NullPointer;
        }
        let config = JobConfig {
            model: ModelSpec::Raw {
                gram: read_matrix(gram, rank),
                v: read_ints(v, rank),
                ample: Some(read_ints(ample, rank)),
            },
            ample: None,
            height_bound: None,
            word_bound: None,
            format: None,
            path: None,
        };
        finish(config, out)
    })
}

/// # Safety
/// `model` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn morikit_model_free(model: *mut MorikitModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Writes `n` to `out`; fails if it does not fit in 64 bits.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn morikit_model_n(
    model: *const MorikitModel,
    out: *mut i64,
) -> MorikitStatus {
    guarded(|| {
        if model.is_null() || out.is_null() {
            set_error("null pointer");
            return MorikitStatus::NullPointer;
        }
        match i64::try_from((*model).model.n()) {
            Ok(n) => {
                *out = n;
                MorikitStatus::Ok
            }
            Err(_) => {
                set_error("n does not fit in 64 bits");
                MorikitStatus::InvalidArgument
            }
        }
    })
}

/// Rank of `Λ_alg`, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn morikit_model_rank(model: *const MorikitModel) -> usize {
    if model.is_null() {
        0
    } else {
        (*model).model.rank()
    }
}

/// Rank of `H²_alg = v⊥`, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn morikit_model_h2_rank(model: *const MorikitModel) -> usize {
    if model.is_null() {
        0
    } else {
        (*model).model.h2_rank()
    }
}

/// Runs a command (`build`, `mori`, `nef`, `movable`, `check`, `slice`) on a
/// model and writes the JSON output to `out`. `height_bound` is null or a
/// rational `"p/q"`. Output carries no timestamp.
///
/// # Safety
/// `model` must be a live handle, string arguments NUL-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn morikit_model_run(
    model: *const MorikitModel,
    command: *const c_char,
    height_bound: *const c_char,
    out: *mut *mut c_char,
) -> MorikitStatus {
    guarded(|| {
        if model.is_null() || out.is_null() {
            set_error("null pointer");
            return MorikitStatus::NullPointer;
        }
        let name = match read_str(command) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let Some(cmd) = Command::from_name(name) else {
            set_error(format!("unknown command `{name}`"));
            return MorikitStatus::UnknownCommand;
        };
        let mut opts = Options {
            deterministic: true,
            ..Options::default()
        };
        if !height_bound.is_null() {
            let s = match read_str(height_bound) {
                Ok(s) => s,
                Err(s) => return s,
            };
            match cli::parse_rational(s) {
                Some(b) => opts.height_bound = Some(b),
                None => {
                    set_error(format!("`{s}` is not a rational"));
                    return MorikitStatus::InvalidArgument;
                }
            }
        }
        let m = &*model;
        let mut config = m.config.clone();
        config.ample = Some(m.model.h().coords().to_vec());
        match cli::execute(&cmd, &config, &opts) {
            Ok(doc) => emit(cli::render(&doc, Format::Json), &doc, out),
            Err(e) => status_of(&e),
        }
    })
}

/// Runs a command on a JSON configuration, as the command line tool does
/// with `--deterministic` when `deterministic` is true.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn morikit_run_json(
    command: *const c_char,
    config_json: *const c_char,
    deterministic: bool,
    out: *mut *mut c_char,
) -> MorikitStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null pointer");
            return MorikitStatus::NullPointer;
        }
        let (cmd, cfg) = match (read_str(command), read_str(config_json)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match cli::run_json(cmd, cfg, deterministic) {
            Ok(text) => {
                let doc: serde_json::Value =
                    serde_json::from_str(&text).unwrap_or(serde_json::Value::Null);
                emit(text, &doc, out)
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Hands `text` to the caller; reports `Incomplete` (with the output still
/// written) when the result is not certified complete.
unsafe fn emit(text: String, doc: &serde_json::Value, out: *mut *mut c_char) -> MorikitStatus {
    match CString::new(text) {
        Ok(c) => *out = c.into_raw(),
        Err(_) => {
            set_error("output contains NUL");
            *out = ptr::null_mut();
            return MorikitStatus::Io;
        }
    }
    if doc.get("complete") == Some(&serde_json::Value::Bool(false)) {
        set_error("result is not certified complete");
        return MorikitStatus::Incomplete;
    }
    MorikitStatus::Ok
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn morikit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn morikit_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Schema identifier of the JSON documents produced by the library.
#[no_mangle]
pub extern "C" fn morikit_schema() -> *const c_char {
    static SCHEMA: &[u8] = b"morikit/1\0";
    debug_assert_eq!(&SCHEMA[..SCHEMA.len() - 1], report::SCHEMA.as_bytes());
    SCHEMA.as_ptr().cast()
}
