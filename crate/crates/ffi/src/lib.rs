//! C ABI for the igbotext pipeline.
//!
//! Handles are opaque pointers created and destroyed by this library.
//! Functions that can fail either return NULL or an [`IgbotextStatus`];
//! a human-readable description of the most recent failure on the calling
//! thread is available from [`igbotext_last_error_message`].
//!
//! Every returned `char*` is owned by the caller and must be released with
//! [`igbotext_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::ptr;

use igbotext::error::Error;
use igbotext::metrics::MetricKind;
use igbotext::ngram::{build_ngrams, FeatureVector};
use igbotext::preprocess::{PipelineConfig, StopWordList, StopwordSource};

/// Result codes for fallible calls.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgbotextStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A file failed strict UTF-8 decoding.
    Decode = 3,
    Io = 4,
    /// Bad configuration, including a missing stop-word list.
    Config = 5,
    Parse = 6,
    /// N-gram order below 1.
    InvalidOrder = 7,
    /// The two vectors have different n-gram orders.
    OrderMismatch = 8,
    Internal = 9,
}

/// Metric selector for [`igbotext_similarity`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgbotextMetric {
    Euclidean = 0,
    Cosine = 1,
    Jaccard = 2,
    Dice = 3,
}

impl From<IgbotextMetric> for MetricKind {
    fn from(metric: IgbotextMetric) -> Self {
        match metric {
            IgbotextMetric::Euclidean => MetricKind::Euclidean,
            IgbotextMetric::Cosine => MetricKind::Cosine,
            IgbotextMetric::Jaccard => MetricKind::Jaccard,
            IgbotextMetric::Dice => MetricKind::Dice,
        }
    }
}

/// Opaque handle over a pipeline configuration and its resolved stop-word
/// list.
pub struct IgbotextPipeline {
    config: PipelineConfig,
    stopwords: StopWordList,
}

/// Opaque handle over one document's n-gram frequency vector.
pub struct IgbotextVector {
    inner: FeatureVector,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn record_error(message: &str) {
    let owned = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error message unavailable").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(owned));
}

fn status_of(err: &Error) -> IgbotextStatus {
    match err {
        Error::Decode { .. } => IgbotextStatus::Decode,
        Error::Io { .. } => IgbotextStatus::Io,
        Error::Config(_) | Error::StopwordsMissing { .. } => IgbotextStatus::Config,
        Error::Parse { .. } => IgbotextStatus::Parse,
        Error::InvalidOrder => IgbotextStatus::InvalidOrder,
        Error::OrderMismatch { .. } => IgbotextStatus::OrderMismatch,
        Error::DuplicateDocId { .. } | Error::UnknownDoc(_) | Error::EmptyInput(_) => {
            IgbotextStatus::Internal
        }
    }
}

fn set_status(out: *mut IgbotextStatus, status: IgbotextStatus) {
    if !out.is_null() {
        unsafe { *out = status };
    }
}

fn fail(out: *mut IgbotextStatus, status: IgbotextStatus, message: &str) {
    record_error(message);
    set_status(out, status);
}

/// # Safety
/// `text` must be a valid NUL-terminated string or NULL.
unsafe fn utf8_arg<'a>(
    text: *const c_char,
    name: &str,
    status: *mut IgbotextStatus,
) -> Option<&'a str> {
    if text.is_null() {
        fail(
            status,
            IgbotextStatus::NullArgument,
            &format!("{name} is NULL"),
        );
        return None;
    }
    match CStr::from_ptr(text).to_str() {
        Ok(s) => Some(s),
        Err(e) => {
            fail(
                status,
                IgbotextStatus::InvalidUtf8,
                &format!("{name} is not valid utf-8: {e}"),
            );
            None
        }
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn igbotext_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Creates a pipeline with default settings and the built-in stop-word
/// list. Never fails.
#[no_mangle]
pub extern "C" fn igbotext_pipeline_new_default() -> *mut IgbotextPipeline {
    clear_error();
    Box::into_raw(Box::new(IgbotextPipeline {
        config: PipelineConfig::default(),
        stopwords: StopWordList::builtin_default(),
    }))
}

/// Creates a pipeline from an optional `key = value` config file and an
/// optional stop-word list file (overriding the config's list). Either path
/// may be NULL. Returns NULL on failure with `status` (when non-NULL) set.
///
/// # Safety
/// `config_path` and `stopwords_path` must be NUL-terminated strings or
/// NULL; `status` must be a valid pointer or NULL.
#[no_mangle]
pub unsafe extern "C" fn igbotext_pipeline_new(
    config_path: *const c_char,
    stopwords_path: *const c_char,
    status: *mut IgbotextStatus,
) -> *mut IgbotextPipeline {
    clear_error();
    set_status(status, IgbotextStatus::Ok);

    let mut config = if config_path.is_null() {
        PipelineConfig::default()
    } else {
        let Some(path) = utf8_arg(config_path, "config_path", status) else {
            return ptr::null_mut();
        };
        match PipelineConfig::from_file(Path::new(path)) {
            Ok(config) => config,
            Err(e) => {
                fail(status, status_of(&e), &e.to_string());
                return ptr::null_mut();
            }
        }
    };
    if !stopwords_path.is_null() {
        let Some(path) = utf8_arg(stopwords_path, "stopwords_path", status) else {
            return ptr::null_mut();
        };
        config.stopwords = StopwordSource::File(PathBuf::from(path));
    }
    let stopwords = match StopWordList::load(&config.stopwords) {
        Ok(list) => list,
        Err(e) => {
            fail(status, status_of(&e), &e.to_string());
            return ptr::null_mut();
        }
    };
    Box::into_raw(Box::new(IgbotextPipeline { config, stopwords }))
}

/// # Safety
/// `pipeline` must be a pointer returned by a pipeline constructor, not yet
/// freed, or NULL.
#[no_mangle]
pub unsafe extern "C" fn igbotext_pipeline_free(pipeline: *mut IgbotextPipeline) {
    if !pipeline.is_null() {
        drop(Box::from_raw(pipeline));
    }
}

/// Runs the full preprocessing pipeline on `text` and returns the surviving
/// tokens joined by `\n` (empty string when nothing survives). Returns NULL
/// on failure. Free the result with [`igbotext_string_free`].
///
/// # Safety
/// `pipeline` must be a live pipeline handle; `text` a NUL-terminated
/// string; `status` a valid pointer or NULL.
#[no_mangle]
pub unsafe extern "C" fn igbotext_preprocess(
    pipeline: *const IgbotextPipeline,
    text: *const c_char,
    status: *mut IgbotextStatus,
) -> *mut c_char {
    clear_error();
    set_status(status, IgbotextStatus::Ok);
    if pipeline.is_null() {
        fail(status, IgbotextStatus::NullArgument, "pipeline is NULL");
        return ptr::null_mut();
    }
    let Some(text) = utf8_arg(text, "text", status) else {
        return ptr::null_mut();
    };
    let pipeline = &*pipeline;
    let stream = igbotext::preprocess::preprocess(text, &pipeline.config, &pipeline.stopwords);
    into_c_string(stream.tokens.join("\n"))
}

/// Preprocesses `text` and counts its n-grams at order `n`. `doc_id` may be
/// NULL. Returns NULL on failure. Free with [`igbotext_vector_free`].
///
/// # Safety
/// `pipeline` must be a live pipeline handle; `doc_id` a NUL-terminated
/// string or NULL; `text` a NUL-terminated string; `status` a valid pointer
/// or NULL.
#[no_mangle]
pub unsafe extern "C" fn igbotext_vectorize(
    pipeline: *const IgbotextPipeline,
    doc_id: *const c_char,
    text: *const c_char,
    n: usize,
    status: *mut IgbotextStatus,
) -> *mut IgbotextVector {
    clear_error();
    set_status(status, IgbotextStatus::Ok);
    if pipeline.is_null() {
        fail(status, IgbotextStatus::NullArgument, "pipeline is NULL");
        return ptr::null_mut();
    }
    let Some(text) = utf8_arg(text, "text", status) else {
        return ptr::null_mut();
    };
    let id = if doc_id.is_null() {
        ""
    } else {
        match utf8_arg(doc_id, "doc_id", status) {
            Some(id) => id,
            None => return ptr::null_mut(),
        }
    };
    let pipeline = &*pipeline;
    let stream = igbotext::preprocess::preprocess(text, &pipeline.config, &pipeline.stopwords)
        .with_doc_id(id);
    match build_ngrams(&stream, n) {
        Ok(inner) => Box::into_raw(Box::new(IgbotextVector { inner })),
        Err(e) => {
            fail(status, status_of(&e), &e.to_string());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `vector` must be a pointer returned by [`igbotext_vectorize`], not yet
/// freed, or NULL.
#[no_mangle]
pub unsafe extern "C" fn igbotext_vector_free(vector: *mut IgbotextVector) {
    if !vector.is_null() {
        drop(Box::from_raw(vector));
    }
}

/// Number of distinct features, or 0 for NULL.
///
/// # Safety
/// `vector` must be a live vector handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn igbotext_vector_num_features(vector: *const IgbotextVector) -> usize {
    if vector.is_null() {
        return 0;
    }
    (*vector).inner.num_features()
}

/// Sum of all frequencies, or 0 for NULL.
///
/// # Safety
/// `vector` must be a live vector handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn igbotext_vector_total_count(vector: *const IgbotextVector) -> u64 {
    if vector.is_null() {
        return 0;
    }
    (*vector).inner.total_count()
}

/// Frequency of one feature (n words joined by single spaces); 0 when the
/// feature is absent or an argument is NULL.
///
/// # Safety
/// `vector` must be a live vector handle or NULL; `feature` a
/// NUL-terminated string or NULL.
#[no_mangle]
pub unsafe extern "C" fn igbotext_vector_get(
    vector: *const IgbotextVector,
    feature: *const c_char,
) -> u64 {
    if vector.is_null() || feature.is_null() {
        return 0;
    }
    match CStr::from_ptr(feature).to_str() {
        Ok(feature) => (*vector).inner.get(feature),
        Err(_) => 0,
    }
}

/// Computes `metric` between two vectors of equal order into `out_value`.
///
/// # Safety
/// `a` and `b` must be live vector handles; `out_value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn igbotext_similarity(
    metric: IgbotextMetric,
    a: *const IgbotextVector,
    b: *const IgbotextVector,
    out_value: *mut f64,
) -> IgbotextStatus {
    clear_error();
    if a.is_null() || b.is_null() || out_value.is_null() {
        record_error("similarity argument is NULL");
        return IgbotextStatus::NullArgument;
    }
    match MetricKind::from(metric).compute(&(*a).inner, &(*b).inner) {
        Ok(value) => {
            *out_value = value.value;
            IgbotextStatus::Ok
        }
        Err(e) => {
            record_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Message for the most recent failure on this thread, or NULL when the
/// last call succeeded. Free with [`igbotext_string_free`].
#[no_mangle]
pub extern "C" fn igbotext_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|msg| msg.clone().into_raw())
            .unwrap_or(ptr::null_mut())
    })
}

/// Releases a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be a string returned by this library, not yet freed, or NULL.
#[no_mangle]
pub unsafe extern "C" fn igbotext_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
