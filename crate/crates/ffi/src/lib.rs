//! C ABI over `superkit`.
//!
//! Every fallible function returns an [`SkStatus`] and writes its result through an out-pointer.
//! On failure a description is kept per thread and can be read with [`sk_last_error`]. Strings
//! handed out by the library must be released with [`sk_string_free`], handles with their own
//! `_free` function.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::json;

use superkit::atlas::{build_projective_atlas, candidate_cocycle, classify_maximal, SplitModelSpec};
use superkit::grassmann::{ConjugationPolicy, Grassmann};
use superkit::lagrangian::Superfield;
use superkit::laurent::LaurentFn;
use superkit::reference::reference_check;
use superkit::report::{classification_report, goodfield_report};
use superkit::scalar::ComplexScalar;
use superkit::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or scalar text.
    Parse = 3,
    /// A mathematical precondition failed (model not maximal, zero scaling constant, …).
    Precondition = 4,
    /// The library panicked; this is a bug.
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkPolicy {
    /// Conjugation keeps the order of odd factors.
    Fix = 0,
    /// Conjugation reverses the order of odd factors.
    Negate = 1,
}

impl From<SkPolicy> for ConjugationPolicy {
    fn from(p: SkPolicy) -> Self {
        match p {
            SkPolicy::Fix => ConjugationPolicy::Fix,
            SkPolicy::Negate => ConjugationPolicy::Negate,
        }
    }
}

/// A split model on the projective line.
pub struct SkModel(SplitModelSpec);

/// A superfield given chart by chart.
pub struct SkField(Superfield);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            2 => SkStatus::Parse,
            _ => SkStatus::Precondition,
        };
        Failure(status, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(SkStatus::Parse, e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

/// Runs `body`, records any failure and maps it to a status.
fn guard(body: impl FnOnce() -> Outcome<()>) -> SkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SkStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SkStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char, name: &str) -> Outcome<&'a str> {
    if s.is_null() {
        return Err(Failure(SkStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(SkStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Outcome<&'a T> {
    p.as_ref().ok_or_else(|| Failure(SkStatus::NullArgument, format!("{name} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err(Failure(SkStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Outcome<()> {
    let c = CString::new(s).map_err(|e| Failure(SkStatus::Internal, e.to_string()))?;
    write_out(out, c.into_raw())
}

/// Message of the last failure on this thread, or null. Valid until the next library call on
/// the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates the split model `O(−k1) ⊕ O(−k2)` with scaling constants given as text such as
/// `"i"`, `"-1/2"` or `"1+2i"`.
#[no_mangle]
pub unsafe extern "C" fn sk_model_new(
    k1: i64,
    k2: i64,
    lambda1: *const c_char,
    lambda2: *const c_char,
    out: *mut *mut SkModel,
) -> SkStatus {
    guard(|| {
        let l1: ComplexScalar = text(lambda1, "lambda1")?.parse()?;
        let l2: ComplexScalar = text(lambda2, "lambda2")?.parse()?;
        let model = Box::new(SkModel(SplitModelSpec::new(k1, k2, l1, l2)));
        write_out(out, Box::into_raw(model))
    })
}

/// Sets the even nilpotent shift from a Laurent-function JSON document.
#[no_mangle]
pub unsafe extern "C" fn sk_model_set_alpha(model: *mut SkModel, alpha_json: *const c_char) -> SkStatus {
    guard(|| {
        let alpha: LaurentFn = serde_json::from_str(text(alpha_json, "alpha_json")?)?;
        let m = model.as_mut().ok_or_else(|| Failure(SkStatus::NullArgument, "model is null".into()))?;
        m.0.alpha = alpha;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_model_free(model: *mut SkModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

#[no_mangle]
pub unsafe extern "C" fn sk_model_is_maximal(model: *const SkModel, out: *mut bool) -> SkStatus {
    guard(|| write_out(out, classify_maximal(&handle(model, "model")?.0).maximal))
}

#[no_mangle]
pub unsafe extern "C" fn sk_model_berezinian_is_one(model: *const SkModel, out: *mut bool) -> SkStatus {
    guard(|| {
        let ber = handle(model, "model")?.0.transition()?.berezinian()?;
        write_out(out, ber == Grassmann::one())
    })
}

fn grassmann_json(g: &Grassmann<LaurentFn>) -> serde_json::Value {
    json!({ "c0": g.c0, "c1": g.c1, "c2": g.c2, "c12": g.c12, "display": g.to_string() })
}

/// The `∂/∂η` coefficients of the pushforward in both gluing directions, one 2×2 JSON matrix each.
#[no_mangle]
pub unsafe extern "C" fn sk_model_cocycle_json(model: *const SkModel, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        let atlas = build_projective_atlas(&handle(model, "model")?.0)?;
        let cocycle = candidate_cocycle(&atlas)?;
        let entries: Vec<serde_json::Value> = cocycle
            .entries
            .iter()
            .map(|((from, to), m)| {
                let rows: Vec<Vec<serde_json::Value>> = m.iter().map(|r| r.iter().map(grassmann_json).collect()).collect();
                json!({ "from": from, "to": to, "matrix": rows })
            })
            .collect();
        write_string(out, serde_json::to_string(&json!({ "diagonal": cocycle.diagonal, "entries": entries }))?)
    })
}

/// Parses a superfield JSON document (`{"charts": {"V": {…}}}`).
#[no_mangle]
pub unsafe extern "C" fn sk_field_from_json(json: *const c_char, out: *mut *mut SkField) -> SkStatus {
    guard(|| {
        let field: Superfield = serde_json::from_str(text(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(SkField(field))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_field_free(field: *mut SkField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Consistency report, the same document the command line prints.
#[no_mangle]
pub unsafe extern "C" fn sk_consistency_json(
    model: *const SkModel,
    field: *const SkField,
    policy: SkPolicy,
    out: *mut *mut c_char,
) -> SkStatus {
    guard(|| {
        let (m, f) = (handle(model, "model")?, handle(field, "field")?);
        let policy = policy.into();
        let report = classification_report(&m.0, &f.0, policy, &reference_check(policy)?)?;
        write_string(out, serde_json::to_string(&report)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_goodfield_json(
    model: *const SkModel,
    field: *const SkField,
    policy: SkPolicy,
    out: *mut *mut c_char,
) -> SkStatus {
    guard(|| {
        let (m, f) = (handle(model, "model")?, handle(field, "field")?);
        write_string(out, serde_json::to_string(&goodfield_report(&m.0, &f.0, policy.into())?)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sk_paper_check_json(policy: SkPolicy, out: *mut *mut c_char) -> SkStatus {
    guard(|| write_string(out, serde_json::to_string(&reference_check(policy.into())?)?))
}

#[no_mangle]
pub unsafe extern "C" fn sk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
