//! C ABI over `conekit`.
//!
//! Networks and reports are opaque handles created by this library and released with their
//! `*_free` function. Every fallible call returns a [`ConekitStatus`]; on failure the message
//! is available from [`conekit_last_error`] on the same thread until the next failing call.
//! Strings returned through `char **` are owned by the caller and released with
//! [`conekit_string_free`].

use conekit::builder::{closure_check, Figure, SaturationConfig};
use conekit::exactgeom::Rational;
use conekit::netmodel::{parse_network, ReactionNetwork};
use conekit::orchestrate::{
    analyze_monotone, analyze_nonexpansive, annotate_strength, dual_transfer, report_json,
    AnalysisConfig, AnalysisReport, NetworkJson, Verdict,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConekitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    Internal = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConekitQuestion {
    NonExpansive = 0,
    Monotone = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConekitVerdict {
    Yes = 0,
    No = 1,
    NoForConesContainingV = 2,
    Inconclusive = 3,
}

/// Saturation limits; obtain defaults from [`conekit_options_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConekitOptions {
    pub max_iterations: u32,
    pub snap_max_denominator: u64,
    /// Snapping distance `numerator / denominator`.
    pub snap_distance_numerator: i64,
    pub snap_distance_denominator: i64,
    pub max_figure_size: u32,
}

/// Opaque parsed reaction network.
pub struct ConekitNetwork {
    net: ReactionNetwork,
}

/// Opaque analysis result.
pub struct ConekitReport {
    report: AnalysisReport,
    net: ReactionNetwork,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (ConekitStatus, String);

fn status_of(e: &conekit::Error) -> ConekitStatus {
    match e {
        conekit::Error::Parse { .. } | conekit::Error::Catalytic { .. } => {
            ConekitStatus::ParseError
        }
        conekit::Error::Internal(_) => ConekitStatus::Internal,
        _ => ConekitStatus::InvalidInput,
    }
}

fn lib_err(e: conekit::Error) -> Failure {
    (status_of(&e), e.to_string())
}

/// Runs `f`, converting errors and panics into a status and the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ConekitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ConekitStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside conekit".into());
            ConekitStatus::Panic
        }
    }
}

/// # Safety
/// `s` is null or a NUL-terminated string valid for reads.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err((ConekitStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (ConekitStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live `T`.
unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| (ConekitStatus::NullPointer, format!("{what} is null")))
}

fn out_ptr<T>(out: *mut T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err((ConekitStatus::NullPointer, format!("{what} is null")));
    }
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (ConekitStatus::Internal, "output contains NUL".into()))
}

/// Message of the most recent failing call on this thread, or null. Valid until the next
/// failing call on this thread; do not free.
#[no_mangle]
pub extern "C" fn conekit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn conekit_options_default() -> ConekitOptions {
    let d = SaturationConfig::default();
    ConekitOptions {
        max_iterations: d.max_iterations as u32,
        snap_max_denominator: d.snap_max_denominator,
        snap_distance_numerator: 1,
        snap_distance_denominator: 1_000_000,
        max_figure_size: d.max_figure_size as u32,
    }
}

fn config_from(o: &ConekitOptions) -> Result<AnalysisConfig, Failure> {
    let bad = |m: &str| (ConekitStatus::InvalidInput, m.to_string());
    if o.max_iterations == 0 || o.snap_max_denominator == 0 || o.max_figure_size == 0 {
        return Err(bad("options must be positive"));
    }
    if o.snap_distance_numerator <= 0 || o.snap_distance_denominator <= 0 {
        return Err(bad("snapping distance must be positive"));
    }
    let saturation = SaturationConfig {
        max_iterations: o.max_iterations as usize,
        snap_max_denominator: o.snap_max_denominator,
        snap_max_distance: Rational::new(
            o.snap_distance_numerator.into(),
            o.snap_distance_denominator.into(),
        ),
        max_figure_size: o.max_figure_size as usize,
    };
    Ok(AnalysisConfig {
        saturation,
        ..AnalysisConfig::default()
    })
}

/// Parses `text` in the network grammar into `*out`.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conekit_network_parse(
    text: *const c_char,
    out: *mut *mut ConekitNetwork,
) -> ConekitStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let text = read_str(text, "text")?;
        let net = parse_network(text).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ConekitNetwork { net }));
        Ok(())
    })
}

/// # Safety
/// `net` is null or a handle from [`conekit_network_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn conekit_network_free(net: *mut ConekitNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Number of species, or 0 for a null handle.
///
/// # Safety
/// `net` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conekit_network_species_count(net: *const ConekitNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.net.n_species())
}

/// Number of reactions, or 0 for a null handle.
///
/// # Safety
/// `net` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conekit_network_reaction_count(net: *const ConekitNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.net.n_reactions())
}

/// Answers `question` for `net`. `options` may be null for the defaults.
///
/// # Safety
/// `net` is a live handle; `options` is null or readable; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conekit_analyze(
    net: *const ConekitNetwork,
    question: ConekitQuestion,
    options: *const ConekitOptions,
    out: *mut *mut ConekitReport,
) -> ConekitStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let net = &deref(net, "net")?.net;
        let config = match options.as_ref() {
            Some(o) => config_from(o)?,
            None => AnalysisConfig::default(),
        };
        let report = match question {
            ConekitQuestion::NonExpansive => analyze_nonexpansive(net, &config),
            ConekitQuestion::Monotone => analyze_monotone(net, &config),
        }
        .map_err(lib_err)?;
        let report = annotate_strength(report, net);
        *out = Box::into_raw(Box::new(ConekitReport {
            report,
            net: net.clone(),
        }));
        Ok(())
    })
}

/// # Safety
/// `report` is null or a handle from [`conekit_analyze`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn conekit_report_free(report: *mut ConekitReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Verdict of a report; `Inconclusive` for a null handle.
///
/// # Safety
/// `report` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conekit_report_verdict(report: *const ConekitReport) -> ConekitVerdict {
    match report.as_ref().map(|r| r.report.verdict) {
        Some(Verdict::Yes) => ConekitVerdict::Yes,
        Some(Verdict::No) => ConekitVerdict::No,
        Some(Verdict::NoForConesContainingV) => ConekitVerdict::NoForConesContainingV,
        Some(Verdict::Inconclusive) | None => ConekitVerdict::Inconclusive,
    }
}

/// The report as JSON in `*out`; release it with [`conekit_string_free`].
///
/// # Safety
/// `report` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conekit_report_json(
    report: *const ConekitReport,
    out: *mut *mut c_char,
) -> ConekitStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let r = deref(report, "report")?;
        let json = serde_json::to_string(&report_json(&r.report, &r.net))
            .map_err(|e| (ConekitStatus::Internal, e.to_string()))?;
        *out = to_c_string(json)?;
        Ok(())
    })
}

/// Transfers a certified figure (JSON figure object) to the dual network. `*out` receives
/// `{dual, transferred}` as JSON.
///
/// # Safety
/// `net` is a live handle; `figure_json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conekit_dualize(
    net: *const ConekitNetwork,
    figure_json: *const c_char,
    out: *mut *mut c_char,
) -> ConekitStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let net = &deref(net, "net")?.net;
        let text = read_str(figure_json, "figure_json")?;
        let figure: Figure = serde_json::from_str(text)
            .map_err(|e| (ConekitStatus::InvalidInput, format!("figure JSON: {e}")))?;
        if figure.ambient_dim() != net.n_species() {
            return Err((
                ConekitStatus::InvalidInput,
                "figure dimension does not match the network".into(),
            ));
        }
        let violations = closure_check(&figure, net);
        if !violations.is_empty() {
            return Err((
                ConekitStatus::InvalidInput,
                format!("figure has {} closure violation(s)", violations.len()),
            ));
        }
        let t = dual_transfer(net, &figure).map_err(lib_err)?;
        let value = serde_json::json!({
            "dual": NetworkJson::from_network(&t.dual),
            "transferred": t.transferred,
        });
        *out = to_c_string(value.to_string())?;
        Ok(())
    })
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn conekit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
