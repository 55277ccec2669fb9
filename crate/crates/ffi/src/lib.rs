//! C interface to `codegraph`.
//!
//! Codes and graphs cross the boundary as opaque handles created by
//! `cg_code_parse` / `cg_graph_build` and released with the matching
//! `*_free`. Every fallible call returns a `CgStatus` and writes its result
//! through an out-pointer. Strings returned by the library are owned by the
//! caller and must be released with `cg_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use codegraph::report::{invariant_report, OracleMode, ReportOptions};
use codegraph::{
    beta, build, exact_metric_dimension, lambda_chain, lambda_threshold, parse_code, tau_code, tau_r_code,
    ChainPartition, Family, GeneratingCode, Graph, OracleBudget, OracleError,
};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    /// No closed form covers the input.
    Inapplicable = 4,
    BudgetExceeded = 5,
    InvalidArgument = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgFamily {
    Threshold = 0,
    Chain = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgOracleMode {
    Off = 0,
    Try = 1,
    Require = 2,
}

impl From<CgFamily> for Family {
    fn from(f: CgFamily) -> Self {
        match f {
            CgFamily::Threshold => Family::Threshold,
            CgFamily::Chain => Family::Chain,
        }
    }
}

impl From<CgOracleMode> for OracleMode {
    fn from(m: CgOracleMode) -> Self {
        match m {
            CgOracleMode::Off => OracleMode::Off,
            CgOracleMode::Try => OracleMode::Try,
            CgOracleMode::Require => OracleMode::Require,
        }
    }
}

impl From<OracleError> for CgStatus {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => CgStatus::BudgetExceeded,
            _ => CgStatus::InvalidArgument,
        }
    }
}

/// Opaque generating code.
pub struct CgCode(GeneratingCode);

/// Opaque graph.
pub struct CgGraph(Graph);

fn guard(f: impl FnOnce() -> Result<(), CgStatus>) -> CgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => CgStatus::Internal,
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, CgStatus> {
    p.as_ref().ok_or(CgStatus::NullPointer)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), CgStatus> {
    if out.is_null() {
        return Err(CgStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    // Rust strings built here never contain interior NULs.
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Static description of a status code. Never free the result.
#[no_mangle]
pub extern "C" fn cg_status_message(status: CgStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        CgStatus::Ok => c"ok",
        CgStatus::NullPointer => c"null pointer argument",
        CgStatus::InvalidUtf8 => c"string is not valid UTF-8",
        CgStatus::ParseError => c"malformed generating code",
        CgStatus::Inapplicable => c"no closed form covers this input",
        CgStatus::BudgetExceeded => c"input exceeds the oracle budget",
        CgStatus::InvalidArgument => c"invalid argument",
        CgStatus::Internal => c"internal error",
    };
    msg.as_ptr()
}

/// Parses a NUL-terminated code such as `"0^3 1^2 0 1"`.
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_code_parse(text: *const c_char, out: *mut *mut CgCode) -> CgStatus {
    guard(|| {
        if text.is_null() {
            return Err(CgStatus::NullPointer);
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| CgStatus::InvalidUtf8)?;
        let code = parse_code(s).map_err(|_| CgStatus::ParseError)?;
        write(out, Box::into_raw(Box::new(CgCode(code))))
    })
}

/// # Safety
/// `code` must come from `cg_code_parse` and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn cg_code_free(code: *mut CgCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Number of vertices the code generates.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_code_len(code: *const CgCode, out: *mut usize) -> CgStatus {
    guard(|| write(out, deref(code)?.0.len()))
}

/// Canonical compressed form, e.g. `"(0^3 1^2)(0 1)"`.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable. Free the result
/// with `cg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cg_code_to_string(code: *const CgCode, out: *mut *mut c_char) -> CgStatus {
    guard(|| write(out, into_c_string(deref(code)?.0.to_string())))
}

/// # Safety
/// `s` must come from this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn cg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_build(code: *const CgCode, family: CgFamily, out: *mut *mut CgGraph) -> CgStatus {
    guard(|| {
        let g = build(&deref(code)?.0, family.into());
        write(out, Box::into_raw(Box::new(CgGraph(g))))
    })
}

/// # Safety
/// `graph` must come from `cg_graph_build` and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_free(graph: *mut CgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_order(graph: *const CgGraph, out: *mut usize) -> CgStatus {
    guard(|| write(out, deref(graph)?.0.n()))
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_edge_count(graph: *const CgGraph, out: *mut usize) -> CgStatus {
    guard(|| write(out, deref(graph)?.0.edge_count()))
}

/// `true` when `u` and `v` are adjacent.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_has_edge(graph: *const CgGraph, u: usize, v: usize, out: *mut bool) -> CgStatus {
    guard(|| {
        let g = &deref(graph)?.0;
        if u >= g.n() || v >= g.n() {
            return Err(CgStatus::InvalidArgument);
        }
        write(out, g.has_edge(u, v))
    })
}

/// Metric dimension from the closed form.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_beta(code: *const CgCode, family: CgFamily, out: *mut u64) -> CgStatus {
    guard(|| write(out, beta(&deref(code)?.0, family.into()).value))
}

/// Threshold dimension of the threshold graph of `code`. Returns
/// `Inapplicable` when no clause of the closed form applies.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_tau(code: *const CgCode, out: *mut u64) -> CgStatus {
    guard(|| {
        let value = tau_code(&deref(code)?.0).value.ok_or(CgStatus::Inapplicable)?;
        write(out, value)
    })
}

/// Restricted threshold dimension of the threshold graph of `code`.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_tau_r(code: *const CgCode, out: *mut u64) -> CgStatus {
    guard(|| write(out, tau_r_code(&deref(code)?.0).value))
}

/// L(2,1) labeling number from the closed form.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_lambda(code: *const CgCode, family: CgFamily, out: *mut u64) -> CgStatus {
    guard(|| {
        let code = &deref(code)?.0;
        let span = match family {
            CgFamily::Threshold => lambda_threshold(code).span,
            CgFamily::Chain => lambda_chain(&ChainPartition::from_code(code)).span,
        };
        write(out, span)
    })
}

/// Exact metric dimension by exhaustive search, refused above `max_n`
/// vertices.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_exact_metric_dimension(graph: *const CgGraph, max_n: usize, out: *mut u64) -> CgStatus {
    guard(|| {
        let g = &deref(graph)?.0;
        let defaults = OracleBudget::default();
        let budget = OracleBudget::new(max_n, defaults.max_n_lambda, defaults.max_nonedges_tau)?;
        let basis = exact_metric_dimension(g, &budget)?;
        write(out, basis.beta)
    })
}

/// Full invariant report as JSON, oracles run with default budgets.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable. Free the result
/// with `cg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cg_report_json(
    code: *const CgCode,
    family: CgFamily,
    oracle: CgOracleMode,
    out: *mut *mut c_char,
) -> CgStatus {
    guard(|| {
        let options = ReportOptions {
            oracle: oracle.into(),
            ..ReportOptions::default()
        };
        let report = invariant_report(&deref(code)?.0, family.into(), &options)?;
        write(out, into_c_string(report.to_json()))
    })
}
