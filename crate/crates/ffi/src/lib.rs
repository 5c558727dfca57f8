//! C ABI over the float backend.
//!
//! Handles are opaque and owned by the caller once returned; release them with
//! the matching `*_free`. Every fallible call returns a [`JgftStatus`] and
//! leaves a message for [`jgft_last_error_message`] on failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::slice;

use jordan_gft::io::{load_adjacency, GraphFormat};
use jordan_gft::jordan::EigenMode;
use jordan_gft::{Analysis, Complex64, Error, Graph, GraphSignal, Matrix, Stage, Tolerances};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JgftStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Malformed input file or text.
    Parse = 3,
    Io = 4,
    /// Eigenvalue or normalization problems.
    Spectrum = 5,
    /// Chain construction or any other numerical failure.
    Numerical = 6,
    Panic = 7,
}

/// A graph on `n` nodes.
pub struct JgftGraph {
    inner: Graph<Complex64>,
}

/// Decomposition, GFT and TV of one graph and optional signal.
pub struct JgftAnalysis {
    inner: Analysis<Complex64>,
}

/// One Jordan subspace of an analysis. Energy fields are NaN without a
/// signal.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct JgftSubspace {
    pub eigen: usize,
    pub chain: usize,
    pub dim: usize,
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub energy_re: f64,
    pub energy_im: f64,
    pub tv: f64,
    pub tv_bound: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> JgftStatus {
    match e {
        Error::Parse { .. } | Error::UnknownNode { .. } => JgftStatus::Parse,
        Error::Io(_) => JgftStatus::Io,
        Error::IrrationalSpectrum { .. }
        | Error::BadSuppliedSpectrum(_)
        | Error::NotAnEigenvalue(_)
        | Error::ZeroSpectralRadius => JgftStatus::Spectrum,
        Error::DimensionMismatch { .. }
        | Error::NotSquare { .. }
        | Error::InconsistentDimensions(_)
        | Error::Config(_)
        | Error::UnknownSubspace { .. }
        | Error::UnknownEigenvalue(_) => JgftStatus::InvalidArgument,
        _ => JgftStatus::Numerical,
    }
}

/// Runs `f`, recording errors and containing panics.
fn guard(f: impl FnOnce() -> Result<(), (JgftStatus, String)>) -> JgftStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JgftStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            JgftStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (JgftStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (JgftStatus, String) {
    (JgftStatus::NullPointer, format!("{what} is null"))
}

/// Reads `len` complex values from split real and optional imaginary parts.
///
/// # Safety
/// `re` must point to `len` doubles, and so must `im` unless it is null.
unsafe fn complex_values(re: *const f64, im: *const f64, len: usize) -> Vec<Complex64> {
    let re = slice::from_raw_parts(re, len);
    let im = if im.is_null() { None } else { Some(slice::from_raw_parts(im, len)) };
    (0..len)
        .map(|k| Complex64::new(re[k], im.map_or(0.0, |v| v[k])))
        .collect()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn jgft_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a graph from a dense row-major `n × n` adjacency. `im` may be null
/// for a real matrix.
///
/// # Safety
/// `re` (and `im` unless null) must point to `n * n` doubles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn jgft_graph_from_dense(
    re: *const f64,
    im: *const f64,
    n: usize,
    out: *mut *mut JgftGraph,
) -> JgftStatus {
    guard(|| {
        if re.is_null() {
            return Err(null("re"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        if n == 0 {
            return Err((JgftStatus::InvalidArgument, "n must be positive".into()));
        }
        let len = n.checked_mul(n).ok_or((JgftStatus::InvalidArgument, "n is too large".into()))?;
        let data = complex_values(re, im, len);
        let inner = Graph::new(Matrix::new(n, n, data)).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(JgftGraph { inner }));
        Ok(())
    })
}

/// Loads a graph from a Matrix Market (`.mtx`) or edge-list CSV file.
/// `node_count` of 0 means the largest node id.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jgft_graph_load(path: *const c_char, node_count: usize, out: *mut *mut JgftGraph) -> JgftStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| (JgftStatus::InvalidArgument, "path is not UTF-8".to_owned()))?;
        let path = Path::new(path);
        let count = (node_count > 0).then_some(node_count);
        let inner = load_adjacency(path, GraphFormat::from_path(path), count).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(JgftGraph { inner }));
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jgft_graph_free(graph: *mut JgftGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jgft_graph_node_count(graph: *const JgftGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.node_count())
}

/// Decomposes the graph and, when `signal_len > 0`, computes the GFT of the
/// signal. Tolerances of 0 select the defaults.
///
/// # Safety
/// `graph` must be a live handle; `signal_re` (and `signal_im` unless null)
/// must point to `signal_len` doubles when `signal_len > 0`; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn jgft_analyze(
    graph: *const JgftGraph,
    signal_re: *const f64,
    signal_im: *const f64,
    signal_len: usize,
    eps_zero: f64,
    eps_cluster: f64,
    out: *mut *mut JgftAnalysis,
) -> JgftStatus {
    guard(|| {
        let graph = graph.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let defaults = Tolerances::default();
        let pick = |v: f64, d: f64, name: &str| match v {
            0.0 => Ok(d),
            x if x.is_finite() && x > 0.0 => Ok(x),
            _ => Err((JgftStatus::InvalidArgument, format!("{name} must be positive"))),
        };
        let tol = Tolerances {
            zero: pick(eps_zero, defaults.zero, "eps_zero")?,
            cluster: pick(eps_cluster, defaults.cluster, "eps_cluster")?,
        };
        let signal = if signal_len > 0 {
            if signal_re.is_null() {
                return Err(null("signal_re"));
            }
            Some(GraphSignal::from_values(complex_values(signal_re, signal_im, signal_len)))
        } else {
            None
        };
        let inner = Analysis::run(graph.inner.clone(), signal.as_ref(), &EigenMode::Float, &tol, false, Stage::Decompose)
            .map_err(lib_err)?;
        *out = Box::into_raw(Box::new(JgftAnalysis { inner }));
        Ok(())
    })
}

/// # Safety
/// `analysis` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jgft_analysis_free(analysis: *mut JgftAnalysis) {
    if !analysis.is_null() {
        drop(Box::from_raw(analysis));
    }
}

/// Number of Jordan subspaces, or 0 for a null handle.
///
/// # Safety
/// `analysis` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jgft_analysis_subspace_count(analysis: *const JgftAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.inner.basis.subspaces().len())
}

/// Describes subspace `k` in basis order.
///
/// # Safety
/// `analysis` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jgft_analysis_subspace(analysis: *const JgftAnalysis, k: usize, out: *mut JgftSubspace) -> JgftStatus {
    guard(|| {
        let a = &analysis.as_ref().ok_or_else(|| null("analysis"))?.inner;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let id = a
            .basis
            .subspaces()
            .get(k)
            .ok_or_else(|| (JgftStatus::InvalidArgument, format!("subspace {k} out of range")))?;
        let lambda = a.basis.eigenvalue_of(id);
        let energy = a
            .gft
            .as_ref()
            .and_then(|d| d.component(id).ok())
            .map_or(Complex64::new(f64::NAN, f64::NAN), |c| c.energy);
        let tv = a.tv.as_ref().and_then(|t| t.get(id));
        *out = JgftSubspace {
            eigen: id.eigen,
            chain: id.chain,
            dim: id.dim,
            lambda_re: lambda.re,
            lambda_im: lambda.im,
            energy_re: energy.re,
            energy_im: energy.im,
            tv: tv.map_or(f64::NAN, |t| t.tv.value()),
            tv_bound: tv.map_or(f64::NAN, |t| t.bound),
        };
        Ok(())
    })
}

/// Copies the spectral component of the signal on subspace `k` into
/// `re[0..len]` and, unless null, `im[0..len]`. `len` must equal the node
/// count.
///
/// # Safety
/// `analysis` must be a live handle; `re` (and `im` unless null) must have
/// room for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn jgft_analysis_component(
    analysis: *const JgftAnalysis,
    k: usize,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> JgftStatus {
    guard(|| {
        let a = &analysis.as_ref().ok_or_else(|| null("analysis"))?.inner;
        if re.is_null() {
            return Err(null("re"));
        }
        let d = a
            .gft
            .as_ref()
            .ok_or_else(|| (JgftStatus::InvalidArgument, "analysis has no signal".to_owned()))?;
        let id = a
            .basis
            .subspaces()
            .get(k)
            .ok_or_else(|| (JgftStatus::InvalidArgument, format!("subspace {k} out of range")))?;
        let values = &d.component(id).map_err(lib_err)?.values;
        if len != values.len() {
            return Err((
                JgftStatus::InvalidArgument,
                format!("buffer holds {len} values, signal has {}", values.len()),
            ));
        }
        let re = slice::from_raw_parts_mut(re, len);
        for (dst, v) in re.iter_mut().zip(values) {
            *dst = v.re;
        }
        if !im.is_null() {
            let im = slice::from_raw_parts_mut(im, len);
            for (dst, v) in im.iter_mut().zip(values) {
                *dst = v.im;
            }
        }
        Ok(())
    })
}

/// Full JSON report. Release the string with [`jgft_string_free`].
///
/// # Safety
/// `analysis` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jgft_analysis_report_json(
    analysis: *const JgftAnalysis,
    check_tolerance: f64,
    out: *mut *mut c_char,
) -> JgftStatus {
    guard(|| {
        let a = &analysis.as_ref().ok_or_else(|| null("analysis"))?.inner;
        if out.is_null() {
            return Err(null("out"));
        }
        let json = a.report(check_tolerance).to_json().map_err(lib_err)?;
        *out = CString::new(json)
            .map_err(|_| (JgftStatus::Numerical, "report contains NUL".to_owned()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jgft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
