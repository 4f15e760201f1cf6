//! C ABI for `pspectral`.
//!
//! Hypergraphs and estimates are opaque heap handles owned by the caller
//! and released with the matching `*_free` function. Every fallible call
//! returns a [`PsStatus`]; on failure the message is available from
//! [`ps_last_error_message`] on the same thread. Vertex labels crossing
//! this boundary are 1-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use pspectral::analysis::kkr_lambda_max;
use pspectral::generators::{complete_rgraph, counterexample_4graph, kpartite_blowup, BlowupSpec};
use pspectral::{
    exact_graph_eigen, io, lp_norm, solve_max, solve_min, Error, SolverConfig, SpectralEstimate,
    StepPolicy, WeightedHypergraph,
};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    EmptyOrZeroWeight = 3,
    BadEdge = 4,
    DuplicateEdge = 5,
    DimensionMismatch = 6,
    BadP = 7,
    NotPartite = 8,
    BadArity = 9,
    BadOrder = 10,
    BadDensity = 11,
    ZeroVector = 12,
    NonFinite = 13,
    WrongArity = 14,
    TooLarge = 15,
    TheoremInapplicable = 16,
    ConvergenceSuspect = 17,
    Parse = 18,
    Io = 19,
    Panic = 20,
}

impl From<&Error> for PsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::EmptyOrZeroWeight => PsStatus::EmptyOrZeroWeight,
            Error::BadEdge { .. } => PsStatus::BadEdge,
            Error::DuplicateEdge { .. } => PsStatus::DuplicateEdge,
            Error::DimensionMismatch { .. } => PsStatus::DimensionMismatch,
            Error::BadP(..) => PsStatus::BadP,
            Error::NotPartite { .. } => PsStatus::NotPartite,
            Error::BadArity(_) => PsStatus::BadArity,
            Error::BadOrder(_) => PsStatus::BadOrder,
            Error::BadDensity(_) => PsStatus::BadDensity,
            Error::ZeroVector => PsStatus::ZeroVector,
            Error::NonFinite(_) => PsStatus::NonFinite,
            Error::WrongArity(_) => PsStatus::WrongArity,
            Error::TooLarge { .. } => PsStatus::TooLarge,
            Error::TheoremInapplicable(_) => PsStatus::TheoremInapplicable,
            Error::ConvergenceSuspect(_) => PsStatus::ConvergenceSuspect,
            Error::Config(_) => PsStatus::InvalidArgument,
            Error::Parse { .. } => PsStatus::Parse,
            Error::Io(_) => PsStatus::Io,
        }
    }
}

/// Which extremum to compute.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsKind {
    Max = 0,
    Min = 1,
}

/// Solver settings; obtain defaults from [`ps_solver_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsSolverConfig {
    pub p: f64,
    pub restarts: usize,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub seed: u64,
    pub step_initial: f64,
    pub step_shrink: f64,
    pub armijo: f64,
}

impl From<&PsSolverConfig> for SolverConfig {
    fn from(c: &PsSolverConfig) -> Self {
        SolverConfig {
            p: c.p,
            restarts: c.restarts,
            max_iters: c.max_iters,
            grad_tol: c.grad_tol,
            step: StepPolicy::Backtracking {
                initial: c.step_initial,
                shrink: c.step_shrink,
                armijo: c.armijo,
            },
            seed: c.seed,
        }
    }
}

/// Opaque weighted hypergraph.
pub struct PsHypergraph(WeightedHypergraph);

/// Opaque solver result.
pub struct PsEstimate(SpectralEstimate);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn guard(f: impl FnOnce() -> Result<(), (PsStatus, String)>) -> PsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PsStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside pspectral");
            PsStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (PsStatus, String) {
    (PsStatus::from(&e), e.to_string())
}

fn null(what: &str) -> (PsStatus, String) {
    (PsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], (PsStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn hypergraph<'a>(h: *const PsHypergraph) -> Result<&'a WeightedHypergraph, (PsStatus, String)> {
    h.as_ref().map(|h| &h.0).ok_or_else(|| null("hypergraph handle"))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), (PsStatus, String)> {
    if out.is_null() {
        return Err(null("output handle pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length in bytes, excluding
/// the terminator.
///
/// # Safety
/// `buf` must be null or point to at least `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ps_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Builds a hypergraph from `m` edges of `r` 1-based vertices each
/// (`vertices` has `m * r` entries, edge-major) and `m` weights.
///
/// # Safety
/// `vertices` and `weights` must point to arrays of the stated lengths;
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ps_hypergraph_new(
    n: usize,
    r: usize,
    m: usize,
    vertices: *const usize,
    weights: *const f64,
    out: *mut *mut PsHypergraph,
) -> PsStatus {
    guard(|| {
        let total = m.checked_mul(r).ok_or((PsStatus::InvalidArgument, "m * r overflows".into()))?;
        let vs = slice(vertices, total, "vertices")?;
        let ws = slice(weights, m, "weights")?;
        let edges = if r == 0 {
            Vec::new()
        } else {
            vs.chunks(r).zip(ws).map(|(e, &w)| (e.to_vec(), w)).collect()
        };
        let h = WeightedHypergraph::from_one_based(n, r, edges).map_err(lib_err)?;
        store(out, PsHypergraph(h))
    })
}

/// Reads a hypergraph in the text or JSON format.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ps_hypergraph_read(path: *const c_char, out: *mut *mut PsHypergraph) -> PsStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| (PsStatus::InvalidArgument, "path is not UTF-8".to_string()))?;
        let h = io::read_hypergraph(Path::new(path)).map_err(lib_err)?;
        store(out, PsHypergraph(h))
    })
}

/// The complete r-graph on `k` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ps_hypergraph_complete(k: usize, r: usize, out: *mut *mut PsHypergraph) -> PsStatus {
    guard(|| {
        let (h, _) = complete_rgraph(k, r).map_err(lib_err)?;
        store(out, PsHypergraph(h))
    })
}

/// Complete regular k-partite r-graph with parts of size `t`. When
/// `part_of` is non-null it receives the 1-based part of each of the
/// `k * t` vertices.
///
/// # Safety
/// `out` must be a valid pointer; `part_of` must be null or point to `k * t`
/// writable entries.
#[no_mangle]
pub unsafe extern "C" fn ps_hypergraph_blowup(
    k: usize,
    r: usize,
    t: usize,
    out: *mut *mut PsHypergraph,
    part_of: *mut usize,
) -> PsStatus {
    guard(|| {
        let spec = BlowupSpec::new(k, r, t).map_err(lib_err)?;
        let (h, cert) = kpartite_blowup(spec).map_err(lib_err)?;
        if !part_of.is_null() {
            for (v, p) in cert.part_of.iter().enumerate() {
                *part_of.add(v) = p + 1;
            }
        }
        store(out, PsHypergraph(h))
    })
}

/// The 2-chromatic 4-graph on `2n` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ps_hypergraph_counterexample(n: usize, out: *mut *mut PsHypergraph) -> PsStatus {
    guard(|| {
        let h = counterexample_4graph(n).map_err(lib_err)?;
        store(out, PsHypergraph(h))
    })
}

/// # Safety
/// `h` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_hypergraph_free(h: *mut PsHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_hypergraph_vertex_count(h: *const PsHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.n())
}

/// Uniformity r, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_hypergraph_uniformity(h: *const PsHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.r())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_hypergraph_edge_count(h: *const PsHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.edges().len())
}

/// Value of the polynomial form at `x` (length `len`).
///
/// # Safety
/// `h` must be a live handle, `x` must hold `len` values and `out` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn ps_evaluate(h: *const PsHypergraph, x: *const f64, len: usize, out: *mut f64) -> PsStatus {
    guard(|| {
        let h = hypergraph(h)?;
        let x = slice(x, len, "x")?;
        let v = h.evaluate(x).map_err(lib_err)?;
        out.as_mut().map(|o| *o = v).ok_or_else(|| null("out"))
    })
}

/// Gradient of the polynomial form at `x`, written to `grad` (length `len`).
///
/// # Safety
/// `x` and `grad` must each hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn ps_gradient(
    h: *const PsHypergraph,
    x: *const f64,
    len: usize,
    grad: *mut f64,
) -> PsStatus {
    guard(|| {
        let h = hypergraph(h)?;
        let x = slice(x, len, "x")?;
        let g = h.gradient(x).map_err(lib_err)?;
        if grad.is_null() {
            return Err(null("grad"));
        }
        ptr::copy_nonoverlapping(g.as_ptr(), grad, g.len());
        Ok(())
    })
}

/// l^p norm of `x`.
///
/// # Safety
/// `x` must hold `len` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ps_lp_norm(x: *const f64, len: usize, p: f64, out: *mut f64) -> PsStatus {
    guard(|| {
        let x = slice(x, len, "x")?;
        let v = lp_norm(x, p).map_err(lib_err)?;
        out.as_mut().map(|o| *o = v).ok_or_else(|| null("out"))
    })
}

/// Default solver settings for exponent `p`.
#[no_mangle]
pub extern "C" fn ps_solver_config_default(p: f64) -> PsSolverConfig {
    let cfg = SolverConfig::new(p);
    let StepPolicy::Backtracking { initial, shrink, armijo } = cfg.step else {
        unreachable!("default policy is backtracking")
    };
    PsSolverConfig {
        p,
        restarts: cfg.restarts,
        max_iters: cfg.max_iters,
        grad_tol: cfg.grad_tol,
        seed: cfg.seed,
        step_initial: initial,
        step_shrink: shrink,
        armijo,
    }
}

/// Estimates the maximum or minimum of the form on the unit l^p sphere.
///
/// # Safety
/// `h` must be a live handle, `cfg` a valid pointer and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ps_solve(
    h: *const PsHypergraph,
    cfg: *const PsSolverConfig,
    kind: PsKind,
    out: *mut *mut PsEstimate,
) -> PsStatus {
    guard(|| {
        let h = hypergraph(h)?;
        let cfg = SolverConfig::from(cfg.as_ref().ok_or_else(|| null("config"))?);
        let est = match kind {
            PsKind::Max => solve_max(h, &cfg),
            PsKind::Min => solve_min(h, &cfg),
        }
        .map_err(lib_err)?;
        store(out, PsEstimate(est))
    })
}

/// Extreme adjacency eigenvalues of a 2-graph.
///
/// # Safety
/// `h` must be a live handle; `max` and `min` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ps_graph_eigen(h: *const PsHypergraph, max: *mut f64, min: *mut f64) -> PsStatus {
    guard(|| {
        let h = hypergraph(h)?;
        let (hi, lo) = exact_graph_eigen(h).map_err(lib_err)?;
        if max.is_null() || min.is_null() {
            return Err(null("output"));
        }
        *max = hi.value;
        *min = lo.value;
        Ok(())
    })
}

/// Closed-form maximum of the complete r-graph on `k` vertices.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ps_kkr_lambda_max(k: usize, r: usize, p: f64, out: *mut f64) -> PsStatus {
    guard(|| {
        let v = kkr_lambda_max(k, r, p).map_err(lib_err)?;
        out.as_mut().map(|o| *o = v).ok_or_else(|| null("out"))
    })
}

/// Estimated value, or NaN for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_estimate_value(e: *const PsEstimate) -> f64 {
    e.as_ref().map_or(f64::NAN, |e| e.0.value)
}

/// Length of the witness vector, or 0 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_estimate_dimension(e: *const PsEstimate) -> usize {
    e.as_ref().map_or(0, |e| e.0.witness.len())
}

/// Number of restarts that met the convergence tolerance.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_estimate_restarts_converged(e: *const PsEstimate) -> usize {
    e.as_ref().map_or(0, |e| e.0.restarts_converged)
}

/// Copies the witness into `buf`, which must hold exactly the estimate's
/// dimension.
///
/// # Safety
/// `e` must be a live handle and `buf` must hold `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn ps_estimate_witness(e: *const PsEstimate, buf: *mut f64, len: usize) -> PsStatus {
    guard(|| {
        let e = e.as_ref().ok_or_else(|| null("estimate handle"))?;
        let w = &e.0.witness;
        if len != w.len() {
            return Err(lib_err(Error::DimensionMismatch { expected: w.len(), actual: len }));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(w.as_ptr(), buf, len);
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_estimate_free(e: *mut PsEstimate) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}
