//! C ABI for `graph-energy`.
//!
//! Every fallible function returns a [`GeStatus`] and writes its result
//! through an out-pointer. On failure the out-pointer is left untouched and a
//! message is available from [`ge_last_error_message`] on the calling thread.
//!
//! Ownership:
//!
//! - Handles from `ge_matrix_*` and `ge_graph_*` constructors are freed with
//!   [`ge_matrix_free`] and [`ge_graph_free`].
//! - Strings returned through `char **` out-pointers are freed with
//!   [`ge_string_free`].
//!
//! Panics never cross the boundary; they are reported as
//! [`GeStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use graph_energy::bounds::{self, EnergyError};
use graph_energy::ensemble::{self, EnsembleError};
use graph_energy::extremal::{self, SearchError};
use graph_energy::graphs::{self, Family, Graph, GraphError};
use graph_energy::linalg::{self, DenseMatrix, LinalgError};
use graph_energy::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// An argument was out of range or violated a precondition.
    InvalidArgument = 2,
    /// Matrix text, edge-list text or a family spec could not be parsed.
    Parse = 3,
    /// Matrix dimensions were empty or inconsistent with the data.
    Dimension = 4,
    /// The eigensolver did not converge.
    Convergence = 5,
    /// A string argument was not valid UTF-8.
    Utf8 = 6,
    /// The library panicked; this is a bug.
    Panic = 7,
    /// The caller's buffer is shorter than the result; the required length
    /// was written.
    BufferTooSmall = 8,
}

/// Opaque dense real matrix.
pub struct GeMatrix(DenseMatrix);

/// Opaque simple undirected graph.
pub struct GeGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: GeStatus,
    message: String,
}

impl Failure {
    fn new(status: GeStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }
}

fn linalg_status(e: &LinalgError) -> GeStatus {
    match e {
        LinalgError::EmptyDimension { .. }
        | LinalgError::DataLength { .. }
        | LinalgError::RaggedRow { .. }
        | LinalgError::Dimension(_) => GeStatus::Dimension,
        LinalgError::Convergence { .. } => GeStatus::Convergence,
        LinalgError::Parse { .. } => GeStatus::Parse,
        LinalgError::NonFinite { .. } | LinalgError::NotSymmetric { .. } => GeStatus::InvalidArgument,
    }
}

fn graph_status(e: &GraphError) -> GeStatus {
    match e {
        GraphError::Parse { .. } | GraphError::Family { .. } => GeStatus::Parse,
        _ => GeStatus::InvalidArgument,
    }
}

fn status_of(e: &Error) -> GeStatus {
    match e {
        Error::Linalg(e)
        | Error::Energy(EnergyError::Linalg(e))
        | Error::Ensemble(EnsembleError::Linalg(e))
        | Error::Search(SearchError::Linalg(e)) => linalg_status(e),
        Error::Graph(e) | Error::Search(SearchError::Graph(e)) => graph_status(e),
        _ => GeStatus::InvalidArgument,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(status_of(&e), e.to_string())
    }
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}

failure_from!(LinalgError, EnergyError, GraphError, EnsembleError, SearchError);

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', "\\0")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> GeStatus {
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            GeStatus::Ok
        }
        Ok(Err(f)) => {
            set_last_error(&f.message);
            f.status
        }
        Err(payload) => {
            let what = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(&format!("internal panic: {what}"));
            GeStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure::new(GeStatus::NullPointer, format!("`{name}` is NULL")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `p` must be NULL or point to a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    non_null(p, name)?;
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(GeStatus::Utf8, format!("`{name}` is not UTF-8: {e}")))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::new(GeStatus::InvalidArgument, "output contains a NUL byte"))
}

/// # Safety
/// `out` must be NULL or valid for writes.
unsafe fn emit<T>(out: *mut T, value: T) -> Result<(), Failure> {
    non_null(out, "out")?;
    out.write(value);
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string(value).map_err(|e| Failure::new(GeStatus::InvalidArgument, e.to_string()))
}

/// Message describing the last failed call on this thread, or NULL if the
/// last call succeeded. The pointer stays valid until the next call into this
/// library on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn ge_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ge_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a `rows x cols` matrix from row-major `data`.
///
/// # Safety
/// `data` must point to `rows * cols` doubles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_matrix_new(
    rows: usize,
    cols: usize,
    data: *const f64,
    out: *mut *mut GeMatrix,
) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Failure::new(GeStatus::Dimension, "rows * cols overflows"))?;
        let values = if len == 0 {
            Vec::new()
        } else {
            non_null(data, "data")?;
            std::slice::from_raw_parts(data, len).to_vec()
        };
        let m = DenseMatrix::new(rows, cols, values)?;
        emit(out, Box::into_raw(Box::new(GeMatrix(m))))
    })
}

/// Parses the text matrix format: a `rows cols` header followed by rows of
/// whitespace-separated numbers; `#` starts a comment.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_matrix_parse(text: *const c_char, out: *mut *mut GeMatrix) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        let m = linalg::parse_matrix(read_str(text, "text")?)?;
        emit(out, Box::into_raw(Box::new(GeMatrix(m))))
    })
}

/// Frees a matrix. NULL is ignored.
///
/// # Safety
/// `m` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ge_matrix_free(m: *mut GeMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Writes the matrix dimensions.
///
/// # Safety
/// `m` must be a live handle; `rows` and `cols` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_matrix_shape(m: *const GeMatrix, rows: *mut usize, cols: *mut usize) -> GeStatus {
    guard(|| {
        non_null(m, "m")?;
        non_null(rows, "rows")?;
        non_null(cols, "cols")?;
        rows.write((*m).0.rows());
        cols.write((*m).0.cols());
        Ok(())
    })
}

/// Sum of the singular values.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_matrix_energy(m: *const GeMatrix, out: *mut f64) -> GeStatus {
    guard(|| {
        non_null(m, "m")?;
        emit(out, bounds::energy(&(*m).0)?)
    })
}

/// Singular values in descending order. Writes the count to `len`; if
/// `capacity` is smaller, returns `GE_STATUS_BUFFER_TOO_SMALL` without
/// touching `values`. Pass `values = NULL, capacity = 0` to query the count.
///
/// # Safety
/// `m` must be a live handle; `values` must hold `capacity` doubles;
/// `len` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_matrix_singular_values(
    m: *const GeMatrix,
    values: *mut f64,
    capacity: usize,
    len: *mut usize,
) -> GeStatus {
    guard(|| {
        non_null(m, "m")?;
        non_null(len, "len")?;
        let spectrum = bounds::spectrum(&(*m).0)?;
        let k = spectrum.len();
        len.write(k);
        if capacity < k {
            return Err(Failure::new(
                GeStatus::BufferTooSmall,
                format!("need {k} values, buffer holds {capacity}"),
            ));
        }
        non_null(values, "values")?;
        ptr::copy_nonoverlapping(spectrum.values.as_ptr(), values, k);
        Ok(())
    })
}

/// Evaluates every bound against the energy and writes the report as JSON.
/// `certified` (optional) receives whether no bound was violated by more
/// than `tolerance`.
///
/// # Safety
/// `m` must be a live handle; `json` must be valid for writes; `certified`
/// must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_matrix_certify_json(
    m: *const GeMatrix,
    tolerance: f64,
    json: *mut *mut c_char,
    certified: *mut bool,
) -> GeStatus {
    guard(|| {
        non_null(m, "m")?;
        non_null(json, "json")?;
        if !tolerance.is_finite() {
            return Err(Failure::new(GeStatus::InvalidArgument, "tolerance must be finite"));
        }
        let report = bounds::certify(&(*m).0, tolerance)?;
        let text = into_c_string(to_json(&report)?)?;
        if !certified.is_null() {
            certified.write(report.is_certified());
        }
        emit(json, text)
    })
}

/// Builds a graph on `order` vertices from `edge_count` pairs stored
/// consecutively in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` values (or be NULL when
/// `edge_count` is 0); `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_new(
    order: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut GeGraph,
) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        let mut g = Graph::empty(order)?;
        if edge_count > 0 {
            non_null(edges, "edges")?;
            let flat = std::slice::from_raw_parts(edges, 2 * edge_count);
            for pair in flat.chunks_exact(2) {
                g.add_edge(pair[0], pair[1])?;
            }
        }
        emit(out, Box::into_raw(Box::new(GeGraph(g))))
    })
}

/// Parses an edge list: the vertex count, then one `u v` pair per line.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_parse(text: *const c_char, out: *mut *mut GeGraph) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        let g = graphs::parse_edge_list(read_str(text, "text")?)?;
        emit(out, Box::into_raw(Box::new(GeGraph(g))))
    })
}

/// Builds a named family member such as `complete:5`, `cycle:8` or
/// `petersen`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_family(spec: *const c_char, out: *mut *mut GeGraph) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        let family: Family = read_str(spec, "spec")?.parse()?;
        emit(out, Box::into_raw(Box::new(GeGraph(family.build()?))))
    })
}

/// Samples `G(n, 1/2)` from `seed`; identical to the Monte Carlo trials.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_sample_gnp_half(n: usize, seed: u64, out: *mut *mut GeGraph) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        if n == 0 {
            return Err(GraphError::EmptyOrder.into());
        }
        emit(out, Box::into_raw(Box::new(GeGraph(ensemble::sample_gnp_half(n, seed)))))
    })
}

/// Frees a graph. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_free(g: *mut GeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Writes the vertex and edge counts.
///
/// # Safety
/// `g` must be a live handle; `order` and `size` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_counts(g: *const GeGraph, order: *mut usize, size: *mut usize) -> GeStatus {
    guard(|| {
        non_null(g, "g")?;
        non_null(order, "order")?;
        non_null(size, "size")?;
        order.write((*g).0.order());
        size.write((*g).0.size());
        Ok(())
    })
}

/// Sum of the absolute adjacency eigenvalues.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_energy(g: *const GeGraph, out: *mut f64) -> GeStatus {
    guard(|| {
        non_null(g, "g")?;
        emit(out, bounds::graph_energy(&(*g).0)?)
    })
}

/// Adjacency matrix as a new matrix handle.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_adjacency(g: *const GeGraph, out: *mut *mut GeMatrix) -> GeStatus {
    guard(|| {
        non_null(g, "g")?;
        emit(out, Box::into_raw(Box::new(GeMatrix((*g).0.adjacency()))))
    })
}

/// Edge list in the format accepted by [`ge_graph_parse`].
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_edge_list(g: *const GeGraph, out: *mut *mut c_char) -> GeStatus {
    guard(|| {
        non_null(g, "g")?;
        non_null(out, "out")?;
        emit(out, into_c_string(graphs::serialize_edge_list(&(*g).0))?)
    })
}

/// Spectral histogram of the eigenvalues scaled by `1/sqrt(n)`, as JSON with
/// `bin_edges`, `masses`, `reference_masses` and `l1_distance`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_histogram_json(g: *const GeGraph, bins: usize, out: *mut *mut c_char) -> GeStatus {
    guard(|| {
        non_null(g, "g")?;
        non_null(out, "out")?;
        let h = ensemble::spectral_histogram(&(*g).0, bins)?;
        let value = serde_json::json!({
            "bin_edges": h.bin_edges,
            "masses": h.masses,
            "reference_masses": h.reference_masses(),
            "l1_distance": h.l1_distance_to_semicircle(),
            "sample_count": h.sample_count,
        });
        emit(out, into_c_string(value.to_string())?)
    })
}

/// Monte Carlo statistics of `trials` samples of `G(n, 1/2)`, as JSON.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_montecarlo_json(n: usize, trials: usize, seed: u64, out: *mut *mut c_char) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        let stats = ensemble::montecarlo(n, trials, seed)?;
        emit(out, into_c_string(to_json(&stats)?)?)
    })
}

/// `integral of |x| times the semicircle density`, by Simpson quadrature.
#[no_mangle]
pub extern "C" fn ge_semicircle_energy_constant() -> f64 {
    ensemble::semicircle_energy_constant()
}

/// Searches for a maximum-energy graph on `n` vertices and writes the result
/// as JSON. `iterations = 0` enumerates every graph (n <= 6); otherwise a
/// seeded local search spends at most `iterations` energy evaluations.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ge_search_json(n: usize, seed: u64, iterations: u64, out: *mut *mut c_char) -> GeStatus {
    guard(|| {
        non_null(out, "out")?;
        let result = if iterations == 0 {
            extremal::exhaustive_max_energy(n)?
        } else {
            extremal::local_search_max_energy(n, seed, iterations)?
        };
        emit(out, into_c_string(to_json(&result)?)?)
    })
}
