//! C ABI for the corank library.
//!
//! Matrices and graphs cross the boundary as opaque handles. Every entry
//! point returns a [`CorankStatus`]; on failure the message is available
//! from [`corank_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use corank::experiments::sample_instance;
use corank::graph::{combinatorial_rank, graph_of, min_deficiency_witness, Graph};
use corank::matrix::io::{parse_matrix, write_matrix};
use corank::matrix::{exact_rank, DiagonalMode, SparseSymMatrix};
use corank::structure::predicted_rank_structural;
use corank::Error;

/// Opaque symmetric matrix.
pub struct CorankMatrix(SparseSymMatrix);

/// Opaque graph.
pub struct CorankGraph(Graph);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorankStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Capacity = 3,
    Parse = 4,
    Symmetry = 5,
    StructuralFailure = 6,
    Sampling = 7,
    Io = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorankDiagonal {
    Zero = 0,
    Nonzero = 1,
    Mixed = 2,
}

impl From<CorankDiagonal> for DiagonalMode {
    fn from(d: CorankDiagonal) -> Self {
        match d {
            CorankDiagonal::Zero => DiagonalMode::AllZero,
            CorankDiagonal::Nonzero => DiagonalMode::AllNonzero,
            CorankDiagonal::Mixed => DiagonalMode::Mixed,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CorankStatus {
    match e {
        Error::EmptyInput(_) | Error::InvalidParameter(_) => CorankStatus::InvalidParameter,
        Error::Capacity { .. } => CorankStatus::Capacity,
        Error::Parse { .. } => CorankStatus::Parse,
        Error::Symmetry { .. } => CorankStatus::Symmetry,
        Error::StructuralFailure { .. } => CorankStatus::StructuralFailure,
        Error::Sampling(_) => CorankStatus::Sampling,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => CorankStatus::Io,
    }
}

struct Failure(CorankStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CorankStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CorankStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CorankStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CorankStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn corank_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn corank_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a matrix in the text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn corank_matrix_parse(
    text: *const c_char,
    out: *mut *mut CorankMatrix,
) -> CorankStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(CorankStatus::Parse, format!("input is not UTF-8: {e}")))?;
        let q = parse_matrix(s)?;
        write_out(out, Box::into_raw(Box::new(CorankMatrix(q))))
    })
}

/// Samples `Q(W, p)` from a seed.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn corank_matrix_sample(
    n: usize,
    p: f64,
    diagonal: CorankDiagonal,
    seed: u64,
    out: *mut *mut CorankMatrix,
) -> CorankStatus {
    guard(|| {
        let inst = sample_instance(n, p, diagonal.into(), seed)?;
        write_out(out, Box::into_raw(Box::new(CorankMatrix(inst.q))))
    })
}

/// Releases a matrix. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn corank_matrix_free(m: *mut CorankMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live matrix handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn corank_matrix_dimension(
    m: *const CorankMatrix,
    out: *mut usize,
) -> CorankStatus {
    guard(|| write_out(out, deref(m, "matrix")?.0.n()))
}

/// Rank over the matrix's coefficient domain.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn corank_matrix_exact_rank(
    m: *const CorankMatrix,
    out: *mut usize,
) -> CorankStatus {
    guard(|| write_out(out, exact_rank(&deref(m, "matrix")?.0)))
}

/// Serializes a matrix to the text format. Free the result with
/// [`corank_string_free`].
///
/// # Safety
/// `m` must be a live matrix handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn corank_matrix_to_text(
    m: *const CorankMatrix,
    out: *mut *mut c_char,
) -> CorankStatus {
    guard(|| {
        let text = write_matrix(&deref(m, "matrix")?.0);
        let c = CString::new(text).expect("matrix text has no NUL");
        write_out(out, c.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn corank_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Nonzero pattern of a matrix.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn corank_matrix_graph(
    m: *const CorankMatrix,
    out: *mut *mut CorankGraph,
) -> CorankStatus {
    guard(|| {
        let g = graph_of(&deref(m, "matrix")?.0);
        write_out(out, Box::into_raw(Box::new(CorankGraph(g))))
    })
}

/// Builds a graph from `len` edges `(us[k], vs[k])`; `u == v` is a loop.
///
/// # Safety
/// `us` and `vs` must point to `len` readable values (or be null when
/// `len` is 0) and `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn corank_graph_from_edges(
    n: usize,
    us: *const usize,
    vs: *const usize,
    len: usize,
    out: *mut *mut CorankGraph,
) -> CorankStatus {
    guard(|| {
        let (us, vs) = if len == 0 {
            (&[][..], &[][..])
        } else {
            if us.is_null() || vs.is_null() {
                return Err(null("edge array"));
            }
            (
                std::slice::from_raw_parts(us, len),
                std::slice::from_raw_parts(vs, len),
            )
        };
        let g = Graph::from_edges(n, us.iter().copied().zip(vs.iter().copied()))?;
        write_out(out, Box::into_raw(Box::new(CorankGraph(g))))
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn corank_graph_free(g: *mut CorankGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Maximum matching size of the bipartite double cover.
///
/// # Safety
/// `g` must be a live graph handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn corank_graph_combinatorial_rank(
    g: *const CorankGraph,
    out: *mut usize,
) -> CorankStatus {
    guard(|| write_out(out, combinatorial_rank(&deref(g, "graph")?.0)))
}

/// Rank predicted by the obstruction decomposition with size bound `s`.
/// Returns `StructuralFailure` when the decomposition stalls.
///
/// # Safety
/// `g` must be a live graph handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn corank_graph_structural_rank(
    g: *const CorankGraph,
    s: usize,
    out: *mut usize,
) -> CorankStatus {
    guard(|| write_out(out, predicted_rank_structural(&deref(g, "graph")?.0, s)?))
}

/// Writes a minimum-deficiency witness set into `buf`. `out_len` receives
/// the set size; if it exceeds `cap` nothing is copied and
/// `BufferTooSmall` is returned.
///
/// # Safety
/// `g` must be a live graph handle, `buf` must have room for `cap` values
/// (or be null when `cap` is 0) and `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn corank_graph_witness(
    g: *const CorankGraph,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> CorankStatus {
    guard(|| {
        let w = min_deficiency_witness(&deref(g, "graph")?.0);
        write_out(out_len, w.len())?;
        if w.len() > cap {
            return Err(Failure(
                CorankStatus::BufferTooSmall,
                format!("witness has {} vertices, buffer holds {cap}", w.len()),
            ));
        }
        if !w.is_empty() {
            if buf.is_null() {
                return Err(null("buffer"));
            }
            ptr::copy_nonoverlapping(w.as_slice().as_ptr(), buf, w.len());
        }
        Ok(())
    })
}
