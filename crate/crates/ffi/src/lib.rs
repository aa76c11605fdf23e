//! C ABI over the planar distance oracle.
//!
//! Graphs and oracles are opaque handles created by `po_*` constructors and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PoStatus`]; on failure a message is available from
//! [`po_last_error_message`] until the next call on the same thread.

use planar_oracle::harness::{generate, Kind};
use planar_oracle::oracle::{build_oracle, load_oracle, save_oracle, Oracle};
use planar_oracle::planar::{read_graph, PlanarGraph};
use planar_oracle::{Error, Weight};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    Io = 3,
    Parse = 4,
    Format = 5,
    BuildFailed = 6,
    OutOfRange = 7,
    Panic = 8,
}

/// A path weight: primary length, then tiebreak. Unreachable is both
/// fields set to `UINT64_MAX`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoWeight {
    pub len: u64,
    pub tie: u64,
}

/// Opaque graph handle.
pub struct PoGraph {
    graph: Arc<PlanarGraph>,
}

/// Opaque oracle handle.
pub struct PoOracle {
    oracle: Oracle,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PoStatus {
    match e {
        Error::Io(_) => PoStatus::Io,
        Error::Parse { .. } | Error::Json(_) => PoStatus::Parse,
        Error::Format(_) => PoStatus::Format,
        Error::Invalid(_) => PoStatus::InvalidArgument,
        _ => PoStatus::BuildFailed,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (PoStatus, String)>) -> PoStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PoStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            set_error(format!("panic: {}", msg.unwrap_or_default()));
            PoStatus::Panic
        }
    }
}

fn lib(e: Error) -> (PoStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (PoStatus, String) {
    (PoStatus::NullArgument, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (PoStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (PoStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), (PoStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next `po_*` call on the same thread.
#[no_mangle]
pub extern "C" fn po_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn po_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Reads a graph file (text or JSON format).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_graph_read(path: *const c_char, out: *mut *mut PoGraph) -> PoStatus {
    guard(|| {
        let p = str_arg(path, "path")?;
        let text = std::fs::read_to_string(p).map_err(|e| lib(e.into()))?;
        let g = read_graph(&text).map_err(lib)?;
        put(out, PoGraph { graph: Arc::new(g) })
    })
}

/// Parses a graph from text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_graph_parse(text: *const c_char, out: *mut *mut PoGraph) -> PoStatus {
    guard(|| {
        let g = read_graph(str_arg(text, "text")?).map_err(lib)?;
        put(out, PoGraph { graph: Arc::new(g) })
    })
}

/// Generates a normalized, perturbed grid instance.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_graph_generate_grid(rows: usize, cols: usize, seed: u64, out: *mut *mut PoGraph) -> PoStatus {
    guard(|| {
        let inst = generate(Kind::Grid { rows, cols }, seed).map_err(lib)?;
        put(out, PoGraph { graph: Arc::new(inst.graph) })
    })
}

/// Generates a normalized, perturbed random triangulation.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_graph_generate_triangulation(points: usize, hull: usize, seed: u64, out: *mut *mut PoGraph) -> PoStatus {
    guard(|| {
        let inst = generate(Kind::RandomTriangulation { points, hull }, seed).map_err(lib)?;
        put(out, PoGraph { graph: Arc::new(inst.graph) })
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn po_graph_vertex_count(g: *const PoGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.n())
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn po_graph_free(g: *mut PoGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Builds an oracle with regions of about `r` faces. The graph handle stays
/// owned by the caller.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_oracle_build(g: *const PoGraph, r: usize, out: *mut *mut PoOracle) -> PoStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if r == 0 {
            return Err((PoStatus::InvalidArgument, "r must be positive".into()));
        }
        let o = build_oracle(g.graph.clone(), r).map_err(lib)?;
        put(out, PoOracle { oracle: o })
    })
}

/// Writes the oracle to directory `dir`.
///
/// # Safety
/// `o` must be a live oracle handle and `dir` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn po_oracle_save(o: *const PoOracle, dir: *const c_char) -> PoStatus {
    guard(|| {
        let o = o.as_ref().ok_or_else(|| null("oracle"))?;
        save_oracle(&o.oracle, Path::new(str_arg(dir, "dir")?)).map_err(lib)
    })
}

/// Loads an oracle written by [`po_oracle_save`] or the CLI.
///
/// # Safety
/// `dir` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_oracle_load(dir: *const c_char, out: *mut *mut PoOracle) -> PoStatus {
    guard(|| {
        let o = load_oracle(Path::new(str_arg(dir, "dir")?)).map_err(lib)?;
        put(out, PoOracle { oracle: o })
    })
}

/// Number of vertices of the oracle's graph, or 0 for a null handle.
///
/// # Safety
/// `o` must be null or a live oracle handle.
#[no_mangle]
pub unsafe extern "C" fn po_oracle_vertex_count(o: *const PoOracle) -> usize {
    o.as_ref().map_or(0, |o| o.oracle.graph().n())
}

/// Exact distance from `u` to `v`.
///
/// # Safety
/// `o` must be a live oracle handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_oracle_query(o: *const PoOracle, u: u32, v: u32, out: *mut PoWeight) -> PoStatus {
    guard(|| {
        let o = o.as_ref().ok_or_else(|| null("oracle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let n = o.oracle.graph().n();
        if u as usize >= n || v as usize >= n {
            return Err((PoStatus::OutOfRange, format!("vertex out of range (n = {n})")));
        }
        let Weight { len, tie } = o.oracle.query(u, v);
        *out = PoWeight { len, tie };
        Ok(())
    })
}

/// # Safety
/// `o` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn po_oracle_free(o: *mut PoOracle) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}
