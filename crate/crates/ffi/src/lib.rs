//! C ABI over `tilelab`.
//!
//! Every fallible function returns a [`TlStatus`] and writes its result
//! through an out-pointer. On failure the out-pointer is untouched and
//! [`tl_last_error`] describes the error on the calling thread. Handles and
//! strings returned by the library are released with the matching
//! `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::json;
use tilelab::graph::{parse_any, to_graph6};
use tilelab::random::sample_gnp;
use tilelab::tiling::{perfect_tiling_with, PerfectOptions, TilingStatus};
use tilelab::{Error, Graph, Pattern, Seed};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// Opaque simple graph.
pub struct TlGraph(Graph);

/// Opaque template graph with its density profile.
pub struct TlPattern(Pattern);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(TlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::ParseLine { .. } | Error::Graph6 { .. } | Error::Json(_) | Error::Csv(_) => TlStatus::Parse,
            Error::Io(_) => TlStatus::Io,
            _ => TlStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(TlStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, storing its value in `out` on success.
fn guard<T>(out: *mut T, f: impl FnOnce() -> Result<T, Failure>) -> TlStatus {
    if out.is_null() {
        set_error("output pointer is null".into());
        return TlStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: `out` is non-null and the caller promises it is writable.
            unsafe { out.write(v) };
            TlStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TlStatus::Internal
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(TlStatus::InvalidArgument, format!("{what} is not UTF-8: {e}")))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|e| Failure(TlStatus::Internal, e.to_string()))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Graph on `n` vertices from `edge_count` pairs stored flat in `edges`
/// (`2 * edge_count` entries). `edges` may be null when `edge_count` is 0.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable `u32`s; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_graph_from_edges(
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut TlGraph,
) -> TlStatus {
    guard(out, || {
        let flat: &[u32] = match edge_count {
            0 => &[],
            _ if edges.is_null() => return Err(null("edges")),
            _ => std::slice::from_raw_parts(edges, 2 * edge_count),
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0] as usize, p[1] as usize));
        Ok(boxed(TlGraph(Graph::from_edge_list(n, pairs)?)))
    })
}

/// Parses an edge list (vertex count, then one `u v` pair per line) or a
/// graph6 string.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_graph_parse(text: *const c_char, out: *mut *mut TlGraph) -> TlStatus {
    guard(out, || Ok(boxed(TlGraph(parse_any(c_str(text, "text")?)?))))
}

/// # Safety
/// `graph` must come from this library and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn tl_graph_free(graph: *mut TlGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_graph_vertex_count(graph: *const TlGraph, out: *mut usize) -> TlStatus {
    guard(out, || Ok(borrow(graph, "graph")?.0.n()))
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_graph_edge_count(graph: *const TlGraph, out: *mut usize) -> TlStatus {
    guard(out, || Ok(borrow(graph, "graph")?.0.edge_count()))
}

/// Zero for the empty graph on no vertices.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_graph_min_degree(graph: *const TlGraph, out: *mut usize) -> TlStatus {
    guard(out, || Ok(borrow(graph, "graph")?.0.min_degree()))
}

/// graph6 encoding, released with [`tl_string_free`].
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_graph_to_graph6(graph: *const TlGraph, out: *mut *mut c_char) -> TlStatus {
    guard(out, || to_c_string(to_graph6(&borrow(graph, "graph")?.0)))
}

/// Samples `G(n, p)`; equal seeds give equal graphs.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_sample_gnp(n: usize, p: f64, seed: u64, out: *mut *mut TlGraph) -> TlStatus {
    guard(out, || Ok(boxed(TlGraph(sample_gnp(n, p, Seed(seed))?))))
}

/// Template from a spec such as `k3`, `c4`, `p3`, `k13` or `file:PATH`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_pattern_from_spec(spec: *const c_char, out: *mut *mut TlPattern) -> TlStatus {
    guard(out, || Ok(boxed(TlPattern(Pattern::from_spec(c_str(spec, "spec")?)?))))
}

/// # Safety
/// `pattern` must come from this library and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn tl_pattern_free(pattern: *mut TlPattern) {
    if !pattern.is_null() {
        drop(Box::from_raw(pattern));
    }
}

/// Density profile as JSON, released with [`tl_string_free`].
///
/// # Safety
/// `pattern` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_classify_json(pattern: *const TlPattern, out: *mut *mut c_char) -> TlStatus {
    guard(out, || {
        let p = &borrow(pattern, "pattern")?.0;
        let v = json!({ "pattern": p.name(), "profile": p.profile() });
        to_c_string(v.to_string())
    })
}

/// Perfect tiling search with a node budget. The JSON object has `status`
/// (`found`, `none_exists` or `unknown`), `nodes_explored` and, when found,
/// `copies` as vertex lists. Released with [`tl_string_free`].
///
/// # Safety
/// `graph` and `pattern` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_tile_json(
    graph: *const TlGraph,
    pattern: *const TlPattern,
    budget: u64,
    seed: u64,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(out, || {
        let g = &borrow(graph, "graph")?.0;
        let h = &borrow(pattern, "pattern")?.0;
        let opts = PerfectOptions { seed: Seed(seed), ..PerfectOptions::exact(budget) };
        let r = perfect_tiling_with(g, h, &opts);
        let mut v = json!({ "status": r.status.label(), "nodes_explored": r.nodes_explored });
        if let TilingStatus::Found(t) = &r.status {
            v["copies"] = json!(t.vertex_lists());
        }
        to_c_string(v.to_string())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
