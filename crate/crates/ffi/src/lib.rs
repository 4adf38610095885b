//! C ABI for `dynmincut`.
//!
//! A `DmcHandle` is created with `dmc_new` or `dmc_from_edges` and must be
//! released with `dmc_free`. Every other call returns a `DmcStatus`; results
//! come back through out-pointers. Vertex ids are `size_t`, weights
//! `uint64_t`. Handles are not thread-safe.

#![allow(clippy::missing_safety_doc)]

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dynmincut::dynamic::{DynamicConfig, DynamicError, DynamicMinCut};
use dynmincut::graph::{DynGraph, GraphError};

/// Opaque dynamic minimum cut instance.
pub struct DmcHandle {
    inner: DynamicMinCut,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DmcStatus {
    Ok = 0,
    NullPointer = 1,
    /// Self-loop, zero weight or vertex out of range.
    InvalidArgument = 2,
    MissingEdge = 3,
    /// The output buffer is too short; the required length was written.
    BufferTooSmall = 4,
    /// A bug inside the library; the handle should be discarded.
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DmcConfig {
    pub gamma: usize,
    pub delta: f64,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DmcStats {
    pub insertions: u64,
    pub deletions: u64,
    pub separated_insertions: u64,
    pub flow_calls: u64,
    pub early_terminations: u64,
    pub exact_results: u64,
    pub full_recomputes: u64,
    pub uv_rebuilds: u64,
    pub cache_restores: u64,
}

impl From<DmcConfig> for DynamicConfig {
    fn from(c: DmcConfig) -> Self {
        DynamicConfig {
            gamma: c.gamma,
            delta: c.delta,
            seed: c.seed,
        }
    }
}

fn status_of(e: &GraphError) -> DmcStatus {
    match e {
        GraphError::MissingEdge(..) => DmcStatus::MissingEdge,
        _ => DmcStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> DmcStatus) -> DmcStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(DmcStatus::Internal)
}

unsafe fn config_or_default(config: *const DmcConfig) -> DynamicConfig {
    match config.as_ref() {
        Some(c) => (*c).into(),
        None => DynamicConfig::default(),
    }
}

unsafe fn finish(graph: DynGraph, config: *const DmcConfig, out: *mut *mut DmcHandle) -> DmcStatus {
    let inner = DynamicMinCut::with_config(graph, config_or_default(config));
    *out = Box::into_raw(Box::new(DmcHandle { inner }));
    DmcStatus::Ok
}

/// Default tuning: gamma 1, delta 2.
#[no_mangle]
pub extern "C" fn dmc_default_config() -> DmcConfig {
    let d = DynamicConfig::default();
    DmcConfig {
        gamma: d.gamma,
        delta: d.delta,
        seed: d.seed,
    }
}

/// Creates an instance over `n` isolated vertices. `config` may be null.
#[no_mangle]
pub unsafe extern "C" fn dmc_new(n: usize, config: *const DmcConfig, out: *mut *mut DmcHandle) -> DmcStatus {
    if out.is_null() {
        return DmcStatus::NullPointer;
    }
    guard(|| finish(DynGraph::new(n), config, out))
}

/// Creates an instance from `m` weighted edges given as three parallel
/// arrays. Repeated pairs accumulate weight. `config` may be null.
#[no_mangle]
pub unsafe extern "C" fn dmc_from_edges(
    n: usize,
    us: *const usize,
    vs: *const usize,
    ws: *const u64,
    m: usize,
    config: *const DmcConfig,
    out: *mut *mut DmcHandle,
) -> DmcStatus {
    if out.is_null() || (m > 0 && (us.is_null() || vs.is_null() || ws.is_null())) {
        return DmcStatus::NullPointer;
    }
    guard(|| {
        let mut g = DynGraph::new(n);
        for i in 0..m {
            if let Err(e) = g.insert_edge(*us.add(i), *vs.add(i), *ws.add(i)) {
                return status_of(&e);
            }
        }
        finish(g, config, out)
    })
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dmc_free(handle: *mut DmcHandle) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

unsafe fn with_handle(handle: *mut DmcHandle, f: impl FnOnce(&mut DynamicMinCut) -> DmcStatus) -> DmcStatus {
    match handle.as_mut() {
        Some(h) => guard(|| f(&mut h.inner)),
        None => DmcStatus::NullPointer,
    }
}

fn update_status(r: Result<(), DynamicError>) -> DmcStatus {
    match r {
        Ok(()) => DmcStatus::Ok,
        Err(DynamicError::Graph(e)) => status_of(&e),
    }
}

/// Inserts edge (u, v) with weight `w`, adding to an existing edge.
#[no_mangle]
pub unsafe extern "C" fn dmc_insert(handle: *mut DmcHandle, u: usize, v: usize, w: u64) -> DmcStatus {
    with_handle(handle, |d| update_status(d.insert(u, v, w)))
}

/// Deletes edge (u, v) entirely.
#[no_mangle]
pub unsafe extern "C" fn dmc_delete(handle: *mut DmcHandle, u: usize, v: usize) -> DmcStatus {
    with_handle(handle, |d| update_status(d.delete(u, v)))
}

/// Writes the current minimum cut weight.
#[no_mangle]
pub unsafe extern "C" fn dmc_lambda(handle: *const DmcHandle, out: *mut u64) -> DmcStatus {
    if out.is_null() {
        return DmcStatus::NullPointer;
    }
    with_handle(handle as *mut _, |d| {
        *out = d.current_lambda();
        DmcStatus::Ok
    })
}

unsafe fn write_side(side: Option<Vec<usize>>, buf: *mut usize, cap: usize, len: *mut usize) -> DmcStatus {
    let side = side.unwrap_or_default();
    *len = side.len();
    if side.len() > cap {
        return DmcStatus::BufferTooSmall;
    }
    if !side.is_empty() {
        if buf.is_null() {
            return DmcStatus::NullPointer;
        }
        ptr::copy_nonoverlapping(side.as_ptr(), buf, side.len());
    }
    DmcStatus::Ok
}

/// Writes one side of a minimum cut into `buf` (capacity `cap`) and its
/// length into `len`. Call with `cap = 0` to query the length. An empty side
/// means the graph has fewer than two vertices.
#[no_mangle]
pub unsafe extern "C" fn dmc_current_cut(
    handle: *const DmcHandle,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> DmcStatus {
    if len.is_null() {
        return DmcStatus::NullPointer;
    }
    with_handle(handle as *mut _, |d| write_side(d.current_cut(), buf, cap, len))
}

/// Like `dmc_current_cut` for the most balanced represented minimum cut.
#[no_mangle]
pub unsafe extern "C" fn dmc_most_balanced(
    handle: *const DmcHandle,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> DmcStatus {
    if len.is_null() {
        return DmcStatus::NullPointer;
    }
    with_handle(handle as *mut _, |d| write_side(d.current_most_balanced(), buf, cap, len))
}

#[no_mangle]
pub unsafe extern "C" fn dmc_stats(handle: *const DmcHandle, out: *mut DmcStats) -> DmcStatus {
    if out.is_null() {
        return DmcStatus::NullPointer;
    }
    with_handle(handle as *mut _, |d| {
        let s = d.stats();
        *out = DmcStats {
            insertions: s.insertions,
            deletions: s.deletions,
            separated_insertions: s.separated_insertions,
            flow_calls: s.flow_calls,
            early_terminations: s.early_terminations,
            exact_results: s.exact_results,
            full_recomputes: s.full_recomputes,
            uv_rebuilds: s.uv_rebuilds,
            cache_restores: s.cache_restores,
        };
        DmcStatus::Ok
    })
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn dmc_status_message(status: DmcStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        DmcStatus::Ok => b"ok\0",
        DmcStatus::NullPointer => b"null pointer argument\0",
        DmcStatus::InvalidArgument => b"invalid vertex, weight or self-loop\0",
        DmcStatus::MissingEdge => b"edge does not exist\0",
        DmcStatus::BufferTooSmall => b"output buffer too small\0",
        DmcStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}
