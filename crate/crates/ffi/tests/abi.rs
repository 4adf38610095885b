use std::ffi::CStr;
use std::ptr;

use dynmincut_ffi::*;

unsafe fn cycle(n: usize) -> *mut DmcHandle {
    let us: Vec<usize> = (0..n).collect();
    let vs: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let ws = vec![1u64; n];
    let mut h = ptr::null_mut();
    let st = dmc_from_edges(n, us.as_ptr(), vs.as_ptr(), ws.as_ptr(), n, ptr::null(), &mut h);
    assert_eq!(st, DmcStatus::Ok);
    h
}

unsafe fn lambda(h: *const DmcHandle) -> u64 {
    let mut l = 0;
    assert_eq!(dmc_lambda(h, &mut l), DmcStatus::Ok);
    l
}

#[test]
fn lifecycle() {
    unsafe {
        let h = cycle(6);
        assert_eq!(lambda(h), 2);
        assert_eq!(dmc_delete(h, 0, 1), DmcStatus::Ok);
        assert_eq!(lambda(h), 1);
        assert_eq!(dmc_insert(h, 0, 1, 1), DmcStatus::Ok);
        assert_eq!(lambda(h), 2);
        let mut s = DmcStats::default();
        assert_eq!(dmc_stats(h, &mut s), DmcStatus::Ok);
        assert_eq!((s.insertions, s.deletions, s.cache_restores), (1, 1, 1));
        dmc_free(h);
    }
}

#[test]
fn cut_buffers() {
    unsafe {
        let h = cycle(8);
        let mut len = 0;
        assert_eq!(dmc_most_balanced(h, ptr::null_mut(), 0, &mut len), DmcStatus::BufferTooSmall);
        assert_eq!(len, 4);
        let mut buf = vec![0usize; len];
        assert_eq!(dmc_most_balanced(h, buf.as_mut_ptr(), buf.len(), &mut len), DmcStatus::Ok);
        assert_eq!(len, 4);
        let mut cut = vec![0usize; 8];
        assert_eq!(dmc_current_cut(h, cut.as_mut_ptr(), 8, &mut len), DmcStatus::Ok);
        assert!(len > 0 && len < 8);
        dmc_free(h);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(dmc_new(3, ptr::null(), &mut h), DmcStatus::Ok);
        assert_eq!(lambda(h), 0);
        assert_eq!(dmc_insert(h, 0, 0, 1), DmcStatus::InvalidArgument);
        assert_eq!(dmc_insert(h, 0, 7, 1), DmcStatus::InvalidArgument);
        assert_eq!(dmc_insert(h, 0, 1, 0), DmcStatus::InvalidArgument);
        assert_eq!(dmc_delete(h, 0, 1), DmcStatus::MissingEdge);
        assert_eq!(dmc_insert(ptr::null_mut(), 0, 1, 1), DmcStatus::NullPointer);
        assert_eq!(dmc_lambda(h, ptr::null_mut()), DmcStatus::NullPointer);
        assert_eq!(dmc_new(3, ptr::null(), ptr::null_mut()), DmcStatus::NullPointer);
        let msg = CStr::from_ptr(dmc_status_message(DmcStatus::MissingEdge));
        assert_eq!(msg.to_str().unwrap(), "edge does not exist");
        dmc_free(h);
        dmc_free(ptr::null_mut());
    }
}

#[test]
fn custom_config() {
    unsafe {
        let mut cfg = dmc_default_config();
        assert_eq!((cfg.gamma, cfg.delta), (1, 2.0));
        cfg.delta = 0.0;
        let (us, vs, ws) = ([0usize, 1, 2, 3], [1usize, 2, 3, 0], [1u64; 4]);
        let mut h = ptr::null_mut();
        assert_eq!(dmc_from_edges(4, us.as_ptr(), vs.as_ptr(), ws.as_ptr(), 4, &cfg, &mut h), DmcStatus::Ok);
        dmc_delete(h, 0, 1);
        dmc_insert(h, 0, 1, 1);
        let mut s = DmcStats::default();
        dmc_stats(h, &mut s);
        assert_eq!((s.cache_restores, s.full_recomputes), (0, 2));
        dmc_free(h);
    }
}

#[test]
fn header_declares_every_symbol() {
    let header = include_str!("../include/dynmincut.h");
    for sym in [
        "dmc_new",
        "dmc_from_edges",
        "dmc_free",
        "dmc_insert",
        "dmc_delete",
        "dmc_lambda",
        "dmc_current_cut",
        "dmc_most_balanced",
        "dmc_stats",
        "dmc_status_message",
        "dmc_default_config",
        "DMC_STATUS_BUFFER_TOO_SMALL",
        "typedef struct DmcHandle DmcHandle",
    ] {
        assert!(header.contains(sym), "missing {sym}");
    }
}
