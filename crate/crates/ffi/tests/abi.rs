use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use tilelab_ffi::*;

fn last_error() -> String {
    let p = tl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    tl_string_free(p);
    s
}

#[test]
fn graph_round_trip_and_counts() {
    unsafe {
        let edges = [0u32, 1, 1, 2, 2, 0, 2, 3];
        let mut g = ptr::null_mut();
        assert_eq!(tl_graph_from_edges(4, edges.as_ptr(), 4, &mut g), TlStatus::Ok);
        let (mut n, mut m, mut d) = (0, 0, 0);
        assert_eq!(tl_graph_vertex_count(g, &mut n), TlStatus::Ok);
        assert_eq!(tl_graph_edge_count(g, &mut m), TlStatus::Ok);
        assert_eq!(tl_graph_min_degree(g, &mut d), TlStatus::Ok);
        assert_eq!((n, m, d), (4, 4, 1));

        let mut g6 = ptr::null_mut();
        assert_eq!(tl_graph_to_graph6(g, &mut g6), TlStatus::Ok);
        let text = CString::new(take_string(g6)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(tl_graph_parse(text.as_ptr(), &mut back), TlStatus::Ok);
        assert_eq!(tl_graph_edge_count(back, &mut m), TlStatus::Ok);
        assert_eq!(m, 4);
        tl_graph_free(back);
        tl_graph_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let loops = [1u32, 1];
        assert_eq!(tl_graph_from_edges(3, loops.as_ptr(), 1, &mut g), TlStatus::InvalidArgument);
        assert!(g.is_null());
        assert!(last_error().contains("self-loop"));

        assert_eq!(tl_graph_from_edges(3, ptr::null(), 2, &mut g), TlStatus::NullPointer);
        assert_eq!(tl_graph_from_edges(3, ptr::null(), 0, ptr::null_mut()), TlStatus::NullPointer);

        let bad = CString::new("3\n0 x\n").unwrap();
        assert_eq!(tl_graph_parse(bad.as_ptr(), &mut g), TlStatus::Parse);

        let mut n = 0;
        assert_eq!(tl_graph_vertex_count(ptr::null(), &mut n), TlStatus::NullPointer);
        assert_eq!(tl_sample_gnp(5, 1.5, 0, &mut g), TlStatus::InvalidArgument);

        let mut h = ptr::null_mut();
        let spec = CString::new("nonsense").unwrap();
        assert_eq!(tl_pattern_from_spec(spec.as_ptr(), &mut h), TlStatus::InvalidArgument);
        let spec = CString::new("file:/nonexistent/h.txt").unwrap();
        assert_eq!(tl_pattern_from_spec(spec.as_ptr(), &mut h), TlStatus::Io);

        tl_graph_free(ptr::null_mut());
        tl_pattern_free(ptr::null_mut());
        tl_string_free(ptr::null_mut());
    }
}

#[test]
fn sampling_is_deterministic() {
    unsafe {
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(tl_sample_gnp(30, 0.3, 42, &mut a), TlStatus::Ok);
        assert_eq!(tl_sample_gnp(30, 0.3, 42, &mut b), TlStatus::Ok);
        let (mut sa, mut sb) = (ptr::null_mut(), ptr::null_mut());
        tl_graph_to_graph6(a, &mut sa);
        tl_graph_to_graph6(b, &mut sb);
        assert_eq!(take_string(sa), take_string(sb));
        tl_graph_free(a);
        tl_graph_free(b);
    }
}

#[test]
fn classify_and_tile_json() {
    unsafe {
        let mut h = ptr::null_mut();
        let spec = CString::new("k3").unwrap();
        assert_eq!(tl_pattern_from_spec(spec.as_ptr(), &mut h), TlStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(tl_classify_json(h, &mut s), TlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["profile"]["d_star"], "3/2");
        assert_eq!(v["profile"]["category"], "StrictlyBalanced");

        // Two disjoint triangles.
        let edges = [0u32, 1, 1, 2, 0, 2, 3, 4, 4, 5, 3, 5];
        let mut g = ptr::null_mut();
        tl_graph_from_edges(6, edges.as_ptr(), 6, &mut g);
        assert_eq!(tl_tile_json(g, h, 1000, 0, &mut s), TlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["status"], "found");
        assert_eq!(v["copies"].as_array().unwrap().len(), 2);

        let mut c6 = ptr::null_mut();
        let ring = [0u32, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 0];
        tl_graph_from_edges(6, ring.as_ptr(), 6, &mut c6);
        assert_eq!(tl_tile_json(c6, h, 1000, 0, &mut s), TlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["status"], "none_exists");
        assert!(v.get("copies").is_none());

        assert_eq!(tl_tile_json(ptr::null(), h, 10, 0, &mut s), TlStatus::NullPointer);
        tl_graph_free(g);
        tl_graph_free(c6);
        tl_pattern_free(h);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/tilelab.h")).unwrap();
    for name in [
        "tl_last_error",
        "tl_graph_from_edges",
        "tl_graph_parse",
        "tl_graph_free",
        "tl_graph_vertex_count",
        "tl_graph_edge_count",
        "tl_graph_min_degree",
        "tl_graph_to_graph6",
        "tl_sample_gnp",
        "tl_pattern_from_spec",
        "tl_pattern_free",
        "tl_classify_json",
        "tl_tile_json",
        "tl_string_free",
        "typedef struct TlGraph TlGraph",
        "TL_STATUS_NULL_POINTER = 1",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a C client against the static library.
#[test]
fn c_client_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libtilelab_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe = tmp.join("ffi_client");
    let status = Command::new("cc")
        .arg(manifest.join("tests/client.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "n=9 m=9 status=found");
}
