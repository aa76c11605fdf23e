use planar_oracle_ffi::*;
use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

fn last_error() -> String {
    let p = po_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn build_query_save_load() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(po_graph_generate_triangulation(80, 8, 5, &mut g), PoStatus::Ok);
        let n = po_graph_vertex_count(g);
        assert!(n > 80);
        let mut o = ptr::null_mut();
        assert_eq!(po_oracle_build(g, 40, &mut o), PoStatus::Ok);
        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("orc").to_str().unwrap()).unwrap();
        assert_eq!(po_oracle_save(o, path.as_ptr()), PoStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(po_oracle_load(path.as_ptr(), &mut back), PoStatus::Ok);
        let truth = planar_oracle::trees::dijkstra(&planar_oracle::harness::generate(
            planar_oracle::harness::Kind::RandomTriangulation { points: 80, hull: 8 }, 5).unwrap().graph, 3).0;
        for v in 0..n as u32 {
            let (mut a, mut b) = (PoWeight { len: 1, tie: 1 }, PoWeight { len: 2, tie: 2 });
            assert_eq!(po_oracle_query(o, 3, v, &mut a), PoStatus::Ok);
            assert_eq!(po_oracle_query(back, 3, v, &mut b), PoStatus::Ok);
            assert_eq!(a, b);
            assert_eq!((a.len, a.tie), (truth[v as usize].len, truth[v as usize].tie));
        }
        po_oracle_free(back);
        po_oracle_free(o);
        po_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(po_graph_read(ptr::null(), &mut g), PoStatus::NullArgument);
        assert!(last_error().contains("null"));
        let missing = CString::new("/nonexistent/graph.pg").unwrap();
        assert_eq!(po_graph_read(missing.as_ptr(), &mut g), PoStatus::Io);
        let junk = CString::new("pg 2 1 -\narc 0 0 7 1\n").unwrap();
        assert_eq!(po_graph_parse(junk.as_ptr(), &mut g), PoStatus::Parse);
        assert!(!last_error().is_empty());
        assert_eq!(po_graph_generate_grid(1, 1, 0, &mut g), PoStatus::InvalidArgument);
        assert!(g.is_null());
        let mut o = ptr::null_mut();
        assert_eq!(po_oracle_build(ptr::null(), 10, &mut o), PoStatus::NullArgument);
        let mut w = PoWeight { len: 0, tie: 0 };
        assert_eq!(po_oracle_query(ptr::null(), 0, 0, &mut w), PoStatus::NullArgument);
        po_graph_free(ptr::null_mut());
        po_oracle_free(ptr::null_mut());
        assert_eq!(po_graph_vertex_count(ptr::null()), 0);
        assert!(!CStr::from_ptr(po_version()).to_str().unwrap().is_empty());
    }
}

#[test]
fn header_declares_every_export() {
    let h = include_str!("../include/planar_oracle.h");
    for f in [
        "po_last_error_message", "po_version", "po_graph_read", "po_graph_parse", "po_graph_generate_grid",
        "po_graph_generate_triangulation", "po_graph_vertex_count", "po_graph_free", "po_oracle_build",
        "po_oracle_save", "po_oracle_load", "po_oracle_vertex_count", "po_oracle_query", "po_oracle_free",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("typedef struct PoOracle PoOracle;"));
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libplanar_oracle_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let manifest = env!("CARGO_MANIFEST_DIR");
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let cc = Command::new("cc")
        .args([&format!("{manifest}/tests/smoke.c"), "-I", &format!("{manifest}/include")])
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler on PATH");
    assert!(cc.success());
    let out = Command::new(&bin).arg(tmp.path().join("orc")).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(tmp.path().join("orc/weights.bin").exists());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.split_whitespace().count(), 2);
}
