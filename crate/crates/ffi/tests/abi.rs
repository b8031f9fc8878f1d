use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use superkit_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn model(k1: i64, k2: i64, l1: &str, l2: &str) -> *mut SkModel {
    let mut m = ptr::null_mut();
    let status = unsafe { sk_model_new(k1, k2, c(l1).as_ptr(), c(l2).as_ptr(), &mut m) };
    assert_eq!(status, SkStatus::Ok);
    m
}

/// Takes ownership of a library string.
fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { sk_string_free(s) };
    out
}

fn last_error() -> String {
    let p = sk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn classification_and_berezinian() {
    let cases = [((1, 1), "i", "i", true), ((2, 0), "-1", "1", true), ((1, 2), "i", "i", false), ((1, 1), "1", "1", false)];
    for ((k1, k2), l1, l2, expected) in cases {
        let m = model(k1, k2, l1, l2);
        let mut maximal = !expected;
        assert_eq!(unsafe { sk_model_is_maximal(m, &mut maximal) }, SkStatus::Ok);
        assert_eq!(maximal, expected, "({k1},{k2}) λ=({l1},{l2})");
        if expected {
            let mut one = false;
            assert_eq!(unsafe { sk_model_berezinian_is_one(m, &mut one) }, SkStatus::Ok);
            assert!(one);
        }
        unsafe { sk_model_free(m) };
    }
}

#[test]
fn alpha_breaks_maximality() {
    let m = model(1, 1, "i", "i");
    let alpha = c(r#"{"terms":[[-1,0,"1","0"]]}"#);
    assert_eq!(unsafe { sk_model_set_alpha(m, alpha.as_ptr()) }, SkStatus::Ok);
    let mut maximal = true;
    assert_eq!(unsafe { sk_model_is_maximal(m, &mut maximal) }, SkStatus::Ok);
    assert!(!maximal);
    unsafe { sk_model_free(m) };
}

#[test]
fn cocycle_json_is_diagonal_for_split_models() {
    let m = model(2, 0, "i", "i");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sk_model_cocycle_json(m, &mut out) }, SkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["diagonal"], true);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    let uv = entries.iter().find(|e| e["from"] == "U" && e["to"] == "V").unwrap();
    let matrix = uv["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 2);
    assert_eq!(matrix[0][1]["c0"]["terms"], serde_json::json!([]));
    unsafe { sk_model_free(m) };
}

#[test]
fn consistency_and_goodfield_reports() {
    let m = model(1, 1, "i", "i");
    let doc = c(r#"{"charts":{"V":{
        "psi1":{"terms":[[1,0,"1","0"],[-1,0,"1","0"]]},
        "psi2":{"terms":[[1,0,"0","1"],[-1,0,"0","1"]]}}}}"#);
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { sk_field_from_json(doc.as_ptr(), &mut f) }, SkStatus::Ok);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sk_consistency_json(m, f, SkPolicy::Fix, &mut out) }, SkStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["consistent"], true);
    assert_eq!(report["model"], serde_json::json!([1, 1]));

    assert_eq!(unsafe { sk_goodfield_json(m, f, SkPolicy::Negate, &mut out) }, SkStatus::Ok);
    let good: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(good["policy"], "negate");
    unsafe {
        sk_field_free(f);
        sk_model_free(m);
    }
}

#[test]
fn paper_check_lists_every_entry() {
    for policy in [SkPolicy::Fix, SkPolicy::Negate] {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { sk_paper_check_json(policy, &mut out) }, SkStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["entries"].as_array().unwrap().len(), 10);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut m = ptr::null_mut();
    let (i, zero, junk) = (c("i"), c("0"), c("1+"));
    unsafe {
        assert_eq!(sk_model_new(1, 1, ptr::null(), i.as_ptr(), &mut m), SkStatus::NullArgument);
        assert!(last_error().contains("lambda1"));
        assert_eq!(sk_model_new(1, 1, junk.as_ptr(), i.as_ptr(), &mut m), SkStatus::Parse);
        assert!(m.is_null());

        let bad = [0xffu8, 0];
        assert_eq!(sk_model_new(1, 1, bad.as_ptr().cast(), i.as_ptr(), &mut m), SkStatus::InvalidUtf8);

        assert_eq!(sk_model_new(1, 1, zero.as_ptr(), i.as_ptr(), &mut m), SkStatus::Ok);
        let mut one = false;
        assert_eq!(sk_model_berezinian_is_one(m, &mut one), SkStatus::Precondition);
        assert!(last_error().contains("non-zero"));

        let empty = c(r#"{"charts":{"V":{}}}"#);
        let mut f = ptr::null_mut();
        assert_eq!(sk_field_from_json(empty.as_ptr(), &mut f), SkStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(sk_consistency_json(m, f, SkPolicy::Fix, &mut out), SkStatus::Precondition);
        assert!(out.is_null());
        assert_eq!(sk_model_is_maximal(ptr::null(), &mut one), SkStatus::NullArgument);
        assert_eq!(sk_model_is_maximal(m, ptr::null_mut()), SkStatus::NullArgument);

        assert_eq!(sk_model_is_maximal(m, &mut one), SkStatus::Ok);
        assert!(sk_last_error().is_null());

        sk_field_free(f);
        sk_model_free(m);
        sk_model_free(ptr::null_mut());
        sk_field_free(ptr::null_mut());
        sk_string_free(ptr::null_mut());
    }
}

/// Directory holding the shared library built alongside this test binary.
fn library_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let found = [deps, deps.parent().unwrap()]
        .into_iter()
        .find(|d| d.join("libsuperkit_ffi.so").exists() || d.join("libsuperkit_ffi.dylib").exists())
        .expect("shared library next to the test binary")
        .to_path_buf();
    found
}

#[test]
#[cfg(unix)]
fn generated_header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/superkit.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["sk_model_new", "sk_consistency_json", "sk_string_free", "SK_STATUS_PRECONDITION", "typedef struct SkModel SkModel"] {
        assert!(text.contains(name), "{name} missing from header");
    }

    let lib = library_dir();
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&lib)
        .arg("-lsuperkit_ffi")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap_or_else(|e| panic!("C compiler {cc:?} unavailable: {e}"));
    assert!(status.success());
    let run = Command::new(&exe).env("LD_LIBRARY_PATH", &lib).env("DYLD_LIBRARY_PATH", &lib).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
