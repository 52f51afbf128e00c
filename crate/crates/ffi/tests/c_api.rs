use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ppbackoff_ffi::*;

const TUPLES: &str = "ppbackoff-tuples v1\n\
t0.v0\t1\t2\tread\tarticle\tabout\t\t\t\t\tbudget\n\
t1.v0\t2\t4\tsent\tbill\tto\thouse\tof\t\t\tlords\n";

fn last_error() -> String {
    let p = ppb_last_error_message();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn train(text: &str) -> *mut PpbModel {
    let mut model = ptr::null_mut();
    let status = unsafe { ppb_model_train_from_tuples(text.as_ptr(), text.len(), true, &mut model) };
    assert_eq!(status, PpbStatus::Ok);
    assert!(!model.is_null());
    model
}

fn predict(model: *const PpbModel, kind: u8, words: &[&str]) -> (PpbStatus, PpbDecision) {
    let owned: Vec<CString> = words.iter().map(|w| CString::new(*w).unwrap()).collect();
    let ptrs: Vec<*const c_char> = owned.iter().map(|c| c.as_ptr()).collect();
    let mut out = PpbDecision { config: 0, level: 0, probability: 0.0 };
    let status = unsafe { ppb_predict(model, kind, ptrs.as_ptr(), &mut out) };
    (status, out)
}

#[test]
fn train_predict_free() {
    let model = train(TUPLES);
    let (status, d) = predict(model, 1, &["Read", "article", "about"]);
    assert_eq!(status, PpbStatus::Ok);
    assert_eq!(d, PpbDecision { config: 2, level: 0, probability: 1.0 });

    let (_, d) = predict(model, 2, &["sent", "bill", "to", "house", "of"]);
    assert_eq!((d.config, d.level), (4, 0));
    let (_, d) = predict(model, 2, &["x", "y", "z", "w", "u"]);
    assert_eq!(d.level, PPB_LEVEL_COMPETITIVE);
    let (_, d) = predict(model, 1, &["x", "y", "z"]);
    assert_eq!((d.config, d.level), (2, PPB_LEVEL_DEFAULT));
    unsafe { ppb_model_free(model) };
    unsafe { ppb_model_free(ptr::null_mut()) };
}

#[test]
fn save_and_load_roundtrip() {
    let dir = tempfile::TempDir::new().unwrap();
    let path = CString::new(dir.path().join("m.model").to_str().unwrap()).unwrap();
    let model = train(TUPLES);
    assert_eq!(unsafe { ppb_model_save(model, path.as_ptr()) }, PpbStatus::Ok);

    let mut loaded = ptr::null_mut();
    assert_eq!(unsafe { ppb_model_load(path.as_ptr(), &mut loaded) }, PpbStatus::Ok);
    let bytes = std::fs::read(dir.path().join("m.model")).unwrap();
    let mut from_bytes = ptr::null_mut();
    assert_eq!(unsafe { ppb_model_load_from_bytes(bytes.as_ptr(), bytes.len(), &mut from_bytes) }, PpbStatus::Ok);

    for m in [model, loaded, from_bytes] {
        assert_eq!(predict(m, 1, &["read", "article", "about"]).1.config, 2);
        unsafe { ppb_model_free(m) };
    }
}

#[test]
fn errors_carry_status_and_message() {
    let mut model = ptr::null_mut();
    let missing = CString::new("/no/such/model").unwrap();
    assert_eq!(unsafe { ppb_model_load(missing.as_ptr(), &mut model) }, PpbStatus::Io);
    assert!(last_error().contains("/no/such/model"));
    assert!(model.is_null());

    let junk = b"ppbackoff-model v9\n";
    assert_eq!(unsafe { ppb_model_load_from_bytes(junk.as_ptr(), junk.len(), &mut model) }, PpbStatus::Parse);
    assert!(last_error().contains("version"));

    assert_eq!(unsafe { ppb_model_load(ptr::null(), &mut model) }, PpbStatus::NullPointer);

    let m = train(TUPLES);
    assert_eq!(predict(m, 4, &["a"]).0, PpbStatus::InvalidArgument);
    let bad = [0xffu8, 0];
    let ptrs = [bad.as_ptr().cast::<c_char>(); 3];
    let mut out = PpbDecision { config: 0, level: 0, probability: 0.0 };
    assert_eq!(unsafe { ppb_predict(m, 1, ptrs.as_ptr(), &mut out) }, PpbStatus::InvalidUtf8);
    unsafe { ppb_model_free(m) };

    let upper = "ppbackoff-tuples v1\nt0\t1\t1\tRead\tarticle\tabout\t\t\t\t\t\n";
    assert_eq!(
        unsafe { ppb_model_train_from_tuples(upper.as_ptr(), upper.len(), true, &mut model) },
        PpbStatus::InvalidArgument
    );
    assert_eq!(unsafe { ppb_model_train_from_tuples(upper.as_ptr(), upper.len(), false, &mut model) }, PpbStatus::Ok);
    unsafe { ppb_model_free(model) };
    assert!(ppb_last_error_message().is_null());
}

#[test]
fn find_best_configuration_codes() {
    let mut out = 0u8;
    assert_eq!(unsafe { ppb_find_best_configuration(2, 2, 2, 4, 7, &mut out) }, PpbStatus::Ok);
    assert_eq!(out, 5);
    assert_eq!(unsafe { ppb_find_best_configuration(2, 2, 2, 7, 7, &mut out) }, PpbStatus::Ok);
    assert_eq!(out, 3);
    assert_eq!(unsafe { ppb_find_best_configuration(3, 1, 1, 0, 0, &mut out) }, PpbStatus::InvalidArgument);
}

#[test]
fn version_and_header() {
    let v = unsafe { CStr::from_ptr(ppb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/ppbackoff.h")).unwrap();
    for name in [
        "ppb_model_load",
        "ppb_predict",
        "ppb_last_error_message",
        "PPB_STATUS_PANIC",
        "typedef struct PpbModel PpbModel",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compile the C smoke program against the generated header and the static
/// library, then run it.
#[test]
fn c_program_links_and_runs() {
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.parent().unwrap().join("libppbackoff_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile::TempDir::new().unwrap();
    let exe = dir.path().join("smoke");
    let manifest = env!("CARGO_MANIFEST_DIR");
    let status = std::process::Command::new("cc")
        .arg(format!("{manifest}/tests/smoke.c"))
        .arg(format!("-I{manifest}/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("run cc");
    assert!(status.success());
    let out = std::process::Command::new(&exe).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2\tlevel=0\t1.000\n");
}
