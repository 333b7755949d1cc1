use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use circfib_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn call(f: impl FnOnce(*mut c_char, usize) -> CfStatus) -> Result<String, CfStatus> {
    let mut buf = vec![0 as c_char; 64];
    match f(buf.as_mut_ptr(), buf.len()) {
        CfStatus::Ok => Ok(unsafe { CStr::from_ptr(buf.as_ptr()) }
            .to_str()
            .unwrap()
            .to_owned()),
        s => Err(s),
    }
}

#[test]
fn word_arithmetic() {
    let u = c("100000");
    let sum = call(|o, n| unsafe { cf_add(u.as_ptr(), u.as_ptr(), o, n) }).unwrap();
    let prod = call(|o, n| unsafe { cf_mul(2, u.as_ptr(), o, n) }).unwrap();
    assert_eq!(sum, prod);
    let inv = c(&call(|o, n| unsafe { cf_neg(u.as_ptr(), o, n) }).unwrap());
    let zero = call(|o, n| unsafe { cf_add(u.as_ptr(), inv.as_ptr(), o, n) }).unwrap();
    assert_eq!(zero, "010101");
    let mut ord = 0u64;
    assert_eq!(
        unsafe { cf_element_order(u.as_ptr(), &mut ord) },
        CfStatus::Ok
    );
    let back = call(|o, n| unsafe { cf_mul(ord as i64, u.as_ptr(), o, n) }).unwrap();
    assert_eq!(back, "010101");
}

#[test]
fn input_errors() {
    let odd = c("010");
    assert_eq!(
        call(|o, n| unsafe { cf_reduce(odd.as_ptr(), o, n) }),
        Err(CfStatus::InvalidInput)
    );
    let zero = c("0000");
    assert_eq!(
        call(|o, n| unsafe { cf_reduce(zero.as_ptr(), o, n) }),
        Err(CfStatus::InvalidInput)
    );
    assert_eq!(
        call(|o, n| unsafe { cf_reduce(ptr::null(), o, n) }),
        Err(CfStatus::NullPointer)
    );
    let (a, b) = (c("0101"), c("010101"));
    assert_eq!(
        call(|o, n| unsafe { cf_add(a.as_ptr(), b.as_ptr(), o, n) }),
        Err(CfStatus::InvalidInput)
    );
}

#[test]
fn group_handle() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cf_group_new(4, 10, &mut g) }, CfStatus::Ok);
    let mut order = 0usize;
    unsafe { cf_group_order(g, &mut order) };
    assert_eq!(order, 45);
    let mut id = 0usize;
    unsafe { cf_group_identity(g, &mut id) };
    for i in 0..order {
        let w = c(&call(|o, n| unsafe { cf_group_element(g, i, o, n) }).unwrap());
        let mut j = usize::MAX;
        assert_eq!(
            unsafe { cf_group_index_of(g, w.as_ptr(), &mut j) },
            CfStatus::Ok
        );
        assert_eq!(i, j);
        let (mut m, mut s) = (0usize, 0usize);
        unsafe { cf_group_neg(g, i, &mut m) };
        unsafe { cf_group_add(g, i, m, &mut s) };
        assert_eq!(s, id);
    }
    let other = c("10101010");
    let mut j = 0usize;
    assert_eq!(
        unsafe { cf_group_index_of(g, other.as_ptr(), &mut j) },
        CfStatus::Ok
    );
    assert_eq!(j, id);
    assert_eq!(
        call(|o, n| unsafe { cf_group_element(g, order, o, n) }),
        Err(CfStatus::InvalidInput)
    );
    let (mut e1, mut e2) = (0u64, 0u64);
    unsafe { cf_group_invariant_factors(g, &mut e1, &mut e2) };
    assert_eq!((e1, e2), (15, 3));
    unsafe { cf_group_free(g) };
    unsafe { cf_group_free(ptr::null_mut()) };
}

#[test]
fn group_bound_is_a_resource_error() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cf_group_new(11, 10, &mut g) }, CfStatus::Resource);
    assert!(g.is_null());
    assert_eq!(
        unsafe { cf_group_order(ptr::null(), &mut 0) },
        CfStatus::NullPointer
    );
}

#[test]
fn wheel_counts() {
    let want = [1u64, 5, 16, 45, 121, 320, 841, 2205];
    for (ell, &w) in (1..).zip(&want) {
        let mut n = 0u64;
        assert_eq!(unsafe { cf_wheel_tree_count(ell, &mut n) }, CfStatus::Ok);
        assert_eq!(n, w);
    }
}

#[test]
fn version_matches_the_package() {
    let v = unsafe { CStr::from_ptr(cf_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    // test builds only produce the rlib, so build the static library too
    let profile = match profile_dir.file_name().unwrap().to_str().unwrap() {
        "debug" => "dev".to_string(),
        other => other.to_string(),
    };
    let built = Command::new(env!("CARGO"))
        .args([
            "build",
            "--quiet",
            "--lib",
            "-p",
            "circfib-ffi",
            "--profile",
            &profile,
            "--target-dir",
        ])
        .arg(profile_dir.parent().unwrap())
        .current_dir(&manifest)
        .status()
        .unwrap();
    assert!(built.success());
    let lib = profile_dir.join("libcircfib_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
