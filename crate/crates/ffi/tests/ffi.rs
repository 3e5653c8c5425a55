use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hyperchaos_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(hc_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn space(n: u32) -> *mut HcSpace {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hc_space_new(n, &mut s) }, HcStatus::Ok);
    s
}

#[test]
fn space_lifecycle_and_errors() {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { hc_space_new(1, &mut s) },
        HcStatus::InvalidArgument
    );
    assert!(s.is_null());
    assert!(last_error().contains("invalid argument"));
    assert_eq!(
        unsafe { hc_space_new(3, ptr::null_mut()) },
        HcStatus::NullPointer
    );

    let s = space(5);
    let mut rho = 0.0;
    assert_eq!(unsafe { hc_space_rho(s, &mut rho) }, HcStatus::Ok);
    assert_eq!(rho, 2.0);
    assert_eq!(last_error(), "");
    assert_eq!(
        unsafe { hc_space_rho(ptr::null(), &mut rho) },
        HcStatus::NullPointer
    );
    unsafe {
        hc_space_free(s);
        hc_space_free(ptr::null_mut());
    }
}

#[test]
fn error_message_is_copied_and_truncated() {
    let mut s = ptr::null_mut();
    unsafe { hc_space_new(0, &mut s) };
    let full = unsafe { hc_copy_last_error(ptr::null_mut(), 0) };
    assert_eq!(full, last_error().len());
    let mut buf = [0x7f as std::ffi::c_char; 8];
    let n = unsafe { hc_copy_last_error(buf.as_mut_ptr(), buf.len()) };
    assert_eq!(n, full);
    let got = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
    assert_eq!(got, &last_error()[..7]);
}

#[test]
fn spherical_values_and_branch_errors() {
    let s = space(3);
    let radii = [0.0, 0.5, 1.0];
    let (mut re, mut im) = ([0.0; 3], [0.0; 3]);
    let st = unsafe {
        hc_spherical(
            s,
            0.0,
            1.0,
            radii.as_ptr(),
            3,
            re.as_mut_ptr(),
            im.as_mut_ptr(),
        )
    };
    assert_eq!(st, HcStatus::Ok);
    // φ_{iρ} = 1
    for v in re {
        assert!((v - 1.0).abs() < 1e-15);
    }
    let bad = [1.0, 0.5];
    let st = unsafe {
        hc_spherical(
            s,
            1.0,
            0.0,
            bad.as_ptr(),
            2,
            re.as_mut_ptr(),
            im.as_mut_ptr(),
        )
    };
    assert_eq!(st, HcStatus::InvalidArgument);
    let st = unsafe {
        hc_spherical(
            s,
            1.0,
            0.0,
            ptr::null(),
            2,
            re.as_mut_ptr(),
            im.as_mut_ptr(),
        )
    };
    assert_eq!(st, HcStatus::NullPointer);
    unsafe { hc_space_free(s) };
}

#[test]
fn sections() {
    let s = space(3);
    let mut kind = HcSectionKind::Point;
    let mut y = 0.0;
    assert_eq!(
        unsafe { hc_region_section(s, 4.0, 1.0, &mut kind, &mut y) },
        HcStatus::Ok
    );
    assert_eq!(kind, HcSectionKind::Interval);
    assert!((y - 0.5).abs() < 1e-12);
    assert_eq!(
        unsafe { hc_region_section(s, 4.0, 0.5, &mut kind, &mut y) },
        HcStatus::Ok
    );
    assert_eq!(kind, HcSectionKind::Empty);
    assert!(y.is_nan());
    assert_eq!(
        unsafe { hc_region_section(s, 1.0, 0.5, &mut kind, &mut y) },
        HcStatus::InvalidArgument
    );
    unsafe { hc_space_free(s) };
}

#[test]
fn evolve_matches_library() {
    let s = space(3);
    let h = 1.0 / 64.0;
    let values: Vec<f64> = (0..=640).map(|k| (-(k as f64 * h).powi(2)).exp()).collect();
    let mut re = vec![0.0; values.len()];
    let mut im = vec![0.0; values.len()];
    let st = unsafe {
        hc_evolve(
            s,
            2.0,
            0.0,
            1.0,
            h,
            values.as_ptr(),
            values.len(),
            re.as_mut_ptr(),
            im.as_mut_ptr(),
        )
    };
    assert_eq!(st, HcStatus::Ok, "{}", last_error());
    // value at the origin from the mpmath heat-kernel fixture of the core crate
    assert!((re[0] - 0.040189204321026885).abs() < 1e-12);
    let st = unsafe {
        hc_evolve(
            s,
            2.0,
            0.0,
            -1.0,
            h,
            values.as_ptr(),
            values.len(),
            re.as_mut_ptr(),
            im.as_mut_ptr(),
        )
    };
    assert_eq!(st, HcStatus::InvalidArgument);
    // a profile that has not decayed by the end of the grid
    let flat = vec![1.0; 65];
    let st = unsafe {
        hc_evolve(
            s,
            2.0,
            0.0,
            1.0,
            h,
            flat.as_ptr(),
            flat.len(),
            re.as_mut_ptr(),
            im.as_mut_ptr(),
        )
    };
    assert_eq!(st, HcStatus::TruncationDominated, "{}", last_error());
    unsafe { hc_space_free(s) };
}

#[test]
fn certificate_handle() {
    let s = space(3);
    let mut cert = ptr::null_mut();
    assert_eq!(
        unsafe { hc_certify(s, 4.0, 1.0, 7, &mut cert) },
        HcStatus::Ok
    );
    let mut v = HcVerdict::NoEvidence;
    assert_eq!(
        unsafe { hc_certificate_verdict(cert, &mut v) },
        HcStatus::Ok
    );
    assert_eq!(v, HcVerdict::ChaoticEvidence);
    let mut json = ptr::null();
    assert_eq!(
        unsafe { hc_certificate_json(cert, &mut json) },
        HcStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
    let doc: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(doc["verdict"], "chaotic-evidence");
    assert_eq!(doc["options"]["seed"], 7);
    unsafe { hc_certificate_free(cert) };

    let mut cert = ptr::null_mut();
    assert_eq!(
        unsafe { hc_certify(s, 4.0, 0.5, 7, &mut cert) },
        HcStatus::Ok
    );
    assert_eq!(
        unsafe { hc_certificate_verdict(cert, &mut v) },
        HcStatus::Ok
    );
    assert_eq!(v, HcVerdict::NoEvidence);
    unsafe {
        hc_certificate_free(cert);
        hc_space_free(s);
    }
    assert_eq!(
        unsafe { hc_certificate_verdict(ptr::null(), &mut v) },
        HcStatus::NullPointer
    );
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(hc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_against_the_header() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/hyperchaos.h");
    assert!(header.exists());
    // the static library sits next to the test binary's deps directory
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libhyperchaos_ffi.a");
    let lib = if lib.exists() {
        lib
    } else {
        exe.parent().unwrap().join("libhyperchaos_ffi.a")
    };
    assert!(
        lib.exists(),
        "static library not found near {}",
        profile_dir.display()
    );
    let out = tempfile_path("hc_smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}

fn tempfile_path(stem: &str) -> PathBuf {
    std::env::temp_dir().join(format!("{stem}_{}", std::process::id()))
}
