//! C interface to `hyperchaos`.
//!
//! Every function returns an [`HcStatus`]; results go through out-pointers.
//! Objects are opaque handles released with their `_free` function. On
//! failure the message is kept per thread and read with
//! [`hc_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperchaos::chaos::{
    certify_with, imaginary_axis_section, AxisSection, CertifyOptions, ChaosCertificate,
    ParabolicRegion, Target, Verdict,
};
use hyperchaos::semigroup::{evolve, SemigroupConfig};
use hyperchaos::space::{make_space, HyperbolicSpace, RadialFunction, RadialGrid};
use hyperchaos::spherical::spherical_values;
use hyperchaos::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Grid = 3,
    Branch = 4,
    Pole = 5,
    TruncationDominated = 6,
    NonIntegrable = 7,
    Solve = 8,
    /// A panic was caught at the boundary; the handle arguments are unchanged.
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcVerdict {
    ChaoticEvidence = 0,
    SubspaceChaoticEvidence = 1,
    NoEvidence = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcSectionKind {
    Empty = 0,
    Point = 1,
    Interval = 2,
}

/// Opaque handle to a hyperbolic space H^n.
pub struct HcSpace(HyperbolicSpace);

/// Opaque handle to a chaos certificate.
pub struct HcCertificate {
    cert: ChaosCertificate,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HcStatus {
    match e {
        Error::InvalidArgument(_) => HcStatus::InvalidArgument,
        Error::Grid(_) => HcStatus::Grid,
        Error::Branch(_) => HcStatus::Branch,
        Error::Pole(_) => HcStatus::Pole,
        Error::TruncationDominated { .. } => HcStatus::TruncationDominated,
        Error::NonIntegrable { .. } => HcStatus::NonIntegrable,
        Error::Solve(_) => HcStatus::Solve,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, converting errors and panics to a status and recording the
/// message.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HcStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            HcStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("panic: {msg}"));
            HcStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize, what: &'static str) -> Result<&'a mut [T], Fail> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn space_ref<'a>(space: *const HcSpace) -> Result<&'a HyperbolicSpace, Fail> {
    space.as_ref().map(|s| &s.0).ok_or(Fail::Null("space"))
}

/// Message of the last failed call on this thread, or "" after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates H^n, n >= 2.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn hc_space_new(n: u32, out: *mut *mut HcSpace) -> HcStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let s = make_space(n as usize)?;
        *out = Box::into_raw(Box::new(HcSpace(s)));
        Ok(())
    })
}

/// # Safety
/// `space` must come from [`hc_space_new`] and not be freed twice. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn hc_space_free(space: *mut HcSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// ρ = (n - 1)/2.
///
/// # Safety
/// `space` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_space_rho(space: *const HcSpace, out: *mut f64) -> HcStatus {
    guard(|| {
        let s = space_ref(space)?;
        let out = out.as_mut().ok_or(Fail::Null("out"))?;
        *out = s.rho();
        Ok(())
    })
}

/// φ_λ at `len` ascending radii, λ = lambda_re + i lambda_im.
///
/// # Safety
/// `radii`, `out_re` and `out_im` must each hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn hc_spherical(
    space: *const HcSpace,
    lambda_re: f64,
    lambda_im: f64,
    radii: *const f64,
    len: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HcStatus {
    guard(|| {
        let s = space_ref(space)?;
        let r = slice(radii, len, "radii")?;
        let re = slice_mut(out_re, len, "out_re")?;
        let im = slice_mut(out_im, len, "out_im")?;
        let v = spherical_values(s, Complex64::new(lambda_re, lambda_im), r)?;
        for (k, z) in v.iter().enumerate() {
            re[k] = z.re;
            im[k] = z.im;
        }
        Ok(())
    })
}

/// Imaginary-axis section of the eigenvalue region of Δ - c on L^p.
/// `out_half_length` receives Y for an interval, 0 for a point and NaN when
/// empty.
///
/// # Safety
/// `space` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_region_section(
    space: *const HcSpace,
    p: f64,
    c: f64,
    out_kind: *mut HcSectionKind,
    out_half_length: *mut f64,
) -> HcStatus {
    guard(|| {
        let s = space_ref(space)?;
        let kind = out_kind.as_mut().ok_or(Fail::Null("out_kind"))?;
        let half = out_half_length
            .as_mut()
            .ok_or(Fail::Null("out_half_length"))?;
        let region = ParabolicRegion::for_space(s, p, c)?;
        (*kind, *half) = match imaginary_axis_section(&region) {
            AxisSection::Empty => (HcSectionKind::Empty, f64::NAN),
            AxisSection::Point => (HcSectionKind::Point, 0.0),
            AxisSection::Interval { half_length } => (HcSectionKind::Interval, half_length),
        };
        Ok(())
    })
}

/// T(t)f for a real radial profile sampled at r_k = k h, k < len, with
/// T(t) = e^{-t(Δ - c)} on L^p. Results are written on the same grid.
///
/// # Safety
/// `values`, `out_re` and `out_im` must each hold `len` doubles.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn hc_evolve(
    space: *const HcSpace,
    p: f64,
    c: f64,
    t: f64,
    h: f64,
    values: *const f64,
    len: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HcStatus {
    guard(|| {
        let s = space_ref(space)?;
        let v = slice(values, len, "values")?;
        let re = slice_mut(out_re, len, "out_re")?;
        let im = slice_mut(out_im, len, "out_im")?;
        if len < 2 {
            return Err(Error::InvalidArgument("need at least two samples".into()).into());
        }
        let grid = RadialGrid::uniform(h, h * (len - 1) as f64)?;
        if grid.len() != len {
            return Err(Error::Grid(format!("{len} samples do not fit spacing {h}")).into());
        }
        let f = RadialFunction::new(grid, v.iter().map(|&x| Complex64::new(x, 0.0)).collect())?;
        let cfg = SemigroupConfig::new(*s, p, c, t)?;
        let g = evolve(&cfg, &f)?;
        for (k, z) in g.values().iter().enumerate() {
            re[k] = z.re;
            im[k] = z.im;
        }
        Ok(())
    })
}

/// Runs the chaos certificate with default options and targets.
///
/// # Safety
/// `space` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_certify(
    space: *const HcSpace,
    p: f64,
    c: f64,
    seed: u64,
    out: *mut *mut HcCertificate,
) -> HcStatus {
    guard(|| {
        let s = space_ref(space)?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let options = CertifyOptions::with_seed(seed);
        let cert = certify_with(s, p, c, &Target::defaults(), &options)?;
        let json = serde_json::to_string_pretty(&cert)
            .map_err(|e| Error::InvalidArgument(format!("serialization failed: {e}")))?;
        let json = CString::new(json).expect("JSON has no interior NUL");
        *out = Box::into_raw(Box::new(HcCertificate { cert, json }));
        Ok(())
    })
}

/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_verdict(
    cert: *const HcCertificate,
    out: *mut HcVerdict,
) -> HcStatus {
    guard(|| {
        let c = cert.as_ref().ok_or(Fail::Null("cert"))?;
        let out = out.as_mut().ok_or(Fail::Null("out"))?;
        *out = match c.cert.verdict {
            Verdict::ChaoticEvidence => HcVerdict::ChaoticEvidence,
            Verdict::SubspaceChaoticEvidence => HcVerdict::SubspaceChaoticEvidence,
            Verdict::NoEvidence => HcVerdict::NoEvidence,
        };
        Ok(())
    })
}

/// Borrows the certificate as JSON. The string lives as long as the handle.
///
/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_json(
    cert: *const HcCertificate,
    out: *mut *const c_char,
) -> HcStatus {
    guard(|| {
        let c = cert.as_ref().ok_or(Fail::Null("cert"))?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        *out = c.json.as_ptr();
        Ok(())
    })
}

/// # Safety
/// `cert` must come from [`hc_certify`] and not be freed twice. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_free(cert: *mut HcCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Copies the last error message into `buf` (NUL-terminated, truncated to
/// `cap`) and returns the full message length.
///
/// # Safety
/// `buf` must hold `cap` bytes, or be null with `cap` = 0.
#[no_mangle]
pub unsafe extern "C" fn hc_copy_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}
