//! C ABI over `knotlab`.
//!
//! Conventions:
//! * every function returns a [`KnotlabStatus`]; results go through out
//!   pointers, which are left untouched on failure;
//! * contours and metric models are opaque handles created by `*_new` and
//!   released by the matching `*_free` (passing NULL to `*_free` is a no-op);
//! * the message for the most recent failure on the calling thread is
//!   available from [`knotlab_last_error_message`].

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use knotlab::contour::Contour;
use knotlab::hankel::hankel_on_surface;
use knotlab::metric::{build_model, residual_curve, MetricModel, WeightsPolicy};
use knotlab::riemann::SurfacePoint;
use knotlab::shoot::{verify_with, ShootConfig, Verdict};
use knotlab::spectrum::{allowed_ell, gamma_for, is_admissible, Rational};
use knotlab::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Numerical = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotlabVerdict {
    Admissible = 0,
    Rejected = 1,
    Indeterminate = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotlabWeights {
    Biorthogonal = 0,
    Unit = 1,
}

/// Opaque contour handle.
pub struct KnotlabContour(Contour);

/// Opaque metric model handle.
pub struct KnotlabMetric(MetricModel);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KnotlabContourSample {
    pub s: f64,
    pub rho: f64,
    /// Unwrapped angle.
    pub theta: f64,
    pub x: f64,
    pub y: f64,
    pub velocity_re: f64,
    pub velocity_im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KnotlabHankel {
    pub h1_re: f64,
    pub h1_im: f64,
    pub h2_re: f64,
    pub h2_im: f64,
    pub dh1_re: f64,
    pub dh1_im: f64,
    pub dh2_re: f64,
    pub dh2_im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnotlabShootResult {
    pub ratio: f64,
    pub wronskian_drift: f64,
    pub coefficient_ratio_re: f64,
    pub coefficient_ratio_im: f64,
    pub verdict: KnotlabVerdict,
    /// Whether the exact rule predicts admissibility.
    pub predicted: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(err: Error) -> KnotlabStatus {
    set_error(err.to_string());
    if err.is_numerical() {
        KnotlabStatus::Numerical
    } else {
        KnotlabStatus::InvalidInput
    }
}

fn guard(f: impl FnOnce() -> KnotlabStatus) -> KnotlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            KnotlabStatus::Panic
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)));
            return KnotlabStatus::NullPointer;
        })+
    };
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len - 1` bytes).  Returns the full message length.
///
/// # Safety
/// `buf` must be NULL or valid for writes of `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn knotlab_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: caller guarantees `len` writable bytes at `buf`
            unsafe {
                ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn knotlab_contour_new(
    winding: u32,
    s0: f64,
    eps: f64,
    r0: f64,
    out: *mut *mut KnotlabContour,
) -> KnotlabStatus {
    guard(|| {
        non_null!(out);
        match Contour::new(winding, s0, eps, r0) {
            Ok(c) => {
                unsafe { *out = Box::into_raw(Box::new(KnotlabContour(c))) };
                KnotlabStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `contour` must be NULL or a handle from [`knotlab_contour_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn knotlab_contour_free(contour: *mut KnotlabContour) {
    if !contour.is_null() {
        drop(unsafe { Box::from_raw(contour) });
    }
}

/// # Safety
/// `contour` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn knotlab_contour_sample(
    contour: *const KnotlabContour,
    s: f64,
    out: *mut KnotlabContourSample,
) -> KnotlabStatus {
    guard(|| {
        non_null!(contour, out);
        if !s.is_finite() {
            set_error("s must be finite");
            return KnotlabStatus::InvalidInput;
        }
        let c = unsafe { &(*contour).0 };
        let p = c.sample(s);
        unsafe {
            *out = KnotlabContourSample {
                s,
                rho: p.point.rho(),
                theta: p.point.theta(),
                x: p.z.re,
                y: p.z.im,
                velocity_re: p.velocity.re,
                velocity_im: p.velocity.im,
            }
        };
        KnotlabStatus::Ok
    })
}

/// Hankel functions and derivatives at `rho·e^{iθ}` on the surface.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn knotlab_hankel(
    nu: f64,
    rho: f64,
    theta: f64,
    out: *mut KnotlabHankel,
) -> KnotlabStatus {
    guard(|| {
        non_null!(out);
        let v = match SurfacePoint::new(rho, theta).and_then(|z| hankel_on_surface(nu, &z)) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        unsafe {
            *out = KnotlabHankel {
                h1_re: v.h1.re,
                h1_im: v.h1.im,
                h2_re: v.h2.re,
                h2_im: v.h2.im,
                dh1_re: v.dh1.re,
                dh1_im: v.dh1.im,
                dh2_re: v.dh2.re,
                dh2_im: v.dh2.im,
            }
        };
        KnotlabStatus::Ok
    })
}

/// Exact admissibility of `ν = nu_num/nu_den` for winding `N`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn knotlab_is_admissible(
    nu_num: i64,
    nu_den: i64,
    winding: i64,
    out: *mut bool,
) -> KnotlabStatus {
    guard(|| {
        non_null!(out);
        if nu_den == 0 {
            set_error("zero denominator");
            return KnotlabStatus::InvalidInput;
        }
        unsafe { *out = is_admissible(Rational::new(nu_num, nu_den), winding) };
        KnotlabStatus::Ok
    })
}

fn write_rational(r: Rational, num: *mut i64, den: *mut i64) {
    unsafe {
        *num = *r.numer();
        *den = *r.denom();
    }
}

/// `ℓ = (M − N)/(2N)` in lowest terms.
///
/// # Safety
/// `num` and `den` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn knotlab_allowed_ell(
    winding: i64,
    label: i64,
    num: *mut i64,
    den: *mut i64,
) -> KnotlabStatus {
    guard(|| {
        non_null!(num, den);
        match allowed_ell(winding, label) {
            Ok(r) => {
                write_rational(r, num, den);
                KnotlabStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Coupling `γ` supporting label `M` in dimension `D`, partial wave `m`.
///
/// # Safety
/// `num` and `den` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn knotlab_gamma(
    dimension: i64,
    partial_wave: i64,
    winding: i64,
    label: i64,
    num: *mut i64,
    den: *mut i64,
) -> KnotlabStatus {
    guard(|| {
        non_null!(num, den);
        match gamma_for(dimension, partial_wave, winding, label) {
            Ok(r) => {
                write_rational(r, num, den);
                KnotlabStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Shooting check along `contour` (its winding number is used).
///
/// # Safety
/// `contour` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn knotlab_shoot(
    contour: *const KnotlabContour,
    nu: f64,
    kappa: f64,
    tol: f64,
    out: *mut KnotlabShootResult,
) -> KnotlabStatus {
    guard(|| {
        non_null!(contour, out);
        let c = unsafe { &(*contour).0 };
        let cfg = ShootConfig {
            tol,
            ..ShootConfig::default()
        };
        let r = match verify_with(nu, c.winding(), kappa, c, &cfg) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        unsafe {
            *out = KnotlabShootResult {
                ratio: r.ratio,
                wronskian_drift: r.wronskian_drift,
                coefficient_ratio_re: r.coefficient_ratio.re,
                coefficient_ratio_im: r.coefficient_ratio.im,
                verdict: match r.verdict {
                    Verdict::Admissible => KnotlabVerdict::Admissible,
                    Verdict::Rejected => KnotlabVerdict::Rejected,
                    Verdict::Indeterminate => KnotlabVerdict::Indeterminate,
                },
                predicted: r.predicted,
            }
        };
        KnotlabStatus::Ok
    })
}

/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn knotlab_metric_new(
    dim: usize,
    seed: u64,
    skew: f64,
    out: *mut *mut KnotlabMetric,
) -> KnotlabStatus {
    guard(|| {
        non_null!(out);
        match build_model(dim, seed, skew) {
            Ok(m) => {
                unsafe { *out = Box::into_raw(Box::new(KnotlabMetric(m))) };
                KnotlabStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `metric` must be NULL or a handle from [`knotlab_metric_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn knotlab_metric_free(metric: *mut KnotlabMetric) {
    if !metric.is_null() {
        drop(unsafe { Box::from_raw(metric) });
    }
}

/// # Safety
/// `metric` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn knotlab_metric_dim(
    metric: *const KnotlabMetric,
    out: *mut usize,
) -> KnotlabStatus {
    guard(|| {
        non_null!(metric, out);
        unsafe { *out = (*metric).0.dim };
        KnotlabStatus::Ok
    })
}

/// Residuals of the truncated metric for `M = 1..dim`, written to
/// `residuals[0..dim]`.
///
/// # Safety
/// `metric` must be a live handle and `residuals` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn knotlab_metric_residual_curve(
    metric: *const KnotlabMetric,
    weights: KnotlabWeights,
    residuals: *mut f64,
    len: usize,
) -> KnotlabStatus {
    guard(|| {
        non_null!(metric, residuals);
        let model = unsafe { &(*metric).0 };
        if len < model.dim {
            set_error(format!("buffer holds {len} values, need {}", model.dim));
            return KnotlabStatus::BufferTooSmall;
        }
        let policy = match weights {
            KnotlabWeights::Biorthogonal => WeightsPolicy::Biorthogonal,
            KnotlabWeights::Unit => WeightsPolicy::Unit,
        };
        let curve = match residual_curve(model, &policy) {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        let out = unsafe { std::slice::from_raw_parts_mut(residuals, model.dim) };
        for (slot, p) in out.iter_mut().zip(&curve) {
            *slot = p.residual;
        }
        KnotlabStatus::Ok
    })
}
