//! C interface to `muntz-core`.
//!
//! Every fallible function returns a [`MuntzStatus`] and writes results
//! through out-pointers. On failure the message is available from
//! [`muntz_last_error`] on the same thread. Handles are opaque and must be
//! released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};
use muntz_core::{
    constructive, gram, muntz, primes, weierstrass, Density, Error, ExponentSequence,
    GeneralizedPolynomial, Grid,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuntzStatus {
    Ok = 0,
    InvalidInput = 1,
    NonFinite = 2,
    Certificate = 3,
    IllConditioned = 4,
    NullPointer = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuntzDensity {
    Dense = 0,
    NotDense = 1,
    Inconclusive = 2,
}

/// Summary of a Weierstrass error certificate.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MuntzCertificate {
    pub n: u32,
    pub analytic_bound: f64,
    pub grid_estimate: f64,
    pub violations: size_t,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MuntzEulerReport {
    pub n: u64,
    pub harmonic: f64,
    pub product_plus: f64,
    pub product_minus: f64,
    pub basel: f64,
    pub inequality_holds: bool,
}

/// Opaque generalized polynomial.
pub struct MuntzPolynomial(GeneralizedPolynomial);

/// Opaque constructive approximant `Q_n`.
pub struct MuntzApproximant(constructive::MuntzApproximant);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> MuntzStatus {
    match e {
        Error::InvalidInput(_) => MuntzStatus::InvalidInput,
        Error::NonFinite { .. } => MuntzStatus::NonFinite,
        Error::Certificate(_) => MuntzStatus::Certificate,
        Error::IllConditioned { .. } => MuntzStatus::IllConditioned,
    }
}

enum Failure {
    Core(Error),
    Null(&'static str),
    Buffer { needed: usize, capacity: usize },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, records any failure and maps it to a status code.
fn guard<F>(f: F) -> MuntzStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            MuntzStatus::Ok
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("null pointer passed for {what}"));
            MuntzStatus::NullPointer
        }
        Ok(Err(Failure::Buffer { needed, capacity })) => {
            set_last_error(&format!("buffer holds {capacity} values, {needed} needed"));
            MuntzStatus::BufferTooSmall
        }
        Err(_) => {
            set_last_error("internal panic");
            MuntzStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: size_t, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn string<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Core(Error::InvalidInput(format!("{what} is not valid UTF-8"))))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn muntz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn muntz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a polynomial on `[0, 1]` from JSON `[{"c": .., "lambda": ..}, ..]`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_handle` writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_polynomial_from_json(
    json: *const c_char,
    out_handle: *mut *mut MuntzPolynomial,
) -> MuntzStatus {
    guard(|| {
        let dst = out(out_handle, "out_handle")?;
        *dst = ptr::null_mut();
        let p = GeneralizedPolynomial::from_json(string(json, "json")?)?;
        *dst = Box::into_raw(Box::new(MuntzPolynomial(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from [`muntz_polynomial_from_json`]; `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_polynomial_eval(
    p: *const MuntzPolynomial,
    x: f64,
    out_value: *mut f64,
) -> MuntzStatus {
    guard(|| {
        let p = p.as_ref().ok_or(Failure::Null("polynomial"))?;
        *out(out_value, "out_value")? = p.0.eval(x)?;
        Ok(())
    })
}

/// # Safety
/// `p` must come from [`muntz_polynomial_from_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn muntz_polynomial_free(p: *mut MuntzPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Builds `Q_n` from the first `n` of `len` exponents.
///
/// # Safety
/// `lambdas` must point to `len` doubles; `out_handle` writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_approximant_new(
    q: f64,
    lambdas: *const f64,
    len: size_t,
    n: size_t,
    out_handle: *mut *mut MuntzApproximant,
) -> MuntzStatus {
    guard(|| {
        let dst = out(out_handle, "out_handle")?;
        *dst = ptr::null_mut();
        let a = constructive::qn_coefficients(q, slice(lambdas, len, "lambdas")?, n)?;
        *dst = Box::into_raw(Box::new(MuntzApproximant(a)));
        Ok(())
    })
}

/// # Safety
/// `a` must come from [`muntz_approximant_new`]; `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_approximant_eval(
    a: *const MuntzApproximant,
    x: f64,
    out_value: *mut f64,
) -> MuntzStatus {
    guard(|| {
        let a = a.as_ref().ok_or(Failure::Null("approximant"))?;
        *out(out_value, "out_value")? = a.0.eval(x)?;
        Ok(())
    })
}

/// `∏ |1 − q/λ_i|`, or NaN for a null handle.
///
/// # Safety
/// `a` must come from [`muntz_approximant_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn muntz_approximant_bound(a: *const MuntzApproximant) -> f64 {
    a.as_ref().map_or(f64::NAN, |a| a.0.bound)
}

/// Copies the coefficients `a_{n,i}` into `buf`. `out_len` always receives
/// the count; a short buffer yields `BufferTooSmall` and nothing is copied.
///
/// # Safety
/// `buf` must have room for `capacity` doubles; `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_approximant_coefficients(
    a: *const MuntzApproximant,
    buf: *mut f64,
    capacity: size_t,
    out_len: *mut size_t,
) -> MuntzStatus {
    guard(|| {
        let a = a.as_ref().ok_or(Failure::Null("approximant"))?;
        copy_out(&a.0.coefficients, buf, capacity, out_len)
    })
}

/// # Safety
/// `a` must come from [`muntz_approximant_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn muntz_approximant_free(a: *mut MuntzApproximant) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

unsafe fn copy_out<T: Copy>(
    values: &[T],
    buf: *mut T,
    capacity: size_t,
    out_len: *mut size_t,
) -> Result<(), Failure> {
    *out(out_len, "out_len")? = values.len();
    if values.len() > capacity {
        return Err(Failure::Buffer {
            needed: values.len(),
            capacity,
        });
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(Failure::Null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// `p_n(t)` for `t ∈ [0, 1]`.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_sqrt_iterate_eval(
    n: u32,
    t: f64,
    out_value: *mut f64,
) -> MuntzStatus {
    guard(|| {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidInput(format!("t = {t} lies outside [0, 1]")).into());
        }
        *out(out_value, "out_value")? = weierstrass::sqrt_iterate(n).eval(t);
        Ok(())
    })
}

/// Certificate on a uniform grid of `grid_points` points in `[0, 1]`.
/// Violations are reported in the struct and as status `Certificate`.
///
/// # Safety
/// `out_cert` must be writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_sqrt_certificate(
    n: u32,
    grid_points: size_t,
    out_cert: *mut MuntzCertificate,
) -> MuntzStatus {
    guard(|| {
        let dst = out(out_cert, "out_cert")?;
        let grid = Grid::unit(grid_points)?;
        let cert =
            weierstrass::sqrt_certificate_with_slack(n, &grid, weierstrass::default_slack(n))?;
        *dst = MuntzCertificate {
            n: cert.n,
            analytic_bound: cert.analytic_bound,
            grid_estimate: cert.grid_estimate,
            violations: cert.violations.len(),
        };
        cert.check()?;
        Ok(())
    })
}

/// `q_n(t) = a·p_n(t²/a²)`.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_abs_approximant_eval(
    a: f64,
    n: u32,
    t: f64,
    out_value: *mut f64,
) -> MuntzStatus {
    guard(|| {
        let approx = weierstrass::abs_approximant(a, n)?;
        if !approx.domain().contains(t) {
            return Err(Error::InvalidInput(format!("t = {t} lies outside [-{a}, {a}]")).into());
        }
        *out(out_value, "out_value")? = approx.eval(t);
        Ok(())
    })
}

/// `L²[0,1]` distance from `x^q` to the span of `x^{λ_i}`.
///
/// # Safety
/// `lambdas` must point to `len` doubles; `out_delta` writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_distance_to_span(
    q: f64,
    lambdas: *const f64,
    len: size_t,
    out_delta: *mut f64,
) -> MuntzStatus {
    guard(|| {
        let dst = out(out_delta, "out_delta")?;
        *dst = gram::distance_to_span(q, slice(lambdas, len, "lambdas")?)?.delta;
        Ok(())
    })
}

/// Closed-form determinant of `1/(x_i + y_j)`.
///
/// # Safety
/// `xs` and `ys` must each point to `len` doubles; `out_det` writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_cauchy_determinant(
    xs: *const f64,
    ys: *const f64,
    len: size_t,
    out_det: *mut f64,
) -> MuntzStatus {
    guard(|| {
        let dst = out(out_det, "out_det")?;
        *dst = gram::cauchy_determinant(slice(xs, len, "xs")?, slice(ys, len, "ys")?)?;
        Ok(())
    })
}

/// Density verdict for a sequence descriptor such as `"2*i+1"` or `"i^2"`.
///
/// # Safety
/// `sequence` must be a NUL-terminated string; `out_verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_density_check(
    sequence: *const c_char,
    n_max: size_t,
    out_verdict: *mut MuntzDensity,
) -> MuntzStatus {
    guard(|| {
        let dst = out(out_verdict, "out_verdict")?;
        let seq = ExponentSequence::parse(string(sequence, "sequence")?)?;
        *dst = match muntz::density_check(&seq, n_max)?.verdict {
            Density::Dense => MuntzDensity::Dense,
            Density::NotDense => MuntzDensity::NotDense,
            Density::Inconclusive => MuntzDensity::Inconclusive,
        };
        Ok(())
    })
}

/// Euler inequality quantities at `n`; `exact` recomputes in rationals
/// (n <= 1000) and checks the inequality exactly.
///
/// # Safety
/// `out_report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_euler_report(
    n: u64,
    exact: bool,
    out_report: *mut MuntzEulerReport,
) -> MuntzStatus {
    guard(|| {
        let dst = out(out_report, "out_report")?;
        let r = primes::euler_report(n, exact)?;
        *dst = MuntzEulerReport {
            n: r.n,
            harmonic: r.harmonic,
            product_plus: r.product_plus,
            product_minus: r.product_minus,
            basel: r.basel,
            inequality_holds: r.inequality_holds,
        };
        Ok(())
    })
}

/// Primes `<= n`. `out_count` always receives the count; a short buffer
/// yields `BufferTooSmall` and nothing is copied.
///
/// # Safety
/// `buf` must have room for `capacity` values; `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn muntz_primes_up_to(
    n: u64,
    buf: *mut u64,
    capacity: size_t,
    out_count: *mut size_t,
) -> MuntzStatus {
    guard(|| {
        if n > primes::SIEVE_CEILING {
            return Err(Error::InvalidInput(format!("n = {n} exceeds the sieve ceiling")).into());
        }
        copy_out(&primes::primes_up_to(n), buf, capacity, out_count)
    })
}
