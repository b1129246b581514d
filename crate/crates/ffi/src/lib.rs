//! C interface to `bplab`.
//!
//! Every function returns a [`BplStatus`] and writes results through
//! out-pointers. Out-pointers are left untouched on failure. The message of
//! the most recent failure on the calling thread is available through
//! [`bpl_last_error_message`].

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bplab::cm_probes::{self, geometric_grid, ProbeResult, ProbeVerdict, RealFn};
use bplab::convolution::{sum_density_2f1, sum_density_appell, SumSpec};
use bplab::distributions::{betaprime_cdf, betaprime_mellin, betaprime_pdf, sample_betaprime, BetaPrimeParams, RngState};
use bplab::identities::{spec_by_name, verify_with, Verdict, VerifyConfig};
use bplab::special;
use bplab::thorin::{thorin_cdf, thorin_density, ThorinParams};
use bplab::{Error, EvalOptions};

/// Status code returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BplStatus {
    Ok = 0,
    /// A required pointer argument was null or a string was not UTF-8.
    Null = 1,
    Domain = 2,
    NonConvergence = 3,
    Quadrature = 4,
    /// Mellin argument outside the strip of existence.
    Strip = 5,
    Precondition = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// Outcome of a shape probe.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BplVerdict {
    Holds = 0,
    Violated = 1,
    Inconclusive = 2,
}

/// Evaluation tolerances. Opaque; create with `bpl_options_new`.
pub struct BplOptions {
    inner: EvalOptions,
}

/// Seeded random stream. Opaque; create with `bpl_rng_new`.
pub struct BplRng {
    inner: RngState,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BplProbeSummary {
    pub verdict: BplVerdict,
    pub orders_checked: u32,
    /// Order of the first confirmed violation, or -1.
    pub first_violation_order: i32,
    /// Grid point of the first confirmed violation, or NaN.
    pub first_violation_z: f64,
    pub noise_floor: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BplVerifyReport {
    /// 1 when every channel passed.
    pub passed: i32,
    pub ks_statistic: f64,
    pub ks_threshold: f64,
    /// NaN when the identity has no Mellin channel.
    pub mellin_max_relerr: f64,
    /// NaN when the identity has no density channel.
    pub density_max_relerr: f64,
    pub n_samples: u64,
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

type FfiResult<T> = std::result::Result<T, Fail>;

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> BplStatus {
    match e {
        Error::Domain(_) => BplStatus::Domain,
        Error::NonConvergence { .. } | Error::FitFailure(_) => BplStatus::NonConvergence,
        Error::Quadrature { .. } => BplStatus::Quadrature,
        Error::StripViolation { .. } => BplStatus::Strip,
        Error::Precondition(_) | Error::EmptyInput(_) => BplStatus::Precondition,
    }
}

fn guard<F: FnOnce() -> FfiResult<()>>(f: F) -> BplStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(String::new());
            BplStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_last_error(format!("null or invalid pointer: {what}"));
            BplStatus::Null
        }
        Ok(Err(Fail::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            BplStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn opts_of(p: *const BplOptions) -> EvalOptions {
    p.as_ref().map(|o| o.inner).unwrap_or_default()
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Null(what))
}

unsafe fn slice_arg<'a, T>(p: *const T, n: usize, what: &'static str) -> FfiResult<&'a [T]> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

// ---------------------------------------------------------------------------
// Handles and diagnostics

/// Static name of a status code; "unknown" for values outside the enum.
#[no_mangle]
pub extern "C" fn bpl_status_name(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer",
        2 => c"domain error",
        3 => c"non-convergence",
        4 => c"quadrature failure",
        5 => c"outside Mellin strip",
        6 => c"precondition violated",
        7 => c"internal panic",
        _ => c"unknown",
    };
    s.as_ptr()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bpl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf` (truncated,
/// always NUL-terminated when `len > 0`). Returns the full message length
/// excluding the terminator.
///
/// # Safety
/// `buf` must be null or point to at least `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn bpl_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Creates an options handle. Pass NULL as options anywhere to use defaults.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_options_new(
    rel_tol: f64,
    abs_tol: f64,
    max_terms: usize,
    max_quad_refinements: usize,
    out_handle: *mut *mut BplOptions,
) -> BplStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        let inner = EvalOptions::new(rel_tol, abs_tol, max_terms, max_quad_refinements)?;
        *slot = Box::into_raw(Box::new(BplOptions { inner }));
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_options_default(out_handle: *mut *mut BplOptions) -> BplStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        *slot = Box::into_raw(Box::new(BplOptions {
            inner: EvalOptions::default(),
        }));
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or come from `bpl_options_new`/`bpl_options_default`
/// and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bpl_options_free(handle: *mut BplOptions) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `out_handle` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_rng_new(seed: u64, stream: u64, out_handle: *mut *mut BplRng) -> BplStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        *slot = Box::into_raw(Box::new(BplRng {
            inner: RngState::with_stream(seed, stream),
        }));
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or come from `bpl_rng_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bpl_rng_free(handle: *mut BplRng) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

// ---------------------------------------------------------------------------
// Special functions

/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_gamma_ln(x: f64, out_value: *mut f64) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = special::gamma_ln(x)?;
        Ok(())
    })
}

/// Gauss ₂F₁(a, b; c; z).
///
/// # Safety
/// `opts` may be null; `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_hyp2f1(
    opts: *const BplOptions,
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    out_value: *mut f64,
) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = special::gauss_2f1(a, b, c, z, &opts_of(opts))?;
        Ok(())
    })
}

/// ₃F₂(a1, a2, a3; b1, b2; z).
///
/// # Safety
/// `opts` may be null; `a` must point to 3 values, `b` to 2.
#[no_mangle]
pub unsafe extern "C" fn bpl_hyp3f2(
    opts: *const BplOptions,
    a: *const f64,
    b: *const f64,
    z: f64,
    out_value: *mut f64,
) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        let a = slice_arg(a, 3, "a")?;
        let b = slice_arg(b, 2, "b")?;
        *slot = special::hyp3f2([a[0], a[1], a[2]], [b[0], b[1]], z, &opts_of(opts))?;
        Ok(())
    })
}

/// Kummer Φ(a, c; z).
///
/// # Safety
/// `opts` may be null; `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_kummer_phi(
    opts: *const BplOptions,
    a: f64,
    c: f64,
    z: f64,
    out_value: *mut f64,
) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = special::kummer_phi(a, c, z, &opts_of(opts))?;
        Ok(())
    })
}

/// Tricomi Ψ(a, c; z).
///
/// # Safety
/// `opts` may be null; `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_tricomi_psi(
    opts: *const BplOptions,
    a: f64,
    c: f64,
    z: f64,
    out_value: *mut f64,
) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = special::tricomi_psi(a, c, z, &opts_of(opts))?;
        Ok(())
    })
}

/// Hermite function H₋ν(z), ν > 0.
///
/// # Safety
/// `opts` may be null; `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_hermite_neg(
    opts: *const BplOptions,
    nu: f64,
    z: f64,
    out_value: *mut f64,
) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = special::hermite_h_neg(nu, z, &opts_of(opts))?;
        Ok(())
    })
}

/// Gaussian Mills ratio.
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_mills_ratio(x: f64, out_value: *mut f64) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = special::mills_ratio(x);
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Beta prime law and sums

/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_betaprime_pdf(a: f64, b: f64, x: f64, out_value: *mut f64) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = betaprime_pdf(BetaPrimeParams::new(a, b)?, x)?;
        Ok(())
    })
}

/// # Safety
/// `opts` may be null; `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_betaprime_cdf(
    opts: *const BplOptions,
    a: f64,
    b: f64,
    x: f64,
    out_value: *mut f64,
) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = betaprime_cdf(BetaPrimeParams::new(a, b)?, x, &opts_of(opts))?;
        Ok(())
    })
}

/// E[X^s] for the beta prime law; fails with `Strip` outside (−a, b).
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_betaprime_mellin(a: f64, b: f64, s: f64, out_value: *mut f64) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = betaprime_mellin(BetaPrimeParams::new(a, b)?, s)?;
        Ok(())
    })
}

/// Fills `out_values[0..n]` with independent beta prime draws.
///
/// # Safety
/// `rng` must be a live handle; `out_values` must hold `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn bpl_betaprime_sample(
    rng: *mut BplRng,
    a: f64,
    b: f64,
    n: usize,
    out_values: *mut f64,
) -> BplStatus {
    guard(|| {
        let rng = out(rng, "rng")?;
        let p = BetaPrimeParams::new(a, b)?;
        if n == 0 {
            return Ok(());
        }
        if out_values.is_null() {
            return Err(Fail::Null("out_values"));
        }
        let buf = std::slice::from_raw_parts_mut(out_values, n);
        for v in buf {
            *v = sample_betaprime(p, &mut rng.inner);
        }
        Ok(())
    })
}

/// Density of λX + μY with X ~ β′(a1, b1), Y ~ β′(a2, b2) independent.
///
/// # Safety
/// `opts` may be null; `out_value` must be a valid pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bpl_sum_density(
    opts: *const BplOptions,
    lambda: f64,
    a1: f64,
    b1: f64,
    mu: f64,
    a2: f64,
    b2: f64,
    x: f64,
    out_value: *mut f64,
) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        let spec = SumSpec::new(lambda, BetaPrimeParams::new(a1, b1)?, mu, BetaPrimeParams::new(a2, b2)?)?;
        *slot = sum_density_appell(&spec, x, &opts_of(opts))?;
        Ok(())
    })
}

/// Density of X + Y for two i.i.d. β′(a, b) variables.
///
/// # Safety
/// `opts` may be null; `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_sum_density_iid(
    opts: *const BplOptions,
    a: f64,
    b: f64,
    x: f64,
    out_value: *mut f64,
) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = sum_density_2f1(BetaPrimeParams::new(a, b)?, x, &opts_of(opts))?;
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Thorin family

/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_thorin_cdf(a: f64, x: f64, t: f64, out_value: *mut f64) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = thorin_cdf(ThorinParams::new(a, x)?, t)?;
        Ok(())
    })
}

/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_thorin_density(a: f64, x: f64, t: f64, out_value: *mut f64) -> BplStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = thorin_density(ThorinParams::new(a, x)?, t)?;
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Verification and probes

/// Runs the identity check `name` (e.g. "theorem-a") with named parameters
/// `keys[i] = values[i]` on `n_samples` draws per side.
///
/// # Safety
/// `keys` and `values` must hold `n_params` entries; `rng` must be a live
/// handle; `out_report` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bpl_verify(
    name: *const c_char,
    keys: *const *const c_char,
    values: *const f64,
    n_params: usize,
    n_samples: usize,
    rng: *const BplRng,
    out_report: *mut BplVerifyReport,
) -> BplStatus {
    guard(|| {
        let slot = out(out_report, "out_report")?;
        let name = str_arg(name, "name")?;
        let rng = rng.as_ref().ok_or(Fail::Null("rng"))?;
        let keys = slice_arg(keys, n_params, "keys")?;
        let values = slice_arg(values, n_params, "values")?;
        let mut params = BTreeMap::new();
        for (&k, &v) in keys.iter().zip(values) {
            params.insert(str_arg(k, "keys")?.to_string(), v);
        }
        let spec = spec_by_name(name, &params)?;
        let grid = spec.default_s_grid();
        let r = verify_with(&spec, n_samples, &grid, &rng.inner, &VerifyConfig::default());
        if let Some(msg) = &r.failure {
            return Err(Error::Domain(msg.clone()).into());
        }
        *slot = BplVerifyReport {
            passed: i32::from(r.verdict == Verdict::Pass),
            ks_statistic: r.ks_statistic,
            ks_threshold: r.ks_threshold,
            mellin_max_relerr: r.mellin_max_relerr.unwrap_or(f64::NAN),
            density_max_relerr: r.density_max_relerr.unwrap_or(f64::NAN),
            n_samples: r.n_samples as u64,
        };
        Ok(())
    })
}

fn ratio_fn(name: &str, p: &[f64]) -> FfiResult<RealFn> {
    let need = |k: usize| -> FfiResult<()> {
        if p.len() == k {
            Ok(())
        } else {
            Err(Error::Precondition(format!("ratio {name} takes {k} parameters, got {}", p.len())).into())
        }
    };
    let f = match name {
        "psi-cc" => {
            need(3)?;
            cm_probes::psi_cc(p[0], p[1], p[2])?
        }
        "psi-doubling" => {
            need(2)?;
            cm_probes::psi_doubling(p[0], p[1])?
        }
        "psi-kumma" => {
            need(3)?;
            cm_probes::psi_kumma(p[0], p[1], p[2])?
        }
        "hermite-doubling" => {
            need(1)?;
            cm_probes::hermite_doubling(p[0])?
        }
        "k0e1" => {
            need(0)?;
            cm_probes::k0_e1()
        }
        "turan-hermite" => {
            need(2)?;
            cm_probes::turan_hermite(p[0], p[1])?
        }
        "turan-psi" => {
            need(3)?;
            cm_probes::turan_psi(p[0], p[1], p[2])?
        }
        other => return Err(Error::Precondition(format!("unknown ratio {other}")).into()),
    };
    Ok(f)
}

fn summarize(r: &ProbeResult) -> BplProbeSummary {
    BplProbeSummary {
        verdict: match r.verdict {
            ProbeVerdict::Holds => BplVerdict::Holds,
            ProbeVerdict::Violated => BplVerdict::Violated,
            ProbeVerdict::Inconclusive => BplVerdict::Inconclusive,
        },
        orders_checked: r.orders_checked as u32,
        first_violation_order: r.first_violation.map_or(-1, |(k, _)| k as i32),
        first_violation_z: r.first_violation.map_or(f64::NAN, |(_, z)| z),
        noise_floor: r.noise_floor,
    }
}

unsafe fn probe_common(
    name: *const c_char,
    params: *const f64,
    n_params: usize,
    z_lo: f64,
    z_hi: f64,
    n_z: usize,
    max_order: u32,
    log: bool,
    out_summary: *mut BplProbeSummary,
) -> BplStatus {
    guard(|| {
        let slot = out(out_summary, "out_summary")?;
        let name = str_arg(name, "name")?;
        let f = ratio_fn(name, slice_arg(params, n_params, "params")?)?;
        if !(z_lo > 0.0 && z_hi > z_lo) {
            return Err(Error::Precondition("need 0 < z_lo < z_hi".into()).into());
        }
        let grid = geometric_grid(z_lo, z_hi, n_z);
        let r = if log {
            cm_probes::lcm_probe(&*f, &grid, max_order as usize)?
        } else {
            cm_probes::cm_probe(&*f, &grid, max_order as usize)?
        };
        *slot = summarize(&r);
        Ok(())
    })
}

/// Complete-monotonicity probe of a named ratio on a geometric grid.
///
/// Ratios and their parameters: "psi-cc" (a, c, c′), "psi-doubling" (a, c),
/// "psi-kumma" (a, c, c′), "hermite-doubling" (ν), "k0e1" (), "turan-hermite"
/// (ν, c), "turan-psi" (a, c, λ).
///
/// # Safety
/// `name` must be a NUL-terminated string; `params` must hold `n_params`
/// values; `out_summary` must be a valid pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bpl_probe_cm(
    name: *const c_char,
    params: *const f64,
    n_params: usize,
    z_lo: f64,
    z_hi: f64,
    n_z: usize,
    max_order: u32,
    out_summary: *mut BplProbeSummary,
) -> BplStatus {
    probe_common(name, params, n_params, z_lo, z_hi, n_z, max_order, false, out_summary)
}

/// Logarithmic complete-monotonicity probe; same arguments as `bpl_probe_cm`.
///
/// # Safety
/// See `bpl_probe_cm`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bpl_probe_lcm(
    name: *const c_char,
    params: *const f64,
    n_params: usize,
    z_lo: f64,
    z_hi: f64,
    n_z: usize,
    max_order: u32,
    out_summary: *mut BplProbeSummary,
) -> BplStatus {
    probe_common(name, params, n_params, z_lo, z_hi, n_z, max_order, true, out_summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_are_caught() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, BplStatus::Panic);
        let mut buf = [0 as c_char; 64];
        let n = unsafe { bpl_last_error_message(buf.as_mut_ptr(), buf.len()) };
        let msg = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
        assert_eq!(msg, "panic: boom");
        assert_eq!(n, msg.len());
    }

    #[test]
    fn error_mapping() {
        assert_eq!(status_of(&Error::Domain("x".into())), BplStatus::Domain);
        assert_eq!(
            status_of(&Error::StripViolation { s: 3.0, lo: 0.0, hi: 1.0 }),
            BplStatus::Strip
        );
        assert_eq!(status_of(&Error::EmptyInput("v")), BplStatus::Precondition);
    }
}
