//! Identity-in-law checks: two-sample KS on simulated draws plus Mellin and
//! density comparisons evaluated deterministically.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::convolution::{mellin_sum, sum_density_bhalf};
use crate::distributions::{
    beta_mellin, betaprime_mellin, betaprime_pdf, gamma_mellin, sample_beta, sample_betaprime, sample_gamma,
    BetaParams, BetaPrimeParams, GammaParams, RngState,
};
use crate::error::{domain, precondition, Error, Result};
use crate::options::EvalOptions;
use crate::quad::{beta_integral, integrate_power_left};
use crate::special::{beta_fn, gamma, gamma_ln, gauss_2f1_complement, hyp3f2};

pub type Sampler = Arc<dyn Fn(&mut RngState) -> Result<f64> + Send + Sync>;
pub type Transform = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// Pointwise density comparison attached to a spec.
#[derive(Clone)]
pub struct DensityCheck {
    pub lhs: Transform,
    pub rhs: Transform,
    pub grid: Vec<f64>,
}

/// A claimed equality in law between two random constructions.
#[derive(Clone)]
pub struct IdentitySpec {
    pub name: String,
    pub lhs_sampler: Sampler,
    pub rhs_sampler: Sampler,
    pub lhs_mellin: Option<Transform>,
    pub rhs_mellin: Option<Transform>,
    /// Open interval of s where both Mellin transforms are finite.
    pub mellin_strip: (f64, f64),
    pub param_domain: String,
    pub density: Option<DensityCheck>,
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("name", &self.name)
            .field("mellin_strip", &self.mellin_strip)
            .field("has_mellin", &self.lhs_mellin.is_some())
            .field("has_density", &self.density.is_some())
            .field("param_domain", &self.param_domain)
            .finish()
    }
}

impl IdentitySpec {
    /// Five interior points of the Mellin strip, clipped to [−3, 3].
    pub fn default_s_grid(&self) -> Vec<f64> {
        let lo = self.mellin_strip.0.max(-3.0);
        let hi = self.mellin_strip.1.min(3.0);
        [0.1, 0.3, 0.5, 0.7, 0.9].iter().map(|f| lo + f * (hi - lo)).collect()
    }

    /// Same spec with the right-hand construction multiplied by `factor`.
    pub fn scaled_rhs(&self, factor: f64) -> IdentitySpec {
        let mut out = self.clone();
        let s = self.rhs_sampler.clone();
        out.rhs_sampler = Arc::new(move |rng| Ok(factor * s(rng)?));
        if let Some(m) = self.rhs_mellin.clone() {
            out.rhs_mellin = Some(Arc::new(move |s| Ok(factor.powf(s) * m(s)?)));
        }
        if let Some(d) = &self.density {
            let r = d.rhs.clone();
            out.density = Some(DensityCheck {
                lhs: d.lhs.clone(),
                rhs: Arc::new(move |x| Ok(r(x / factor)? / factor)),
                grid: d.grid.clone(),
            });
        }
        out.name = format!("{} (rhs x{factor})", self.name);
        out
    }

    /// Left side of `self` against the right side of `other`.
    pub fn with_rhs_of(&self, other: &IdentitySpec) -> IdentitySpec {
        let mut out = self.clone();
        out.rhs_sampler = other.rhs_sampler.clone();
        out.rhs_mellin = other.rhs_mellin.clone();
        out.mellin_strip = (
            self.mellin_strip.0.max(other.mellin_strip.0),
            self.mellin_strip.1.min(other.mellin_strip.1),
        );
        out.density = match (&self.density, &other.density) {
            (Some(a), Some(b)) => Some(DensityCheck {
                lhs: a.lhs.clone(),
                rhs: b.rhs.clone(),
                grid: a.grid.clone(),
            }),
            _ => None,
        };
        out.name = format!("{} vs {}", self.name, other.name);
        out
    }
}

/// Two-sample Kolmogorov–Smirnov statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsTest {
    pub statistic: f64,
    pub n: usize,
    pub m: usize,
}

impl KsTest {
    /// Asymptotic critical value c(α)·√((n+m)/(nm)) with c(α) = √(−ln(α/2)/2).
    pub fn threshold_at(&self, alpha: f64) -> f64 {
        let c = (-0.5 * (alpha / 2.0).ln()).sqrt();
        let (n, m) = (self.n as f64, self.m as f64);
        c * ((n + m) / (n * m)).sqrt()
    }
}

pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> Result<KsTest> {
    if xs.is_empty() {
        return Err(Error::EmptyInput("first KS sample"));
    }
    if ys.is_empty() {
        return Err(Error::EmptyInput("second KS sample"));
    }
    if xs.iter().chain(ys).any(|v| v.is_nan()) {
        return Err(domain("KS sample contains NaN"));
    }
    let mut a = xs.to_vec();
    let mut b = ys.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let x = a[i].min(b[j]);
        while i < n && a[i] <= x {
            i += 1;
        }
        while j < m && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    Ok(KsTest { statistic: d, n, m })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Thresholds used by [`verify_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub alpha: f64,
    pub mellin_tol: f64,
    pub density_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            alpha: 0.01,
            mellin_tol: 1e-6,
            density_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    pub ks_statistic: f64,
    pub ks_threshold: f64,
    pub mellin_max_relerr: Option<f64>,
    pub mellin_tol: f64,
    pub density_max_relerr: Option<f64>,
    pub density_tol: f64,
    pub n_samples: usize,
    pub verdict: Verdict,
    pub seed: u64,
    /// Set when a sampler or evaluator failed; the verdict is then Fail.
    pub failure: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn numeric_failure(&self) -> bool {
        self.failure.is_some()
    }
}

fn draw(sampler: &Sampler, n: usize, mut rng: RngState) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let x = sampler(&mut rng)?;
        if !(x > 0.0 && x.is_finite()) {
            return Err(domain(format!("sampler produced {x}, expected a positive real")));
        }
        out.push(x);
    }
    Ok(out)
}

fn max_relerr(lhs: &Transform, rhs: &Transform, pts: &[f64]) -> Result<f64> {
    let errs: Result<Vec<f64>> = pts
        .par_iter()
        .map(|&s| {
            let l = lhs(s)?;
            let r = rhs(s)?;
            Ok((l - r).abs() / r.abs().max(1e-300))
        })
        .collect();
    Ok(errs?.into_iter().fold(0.0, f64::max))
}

/// Runs [`verify_with`] at α = 0.01 and relative tolerance 1e-6.
pub fn verify(spec: &IdentitySpec, n: usize, s_grid: &[f64], rng: &RngState) -> VerificationReport {
    verify_with(spec, n, s_grid, rng, &VerifyConfig::default())
}

/// KS on `n` draws per side (independent child streams of `rng`), plus the
/// Mellin comparison over `s_grid` and the density comparison when present.
pub fn verify_with(
    spec: &IdentitySpec,
    n: usize,
    s_grid: &[f64],
    rng: &RngState,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let mut report = VerificationReport {
        name: spec.name.clone(),
        ks_statistic: f64::NAN,
        ks_threshold: f64::NAN,
        mellin_max_relerr: None,
        mellin_tol: cfg.mellin_tol,
        density_max_relerr: None,
        density_tol: cfg.density_tol,
        n_samples: n,
        verdict: Verdict::Fail,
        seed: rng.seed(),
        failure: None,
    };
    let (lhs, rhs) = rayon::join(
        || draw(&spec.lhs_sampler, n, rng.child(1)),
        || draw(&spec.rhs_sampler, n, rng.child(2)),
    );
    let ks = lhs.and_then(|x| rhs.and_then(|y| ks_two_sample(&x, &y)));
    match ks {
        Ok(k) => {
            report.ks_statistic = k.statistic;
            report.ks_threshold = k.threshold_at(cfg.alpha);
        }
        Err(e) => {
            report.failure = Some(format!("sampling: {e}"));
            return report;
        }
    }
    if let (Some(l), Some(r)) = (&spec.lhs_mellin, &spec.rhs_mellin) {
        let (lo, hi) = spec.mellin_strip;
        if let Some(&s) = s_grid.iter().find(|&&s| !(s > lo && s < hi)) {
            report.failure = Some(Error::StripViolation { s, lo, hi }.to_string());
            return report;
        }
        match max_relerr(l, r, s_grid) {
            Ok(e) => report.mellin_max_relerr = Some(e),
            Err(e) => {
                report.failure = Some(format!("mellin: {e}"));
                return report;
            }
        }
    }
    if let Some(d) = &spec.density {
        match max_relerr(&d.lhs, &d.rhs, &d.grid) {
            Ok(e) => report.density_max_relerr = Some(e),
            Err(e) => {
                report.failure = Some(format!("density: {e}"));
                return report;
            }
        }
    }
    let ks_ok = report.ks_statistic < report.ks_threshold;
    let mellin_ok = report.mellin_max_relerr.is_none_or(|e| e < cfg.mellin_tol);
    let density_ok = report.density_max_relerr.is_none_or(|e| e < cfg.density_tol);
    if ks_ok && mellin_ok && density_ok {
        report.verdict = Verdict::Pass;
    }
    report
}

// ---------------------------------------------------------------------------
// Building blocks

fn bp(a: f64, b: f64) -> Result<BetaPrimeParams> {
    BetaPrimeParams::new(a, b)
}

fn be(p: f64, q: f64) -> Result<BetaParams> {
    BetaParams::new(p, q)
}

fn ga(t: f64) -> Result<GammaParams> {
    GammaParams::new(t)
}

fn quad_opts() -> EvalOptions {
    EvalOptions::default().with_rel_tol(1e-10)
}

fn inner_opts() -> EvalOptions {
    EvalOptions::default().with_rel_tol(1e-11)
}

fn sum_of_two(p: BetaPrimeParams) -> Sampler {
    Arc::new(move |rng| Ok(sample_betaprime(p, rng) + sample_betaprime(p, rng)))
}

/// E[(1+√B_{a,1/2})^s].
pub fn sqrt_beta_factor(a: f64, s: f64) -> Result<f64> {
    let o = quad_opts();
    let v = beta_integral(a, 0.5, |t, _| Ok((1.0 + t.sqrt()).powf(s)), 0.5, &[], &o)?;
    Ok(v / beta_fn(a, 0.5))
}

/// Break points bracketing a kink of the integrand at `at`.
fn kink_breaks(at: f64) -> Vec<f64> {
    // dense around the kink, then one break per decade up to 1
    let mut out: Vec<f64> = [0.01, 0.1, 0.5, 1.0, 2.0].iter().map(|k| k * at).collect();
    let mut p = 10.0 * at;
    while p < 1.0 {
        out.push(p);
        p *= 10.0;
    }
    out.retain(|p| *p > 0.0 && *p < 1.0);
    out
}

/// E[(1+√(U/V))^s] with U ~ B_{a,1/2}, V ~ B_{b,1/2−b}, by nested quadrature.
/// The factor V^{−s/2} is moved into the outer weight.
pub fn sqrt_ratio_factor(a: f64, b: f64, s: f64) -> Result<f64> {
    if !(s > -2.0 * a && s < 2.0 * b) {
        return Err(Error::StripViolation { s, lo: -2.0 * a, hi: 2.0 * b });
    }
    let o = quad_opts();
    let io = inner_opts();
    let inner = |v: f64| {
        let sv = v.sqrt();
        if s < 0.0 {
            // u^{s/2} goes into the weight; the rest is bounded
            beta_integral(a + 0.5 * s, 0.5, |u, _| Ok((1.0 + (v / u).sqrt()).powf(s)), 0.5, &kink_breaks(v), &io)
        } else {
            beta_integral(a, 0.5, |u, _| Ok((sv + u.sqrt()).powf(s)), 0.5, &kink_breaks(v), &io)
        }
    };
    let outer = beta_integral(b - 0.5 * s, 0.5 - b, |v, _| inner(v), 0.5, &[1e-6, 1e-4, 1e-2], &o)?;
    Ok(outer / (beta_fn(a, 0.5) * beta_fn(b, 0.5 - b)))
}

/// E[(U + 1/W)^s] with U ~ B_{a,1/2}, W ~ B_{b,1/2}.
fn beta_plus_inverse_factor(a: f64, b: f64, s: f64) -> Result<f64> {
    let o = quad_opts();
    let io = inner_opts();
    let inner = |w: f64| beta_integral(a, 0.5, |u, _| Ok((1.0 + u * w).powf(s)), 0.5, &[], &io);
    let outer = beta_integral(b - s, 0.5, |w, _| inner(w), 0.5, &[], &o)?;
    Ok(outer / (beta_fn(a, 0.5) * beta_fn(b, 0.5)))
}

/// E[(1 + U·W)^s] with U ~ B_{p,q}, W ~ B′_{c,d}. Conditionally on U = u,
/// E[(1 + uW)^s] = B(c,d−s)/B(c,d)·₂F₁(−s, c; c+d−s; 1−u).
fn one_plus_beta_betaprime_factor(p: f64, q: f64, c: f64, d: f64, s: f64) -> Result<f64> {
    let o = quad_opts();
    let io = inner_opts();
    let outer = beta_integral(p, q, |u, omu| gauss_2f1_complement(-s, c, c + d - s, omu, u, &io), 0.5, &[1e-4, 1e-2], &o)?;
    Ok(outer * beta_fn(c, d - s) / (beta_fn(p, q) * beta_fn(c, d)))
}

/// E[(√Γ_a + √Γ_a)^s], through polar coordinates.
pub fn half_gaussian_sum_mellin(a: f64, s: f64) -> Result<f64> {
    if !(s > -4.0 * a) {
        return Err(Error::StripViolation {
            s,
            lo: -4.0 * a,
            hi: f64::INFINITY,
        });
    }
    let o = quad_opts();
    let v = beta_integral(a, a, |t, omt| Ok((1.0 + 2.0 * (t * omt).sqrt()).powf(0.5 * s)), 0.5, &[], &o)?;
    let ln = gamma_ln(2.0 * a + 0.5 * s)? - gamma_ln(2.0 * a)?;
    Ok(ln.exp() * v / beta_fn(a, a))
}

fn transform<F>(f: F) -> Option<Transform>
where
    F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
{
    Some(Arc::new(f))
}

fn positive(v: f64, name: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(precondition(format!("{name} must be positive, got {v}")))
    }
}

// ---------------------------------------------------------------------------
// Identity specs

/// B′_{a,1/2} + B′_{a,1/2} ≐ B′_{2a,1/2}·(1 + √B_{a,1/2}).
pub fn theorem_a_spec(a: f64) -> Result<IdentitySpec> {
    positive(a, "a")?;
    let p = bp(a, 0.5)?;
    let p2 = bp(2.0 * a, 0.5)?;
    let bb = be(a, 0.5)?;
    let rhs_pdf = move |x: f64| -> Result<f64> {
        // density of Z·Y, Y = 1 + √B: E[f_Z(x/Y)/Y]
        let o = quad_opts();
        let v = beta_integral(
            a,
            0.5,
            |t, _| {
                let y = 1.0 + t.sqrt();
                Ok(betaprime_pdf(p2, x / y)? / y)
            },
            0.5,
            &[],
            &o,
        )?;
        Ok(v / beta_fn(a, 0.5))
    };
    Ok(IdentitySpec {
        name: format!("theorem-a(a={a})"),
        lhs_sampler: sum_of_two(p),
        rhs_sampler: Arc::new(move |rng| Ok(sample_betaprime(p2, rng) * (1.0 + sample_beta(bb, rng).sqrt()))),
        lhs_mellin: transform(move |s| mellin_sum(p, s, &EvalOptions::default())),
        rhs_mellin: transform(move |s| Ok(betaprime_mellin(p2, s)? * sqrt_beta_factor(a, s)?)),
        mellin_strip: (-2.0 * a, 0.5),
        param_domain: "a > 0".into(),
        density: Some(DensityCheck {
            lhs: Arc::new(move |x| sum_density_bhalf(a, x)),
            rhs: Arc::new(rhs_pdf),
            grid: vec![0.05, 0.3, 1.0, 2.5, 7.0, 20.0],
        }),
    })
}

/// B′_{a,b} + B′_{a,b} ≐ B′_{2a,b}·(1 + √(B_{a,1/2}/B_{b,1/2−b})) for any a > 0
/// and b ∈ (0, 1/2). Proven only for a = 1/2 and a = 1 − b.
pub fn sqrt_ratio_spec(a: f64, b: f64) -> Result<IdentitySpec> {
    positive(a, "a")?;
    if !(b > 0.0 && b < 0.5) {
        return Err(precondition(format!("b must lie in (0, 1/2), got {b}")));
    }
    let p = bp(a, b)?;
    let p2 = bp(2.0 * a, b)?;
    let u = be(a, 0.5)?;
    let v = be(b, 0.5 - b)?;
    Ok(IdentitySpec {
        name: format!("sqrt-ratio(a={a},b={b})"),
        lhs_sampler: sum_of_two(p),
        rhs_sampler: Arc::new(move |rng| {
            let z = sample_betaprime(p2, rng);
            let r = sample_beta(u, rng) / sample_beta(v, rng);
            Ok(z * (1.0 + r.sqrt()))
        }),
        lhs_mellin: transform(move |s| mellin_sum(p, s, &EvalOptions::default())),
        rhs_mellin: transform(move |s| Ok(betaprime_mellin(p2, s)? * sqrt_ratio_factor(a, b, s)?)),
        mellin_strip: (-2.0 * a, b),
        param_domain: "a > 0, 0 < b < 1/2".into(),
        density: None,
    })
}

/// The proven cases of [`sqrt_ratio_spec`]: a = 1 − b or a = 1/2.
pub fn theorem_b_spec(a: f64, b: f64) -> Result<IdentitySpec> {
    if !(b > 0.0 && b < 0.5) {
        return Err(precondition(format!("b must lie in (0, 1/2), got {b}")));
    }
    if !(is_half(a) || (a - (1.0 - b)).abs() < 1e-12) {
        return Err(precondition(format!("needs a = 1/2 or a = 1 − b, got a={a}, b={b}")));
    }
    let mut s = sqrt_ratio_spec(a, b)?;
    s.name = format!("theorem-b(a={a},b={b})");
    s.param_domain = "0 < b < 1/2 and (a = 1/2 or a = 1 - b)".into();
    Ok(s)
}

fn is_half(a: f64) -> bool {
    (a - 0.5).abs() < 1e-12
}

/// B′_{a,b} ≐ B′_{a,b′}·(1 + B′_{b′−b,b}) for b′ > b.
pub fn prop_b0_spec(a: f64, b: f64, b_prime: f64) -> Result<IdentitySpec> {
    positive(a, "a")?;
    positive(b, "b")?;
    if !(b_prime > b) {
        return Err(precondition(format!("needs b' > b, got b={b}, b'={b_prime}")));
    }
    let lhs = bp(a, b)?;
    let z = bp(a, b_prime)?;
    let w = bp(b_prime - b, b)?;
    let v = be(b, b_prime - b)?;
    let rhs_pdf = move |x: f64| -> Result<f64> {
        // Z/V with V ~ B_{b,b′−b}: E[V f_Z(xV)], the powers of V folded into
        // the beta weight
        let o = quad_opts();
        let r = beta_integral(a + b, b_prime - b, |t, _| Ok((-(a + b_prime) * (x * t).ln_1p()).exp()), 0.5, &[], &o)?;
        Ok(r * x.powf(a - 1.0) / (beta_fn(a, b_prime) * beta_fn(b, b_prime - b)))
    };
    Ok(IdentitySpec {
        name: format!("prop-b0(a={a},b={b},b'={b_prime})"),
        lhs_sampler: Arc::new(move |rng| Ok(sample_betaprime(lhs, rng))),
        rhs_sampler: Arc::new(move |rng| Ok(sample_betaprime(z, rng) * (1.0 + sample_betaprime(w, rng)))),
        lhs_mellin: transform(move |s| betaprime_mellin(lhs, s)),
        rhs_mellin: transform(move |s| Ok(betaprime_mellin(z, s)? * beta_mellin(v, -s)?)),
        mellin_strip: (-a, b),
        param_domain: "a > 0, b' > b > 0".into(),
        density: Some(DensityCheck {
            lhs: Arc::new(move |x| betaprime_pdf(lhs, x)),
            rhs: Arc::new(rhs_pdf),
            grid: vec![0.02, 0.4, 1.0, 3.0, 12.0],
        }),
    })
}

/// With b = 1/2 − a: B′_{a,b} + B′_{a,b} ≐ B′_{2a,2b}·(B_{a,1/2} + B_{b,1/2}^{−1}).
pub fn ab_half_spec(a: f64) -> Result<IdentitySpec> {
    if !(a > 0.0 && a < 0.5) {
        return Err(precondition(format!("a must lie in (0, 1/2), got {a}")));
    }
    let b = 0.5 - a;
    let p = bp(a, b)?;
    let p2 = bp(2.0 * a, 2.0 * b)?;
    let u = be(a, 0.5)?;
    let w = be(b, 0.5)?;
    Ok(IdentitySpec {
        name: format!("ab-half(a={a})"),
        lhs_sampler: sum_of_two(p),
        rhs_sampler: Arc::new(move |rng| {
            let z = sample_betaprime(p2, rng);
            Ok(z * (sample_beta(u, rng) + 1.0 / sample_beta(w, rng)))
        }),
        lhs_mellin: transform(move |s| mellin_sum(p, s, &EvalOptions::default())),
        rhs_mellin: transform(move |s| Ok(betaprime_mellin(p2, s)? * beta_plus_inverse_factor(a, b, s)?)),
        mellin_strip: (-2.0 * a, b),
        param_domain: "0 < a < 1/2, b = 1/2 - a".into(),
        density: None,
    })
}

/// E[((1+B′_{a,b})(1+B′_{c,d}) − 1)^s] as a ₃F₂ at unit argument.
pub fn product_minus_one_mellin(a: f64, b: f64, c: f64, d: f64, s: f64) -> Result<f64> {
    let (lo, hi) = (-(a + c), b.min(d));
    if !(s > lo && s < hi) {
        return Err(Error::StripViolation { s, lo, hi });
    }
    let o = EvalOptions::default();
    let ln = gamma_ln(b - s)? + gamma_ln(d - s)? + gamma_ln(a + b)? + gamma_ln(c + d)?
        - gamma_ln(b)?
        - gamma_ln(d)?
        - gamma_ln(a + b - s)?
        - gamma_ln(c + d - s)?;
    Ok(ln.exp() * hyp3f2([-s, b - s, d - s], [a + b - s, c + d - s], 1.0, &o)?)
}

fn multiplicative_spec(a: f64, b: f64, c: f64, d: f64, complementary: bool) -> Result<IdentitySpec> {
    for (v, n) in [(a, "a"), (b, "b"), (c, "c"), (d, "d")] {
        positive(v, n)?;
    }
    // The complementary factorization is the same statement with (a,b) and
    // (c,d) exchanged.
    let (a1, b1, c1, d1) = if complementary { (c, d, a, b) } else { (a, b, c, d) };
    if !(b1 < c1 + d1) {
        return Err(precondition(if complementary {
            format!("complementary factorization needs d < a + b, got a={a}, b={b}, d={d}")
        } else {
            format!("needs b < c + d, got b={b}, c={c}, d={d}; use the complementary factorization")
        }));
    }
    let x = bp(a, b)?;
    let y = bp(c, d)?;
    let z = bp(a1 + c1, d1)?;
    let u = be(a1, c1)?;
    let w = bp(c1 + d1 - b1, b1)?;
    let tag = if complementary { "free-complementary" } else { "free" };
    Ok(IdentitySpec {
        name: format!("{tag}(a={a},b={b},c={c},d={d})"),
        lhs_sampler: Arc::new(move |rng| {
            let p = sample_betaprime(x, rng);
            let q = sample_betaprime(y, rng);
            Ok(p + q + p * q)
        }),
        rhs_sampler: Arc::new(move |rng| {
            let zz = sample_betaprime(z, rng);
            Ok(zz * (1.0 + sample_beta(u, rng) * sample_betaprime(w, rng)))
        }),
        lhs_mellin: transform(move |s| product_minus_one_mellin(a, b, c, d, s)),
        rhs_mellin: transform(move |s| {
            Ok(betaprime_mellin(z, s)? * one_plus_beta_betaprime_factor(a1, c1, c1 + d1 - b1, b1, s)?)
        }),
        mellin_strip: (-(a + c), b.min(d)),
        param_domain: if complementary { "a,b,c,d > 0, d < a + b" } else { "a,b,c,d > 0, b < c + d" }.into(),
        density: None,
    })
}

/// (1+B′_{a,b})(1+B′_{c,d}) − 1 ≐ B′_{a+c,d}·(1 + B_{a,c}B′_{c+d−b,b}), b < c + d.
pub fn free_spec(a: f64, b: f64, c: f64, d: f64) -> Result<IdentitySpec> {
    multiplicative_spec(a, b, c, d, false)
}

/// (1+B′_{a,b})(1+B′_{c,d}) − 1 ≐ B′_{a+c,b}·(1 + B_{c,a}B′_{a+b−d,d}), d < a + b.
pub fn free_spec_complementary(a: f64, b: f64, c: f64, d: f64) -> Result<IdentitySpec> {
    multiplicative_spec(a, b, c, d, true)
}

/// Compares two closed forms of the density of 1/(1 + B_{a,c}B′_{c+d−b,b}) on
/// `x_grid` ⊂ (0,1): one normalized by its Γ-prefactor with argument x/(x−1),
/// the other normalized by quadrature with argument x. Returns the largest
/// relative discrepancy.
pub fn hypergeo_identity_check(a: f64, b: f64, c: f64, d: f64, x_grid: &[f64]) -> Result<f64> {
    for (v, n) in [(a, "a"), (b, "b"), (c, "c"), (d, "d")] {
        positive(v, n)?;
    }
    if !(b < c + d) {
        return Err(precondition(format!("needs b < c + d, got b={b}, c={c}, d={d}")));
    }
    let o = EvalOptions::default();
    let shape = |x: f64, omx: f64| gauss_2f1_complement(a + b, a + b - d, a + b + c, x, omx, &o);
    let norm = beta_integral(b, a, |t, omt| shape(t, omt), 0.5, &[], &quad_opts())?;
    let ln_k = gamma_ln(a + b)? + gamma_ln(a + c)? + gamma_ln(c + d)?
        - gamma_ln(a)?
        - gamma_ln(b)?
        - gamma_ln(c + d - b)?
        - gamma_ln(a + b + c)?;
    let mut worst: f64 = 0.0;
    for &x in x_grid {
        if !(x > 0.0 && x < 1.0) {
            return Err(domain(format!("grid point {x} outside (0,1)")));
        }
        let omx = 1.0 - x;
        let direct = (ln_k + (b - 1.0) * x.ln() - (b + 1.0) * omx.ln()).exp()
            * gauss_2f1_complement(a + b, c + d, a + b + c, x / (x - 1.0), 1.0 / omx, &o)?;
        let biased = x.powf(b - 1.0) * omx.powf(a - 1.0) * shape(x, omx)? / norm;
        worst = worst.max((direct - biased).abs() / biased.abs());
    }
    Ok(worst)
}

/// Normalizing integral ∫₀¹ x^{b−1}(1−x)^{a−1}₂F₁(a+b, a+b−d; a+b+c; x) dx
/// by quadrature, and its Γ closed form.
pub fn hypergeo_normalization(a: f64, b: f64, c: f64, d: f64) -> Result<(f64, f64)> {
    let o = EvalOptions::default();
    let q = beta_integral(
        b,
        a,
        |t, omt| gauss_2f1_complement(a + b, a + b - d, a + b + c, t, omt, &o),
        0.5,
        &[],
        &quad_opts(),
    )?;
    let ln = gamma_ln(a)? + gamma_ln(b)? + gamma_ln(a + b + c)? + gamma_ln(c + d - b)?
        - gamma_ln(a + b)?
        - gamma_ln(c + d)?
        - gamma_ln(a + c)?;
    Ok((q, ln.exp()))
}

/// √Γ_a + √Γ_a ≐ √(Γ_{2a}·(1 + √B_{a,1/2})).
pub fn half_gaussian_spec(a: f64) -> Result<IdentitySpec> {
    positive(a, "a")?;
    let g = ga(a)?;
    let g2 = ga(2.0 * a)?;
    let u = be(a, 0.5)?;
    Ok(IdentitySpec {
        name: format!("half-gaussian(a={a})"),
        lhs_sampler: Arc::new(move |rng| Ok(sample_gamma(g, rng).sqrt() + sample_gamma(g, rng).sqrt())),
        rhs_sampler: Arc::new(move |rng| {
            let z = sample_gamma(g2, rng);
            Ok((z * (1.0 + sample_beta(u, rng).sqrt())).sqrt())
        }),
        lhs_mellin: transform(move |s| half_gaussian_sum_mellin(a, s)),
        rhs_mellin: transform(move |s| Ok(gamma_mellin(g2, 0.5 * s)? * sqrt_beta_factor(a, 0.5 * s)?)),
        mellin_strip: (-4.0 * a, f64::INFINITY),
        param_domain: "a > 0".into(),
        density: None,
    })
}

/// B′_{a,1/2} + B′_{a,1/2} ≐ (√Γ_a + √Γ_a)²/Γ_{1/2}.
pub fn cor34_spec(a: f64) -> Result<IdentitySpec> {
    positive(a, "a")?;
    let p = bp(a, 0.5)?;
    let g = ga(a)?;
    let h = ga(0.5)?;
    Ok(IdentitySpec {
        name: format!("cor34(a={a})"),
        lhs_sampler: sum_of_two(p),
        rhs_sampler: Arc::new(move |rng| {
            let r = sample_gamma(g, rng).sqrt() + sample_gamma(g, rng).sqrt();
            Ok(r * r / sample_gamma(h, rng))
        }),
        lhs_mellin: transform(move |s| mellin_sum(p, s, &EvalOptions::default())),
        rhs_mellin: transform(move |s| Ok(half_gaussian_sum_mellin(a, 2.0 * s)? * gamma_mellin(h, -s)?)),
        mellin_strip: (-2.0 * a, 0.5),
        param_domain: "a > 0".into(),
        density: None,
    })
}

/// Looks up a spec by its command-line name.
pub fn spec_by_name(name: &str, params: &std::collections::BTreeMap<String, f64>) -> Result<IdentitySpec> {
    let get = |k: &str| {
        params
            .get(k)
            .copied()
            .ok_or_else(|| precondition(format!("identity {name} needs parameter --{k}")))
    };
    match name {
        "theorem-a" => theorem_a_spec(get("a")?),
        "theorem-b" => theorem_b_spec(get("a")?, get("b")?),
        "prop-b0" => prop_b0_spec(get("a")?, get("b")?, get("b-prime")?),
        "ab-half" => ab_half_spec(get("a")?),
        "free" => free_spec(get("a")?, get("b")?, get("c")?, get("d")?),
        "free-complementary" => free_spec_complementary(get("a")?, get("b")?, get("c")?, get("d")?),
        "half-gaussian" => half_gaussian_spec(get("a")?),
        "cor34" => cor34_spec(get("a")?),
        "cjmain" => sqrt_ratio_spec(get("a")?, get("b")?),
        other => Err(precondition(format!("unknown identity {other}"))),
    }
}

pub const IDENTITY_NAMES: [&str; 9] = [
    "theorem-a",
    "theorem-b",
    "prop-b0",
    "ab-half",
    "free",
    "free-complementary",
    "half-gaussian",
    "cor34",
    "cjmain",
];

// ---------------------------------------------------------------------------
// Auxiliary densities on (1,2) ∪ (2,∞)

/// The four auxiliary densities: `*F` is the law before size-biasing,
/// `*G` the law of 1 + √(ratio of betas).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaDensity {
    /// 2 + B_{a,1}(B_{1−a,2a−1}^{−1} − 2), a ∈ (1/2, 1).
    BetastrF,
    /// 1 + √(B_{a,1/2}/B_{1−a,a−1/2}), a ∈ (1/2, 1).
    BetastrG,
    /// B_{b+1/2,1/2} + B_{b,1/2−b}^{−1}, b ∈ (0, 1/2).
    BetastrbF,
    /// 1 + √(B_{1/2,1/2}/B_{b,1/2−b}), b ∈ (0, 1/2).
    BetastrbG,
}

impl LemmaDensity {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "betastr_f" => Ok(Self::BetastrF),
            "betastr_g" => Ok(Self::BetastrG),
            "betastrb_f" => Ok(Self::BetastrbF),
            "betastrb_g" => Ok(Self::BetastrbG),
            _ => Err(precondition(format!("unknown density kind {s}"))),
        }
    }

    /// The constant C and exponent e with g = C·x^e·f for the family of `self`.
    pub fn proportionality(self, param: f64) -> (f64, f64) {
        match self {
            Self::BetastrF | Self::BetastrG => {
                let a = param;
                (2.0 * gamma(2.0 * a) / (a * gamma(a) * gamma(a)), a - 1.0)
            }
            Self::BetastrbF | Self::BetastrbG => {
                let b = param;
                (2.0 * gamma(b + 0.5) / (std::f64::consts::PI.sqrt() * gamma(b + 1.0)), -b)
            }
        }
    }
}

pub fn lemma_densities(kind: LemmaDensity, param: f64, x: f64) -> Result<f64> {
    use LemmaDensity::*;
    match kind {
        BetastrF | BetastrG if !(param > 0.5 && param < 1.0) => {
            return Err(precondition(format!("a must lie in (1/2, 1), got {param}")))
        }
        BetastrbF | BetastrbG if !(param > 0.0 && param < 0.5) => {
            return Err(precondition(format!("b must lie in (0, 1/2), got {param}")))
        }
        _ => {}
    }
    if x.is_nan() {
        return Err(domain("x is NaN"));
    }
    if x <= 1.0 || x.is_infinite() {
        return Ok(0.0);
    }
    if x == 2.0 {
        return Err(domain("the densities are singular at x = 2"));
    }
    let o = EvalOptions::default();
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let y = x - 1.0;
    if x < 2.0 {
        // argument (x−1)², complement x(2−x)
        let (z, omz) = (y * y, x * (2.0 - x));
        match kind {
            BetastrG | BetastrF => {
                let a = param;
                let f = gauss_2f1_complement(0.5, 1.0, a + 0.5, z, omz, &o)?;
                let pre = if kind == BetastrG {
                    2.0 / (gamma(a) * gamma(1.0 - a))
                } else {
                    gamma(1.0 + a) * x.powf(1.0 - a) / (gamma(1.0 - a) * gamma(2.0 * a))
                };
                Ok(pre * y.powf(2.0 * a - 1.0) * f)
            }
            BetastrbG | BetastrbF => {
                let b = param;
                let f = gauss_2f1_complement(0.5, b + 0.5, 1.0, z, omz, &o)?;
                let pre = if kind == BetastrbG {
                    2.0 * gamma(b + 0.5) / (sqrt_pi * gamma(b))
                } else {
                    b * x.powf(b)
                };
                Ok(pre * f)
            }
        }
    } else {
        // argument (x−1)^{−2}, complement x(x−2)/(x−1)²
        let (z, omz) = (1.0 / (y * y), x * (x - 2.0) / (y * y));
        match kind {
            BetastrG | BetastrF => {
                let a = param;
                let f = gauss_2f1_complement(0.5, a, 1.5, z, omz, &o)?;
                let common = (2.0 * a - 1.0) * (x * (x - 2.0)).powf(a - 1.0) / y;
                let pre = if kind == BetastrG {
                    2.0 / (gamma(a) * gamma(1.0 - a))
                } else {
                    gamma(1.0 + a) * x.powf(1.0 - a) / (gamma(1.0 - a) * gamma(2.0 * a))
                };
                Ok(pre * common * f)
            }
            BetastrbG | BetastrbF => {
                let b = param;
                let f = gauss_2f1_complement(b + 0.5, b + 0.5, b + 1.0, z, omz, &o)?;
                let pre = if kind == BetastrbG {
                    2.0 * gamma(b + 0.5) / (gamma(b) * gamma(1.0 + b) * gamma(0.5 - b))
                } else {
                    sqrt_pi * x.powf(b) / (gamma(b) * gamma(0.5 - b))
                };
                Ok(pre * y.powf(-2.0 * b - 1.0) * f)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Conjecture scans

/// ₃F₂(a+s/2, a+(s+1)/2, 1/2; a+1/2, a+b+1/2; 1).
pub fn cjmain_series(a: f64, b: f64, s: f64) -> Result<f64> {
    hyp3f2([a + 0.5 * s, a + 0.5 * (s + 1.0), 0.5], [a + 0.5, a + b + 0.5], 1.0, &EvalOptions::default())
}

fn cjmain_prefactor(a: f64, b: f64, s: f64) -> Result<f64> {
    let ln = gamma_ln(b - s)? + gamma_ln(a + 0.5)? + gamma_ln(a + b + 0.5)?
        - gamma_ln(a)?
        - gamma_ln(0.5 - b)?
        - gamma_ln(a + b)?
        - gamma_ln(b - 0.5 * s)?
        - gamma_ln(b + 0.5 * (1.0 - s))?;
    Ok(ln.exp())
}

/// Double-integral candidate for [`cjmain_series`] in the (u, v) variables:
/// ∫∫ u^{a−1}(1−u)^{−1/2} v^{b−1}(1−v)^{−1/2−b} (1+√(u/v))^s.
pub fn cjmain_integral_uv(a: f64, b: f64, s: f64) -> Result<f64> {
    let i = sqrt_ratio_factor(a, b, s)? * beta_fn(a, 0.5) * beta_fn(b, 0.5 - b);
    Ok(cjmain_prefactor(a, b, s)? * i)
}

/// The same candidate after u → u², v → v²:
/// 4∫∫ u^{2a−1}(1−u²)^{−1/2} v^{2b−s−1}(1−v²)^{−1/2−b} (u+v)^s.
pub fn cjmain_integral_squares(a: f64, b: f64, s: f64) -> Result<f64> {
    let o = quad_opts();
    let io = inner_opts();
    let inner = |v: f64| {
        beta_integral(
            2.0 * a,
            0.5,
            |u, _| Ok((1.0 + u).powf(-0.5) * (u + v).powf(s)),
            0.5,
            &kink_breaks(v),
            &io,
        )
    };
    // for s < −2a the inner integral grows like v^{s+2a}; that power goes into the weight
    let k = (s + 2.0 * a).min(0.0);
    let i = beta_integral(
        2.0 * b - s + k,
        0.5 - b,
        |v, _| Ok((1.0 + v).powf(-0.5 - b) * v.powf(-k) * inner(v)?),
        0.5,
        &[1e-6, 1e-4, 1e-3],
        &o,
    )?;
    Ok(4.0 * cjmain_prefactor(a, b, s)? * i)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CjMainPoint {
    pub a: f64,
    pub b: f64,
    /// a = 1/2 or a = 1 − b.
    pub proven: bool,
    pub report: VerificationReport,
    pub s_points: Vec<f64>,
    /// Relative gaps between the series and each double-integral form.
    pub integral_relerr: Vec<[f64; 2]>,
    pub error: Option<String>,
}

impl CjMainPoint {
    pub fn max_integral_relerr(&self) -> f64 {
        self.integral_relerr.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// No violation: the verification passed and both integral forms match.
    pub fn consistent(&self, tol: f64) -> bool {
        self.error.is_none() && self.report.passed() && self.max_integral_relerr() < tol
    }
}

/// Runs the conjectured identity at every grid point (in parallel, child
/// stream i for point i) and compares the ₃F₂ with both integral forms at
/// three interior values of s.
pub fn conjecture_cjmain_scan(grid: &[(f64, f64)], n: usize, rng: &RngState) -> Result<Vec<CjMainPoint>> {
    for &(a, b) in grid {
        positive(a, "a")?;
        if !(b > 0.0 && b < 0.5) {
            return Err(precondition(format!("b must lie in (0, 1/2), got {b}")));
        }
    }
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let spec = sqrt_ratio_spec(a, b).expect("validated");
            let child = rng.child(i as u64);
            let report = verify(&spec, n, &spec.default_s_grid(), &child);
            let (lo, hi) = (-2.0 * a, b);
            let s_points: Vec<f64> = [0.25, 0.5, 0.75].iter().map(|f| lo.max(-3.0) + f * (hi - lo.max(-3.0))).collect();
            let mut integral_relerr = Vec::new();
            let mut error = None;
            for &s in &s_points {
                let r = (|| -> Result<[f64; 2]> {
                    let f = cjmain_series(a, b, s)?;
                    let u = cjmain_integral_uv(a, b, s)?;
                    let q = cjmain_integral_squares(a, b, s)?;
                    Ok([(u - f).abs() / f.abs(), (q - f).abs() / f.abs()])
                })();
                match r {
                    Ok(e) => integral_relerr.push(e),
                    Err(e) => {
                        error = Some(e.to_string());
                        break;
                    }
                }
            }
            CjMainPoint {
                a,
                b,
                proven: is_half(a) || (a - (1.0 - b)).abs() < 1e-12,
                report,
                s_points,
                integral_relerr,
                error,
            }
        })
        .collect();
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjHypRow {
    pub z: f64,
    /// Both sides divided by their common value 2^{2a−1} at z = 0.
    pub lhs: f64,
    pub rhs: f64,
    pub relerr: f64,
}

/// With b = 1/2 − a, compares
/// √π/(Γ(a)Γ(b)) ∫₀¹ y^{2a−1}(1−y)^{b−1}(1−zy)^{−b}₂F₁(a,a;a+1/2;(zy)²) dy
/// against ((z+1)/2)^{2b}(1+z)^{−1}₂F₁(1/2,a;a+1/2;4z/(z+1)²). Equality on (0,1)
/// is equivalent to equality of the laws of B_{a,1/2} + B_{b,1/2}^{−1} and
/// B_{b,b}^{−1}(1 + √(B_{a,1/2}/B_{b,a})) on (1,2), through their densities.
pub fn conjhyp_integral_check(a: f64, z_grid: &[f64]) -> Result<(Vec<ConjHypRow>, f64)> {
    if !(a > 0.0 && a < 0.5) {
        return Err(precondition(format!("a must lie in (0, 1/2), got {a}")));
    }
    let b = 0.5 - a;
    let o = EvalOptions::default();
    let norm = 2f64.powf(2.0 * a - 1.0);
    let pre = std::f64::consts::PI.sqrt() / (gamma(a) * gamma(b));
    let mut rows = Vec::with_capacity(z_grid.len());
    let mut worst: f64 = 0.0;
    for &z in z_grid {
        if !(z > 0.0 && z < 1.0) {
            return Err(domain(format!("z = {z} outside (0,1)")));
        }
        let lhs = pre
            * beta_integral(
                2.0 * a,
                b,
                |y, _| {
                    let zy = z * y;
                    let f = gauss_2f1_complement(a, a, a + 0.5, zy * zy, (1.0 - zy) * (1.0 + zy), &o)?;
                    Ok((-b * (-zy).ln_1p()).exp() * f)
                },
                0.5,
                &[],
                &quad_opts(),
            )?;
        let w = 4.0 * z / ((z + 1.0) * (z + 1.0));
        let omw = ((1.0 - z) / (1.0 + z)).powi(2);
        let rhs = (0.5 * (z + 1.0)).powf(2.0 * b) / (1.0 + z) * gauss_2f1_complement(0.5, a, a + 0.5, w, omw, &o)?;
        let relerr = (lhs - rhs).abs() / rhs.abs();
        worst = worst.max(relerr);
        rows.push(ConjHypRow {
            z,
            lhs: lhs / norm,
            rhs: rhs / norm,
            relerr,
        });
    }
    Ok((rows, worst))
}

/// Total mass of an auxiliary density over (1,2) ∪ (2,∞).
pub fn lemma_mass(kind: LemmaDensity, param: f64, opts: &EvalOptions) -> Result<f64> {
    // (1,2): density ~ (x−1)^{e0} at 1, (2−x)^{e1} at 2
    // and decay x^{−tail−1}
    let (e0, e1, tail) = match kind {
        LemmaDensity::BetastrF => (2.0 * param - 1.0, param - 1.0, 1.0 - param),
        LemmaDensity::BetastrG => (2.0 * param - 1.0, param - 1.0, 2.0 - 2.0 * param),
        LemmaDensity::BetastrbF => (0.0, -param, param),
        LemmaDensity::BetastrbG => (0.0, -param, 2.0 * param),
    };
    let left = beta_integral(
        e0 + 1.0,
        e1 + 1.0,
        |t, omt| {
            let v = lemma_densities(kind, param, 1.0 + t)?;
            Ok(v * t.powf(-e0) * omt.powf(-e1))
        },
        0.5,
        &[],
        opts,
    )?;
    let right_near = integrate_power_left(
        |x| Ok(lemma_densities(kind, param, x)? * (x - 2.0).powf(-e1)),
        e1 + 1.0,
        2.0,
        3.0,
        &[],
        opts,
    )?;
    let right_far = crate::quad::integrate_algebraic_tail(|x| lemma_densities(kind, param, x), 3.0, tail, &[], opts)?;
    Ok(left + right_near + right_far)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_basics() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let k = ks_two_sample(&xs, &xs).unwrap();
        assert_eq!(k.statistic, 0.0);
        assert!((k.threshold_at(0.01) / (2.0 / 100.0f64).sqrt() - 1.6276).abs() < 1e-3);
        assert!(ks_two_sample(&[], &xs).is_err());
        let ys: Vec<f64> = xs.iter().map(|x| x + 1000.0).collect();
        assert_eq!(ks_two_sample(&xs, &ys).unwrap().statistic, 1.0);
    }

    #[test]
    fn ks_calibration_and_power() {
        let rng = RngState::new(42);
        let mut r1 = rng.child(1);
        let mut r2 = rng.child(2);
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| r1.uniform()).collect();
        let ys: Vec<f64> = (0..n).map(|_| r2.uniform()).collect();
        let k = ks_two_sample(&xs, &ys).unwrap();
        assert!(k.statistic < k.threshold_at(0.01));
        let shifted: Vec<f64> = ys.iter().map(|y| y + 0.05).collect();
        let k = ks_two_sample(&xs, &shifted).unwrap();
        assert!(k.statistic > k.threshold_at(0.01));
    }

    #[test]
    fn sqrt_beta_factor_at_one() {
        // 1 + E[√B_{1/2,1/2}] = 1 + 2/π
        let v = sqrt_beta_factor(0.5, 1.0).unwrap();
        assert!((v - (1.0 + 2.0 / std::f64::consts::PI)).abs() < 1e-12);
        assert!((sqrt_beta_factor(0.8, 0.0).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn half_gaussian_second_moment() {
        // E[(√Γ_1 + √Γ_1)²] = 2 + π/2
        let v = half_gaussian_sum_mellin(1.0, 2.0).unwrap();
        assert!((v - (2.0 + std::f64::consts::FRAC_PI_2)).abs() < 1e-11);
    }

    #[test]
    fn transforms_are_one_at_zero() {
        for spec in [theorem_a_spec(0.7).unwrap(), ab_half_spec(0.2).unwrap(), free_spec(1.0, 1.0, 1.0, 1.0).unwrap()] {
            let l = spec.lhs_mellin.as_ref().unwrap()(0.0).unwrap();
            let r = spec.rhs_mellin.as_ref().unwrap()(0.0).unwrap();
            assert!((l - 1.0).abs() < 1e-12 && (r - 1.0).abs() < 1e-10, "{}: {l} {r}", spec.name);
        }
    }

    #[test]
    fn preconditions() {
        assert!(prop_b0_spec(1.0, 0.5, 0.5).is_err());
        assert!(theorem_b_spec(0.5, 0.6).is_err());
        assert!(theorem_b_spec(0.7, 0.2).is_err());
        assert!(free_spec(1.0, 3.0, 1.0, 1.0).is_err());
        assert!(free_spec_complementary(1.0, 3.0, 1.0, 1.0).is_ok());
        assert!(lemma_densities(LemmaDensity::BetastrG, 0.7, 2.0).is_err());
        assert!(ab_half_spec(0.5).is_err());
    }

    #[test]
    fn theorem_b_limit_b_to_half() {
        // b → 1/2 with a = 1/2: the factor approaches E[(1+√B_{1/2,1/2})^s]
        let s = 0.3;
        let v = sqrt_ratio_factor(0.5, 0.4999, s).unwrap();
        let lim = sqrt_beta_factor(0.5, s).unwrap();
        assert!((v / lim - 1.0).abs() < 1e-3, "{v} vs {lim}");
    }

    #[test]
    fn corrupted_spec_fails() {
        let spec = theorem_a_spec(1.0).unwrap().scaled_rhs(1.1);
        let rep = verify(&spec, 20_000, &spec.default_s_grid(), &RngState::new(3));
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(rep.mellin_max_relerr.unwrap() > 1e-3);
    }
}
