//! Numerical probes for complete monotonicity (CM), log-complete
//! monotonicity (LCM), monotonicity, Turán-type bounds and stochastic
//! orderings.
//!
//! Derivatives come from least-squares Chebyshev fits of ln f against ln z on
//! sliding windows. The identity z^n d^n/dz^n = Σ_k s(n,k) D^k with D = z d/dz
//! and s the signed Stirling numbers of the first kind turns the fitted
//! D-derivatives into scale-free quantities z^n f^{(n)}/f, and the noise in
//! each of them is propagated linearly from the fit residuals.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::distributions::{betaprime_cdf, betaprime_pdf, BetaPrimeParams};
use crate::error::{domain, finite, precondition, Error, Result};
use crate::options::EvalOptions;
use crate::quad::{integrate, integrate_algebraic_tail, integrate_power_left, integrate_to_infinity};
use crate::special::{
    expint_e1_scaled, gamma, gamma_ln, gauss_2f1, hermite_h_neg_scaled, macdonald_k0_scaled, mills_ratio,
    mills_ratio_derivs, parabolic_d, tricomi_psi_scaled,
};

/// A real function that may fail numerically.
pub type RealFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    Holds,
    Violated,
    Inconclusive,
}

impl ProbeVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ProbeVerdict::Holds => "holds",
            ProbeVerdict::Violated => "violated",
            ProbeVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of a probe. `sign_table[k][i]` tells whether check k passed at
/// `grid[i]`; for derivative probes k is the derivative order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult {
    pub name: String,
    pub orders_checked: usize,
    pub grid: Vec<f64>,
    pub sign_table: Vec<Vec<bool>>,
    pub first_violation: Option<(usize, f64)>,
    pub verdict: ProbeVerdict,
    pub noise_floor: f64,
    /// Named scalar by-products (bounds, limits, crossing points, …).
    pub metrics: Vec<(String, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Entry {
    Ok,
    Within,
    Beyond,
}

impl ProbeResult {
    /// Every `false` entry counts as a violation.
    pub fn from_table(name: String, grid: Vec<f64>, sign_table: Vec<Vec<bool>>, noise_floor: f64) -> Self {
        let first_violation = sign_table
            .iter()
            .enumerate()
            .find_map(|(k, row)| row.iter().position(|ok| !ok).map(|i| (k, grid[i])));
        let verdict = if first_violation.is_some() {
            ProbeVerdict::Violated
        } else {
            ProbeVerdict::Holds
        };
        ProbeResult {
            name,
            orders_checked: sign_table.len(),
            grid,
            sign_table,
            first_violation,
            verdict,
            noise_floor,
            metrics: Vec::new(),
        }
    }

    fn from_entries(name: String, grid: Vec<f64>, entries: Vec<Vec<Entry>>, noise_floor: f64) -> Self {
        let sign_table: Vec<Vec<bool>> = entries.iter().map(|r| r.iter().map(|e| *e == Entry::Ok).collect()).collect();
        let first_violation = entries
            .iter()
            .enumerate()
            .find_map(|(k, row)| row.iter().position(|e| *e == Entry::Beyond).map(|i| (k, grid[i])));
        let verdict = if first_violation.is_some() {
            ProbeVerdict::Violated
        } else if sign_table.iter().all(|r| r.iter().all(|b| *b)) {
            ProbeVerdict::Holds
        } else {
            ProbeVerdict::Inconclusive
        };
        ProbeResult {
            name,
            orders_checked: entries.len(),
            grid,
            sign_table,
            first_violation,
            verdict,
            noise_floor,
            metrics: Vec::new(),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_metric(mut self, key: impl Into<String>, value: f64) -> Self {
        self.metrics.push((key.into(), value));
        self
    }

    pub fn metric(&self, key: &str) -> Option<f64> {
        self.metrics.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn holds(&self) -> bool {
        self.verdict == ProbeVerdict::Holds
    }
}

/// Fit and noise settings shared by the probes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    pub degree: usize,
    pub window: usize,
    /// Multiplies every noise threshold.
    pub noise_scale: f64,
    /// A failed check is a violation only beyond this multiple of the threshold.
    pub violation_margin: f64,
    /// Relative accuracy assumed for function values in monotonicity checks.
    pub value_rel_noise: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            degree: 12,
            window: 25,
            noise_scale: 1.0,
            violation_margin: 10.0,
            value_rel_noise: 1e-10,
        }
    }
}

impl ProbeConfig {
    pub fn with_noise_scale(mut self, s: f64) -> Self {
        self.noise_scale = s;
        self
    }
}

/// n points from lo to hi, evenly spaced in log scale.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (l, h) = (lo.ln(), hi.ln());
    (0..n).map(|i| (l + (h - l) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// n evenly spaced points from lo to hi.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// The grid used for the positive-axis probes: 120 points over [1e-2, 50].
pub fn default_z_grid() -> Vec<f64> {
    geometric_grid(1e-2, 50.0, 120)
}

/// Signed Stirling numbers of the first kind s(n,k), n,k ≤ m.
pub fn stirling_first(m: usize) -> Vec<Vec<f64>> {
    let mut s = vec![vec![0.0; m + 1]; m + 1];
    s[0][0] = 1.0;
    for n in 0..m {
        for k in 1..=n + 1 {
            s[n + 1][k] = s[n][k - 1] - n as f64 * s[n][k];
        }
    }
    s
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Complete Bell polynomials B_0..B_n at x[1..=n] (x[0] ignored).
fn bell(x: &[f64], n: usize) -> Vec<f64> {
    let mut b = vec![0.0; n + 1];
    b[0] = 1.0;
    for m in 0..n {
        b[m + 1] = (0..=m).map(|j| binomial(m, j) * b[m - j] * x[j + 1]).sum();
    }
    b
}

/// T_m^{(k)}(ξ) for m ≤ deg, k ≤ kmax.
fn chebyshev_derivatives(xi: f64, deg: usize, kmax: usize) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; deg + 1]; kmax + 1];
    for k in 0..=kmax {
        for m in 0..=deg {
            d[k][m] = match m {
                0 => {
                    if k == 0 {
                        1.0
                    } else {
                        0.0
                    }
                }
                1 => match k {
                    0 => xi,
                    1 => 1.0,
                    _ => 0.0,
                },
                _ => {
                    let lower = if k > 0 { 2.0 * k as f64 * d[k - 1][m - 1] } else { 0.0 };
                    2.0 * xi * d[k][m - 1] + lower - d[k][m - 2]
                }
            };
        }
    }
    d
}

// The fit of this much lower degree serves as a truncation-error reference.
const REF_DROP: usize = 2;

/// Local fit around one grid point: D^k h at the point and the linear
/// weights mapping window data to each of them.
struct LocalFit {
    x: Vec<f64>,
    w: Vec<DVector<f64>>,
    sigma: f64,
}

fn local_fit(u: &[f64], h: &[f64], center: usize, kmax: usize, deg: usize, cfg: &ProbeConfig) -> Result<LocalFit> {
    let n = u.len();
    let win = cfg.window;
    let start = center.saturating_sub(win / 2).min(n - win);
    let (lo, hi) = (u[start], u[start + win - 1]);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let a = DMatrix::from_fn(win, deg + 1, |r, m| chebyshev_derivatives((u[start + r] - mid) / half, m, 0)[0][m]);
    let pinv = a
        .clone()
        .svd(true, true)
        .pseudo_inverse(1e-13)
        .map_err(|e| Error::FitFailure(e.to_string()))?;
    let y = DVector::from_iterator(win, h[start..start + win].iter().copied());
    let coef = &pinv * &y;
    let resid = &y - &a * &coef;
    let dof = (win - deg - 1).max(1) as f64;
    let scale = y.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let sigma = (resid.norm_squared() / dof).sqrt().max(1e-15 * scale);
    if !sigma.is_finite() {
        return Err(Error::FitFailure("non-finite residual".into()));
    }
    let d = chebyshev_derivatives((u[center] - mid) / half, deg, kmax);
    let mut x = Vec::with_capacity(kmax + 1);
    let mut w = Vec::with_capacity(kmax + 1);
    for (k, dk) in d.iter().enumerate() {
        let dv = DVector::from_column_slice(dk) * half.powi(-(k as i32));
        let wk = pinv.transpose() * dv;
        x.push(wk.dot(&y));
        w.push(wk);
    }
    Ok(LocalFit { x, w, sigma })
}

fn validate_grid(z_grid: &[f64], positive: bool, cfg: &ProbeConfig) -> Result<()> {
    if z_grid.len() < cfg.window {
        return Err(precondition(format!("grid needs at least {} points", cfg.window)));
    }
    if cfg.window <= cfg.degree + 1 {
        return Err(precondition("window must exceed degree + 1"));
    }
    if z_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(precondition("grid must be strictly increasing"));
    }
    if positive && !(z_grid[0] > 0.0) {
        return Err(precondition("grid must be positive"));
    }
    Ok(())
}

fn log_values<F>(f: &F, z_grid: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    z_grid
        .par_iter()
        .map(|&z| {
            let v = f(z)?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::FitFailure(format!("function must be positive and finite, got {v} at {z}")));
            }
            Ok(v.ln())
        })
        .collect()
}

fn classify(v: f64, threshold: f64, margin: f64) -> Entry {
    if v >= -threshold {
        Entry::Ok
    } else if v >= -margin * threshold {
        Entry::Within
    } else {
        Entry::Beyond
    }
}

/// Checks (−1)ⁿ f⁽ⁿ⁾ ≥ 0 for n = 1..=max_order on a positive grid.
pub fn cm_probe<F>(f: &F, z_grid: &[f64], max_order: usize) -> Result<ProbeResult>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    cm_probe_with(f, z_grid, max_order, &ProbeConfig::default())
}

pub fn cm_probe_with<F>(f: &F, z_grid: &[f64], max_order: usize, cfg: &ProbeConfig) -> Result<ProbeResult>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    if max_order == 0 || max_order > 10 || max_order > cfg.degree {
        return Err(precondition(format!("max_order must lie in 1..=10, got {max_order}")));
    }
    validate_grid(z_grid, true, cfg)?;
    let h = log_values(f, z_grid)?;
    let u: Vec<f64> = z_grid.iter().map(|z| z.ln()).collect();
    let s = stirling_first(max_order);
    let cols: Vec<(Vec<Entry>, f64)> = (0..u.len())
        .into_par_iter()
        .map(|i| -> Result<(Vec<Entry>, f64)> {
            let fit = local_fit(&u, &h, i, max_order, cfg.degree, cfg)?;
            let b = bell(&fit.x, max_order);
            let coarse = local_fit(&u, &h, i, max_order, cfg.degree - REF_DROP, cfg)?;
            let bc = bell(&coarse.x, max_order);
            let mut out = Vec::with_capacity(max_order);
            for n in 1..=max_order {
                // Q_n = z^n f^{(n)}/f
                let q: f64 = (1..=n).map(|k| s[n][k] * b[k]).sum();
                let qc: f64 = (1..=n).map(|k| s[n][k] * bc[k]).sum();
                let mut grad = DVector::zeros(cfg.window);
                for j in 1..=n {
                    let dq: f64 = (j..=n).map(|k| s[n][k] * binomial(k, j) * b[k - j]).sum();
                    grad += &fit.w[j] * dq;
                }
                let threshold = cfg.noise_scale * (3.0 * fit.sigma * grad.norm() + (q - qc).abs());
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                out.push(classify(sign * q, threshold, cfg.violation_margin));
            }
            Ok((out, fit.sigma))
        })
        .collect::<Result<_>>()?;
    let noise = cols.iter().fold(0.0f64, |m, c| m.max(c.1));
    let entries: Vec<Vec<Entry>> = (0..max_order).map(|n| cols.iter().map(|c| c.0[n]).collect()).collect();
    Ok(ProbeResult::from_entries("cm".into(), z_grid.to_vec(), entries, noise))
}

/// CM check of −(log f)′ up to `max_order`; row n of the table is derivative
/// order n of −(log f)′.
pub fn lcm_probe<F>(f: &F, z_grid: &[f64], max_order: usize) -> Result<ProbeResult>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    lcm_probe_with(f, z_grid, max_order, &ProbeConfig::default())
}

pub fn lcm_probe_with<F>(f: &F, z_grid: &[f64], max_order: usize, cfg: &ProbeConfig) -> Result<ProbeResult>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    if max_order > 10 || max_order + 1 > cfg.degree {
        return Err(precondition(format!("max_order must lie in 0..=10, got {max_order}")));
    }
    validate_grid(z_grid, true, cfg)?;
    let h = log_values(f, z_grid)?;
    let u: Vec<f64> = z_grid.iter().map(|z| z.ln()).collect();
    let s = stirling_first(max_order + 1);
    let cols: Vec<(Vec<Entry>, f64)> = (0..u.len())
        .into_par_iter()
        .map(|i| -> Result<(Vec<Entry>, f64)> {
            let fit = local_fit(&u, &h, i, max_order + 1, cfg.degree, cfg)?;
            let coarse = local_fit(&u, &h, i, max_order + 1, cfg.degree - REF_DROP, cfg)?;
            let mut out = Vec::with_capacity(max_order + 1);
            for n in 0..=max_order {
                // (−1)^n z^{n+1} g^{(n)} with g = −(ln f)′
                let m = n + 1;
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let v: f64 = sign * (1..=m).map(|k| s[m][k] * fit.x[k]).sum::<f64>();
                let vc: f64 = sign * (1..=m).map(|k| s[m][k] * coarse.x[k]).sum::<f64>();
                let mut grad = DVector::zeros(cfg.window);
                for k in 1..=m {
                    grad += &fit.w[k] * s[m][k];
                }
                let threshold = cfg.noise_scale * (3.0 * fit.sigma * grad.norm() + (v - vc).abs());
                out.push(classify(v, threshold, cfg.violation_margin));
            }
            Ok((out, fit.sigma))
        })
        .collect::<Result<_>>()?;
    let noise = cols.iter().fold(0.0f64, |m, c| m.max(c.1));
    let entries: Vec<Vec<Entry>> = (0..=max_order).map(|n| cols.iter().map(|c| c.0[n]).collect()).collect();
    Ok(ProbeResult::from_entries("lcm".into(), z_grid.to_vec(), entries, noise))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

fn values<F>(f: &F, grid: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    grid.par_iter()
        .map(|&z| {
            finite(f(z)?, "probed function")
        })
        .collect()
}

/// Strict decrease of f along the grid, with a relative noise floor.
pub fn monotone_probe<F>(f: &F, grid: &[f64]) -> Result<ProbeResult>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    monotone_probe_with(f, grid, Direction::Decreasing, &ProbeConfig::default())
}

pub fn monotone_probe_with<F>(f: &F, grid: &[f64], dir: Direction, cfg: &ProbeConfig) -> Result<ProbeResult>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    if grid.len() < 2 || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(precondition("monotonicity needs an increasing grid of at least two points"));
    }
    let y = values(f, grid)?;
    let sign = match dir {
        Direction::Decreasing => 1.0,
        Direction::Increasing => -1.0,
    };
    let mut noise: f64 = 0.0;
    let row: Vec<Entry> = y
        .windows(2)
        .map(|w| {
            let t = cfg.noise_scale * cfg.value_rel_noise * w[0].abs().max(w[1].abs());
            noise = noise.max(t);
            classify(sign * (w[0] - w[1]), t, cfg.violation_margin)
        })
        .collect();
    let name = match dir {
        Direction::Decreasing => "decreasing",
        Direction::Increasing => "increasing",
    };
    Ok(ProbeResult::from_entries(name.into(), grid[..grid.len() - 1].to_vec(), vec![row], noise))
}

/// Unimodality along the grid: the significant increments change sign at
/// most once, in the stated order. The turning point is reported as the
/// `mode` metric.
pub fn unimodal_probe<F>(f: &F, grid: &[f64], up_then_down: bool, cfg: &ProbeConfig) -> Result<ProbeResult>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    if grid.len() < 3 || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(precondition("unimodality needs an increasing grid of at least three points"));
    }
    let y = values(f, grid)?;
    let first = if up_then_down { 1.0 } else { -1.0 };
    let mut turned = false;
    let mut mode = f64::NAN;
    let mut row = Vec::with_capacity(y.len() - 1);
    let mut noise: f64 = 0.0;
    for (i, w) in y.windows(2).enumerate() {
        let t = cfg.noise_scale * cfg.value_rel_noise * w[0].abs().max(w[1].abs());
        noise = noise.max(t);
        let d = first * (w[1] - w[0]);
        let ok = if d > t {
            !turned
        } else if d < -t {
            if !turned {
                turned = true;
                mode = grid[i];
            }
            true
        } else {
            true
        };
        row.push(ok);
    }
    let name = if up_then_down { "up-down" } else { "down-up" };
    let mut r = ProbeResult::from_table(name.into(), grid[..grid.len() - 1].to_vec(), vec![row], noise);
    if !turned {
        r.verdict = ProbeVerdict::Inconclusive;
    }
    Ok(r.with_metric("mode", mode))
}

// Ratio builders.

fn positive(v: f64, what: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{what} must be positive, got {v}")))
    }
}

fn psi_s(a: f64, c: f64, z: f64) -> Result<f64> {
    tricomi_psi_scaled(a, c, z, &EvalOptions::default())
}

fn pos_z(z: f64) -> Result<()> {
    if z > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("ratio evaluated at z = {z} ≤ 0")))
    }
}

/// Ψ(a,c,z)/Ψ(a,c′,z), c′ < c < 1.
pub fn psi_cc(a: f64, c: f64, c_prime: f64) -> Result<RealFn> {
    positive(a, "a")?;
    if !(c_prime < c && c < 1.0) {
        return Err(domain(format!("needs c′ < c < 1, got c={c}, c′={c_prime}")));
    }
    Ok(Arc::new(move |z| {
        pos_z(z)?;
        Ok(psi_s(a, c, z)? / psi_s(a, c_prime, z)?)
    }))
}

/// Ψ(a,c,z)²/Ψ(2a,c,z).
pub fn psi_doubling(a: f64, c: f64) -> Result<RealFn> {
    positive(a, "a")?;
    if !c.is_finite() {
        return Err(domain("c must be finite"));
    }
    Ok(Arc::new(move |z| {
        pos_z(z)?;
        let p = psi_s(a, c, z)?;
        Ok(p * p / psi_s(2.0 * a, c, z)?)
    }))
}

/// Ψ(a+c−c′,c,z)/Ψ(a,c′,z).
pub fn psi_kumma(a: f64, c: f64, c_prime: f64) -> Result<RealFn> {
    positive(a, "a")?;
    positive(a + c - c_prime, "a + c − c′")?;
    Ok(Arc::new(move |z| {
        pos_z(z)?;
        Ok(z.powf(c_prime - c) * psi_s(a + c - c_prime, c, z)? / psi_s(a, c_prime, z)?)
    }))
}

fn herm(nu: f64, z: f64) -> Result<(f64, f64)> {
    hermite_h_neg_scaled(nu, z, &EvalOptions::default())
}

/// H₋ν(√z)²/H₋₂ν(√z).
pub fn hermite_doubling(nu: f64) -> Result<RealFn> {
    positive(nu, "ν")?;
    Ok(Arc::new(move |z| {
        pos_z(z)?;
        let r = z.sqrt();
        let (h1, _) = herm(nu, r)?;
        let (h2, _) = herm(2.0 * nu, r)?;
        Ok(h1 * h1 / h2)
    }))
}

/// K₀(z)²/E₁(2z).
pub fn k0_e1() -> RealFn {
    Arc::new(|z| {
        pos_z(z)?;
        let o = EvalOptions::default();
        let k = macdonald_k0_scaled(z, &o)?;
        Ok(k * k / expint_e1_scaled(2.0 * z, &o)?)
    })
}

/// H₋ν₋c(z)²/(H₋ν(z)H₋ν₋₂c(z)) on ℝ.
pub fn turan_hermite(nu: f64, c: f64) -> Result<RealFn> {
    positive(nu, "ν")?;
    positive(c, "c")?;
    Ok(Arc::new(move |z| {
        let (m, e1) = herm(nu + c, z)?;
        let (p, e2) = herm(nu, z)?;
        let (q, e3) = herm(nu + 2.0 * c, z)?;
        Ok(m * m / (p * q) * (2.0 * e1 - e2 - e3).exp())
    }))
}

/// Ψ(a,c−2λ,z)Ψ(a+2λ,c,z)/Ψ(a+λ,c−λ,z)².
pub fn turan_psi(a: f64, c: f64, lambda: f64) -> Result<RealFn> {
    positive(a, "a")?;
    positive(lambda, "λ")?;
    if !(c < 1.0) {
        return Err(domain(format!("needs c < 1, got {c}")));
    }
    Ok(Arc::new(move |z| {
        pos_z(z)?;
        let m = psi_s(a + lambda, c - lambda, z)?;
        Ok(psi_s(a, c - 2.0 * lambda, z)? * psi_s(a + 2.0 * lambda, c, z)? / (m * m))
    }))
}

/// −(r⁽ⁿ⁾(w))²/r⁽²ⁿ⁺¹⁾(w) with w = √z, or w = z when `sqrt` is false.
pub fn mills_doubling(n: usize, sqrt: bool) -> RealFn {
    Arc::new(move |z| {
        pos_z(z)?;
        let w = if sqrt { z.sqrt() } else { z };
        let d = mills_ratio_derivs(2 * n + 1, w);
        Ok(-(d[n] * d[n]) / d[2 * n + 1])
    })
}

/// Γ(ν/2)²Γ(2ν)/(2Γ(ν)³), the z → 0 value of H₋ν(√z)²/H₋₂ν(√z).
pub fn hermite_doubling_upper(nu: f64) -> f64 {
    (2.0 * gamma_ln(0.5 * nu).unwrap_or(f64::NAN) + gamma_ln(2.0 * nu).unwrap_or(f64::NAN)
        - 3.0 * gamma_ln(nu).unwrap_or(f64::NAN))
    .exp()
        / 2.0
}

/// Γ(ν)Γ(ν+2c)/Γ(ν+c)².
pub fn turan_hermite_upper(nu: f64, c: f64) -> f64 {
    gamma(nu) * gamma(nu + 2.0 * c) / (gamma(nu + c) * gamma(nu + c))
}

/// Γ(1−c)Γ(1−c+2λ)/Γ(1−c+λ)².
pub fn turan_psi_upper(c: f64, lambda: f64) -> f64 {
    let b = 1.0 - c;
    gamma(b) * gamma(b + 2.0 * lambda) / (gamma(b + lambda) * gamma(b + lambda))
}

/// Strict bounds lower < f < upper on the grid. A point is confirmed inside
/// when its distance to the nearer bound exceeds the noise floor and
/// confirmed outside when it lies beyond a bound by more than ten floors;
/// anything between leaves the verdict inconclusive. The closeness of f to
/// the bounds at the grid ends is reported as the metrics `rel_gap_first`
/// and `rel_gap_last` (against the nearer bound).
pub fn bounds_probe<F>(f: &F, grid: &[f64], lower: f64, upper: f64, cfg: &ProbeConfig) -> Result<ProbeResult>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    let y = values(f, grid)?;
    let mut noise: f64 = 0.0;
    let row: Vec<Entry> = y
        .iter()
        .map(|&v| {
            let t = cfg.noise_scale * cfg.value_rel_noise * v.abs();
            noise = noise.max(t);
            let d = (v - lower).min(upper - v);
            if d > t {
                Entry::Ok
            } else if d >= -cfg.violation_margin * t {
                Entry::Within
            } else {
                Entry::Beyond
            }
        })
        .collect();
    let gap = |v: f64| ((v - lower) / lower).abs().min(((upper - v) / upper).abs());
    let first = gap(y[0]);
    let last = gap(*y.last().expect("non-empty"));
    Ok(ProbeResult::from_entries("bounds".into(), grid.to_vec(), vec![row], noise)
        .with_metric("lower", lower)
        .with_metric("upper", upper)
        .with_metric("rel_gap_first", first)
        .with_metric("rel_gap_last", last))
}

/// Checks that f/g non-decreasing on `support` implies that the ratios of
/// Laplace transforms (row 0) and of generalized Stieltjes transforms
/// ∫f(x)(1+xz)^{−μ}dx (row 1) are non-increasing on `z_grid`. When the
/// density ratio is not monotone the verdict is inconclusive and nothing is
/// checked.
pub fn ltmon_property_test<F, G>(f_pdf: &F, g_pdf: &G, support: (f64, f64), mu: f64, z_grid: &[f64]) -> Result<ProbeResult>
where
    F: Fn(f64) -> Result<f64> + Sync + ?Sized,
    G: Fn(f64) -> Result<f64> + Sync + ?Sized,
{
    let (lo, hi) = support;
    if !(lo >= 0.0 && hi > lo) {
        return Err(precondition(format!("support must be a subinterval of (0,∞), got ({lo},{hi})")));
    }
    positive(mu, "μ")?;
    if z_grid.len() < 2 || z_grid.windows(2).any(|w| !(w[1] > w[0])) || !(z_grid[0] > 0.0) {
        return Err(precondition("z grid must be positive and increasing"));
    }
    // Precondition on a grid of the support.
    let top = if hi.is_finite() { hi } else { lo + 50.0 };
    let xs = uniform_grid(lo, top, 202);
    let ratios: Vec<f64> = xs[1..201].iter().map(|&x| Ok(f_pdf(x)? / g_pdf(x)?)).collect::<Result<_>>()?;
    let monotone = ratios.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12) - 1e-300);
    if !monotone {
        return Ok(ProbeResult {
            name: "ltmon".into(),
            orders_checked: 0,
            grid: z_grid.to_vec(),
            sign_table: Vec::new(),
            first_violation: None,
            verdict: ProbeVerdict::Inconclusive,
            noise_floor: 0.0,
            metrics: vec![("precondition".into(), 0.0)],
        });
    }
    let o = EvalOptions::default().with_rel_tol(1e-11);
    let transform = |pdf: &(dyn Fn(f64) -> Result<f64> + Sync), kernel: &(dyn Fn(f64) -> f64 + Sync)| -> Result<f64> {
        if hi.is_finite() {
            integrate(|x| Ok(pdf(x)? * kernel(x)), lo, hi, &o)
        } else {
            integrate_to_infinity(|x| Ok(pdf(x)? * kernel(x)), lo, &[lo + 1.0, lo + 10.0], &o)
        }
    };
    let rows: Vec<(f64, f64)> = z_grid
        .par_iter()
        .map(|&z| -> Result<(f64, f64)> {
            let lap = |x: f64| (-z * x).exp();
            let sti = |x: f64| (1.0 + x * z).powf(-mu);
            let fl = |x: f64| f_pdf(x);
            let gl = |x: f64| g_pdf(x);
            let l = transform(&fl, &lap)? / transform(&gl, &lap)?;
            let s = transform(&fl, &sti)? / transform(&gl, &sti)?;
            Ok((l, s))
        })
        .collect::<Result<_>>()?;
    let check = |v: &[f64]| -> Vec<bool> { v.windows(2).map(|w| w[1] <= w[0] * (1.0 + 1e-9)).collect() };
    let l: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let s: Vec<f64> = rows.iter().map(|r| r.1).collect();
    Ok(ProbeResult::from_table(
        "ltmon".into(),
        z_grid[..z_grid.len() - 1].to_vec(),
        vec![check(&l), check(&s)],
        1e-9,
    )
    .with_metric("precondition", 1.0))
}

/// Γ(a+b)²/(Γ(2a+b)Γ(b)), the x → 0 value of the density ratio in `stoo_check`.
pub fn stoo_lambda(a: f64, b: f64) -> f64 {
    (2.0 * gamma_ln(a + b).unwrap_or(f64::NAN) - gamma_ln(2.0 * a + b).unwrap_or(f64::NAN) - gamma_ln(b).unwrap_or(f64::NAN)).exp()
}

/// 4^a Γ(a+1/2)Γ(a+b)/(√π Γ(2a+b)), its x → ∞ value.
pub fn stoo_big_lambda(a: f64, b: f64) -> f64 {
    (a * 4f64.ln() + gamma_ln(a + 0.5).unwrap_or(f64::NAN) + gamma_ln(a + b).unwrap_or(f64::NAN)
        - 0.5 * std::f64::consts::PI.ln()
        - gamma_ln(2.0 * a + b).unwrap_or(f64::NAN))
    .exp()
}

/// Density of B′_{a,b} + B′_{a,b} over that of B′_{2a,b}:
/// λ(1+z)^{2a}₂F₁(1/2−b, a; a+1/2; z²) with z = x/(x+2).
pub fn stoo_density_ratio(a: f64, b: f64, x: f64) -> Result<f64> {
    let z = x / (x + 2.0);
    Ok(stoo_lambda(a, b) * (1.0 + z).powf(2.0 * a) * gauss_2f1(0.5 - b, a, a + 0.5, z * z, &EvalOptions::default())?)
}

/// P[B′_{a,b} + B′_{a,b} > x].
fn stoo_sum_survival(a: f64, b: f64, x: f64) -> Result<f64> {
    let o = EvalOptions::default().with_rel_tol(1e-11);
    let p2 = BetaPrimeParams::new(2.0 * a, b)?;
    let dens = |u: f64| -> Result<f64> { Ok(stoo_density_ratio(a, b, u)? * betaprime_pdf(p2, u)?) };
    if x <= 1.0 {
        // ∫₀ˣ with the u^{2a−1} factor taken into the substitution
        let head = integrate_power_left(
            |u| {
                if u == 0.0 {
                    return Ok(0.0);
                }
                Ok(dens(u)? * u.powf(1.0 - 2.0 * a))
            },
            2.0 * a,
            0.0,
            x,
            &[],
            &o,
        )?;
        Ok(1.0 - head)
    } else {
        integrate_algebraic_tail(dens, x, b, &[2.0 * x, 10.0 * x], &o)
    }
}

/// Single-crossing and stochastic-dominance check of B′_{a,b} + B′_{a,b}
/// against B′_{2a,b}. Row 0 holds P[sum > x] ≥ P[B′_{2a,b} > x] at each x.
/// The verdict is `Holds` when dominance holds on the whole grid. Sign
/// changes of the density difference are located by bisection and reported
/// as `crossing_k` metrics, together with `lambda`, `Lambda` and `crossings`.
pub fn stoo_check(a: f64, b: f64, x_grid: &[f64]) -> Result<ProbeResult> {
    positive(a, "a")?;
    positive(b, "b")?;
    if x_grid.len() < 2 || x_grid.windows(2).any(|w| !(w[1] > w[0])) || !(x_grid[0] > 0.0) {
        return Err(precondition("x grid must be positive and increasing"));
    }
    let p2 = BetaPrimeParams::new(2.0 * a, b)?;
    let diff = |x: f64| -> Result<f64> { Ok(stoo_density_ratio(a, b, x)? - 1.0) };
    let d: Vec<f64> = x_grid.iter().map(|&x| diff(x)).collect::<Result<_>>()?;
    let mut crossings = Vec::new();
    for i in 1..d.len() {
        if d[i - 1].signum() != d[i].signum() && d[i - 1] != 0.0 {
            let (mut lo, mut hi) = (x_grid[i - 1], x_grid[i]);
            let s_lo = d[i - 1].signum();
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if diff(mid)?.signum() == s_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            crossings.push(0.5 * (lo + hi));
        }
    }
    let row: Vec<bool> = x_grid
        .par_iter()
        .map(|&x| -> Result<bool> {
            let s_sum = stoo_sum_survival(a, b, x)?;
            // P[B′_{2a,b} > x] = P[B′_{b,2a} < 1/x]
            let s_2a = betaprime_cdf(BetaPrimeParams::new(b, 2.0 * a)?, 1.0 / x, &EvalOptions::default())?;
            Ok(s_sum >= s_2a * (1.0 - 1e-8) - 1e-12)
        })
        .collect::<Result<_>>()?;
    let _ = p2;
    let mut r = ProbeResult::from_table(format!("stoo(a={a},b={b})"), x_grid.to_vec(), vec![row], 1e-8)
        .with_metric("lambda", stoo_lambda(a, b))
        .with_metric("Lambda", stoo_big_lambda(a, b))
        .with_metric("crossings", crossings.len() as f64);
    for (k, c) in crossings.iter().enumerate() {
        r = r.with_metric(format!("crossing_{}", k + 1), *c);
    }
    Ok(r)
}

/// One cell of the doubling-ratio CM scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub a: f64,
    pub c: f64,
    /// The verdict known from proven results, when there is one.
    pub expected: Option<ProbeVerdict>,
    pub result: ProbeResult,
}

/// Verdict known for Ψ(a,c,z)²/Ψ(2a,c,z): CM when c ∈ [1/2,1] and
/// (a,c) = (1/2,1/2) or a = c, not CM when c < 0.
pub fn psi_doubling_known(a: f64, c: f64) -> Option<ProbeVerdict> {
    if c < 0.0 {
        Some(ProbeVerdict::Violated)
    } else if (0.5..=1.0).contains(&c) && ((a == 0.5 && c == 0.5) || a == c) {
        Some(ProbeVerdict::Holds)
    } else {
        None
    }
}

/// cm_probe of Ψ(a,c,z)²/Ψ(2a,c,z) over a × c grids, reported only.
pub fn conjecture_cmcj_scan(a_grid: &[f64], c_grid: &[f64], z_grid: &[f64], max_order: usize) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for &a in a_grid {
        for &c in c_grid {
            let f = psi_doubling(a, c)?;
            let result = cm_probe(&*f, z_grid, max_order)?.named(format!("cmcj(a={a},c={c})"));
            rows.push(ScanRow {
                a,
                c,
                expected: psi_doubling_known(a, c),
                result,
            });
        }
    }
    Ok(rows)
}

/// cm_probe of Ψ(a+c−c′,c,z)/Ψ(a,c′,z) for c′ < c < 1, reported only.
pub fn kumma_scan(a_grid: &[f64], pairs: &[(f64, f64)], z_grid: &[f64], max_order: usize) -> Result<Vec<ProbeResult>> {
    let mut out = Vec::new();
    for &a in a_grid {
        for &(c, cp) in pairs {
            let f = psi_kumma(a, c, cp)?;
            out.push(cm_probe(&*f, z_grid, max_order)?.named(format!("kumma(a={a},c={c},c'={cp})")));
        }
    }
    Ok(out)
}

/// Shape properties of Mill's ratio r: monotonicity and unimodality of
/// x^α r(x) and x^α r′(x), Sampford's bound, convexity of 1/r with the
/// underlying Turán ratio, and CM/LCM of −(r⁽ⁿ⁾)²/r⁽²ⁿ⁺¹⁾ at √z. The last
/// entries (`cmmi-*`) drop the square root and are exploratory.
pub fn mills_suite() -> Result<Vec<ProbeResult>> {
    let cfg = ProbeConfig::default();
    let xs = geometric_grid(1e-2, 50.0, 400);
    let mut out = Vec::new();
    let pow_r = |alpha: f64| move |x: f64| Ok(x.powf(alpha) * mills_ratio(x));
    let pow_dr = |alpha: f64| move |x: f64| Ok(x.powf(alpha) * mills_ratio_derivs(1, x)[1]);
    out.push(monotone_probe_with(&pow_r(0.0), &xs, Direction::Decreasing, &cfg)?.named("barr-a(alpha=0)"));
    out.push(monotone_probe_with(&pow_r(1.0), &xs, Direction::Increasing, &cfg)?.named("barr-a(alpha=1)"));
    out.push(unimodal_probe(&pow_r(0.5), &xs, true, &cfg)?.named("barr-a(alpha=0.5)"));
    out.push(monotone_probe_with(&pow_dr(0.0), &xs, Direction::Increasing, &cfg)?.named("barr-b(alpha=0)"));
    out.push(monotone_probe_with(&pow_dr(2.0), &xs, Direction::Decreasing, &cfg)?.named("barr-b(alpha=2)"));
    out.push(unimodal_probe(&pow_dr(1.0), &xs, false, &cfg)?.named("barr-b(alpha=1)"));

    let sx = uniform_grid(-1.0, 30.0, 400);
    let samp: Vec<bool> = sx[1..]
        .iter()
        .map(|&x| mills_ratio(x) < 4.0 / (3.0 * x + (x * x + 8.0).sqrt()))
        .collect();
    out.push(ProbeResult::from_table("sampford".into(), sx[1..].to_vec(), vec![samp], 0.0));

    let cx = uniform_grid(-10.0, 10.0, 201);
    let convex: Vec<bool> = cx
        .iter()
        .map(|&x| {
            let d = mills_ratio_derivs(2, x);
            2.0 * d[1] * d[1] / (d[0] * d[2]) > 1.0
        })
        .collect();
    let o = EvalOptions::default();
    let turan: Vec<bool> = cx
        .iter()
        .map(|&x| -> Result<bool> {
            let d2 = parabolic_d(-2.0, x, &o)?;
            Ok(d2 * d2 / (parabolic_d(-1.0, x, &o)? * parabolic_d(-3.0, x, &o)?) > 1.0)
        })
        .collect::<Result<_>>()?;
    out.push(ProbeResult::from_table("inverse-convex".into(), cx, vec![convex, turan], 0.0));

    let zs = default_z_grid();
    for n in 0..3 {
        let f = mills_doubling(n, true);
        out.push(cm_probe(&*f, &zs, 6)?.named(format!("cmmill-cm(n={n})")));
    }
    for n in 0..2 {
        let f = mills_doubling(n, true);
        out.push(lcm_probe(&*f, &zs, 5)?.named(format!("cmmill-lcm(n={n})")));
    }
    for n in 0..3 {
        let f = mills_doubling(n, false);
        out.push(cm_probe(&*f, &zs, 6)?.named(format!("cmmi-cm(n={n})")));
    }
    Ok(out)
}
