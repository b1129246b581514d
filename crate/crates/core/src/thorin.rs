//! Thorin measure of the beta prime law B′_{a,x} for 0 < a ≤ 1.
//!
//! For a < 1 everything flows from the ratio
//! f(t) = ∫₀¹ u^{−a}(1−u)^{a+x−1}e^{tu}du / ∫₀^∞ u^{−a}(1+u)^{a+x−1}e^{−tu}du,
//! an increasing bijection of (0,∞), through
//! P[G ≤ t] = sin(πa)/(πa) ∫₀^f du/(u² + 2cos(πa)u + 1).
//! The case a = 1 goes through the Frullani-type integral g_x instead.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::cm_probes::ProbeResult;
use crate::error::{domain, precondition, Result};
use crate::options::EvalOptions;
use crate::quad::{beta_integral, integrate_power_left, integrate_to_infinity};
use crate::special::{cos_pi, gamma_ln, kummer_phi, sin_pi, tricomi_psi, tricomi_psi_scaled};

/// Shape parameters of the Thorin variable G_{a,x}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThorinParams {
    pub a: f64,
    pub x: f64,
}

impl ThorinParams {
    pub fn new(a: f64, x: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 1.0) {
            return Err(domain(format!("Thorin parameter a must lie in (0,1], got {a}")));
        }
        if !(x > 0.0 && x.is_finite()) {
            return Err(domain(format!("Thorin parameter x must be positive, got {x}")));
        }
        Ok(ThorinParams { a, x })
    }

    fn require_generic(&self) -> Result<()> {
        if self.a >= 1.0 {
            return Err(precondition("the ratio f_{a,x} needs a < 1; use the Frullani form at a = 1"));
        }
        Ok(())
    }
}

fn positive_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("Thorin quantities need t > 0, got {t}")))
    }
}

fn opts() -> EvalOptions {
    EvalOptions::default()
}

/// ln f_{a,x}(t). The numerator is carried as e^{−t}·∫ and the denominator
/// as t^{a−1}Γ(1−a)·t^{1−a}Ψ(1−a, 1+x, t), so nothing overflows for large t.
pub fn ln_f_ax(p: ThorinParams, t: f64) -> Result<f64> {
    p.require_generic()?;
    positive_t(t)?;
    let (a, x) = (p.a, p.x);
    let o = opts();
    // the integrand concentrates within ~1/t of s = 1
    let breaks: Vec<f64> = if t > 10.0 {
        [40.0, 10.0, 1.0].iter().map(|k| 1.0 - k / t).collect()
    } else {
        Vec::new()
    };
    let num = beta_integral(1.0 - a, a + x, |_, omu| Ok((-t * omu).exp()), 0.5, &breaks, &o)?;
    let psi = tricomi_psi_scaled(1.0 - a, 1.0 + x, t, &o)?;
    if !(num > 0.0 && psi > 0.0) {
        return Err(domain(format!("f_ax lost positivity at t = {t}")));
    }
    Ok(t + num.ln() - (a - 1.0) * t.ln() - gamma_ln(1.0 - a)? - psi.ln())
}

/// f_{a,x}(t), infinite once it overflows.
pub fn f_ax(p: ThorinParams, t: f64) -> Result<f64> {
    Ok(ln_f_ax(p, t)?.exp())
}

/// Γ(a+x)Φ(1−a,1+x,t) / (Γ(1+x)Ψ(1−a,1+x,t)), an independent evaluation of
/// f_{a,x} through the Kummer series. Meant for moderate t.
pub fn f_ax_kummer(p: ThorinParams, t: f64) -> Result<f64> {
    p.require_generic()?;
    positive_t(t)?;
    let (a, x) = (p.a, p.x);
    let o = opts();
    let phi = kummer_phi(1.0 - a, 1.0 + x, t, &o)?;
    let psi = tricomi_psi(1.0 - a, 1.0 + x, t, &o)?;
    Ok((gamma_ln(a + x)? - gamma_ln(1.0 + x)?).exp() * phi / psi)
}

/// sin(πa)/(πa) ∫₀^f du/(u²+2cos(πa)u+1) written as a single angle, given ln f.
fn cdf_from_ln_f(a: f64, l: f64) -> f64 {
    let (s, c) = (sin_pi(a), cos_pi(a));
    let angle = if l <= 0.0 {
        let f = l.exp();
        (f * s).atan2(1.0 + f * c)
    } else {
        let r = (-l).exp();
        s.atan2(r + c)
    };
    (angle / (PI * a)).clamp(0.0, 1.0)
}

/// P[G_{a,x} ≤ t]. At a = 1 this is the Frullani form.
pub fn thorin_cdf(p: ThorinParams, t: f64) -> Result<f64> {
    if p.a == 1.0 {
        return thorin_cdf_a1(p.x, t);
    }
    Ok(cdf_from_ln_f(p.a, ln_f_ax(p, t)?))
}

/// Five-point central difference with one Richardson step, step relative to t.
fn log_derivative<F>(mut l: F, t: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut d = |h: f64| -> Result<f64> {
        Ok((l(t - 2.0 * h)? - 8.0 * l(t - h)? + 8.0 * l(t + h)? - l(t + 2.0 * h)?) / (12.0 * h))
    };
    let h = 1e-4 * t;
    let coarse = d(h)?;
    let fine = d(0.5 * h)?;
    Ok((64.0 * fine - coarse) / 63.0)
}

/// Density of G_{a,x}: sin(πa) f′ / (πa (f² + 2cos(πa) f + 1)).
pub fn thorin_density(p: ThorinParams, t: f64) -> Result<f64> {
    if p.a == 1.0 {
        return thorin_density_a1(p.x, t);
    }
    let l = ln_f_ax(p, t)?;
    let dl = log_derivative(|s| ln_f_ax(p, s), t)?;
    // f f′/f / (f² + 2cf + 1) = L′ / (2cosh L + 2c)
    let denom = 2.0 * l.cosh() + 2.0 * cos_pi(p.a);
    if !denom.is_finite() {
        return Ok(0.0);
    }
    Ok(sin_pi(p.a) * dl / (PI * p.a * denom))
}

/// e^{−t}·π·g_x(t), finite for every t.
fn frullani_scaled(x: f64, t: f64) -> Result<f64> {
    positive_t(t)?;
    if !(x > 0.0) {
        return Err(domain(format!("Frullani integral needs x > 0, got {x}")));
    }
    let o = opts();
    // (0, 1/2): (1−y)^x e^{ty} − (1+y)^x e^{−ty} = 2(1−y²)^{x/2} sinh(ty − x·atanh y)
    let near = crate::quad::integrate(
        |y| {
            if y == 0.0 {
                return Ok(2.0 * (t - x) * (-t).exp());
            }
            let w = t * y - x * y.atanh();
            let h = 0.5 * x * (-y * y).ln_1p();
            Ok(((h + w - t).exp() - (h - w - t).exp()) / y)
        },
        0.0,
        0.5,
        &o,
    )?;
    // (1/2, 1): the (1−y)^x e^{ty} part, with w = 1 − y
    let upper = integrate_power_left(|w| Ok((-t * w).exp() / (1.0 - w)), x + 1.0, 0.0, 0.5, &[], &o)?;
    // (1/2, ∞): the (1+y)^x e^{−ty} part
    let scale = 1.0 / t;
    let tail = integrate_to_infinity(
        |y| Ok((x * y.ln_1p() - t * (1.0 + y)).exp() / y),
        0.5,
        &[scale, 4.0 * scale, 16.0 * scale, (x + 1.0) * scale, 40.0 * scale],
        &o,
    )?;
    Ok(near + upper - tail)
}

/// g_x(t) = (1/π)∫₀^∞ y⁻¹((1−y)₊^x e^{ty} − (1+y)^x e^{−ty}) dy.
pub fn gx_frullani(x: f64, t: f64) -> Result<f64> {
    Ok(frullani_scaled(x, t)? * t.exp() / PI)
}

/// P[G_{1,x} ≤ t] = 1/2 + arctan(g_x(t))/π.
pub fn thorin_cdf_a1(x: f64, t: f64) -> Result<f64> {
    let g = gx_frullani(x, t)?;
    Ok(0.5 + g.atan() / PI)
}

/// Density of G_{1,x}: g′/(π(1 + g²)).
pub fn thorin_density_a1(x: f64, t: f64) -> Result<f64> {
    let g = gx_frullani(x, t)?;
    if !g.is_finite() {
        return Ok(0.0);
    }
    // derivative of e^{−t}πg, then undo the scaling
    let ds = log_derivative(|s| Ok(frullani_scaled(x, s)? * (s - t).exp()), t)?;
    let dg = ds * t.exp() / PI;
    Ok(dg / (PI * (1.0 + g * g)))
}

/// Both sides of the modulus formula for the incomplete gamma function on the
/// cut: t^{−x−1}e^t |Γ(−x, te^{iπ})|^{−2}/Γ(x+1) against g_x′/(π(1+g_x²)).
/// x must not be an integer.
pub fn incomplete_gamma_cut_check(x: f64, t: f64) -> Result<(f64, f64)> {
    positive_t(t)?;
    if !(x > 0.0) || x.fract() == 0.0 {
        return Err(domain(format!("needs a positive non-integer x, got {x}")));
    }
    // Γ(s, te^{iπ}) = Γ(s) − e^{iπs} Σ tⁿ⁺ˢ/(n!(n+s)), s = −x
    let s = -x;
    let g = crate::special::gamma(s);
    let mut sum = 0.0;
    let mut pow = t.powf(s);
    for n in 0..10_000 {
        let nf = n as f64;
        if n > 0 {
            pow *= t / nf;
        }
        let term = pow / (nf + s);
        sum += term;
        if n as f64 > t && term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    let modulus_sq = g * g - 2.0 * g * sum * cos_pi(s) + sum * sum;
    let lhs = t.powf(-x - 1.0) * t.exp() / (modulus_sq * crate::special::gamma(x + 1.0));
    Ok((lhs, thorin_density_a1(x, t)?))
}

/// Density of the Lévy measure of B′_{a,x}: a ∫₀^∞ e^{−yt} P[G ≤ t] dt.
pub fn levy_density(p: ThorinParams, y: f64) -> Result<f64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(domain(format!("Lévy density needs y > 0, got {y}")));
    }
    // t = s/y
    let v = integrate_to_infinity(
        |s| {
            if s == 0.0 {
                return Ok(0.0);
            }
            Ok((-s).exp() * thorin_cdf(p, s / y)?)
        },
        0.0,
        &[0.1, 1.0, 5.0, 20.0],
        &opts().with_rel_tol(1e-10),
    )?;
    Ok(p.a * v / y)
}

/// ∫₀^∞ (1 − e^{−zy}) levy_density(y) dy.
pub fn levy_exponent(p: ThorinParams, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(domain(format!("Laplace exponent needs z > 0, got {z}")));
    }
    let o = opts().with_rel_tol(1e-8);
    let g = |y: f64| -> Result<f64> {
        if y == 0.0 {
            return Ok(p.a * z);
        }
        Ok(-(-z * y).exp_m1() * levy_density(p, y)?)
    };
    let left = crate::quad::integrate(g, 0.0, 1.0, &o)?;
    let right = crate::quad::integrate_algebraic_tail(g, 1.0, p.x.min(1.0), &[4.0, 30.0], &o)?;
    Ok(left + right)
}

/// Density of the Askey–Wimp–Kerov law, the symmetrization of √(2G_{c/2,1/2}).
pub fn awk_density(c: f64, t: f64) -> Result<f64> {
    if !(c > 0.0 && c < 2.0) {
        return Err(domain(format!("AWK density needs c ∈ (0,2), got {c}")));
    }
    if !t.is_finite() {
        return Err(domain("AWK density needs a finite argument"));
    }
    let p = ThorinParams::new(0.5 * c, 0.5)?;
    let w = |r: f64| -> Result<f64> { Ok(0.5 * r * thorin_density(p, 0.5 * r * r)?) };
    let r = t.abs();
    if r >= AWK_NEAR_ZERO {
        return w(r);
    }
    // w is even and smooth: A + B r² through r₀ and 2r₀
    let (w1, w2) = (w(AWK_NEAR_ZERO)?, w(2.0 * AWK_NEAR_ZERO)?);
    let b = (w2 - w1) / (3.0 * AWK_NEAR_ZERO * AWK_NEAR_ZERO);
    Ok(w1 + b * (r * r - AWK_NEAR_ZERO * AWK_NEAR_ZERO))
}

const AWK_NEAR_ZERO: f64 = 0.02;

/// e^{−t}∫₀¹ y^{−a}(1−y)^{a−1/2}e^{ty}Φ(a,a+1/2,t(y−1))dy and
/// ∫₀^∞ y^{−a}(1+y)^{a−1/2}e^{−ty}Φ(a,a+1/2,−t(y+1))dy.
fn g1_parts(a: f64, t: f64) -> Result<(f64, f64)> {
    let o = opts();
    let c = a + 0.5;
    let num = beta_integral(
        1.0 - a,
        a + 0.5,
        |_, omy| Ok((-t * omy).exp() * kummer_phi(a, c, -t * omy, &o)?),
        0.5,
        &[],
        &o,
    )?;
    let h = |y: f64| -> Result<f64> { Ok(((c - 1.0) * y.ln_1p() - t * y).exp() * kummer_phi(a, c, -t * (y + 1.0), &o)?) };
    let pivot = 1.0 / t;
    let left = integrate_power_left(h, 1.0 - a, 0.0, pivot, &[], &o)?;
    let right = integrate_to_infinity(|y| Ok(y.powf(-a) * h(y)?), pivot, &[4.0 * pivot, 16.0 * pivot, 40.0 * pivot], &o)?;
    Ok((num, left + right))
}

/// The two ratios compared in the ordering argument: g₁ built from the
/// density of Γ_{1/2}^{−1}(1 + √B_{a/2,1/2}), and g₂ = f_{a,1/2}.
pub fn g_ratios(a: f64, t: f64) -> Result<(f64, f64)> {
    if !(a > 0.0 && a < 1.0) {
        return Err(domain(format!("needs a ∈ (0,1), got {a}")));
    }
    positive_t(t)?;
    let (n, d) = g1_parts(a, t)?;
    let g1 = t.exp() * n / d;
    let g2 = f_ax(ThorinParams::new(a, 0.5)?, t)?;
    Ok((g1, g2))
}

/// Φ(a,a+1/2,t(y−1)), Φ(a,a+1/2,−t), Φ(a,a+1/2,−t(y+1)).
pub fn phi_bound_chain(a: f64, t: f64, y: f64) -> Result<[f64; 3]> {
    let o = opts();
    let c = a + 0.5;
    Ok([
        kummer_phi(a, c, t * (y - 1.0), &o)?,
        kummer_phi(a, c, -t, &o)?,
        kummer_phi(a, c, -t * (y + 1.0), &o)?,
    ])
}

/// Checks g₁ ≥ g₂ on `t_grid` (row 0 of the sign table) and the chain
/// Φ(a,a+½,t(y−1)) ≥ Φ(a,a+½,−t) ≥ Φ(a,a+½,−t(y+1)) > 0 for y ∈ [0,1] at
/// each t (row 1).
pub fn ordering_g1_g2(a: f64, t_grid: &[f64]) -> Result<ProbeResult> {
    if t_grid.is_empty() {
        return Err(crate::error::Error::EmptyInput("t grid"));
    }
    let ys: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let rows: Vec<(bool, bool, f64)> = t_grid
        .par_iter()
        .map(|&t| -> Result<(bool, bool, f64)> {
            let (g1, g2) = g_ratios(a, t)?;
            let noise = 1e-9 * g1.abs().max(g2.abs());
            let mut chain = true;
            for &y in &ys {
                let [p, q, r] = phi_bound_chain(a, t, y)?;
                chain &= p >= q * (1.0 - 1e-12) && q >= r * (1.0 - 1e-12) && r > 0.0;
            }
            Ok((g1 - g2 >= -noise, chain, (g1 - g2) / g2))
        })
        .collect::<Result<_>>()?;
    let sign_table = vec![rows.iter().map(|r| r.0).collect(), rows.iter().map(|r| r.1).collect::<Vec<_>>()];
    Ok(ProbeResult::from_table(format!("g1-g2-ordering(a={a})"), t_grid.to_vec(), sign_table, 1e-9))
}

/// One comparison of Thorin CDFs.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfComparison {
    pub t: f64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

/// Checks P[G_{a,x} ≤ t] non-increasing in x over every (a, t) of the grids,
/// comparing consecutive x values. Returns the violations (empty when the
/// ordering holds) and the number of comparisons made.
pub fn x_ordering_check(a_grid: &[f64], x_grid: &[f64], t_grid: &[f64]) -> Result<(Vec<(f64, f64, f64, f64)>, usize)> {
    let mut xs = x_grid.to_vec();
    xs.sort_by(f64::total_cmp);
    let cases: Vec<(f64, f64)> = a_grid.iter().flat_map(|&a| t_grid.iter().map(move |&t| (a, t))).collect();
    let results: Vec<Vec<(f64, f64, f64, f64)>> = cases
        .par_iter()
        .map(|&(a, t)| -> Result<Vec<(f64, f64, f64, f64)>> {
            let cdfs: Vec<f64> = xs.iter().map(|&x| thorin_cdf(ThorinParams::new(a, x)?, t)).collect::<Result<_>>()?;
            let mut bad = Vec::new();
            for i in 1..xs.len() {
                if cdfs[i] > cdfs[i - 1] + 1e-10 {
                    bad.push((a, t, xs[i - 1], xs[i]));
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    let n = cases.len() * xs.len().saturating_sub(1);
    Ok((results.into_iter().flatten().collect(), n))
}

/// P[G_{2a,1/2} ≤ t] against P[G_{a,1/2} ≤ t] on a grid; `holds` when the
/// former does not exceed the latter.
pub fn doubling_cdf_comparison(a: f64, t_grid: &[f64]) -> Result<Vec<CdfComparison>> {
    if !(a > 0.0 && a <= 0.5) {
        return Err(domain(format!("needs a ∈ (0,1/2], got {a}")));
    }
    let lo = ThorinParams::new(2.0 * a, 0.5)?;
    let hi = ThorinParams::new(a, 0.5)?;
    t_grid
        .par_iter()
        .map(|&t| {
            let l = thorin_cdf(lo, t)?;
            let u = thorin_cdf(hi, t)?;
            Ok(CdfComparison {
                t,
                lower: l,
                upper: u,
                holds: l <= u + 1e-10,
            })
        })
        .collect()
}

/// One point of the a′P[G_{a′,b} ≤ t] ≥ aP[G_{a,b} ≤ t] scan.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleDRow {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Scans a′P[G_{a′,b} ≤ t] ≥ aP[G_{a,b} ≤ t] for a < a′ ≤ 1 over the grids.
/// Exploratory: nothing is asserted.
pub fn single_d_scan(a_grid: &[f64], b_grid: &[f64], t_grid: &[f64]) -> Result<Vec<SingleDRow>> {
    let mut cases = Vec::new();
    for (i, &a) in a_grid.iter().enumerate() {
        for &ap in &a_grid[i + 1..] {
            let (lo, hi) = if a < ap { (a, ap) } else { (ap, a) };
            if lo == hi {
                continue;
            }
            for &b in b_grid {
                for &t in t_grid {
                    cases.push((lo, hi, b, t));
                }
            }
        }
    }
    cases
        .par_iter()
        .map(|&(a, ap, b, t)| {
            let lhs = ap * thorin_cdf(ThorinParams::new(ap, b)?, t)?;
            let rhs = a * thorin_cdf(ThorinParams::new(a, b)?, t)?;
            Ok(SingleDRow {
                a,
                a_prime: ap,
                b,
                t,
                lhs,
                rhs,
                holds: lhs >= rhs - 1e-10,
            })
        })
        .collect()
}
