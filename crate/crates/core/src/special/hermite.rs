//! Hermite functions of negative order and parabolic cylinder functions.

use std::f64::consts::SQRT_2;

use crate::error::{domain, Result};
use crate::options::EvalOptions;
use crate::quad::{integrate_points, integrate_power_left};

use super::gamma::rgamma;

/// Returns (v, e) with H₋ν(z) = v·e^{e}. The exponent is z² for z < 0 and 0
/// otherwise, so ratios of Hermite functions can be formed without overflow.
pub fn hermite_h_neg_scaled(nu: f64, z: f64, opts: &EvalOptions) -> Result<(f64, f64)> {
    if !(nu > 0.0) || !z.is_finite() {
        return Err(domain(format!("H_(-nu) needs nu > 0 and finite z, got nu={nu}, z={z}")));
    }
    // Exponent of the integrand relative to the scale: −t² − 2tz − shift.
    let shift = if z < 0.0 { z * z } else { 0.0 };
    let expo = move |t: f64| -t * t - 2.0 * t * z - shift;
    let peak = (-z).max(0.0);
    // Past `upper` the integrand is below e^{−750} of its peak.
    let upper = -z + (z * z + 750.0).sqrt();
    let t0 = upper.min(1.0).min(if peak > 0.0 { 0.5 * peak } else { 1.0 }).max(1e-3_f64.min(upper));
    let mut breaks: Vec<f64> = vec![];
    if z > 0.0 {
        // mass sits near t = (ν−1)/(2z) with width ~1/(2z)
        let w = 1.0 / (2.0 * z + 1.0);
        let mode = (nu - 1.0).max(0.0) * w;
        for k in [1.0, 4.0, 10.0, 30.0, 100.0] {
            breaks.push(k * w);
            breaks.push(mode + k * w);
        }
        breaks.push(mode);
    }
    // substitute only for the singular part t^{p−1}, p = min(ν, 1)
    let p = nu.min(1.0);
    let left = integrate_power_left(
        |t: f64| Ok(if nu > p { (expo(t) + (nu - p) * t.ln()).exp() } else { expo(t).exp() }),
        p,
        0.0,
        t0,
        &breaks,
        opts,
    )?;
    let mut pts = vec![t0];
    for p in [peak - 6.0, peak - 2.0, peak, peak + 2.0, peak + 6.0, 1.0, 4.0, 10.0] {
        if p > t0 && p < upper {
            pts.push(p);
        }
    }
    pts.push(upper);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let right = integrate_points(|t| Ok((expo(t) + (nu - 1.0) * t.ln()).exp()), &pts, opts)?;
    Ok(((left + right) * rgamma(nu), shift))
}

/// H₋ν(z) = (1/Γ(ν)) ∫₀^∞ e^{−t²−2tz} t^{ν−1} dt.
pub fn hermite_h_neg(nu: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    let (v, e) = hermite_h_neg_scaled(nu, z, opts)?;
    Ok(v * e.exp())
}

/// Parabolic cylinder function D_ν(z) for ν < 0.
pub fn parabolic_d(nu: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    if !(nu < 0.0) {
        return Err(domain(format!("parabolic_d is implemented for nu < 0, got {nu}")));
    }
    let (v, e) = hermite_h_neg_scaled(-nu, z / SQRT_2, opts)?;
    Ok(v * (e - 0.25 * z * z - 0.5 * nu * std::f64::consts::LN_2).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::confluent::tricomi_psi;
    use crate::special::gamma::gamma;
    use crate::special::mills::mills_ratio;
    use std::f64::consts::PI;

    fn o() -> EvalOptions {
        EvalOptions::default()
    }

    #[test]
    fn values_at_zero() {
        for nu in [0.3, 1.0, 2.5] {
            let v = hermite_h_neg(nu, 0.0, &o()).unwrap();
            let exact = gamma(nu / 2.0) / (2.0 * gamma(nu));
            assert!((v / exact - 1.0).abs() < 1e-12);
        }
        let d = parabolic_d(-1.0, 0.0, &o()).unwrap();
        assert!((d - (PI / 2.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn large_order_large_argument() {
        // asymptotic series (2z)^{−ν} Σ (−1)^k (ν)_{2k} / (k! (2z)^{2k})
        let nu = 12.0;
        for z in [56.0, 100.0] {
            let (mut term, mut sum) = (1.0, 1.0);
            for k in 1..12 {
                let k = k as f64;
                term *= -(nu + 2.0 * k - 2.0) * (nu + 2.0 * k - 1.0) / (k * 4.0 * z * z);
                sum += term;
            }
            let asy = (2.0 * z as f64).powf(-nu) * sum;
            let h = hermite_h_neg(nu, z, &o()).unwrap();
            assert!((h / asy - 1.0).abs() < 1e-12, "z={z}: {h} vs {asy}");
        }
    }

    #[test]
    fn mills_identity() {
        let mut x = -3.0;
        while x <= 5.0 {
            let h = hermite_h_neg(1.0, x, &o()).unwrap();
            let r = mills_ratio(SQRT_2 * x) / SQRT_2;
            assert!((h / r - 1.0).abs() < 1e-10, "x={x}: {h} vs {r}");
            x += 0.25;
        }
        for z in [-1.0f64, 0.0, 2.0] {
            let d = parabolic_d(-1.0, z, &o()).unwrap();
            let m = (-0.25 * z * z).exp() * mills_ratio(z);
            assert!((d / m - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn tricomi_link() {
        // H₋₂ₐ(√z) = 2^{−2a} Ψ(a, 1/2, z)
        let a = 0.25;
        for z in [0.5f64, 2.0] {
            let h = hermite_h_neg(2.0 * a, z.sqrt(), &o()).unwrap();
            let p = 2f64.powf(-2.0 * a) * tricomi_psi(a, 0.5, z, &o()).unwrap();
            assert!((h / p - 1.0).abs() < 1e-10, "{h} vs {p}");
        }
    }

    #[test]
    fn positive_on_grid() {
        let mut z = -6.0;
        while z < 6.0 {
            assert!(parabolic_d(-0.7, z, &o()).unwrap() > 0.0);
            z += 0.5;
        }
    }
}
