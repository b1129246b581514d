//! Confluent hypergeometric functions Φ (Kummer) and Ψ (Tricomi).

use crate::error::{domain, Result};
use crate::options::EvalOptions;
use crate::quad::{beta_integral, integrate_power_left, integrate_to_infinity};

use super::gamma::{beta_fn, is_nonpositive_integer, rgamma};
use super::hyp2f1::sum_series;

fn phi_series(a: f64, c: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    let o = opts.with_rel_tol(opts.rel_tol.min(1e-16));
    sum_series(
        |n| {
            let n = n as f64;
            (a + n) / ((c + n) * (n + 1.0)) * z
        },
        "Kummer series",
        &o,
    )
}

/// Kummer's function Φ(a, c, z) = ₁F₁(a; c; z).
pub fn kummer_phi(a: f64, c: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(domain(format!("Kummer function has a pole at c = {c}")));
    }
    if z == 0.0 || a == 0.0 {
        return Ok(1.0);
    }
    if z > 0.0 || is_nonpositive_integer(a) {
        phi_series(a, c, z, opts)
    } else if z < -30.0 && c > a && a > 0.0 {
        // Euler integral; the transformed series overflows here
        let x = -z;
        let i = beta_integral(a, c - a, |s, _| Ok((-x * s).exp()), 0.5, &[1.0 / x, 10.0 / x, 40.0 / x], opts)?;
        Ok(i / beta_fn(a, c - a))
    } else {
        Ok(z.exp() * phi_series(c - a, c, -z, opts)?)
    }
}

/// ∫₀^∞ e^{−s} s^{a−1} (1+s/z)^{c−a−1} ds.
fn psi_integral(a: f64, c: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    let e = c - a - 1.0;
    let g = |s: f64| Ok((-s + e * (s / z).ln_1p()).exp());
    let split = 1.0;
    // (1 + s/z)^e is a power law on (z, 1); one break per decade
    let mut breaks = vec![0.1 * z, z];
    let mut b = 10.0 * z;
    while b < split {
        breaks.push(b);
        b *= 10.0;
    }
    let left = integrate_power_left(g, a, 0.0, split, &breaks, opts)?;
    let peak = (a - 1.0).max(0.0);
    breaks.extend([peak, peak + 4.0 * peak.sqrt() + 4.0, 2.0 * (a + c.abs()) + 20.0]);
    let right = integrate_to_infinity(
        |s| Ok((-s + (a - 1.0) * s.ln() + e * (s / z).ln_1p()).exp()),
        split,
        &breaks,
        opts,
    )?;
    Ok(left + right)
}

/// Tricomi's function Ψ(a, c, z) for a > 0, z > 0.
pub fn tricomi_psi(a: f64, c: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    if !(a > 0.0) || !(z > 0.0) || !c.is_finite() || !z.is_finite() {
        return Err(domain(format!("Tricomi function needs a > 0, z > 0, got a={a}, z={z}")));
    }
    let i = psi_integral(a, c, z, opts)?;
    Ok((-a * z.ln()).exp() * rgamma(a) * i)
}

/// z^a Ψ(a, c, z), finite as z → ∞.
pub fn tricomi_psi_scaled(a: f64, c: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    if !(a > 0.0) || !(z > 0.0) {
        return Err(domain(format!("Tricomi function needs a > 0, z > 0, got a={a}, z={z}")));
    }
    Ok(rgamma(a) * psi_integral(a, c, z, opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_to_infinity;
    use crate::special::gamma::gamma;

    fn o() -> EvalOptions {
        EvalOptions::default()
    }

    #[test]
    fn kummer_values() {
        assert_eq!(kummer_phi(0.3, 1.2, 0.0, &o()).unwrap(), 1.0);
        let v = kummer_phi(1.0, 2.0, 1.0, &o()).unwrap();
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-14);
        // Φ(1,2,z) = (e^z − 1)/z for negative z as well
        let z = -30.0f64;
        let v = kummer_phi(1.0, 2.0, z, &o()).unwrap();
        assert!((v / (z.exp_m1() / z) - 1.0).abs() < 1e-13);
        assert!(kummer_phi(1.0, -1.0, 0.5, &o()).is_err());
    }

    #[test]
    fn kummer_large_negative_argument() {
        // Φ(1,2,z) = (e^z − 1)/z
        for z in [-29.0, -31.0, -400.0, -1e5] {
            let v = kummer_phi(1.0, 2.0, z, &o()).unwrap();
            let exact = (z as f64).exp_m1() / z;
            assert!((v - exact).abs() < 1e-12 * exact.abs(), "{z}: {v} vs {exact}");
        }
    }

    #[test]
    fn tricomi_values() {
        // Ψ(1,1,1) = e E₁(1)
        let oracle = integrate_to_infinity(|t| Ok((-t).exp() / (1.0 + t)), 0.0, &[], &o()).unwrap();
        let v = tricomi_psi(1.0, 1.0, 1.0, &o()).unwrap();
        assert!((v - oracle).abs() < 1e-12);
        assert!((v - 0.596_347_362_323_194).abs() < 1e-12);
        // Ψ(a, c, z) ~ Γ(c−1)/Γ(a) z^{1−c} as z → 0 for c > 1
        let z = 1e-16;
        let v = tricomi_psi(0.75, 1.5, z, &o()).unwrap();
        let lead = gamma(0.5) / gamma(0.75) * z.powf(-0.5);
        assert!((v / lead - 1.0).abs() < 1e-6, "{v} vs {lead}");
        // z → 0⁺ with c < 1
        let (a, c) = (0.7, 0.2);
        let v = tricomi_psi(a, c, 1e-8, &o()).unwrap();
        let lim = gamma(1.0 - c) / gamma(a + 1.0 - c);
        assert!((v / lim - 1.0).abs() < 1e-5);
        // Ψ(a, a+1, z) = z^{−a}
        let v = tricomi_psi(0.6, 1.6, 3.0, &o()).unwrap();
        assert!((v - 3f64.powf(-0.6)).abs() < 1e-13);
    }

    #[test]
    fn wronskian() {
        // Φ′Ψ − ΦΨ′ = Γ(c)/Γ(a) z^{−c} e^z
        for &(a, c, t) in &[(0.7, 1.5, 1.0), (0.3, 1.2, 2.5), (0.9, 1.05, 0.4)] {
            let h = 1e-4 * t;
            let d = |f: &dyn Fn(f64) -> f64| (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h);
            let phi = |z: f64| kummer_phi(a, c, z, &o()).unwrap();
            let psi = |z: f64| tricomi_psi(a, c, z, &o()).unwrap();
            let w = d(&phi) * psi(t) - phi(t) * d(&psi);
            let exact = gamma(c) / gamma(a) * t.powf(-c) * t.exp();
            assert!((w / exact - 1.0).abs() < 1e-7, "{w} vs {exact}");
        }
    }
}
