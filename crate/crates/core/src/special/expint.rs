//! Exponential integral E₁ and the Macdonald function K₀.

use crate::error::{domain, Result};
use crate::options::EvalOptions;
use crate::quad::integrate_points;

/// e^z E₁(z) = ∫₀^∞ exp(−z(e^v − 1)) dv.
pub fn expint_e1_scaled(z: f64, opts: &EvalOptions) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("E1 needs z > 0, got {z}")));
    }
    let upper = (745.0 / z).ln_1p();
    let knee = (1.0 / z).ln_1p();
    let mut pts = vec![0.0];
    for p in [0.1 * knee, knee, 4.0 * knee, 20.0 * knee] {
        if p < upper {
            pts.push(p);
        }
    }
    pts.push(upper);
    integrate_points(|v| Ok((-z * v.exp_m1()).exp()), &pts, opts)
}

/// E₁(z) = ∫_z^∞ e^{−t}/t dt.
pub fn expint_e1(z: f64, opts: &EvalOptions) -> Result<f64> {
    Ok((-z).exp() * expint_e1_scaled(z, opts)?)
}

/// e^z K₀(z) = ∫₀^∞ exp(−z(cosh u − 1)) du.
pub fn macdonald_k0_scaled(z: f64, opts: &EvalOptions) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("K0 needs z > 0, got {z}")));
    }
    // cosh u − 1 = 745/z at the cutoff
    let upper = (1.0 + 745.0 / z).acosh();
    let knee = (1.0 + 1.0 / z).acosh();
    let mut pts = vec![0.0];
    for p in [0.1 * knee, knee, 3.0 * knee] {
        if p < upper {
            pts.push(p);
        }
    }
    pts.push(upper);
    integrate_points(
        |u| {
            let h = 2.0 * (0.5 * u).sinh().powi(2);
            Ok((-z * h).exp())
        },
        &pts,
        opts,
    )
}

/// K₀(z) = ∫₀^∞ e^{−z cosh u} du.
pub fn macdonald_k0(z: f64, opts: &EvalOptions) -> Result<f64> {
    Ok((-z).exp() * macdonald_k0_scaled(z, opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_to_infinity;

    fn o() -> EvalOptions {
        EvalOptions::default()
    }

    #[test]
    fn e1_values() {
        let v = expint_e1(1.0, &o()).unwrap();
        let oracle = integrate_to_infinity(|t| Ok((-t).exp() / t), 1.0, &[], &o()).unwrap();
        assert!((v - oracle).abs() < 1e-13);
        assert!((v - 0.219_383_934_395_520_3).abs() < 1e-13);
        let z = 50.0;
        assert!((z * expint_e1_scaled(z, &o()).unwrap() - 1.0).abs() < 0.02);
        // small argument: E₁(z) = −γ − ln z + z − …
        let z = 1e-6;
        let approx = -0.577_215_664_901_532_9 - f64::ln(z) + z;
        assert!((expint_e1(z, &o()).unwrap() / approx - 1.0).abs() < 1e-10);
    }

    #[test]
    fn k0_values() {
        let v = macdonald_k0(1.0, &o()).unwrap();
        let oracle = integrate_to_infinity(|u| Ok((-u.cosh()).exp()), 0.0, &[], &o()).unwrap();
        assert!((v - oracle).abs() < 1e-13);
        assert!((v - 0.421_024_438_240_708_3).abs() < 1e-13);
        // K₀(z) ~ √(π/(2z)) e^{−z}
        let z = 200.0;
        let lead = (std::f64::consts::PI / (2.0 * z)).sqrt();
        assert!((macdonald_k0_scaled(z, &o()).unwrap() / lead - 1.0).abs() < 1e-2);
    }
}
