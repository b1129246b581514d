//! Appell's F1 through its one-dimensional Picard integral.

use crate::error::{domain, precondition, Result};
use crate::options::EvalOptions;
use crate::quad::beta_integral;

use super::gamma::{gamma, rgamma};

/// 1 − x·t evaluated from whichever of t, 1−t avoids cancellation.
#[inline]
fn one_minus(x: f64, omx: f64, t: f64, omt: f64) -> f64 {
    if x > 0.0 && t > 0.5 {
        omx + x * omt
    } else {
        1.0 - x * t
    }
}

fn scale_breaks(x: f64, omx: f64, out: &mut Vec<f64>) {
    if x < -1.0 {
        let s = 1.0 / -x;
        out.extend([s, 10.0 * s, 0.1 * s]);
    } else if x > 0.5 && omx < 0.1 {
        let d = omx / x;
        out.extend([1.0 - d, 1.0 - 10.0 * d, 1.0 - 100.0 * d]);
    }
}

/// F₁(α; β, β′; γ; x, y) with 1−x and 1−y supplied separately.
#[allow(clippy::too_many_arguments)]
pub fn appell_f1_complement(
    alpha: f64,
    beta: f64,
    beta_p: f64,
    gamma_: f64,
    x: f64,
    omx: f64,
    y: f64,
    omy: f64,
    opts: &EvalOptions,
) -> Result<f64> {
    if !(gamma_ > alpha && alpha > 0.0) {
        return Err(precondition(format!(
            "Picard integral needs gamma > alpha > 0, got alpha={alpha}, gamma={gamma_}"
        )));
    }
    if !(x < 1.0 && y < 1.0) {
        return Err(domain(format!("F1 needs x < 1 and y < 1, got ({x}, {y})")));
    }
    if x == 0.0 && y == 0.0 {
        return Ok(1.0);
    }
    let mut breaks = Vec::new();
    scale_breaks(x, omx, &mut breaks);
    scale_breaks(y, omy, &mut breaks);
    let integral = beta_integral(
        alpha,
        gamma_ - alpha,
        |t, omt| {
            let u = one_minus(x, omx, t, omt);
            let v = one_minus(y, omy, t, omt);
            Ok(u.powf(-beta) * v.powf(-beta_p))
        },
        0.5,
        &breaks,
        opts,
    )?;
    Ok(gamma(gamma_) * rgamma(alpha) * rgamma(gamma_ - alpha) * integral)
}

/// F₁(α; β, β′; γ; x, y).
pub fn appell_f1(alpha: f64, beta: f64, beta_p: f64, gamma_: f64, x: f64, y: f64, opts: &EvalOptions) -> Result<f64> {
    appell_f1_complement(alpha, beta, beta_p, gamma_, x, 1.0 - x, y, 1.0 - y, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::hyp2f1::gauss_2f1;

    fn o() -> EvalOptions {
        EvalOptions::default()
    }

    fn double_series(al: f64, b: f64, bp: f64, g: f64, x: f64, y: f64) -> f64 {
        // Σ (α)_{m+n}(β)_m(β′)_n / ((γ)_{m+n} m! n!) x^m y^n
        let mut total = 0.0;
        let mut row = 1.0; // coefficient at (m, 0)
        for m in 0..120 {
            let mf = m as f64;
            let mut c = row;
            for n in 0..120 {
                let nf = n as f64;
                total += c;
                c *= (al + mf + nf) * (bp + nf) / ((g + mf + nf) * (nf + 1.0)) * y;
            }
            row *= (al + mf) * (b + mf) / ((g + mf) * (mf + 1.0)) * x;
        }
        total
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(appell_f1(0.4, 1.0, 2.0, 1.3, 0.0, 0.0, &o()).unwrap(), 1.0);
        let v = appell_f1(0.4, 1.0, 0.7, 1.3, 0.0, 0.6, &o()).unwrap();
        let g = gauss_2f1(0.4, 0.7, 1.3, 0.6, &o()).unwrap();
        assert!((v / g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn picard_matches_double_series() {
        for &(al, b, bp, g, x, y) in &[
            (0.4, 0.6, 1.3, 1.1, 0.3, -0.4),
            (1.2, -0.5, 0.8, 2.5, -0.4, 0.4),
            (0.3, 2.0, 0.2, 0.9, 0.35, 0.25),
        ] {
            let v = appell_f1(al, b, bp, g, x, y, &o()).unwrap();
            let s = double_series(al, b, bp, g, x, y);
            assert!((v - s).abs() < 1e-9 * s.abs(), "{v} vs {s}");
        }
    }

    #[test]
    fn reduction_formula() {
        // F₁(b+1/2; 1/2, 1/2; 1; x−1, 1−1/x) = x^{b+1/2} ₂F₁(1/2, b+1/2; 1; (x−1)²)
        let b = 0.3;
        for x in [1.2f64, 1.5, 1.8] {
            let lhs = appell_f1(b + 0.5, 0.5, 0.5, 1.0, x - 1.0, 1.0 - 1.0 / x, &o()).unwrap();
            let rhs = x.powf(b + 0.5) * gauss_2f1(0.5, b + 0.5, 1.0, (x - 1.0).powi(2), &o()).unwrap();
            assert!((lhs / rhs - 1.0).abs() < 1e-10, "x={x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn preconditions() {
        assert!(appell_f1(1.0, 1.0, 1.0, 0.5, 0.1, 0.1, &o()).is_err());
        assert!(appell_f1(0.5, 1.0, 1.0, 1.5, 1.1, 0.1, &o()).is_err());
    }
}
