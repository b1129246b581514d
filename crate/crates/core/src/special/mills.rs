//! Mill's ratio r(x) = e^{x²/2} ∫ₓ^∞ e^{−t²/2} dt and its derivatives.

const SQRT_PI_2: f64 = 1.253_314_137_315_500_3;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn series_small(x: f64) -> f64 {
    // e^{x²/2} ∫₀^x e^{−t²/2} dt = Σ x^{2n+1}/(2n+1)!!
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term.abs() > 1e-18 * sum.abs().max(1e-300) {
        n += 1.0;
        term *= x2 / (2.0 * n + 1.0);
        sum += term;
    }
    (0.5 * x2).exp() * SQRT_PI_2 - sum
}

fn continued_fraction(x: f64) -> f64 {
    // r(x) = 1/(x + 1/(x + 2/(x + 3/(x + …)))), evaluated bottom-up.
    let depth = if x < 2.0 { 2000 } else if x < 5.0 { 400 } else { 120 };
    let mut tail = x;
    for k in (1..=depth).rev() {
        tail = x + k as f64 / tail;
    }
    1.0 / tail
}

fn asymptotic(x: f64) -> f64 {
    // (1/x) Σ (−1)^k (2k−1)!! / x^{2k}
    let ix2 = 1.0 / (x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=8 {
        term *= -((2 * k - 1) as f64) * ix2;
        sum += term;
    }
    sum / x
}

/// Mill's ratio for every real x (+∞ once e^{x²/2} overflows for x ≪ 0).
pub fn mills_ratio(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return (0.5 * x * x).exp() * SQRT_2PI - mills_ratio(-x);
    }
    if x < 1.0 {
        series_small(x)
    } else if x <= 30.0 {
        continued_fraction(x)
    } else {
        asymptotic(x)
    }
}

/// r, r′, …, r^{(n)} at x.
pub fn mills_ratio_derivs(n: usize, x: f64) -> Vec<f64> {
    // r^{(p)} = (−1)^p J_p with J_p = ∫₀^∞ s^p e^{−s²/2−xs} ds and
    // J_{p+1} = p J_{p−1} − x J_p.
    let r = mills_ratio(x);
    let mut j = vec![0.0; n + 1];
    j[0] = r;
    if n >= 1 {
        if x <= 1.0 {
            j[1] = 1.0 - x * r;
            for p in 1..n {
                j[p + 1] = p as f64 * j[p - 1] - x * j[p];
            }
        } else {
            // Ratios ρ_p = J_p/J_{p−1} = p/(x + ρ_{p+1}), run backwards so the
            // minimal solution is selected.
            let top = n + 400;
            let mut rho = vec![0.0; top + 2];
            for p in (1..=top).rev() {
                rho[p] = p as f64 / (x + rho[p + 1]);
            }
            for p in 1..=n {
                j[p] = j[p - 1] * rho[p];
            }
        }
    }
    j.iter()
        .enumerate()
        .map(|(p, v)| if p % 2 == 0 { *v } else { -*v })
        .collect()
}

/// r^{(n)}(x).
pub fn mills_ratio_deriv(n: usize, x: f64) -> f64 {
    mills_ratio_derivs(n, x)[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::options::EvalOptions;
    use crate::quad::integrate_to_infinity;
    use proptest::prelude::*;

    fn oracle(p: i32, x: f64) -> f64 {
        integrate_to_infinity(|s| Ok(s.powi(p) * (-0.5 * s * s - x * s).exp()), 0.0, &[], &EvalOptions::default()).unwrap()
    }

    #[test]
    fn values() {
        assert!((mills_ratio(0.0) - SQRT_PI_2).abs() < 1e-15);
        assert!((mills_ratio_deriv(1, 0.0) + 1.0).abs() < 1e-15);
        for x in [-2.0, -0.5, 0.3, 0.999, 1.0, 1.5, 3.0, 12.0, 29.0, 31.0, 80.0] {
            let r = mills_ratio(x);
            let o = oracle(0, x);
            assert!((r / o - 1.0).abs() < 1e-13, "x={x}: {r} vs {o}");
        }
    }

    #[test]
    fn derivatives_match_quadrature() {
        for x in [-1.5, 0.0, 0.7, 1.3, 4.0, 9.0] {
            let d = mills_ratio_derivs(5, x);
            for p in 0..=5 {
                let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                let o = sign * oracle(p as i32, x);
                assert!((d[p] / o - 1.0).abs() < 1e-12, "x={x} p={p}: {} vs {o}", d[p]);
            }
        }
    }

    proptest! {
        #[test]
        fn bound_xr_below_one(x in 1e-3f64..200.0) {
            prop_assert!(x * mills_ratio(x) < 1.0);
        }

        #[test]
        fn first_derivative_recursion(x in -5.0f64..20.0) {
            let d = mills_ratio_derivs(1, x);
            prop_assert!((d[1] - (x * d[0] - 1.0)).abs() < 1e-12 * (1.0 + (x * d[0]).abs()));
        }
    }
}
