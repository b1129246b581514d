//! Densities and Mellin transforms of sums of independent beta prime (and
//! beta) variables, in several closed forms that cross-check one another.

use crate::distributions::{beta_pdf, BetaParams, BetaPrimeParams};
use crate::error::{domain, Error, Result};
use crate::options::EvalOptions;
use crate::quad::{beta_integral, integrate_power_left};
use crate::special::{appell_f1_complement, gamma_ln, gauss_2f1_complement, hyp3f2, ln_beta};

/// λ·B′_{a,b} + μ·B′_{c,d} with independent terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumSpec {
    pub lambda: f64,
    pub p1: BetaPrimeParams,
    pub mu: f64,
    pub p2: BetaPrimeParams,
}

impl SumSpec {
    pub fn new(lambda: f64, p1: BetaPrimeParams, mu: f64, p2: BetaPrimeParams) -> Result<Self> {
        if !(lambda > 0.0 && mu > 0.0) || !lambda.is_finite() || !mu.is_finite() {
            return Err(domain(format!("scales must be positive, got λ={lambda}, μ={mu}")));
        }
        Ok(SumSpec { lambda, p1, mu, p2 })
    }

    /// B′_{a,b} + B′_{a,b}.
    pub fn iid(p: BetaPrimeParams) -> Self {
        SumSpec {
            lambda: 1.0,
            p1: p,
            mu: 1.0,
            p2: p,
        }
    }

    pub fn swapped(&self) -> Self {
        SumSpec {
            lambda: self.mu,
            p1: self.p2,
            mu: self.lambda,
            p2: self.p1,
        }
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("density evaluated at x = {x}")))
    }
}

/// Density of λB′_{a,b} + μB′_{c,d} through Appell's F₁.
pub fn sum_density_appell(spec: &SumSpec, x: f64, opts: &EvalOptions) -> Result<f64> {
    check_x(x)?;
    let (a, b) = (spec.p1.a, spec.p1.b);
    let (c, d) = (spec.p2.a, spec.p2.b);
    let (lam, mu) = (spec.lambda, spec.mu);
    let ln_pre = gamma_ln(a + b)? + gamma_ln(c + d)? - gamma_ln(b)? - gamma_ln(d)? - gamma_ln(a + c)? - a * lam.ln()
        + d * mu.ln()
        + (a + c - 1.0) * x.ln()
        - (c + d) * (x + mu).ln();
    let u = -x / lam;
    let v = x / (x + mu);
    let f1 = appell_f1_complement(a, a + b, c + d, a + c, u, 1.0 + x / lam, v, mu / (x + mu), opts);
    match f1 {
        Ok(f) => Ok(ln_pre.exp() * f),
        Err(Error::Quadrature { .. }) => sum_density_direct(spec, x, opts),
        Err(e) => Err(e),
    }
}

/// Density of λB′_{a,b} + μB′_{c,d} by the convolution integral over (0,1).
pub fn sum_density_direct(spec: &SumSpec, x: f64, opts: &EvalOptions) -> Result<f64> {
    check_x(x)?;
    let (a, b) = (spec.p1.a, spec.p1.b);
    let (c, d) = (spec.p2.a, spec.p2.b);
    let (lam, mu) = (spec.lambda, spec.mu);
    let ln_pre = -ln_beta(a, b) - ln_beta(c, d) + b * lam.ln() + d * mu.ln() + (a + c - 1.0) * x.ln();
    let i = beta_integral(
        a,
        c,
        |y, omy| Ok((-(a + b) * (lam + x * y).ln() - (c + d) * (mu + x * omy).ln()).exp()),
        0.5,
        &[lam / x, 1.0 - mu / x],
        opts,
    )?;
    Ok(ln_pre.exp() * i)
}

fn ln_iid_prefactor(p: BetaPrimeParams) -> Result<f64> {
    Ok(2.0 * gamma_ln(p.a + p.b)? - gamma_ln(2.0 * p.a)? - 2.0 * gamma_ln(p.b)?)
}

/// φ_{a,b}: density of B′_{a,b} + B′_{a,b} through ₂F₁ at −x²/(4(x+1)).
pub fn sum_density_2f1(p: BetaPrimeParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    check_x(x)?;
    let (a, b) = (p.a, p.b);
    let z = -x * x / (4.0 * (x + 1.0));
    let omz = (x + 2.0) * (x + 2.0) / (4.0 * (x + 1.0));
    let f = gauss_2f1_complement(a + b, a, a + 0.5, z, omz, opts)?;
    let ln = ln_iid_prefactor(p)? + (2.0 * a - 1.0) * x.ln() - (a + b) * x.ln_1p();
    Ok(ln.exp() * f)
}

fn pfaff_argument(x: f64) -> (f64, f64) {
    let r = x / (x + 2.0);
    (r * r, 4.0 * (x + 1.0) / ((x + 2.0) * (x + 2.0)))
}

/// φ_{a,b} through ₂F₁(a+b, 1/2; a+1/2; (x/(x+2))²).
pub fn sum_density_pfaff1(p: BetaPrimeParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    check_x(x)?;
    let (a, b) = (p.a, p.b);
    let (w, omw) = pfaff_argument(x);
    let f = gauss_2f1_complement(a + b, 0.5, a + 0.5, w, omw, opts)?;
    let ln = (a + b) * 4f64.ln() + ln_iid_prefactor(p)? + (2.0 * a - 1.0) * x.ln() - 2.0 * (a + b) * (x + 2.0).ln();
    Ok(ln.exp() * f)
}

/// φ_{a,b} through ₂F₁(1/2−b, a; a+1/2; (x/(x+2))²).
pub fn sum_density_pfaff2(p: BetaPrimeParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    check_x(x)?;
    let (a, b) = (p.a, p.b);
    let (w, omw) = pfaff_argument(x);
    let f = gauss_2f1_complement(0.5 - b, a, a + 0.5, w, omw, opts)?;
    let ln = a * 4f64.ln() + ln_iid_prefactor(p)? + (2.0 * a - 1.0) * x.ln()
        - b * x.ln_1p()
        - 2.0 * a * (x + 2.0).ln();
    Ok(ln.exp() * f)
}

/// φ_{a,1/2} in elementary form.
pub fn sum_density_bhalf(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(domain(format!("a must be positive, got {a}")));
    }
    check_x(x)?;
    let ln = std::f64::consts::LN_2 + gamma_ln(a + 0.5)? - gamma_ln(a)? - 0.5 * std::f64::consts::PI.ln()
        + (2.0 * a - 1.0) * x.ln()
        - 0.5 * x.ln_1p()
        - 2.0 * a * (x + 2.0).ln();
    Ok(ln.exp())
}

fn beta_sum_left(a: f64, b: f64, x: f64, opts: &EvalOptions) -> Result<f64> {
    // x ∈ (0,1)
    let z = -x * x / (4.0 * (1.0 - x));
    let omz = (2.0 - x) * (2.0 - x) / (4.0 * (1.0 - x));
    let f = gauss_2f1_complement(1.0 - b, a, a + 0.5, z, omz, opts)?;
    let ln = 2.0 * gamma_ln(a + b)? - gamma_ln(2.0 * a)? - 2.0 * gamma_ln(b)? + (2.0 * a - 1.0) * x.ln()
        + (b - 1.0) * (1.0 - x).ln();
    Ok(ln.exp() * f)
}

/// Density of B_{a,b} + B_{a,b} on (0, 2).
pub fn beta_sum_density(p: BetaParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    if !(x > 0.0 && x < 2.0) {
        return Err(domain(format!("beta sum density lives on (0,2), got {x}")));
    }
    let (a, b) = (p.p, p.q);
    if x < 1.0 {
        beta_sum_left(a, b, x, opts)
    } else if x > 1.0 {
        beta_sum_left(b, a, 2.0 - x, opts)
    } else {
        beta_sum_density_direct(p, x, opts)
    }
}

/// Density of B_{a,b} + B_{a,b} by the convolution integral.
pub fn beta_sum_density_direct(p: BetaParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    if !(x > 0.0 && x < 2.0) {
        return Err(domain(format!("beta sum density lives on (0,2), got {x}")));
    }
    let lo = (x - 1.0).max(0.0);
    let hi = x.min(1.0);
    let mid = 0.5 * (lo + hi);
    let f = |y: f64| -> Result<f64> {
        let z = x - y;
        if y <= 0.0 || y >= 1.0 || z <= 0.0 || z >= 1.0 {
            return Ok(0.0);
        }
        Ok(beta_pdf(p, y)? * beta_pdf(p, z)?)
    };
    // Substitute out the endpoint powers on each half.
    let left_exp = if lo == 0.0 { p.p } else { p.q };
    let right_exp = if hi == 1.0 { p.q } else { p.p };
    let l = integrate_power_left(
        |y| {
            let d = y - lo;
            if d <= 0.0 {
                return Ok(0.0);
            }
            Ok(f(y)? * d.powf(1.0 - left_exp))
        },
        left_exp,
        lo,
        mid,
        &[],
        opts,
    )?;
    let r = integrate_power_left(
        |w| {
            let d = w;
            if d <= 0.0 {
                return Ok(0.0);
            }
            Ok(f(hi - w)? * d.powf(1.0 - right_exp))
        },
        right_exp,
        0.0,
        hi - mid,
        &[],
        opts,
    )?;
    Ok(l + r)
}

/// Strip (−2a, b) of M_{a,b}.
pub fn mellin_sum_strip(p: BetaPrimeParams) -> (f64, f64) {
    (-2.0 * p.a, p.b)
}

fn check_strip(p: BetaPrimeParams, s: f64) -> Result<()> {
    let (lo, hi) = mellin_sum_strip(p);
    if s > lo && s < hi {
        Ok(())
    } else {
        Err(Error::StripViolation { s, lo, hi })
    }
}

/// M_{a,b}(s) = E[(B′_{a,b} + B′_{a,b})^s] through ₃F₂ at unit argument.
pub fn mellin_sum(p: BetaPrimeParams, s: f64, opts: &EvalOptions) -> Result<f64> {
    check_strip(p, s)?;
    let (a, b) = (p.a, p.b);
    if s == 0.0 {
        return Ok(1.0);
    }
    let ln = (2.0 * a + s) * std::f64::consts::LN_2 + 2.0 * gamma_ln(a + b)? + gamma_ln(2.0 * b - s)? + gamma_ln(2.0 * a + s)?
        - gamma_ln(2.0 * a)?
        - 2.0 * gamma_ln(b)?
        - gamma_ln(2.0 * a + 2.0 * b)?;
    let f = hyp3f2([a + s / 2.0, a + (s + 1.0) / 2.0, 0.5], [a + 0.5, a + b + 0.5], 1.0, opts)?;
    Ok(ln.exp() * f)
}

/// M_{a,b}(s) by quadrature of the density against x^s, after the change
/// of variable y = x/(x+2).
pub fn mellin_sum_quad(p: BetaPrimeParams, s: f64, opts: &EvalOptions) -> Result<f64> {
    check_strip(p, s)?;
    let (a, b) = (p.a, p.b);
    let ln = (2.0 * a + s) * std::f64::consts::LN_2 + 2.0 * gamma_ln(a + b)? - gamma_ln(2.0 * a)? - 2.0 * gamma_ln(b)?;
    let i = beta_integral(
        2.0 * a + s,
        b - s,
        |y, omy| {
            let f = gauss_2f1_complement(0.5 - b, a, a + 0.5, y * y, omy * (1.0 + y), opts)?;
            Ok((1.0 + y).powf(-b) * f)
        },
        0.5,
        &[],
        opts,
    )?;
    Ok(ln.exp() * i)
}

/// ∫₀^X x^s φ_{a,b}(x) dx; grows without bound in X when s ≥ b.
pub fn mellin_sum_partial(p: BetaPrimeParams, s: f64, upper: f64, opts: &EvalOptions) -> Result<f64> {
    let mut pts = vec![0.0];
    let mut x = 1.0;
    while x < upper {
        pts.push(x);
        x *= 4.0;
    }
    pts.push(upper);
    let p2 = 2.0 * p.a + s;
    integrate_power_left(
        |x| {
            if x == 0.0 {
                return Ok(0.0);
            }
            Ok(sum_density_pfaff2(p, x, opts)? * x.powf(s + 1.0 - p2))
        },
        p2,
        0.0,
        upper,
        &pts[1..pts.len() - 1],
        opts,
    )
}
