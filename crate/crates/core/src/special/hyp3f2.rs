//! Generalized hypergeometric series ₃F₂ at z = ±1.

use crate::error::{domain, precondition, Error, Result};
use crate::options::EvalOptions;

use super::gamma::{gamma, is_nonpositive_integer, rgamma};

/// Parameters of a pFq series evaluated at a single argument.
#[derive(Debug, Clone, PartialEq)]
pub struct HypArgs {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
    pub z: f64,
}

impl HypArgs {
    pub fn new(numerator: Vec<f64>, denominator: Vec<f64>, z: f64) -> Result<Self> {
        let h = HypArgs {
            numerator,
            denominator,
            z,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(b) = self.denominator.iter().find(|b| is_nonpositive_integer(**b)) {
            return Err(domain(format!("denominator parameter {b} is a non-positive integer")));
        }
        if self.numerator.iter().chain(&self.denominator).any(|v| !v.is_finite()) || !self.z.is_finite() {
            return Err(domain("non-finite hypergeometric parameter"));
        }
        Ok(())
    }

    /// Σ denominator − Σ numerator.
    pub fn excess(&self) -> f64 {
        self.denominator.iter().sum::<f64>() - self.numerator.iter().sum::<f64>()
    }

    fn terminating_degree(&self) -> Option<usize> {
        self.numerator
            .iter()
            .filter(|a| is_nonpositive_integer(**a))
            .map(|a| (-a.round()) as usize)
            .min()
    }

    fn ratio(&self, n: usize) -> f64 {
        let nf = n as f64;
        let num: f64 = self.numerator.iter().map(|a| a + nf).product();
        let den: f64 = self.denominator.iter().map(|b| b + nf).product();
        num / (den * (nf + 1.0)) * self.z
    }
}

/// Partial sums S_0..S_{len-1}.
fn partial_sums(h: &HypArgs, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut term = 1.0;
    let mut sum = 1.0;
    out.push(sum);
    for n in 0..len.saturating_sub(1) {
        term *= h.ratio(n);
        sum += term;
        out.push(sum);
    }
    out
}

/// Richardson extrapolation of S_N for algebraic tails S − S_N ~ Σ c_j N^{−σ−j}.
fn unit_argument(h: &HypArgs, opts: &EvalOptions) -> Result<f64> {
    let sigma = h.excess();
    const N0: usize = 64;
    const K: usize = 11;
    let n_max = N0 << (K - 1);
    if n_max > opts.max_terms.max(N0 << 4) {
        return Err(Error::NonConvergence {
            what: "3F2 at unit argument",
            budget: opts.max_terms,
        });
    }
    let sums = partial_sums(h, n_max + 1);
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(K);
    for k in 0..K {
        let mut row = vec![sums[N0 << k]];
        for j in 1..=k {
            let r = 2f64.powf(-(sigma + (j - 1) as f64));
            let v = (row[j - 1] - r * table[k - 1][j - 1]) / (1.0 - r);
            row.push(v);
        }
        table.push(row);
    }
    let last = &table[K - 1];
    let prev = &table[K - 2];
    let mut best = (f64::INFINITY, last[0]);
    for j in 0..K - 1 {
        let e = (last[j] - prev[j]).abs();
        if e < best.0 {
            best = (e, last[j]);
        }
    }
    let (err, value) = best;
    if !value.is_finite() || err > 1e-6 * value.abs().max(1e-300) {
        return Err(Error::NonConvergence {
            what: "3F2 at unit argument",
            budget: n_max,
        });
    }
    Ok(value)
}

/// Repeated averaging of partial sums of an eventually alternating series.
fn minus_one(h: &HypArgs, opts: &EvalOptions) -> Result<f64> {
    let start = 200usize;
    let levels = 60usize;
    let sums = partial_sums(h, start + levels + 1);
    let mut row: Vec<f64> = sums[start..].to_vec();
    let mut prev_best = f64::NAN;
    let mut best = row[0];
    for _ in 0..levels {
        prev_best = best;
        row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        best = row[0];
    }
    let err = (best - prev_best).abs();
    if !best.is_finite() || err > 1e-8 * best.abs().max(opts.abs_tol) {
        return Err(Error::NonConvergence {
            what: "3F2 at argument -1",
            budget: start + levels,
        });
    }
    Ok(best)
}

/// Thomae's relation: with σ the excess,
/// ₃F₂(a,b,c; d,e; 1) = Γ(d)Γ(e)Γ(σ)/(Γ(a)Γ(σ+b)Γ(σ+c)) · ₃F₂(d−a, e−a, σ; σ+b, σ+c; 1),
/// whose excess is a. Used when the largest numerator parameter beats σ.
fn thomae(h: &HypArgs, opts: &EvalOptions) -> Result<Option<f64>> {
    if h.numerator.len() != 3 {
        return Ok(None);
    }
    let sigma = h.excess();
    let (imax, &a) = h
        .numerator
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .expect("three parameters");
    if a < sigma + 0.25 {
        return Ok(None);
    }
    let rest: Vec<f64> = (0..3).filter(|&i| i != imax).map(|i| h.numerator[i]).collect();
    let (b, c) = (rest[0], rest[1]);
    let (d, e) = (h.denominator[0], h.denominator[1]);
    if is_nonpositive_integer(sigma + b) || is_nonpositive_integer(sigma + c) {
        return Ok(None);
    }
    let pre = gamma(d) * gamma(e) * gamma(sigma) * rgamma(a) * rgamma(sigma + b) * rgamma(sigma + c);
    let t = HypArgs {
        numerator: vec![d - a, e - a, sigma],
        denominator: vec![sigma + b, sigma + c],
        z: 1.0,
    };
    if !pre.is_finite() {
        return Ok(None);
    }
    if let Some(m) = t.terminating_degree() {
        return Ok(Some(pre * partial_sums(&t, m + 1).last().expect("non-empty")));
    }
    Ok(Some(pre * unit_argument(&t, opts)?))
}

/// ₃F₂ at z = 1 by Richardson-accelerated partial sums, without any
/// transformation of the parameters.
pub fn hyp3f2_direct(a: [f64; 3], b: [f64; 2], opts: &EvalOptions) -> Result<f64> {
    let h = HypArgs::new(a.to_vec(), b.to_vec(), 1.0)?;
    if !(h.excess() > 0.0) {
        return Err(domain(format!("series diverges at z = 1 with excess {}", h.excess())));
    }
    if let Some(m) = h.terminating_degree() {
        return Ok(*partial_sums(&h, m + 1).last().expect("non-empty"));
    }
    unit_argument(&h, opts)
}

/// ₃F₂ (or any pFq with p = q + 1) at z ∈ {1, −1}.
pub fn hyp_3f2(args: &HypArgs, opts: &EvalOptions) -> Result<f64> {
    args.validate()?;
    if args.numerator.iter().any(|a| *a == 0.0) {
        return Ok(1.0);
    }
    if let Some(m) = args.terminating_degree() {
        return Ok(*partial_sums(args, m + 1).last().expect("non-empty"));
    }
    if args.numerator.len() != args.denominator.len() + 1 {
        return Err(precondition("expected p = q + 1 parameters"));
    }
    if args.z == 1.0 {
        if !(args.excess() > 0.0) {
            return Err(domain(format!("series diverges at z = 1 with excess {}", args.excess())));
        }
        if let Some(v) = thomae(args, opts)? {
            return Ok(v);
        }
        unit_argument(args, opts)
    } else if args.z == -1.0 {
        if !(args.excess() > -1.0) {
            return Err(domain(format!("series diverges at z = -1 with excess {}", args.excess())));
        }
        minus_one(args, opts)
    } else {
        Err(precondition(format!("3F2 is only evaluated at z = ±1, got {}", args.z)))
    }
}

/// ₃F₂(a₁,a₂,a₃; b₁,b₂; z) shorthand.
pub fn hyp3f2(a: [f64; 3], b: [f64; 2], z: f64, opts: &EvalOptions) -> Result<f64> {
    hyp_3f2(&HypArgs::new(a.to_vec(), b.to_vec(), z)?, opts)
}
