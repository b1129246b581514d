//! Beta, gamma and beta prime laws: densities, transforms, seeded samplers and
//! size-biasing.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{domain, precondition, Error, Result};
use crate::options::EvalOptions;
use crate::quad::{beta_integral, integrate_positive_line};
use crate::special::{beta_fn, gamma_ln, ln_beta, rgamma, tricomi_psi};

fn positive(v: f64, name: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Shapes (a, b) of B′_{a,b}, the law of Γ_a/Γ_b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaPrimeParams {
    pub a: f64,
    pub b: f64,
}

impl BetaPrimeParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        positive(a, "a")?;
        positive(b, "b")?;
        Ok(BetaPrimeParams { a, b })
    }
}

/// Shapes (p, q) of B_{p,q}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    pub p: f64,
    pub q: f64,
}

impl BetaParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        positive(p, "p")?;
        positive(q, "q")?;
        Ok(BetaParams { p, q })
    }
}

/// Shape t of Γ_t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    pub t: f64,
}

impl GammaParams {
    pub fn new(t: f64) -> Result<Self> {
        positive(t, "t")?;
        Ok(GammaParams { t })
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seeded generator state. The same (seed, stream) always yields the same
/// sequence; `child(i)` gives reproducible independent streams.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    stream: u64,
    draws: u64,
    children: u64,
    rng: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngState {
            seed,
            stream,
            draws: 0,
            children: 0,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Number of primitive draws taken so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// Deterministic child stream that does not depend on how many values
    /// the parent has produced.
    pub fn child(&self, index: u64) -> RngState {
        RngState::with_stream(self.seed, splitmix(self.stream ^ splitmix(index.wrapping_add(1))))
    }

    /// Next child stream in sequence.
    pub fn split(&mut self) -> RngState {
        self.children += 1;
        self.child(self.children)
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        loop {
            self.draws += 1;
            let u: f64 = self.rng.random();
            if u > 0.0 {
                return u;
            }
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.rng.next_u64()
    }

    pub(crate) fn engine(&mut self) -> &mut ChaCha8Rng {
        self.draws += 1;
        &mut self.rng
    }
}

/// Γ_t.
pub fn sample_gamma(p: GammaParams, rng: &mut RngState) -> f64 {
    let g = Gamma::new(p.t, 1.0).expect("validated shape");
    g.sample(rng.engine())
}

/// B_{p,q} = Γ_p/(Γ_p + Γ_q).
pub fn sample_beta(p: BetaParams, rng: &mut RngState) -> f64 {
    let x = sample_gamma(GammaParams { t: p.p }, rng);
    let y = sample_gamma(GammaParams { t: p.q }, rng);
    x / (x + y)
}

/// B′_{a,b} = Γ_a/Γ_b.
pub fn sample_betaprime(p: BetaPrimeParams, rng: &mut RngState) -> f64 {
    let x = sample_gamma(GammaParams { t: p.a }, rng);
    let y = sample_gamma(GammaParams { t: p.b }, rng);
    x / y
}

/// Density of B′_{a,b}.
pub fn betaprime_pdf(p: BetaPrimeParams, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain(format!("beta prime density needs x > 0, got {x}")));
    }
    let ln = (p.a - 1.0) * x.ln() - (p.a + p.b) * x.ln_1p() - ln_beta(p.a, p.b);
    Ok(ln.exp())
}

/// P[B′_{a,b} ≤ x].
pub fn betaprime_cdf(p: BetaPrimeParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    // B′ ≤ x ⟺ B_{a,b} ≤ x/(1+x)
    beta_cdf(BetaParams { p: p.a, q: p.b }, x / (1.0 + x), opts)
}

/// E[(B′_{a,b})^s] on the strip (−a, b).
pub fn betaprime_mellin(p: BetaPrimeParams, s: f64) -> Result<f64> {
    if !(s > -p.a && s < p.b) {
        return Err(Error::StripViolation { s, lo: -p.a, hi: p.b });
    }
    Ok((gamma_ln(p.a + s)? + gamma_ln(p.b - s)? - gamma_ln(p.a)? - gamma_ln(p.b)?).exp())
}

/// E[e^{−z B′_{a,b}}] = Γ(a+b)/Γ(b) Ψ(a, 1−b, z).
pub fn betaprime_laplace(p: BetaPrimeParams, z: f64, opts: &EvalOptions) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(domain(format!("Laplace transform needs z >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let pre = (gamma_ln(p.a + p.b)? - gamma_ln(p.b)?).exp();
    Ok(pre * tricomi_psi(p.a, 1.0 - p.b, z, opts)?)
}

/// Density of B_{p,q}.
pub fn beta_pdf(p: BetaParams, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain(format!("beta density needs 0 < x < 1, got {x}")));
    }
    Ok(((p.p - 1.0) * x.ln() + (p.q - 1.0) * (-x).ln_1p() - ln_beta(p.p, p.q)).exp())
}

/// P[B_{p,q} ≤ x] by quadrature.
pub fn beta_cdf(p: BetaParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x >= 1.0 {
        return Ok(1.0);
    }
    // ∫₀^x t^{p−1}(1−t)^{q−1} dt with t = x·v.
    let d = (1.0 - x) / x;
    let breaks: Vec<f64> = [1.0, 10.0, 100.0].iter().map(|k| 1.0 - k * d).collect();
    let v = beta_integral(p.p, 1.0, |v, _| Ok(((p.q - 1.0) * (-x * v).ln_1p()).exp()), 0.5, &breaks, opts)?;
    Ok((v * x.powf(p.p) / beta_fn(p.p, p.q)).min(1.0))
}

/// E[B_{p,q}^s] for s > −p.
pub fn beta_mellin(p: BetaParams, s: f64) -> Result<f64> {
    if !(s > -p.p) {
        return Err(Error::StripViolation {
            s,
            lo: -p.p,
            hi: f64::INFINITY,
        });
    }
    Ok((ln_beta(p.p + s, p.q) - ln_beta(p.p, p.q)).exp())
}

/// Density of Γ_t.
pub fn gamma_pdf(p: GammaParams, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain(format!("gamma density needs x > 0, got {x}")));
    }
    Ok(((p.t - 1.0) * x.ln() - x).exp() * rgamma(p.t))
}

/// E[Γ_t^s] for s > −t.
pub fn gamma_mellin(p: GammaParams, s: f64) -> Result<f64> {
    if !(s > -p.t) {
        return Err(Error::StripViolation {
            s,
            lo: -p.t,
            hi: f64::INFINITY,
        });
    }
    Ok((gamma_ln(p.t + s)? - gamma_ln(p.t)?).exp())
}

/// Support of a base density together with its endpoint exponents: the
/// density behaves like x^{left−1} at the left end, like (1−x)^{right−1}
/// at 1 on the unit interval, and like x^{−right−1} at ∞ on the half-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    Unit { left: f64, right: f64 },
    HalfLine { left: f64, right: f64 },
}

/// The law with density x^t f(x)/E[X^t].
#[derive(Debug, Clone)]
pub struct SizeBiased<F> {
    base: F,
    t: f64,
    norm: f64,
}

impl<F> SizeBiased<F>
where
    F: Fn(f64) -> Result<f64>,
{
    pub fn new(base: F, support: Support, t: f64, opts: &EvalOptions) -> Result<Self> {
        let norm = moment(&base, support, t, opts)?;
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(domain(format!("size-bias normalization E[X^{t}] = {norm} is not usable")));
        }
        Ok(SizeBiased { base, t, norm })
    }

    /// E[X^t] of the base law.
    pub fn normalization(&self) -> f64 {
        self.norm
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        Ok(x.powf(self.t) * (self.base)(x)? / self.norm)
    }
}

/// E[X^t] of a density on the given support.
pub fn moment<F>(pdf: &F, support: Support, t: f64, opts: &EvalOptions) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    match support {
        Support::Unit { left, right } => {
            let p = left + t;
            if !(p > 0.0) {
                return Err(domain(format!("E[X^{t}] diverges at 0")));
            }
            beta_integral(
                p,
                right,
                |x, omx| {
                    if x >= 1.0 || x <= 0.0 {
                        return Ok(0.0);
                    }
                    let f = pdf(x)?;
                    Ok(f * x.powf(1.0 - left) * omx.powf(1.0 - right))
                },
                0.5,
                &[],
                opts,
            )
        }
        Support::HalfLine { left, right } => {
            let (p, k) = (left + t, right - t);
            if !(p > 0.0) {
                return Err(domain(format!("E[X^{t}] diverges at 0")));
            }
            if !(k > 0.0) {
                return Err(domain(format!("E[X^{t}] diverges at infinity")));
            }
            integrate_positive_line(|x| Ok(x.powf(t) * pdf(x)?), p, k, 1.0, &[], opts)
        }
    }
}

/// Density x^t f(x)/E[X^t] at a single point.
pub fn size_bias_pdf<F>(base_pdf: F, support: Support, t: f64, x: f64, opts: &EvalOptions) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    SizeBiased::new(base_pdf, support, t, opts)?.pdf(x)
}

/// Sample from the size-biased law by rejection: accept X with probability
/// X^t/bound, where `bound` ≥ sup X^t over the support.
pub fn size_bias_sample<S>(mut base: S, t: f64, bound: f64, rng: &mut RngState) -> Result<f64>
where
    S: FnMut(&mut RngState) -> f64,
{
    if t == 0.0 {
        return Ok(base(rng));
    }
    if !(bound > 0.0) {
        return Err(precondition("rejection bound must be positive"));
    }
    const BUDGET: usize = 1_000_000;
    for _ in 0..BUDGET {
        let x = base(rng);
        let w = x.powf(t) / bound;
        if w > 1.0 {
            return Err(precondition(format!("weight x^t = {} exceeds the rejection bound", x.powf(t))));
        }
        if rng.uniform() < w {
            return Ok(x);
        }
    }
    Err(Error::NonConvergence {
        what: "size-bias rejection sampler",
        budget: BUDGET,
    })
}

/// Sample mean of X^s with its standard error.
pub fn empirical_mellin(xs: &[f64], s: f64) -> Result<(f64, f64)> {
    if xs.is_empty() {
        return Err(Error::EmptyInput("sample"));
    }
    let n = xs.len() as f64;
    let (mut m, mut m2) = (0.0, 0.0);
    for &x in xs {
        let v = x.powf(s);
        m += v;
        m2 += v * v;
    }
    m /= n;
    let var = (m2 / n - m * m).max(0.0) * n / (n - 1.0).max(1.0);
    Ok((m, (var / n).sqrt()))
}
