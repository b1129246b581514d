//! Batch command-line front end. Every command writes RFC-4180 CSV with a
//! header row; every row carries the seed, the tolerance in force and the
//! library version.
//!
//! Exit codes: 0 when every check matches its expected outcome, 1 when a
//! check that should hold is violated, 2 when arguments are invalid or the
//! numerics fail.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::cm_probes::{
    bounds_probe, cm_probe_with, conjecture_cmcj_scan, geometric_grid, hermite_doubling, hermite_doubling_upper,
    k0_e1, lcm_probe_with, mills_doubling, monotone_probe_with, psi_cc, psi_doubling, psi_doubling_known, psi_kumma,
    turan_hermite, turan_hermite_upper, turan_psi, turan_psi_upper, uniform_grid, Direction, ProbeConfig,
    ProbeResult, ProbeVerdict, RealFn,
};
use crate::distributions::RngState;
use crate::error::{precondition, Error, Result};
use crate::identities::{conjecture_cjmain_scan, spec_by_name, verify_with, VerifyConfig};
use crate::thorin::{f_ax, gx_frullani, single_d_scan, thorin_cdf, thorin_density, ThorinParams};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_NUMERIC: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "bplab", version, about = "Identity-in-law verification, CM probes and Thorin measures for beta prime laws")]
pub struct Cli {
    /// Worker threads; 0 uses every core. Output order does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Output CSV path; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Base seed of the random streams.
    #[arg(long, global = true, env = "BPL_SEED", default_value_t = 42)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an identity in law by two-sample KS, Mellin transforms and densities.
    ///
    /// Columns: identity,params,channel,statistic,threshold,verdict,seed,tolerance,version.
    /// Channels are ks, mellin and density; a failed evaluation gives channel
    /// `numeric` with verdict `error`. Comma-separated parameter lists expand
    /// into their cartesian product.
    Verify(VerifyArgs),
    /// Probe a ratio of special functions for CM, LCM, monotonicity or bounds.
    ///
    /// Columns: ratio,params,check,order,n_points,n_fail,first_violation,verdict,expected,value,seed,tolerance,version.
    /// One row per check and derivative order, then one row per reported
    /// constant (check `metric:<name>`, number in `value`).
    Probe(ProbeArgs),
    /// Tabulate the Thorin measure of B′_{a,x}.
    ///
    /// Columns: a,x,t,f_ax,cdf,density,seed,tolerance,version. At a = 1 the
    /// `f_ax` column holds the Frullani integral g_x(t).
    Thorin(ThorinArgs),
    /// Run a conjecture scan.
    ///
    /// Columns: scan,point,metric,value,status,seed,tolerance,version.
    /// Status is PASS or FAIL on points covered by a proven result and
    /// EXPLORATORY elsewhere.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    TheoremA,
    TheoremB,
    PropB0,
    AbHalf,
    Free,
    FreeComplementary,
    HalfGaussian,
    Cor34,
    Cjmain,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::TheoremA => "theorem-a",
            Identity::TheoremB => "theorem-b",
            Identity::PropB0 => "prop-b0",
            Identity::AbHalf => "ab-half",
            Identity::Free => "free",
            Identity::FreeComplementary => "free-complementary",
            Identity::HalfGaussian => "half-gaussian",
            Identity::Cor34 => "cor34",
            Identity::Cjmain => "cjmain",
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub identity: Identity,
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub b: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub c: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub d: Vec<f64>,
    #[arg(long = "b-prime", value_delimiter = ',')]
    pub b_prime: Vec<f64>,
    /// Samples per side.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub mellin_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub density_tol: f64,
    /// Multiply the right-hand side by this factor (negative control).
    #[arg(long)]
    pub perturb: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ratio {
    /// Ψ(a,c,z)/Ψ(a,c′,z)
    PsiCc,
    /// Ψ(a,c,z)²/Ψ(2a,c,z)
    PsiDoubling,
    /// Ψ(a+c−c′,c,z)/Ψ(a,c′,z)
    PsiKumma,
    /// H₋ν(√z)²/H₋₂ν(√z)
    HermiteDoubling,
    /// K₀(z)²/E₁(2z)
    K0E1,
    /// H₋ν₋c(z)²/(H₋ν(z)H₋ν₋₂c(z))
    TuranHermite,
    /// Ψ(a,c−2λ,z)Ψ(a+2λ,c,z)/Ψ(a+λ,c−λ,z)²
    TuranPsi,
    /// −r⁽ⁿ⁾(√z)²/r⁽²ⁿ⁺¹⁾(√z) for Mill's ratio r
    Mills,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    pub ratio: Ratio,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long = "c-prime", allow_hyphen_values = true)]
    pub c_prime: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Derivative index for the Mill's ratio family.
    #[arg(long)]
    pub n: Option<usize>,
    /// Highest derivative order checked.
    #[arg(long, default_value_t = 6)]
    pub order: usize,
    /// Grid as lo:hi:n (uniform) or lo:hi:n:log.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub noise_scale: f64,
}

#[derive(Debug, Args)]
pub struct ThorinArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub x: f64,
    /// Grid as lo:hi:n (uniform) or lo:hi:n:log.
    #[arg(long, default_value = "0.1:10:50")]
    pub t: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    /// Conjectured sqrt-ratio identity over a × b.
    Cjmain,
    /// CM of Ψ(a,c,z)²/Ψ(2a,c,z) over a × c.
    Cmcj,
    /// CM of −r⁽ⁿ⁾(z)²/r⁽²ⁿ⁺¹⁾(z) for each n.
    Cmmi,
    /// a′P[G_{a′,b} ≤ t] against aP[G_{a,b} ≤ t] for a < a′ in the a list.
    SingleD,
    /// CM of Ψ(a+c−c′,c,z)/Ψ(a,c′,z) for c′ < c < 1.
    Kumma,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub kind: ScanKind,
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Vec<f64>,
    #[arg(long = "c-prime", value_delimiter = ',', allow_hyphen_values = true)]
    pub c_prime: Vec<f64>,
    /// Derivative indices for the Mill's ratio scan.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Samples per side for identity scans.
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 6)]
    pub order: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, default_value = "0.1:10:20")]
    pub t: String,
}

/// Parses `lo:hi:n` or `lo:hi:n:log`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || precondition(format!("grid must be lo:hi:n or lo:hi:n:log, got {spec:?}"));
    if !(parts.len() == 3 || (parts.len() == 4 && parts[3] == "log")) {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(bad());
    }
    if n == 1 && lo == hi {
        return if parts.len() == 4 && !(lo > 0.0) { Err(bad()) } else { Ok(vec![lo]) };
    }
    if !(lo < hi) || n < 2 {
        return Err(bad());
    }
    if parts.len() == 4 {
        if !(lo > 0.0) {
            return Err(bad());
        }
        Ok(geometric_grid(lo, hi, n))
    } else {
        Ok(uniform_grid(lo, hi, n))
    }
}

fn num(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v != 0.0 && v.is_finite() && (v.abs() < 1e-4 || v.abs() >= 1e15) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn params_str(p: &[(&str, f64)]) -> String {
    p.iter().map(|(k, v)| format!("{k}={}", num(*v))).collect::<Vec<_>>().join(";")
}

type Rows = Vec<Vec<String>>;

fn write_csv(out: &Option<PathBuf>, header: &[&str], rows: &Rows) -> Result<()> {
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p).map_err(|e| precondition(format!("cannot write {}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    let io_err = |e: csv::Error| precondition(format!("CSV output failed: {e}"));
    w.write_record(header).map_err(io_err)?;
    for r in rows {
        w.write_record(r).map_err(io_err)?;
    }
    w.flush().map_err(|e| precondition(format!("CSV output failed: {e}")))?;
    Ok(())
}

/// Parses `args` (program name first) and runs the command, returning the
/// exit code. Errors are reported on standard error.
pub fn run_from<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_NUMERIC
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: &Cli) -> u8 {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return EXIT_NUMERIC;
        }
    };
    let result = pool.install(|| match &cli.command {
        Command::Verify(a) => cmd_verify(a, cli),
        Command::Probe(a) => cmd_probe(a, cli),
        Command::Thorin(a) => cmd_thorin(a, cli),
        Command::Scan(a) => cmd_scan(a, cli),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_NUMERIC
        }
    }
}

fn cartesian(lists: &[(&'static str, &[f64])]) -> Vec<Vec<(&'static str, f64)>> {
    let mut out: Vec<Vec<(&'static str, f64)>> = vec![Vec::new()];
    for (k, vals) in lists {
        if vals.is_empty() {
            continue;
        }
        out = out
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push((*k, *v));
                    q
                })
            })
            .collect();
    }
    out
}

pub fn cmd_verify(args: &VerifyArgs, cli: &Cli) -> Result<u8> {
    let points = cartesian(&[
        ("a", &args.a),
        ("b", &args.b),
        ("c", &args.c),
        ("d", &args.d),
        ("b-prime", &args.b_prime),
    ]);
    let name = args.identity.name();
    // Build every spec first: parameter errors abort before any sampling.
    let specs = points
        .iter()
        .map(|p| {
            let map: BTreeMap<String, f64> = p.iter().map(|(k, v)| (k.to_string(), *v)).collect();
            let spec = spec_by_name(name, &map)?;
            Ok(match args.perturb {
                Some(f) if f > 0.0 => spec.scaled_rhs(f),
                Some(f) => return Err(precondition(format!("perturbation factor must be positive, got {f}"))),
                None => spec,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cfg = VerifyConfig {
        alpha: args.alpha,
        mellin_tol: args.mellin_tol,
        density_tol: args.density_tol,
    };
    let root = RngState::new(cli.seed);
    let reports: Vec<_> = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| verify_with(spec, args.n, &spec.default_s_grid(), &root.child(i as u64), &cfg))
        .collect();
    let mut rows = Rows::new();
    let mut code = EXIT_OK;
    let seed = cli.seed.to_string();
    for (p, r) in points.iter().zip(&reports) {
        let ps = params_str(p);
        let mut row = |channel: &str, stat: f64, thr: f64, ok: bool, tol: f64| {
            rows.push(vec![
                name.into(),
                ps.clone(),
                channel.into(),
                num(stat),
                num(thr),
                if ok { "pass" } else { "fail" }.into(),
                seed.clone(),
                num(tol),
                VERSION.into(),
            ]);
        };
        if let Some(msg) = &r.failure {
            eprintln!("{name} {ps}: {msg}");
            rows.push(vec![
                name.into(),
                ps.clone(),
                "numeric".into(),
                "NaN".into(),
                "NaN".into(),
                "error".into(),
                seed.clone(),
                num(cfg.mellin_tol),
                VERSION.into(),
            ]);
            code = EXIT_NUMERIC;
            continue;
        }
        row("ks", r.ks_statistic, r.ks_threshold, r.ks_statistic < r.ks_threshold, cfg.alpha);
        if let Some(e) = r.mellin_max_relerr {
            row("mellin", e, cfg.mellin_tol, e < cfg.mellin_tol, cfg.mellin_tol);
        }
        if let Some(e) = r.density_max_relerr {
            row("density", e, cfg.density_tol, e < cfg.density_tol, cfg.density_tol);
        }
        if !r.passed() && code == EXIT_OK {
            code = EXIT_VIOLATION;
        }
    }
    write_csv(
        &cli.out,
        &["identity", "params", "channel", "statistic", "threshold", "verdict", "seed", "tolerance", "version"],
        &rows,
    )?;
    Ok(code)
}

/// One check of the probe catalog.
pub struct CatalogCheck {
    pub check: &'static str,
    pub result: ProbeResult,
    /// None marks an exploratory check.
    pub expected: Option<ProbeVerdict>,
}

fn need(v: Option<f64>, flag: &str) -> Result<f64> {
    v.ok_or_else(|| precondition(format!("this ratio needs --{flag}")))
}

/// Runs the checks of the catalog entry for `args.ratio` with the expected
/// outcome of each one.
pub fn probe_catalog(args: &ProbeArgs) -> Result<(Vec<(&'static str, f64)>, Vec<CatalogCheck>)> {
    let cfg = ProbeConfig::default().with_noise_scale(args.noise_scale);
    let z = match &args.z {
        Some(s) => parse_grid(s)?,
        None => match args.ratio {
            Ratio::TuranHermite => uniform_grid(-4.0, 6.0, 101),
            _ => geometric_grid(1e-2, 50.0, 120),
        },
    };
    let order = args.order;
    let cm = |f: &RealFn| cm_probe_with(&**f, &z, order, &cfg);
    let lcm = |f: &RealFn| lcm_probe_with(&**f, &z, order, &cfg);
    let dec = |f: &RealFn, grid: &[f64]| monotone_probe_with(&**f, grid, Direction::Decreasing, &cfg);
    let holds = Some(ProbeVerdict::Holds);
    let wide = geometric_grid(1e-6, 1e4, 100);
    let mut checks = Vec::new();
    let params: Vec<(&'static str, f64)>;
    match args.ratio {
        Ratio::PsiCc => {
            let (a, c, cp) = (need(args.a, "a")?, need(args.c, "c")?, need(args.c_prime, "c-prime")?);
            params = vec![("a", a), ("c", c), ("c'", cp)];
            let f = psi_cc(a, c, cp)?;
            checks.push(CatalogCheck { check: "cm", result: cm(&f)?, expected: holds });
            let exp = if a <= 1.0 { holds } else { None };
            checks.push(CatalogCheck { check: "lcm", result: lcm(&f)?, expected: exp });
        }
        Ratio::PsiDoubling => {
            let (a, c) = (need(args.a, "a")?, need(args.c, "c")?);
            params = vec![("a", a), ("c", c)];
            let f = psi_doubling(a, c)?;
            checks.push(CatalogCheck { check: "cm", result: cm(&f)?, expected: psi_doubling_known(a, c) });
            if (0.5..=1.0).contains(&c) {
                checks.push(CatalogCheck { check: "decreasing", result: dec(&f, &z)?, expected: holds });
            }
        }
        Ratio::PsiKumma => {
            let (a, c, cp) = (need(args.a, "a")?, need(args.c, "c")?, need(args.c_prime, "c-prime")?);
            params = vec![("a", a), ("c", c), ("c'", cp)];
            let f = psi_kumma(a, c, cp)?;
            checks.push(CatalogCheck { check: "cm", result: cm(&f)?, expected: None });
        }
        Ratio::HermiteDoubling => {
            let nu = need(args.nu, "nu")?;
            params = vec![("nu", nu)];
            let f = hermite_doubling(nu)?;
            checks.push(CatalogCheck { check: "cm", result: cm(&f)?, expected: holds });
            let exp = if nu <= 2.0 { holds } else { None };
            checks.push(CatalogCheck { check: "lcm", result: lcm(&f)?, expected: exp });
            let b = bounds_probe(&*f, &wide, 1.0, hermite_doubling_upper(nu), &cfg)?;
            checks.push(CatalogCheck { check: "bounds", result: b, expected: holds });
        }
        Ratio::K0E1 => {
            params = vec![];
            let f = k0_e1();
            checks.push(CatalogCheck { check: "cm", result: cm(&f)?, expected: holds });
        }
        Ratio::TuranHermite => {
            let (nu, c) = (need(args.nu, "nu")?, need(args.c, "c")?);
            params = vec![("nu", nu), ("c", c)];
            let f = turan_hermite(nu, c)?;
            checks.push(CatalogCheck { check: "decreasing", result: dec(&f, &z)?, expected: holds });
            let b = bounds_probe(&*f, &z, 1.0, turan_hermite_upper(nu, c), &cfg)?;
            checks.push(CatalogCheck { check: "bounds", result: b, expected: holds });
        }
        Ratio::TuranPsi => {
            let (a, c, l) = (need(args.a, "a")?, need(args.c, "c")?, need(args.lambda, "lambda")?);
            params = vec![("a", a), ("c", c), ("lambda", l)];
            let f = turan_psi(a, c, l)?;
            checks.push(CatalogCheck { check: "decreasing", result: dec(&f, &z)?, expected: holds });
            let b = bounds_probe(&*f, &wide, 1.0, turan_psi_upper(c, l), &cfg)?;
            checks.push(CatalogCheck { check: "bounds", result: b, expected: holds });
        }
        Ratio::Mills => {
            let n = args.n.unwrap_or(0);
            params = vec![("n", n as f64)];
            let f = mills_doubling(n, true);
            checks.push(CatalogCheck { check: "cm", result: cm(&f)?, expected: holds });
            let exp = if n <= 1 { holds } else { None };
            checks.push(CatalogCheck { check: "lcm", result: lcm(&f)?, expected: exp });
        }
    }
    Ok((params, checks))
}

fn ratio_name(r: Ratio) -> String {
    r.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

pub fn cmd_probe(args: &ProbeArgs, cli: &Cli) -> Result<u8> {
    let (params, checks) = probe_catalog(args)?;
    let ps = params_str(&params);
    let name = ratio_name(args.ratio);
    let seed = cli.seed.to_string();
    let mut rows = Rows::new();
    let mut code = EXIT_OK;
    for ch in &checks {
        let r = &ch.result;
        let expected = ch.expected.map(|v| v.as_str()).unwrap_or("exploratory");
        if let Some(e) = ch.expected {
            if e != r.verdict {
                code = EXIT_VIOLATION;
            }
        }
        let (first_order, first_z) = match r.first_violation {
            Some((k, z)) => (Some(k), num(z)),
            None => (None, String::new()),
        };
        for (k, row) in r.sign_table.iter().enumerate() {
            // derivative orders start at 1 for CM, at 0 for LCM
            let order = match ch.check {
                "cm" => k + 1,
                _ => k,
            };
            let fails = row.iter().filter(|b| !**b).count();
            let witness = if first_order == Some(k) { first_z.clone() } else { String::new() };
            rows.push(vec![
                name.clone(),
                ps.clone(),
                ch.check.into(),
                order.to_string(),
                row.len().to_string(),
                fails.to_string(),
                witness,
                r.verdict.as_str().into(),
                expected.into(),
                String::new(),
                seed.clone(),
                num(r.noise_floor),
                VERSION.into(),
            ]);
        }
        for (key, v) in &r.metrics {
            rows.push(vec![
                name.clone(),
                ps.clone(),
                format!("metric:{key}"),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                num(*v),
                seed.clone(),
                num(r.noise_floor),
                VERSION.into(),
            ]);
        }
    }
    write_csv(
        &cli.out,
        &[
            "ratio",
            "params",
            "check",
            "order",
            "n_points",
            "n_fail",
            "first_violation",
            "verdict",
            "expected",
            "value",
            "seed",
            "tolerance",
            "version",
        ],
        &rows,
    )?;
    Ok(code)
}

pub fn cmd_thorin(args: &ThorinArgs, cli: &Cli) -> Result<u8> {
    let p = ThorinParams::new(args.a, args.x)?;
    let t = parse_grid(&args.t)?;
    if !(t[0] > 0.0) {
        return Err(precondition("t grid must be positive"));
    }
    let vals: Vec<(f64, f64, f64)> = t
        .par_iter()
        .map(|&t| -> Result<(f64, f64, f64)> {
            let f = if args.a == 1.0 { gx_frullani(args.x, t)? } else { f_ax(p, t)? };
            Ok((f, thorin_cdf(p, t)?, thorin_density(p, t)?))
        })
        .collect::<Result<_>>()?;
    let seed = cli.seed.to_string();
    let rows: Rows = t
        .iter()
        .zip(&vals)
        .map(|(t, (f, c, d))| {
            vec![
                num(args.a),
                num(args.x),
                num(*t),
                num(*f),
                num(*c),
                num(*d),
                seed.clone(),
                num(1e-10),
                VERSION.into(),
            ]
        })
        .collect();
    write_csv(
        &cli.out,
        &["a", "x", "t", "f_ax", "cdf", "density", "seed", "tolerance", "version"],
        &rows,
    )?;
    Ok(EXIT_OK)
}

fn scan_row(scan: &str, point: &str, metric: &str, value: String, status: &str, seed: u64, tol: f64) -> Vec<String> {
    vec![
        scan.into(),
        point.into(),
        metric.into(),
        value,
        status.into(),
        seed.to_string(),
        num(tol),
        VERSION.into(),
    ]
}

fn probe_rows(rows: &mut Rows, scan: &str, point: &str, r: &ProbeResult, status: &str, seed: u64) {
    let tol = r.noise_floor;
    rows.push(scan_row(scan, point, "verdict", r.verdict.as_str().into(), status, seed, tol));
    if let Some((k, z)) = r.first_violation {
        rows.push(scan_row(scan, point, "first_violation_order", (k + 1).to_string(), status, seed, tol));
        rows.push(scan_row(scan, point, "first_violation_z", num(z), status, seed, tol));
    }
}

pub fn cmd_scan(args: &ScanArgs, cli: &Cli) -> Result<u8> {
    let seed = cli.seed;
    let z = match &args.z {
        Some(s) => parse_grid(s)?,
        None => geometric_grid(1e-2, 50.0, 120),
    };
    let cfg = ProbeConfig::default();
    let mut rows = Rows::new();
    let mut code = EXIT_OK;
    let nonempty = |v: &[f64], flag: &'static str| -> Result<()> {
        if v.is_empty() {
            Err(Error::EmptyInput(flag))
        } else {
            Ok(())
        }
    };
    match args.kind {
        ScanKind::Cjmain => {
            nonempty(&args.a, "--a")?;
            nonempty(&args.b, "--b")?;
            let grid: Vec<(f64, f64)> = args.a.iter().flat_map(|&a| args.b.iter().map(move |&b| (a, b))).collect();
            let pts = conjecture_cjmain_scan(&grid, args.samples, &RngState::new(seed))?;
            for p in &pts {
                let point = params_str(&[("a", p.a), ("b", p.b)]);
                let status = if !p.proven {
                    "EXPLORATORY"
                } else if p.consistent(1e-6) {
                    "PASS"
                } else {
                    code = EXIT_VIOLATION;
                    "FAIL"
                };
                let failure = p.error.clone().or_else(|| p.report.failure.clone());
                if let Some(msg) = failure {
                    rows.push(scan_row("cjmain", &point, "error", msg, status, seed, 1e-6));
                    code = EXIT_NUMERIC;
                }
                let r = &p.report;
                rows.push(scan_row("cjmain", &point, "ks_statistic", num(r.ks_statistic), status, seed, r.mellin_tol));
                rows.push(scan_row("cjmain", &point, "ks_threshold", num(r.ks_threshold), status, seed, r.mellin_tol));
                let m = r.mellin_max_relerr.unwrap_or(f64::NAN);
                rows.push(scan_row("cjmain", &point, "mellin_relerr", num(m), status, seed, r.mellin_tol));
                let ie = p.max_integral_relerr();
                rows.push(scan_row("cjmain", &point, "integral_relerr", num(ie), status, seed, 1e-6));
            }
        }
        ScanKind::Cmcj => {
            nonempty(&args.a, "--a")?;
            nonempty(&args.c, "--c")?;
            let scan = conjecture_cmcj_scan(&args.a, &args.c, &z, args.order)?;
            for row in &scan {
                let point = params_str(&[("a", row.a), ("c", row.c)]);
                let status = match row.expected {
                    None => "EXPLORATORY",
                    Some(e) if e == row.result.verdict => "PASS",
                    Some(_) => {
                        code = EXIT_VIOLATION;
                        "FAIL"
                    }
                };
                probe_rows(&mut rows, "cmcj", &point, &row.result, status, seed);
            }
        }
        ScanKind::Cmmi => {
            let ns = if args.n.is_empty() { vec![0, 1, 2] } else { args.n.clone() };
            let results: Vec<ProbeResult> = ns
                .par_iter()
                .map(|&n| cm_probe_with(&*mills_doubling(n, false), &z, args.order, &cfg))
                .collect::<Result<_>>()?;
            for (n, r) in ns.iter().zip(&results) {
                probe_rows(&mut rows, "cmmi", &format!("n={n}"), r, "EXPLORATORY", seed);
            }
        }
        ScanKind::SingleD => {
            nonempty(&args.a, "--a")?;
            nonempty(&args.b, "--b")?;
            let t = parse_grid(&args.t)?;
            for r in single_d_scan(&args.a, &args.b, &t)? {
                let point = params_str(&[("a", r.a), ("a'", r.a_prime), ("b", r.b), ("t", r.t)]);
                rows.push(scan_row("single-d", &point, "lhs", num(r.lhs), "EXPLORATORY", seed, 1e-10));
                rows.push(scan_row("single-d", &point, "rhs", num(r.rhs), "EXPLORATORY", seed, 1e-10));
                rows.push(scan_row("single-d", &point, "holds", r.holds.to_string(), "EXPLORATORY", seed, 1e-10));
            }
        }
        ScanKind::Kumma => {
            nonempty(&args.a, "--a")?;
            nonempty(&args.c, "--c")?;
            nonempty(&args.c_prime, "--c-prime")?;
            let mut cells = Vec::new();
            for &a in &args.a {
                for &c in &args.c {
                    for &cp in &args.c_prime {
                        cells.push((a, c, cp));
                    }
                }
            }
            let results: Vec<ProbeResult> = cells
                .par_iter()
                .map(|&(a, c, cp)| cm_probe_with(&*psi_kumma(a, c, cp)?, &z, args.order, &cfg))
                .collect::<Result<_>>()?;
            for (&(a, c, cp), r) in cells.iter().zip(&results) {
                let point = params_str(&[("a", a), ("c", c), ("c'", cp)]);
                probe_rows(&mut rows, "kumma", &point, r, "EXPLORATORY", seed);
            }
        }
    }
    write_csv(
        &cli.out,
        &["scan", "point", "metric", "value", "status", "seed", "tolerance", "version"],
        &rows,
    )?;
    Ok(code)
}
