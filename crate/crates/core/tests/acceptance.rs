//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. A substring argument restricts the run, e.g.
//! `cargo test --test acceptance -- thorin`.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use bplab::cm_probes::{
    bounds_probe, cm_probe, geometric_grid, hermite_doubling, hermite_doubling_upper, k0_e1, lcm_probe, mills_suite,
    monotone_probe, psi_cc, psi_doubling, stoo_big_lambda, stoo_check, turan_hermite, turan_hermite_upper, turan_psi,
    turan_psi_upper, uniform_grid, ProbeConfig, ProbeResult, ProbeVerdict,
};
use bplab::convolution::{
    sum_density_2f1, sum_density_appell, sum_density_direct, sum_density_pfaff1, sum_density_pfaff2, SumSpec,
};
use bplab::distributions::{BetaPrimeParams, RngState};
use bplab::identities::{
    ab_half_spec, cor34_spec, free_spec, free_spec_complementary, half_gaussian_spec, lemma_densities, prop_b0_spec,
    theorem_a_spec, theorem_b_spec, verify, IdentitySpec, LemmaDensity,
};
use bplab::quad::integrate_positive_line;
use bplab::special::{hermite_h_neg, mills_ratio};
use bplab::thorin::{awk_density, thorin_cdf, thorin_cdf_a1, thorin_density, x_ordering_check, ThorinParams};
use bplab::EvalOptions;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn opts() -> EvalOptions {
    EvalOptions::default()
}

// Independent oracles -------------------------------------------------------

fn tgamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Regularized lower incomplete gamma by its power series.
fn gamma_p_series(s: f64, t: f64) -> f64 {
    let mut term = 1.0 / s;
    let mut sum = term;
    for n in 1..10_000 {
        term *= t / (s + n as f64);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    (s * t.ln() - t - libm::lgamma(s)).exp() * sum
}

/// Mills ratio through erfc.
fn mills_oracle(x: f64) -> f64 {
    0.5 * libm::erfc(x / 2f64.sqrt()) * (2.0 * PI).sqrt() * (0.5 * x * x).exp()
}

/// Composite Simpson rule on [a, b] with n (even) panels.
fn simpson<F: FnMut(f64) -> Result<f64, String>>(mut f: F, a: f64, b: f64, n: usize) -> Result<f64, String> {
    let h = (b - a) / n as f64;
    let mut s = f(a)? + f(b)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h)?;
    }
    Ok(s * h / 3.0)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

// Identity verification ------------------------------------------------------

const N_SAMPLES: usize = 100_000;
const SEED: u64 = 42;

fn check_identity(spec: IdentitySpec) -> Result<f64, String> {
    let grid = spec.default_s_grid();
    ensure!(grid.len() == 5, "{}: s-grid has {} points", spec.name, grid.len());
    let t = Instant::now();
    let r = verify(&spec, N_SAMPLES, &grid, &RngState::new(SEED));
    let secs = t.elapsed().as_secs_f64();
    ensure!(
        r.passed(),
        "{}: ks {:.5} / {:.5}, mellin {:?}, density {:?}, failure {:?}",
        spec.name,
        r.ks_statistic,
        r.ks_threshold,
        r.mellin_max_relerr,
        r.density_max_relerr,
        r.failure
    );
    ensure!(r.mellin_tol <= 1e-6 && r.n_samples == N_SAMPLES, "{}: thresholds loosened", spec.name);
    ensure!(secs < 60.0, "{}: took {secs:.1} s", spec.name);
    Ok(secs)
}

fn identities_pass(specs: Vec<Result<IdentitySpec, bplab::Error>>) -> Outcome {
    let n = specs.len();
    let mut slowest: f64 = 0.0;
    for s in specs {
        slowest = slowest.max(check_identity(s.map_err(e)?)?);
    }
    Ok(format!("{n} points pass, slowest {slowest:.1} s"))
}

fn c1_theorem_a() -> Outcome {
    for a in [0.3, 1.0, 2.5] {
        let s = theorem_a_spec(a).map_err(e)?;
        let g = s.default_s_grid();
        ensure!(g.iter().all(|&x| x > -2.0 * a && x < 0.5), "s-grid {g:?} leaves (−2a, 1/2)");
    }
    identities_pass([0.3, 1.0, 2.5].into_iter().map(theorem_a_spec).collect())
}

fn c2_theorem_b() -> Outcome {
    let pts = [(0.5, 0.2), (0.5, 0.4), (0.7, 0.3), (0.9, 0.1)];
    identities_pass(pts.into_iter().map(|(a, b)| theorem_b_spec(a, b)).collect())
}

fn c3_propositions() -> Outcome {
    identities_pass(vec![
        prop_b0_spec(0.5, 0.3, 1.2),
        prop_b0_spec(2.0, 1.0, 1.5),
        ab_half_spec(0.2),
        ab_half_spec(0.3),
        free_spec(1.0, 1.0, 1.0, 1.0),
        free_spec(0.5, 2.0, 1.5, 1.0),
        free_spec_complementary(1.5, 1.0, 0.5, 2.0),
        half_gaussian_spec(0.5),
        half_gaussian_spec(2.0),
        cor34_spec(0.3),
        cor34_spec(1.5),
    ])
}

fn c4_lemma_densities() -> Outcome {
    let mut worst: f64 = 0.0;
    let left = uniform_grid(1.02, 1.98, 20);
    let right = geometric_grid(2.05, 200.0, 20);
    let cases = [
        (LemmaDensity::BetastrF, LemmaDensity::BetastrG, 0.7, {
            let a: f64 = 0.7;
            (2.0 * tgamma(2.0 * a) / (a * tgamma(a).powi(2)), a - 1.0)
        }),
        (LemmaDensity::BetastrbF, LemmaDensity::BetastrbG, 0.3, {
            let b: f64 = 0.3;
            (2.0 * tgamma(b + 0.5) / (PI.sqrt() * tgamma(b + 1.0)), -b)
        }),
    ];
    for (fk, gk, p, (c, ex)) in cases {
        for &x in left.iter().chain(&right) {
            let f = lemma_densities(fk, p, x).map_err(e)?;
            let g = lemma_densities(gk, p, x).map_err(e)?;
            let r = rel(g, c * x.powf(ex) * f);
            worst = worst.max(r);
            ensure!(r < 1e-8, "{gk:?} at x={x}: rel err {r:e}");
        }
    }
    Ok(format!("80 points, max rel err {worst:.1e}"))
}

fn c5_convolution_forms() -> Outcome {
    let mut rng = RngState::new(7);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let a = 0.1 + 2.9 * rng.uniform();
        let b = 0.1 + 2.9 * rng.uniform();
        let x = (rng.uniform() * (20f64.ln() - 0.01f64.ln()) + 0.01f64.ln()).exp();
        let p = BetaPrimeParams::new(a, b).map_err(e)?;
        let spec = SumSpec::iid(p);
        let v = [
            sum_density_2f1(p, x, &opts()).map_err(e)?,
            sum_density_appell(&spec, x, &opts()).map_err(e)?,
            sum_density_direct(&spec, x, &opts()).map_err(e)?,
            sum_density_pfaff1(p, x, &opts()).map_err(e)?,
            sum_density_pfaff2(p, x, &opts()).map_err(e)?,
        ];
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let r = rel(v[i], v[j]);
                worst = worst.max(r);
                ensure!(r < 1e-8, "(a,b,x)=({a},{b},{x}): forms {i},{j} differ by {r:e}");
            }
        }
    }
    let mut mass_err: f64 = 0.0;
    for (a, b) in [(0.3, 0.7), (1.0, 1.0), (2.5, 0.4)] {
        let p = BetaPrimeParams::new(a, b).map_err(e)?;
        let m = integrate_positive_line(|x| sum_density_2f1(p, x, &opts()), 2.0 * a, b, 1.0, &[], &opts()).map_err(e)?;
        mass_err = mass_err.max((m - 1.0).abs());
        ensure!((m - 1.0).abs() < 1e-8, "mass at (a,b)=({a},{b}) is {m}");
    }
    Ok(format!("50 triples, max pairwise rel err {worst:.1e}; mass err {mass_err:.1e}"))
}

fn holds_to(r: &ProbeResult, min_rows: usize, what: &str) -> Result<(), String> {
    ensure!(
        r.verdict == ProbeVerdict::Holds,
        "{what}: {} (first violation {:?})",
        r.verdict.as_str(),
        r.first_violation
    );
    ensure!(r.sign_table.len() >= min_rows, "{what}: only {} orders checked", r.sign_table.len());
    Ok(())
}

fn c6_cm_positive() -> Outcome {
    let z = geometric_grid(1e-2, 50.0, 120);
    let mut n = 0;
    for (a, c, cp) in [(0.5, 0.5, -0.5), (1.0, 0.3, -1.0), (2.5, 0.8, 0.2)] {
        let f = psi_cc(a, c, cp).map_err(e)?;
        holds_to(&cm_probe(&*f, &z, 6).map_err(e)?, 6, &format!("psi-cc cm ({a},{c},{cp})"))?;
        n += 1;
        if a <= 1.0 {
            // rows are orders 0..=6
            holds_to(&lcm_probe(&*f, &z, 6).map_err(e)?, 7, &format!("psi-cc lcm ({a},{c},{cp})"))?;
            n += 1;
        }
    }
    for nu in [0.5, 1.0, 3.0] {
        let f = hermite_doubling(nu).map_err(e)?;
        holds_to(&cm_probe(&*f, &z, 6).map_err(e)?, 6, &format!("hermite-doubling cm nu={nu}"))?;
        n += 1;
    }
    for nu in [0.5, 1.5] {
        let f = hermite_doubling(nu).map_err(e)?;
        holds_to(&lcm_probe(&*f, &z, 6).map_err(e)?, 7, &format!("hermite-doubling lcm nu={nu}"))?;
        n += 1;
    }
    for (a, c) in [(0.5, 0.5), (0.6, 0.6), (0.8, 0.8), (1.0, 1.0)] {
        let f = psi_doubling(a, c).map_err(e)?;
        holds_to(&cm_probe(&*f, &z, 6).map_err(e)?, 6, &format!("psi-doubling cm ({a},{c})"))?;
        n += 1;
    }
    holds_to(&cm_probe(&*k0_e1(), &z, 6).map_err(e)?, 6, "k0-e1 cm")?;
    n += 1;
    Ok(format!("{n} probes hold to order 6 on [1e-2, 50]"))
}

fn c7_cm_negative() -> Outcome {
    let z = geometric_grid(1e-2, 50.0, 120);
    let mut out = Vec::new();
    for (a, c) in [(0.7, -0.5), (1.0, -0.8)] {
        let r = cm_probe(&*psi_doubling(a, c).map_err(e)?, &z, 6).map_err(e)?;
        ensure!(r.verdict == ProbeVerdict::Violated, "({a},{c}): {}", r.verdict.as_str());
        let (k, w) = r.first_violation.ok_or("violation without witness")?;
        out.push(format!("({a},{c}) order {} at z={w:.3}", k + 1));
    }
    Ok(out.join("; "))
}

fn c8_monotone_turan() -> Outcome {
    let cfg = ProbeConfig::default();
    let zpos = geometric_grid(1e-2, 50.0, 120);
    let wide = geometric_grid(1e-6, 1e4, 100);
    let real = uniform_grid(-4.0, 6.0, 101);
    let dec = |r: ProbeResult, what: String| -> Result<(), String> {
        ensure!(r.holds(), "{what} not decreasing: {:?}", r.first_violation);
        Ok(())
    };
    for (a, c) in [(0.3, 0.6), (1.0, 0.5), (2.0, 0.9)] {
        let f = psi_doubling(a, c).map_err(e)?;
        dec(monotone_probe(&*f, &zpos).map_err(e)?, format!("psi-doubling ({a},{c})"))?;
    }
    for (nu, c) in [(0.5, 0.5), (1.0, 1.0), (2.0, 0.3)] {
        let f = turan_hermite(nu, c).map_err(e)?;
        dec(monotone_probe(&*f, &real).map_err(e)?, format!("turan-hermite ({nu},{c})"))?;
        let b = bounds_probe(&*f, &real, 1.0, turan_hermite_upper(nu, c), &cfg).map_err(e)?;
        ensure!(b.holds(), "turan-hermite ({nu},{c}) bounds: {:?}", b.first_violation);
    }
    for (a, c, l) in [(0.5, 0.5, 0.25), (1.0, 0.0, 0.5), (2.0, -1.0, 1.0)] {
        let f = turan_psi(a, c, l).map_err(e)?;
        dec(monotone_probe(&*f, &wide).map_err(e)?, format!("turan-psi ({a},{c},{l})"))?;
        let b = bounds_probe(&*f, &wide, 1.0, turan_psi_upper(c, l), &cfg).map_err(e)?;
        ensure!(b.holds(), "turan-psi ({a},{c},{l}) bounds: {:?}", b.first_violation);
    }
    let mut worst: f64 = 0.0;
    for nu in [0.5, 1.0, 3.0] {
        let f = hermite_doubling(nu).map_err(e)?;
        let up = hermite_doubling_upper(nu);
        let b = bounds_probe(&*f, &wide, 1.0, up, &cfg).map_err(e)?;
        ensure!(b.holds(), "hermite-doubling nu={nu} bounds: {:?}", b.first_violation);
        // constant against the Γ formula and against the ratio at the origin
        let formula = tgamma(nu / 2.0).powi(2) * tgamma(2.0 * nu) / (2.0 * tgamma(nu).powi(3));
        let h = hermite_h_neg(nu, 0.0, &opts()).map_err(e)?;
        let at0 = h * h / hermite_h_neg(2.0 * nu, 0.0, &opts()).map_err(e)?;
        worst = worst.max(rel(up, formula)).max(rel(at0, formula));
    }
    for (nu, c) in [(0.5, 0.5), (1.0, 1.0), (2.0, 0.3), (1.0, 0.5)] {
        let formula = tgamma(nu) * tgamma(nu + 2.0 * c) / tgamma(nu + c).powi(2);
        worst = worst.max(rel(turan_hermite_upper(nu, c), formula));
    }
    for (c, l) in [(0.5, 0.25), (0.0, 0.5), (-1.0, 1.0)] {
        let formula = tgamma(1.0 - c) * tgamma(1.0 - c + 2.0 * l) / tgamma(1.0 - c + l).powi(2);
        worst = worst.max(rel(turan_psi_upper(c, l), formula));
    }
    // closed values: π/2, 4/π, 4/π
    worst = worst
        .max(rel(hermite_doubling_upper(1.0), PI / 2.0))
        .max(rel(turan_hermite_upper(1.0, 0.5), 4.0 / PI))
        .max(rel(turan_psi_upper(0.0, 0.5), 4.0 / PI));
    ensure!(worst < 1e-10, "bound constants off by {worst:e}");
    Ok(format!("monotone and strict bounds hold; constants within {worst:.1e}"))
}

fn c9_stochastic_order() -> Outcome {
    let x = geometric_grid(1e-3, 1e3, 200);
    for (a, b) in [(1.0, 0.8), (0.5, 0.5)] {
        let r = stoo_check(a, b, &x).map_err(e)?;
        ensure!(r.holds(), "({a},{b}) dominance: {}", r.verdict.as_str());
        ensure!(r.metric("crossings") == Some(1.0), "({a},{b}) crossings {:?}", r.metric("crossings"));
    }
    let mut wit = Vec::new();
    for (a, b) in [(1.0, 2.0), (0.5, 1.5)] {
        let r = stoo_check(a, b, &x).map_err(e)?;
        ensure!(r.verdict == ProbeVerdict::Violated, "({a},{b}): {}", r.verdict.as_str());
        let (_, w) = r.first_violation.ok_or("no witness")?;
        wit.push(format!("({a},{b}) at x={w:.3}"));
    }
    for a in [0.3, 1.0, 2.5] {
        let l = stoo_big_lambda(a, 1.0);
        ensure!((l - 1.0).abs() < 1e-12, "Lambda({a},1) = {l}");
    }
    Ok(format!("single crossing + dominance hold; failures {}", wit.join(", ")))
}

fn c10_thorin() -> Outcome {
    let tgrid = geometric_grid(1e-3, 1e3, 60);
    let mut mass_err: f64 = 0.0;
    for a in [0.25, 0.5, 0.75] {
        for x in [0.5, 1.0, 2.0] {
            let p = ThorinParams::new(a, x).map_err(e)?;
            let cdf: Vec<f64> = tgrid.iter().map(|&t| thorin_cdf(p, t)).collect::<Result<_, _>>().map_err(e)?;
            ensure!(cdf.windows(2).all(|w| w[1] >= w[0]), "cdf not monotone at ({a},{x})");
            let m = thorin_cdf(p, 1e5).map_err(e)? - thorin_cdf(p, 1e-16).map_err(e)?;
            mass_err = mass_err.max((m - 1.0).abs());
            ensure!((m - 1.0).abs() < 1e-4, "cdf mass {m} at ({a},{x})");
        }
    }
    // the density integrates to one, in u = ln t
    for (a, x) in [(0.5, 0.5), (0.25, 2.0)] {
        let p = ThorinParams::new(a, x).map_err(e)?;
        let m = simpson(|u| Ok(u.exp() * thorin_density(p, u.exp()).map_err(e)?), -36.0, 11.5, 1200)?;
        mass_err = mass_err.max((m - 1.0).abs());
        ensure!((m - 1.0).abs() < 1e-4, "density mass {m} at ({a},{x})");
    }
    let (bad, n) = x_ordering_check(&[0.25, 0.5, 0.75], &[0.5, 1.0, 2.0], &[0.1, 1.0, 10.0]).map_err(e)?;
    ensure!(bad.is_empty(), "x-ordering violated at {bad:?}");
    let mut gam: f64 = 0.0;
    let mut fru: f64 = 0.0;
    for x in [0.5, 1.0, 2.0] {
        for t in [0.3, 1.0, 2.5, 6.0] {
            let g = thorin_cdf(ThorinParams::new(0.01, x).map_err(e)?, t).map_err(e)?;
            gam = gam.max((g - gamma_p_series(x, t)).abs());
            let near = thorin_cdf(ThorinParams::new(0.99, x).map_err(e)?, t).map_err(e)?;
            fru = fru.max((near - thorin_cdf_a1(x, t).map_err(e)?).abs());
        }
    }
    ensure!(gam < 2e-2, "a=0.01 vs gamma law: {gam}");
    ensure!(fru < 2e-2, "a=0.99 vs a=1: {fru}");
    let mut awk_mass: f64 = 0.0;
    for c in [0.02, 0.5, 1.0] {
        let m = simpson(|t| awk_density(c, t).map_err(e), -12.0, 12.0, 2400)?;
        awk_mass = awk_mass.max((m - 1.0).abs());
        ensure!((m - 1.0).abs() < 1e-4, "AWK mass {m} at c={c}");
    }
    let mut gauss: f64 = 0.0;
    for t in uniform_grid(-4.0, 4.0, 41) {
        let phi = (-0.5 * t * t).exp() / (2.0 * PI).sqrt();
        gauss = gauss.max((awk_density(0.02, t).map_err(e)? - phi).abs());
    }
    ensure!(gauss < 2e-2, "AWK c=0.02 vs Gaussian: {gauss}");
    Ok(format!(
        "mass err {mass_err:.1e}; {n} x-comparisons ok; gamma limit {gam:.1e}; a=1 vs 0.99 {fru:.1e}; AWK mass {awk_mass:.1e}, gaussian {gauss:.1e}"
    ))
}

fn c11_mills() -> Outcome {
    let xs = uniform_grid(-1.0, 30.0, 201);
    let mut oracle_err: f64 = 0.0;
    for &x in &xs[1..] {
        let r = mills_ratio(x);
        if x <= 25.0 {
            oracle_err = oracle_err.max(rel(r, mills_oracle(x)));
        }
        let bound = 4.0 / (3.0 * x + (x * x + 8.0).sqrt());
        ensure!(r < bound, "Sampford fails at x={x}: {r} vs {bound}");
    }
    ensure!(oracle_err < 1e-9, "mills ratio off the erfc oracle by {oracle_err:e}");
    let suite = mills_suite().map_err(e)?;
    let mut n = 0;
    for r in suite.iter().filter(|r| !r.name.starts_with("cmmi")) {
        ensure!(r.holds(), "{}: {} at {:?}", r.name, r.verdict.as_str(), r.first_violation);
        n += 1;
    }
    Ok(format!("Sampford on 200 points; {n} suite checks hold; erfc oracle {oracle_err:.1e}"))
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bplab")).args(args).output().map_err(e)?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

/// Status column of a scan CSV, with the point label.
fn statuses(csv: &str) -> Vec<(String, String)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].to_string(), f[4].to_string())
        })
        .collect()
}

fn c12_scans_and_exit_codes() -> Outcome {
    let (code, out) = run_cli(&["scan", "cjmain", "--a", "0.5,0.8,2.0", "--b", "0.1,0.3"])?;
    ensure!(code == 0, "cjmain scan exit {code}");
    for (pt, st) in statuses(&out) {
        let proven = pt.starts_with("a=0.5;");
        ensure!(
            st == if proven { "PASS" } else { "EXPLORATORY" },
            "cjmain {pt}: status {st}"
        );
    }
    let (code, out) = run_cli(&["scan", "cmcj", "--a", "0.5,0.7,1.5", "--c", "-0.5,0,0.5,0.7"])?;
    ensure!(code == 0, "cmcj scan exit {code}");
    let st = statuses(&out);
    for (pt, s) in &st {
        let proven = pt.contains("c=-0.5") || pt == "a=0.5;c=0.5" || pt == "a=0.7;c=0.7";
        ensure!(s == if proven { "PASS" } else { "EXPLORATORY" }, "cmcj {pt}: status {s}");
    }
    for (args, name) in [
        (vec!["scan", "cmmi", "--n", "0,1,2"], "cmmi"),
        (vec!["scan", "single-d", "--a", "0.5,1", "--b", "0.5,2"], "single-d"),
    ] {
        let (code, out) = run_cli(&args)?;
        ensure!(code == 0, "{name} scan exit {code}");
        let st = statuses(&out);
        ensure!(!st.is_empty(), "{name} scan empty");
        ensure!(st.iter().all(|(_, s)| s == "EXPLORATORY"), "{name} rows carry a verdict");
    }
    let (ok, _) = run_cli(&["verify", "theorem-a", "--a", "1"])?;
    let (neg, _) = run_cli(&["verify", "theorem-a", "--a", "1", "--perturb", "1.05"])?;
    let (num, _) = run_cli(&["verify", "theorem-b", "--a", "0.5", "--b", "0.6"])?;
    ensure!(ok == 0 && neg == 1 && num == 2, "exit codes ok={ok} perturbed={neg} numeric={num}");
    Ok("scans complete with proven points PASS; exit codes 0/1/2 honored".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("theorem-a identity", c1_theorem_a),
        ("theorem-b identity", c2_theorem_b),
        ("remaining identities", c3_propositions),
        ("auxiliary density ledgers", c4_lemma_densities),
        ("convolution forms", c5_convolution_forms),
        ("cm positive suite", c6_cm_positive),
        ("cm negative detection", c7_cm_negative),
        ("monotonicity and turan bounds", c8_monotone_turan),
        ("stochastic order", c9_stochastic_order),
        ("thorin suite", c10_thorin),
        ("mills ratio", c11_mills),
        ("scans and exit codes", c12_scans_and_exit_codes),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let label = format!("{:02} {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|p| label.contains(p.as_str())) {
            continue;
        }
        ran += 1;
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {label}: PASS ({secs:.1} s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {label}: FAIL ({secs:.1} s) {msg}");
            }
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
