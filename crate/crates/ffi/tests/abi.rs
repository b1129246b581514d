use std::ffi::{c_char, CStr};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bplab_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    unsafe { bpl_last_error_message(buf.as_mut_ptr(), buf.len()) };
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn scalar_entry_points() {
    let mut v = f64::NAN;
    unsafe {
        assert_eq!(bpl_betaprime_pdf(1.0, 1.0, 1.0, &mut v), BplStatus::Ok);
        assert!((v - 0.25).abs() < 1e-15);
        assert_eq!(bpl_gamma_ln(5.0, &mut v), BplStatus::Ok);
        assert!((v - 24f64.ln()).abs() < 1e-13);
        assert_eq!(bpl_hyp2f1(ptr::null(), 1.0, 1.0, 2.0, 0.5, &mut v), BplStatus::Ok);
        assert!((v - 2.0 * 2f64.ln()).abs() < 1e-13);
        assert_eq!(bpl_kummer_phi(ptr::null(), 1.0, 2.0, 1.0, &mut v), BplStatus::Ok);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-13);
        // ₃F₂(1,1,1;2,2;1) = ζ(2)
        let a = [1.0, 1.0, 1.0];
        let b = [2.0, 2.0];
        assert_eq!(bpl_hyp3f2(ptr::null(), a.as_ptr(), b.as_ptr(), 1.0, &mut v), BplStatus::Ok);
        assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-9);
        assert_eq!(bpl_thorin_cdf(0.5, 1.0, 1e6, &mut v), BplStatus::Ok);
        assert!(v > 0.999 && v <= 1.0 + 1e-12);
        assert_eq!(bpl_sum_density_iid(ptr::null(), 1.0, 1.0, 1.0, &mut v), BplStatus::Ok);
        // iid closed form against the general two-parameter form
        let mut w = f64::NAN;
        assert_eq!(
            bpl_sum_density(ptr::null(), 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, &mut w),
            BplStatus::Ok
        );
        assert!((v - w).abs() < 1e-10 * v.abs());
    }
}

#[test]
fn error_codes() {
    let mut v = 7.0;
    unsafe {
        assert_eq!(bpl_betaprime_pdf(1.0, 1.0, 1.0, ptr::null_mut()), BplStatus::Null);
        let s = bpl_betaprime_pdf(-1.0, 1.0, 1.0, &mut v);
        assert!(matches!(s, BplStatus::Domain | BplStatus::Precondition));
        assert_eq!(v, 7.0, "out-pointer untouched on failure");
        assert!(!last_error().is_empty());
        assert_eq!(bpl_betaprime_mellin(1.0, 1.0, 3.0, &mut v), BplStatus::Strip);
        let mut h = ptr::null_mut();
        assert_eq!(bpl_options_new(-1.0, 0.0, 10, 10, &mut h), BplStatus::Precondition);
        assert!(h.is_null());
        assert_eq!(bpl_options_new(1e-10, 0.0, 1000, 20, &mut h), BplStatus::Ok);
        assert_eq!(bpl_tricomi_psi(h, 1.0, 1.0, 1.0, &mut v), BplStatus::Ok);
        bpl_options_free(h);
        assert_eq!(CStr::from_ptr(bpl_status_name(5)).to_str().unwrap(), "outside Mellin strip");
        assert_eq!(CStr::from_ptr(bpl_status_name(99)).to_str().unwrap(), "unknown");
    }
    assert!(last_error().is_empty(), "success clears the message");
}

#[test]
fn sampling_is_reproducible() {
    let draw = |seed| {
        let mut rng = ptr::null_mut();
        let mut xs = [0.0; 8];
        unsafe {
            assert_eq!(bpl_rng_new(seed, 0, &mut rng), BplStatus::Ok);
            assert_eq!(bpl_betaprime_sample(rng, 2.0, 3.0, xs.len(), xs.as_mut_ptr()), BplStatus::Ok);
            bpl_rng_free(rng);
        }
        xs
    };
    assert_eq!(draw(9), draw(9));
    assert_ne!(draw(9), draw(10));
    assert!(draw(9).iter().all(|&x| x > 0.0));
}

#[test]
fn verify_and_probe() {
    let mut rng = ptr::null_mut();
    let mut rep = BplVerifyReport {
        passed: -1,
        ks_statistic: 0.0,
        ks_threshold: 0.0,
        mellin_max_relerr: 0.0,
        density_max_relerr: 0.0,
        n_samples: 0,
    };
    let keys = [c"a".as_ptr()];
    let vals = [1.0];
    unsafe {
        assert_eq!(bpl_rng_new(42, 0, &mut rng), BplStatus::Ok);
        let s = bpl_verify(c"theorem-a".as_ptr(), keys.as_ptr(), vals.as_ptr(), 1, 20_000, rng, &mut rep);
        assert_eq!(s, BplStatus::Ok, "{}", last_error());
        assert_eq!(rep.passed, 1);
        assert!(rep.ks_statistic < rep.ks_threshold);
        assert_eq!(
            bpl_verify(c"nope".as_ptr(), keys.as_ptr(), vals.as_ptr(), 1, 100, rng, &mut rep),
            BplStatus::Precondition
        );
        bpl_rng_free(rng);
    }

    let mut sum = BplProbeSummary {
        verdict: BplVerdict::Inconclusive,
        orders_checked: 0,
        first_violation_order: 0,
        first_violation_z: 0.0,
        noise_floor: 0.0,
    };
    let p = [0.7, -0.8];
    unsafe {
        let s = bpl_probe_cm(c"psi-doubling".as_ptr(), p.as_ptr(), 2, 1e-2, 50.0, 120, 4, &mut sum);
        assert_eq!(s, BplStatus::Ok, "{}", last_error());
    }
    assert_eq!(sum.verdict, BplVerdict::Violated);
    assert!(sum.first_violation_order >= 1);
    let nu = [1.0];
    unsafe {
        let s = bpl_probe_cm(c"hermite-doubling".as_ptr(), nu.as_ptr(), 1, 1e-2, 50.0, 120, 6, &mut sum);
        assert_eq!(s, BplStatus::Ok, "{}", last_error());
        assert_eq!(
            bpl_probe_cm(c"k0e1".as_ptr(), nu.as_ptr(), 1, 1e-2, 50.0, 120, 6, &mut sum),
            BplStatus::Precondition
        );
    }
}

/// Compiles tests/c/smoke.c against the generated header and the static
/// library. Skipped when no C compiler or static library is available.
#[test]
fn c_header_compiles_and_links() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libbplab_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C toolchain or {} missing", lib.display());
        return;
    }
    let bin = profile_dir.join("bplab_ffi_smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to build");
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "smoke exited with {:?}", run.status);
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
