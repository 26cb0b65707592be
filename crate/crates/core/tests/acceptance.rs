//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Every tolerance is pinned below.

#[path = "support/hp.rs"]
mod hp;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zerodensity::arith::{cht_tail_bound, tail_sum_enclosure, verify_cht_prefix, ArithTables};
use zerodensity::bounds::{
    calibrate_simonic_k2, carlson_spec, crossover, simonic_spec, BoundSpec, CarlsonOptions,
    SIMONIC_CROSSOVER_LOG10,
};
use zerodensity::cli::run_captured;
use zerodensity::constants::{k_final, k_final_with, k_limit, ContourTerm, DensityParams, TABLE1};
use zerodensity::meanvalue::{
    empirical_moments, exact_mean_square, fourth_moment_bound, lemma_meanv_rhs,
    mollifier_product_coeffs, mv_rhs, second_moment_bound, seeded_coeffs,
};
use zerodensity::zeros::{empirical_nsigma, parse_zeros, rvm_audit, zero_count};
use zerodensity::zeta::{afe_main_sum, afe_remainder_bound, zeta_certified, ComplexPoint};

const PREFIX_LIMIT: u64 = 1_000_000;
const PREFIX_TIME: Duration = Duration::from_secs(60);
const ZETA_CERT: f64 = 1e-10;
const MV_VECTORS: usize = 100;
const MV_HEIGHT: f64 = 100.0;
const MEANV_TIME: Duration = Duration::from_secs(300);
const PIPELINE_REL: f64 = 1e-12;
const LIMIT_REL: f64 = 0.01;
const SYNTH_PAIRS: usize = 20;
const SYNTH_REL: f64 = 1e-9;
const SIMONIC_TARGET: f64 = 308.977;
const SIMONIC_TOL: f64 = 1e-3;
const TABLE1_K_060: f64 = 0.7756;
const MOMENT_HEIGHT: f64 = 1000.0;
const MOMENT_STEP: f64 = 0.05;
const M2_RANGE: (f64, f64) = (5000.0, 8500.0);
const M2_BOUND: f64 = 33462.1;
const M2_BOUND_TOL: f64 = 0.1;
const MOMENT_TIME: Duration = Duration::from_secs(600);
const RVM_TOL: f64 = 2.5;
const EXPONENT_GRID: usize = 100;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Check {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn divisor_prefix(tables: &ArithTables) -> Check {
    let start = Instant::now();
    let rep = verify_cht_prefix(tables, 433, PREFIX_LIMIT).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        rep.violations.is_empty() && rep.checked == PREFIX_LIMIT - 432 && elapsed < PREFIX_TIME,
        format!(
            "{} heights, {} violations, min margin {:.3e} at t = {}, {:.2?}",
            rep.checked,
            rep.violations.len(),
            rep.min_margin,
            rep.argmin,
            elapsed
        ),
    )
}

fn tail_bound(tables: &ArithTables) -> Check {
    let mut worst = f64::INFINITY;
    for x in [433u64, 1000, 10_000] {
        for tau in [1.2, 4.0 / 3.0, 2.0] {
            let enc = tail_sum_enclosure(tables, x, tau).map_err(|e| e.to_string())?;
            let rhs = cht_tail_bound(x as f64, tau).map_err(|e| e.to_string())?;
            let margin = rhs - enc.hi;
            if !(margin > 0.0) {
                return Err(format!("X = {x}, τ = {tau}: enclosure {} vs bound {rhs}", enc.hi));
            }
            worst = worst.min(margin / rhs);
        }
    }
    Ok(format!("9 cases, smallest relative margin {worst:.4}"))
}

fn afe() -> Check {
    let mut worst = 0.0f64;
    for sigma in [0.5, 0.6, 2.0 / 3.0, 1.0] {
        for t in [20.0, 100.0, 1000.0, 2000.0] {
            let s = ComplexPoint::new(sigma, t);
            let z = zeta_certified(s, ZETA_CERT).map_err(|e| e.to_string())?;
            if !(z.error_bound() <= ZETA_CERT) {
                return Err(format!("ζ({sigma} + {t}i) certified only to {:e}", z.error_bound()));
            }
            let main = afe_main_sum(s).map_err(|e| e.to_string())?;
            let lhs = (z.value - main).norm() + z.error_bound();
            let rhs = afe_remainder_bound(sigma, t).map_err(|e| e.to_string())?;
            if !(lhs <= rhs) {
                return Err(format!("σ = {sigma}, t = {t}: {lhs} > {rhs}"));
            }
            worst = worst.max(lhs / rhs);
        }
    }
    Ok(format!("16 points, largest |ζ − main|/bound {worst:.4}"))
}

fn mv_inequality() -> Check {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in [10usize, 100, 2000] {
        for v in 0..MV_VECTORS {
            let c = seeded_coeffs(1000 * n as u64 + v as u64, n).map_err(|e| e.to_string())?;
            let lhs = exact_mean_square(&c, 0.0, MV_HEIGHT).map_err(|e| e.to_string())?;
            let rhs = mv_rhs(&c, 0.0, MV_HEIGHT).map_err(|e| e.to_string())?;
            if !(lhs <= rhs) {
                return Err(format!("N = {n}, vector {v}: {lhs} > {rhs}"));
            }
            worst = worst.max(lhs / rhs);
            count += 1;
        }
    }
    Ok(format!("{count} vectors, no violation, largest ratio {worst:.4}"))
}

fn meanv_lemma() -> Check {
    let start = Instant::now();
    let tables = ArithTables::build(433).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for sigma in [0.6, 2.0 / 3.0] {
        for t in [100usize, 200] {
            let c = mollifier_product_coeffs(433, t, &tables).map_err(|e| e.to_string())?;
            let lhs = exact_mean_square(&c, sigma, t as f64).map_err(|e| e.to_string())?;
            let rhs = lemma_meanv_rhs(sigma, t as f64, 433.0, 433.0).map_err(|e| e.to_string())?;
            if !(lhs <= rhs) {
                return Err(format!("σ = {sigma}, T = {t}: {lhs} > {rhs}"));
            }
            worst = worst.max(lhs / rhs);
        }
    }
    let elapsed = start.elapsed();
    ensure(
        elapsed < MEANV_TIME,
        format!("4 cases, largest ratio {worst:.4}, {elapsed:.2?}"),
    )
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn pipeline_consistency() -> Check {
    let mut oracle = hp::Hp::new();
    let mut points: Vec<(f64, f64)> = Vec::new();
    for sigma in [0.60, 0.62, 0.65, 2.0 / 3.0] {
        for l10 in [12.477, 20.0, 50.0, 70.0, 200.0] {
            points.push((sigma, l10));
        }
    }
    points.extend(TABLE1.iter().map(|&(l10, s, _)| (s, l10)));
    let mut worst = 0.0f64;
    for &(sigma, l10) in &points {
        let p = DensityParams::from_log10(sigma, l10, false).map_err(|e| e.to_string())?;
        for contour in [ContourTerm::Derived, ContourTerm::Literal] {
            let b = k_final_with(&p, contour).map_err(|e| e.to_string())?;
            let o = oracle.pipeline(p.sigma(), p.log_t0(), contour == ContourTerm::Derived);
            let r = rel(b.c1, o.c1).max(rel(b.c3, o.c3)).max(rel(b.k_final, o.k_final));
            if !(r <= PIPELINE_REL) {
                return Err(format!("σ = {sigma}, log₁₀T₀ = {l10}, {contour:?}: relative {r:e}"));
            }
            worst = worst.max(r);
        }
    }
    let (code, out, err) = run_captured(&args(&["table1"]));
    let rows = out.lines().count().saturating_sub(1);
    let header_ok = out.lines().next().is_some_and(|h| h.contains("deviation"));
    ensure(
        code == 0 && rows == 9 && header_ok,
        format!(
            "{} points, largest relative error {worst:.2e}; table1 exit {code}, {rows} rows{}",
            points.len(),
            if err.is_empty() { String::new() } else { format!(", stderr: {}", err.trim()) }
        ),
    )
}

fn asymptotic_limit() -> Check {
    let lim = k_limit(0.6).map_err(|e| e.to_string())?;
    let mut gaps = Vec::new();
    for j in 3..=5 {
        let l = 10f64.powi(j) * std::f64::consts::LN_10;
        let p = DensityParams::new(0.6, l).map_err(|e| e.to_string())?;
        gaps.push((k_final(&p).map_err(|e| e.to_string())?.k_final - lim).abs());
    }
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let last = gaps[2] / lim;
    ensure(
        decreasing && last < LIMIT_REL,
        format!(
            "gaps {:.6e}, {:.6e}, {:.6e}; relative {:.4}% at j = 5",
            gaps[0],
            gaps[1],
            gaps[2],
            100.0 * last
        ),
    )
}

fn crossover_solver() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for i in 0..SYNTH_PAIRS {
        let a: f64 = rng.gen_range(0.3..1.0);
        let b = a + rng.gen_range(0.02..0.3);
        let p: f64 = rng.gen_range(0.0..4.0);
        let big_b: f64 = rng.gen_range(0.1..100.0);
        let target: f64 = rng.gen_range(20.0..2000.0);
        let big_a = big_b * ((b - a) * target).exp();
        let expect = (big_a / big_b).ln() / (b - a);
        let fa = BoundSpec::power("a", big_a, a, p);
        let fb = BoundSpec::power("b", big_b, b, p);
        let got = crossover(&fa, &fb, 0.6, 2.0, 1e4).map_err(|e| format!("pair {i}: {e}"))?;
        let r = rel(got, expect);
        if !(r <= SYNTH_REL) {
            return Err(format!("pair {i}: ln T* {got} vs {expect}"));
        }
        worst = worst.max(r);
    }
    let k2 = calibrate_simonic_k2(TABLE1_K_060, 0.6, SIMONIC_CROSSOVER_LOG10).map_err(|e| e.to_string())?;
    let carlson = carlson_spec(CarlsonOptions {
        fixed_k: Some(TABLE1_K_060),
        ..CarlsonOptions::default()
    });
    let simonic = simonic_spec(k2);
    let lo = carlson.t_floor.max(simonic.t_floor);
    let l = crossover(&carlson, &simonic, 0.6, lo, 1e4).map_err(|e| e.to_string())?;
    let l10 = l / std::f64::consts::LN_10;
    ensure(
        (l10 - SIMONIC_TARGET).abs() <= SIMONIC_TOL,
        format!(
            "{SYNTH_PAIRS} synthetic pairs, largest relative error {worst:.2e}; \
             calibrated Simonič (K₂ = {k2:.4}) crossover log₁₀T* = {l10:.6}"
        ),
    )
}

fn moments() -> Check {
    let start = Instant::now();
    let m = empirical_moments(MOMENT_HEIGHT, MOMENT_STEP).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let b2 = second_moment_bound(MOMENT_HEIGHT).map_err(|e| e.to_string())?;
    let b4 = fourth_moment_bound(MOMENT_HEIGHT).map_err(|e| e.to_string())?;
    let ok = m.second >= M2_RANGE.0
        && m.second <= M2_RANGE.1
        && (b2 - M2_BOUND).abs() <= M2_BOUND_TOL
        && m.second <= b2
        && m.fourth <= b4
        && MOMENT_HEIGHT * m.fourth >= 2.0 * m.second * m.second
        && elapsed < MOMENT_TIME;
    ensure(
        ok,
        format!(
            "M₂ = {:.2} (bound {b2:.2}), M₄ = {:.1} (bound {b4:.4e}), T·M₄ = {:.4e} vs 2M₂² = {:.4e}, {elapsed:.2?}",
            m.second,
            m.fourth,
            MOMENT_HEIGHT * m.fourth,
            2.0 * m.second * m.second
        ),
    )
}

fn dataset_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_first_100000.txt")
}

fn zero_audit() -> Check {
    let path = dataset_path();
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let ds = parse_zeros(&text).map_err(|e| e.to_string())?;
    let c100 = zero_count(&ds, 100.0).count;
    let rvm = rvm_audit(&ds, RVM_TOL).map_err(|e| e.to_string())?;
    for sigma in [0.6, 0.65] {
        let top = ds.max_ordinate().unwrap_or(0.0);
        if empirical_nsigma(&ds, sigma, top).map_err(|e| e.to_string())? != 0 {
            return Err(format!("N({sigma}, T) non-zero"));
        }
    }
    let (code, out, err) = run_captured(&args(&[
        "zeros-audit",
        "--dataset",
        path.to_str().unwrap_or_default(),
        "--calibrate-simonic",
    ]));
    let bound_rows = out.lines().filter(|l| l.starts_with("nsigma_le_")).count();
    ensure(
        ds.len() == 100_000 && c100 == 29 && rvm.passed() && code == 0 && bound_rows > 0,
        format!(
            "{} zeros, N(100) = {c100}, max |N − main| = {:.4} at T = {:.3}, zeros-audit exit {code} with {bound_rows} bound rows{}",
            ds.len(),
            rvm.max_deviation,
            rvm.argmax,
            if err.is_empty() { String::new() } else { format!(", stderr: {}", err.trim()) }
        ),
    )
}

fn exponents() -> Check {
    let lo = 0.6;
    let hi = 2.0 / 3.0;
    for i in 0..EXPONENT_GRID {
        let s = if i + 1 == EXPONENT_GRID {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (EXPONENT_GRID - 1) as f64
        };
        let carlson = 4.0 * s * (1.0 - s);
        let simonic = 1.0 - (s - 0.5) / 4.0;
        let kln = 8.0 / 3.0 * (1.0 - s);
        if !(carlson < simonic) {
            return Err(format!("σ = {s}: {carlson} ≥ {simonic}"));
        }
        let at_end = i + 1 == EXPONENT_GRID;
        let ok = if at_end {
            (carlson - kln).abs() <= 4.0 * f64::EPSILON
        } else {
            carlson < kln
        };
        if !ok {
            return Err(format!("σ = {s}: 4σ(1−σ) = {carlson}, (8/3)(1−σ) = {kln}"));
        }
    }
    Ok(format!("{EXPONENT_GRID} points; equality with (8/3)(1−σ) only at σ = 2/3"))
}

fn args(a: &[&str]) -> Vec<String> {
    std::iter::once("zerodensity")
        .chain(a.iter().copied())
        .map(String::from)
        .collect()
}

fn determinism() -> Check {
    let commands: [&[&str]; 5] = [
        &["table1"],
        &["regions", "--calibrate-simonic"],
        &["verify-divisor"],
        &["verify-afe"],
        &["verify-meanvalue"],
    ];
    for cmd in commands {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            for _ in 0..2 {
                let mut a = vec!["--threads", threads];
                a.extend_from_slice(cmd);
                let (code, out, err) = run_captured(&args(&a));
                if code != 0 {
                    return Err(format!("{} exited {code}: {}", cmd.join(" "), err.trim()));
                }
                outputs.push(out);
            }
        }
        if outputs.iter().any(|o| o != &outputs[0]) {
            return Err(format!("{} output differs between runs", cmd.join(" ")));
        }
    }
    Ok(format!("{} commands × threads {{1, 4}} × 2 runs byte-identical", commands.len()))
}

fn main() {
    let tables = match ArithTables::build(PREFIX_LIMIT as usize) {
        Ok(t) => t,
        Err(e) => {
            println!("FAIL setup: {e}");
            std::process::exit(1);
        }
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("1 divisor prefix bound", Box::new(|| divisor_prefix(&tables))),
        ("2 divisor tail bound", Box::new(|| tail_bound(&tables))),
        ("3 AFE remainder", Box::new(afe)),
        ("4 MV inequality", Box::new(mv_inequality)),
        ("5 mollified mean value", Box::new(meanv_lemma)),
        ("6 pipeline vs 128-bit oracle", Box::new(pipeline_consistency)),
        ("7 asymptotic limit", Box::new(asymptotic_limit)),
        ("8 crossover solver", Box::new(crossover_solver)),
        ("9 moments", Box::new(moments)),
        ("10 zero-data audit", Box::new(zero_audit)),
        ("11 exponent properties", Box::new(exponents)),
        ("12 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(msg) => println!("PASS {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
