//! The `zerodensity` command-line front end.
//!
//! Exit codes: `0` success, `1` domain or configuration error, `2` a checked
//! inequality failed, `64` usage error.

mod config;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::{
    c_sigma_tail_check, cht_tail_bound, prefix_bound_rhs, tail_sum_enclosure, verify_cht_prefix,
    ArithTables,
};
use crate::bounds::{
    axis, builtin_bounds, calibrate_simonic_k2, carlson_bound_with, crossover, eval_bound,
    region_map, BoundSpec, CarlsonOptions, ComparatorConstants, LogExponent,
    SIMONIC_CROSSOVER_LOG10,
};
use crate::constants::{k_final_with, k_limit, ContourTerm, DensityParams, LOG_T0_FLOOR, TABLE1};
use crate::error::{Error, Result};
use crate::meanvalue::{
    empirical_moments, exact_mean_square, fourth_moment_bound, lemma_meanv_rhs,
    mollifier_product_coeffs, mv_rhs, second_moment_bound, seeded_coeffs,
};
use crate::zeros::{nsigma_audit, parse_zeros, rvm_audit, zero_count};
use crate::zeta::{afe_main_sum, afe_remainder_bound, zeta_certified, ComplexPoint};

pub use config::{parse_config, Config};
pub use report::{emit, Cell, Format, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Table 1 value of `K(0.6, 3·10¹²)`, used when calibrating the Simonič constant.
const TABLE1_K_060: f64 = 0.7756;

#[derive(Parser, Debug)]
#[command(name = "zerodensity", version, about = "Explicit Carlson-type zero-density estimate")]
struct Cli {
    /// `key = value` configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum ContourArg {
    #[default]
    Derived,
    Literal,
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum LogExponentArg {
    #[default]
    Theorem,
    Four,
}

#[derive(Args, Debug, Clone)]
struct PipelineArgs {
    /// Height floor as log₁₀T₀
    #[arg(long = "log10T0", allow_negative_numbers = true)]
    log10_t0: Option<f64>,
    /// Allow σ in (1/2, 1) instead of [0.6, 2/3]
    #[arg(long)]
    override_sigma_range: bool,
    #[arg(long, value_enum, default_value_t)]
    contour_term: ContourArg,
}

#[derive(Args, Debug, Clone)]
struct CarlsonArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, value_enum, default_value_t)]
    log_exponent: LogExponentArg,
    /// Use this K(σ,T₀) for the Carlson bound instead of the pipeline value
    #[arg(long)]
    carlson_k: Option<f64>,
    /// Derive simonic_k2 from the quoted crossover 9.48·10³⁰⁸ at σ = 0.6
    #[arg(long)]
    calibrate_simonic: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full constant breakdown at one (σ, T₀)
    Constants {
        #[arg(long)]
        sigma: f64,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
    /// Table 1 grid: computed K against the reference values
    Table1 {
        #[arg(long, value_enum, default_value_t)]
        contour_term: ContourArg,
    },
    /// Crossover heights of the Carlson bound against each comparator
    Compare {
        #[arg(long)]
        sigma: Option<f64>,
        #[command(flatten)]
        carlson: CarlsonArgs,
    },
    /// Winner map over (σ, log₁₀T)
    Regions {
        #[arg(long)]
        sigma_min: Option<f64>,
        #[arg(long)]
        sigma_max: Option<f64>,
        #[arg(long)]
        sigma_step: Option<f64>,
        #[arg(long = "log10T-min")]
        log10t_min: Option<f64>,
        #[arg(long = "log10T-max")]
        log10t_max: Option<f64>,
        #[arg(long = "log10T-step")]
        log10t_step: Option<f64>,
        #[command(flatten)]
        carlson: CarlsonArgs,
    },
    /// Divisor-square prefix sweep and tail checks
    VerifyDivisor {
        #[arg(long)]
        limit: Option<usize>,
    },
    /// AFE remainder bound on the 16-point grid
    VerifyAfe,
    /// Montgomery–Vaughan inequality and the mollified mean-value lemma
    VerifyMeanvalue {
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
        /// Random vectors per (N, σ)
        #[arg(long, default_value_t = 100)]
        vectors: usize,
    },
    /// Second and fourth moments on [T, 2T]
    Moments {
        #[arg(long, default_value_t = 1000.0)]
        height: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
    /// Zero counts against the Riemann–von Mangoldt main term and the bounds
    ZerosAudit {
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[command(flatten)]
        carlson: CarlsonArgs,
    },
    /// Evaluate the bounds at one (σ, T), or ζ(σ + it) with --zeta-t
    Eval {
        #[arg(long)]
        sigma: f64,
        #[arg(long = "log10T", allow_negative_numbers = true)]
        log10_t: Option<f64>,
        /// Evaluate ζ(σ + it) at this t instead
        #[arg(long)]
        zeta_t: Option<f64>,
        #[command(flatten)]
        carlson: CarlsonArgs,
    },
}

/// Text written to standard output plus whether a checked inequality failed.
struct Outcome {
    table: Table,
    failed: bool,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Self {
            table,
            failed: false,
        }
    }
}

/// Runs the CLI and returns `(exit code, stdout, stderr)` without printing.
pub fn run_captured(args: &[String]) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (code, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    let exec = || -> Result<(Outcome, Format)> {
        let cfg = match &cli.config {
            Some(p) => parse_config(&read(p)?)?,
            None => Config::default(),
        };
        let format = match (cli.format, cfg.format.as_deref()) {
            (Some(FormatArg::Csv), _) => Format::Csv,
            (Some(FormatArg::Json), _) => Format::Json,
            (None, None | Some("csv")) => Format::Csv,
            (None, Some("json")) => Format::Json,
            (None, Some(other)) => {
                return Err(Error::Config(format!("format = {other:?} is not csv or json")))
            }
        };
        Ok((execute(&cli.command, &cfg)?, format))
    };
    let result = match cli.threads {
        Some(0) => Err(Error::Config("--threads must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => Err(Error::Config(format!("cannot start {n} threads: {e}"))),
        },
        None => exec(),
    };
    match result {
        Ok((outcome, format)) => {
            let code = if outcome.failed { EXIT_VERIFY } else { EXIT_OK };
            let err = if outcome.failed {
                format!("verification failed in {}\n", outcome.table.name)
            } else {
                String::new()
            };
            (code, emit(&outcome.table, format), err)
        }
        Err(e) => (EXIT_ERROR, String::new(), format!("error: {e}\n")),
    }
}

/// Runs the CLI, printing its reports, and returns the exit code.
pub fn run(args: &[String]) -> i32 {
    let (code, out, err) = run_captured(args);
    print!("{out}");
    eprint!("{err}");
    code
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

fn contour(c: ContourArg) -> ContourTerm {
    match c {
        ContourArg::Derived => ContourTerm::Derived,
        ContourArg::Literal => ContourTerm::Literal,
    }
}

fn log_exponent(l: LogExponentArg) -> LogExponent {
    match l {
        LogExponentArg::Theorem => LogExponent::Theorem,
        LogExponentArg::Four => LogExponent::Four,
    }
}

fn log_t0(pipeline: &PipelineArgs, cfg: &Config) -> f64 {
    pipeline
        .log10_t0
        .or(cfg.log10t0)
        .map_or(LOG_T0_FLOOR, |l| l * std::f64::consts::LN_10)
}

fn params(sigma: f64, pipeline: &PipelineArgs, cfg: &Config) -> Result<DensityParams> {
    let l = log_t0(pipeline, cfg);
    if pipeline.override_sigma_range {
        DensityParams::with_override(sigma, l)
    } else {
        DensityParams::new(sigma, l)
    }
}

fn carlson_options(args: &CarlsonArgs, cfg: &Config) -> Result<CarlsonOptions> {
    let l = log_t0(&args.pipeline, cfg);
    DensityParams::with_override(0.6, l)?;
    if let Some(k) = args.carlson_k {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Config(format!("--carlson-k {k} must be positive")));
        }
    }
    Ok(CarlsonOptions {
        log_t0: DensityParams::with_override(0.6, l)?.log_t0(),
        contour: contour(args.pipeline.contour_term),
        log_exponent: log_exponent(args.log_exponent),
        fixed_k: args.carlson_k,
    })
}

/// Comparator constants with the calibration applied when requested, and a
/// note describing where `simonic_k2` came from.
fn comparators(args: &CarlsonArgs, cfg: &Config) -> Result<(ComparatorConstants, String)> {
    let mut c = cfg.comparators.clone();
    if args.calibrate_simonic {
        let k = args.carlson_k.unwrap_or(TABLE1_K_060);
        c.simonic_k2 = Some(calibrate_simonic_k2(k, 0.6, SIMONIC_CROSSOVER_LOG10)?);
        return Ok((
            c,
            format!("simonic_k2 reverse-engineered from the quoted crossover 9.48e308 with K = {k}"),
        ));
    }
    Ok((c, "comparator constants from config".to_string()))
}

/// The built-in bounds. A missing KLN constant only drops that comparator
/// when the Simonič constant is present; otherwise it is an error.
fn configured_bounds(consts: &ComparatorConstants, opts: CarlsonOptions) -> Result<Vec<BoundSpec>> {
    if consts.kln_c1.is_none() && consts.simonic_k2.is_some() {
        let mut specs = builtin_bounds(
            &ComparatorConstants {
                kln_c1: Some(1.0),
                ..consts.clone()
            },
            opts,
        )?;
        specs.retain(|s| s.id != "kln");
        return Ok(specs);
    }
    builtin_bounds(consts, opts)
}

fn execute(cmd: &Command, cfg: &Config) -> Result<Outcome> {
    match cmd {
        Command::Constants { sigma, pipeline } => cmd_constants(*sigma, pipeline, cfg),
        Command::Table1 { contour_term } => cmd_table1(contour(*contour_term)),
        Command::Compare { sigma, carlson } => cmd_compare(*sigma, carlson, cfg),
        Command::Regions {
            sigma_min,
            sigma_max,
            sigma_step,
            log10t_min,
            log10t_max,
            log10t_step,
            carlson,
        } => {
            let sig = axis(
                sigma_min.or(cfg.sigma_min).unwrap_or(0.5),
                sigma_max.or(cfg.sigma_max).unwrap_or(0.8),
                sigma_step.or(cfg.sigma_step).unwrap_or(0.005),
            )?;
            let lt = axis(
                log10t_min.or(cfg.log10t_min).unwrap_or(12.48),
                log10t_max.or(cfg.log10t_max).unwrap_or(400.0),
                log10t_step.or(cfg.log10t_step).unwrap_or(0.5),
            )?;
            cmd_regions(&sig, &lt, carlson, cfg)
        }
        Command::VerifyDivisor { limit } => {
            cmd_verify_divisor(limit.or(cfg.limit).unwrap_or(1_000_000))
        }
        Command::VerifyAfe => cmd_verify_afe(),
        Command::VerifyMeanvalue { seed, vectors } => cmd_verify_meanvalue(*seed, *vectors),
        Command::Moments { height, step } => cmd_moments(*height, *step),
        Command::ZerosAudit { dataset, carlson } => {
            let path = dataset
                .clone()
                .or_else(|| cfg.dataset.clone().map(PathBuf::from))
                .ok_or_else(|| Error::Config("no dataset given (--dataset or config key dataset)".into()))?;
            cmd_zeros_audit(&path, carlson, cfg)
        }
        Command::Eval {
            sigma,
            log10_t,
            zeta_t,
            carlson,
        } => match (zeta_t, log10_t) {
            (Some(t), _) => cmd_eval_zeta(*sigma, *t),
            (None, Some(l)) => cmd_eval(*sigma, *l, carlson, cfg),
            (None, None) => Err(Error::Config("eval needs --log10T or --zeta-t".into())),
        },
    }
}

fn cmd_constants(sigma: f64, pipeline: &PipelineArgs, cfg: &Config) -> Result<Outcome> {
    let p = params(sigma, pipeline, cfg)?;
    let b = k_final_with(&p, contour(pipeline.contour_term))?;
    let mut t = Table::new(
        "constants",
        &[
            "sigma",
            "t0_log10",
            "x0_log",
            "c_sigma",
            "k_coeff_sup",
            "c1",
            "b_term",
            "b_term_evaluable",
            "c2",
            "c3",
            "contour_coefficient",
            "k_final",
            "k_limit",
            "warnings",
        ],
    );
    t.push(vec![
        b.sigma.into(),
        p.log10_t0().into(),
        b.log_x0_used.into(),
        b.c_of_sigma.into(),
        b.k_coeff_sup.into(),
        b.c1.into(),
        b.b_term.into(),
        b.b_term_evaluable.into(),
        b.c2.into(),
        b.c3.into(),
        b.contour_coefficient.into(),
        b.k_final.into(),
        k_limit(sigma)?.into(),
        b.warnings.join("; ").into(),
    ]);
    Ok(Outcome::ok(t))
}

fn cmd_table1(contour: ContourTerm) -> Result<Outcome> {
    let mut t = Table::new(
        "table1",
        &["t0_log10", "sigma", "k_computed", "k_reference", "rel_deviation", "warnings"],
    );
    for (log10_t0, sigma, reference) in TABLE1 {
        let p = DensityParams::from_log10(sigma, log10_t0, false)?;
        let b = k_final_with(&p, contour)?;
        t.push(vec![
            log10_t0.into(),
            sigma.into(),
            b.k_final.into(),
            reference.into(),
            ((b.k_final - reference) / reference).into(),
            b.warnings.join("; ").into(),
        ]);
    }
    Ok(Outcome::ok(t))
}

/// Upper end of every crossover search, `log T = 10⁶ ln 10`.
const SEARCH_LOG_T_MAX: f64 = 1e6 * std::f64::consts::LN_10;

fn cmd_compare(sigma: Option<f64>, args: &CarlsonArgs, cfg: &Config) -> Result<Outcome> {
    let (consts, note) = comparators(args, cfg)?;
    let opts = carlson_options(args, cfg)?;
    let specs = configured_bounds(&consts, opts)?;
    let sigmas = match sigma {
        Some(s) => vec![s],
        None => vec![0.6, 0.61, 0.62, 0.63, 0.64, 0.65, 0.66, 2.0 / 3.0],
    };
    let mut t = Table::new(
        "compare",
        &[
            "sigma",
            "comparator",
            "carlson_k",
            "carlson_exponent",
            "comparator_exponent",
            "crossover_log10T",
            "status",
            "note",
        ],
    );
    let carlson = &specs[0];
    for &s in &sigmas {
        if !carlson.is_valid(s, carlson.t_floor) {
            return Err(Error::Domain(format!("σ = {s} outside [0.6, 2/3]")));
        }
        for other in &specs[1..] {
            if !(s >= other.sigma_validity.0 && s <= other.sigma_validity.1) {
                continue;
            }
            let lo = carlson.t_floor.max(other.t_floor);
            let (value, status) = match crossover(carlson, other, s, lo, SEARCH_LOG_T_MAX) {
                Ok(l) => (Some(l / std::f64::consts::LN_10), "ok".to_string()),
                Err(Error::Bracket { .. }) => {
                    let below = eval_bound(carlson, s, lo)? < eval_bound(other, s, lo)?;
                    let status = if below { "carlson_smaller_throughout" } else { "comparator_smaller_throughout" };
                    (None, status.to_string())
                }
                Err(e) => return Err(e),
            };
            let row_note = if other.id == "simonic" { note.clone() } else { String::new() };
            t.push(vec![
                s.into(),
                other.id.clone().into(),
                (carlson.coefficient)(s).into(),
                (carlson.t_exponent)(s).into(),
                (other.t_exponent)(s).into(),
                value.into(),
                status.into(),
                row_note.into(),
            ]);
        }
    }
    Ok(Outcome::ok(t))
}

fn cmd_regions(sigmas: &[f64], log10ts: &[f64], args: &CarlsonArgs, cfg: &Config) -> Result<Outcome> {
    let (consts, _) = comparators(args, cfg)?;
    let specs = configured_bounds(&consts, carlson_options(args, cfg)?)?;
    let log_ts: Vec<f64> = log10ts.iter().map(|l| l * std::f64::consts::LN_10).collect();
    let map = region_map(sigmas, &log_ts, &specs)?;
    let mut cols = vec!["sigma", "log10T", "winner"];
    cols.extend(map.bound_ids.iter().map(String::as_str));
    let mut t = Table::new("regions", &cols);
    for (i, &s) in map.sigma_axis.iter().enumerate() {
        for (j, &l10) in log10ts.iter().enumerate() {
            let mut row: Vec<Cell> = vec![
                s.into(),
                l10.into(),
                map.winner[i][j].clone().unwrap_or_else(|| "none".into()).into(),
            ];
            row.extend(map.values[i][j].iter().map(|v| Cell::from(v.map(|x| x.log10_abs()))));
            t.push(row);
        }
    }
    Ok(Outcome::ok(t))
}

fn verify_table(name: &str) -> Table {
    Table::new(
        name,
        &["check", "sigma", "t", "x", "tau", "lhs", "rhs", "margin", "passed"],
    )
}

struct VerifyRow {
    check: &'static str,
    sigma: Option<f64>,
    t: Option<f64>,
    x: Option<u64>,
    tau: Option<f64>,
    lhs: f64,
    rhs: f64,
    passed: bool,
}

fn push_verify(t: &mut Table, r: VerifyRow) {
    t.push(vec![
        r.check.into(),
        r.sigma.into(),
        r.t.into(),
        r.x.into(),
        r.tau.into(),
        r.lhs.into(),
        r.rhs.into(),
        (1.0 - r.lhs / r.rhs).into(),
        r.passed.into(),
    ]);
}

fn all_passed(t: &Table) -> bool {
    let col = t.columns.iter().position(|c| c == "passed").unwrap_or(0);
    t.rows.iter().all(|r| r[col] == Cell::Bool(true))
}

fn cmd_verify_divisor(limit: usize) -> Result<Outcome> {
    let tables = ArithTables::build(limit)?;
    let mut t = verify_table("verify-divisor");
    let sweep = verify_cht_prefix(&tables, 433, limit as u64)?;
    push_verify(
        &mut t,
        VerifyRow {
            check: "prefix_sweep",
            sigma: None,
            t: Some(sweep.argmin as f64),
            x: Some(sweep.checked),
            tau: None,
            lhs: tables.prefix_d2(sweep.argmin as usize) as f64,
            rhs: prefix_bound_rhs(sweep.argmin),
            passed: sweep.passed(),
        },
    );
    for x in [433u64, 1000, 10_000] {
        for tau in [1.2, 4.0 / 3.0, 2.0] {
            if x as usize > limit {
                continue;
            }
            let enc = tail_sum_enclosure(&tables, x, tau)?;
            let rhs = cht_tail_bound(x as f64, tau)?;
            push_verify(
                &mut t,
                VerifyRow {
                    check: "tail_bound",
                    sigma: None,
                    t: None,
                    x: Some(x),
                    tau: Some(tau),
                    lhs: enc.hi,
                    rhs,
                    passed: enc.hi <= rhs,
                },
            );
        }
    }
    for (sigma, x0) in [(0.6, 433u64), (2.0 / 3.0, 1000)] {
        if (10 * x0) as usize > limit {
            continue;
        }
        let rep = c_sigma_tail_check(&tables, sigma, x0)?;
        for row in rep.rows {
            push_verify(
                &mut t,
                VerifyRow {
                    check: "c_sigma_tail",
                    sigma: Some(sigma),
                    t: None,
                    x: Some(row.x),
                    tau: Some(2.0 * sigma),
                    lhs: row.enclosure_hi,
                    rhs: row.rhs,
                    passed: row.enclosure_hi <= row.rhs,
                },
            );
        }
    }
    let failed = !all_passed(&t);
    Ok(Outcome { table: t, failed })
}

/// σ and t of the AFE grid.
pub const AFE_SIGMAS: [f64; 4] = [0.5, 0.6, 2.0 / 3.0, 1.0];
pub const AFE_HEIGHTS: [f64; 4] = [20.0, 100.0, 1000.0, 2000.0];

fn cmd_verify_afe() -> Result<Outcome> {
    let mut t = verify_table("verify-afe");
    for sigma in AFE_SIGMAS {
        for height in AFE_HEIGHTS {
            let s = ComplexPoint::new(sigma, height);
            let z = zeta_certified(s, 1e-10)?;
            let lhs = (z.value - afe_main_sum(s)?).norm() + z.error_bound();
            let rhs = afe_remainder_bound(sigma, height)?;
            push_verify(
                &mut t,
                VerifyRow {
                    check: "afe_remainder",
                    sigma: Some(sigma),
                    t: Some(height),
                    x: None,
                    tau: None,
                    lhs,
                    rhs,
                    passed: lhs <= rhs,
                },
            );
        }
    }
    let failed = !all_passed(&t);
    Ok(Outcome { table: t, failed })
}

pub const MV_LENGTHS: [usize; 3] = [10, 100, 2000];
pub const MV_SIGMAS: [f64; 3] = [0.0, 0.5, 0.6];
pub const MV_HEIGHT: f64 = 100.0;

fn cmd_verify_meanvalue(seed: u64, vectors: usize) -> Result<Outcome> {
    let mut t = verify_table("verify-meanvalue");
    for n in MV_LENGTHS {
        for sigma in MV_SIGMAS {
            let mut worst = (0.0, 1.0, f64::NEG_INFINITY);
            let mut passed = true;
            for v in 0..vectors {
                let c = seeded_coeffs(seed.wrapping_add((n as u64) << 32).wrapping_add(v as u64), n)?;
                let lhs = exact_mean_square(&c, sigma, MV_HEIGHT)?;
                let rhs = mv_rhs(&c, sigma, MV_HEIGHT)?;
                passed &= lhs <= rhs;
                if lhs / rhs > worst.2 {
                    worst = (lhs, rhs, lhs / rhs);
                }
            }
            push_verify(
                &mut t,
                VerifyRow {
                    check: "mv_random",
                    sigma: Some(sigma),
                    t: Some(MV_HEIGHT),
                    x: Some(n as u64),
                    tau: None,
                    lhs: worst.0,
                    rhs: worst.1,
                    passed,
                },
            );
        }
    }
    let tables = ArithTables::build(433)?;
    for sigma in [0.6, 2.0 / 3.0] {
        for height in [100usize, 200] {
            let c = mollifier_product_coeffs(433, height, &tables)?;
            let lhs = exact_mean_square(&c, sigma, height as f64)?;
            let rhs = lemma_meanv_rhs(sigma, height as f64, 433.0, 433.0)?;
            push_verify(
                &mut t,
                VerifyRow {
                    check: "lemma_meanv",
                    sigma: Some(sigma),
                    t: Some(height as f64),
                    x: Some(433),
                    tau: None,
                    lhs,
                    rhs,
                    passed: lhs <= rhs,
                },
            );
        }
    }
    let failed = !all_passed(&t);
    Ok(Outcome { table: t, failed })
}

fn cmd_moments(height: f64, step: f64) -> Result<Outcome> {
    let m = empirical_moments(height, step)?;
    let mut t = Table::new("moments", &["check", "t", "value", "bound", "passed"]);
    let b2 = second_moment_bound(height)?;
    let b4 = fourth_moment_bound(height)?;
    t.push(vec!["second".into(), height.into(), m.second.into(), b2.into(), (m.second <= b2).into()]);
    t.push(vec!["fourth".into(), height.into(), m.fourth.into(), b4.into(), (m.fourth <= b4).into()]);
    let cs_l = height * m.fourth;
    let cs_r = 2.0 * m.second * m.second;
    t.push(vec![
        "cauchy_schwarz".into(),
        height.into(),
        cs_l.into(),
        cs_r.into(),
        (cs_l >= cs_r).into(),
    ]);
    let failed = !all_passed(&t);
    Ok(Outcome { table: t, failed })
}

/// Tolerance on `|N(T) − main term|` over a dataset.
pub const RVM_TOLERANCE: f64 = 2.5;

/// `σ` values and sample heights of the `N(σ,T)` audit.
pub const NSIGMA_SIGMAS: [f64; 2] = [0.6, 0.65];

fn cmd_zeros_audit(path: &PathBuf, args: &CarlsonArgs, cfg: &Config) -> Result<Outcome> {
    let ds = parse_zeros(&read(path)?)?;
    let mut t = Table::new("zeros-audit", &["check", "sigma", "t", "value", "bound", "passed"]);
    let top = ds.max_ordinate().unwrap_or(0.0);
    if top >= 100.0 {
        let c = zero_count(&ds, 100.0).count;
        t.push(vec![
            "count_at_100".into(),
            Cell::Empty,
            100.0.into(),
            c.into(),
            29usize.into(),
            (c == 29).into(),
        ]);
    }
    let rvm = rvm_audit(&ds, RVM_TOLERANCE)?;
    t.push(vec![
        "rvm_max_deviation".into(),
        Cell::Empty,
        rvm.argmax.into(),
        rvm.max_deviation.into(),
        RVM_TOLERANCE.into(),
        rvm.passed().into(),
    ]);
    let (consts, _) = comparators(args, cfg)?;
    let opts = carlson_options(args, cfg)?;
    let specs: Vec<BoundSpec> = match configured_bounds(&consts, opts) {
        Ok(s) => s,
        Err(Error::Config(_)) => vec![crate::bounds::carlson_spec(opts)],
        Err(e) => return Err(e),
    };
    let mut heights: Vec<f64> = (1..=5).map(|k| 10f64.powi(k)).filter(|h| *h <= top).collect();
    heights.push(top);
    let checks = nsigma_audit(&ds, &specs, &NSIGMA_SIGMAS, &heights)?;
    t.push(vec![
        "nsigma_cells_in_range".into(),
        Cell::Empty,
        top.into(),
        checks.len().into(),
        Cell::Empty,
        true.into(),
    ]);
    // the dataset lies below every validity floor; check positivity at the floor
    for &sigma in &NSIGMA_SIGMAS {
        for spec in &specs {
            if !spec.is_valid(sigma, spec.t_floor) {
                continue;
            }
            let v = eval_bound(spec, sigma, spec.t_floor)?;
            t.push(vec![
                format!("nsigma_le_{}", spec.id).into(),
                sigma.into(),
                (spec.t_floor / std::f64::consts::LN_10).into(),
                0usize.into(),
                v.log10_abs().into(),
                (v.sign() > 0).into(),
            ]);
        }
    }
    let failed = !all_passed(&t);
    Ok(Outcome { table: t, failed })
}

fn cmd_eval(sigma: f64, log10_t: f64, args: &CarlsonArgs, cfg: &Config) -> Result<Outcome> {
    let p = params(sigma, &args.pipeline, cfg)?;
    let log_t = log10_t * std::f64::consts::LN_10;
    let mut t = Table::new("eval", &["bound", "sigma", "log10T", "value", "log10_value"]);
    let carlson = match args.carlson_k {
        Some(k) => {
            if !(log_t >= p.log_t0()) {
                return Err(Error::Domain(format!("log₁₀T = {log10_t} below T₀")));
            }
            crate::bounds::carlson_from_k(k, sigma, log_t, log_exponent(args.log_exponent))?
        }
        None => carlson_bound_with(&p, log_t, contour(args.pipeline.contour_term), log_exponent(args.log_exponent))?,
    };
    t.push(vec![
        "carlson".into(),
        sigma.into(),
        log10_t.into(),
        carlson.to_string().into(),
        carlson.log10_abs().into(),
    ]);
    let (consts, _) = comparators(args, cfg)?;
    if let Ok(specs) = configured_bounds(&consts, carlson_options(args, cfg)?) {
        for spec in specs.iter().skip(1) {
            if spec.is_valid(sigma, log_t) {
                let v = eval_bound(spec, sigma, log_t)?;
                t.push(vec![
                    spec.id.clone().into(),
                    sigma.into(),
                    log10_t.into(),
                    v.to_string().into(),
                    v.log10_abs().into(),
                ]);
            }
        }
    }
    Ok(Outcome::ok(t))
}

fn cmd_eval_zeta(sigma: f64, height: f64) -> Result<Outcome> {
    let z = zeta_certified(ComplexPoint::new(sigma, height), 1e-10)?;
    let mut t = Table::new("zeta", &["sigma", "t", "re", "im", "abs", "error_bound", "terms"]);
    t.push(vec![
        sigma.into(),
        height.into(),
        z.value.re.into(),
        z.value.im.into(),
        z.value.norm().into(),
        z.error_bound().into(),
        z.n.into(),
    ]);
    Ok(Outcome::ok(t))
}
