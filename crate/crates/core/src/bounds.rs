//! Explicit zero-density bounds as comparable objects: evaluation at
//! extended-range heights, crossover heights and winner maps over
//! `(σ, log T)`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::constants::{k_final_with, ContourTerm, DensityParams, LOG_T0_FLOOR};
use crate::error::{domain, Error, Result};
use crate::extrange::ExtReal;

pub type SigmaFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Relative width in `log T` at which [`crossover`] stops.
pub const CROSSOVER_REL_TOL: f64 = 1e-12;
pub const CROSSOVER_MAX_ITER: usize = 200;

/// Crossover height quoted for the Carlson bound against Simonič's at
/// `σ = 0.6`, `T₀ = 3·10¹²`, as `log₁₀T*`.
pub const SIMONIC_CROSSOVER_LOG10: f64 = 308.976_808_337_338_07;

/// Exponent of `log T` in the Carlson bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogExponent {
    /// `5 − 2σ`.
    #[default]
    Theorem,
    /// `4`, as in the final assembly of the constant.
    Four,
}

impl LogExponent {
    pub fn value(self, sigma: f64) -> f64 {
        match self {
            LogExponent::Theorem => 5.0 - 2.0 * sigma,
            LogExponent::Four => 4.0,
        }
    }
}

/// A lower-order additive term `coefficient · (log T)^{log_exponent}`.
#[derive(Clone)]
pub struct SecondaryTerm {
    pub coefficient: f64,
    pub log_exponent: f64,
}

/// `coefficient(σ) · T^{t_exponent(σ)} · (log T − shift)^{log_exponent(σ)}`
/// plus an optional [`SecondaryTerm`].
#[derive(Clone)]
pub struct BoundSpec {
    pub id: String,
    pub coefficient: SigmaFn,
    pub t_exponent: SigmaFn,
    pub log_exponent: SigmaFn,
    pub log_argument_shift: f64,
    pub sigma_validity: (f64, f64),
    /// Natural log of the smallest valid `T`.
    pub t_floor: f64,
    pub secondary: Option<SecondaryTerm>,
}

impl fmt::Debug for BoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundSpec")
            .field("id", &self.id)
            .field("sigma_validity", &self.sigma_validity)
            .field("t_floor", &self.t_floor)
            .finish_non_exhaustive()
    }
}

impl BoundSpec {
    /// `A · T^a · (log T)^p`, valid for all `σ` and `T ≥ e`.
    pub fn power(id: &str, a_coeff: f64, t_exponent: f64, log_exponent: f64) -> Self {
        Self {
            id: id.to_string(),
            coefficient: Arc::new(move |_| a_coeff),
            t_exponent: Arc::new(move |_| t_exponent),
            log_exponent: Arc::new(move |_| log_exponent),
            log_argument_shift: 0.0,
            sigma_validity: (0.0, 1.0),
            t_floor: 1.0,
            secondary: None,
        }
    }

    pub fn is_valid(&self, sigma: f64, log_t: f64) -> bool {
        sigma >= self.sigma_validity.0 && sigma <= self.sigma_validity.1 && log_t >= self.t_floor
    }
}

/// Comparator constants; the literature cites but does not state them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComparatorConstants {
    pub kln_c1: Option<f64>,
    pub kln_c2: Option<f64>,
    pub simonic_k2: Option<f64>,
    pub bohr_landau_c: Option<f64>,
}

/// How the Carlson entry of the registry obtains its coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlsonOptions {
    pub log_t0: f64,
    pub contour: ContourTerm,
    pub log_exponent: LogExponent,
    /// Use this `K` for every `σ` instead of the pipeline value.
    pub fixed_k: Option<f64>,
}

impl Default for CarlsonOptions {
    fn default() -> Self {
        Self {
            log_t0: LOG_T0_FLOOR,
            contour: ContourTerm::Derived,
            log_exponent: LogExponent::Theorem,
            fixed_k: None,
        }
    }
}

/// `K(σ,T₀)·T^{4σ(1−σ)}(log T)^{5−2σ}`.
pub fn carlson_bound(params: &DensityParams, log_t: f64) -> Result<ExtReal> {
    carlson_bound_with(params, log_t, ContourTerm::Derived, LogExponent::Theorem)
}

pub fn carlson_bound_with(
    params: &DensityParams,
    log_t: f64,
    contour: ContourTerm,
    log_exponent: LogExponent,
) -> Result<ExtReal> {
    if !(log_t >= params.log_t0()) {
        return domain(format!(
            "log T = {log_t} below log T₀ = {}",
            params.log_t0()
        ));
    }
    let k = k_final_with(params, contour)?.k_final;
    carlson_from_k(k, params.sigma(), log_t, log_exponent)
}

/// Carlson shape for an explicit `K`.
pub fn carlson_from_k(k: f64, sigma: f64, log_t: f64, log_exponent: LogExponent) -> Result<ExtReal> {
    if !(k > 0.0) {
        return domain(format!("K = {k} must be positive"));
    }
    ExtReal::from_ln(
        k.ln() + 4.0 * sigma * (1.0 - sigma) * log_t + log_exponent.value(sigma) * log_t.ln(),
        1,
    )
}

pub fn carlson_spec(opts: CarlsonOptions) -> BoundSpec {
    let coefficient: SigmaFn = match opts.fixed_k {
        Some(k) => Arc::new(move |_| k),
        None => Arc::new(move |sigma| {
            DensityParams::new(sigma, opts.log_t0)
                .and_then(|p| k_final_with(&p, opts.contour))
                .map(|b| b.k_final)
                .unwrap_or(f64::NAN)
        }),
    };
    let le = opts.log_exponent;
    BoundSpec {
        id: "carlson".to_string(),
        coefficient,
        t_exponent: Arc::new(|s| 4.0 * s * (1.0 - s)),
        log_exponent: Arc::new(move |s| le.value(s)),
        log_argument_shift: 0.0,
        sigma_validity: (0.6, 2.0 / 3.0),
        t_floor: opts.log_t0,
        secondary: None,
    }
}

pub fn kln_spec(c1: f64, c2: f64) -> BoundSpec {
    BoundSpec {
        id: "kln".to_string(),
        coefficient: Arc::new(move |_| c1),
        t_exponent: Arc::new(|s| 8.0 / 3.0 * (1.0 - s)),
        log_exponent: Arc::new(|s| 5.0 - 2.0 * s),
        log_argument_shift: 0.0,
        sigma_validity: (0.6, 1.0),
        t_floor: LOG_T0_FLOOR,
        secondary: (c2 > 0.0).then_some(SecondaryTerm {
            coefficient: c2,
            log_exponent: 2.0,
        }),
    }
}

pub fn simonic_spec(k2: f64) -> BoundSpec {
    BoundSpec {
        id: "simonic".to_string(),
        coefficient: Arc::new(move |s| k2 / 2f64.powf(1.0 - (s - 0.5) / 4.0)),
        t_exponent: Arc::new(|s| 1.0 - (s - 0.5) / 4.0),
        log_exponent: Arc::new(|_| 1.0),
        log_argument_shift: std::f64::consts::LN_2,
        sigma_validity: (0.5, 1.0),
        t_floor: LOG_T0_FLOOR + std::f64::consts::LN_2,
        secondary: None,
    }
}

pub fn bohr_landau_spec(c: f64) -> BoundSpec {
    BoundSpec {
        id: "bohr_landau".to_string(),
        coefficient: Arc::new(move |s| c / (s - 0.5)),
        t_exponent: Arc::new(|_| 1.0),
        log_exponent: Arc::new(|_| 0.0),
        log_argument_shift: 0.0,
        sigma_validity: (0.501, 1.0),
        t_floor: LOG_T0_FLOOR,
        secondary: None,
    }
}

/// Carlson, KLN and Simonič, plus Bohr–Landau when its constant is given.
pub fn builtin_bounds(config: &ComparatorConstants, carlson: CarlsonOptions) -> Result<Vec<BoundSpec>> {
    let mut missing = Vec::new();
    if config.kln_c1.is_none() {
        missing.push("kln_c1");
    }
    if config.simonic_k2.is_none() {
        missing.push("simonic_k2");
    }
    if !missing.is_empty() {
        return Err(Error::Config(format!(
            "missing comparator constants: {}",
            missing.join(", ")
        )));
    }
    let c1 = config.kln_c1.unwrap_or_default();
    let c2 = config.kln_c2.unwrap_or(0.0);
    let k2 = config.simonic_k2.unwrap_or_default();
    for (key, v) in [("kln_c1", c1), ("simonic_k2", k2)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Config(format!("{key} = {v} must be positive")));
        }
    }
    if !(c2 >= 0.0 && c2.is_finite()) {
        return Err(Error::Config(format!("kln_c2 = {c2} must be non-negative")));
    }
    let mut out = vec![carlson_spec(carlson), kln_spec(c1, c2), simonic_spec(k2)];
    if let Some(c) = config.bohr_landau_c {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Config(format!("bohr_landau_c = {c} must be positive")));
        }
        out.push(bohr_landau_spec(c));
    }
    Ok(out)
}

/// Value of `spec` at `(σ, log T)`.
pub fn eval_bound(spec: &BoundSpec, sigma: f64, log_t: f64) -> Result<ExtReal> {
    let (lo, hi) = spec.sigma_validity;
    if !(sigma >= lo && sigma <= hi) {
        return domain(format!(
            "σ = {sigma} outside validity [{lo}, {hi}] of {}",
            spec.id
        ));
    }
    if !(log_t >= spec.t_floor) || !log_t.is_finite() {
        return domain(format!(
            "log T = {log_t} below floor {} of {}",
            spec.t_floor, spec.id
        ));
    }
    let coeff = (spec.coefficient)(sigma);
    if !(coeff > 0.0 && coeff.is_finite()) {
        return domain(format!("coefficient of {} is {coeff} at σ = {sigma}", spec.id));
    }
    let log_arg = log_t - spec.log_argument_shift;
    if !(log_arg > 0.0) {
        return domain(format!("log factor of {} is not positive", spec.id));
    }
    let main = ExtReal::from_ln(
        coeff.ln() + (spec.t_exponent)(sigma) * log_t + (spec.log_exponent)(sigma) * log_arg.ln(),
        1,
    )?;
    match &spec.secondary {
        Some(s) if s.coefficient > 0.0 => {
            Ok(main + ExtReal::from_ln(s.coefficient.ln() + s.log_exponent * log_t.ln(), 1)?)
        }
        _ => Ok(main),
    }
}

fn log_ratio(a: &BoundSpec, b: &BoundSpec, sigma: f64, log_t: f64) -> Result<f64> {
    Ok(eval_bound(a, sigma, log_t)?.ln_abs() - eval_bound(b, sigma, log_t)?.ln_abs())
}

/// `log T*` where `a` and `b` cross, by bisection on `ln a − ln b`.
pub fn crossover(a: &BoundSpec, b: &BoundSpec, sigma: f64, log_t_lo: f64, log_t_hi: f64) -> Result<f64> {
    if !(log_t_lo < log_t_hi) {
        return domain(format!("empty bracket [{log_t_lo}, {log_t_hi}]"));
    }
    let mut lo = log_t_lo;
    let mut hi = log_t_hi;
    let f_lo = log_ratio(a, b, sigma, lo)?;
    let f_hi = log_ratio(a, b, sigma, hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket { lo, hi });
    }
    let lo_negative = f_lo < 0.0;
    for _ in 0..CROSSOVER_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= CROSSOVER_REL_TOL * mid.abs() || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f = log_ratio(a, b, sigma, mid)?;
        if f == 0.0 {
            return Ok(mid);
        }
        if (f < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence {
        iterations: CROSSOVER_MAX_ITER,
    })
}

/// Simonič constant `K₂` for which the Simonič bound equals the Carlson
/// bound with constant `k_carlson` at `σ` and `log₁₀T*`.
///
/// This reverse-engineers `K₂` from a quoted crossover height; it is not a
/// value from the literature.
pub fn calibrate_simonic_k2(k_carlson: f64, sigma: f64, log10_t_star: f64) -> Result<f64> {
    let l = log10_t_star * std::f64::consts::LN_10;
    let carlson = carlson_from_k(k_carlson, sigma, l, LogExponent::Theorem)?;
    let unit = eval_bound(&simonic_spec(1.0), sigma, l)?;
    Ok((carlson.ln_abs() - unit.ln_abs()).exp())
}

/// Axis `min, min + step, …` up to `max` inclusive (within `1e−9` steps).
pub fn axis(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(max >= min) || !min.is_finite() || !max.is_finite() {
        return domain(format!("bad axis [{min}, {max}] step {step}"));
    }
    let n = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| min + i as f64 * step).collect())
}

/// Winner map over `(σ, log T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMap {
    pub sigma_axis: Vec<f64>,
    /// Natural logarithms.
    pub log_t_axis: Vec<f64>,
    pub bound_ids: Vec<String>,
    /// `winner[i][j]` for `sigma_axis[i]`, `log_t_axis[j]`; `None` when no bound is valid.
    pub winner: Vec<Vec<Option<String>>>,
    /// `values[i][j][b]` for `bound_ids[b]`.
    pub values: Vec<Vec<Vec<Option<ExtReal>>>>,
}

/// Evaluates every spec on the grid and records the smallest valid bound per
/// cell, ties going to the lexicographically first id.
pub fn region_map(sigma_axis: &[f64], log_t_axis: &[f64], specs: &[BoundSpec]) -> Result<RegionMap> {
    if sigma_axis.is_empty() || log_t_axis.is_empty() {
        return domain("region map needs nonempty axes");
    }
    let rows: Vec<Result<(Vec<Option<String>>, Vec<Vec<Option<ExtReal>>>)>> = sigma_axis
        .par_iter()
        .map(|&sigma| {
            let mut winners = Vec::with_capacity(log_t_axis.len());
            let mut values = Vec::with_capacity(log_t_axis.len());
            for &log_t in log_t_axis {
                let mut cell = Vec::with_capacity(specs.len());
                let mut best: Option<(ExtReal, &str)> = None;
                for spec in specs {
                    let v = if spec.is_valid(sigma, log_t) {
                        Some(eval_bound(spec, sigma, log_t)?)
                    } else {
                        None
                    };
                    if let Some(v) = v {
                        let better = match &best {
                            None => true,
                            Some((bv, bid)) => v < *bv || (v == *bv && spec.id.as_str() < *bid),
                        };
                        if better {
                            best = Some((v, spec.id.as_str()));
                        }
                    }
                    cell.push(v);
                }
                winners.push(best.map(|(_, id)| id.to_string()));
                values.push(cell);
            }
            Ok((winners, values))
        })
        .collect();
    let mut winner = Vec::with_capacity(sigma_axis.len());
    let mut values = Vec::with_capacity(sigma_axis.len());
    for r in rows {
        let (w, v) = r?;
        winner.push(w);
        values.push(v);
    }
    Ok(RegionMap {
        sigma_axis: sigma_axis.to_vec(),
        log_t_axis: log_t_axis.to_vec(),
        bound_ids: specs.iter().map(|s| s.id.clone()).collect(),
        winner,
        values,
    })
}
