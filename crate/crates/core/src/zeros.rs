//! Zero-ordinate datasets and counting audits.
//!
//! File format: UTF-8 text, one ordinate per line in strictly ascending
//! order, `#` starts a comment line, blank lines are ignored. Every zero is
//! taken to lie on the critical line.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::bounds::{eval_bound, BoundSpec};
use crate::error::{domain, Error, Result};

/// Ascending ordinates `0 < γ₁ < γ₂ < …`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroDataset {
    ordinates: Vec<f64>,
}

impl ZeroDataset {
    pub fn new(ordinates: Vec<f64>) -> Result<Self> {
        for (i, &g) in ordinates.iter().enumerate() {
            if !(g.is_finite() && g > 0.0) {
                return Err(Error::Parse {
                    line: i + 1,
                    text: g.to_string(),
                });
            }
        }
        if let Some(w) = ordinates.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::Order {
                prev: w[0],
                next: w[1],
            });
        }
        Ok(Self { ordinates })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn max_ordinate(&self) -> Option<f64> {
        self.ordinates.last().copied()
    }

    /// One ordinate per line in shortest round-trip form.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(self.ordinates.len() * 14);
        for g in &self.ordinates {
            let _ = writeln!(out, "{g:?}");
        }
        out
    }
}

pub fn parse_zeros(text: &str) -> Result<ZeroDataset> {
    let mut ordinates = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g: f64 = line.parse().map_err(|_| Error::Parse {
            line: i + 1,
            text: line.to_string(),
        })?;
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::Parse {
                line: i + 1,
                text: line.to_string(),
            });
        }
        if let Some(&prev) = ordinates.last() {
            if g <= prev {
                return Err(Error::Order { prev, next: g });
            }
        }
        ordinates.push(g);
    }
    Ok(ZeroDataset { ordinates })
}

/// `N(T)` restricted to the dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroCount {
    /// Number of ordinates `γ ≤ T`.
    pub count: usize,
    /// `T` lies beyond the last ordinate, so `count` only bounds `N(T)` from below.
    pub lower_bound_only: bool,
}

/// Count of ordinates `≤ T` (inclusive at an ordinate).
pub fn zero_count(ds: &ZeroDataset, t: f64) -> ZeroCount {
    let count = ds.ordinates.partition_point(|&g| g <= t);
    ZeroCount {
        count,
        lower_bound_only: ds.max_ordinate().map_or(true, |m| t > m),
    }
}

/// `N(σ,T)` over the dataset: always zero, every listed zero has `β = 1/2`.
pub fn empirical_nsigma(ds: &ZeroDataset, sigma: f64, t: f64) -> Result<usize> {
    if !(sigma > 0.5) {
        return domain(format!("N(σ,T) is defined for σ > 1/2, got {sigma}"));
    }
    let _ = zero_count(ds, t);
    Ok(0)
}

/// `(T/2π) ln(T/2πe) + 7/8`.
pub fn rvm_main_term(t: f64) -> Result<f64> {
    if !(t >= 2.0) || !t.is_finite() {
        return domain(format!("T = {t} below 2"));
    }
    let x = t / (2.0 * PI);
    Ok(x * (x.ln() - 1.0) + 0.875)
}

/// Largest `|N(T) − main term|` over the dataset, probing just below and at
/// every ordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RvmAudit {
    pub zeros: usize,
    pub max_deviation: f64,
    pub argmax: f64,
    pub tolerance: f64,
}

impl RvmAudit {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

pub fn rvm_audit(ds: &ZeroDataset, tolerance: f64) -> Result<RvmAudit> {
    let mut worst = 0.0f64;
    let mut argmax = f64::NAN;
    let mut consider = |t: f64, count: usize| -> Result<()> {
        let d = (count as f64 - rvm_main_term(t)?).abs();
        if d > worst {
            worst = d;
            argmax = t;
        }
        Ok(())
    };
    for (i, &g) in ds.ordinates.iter().enumerate() {
        consider(g, i + 1)?;
        // the left limit: main term is continuous, count is i
        consider(g, i)?;
    }
    Ok(RvmAudit {
        zeros: ds.len(),
        max_deviation: worst,
        argmax,
        tolerance,
    })
}

/// One cell of the `N(σ,T) ≤ bound` audit.
#[derive(Debug, Clone, PartialEq)]
pub struct NsigmaCheck {
    pub bound_id: String,
    pub sigma: f64,
    pub log_t: f64,
    pub count: usize,
    pub bound_log10: f64,
}

/// `N(σ,T) ≤ bound` for every valid bound at `σ ∈ sigmas` and heights
/// `T ∈ heights` that lie within both the dataset and the bound's validity.
/// The returned checks are those actually performed.
pub fn nsigma_audit(ds: &ZeroDataset, specs: &[BoundSpec], sigmas: &[f64], heights: &[f64]) -> Result<Vec<NsigmaCheck>> {
    let top = ds.max_ordinate().unwrap_or(0.0);
    let mut out = Vec::new();
    for &sigma in sigmas {
        for &t in heights {
            if t > top || t < 2.0 {
                continue;
            }
            let log_t = t.ln();
            let count = empirical_nsigma(ds, sigma, t)?;
            for spec in specs {
                if !spec.is_valid(sigma, log_t) {
                    continue;
                }
                let v = eval_bound(spec, sigma, log_t)?;
                if v.sign() <= 0 || (count as f64) > v.to_f64() {
                    return Err(Error::Domain(format!(
                        "bound {} fails at σ = {sigma}, T = {t}",
                        spec.id
                    )));
                }
                out.push(NsigmaCheck {
                    bound_id: spec.id.clone(),
                    sigma,
                    log_t,
                    count,
                    bound_log10: v.log10_abs(),
                });
            }
        }
    }
    Ok(out)
}
