//! The constant pipeline `C(σ,X₀) → K(σ,T) → C₁ → C₂ → C₃ → K(σ,T₀)`.
//!
//! Heights enter as natural logarithms so that `T₀` may be as large as
//! `10^{10^6}`; every intermediate is an ordinary `f64` because the
//! constants themselves are of moderate size.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::extrange::ExtReal;

/// `ln(3·10¹²)`: height below which no zero off the critical line exists.
pub const LOG_T0_FLOOR: f64 = 28.729_633_404_596_658;

/// Smallest `X` for which the divisor-square tail estimate holds.
pub const X0_FLOOR: f64 = 433.0;

/// Constant of the argument bound on the contour `[α, β] × {T}`.
pub const ARG_CONSTANT: f64 = 17.29;

/// Constant of the `log|h_X(β + it)|` integral on the right edge.
pub const RIGHT_EDGE_CONSTANT: f64 = 0.05;

/// Printed coefficient of the contour term in the closed form for `K(σ,T₀)`.
pub const LITERAL_CONTOUR_COEFFICIENT: f64 = 0.004;

/// Table 1 reference values `(log₁₀T₀, σ, K(σ,T₀))`.
pub const TABLE1: [(f64, f64, f64); 9] = [
    (12.477_121_254_719_663, 0.60, 0.7756),
    (12.477_121_254_719_663, 0.66, 0.2781),
    (20.0, 0.60, 0.0686),
    (20.0, 0.65, 0.0963),
    (50.0, 0.61, 0.0597),
    (50.0, 0.65, 0.0453),
    (70.0, 0.62, 0.2447),
    (70.0, 0.66, 0.0253),
    (200.0, 0.62, 0.1414),
];

/// `m₀ = √(1 + (2/3)√(6/5))`, the Montgomery–Vaughan constant.
pub fn m0() -> f64 {
    (1.0 + (2.0 / 3.0) * (6.0f64 / 5.0).sqrt()).sqrt()
}

/// `(σ, ln T₀)` with the validity constraints of the main estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityParams {
    sigma: f64,
    log_t0: f64,
}

impl DensityParams {
    /// Strict mode: `σ ∈ [0.6, 2/3]`.
    pub fn new(sigma: f64, log_t0: f64) -> Result<Self> {
        if !(0.6..=2.0 / 3.0).contains(&sigma) {
            return domain(format!(
                "σ = {sigma} outside [0.6, 2/3]; pass the override flag to allow (1/2, 1)"
            ));
        }
        Self::with_override(sigma, log_t0)
    }

    /// Override mode: any `σ ∈ (1/2, 1)`.
    pub fn with_override(sigma: f64, log_t0: f64) -> Result<Self> {
        if !(sigma > 0.5 && sigma < 1.0) {
            return domain(format!("σ = {sigma} outside (1/2, 1)"));
        }
        if !log_t0.is_finite() {
            return domain("log T₀ must be finite");
        }
        // tolerate the rounding of log₁₀(3·10¹²) = 12.477 on input
        let log_t0 = if log_t0 < LOG_T0_FLOOR && log_t0 > LOG_T0_FLOOR - 1e-3 {
            LOG_T0_FLOOR
        } else {
            log_t0
        };
        if log_t0 < LOG_T0_FLOOR {
            return domain(format!(
                "T₀ = e^{log_t0} below the verified height 3·10¹²"
            ));
        }
        Ok(Self { sigma, log_t0 })
    }

    /// Heights given as `log₁₀T₀`.
    pub fn from_log10(sigma: f64, log10_t0: f64, allow_override: bool) -> Result<Self> {
        let log_t0 = log10_t0 * std::f64::consts::LN_10;
        if allow_override {
            Self::with_override(sigma, log_t0)
        } else {
            Self::new(sigma, log_t0)
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn log_t0(&self) -> f64 {
        self.log_t0
    }

    pub fn log10_t0(&self) -> f64 {
        self.log_t0 / std::f64::consts::LN_10
    }
}

/// Which coefficient multiplies `(1.25 − σ + 1/ln T₀)` in `K(σ,T₀)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContourTerm {
    /// `17.29/(2π ln²T₀)`, decaying with `T₀`.
    #[default]
    Derived,
    /// The printed constant `0.004`.
    Literal,
}

impl ContourTerm {
    pub fn coefficient(self, log_t0: f64) -> f64 {
        match self {
            ContourTerm::Derived => ARG_CONSTANT / (2.0 * PI * log_t0 * log_t0),
            ContourTerm::Literal => LITERAL_CONTOUR_COEFFICIENT,
        }
    }
}

/// Every intermediate of the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantBreakdown {
    pub sigma: f64,
    pub log_t0: f64,
    /// `ln X₀` actually used inside `C₁`.
    pub log_x0_used: f64,
    /// `X₀` when representable, else `+∞`.
    pub x0_used: f64,
    pub c_of_sigma: f64,
    pub k_coeff_sup: f64,
    pub c1: f64,
    /// Displayed B-term of `C₂`, `(166.34/(2σ−1))(1 − 2^{1−2σ})/(T₀ ln³T₀)`.
    pub b_term: f64,
    /// `2·3.09 X^{2−2σ}(1−σ)^{−2}(2^{2σ−1}−1)(2σ−1)^{−1} T^{1−2σ}` at `T = T₀`,
    /// `X = T₀^{2σ−1} ln T₀`, normalised by `T₀^{4σ(1−σ)} ln³T₀`.
    pub b_term_evaluable: f64,
    pub c2: f64,
    pub c3: f64,
    pub contour: ContourTerm,
    pub contour_coefficient: f64,
    pub k_final: f64,
    pub warnings: Vec<String>,
}

fn check_open_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.5 && sigma < 1.0) {
        return domain(format!("σ = {sigma} outside (1/2, 1)"));
    }
    Ok(())
}

/// `C(σ,X₀) = σ/(2(2σ−1)⁴)·((2σ−1)³ + 3(2σ−1)²/ln X₀ + 6(2σ−1)/ln²X₀ + 6/ln³X₀)`.
pub fn c_sigma(sigma: f64, x0: f64) -> Result<f64> {
    if !(x0 >= X0_FLOOR) {
        return domain(format!("X₀ = {x0} below 433"));
    }
    c_sigma_ln(sigma, x0.ln())
}

/// [`c_sigma`] with `X₀` given by its natural logarithm.
pub fn c_sigma_ln(sigma: f64, log_x0: f64) -> Result<f64> {
    check_open_sigma(sigma)?;
    if !(log_x0 >= X0_FLOOR.ln()) {
        return domain(format!("ln X₀ = {log_x0} below ln 433"));
    }
    let a = 2.0 * sigma - 1.0;
    let l = log_x0;
    let poly = a.powi(3) + 3.0 * a * a / l + 6.0 * a / (l * l) + 6.0 / l.powi(3);
    Ok(sigma / (2.0 * a.powi(4)) * poly)
}

/// `K(σ,T) = 1/4 − ((2σ−1)/(4(2σ−2)))(1 − T^{−(2−2σ)})`.
pub fn k_coeff(sigma: f64, t: ExtReal) -> Result<f64> {
    if !(0.5..1.0).contains(&sigma) {
        return domain(format!("σ = {sigma} outside [1/2, 1)"));
    }
    if t.sign() <= 0 || t.ln_abs() <= 0.0 {
        return domain("K(σ,T) needs T > 1");
    }
    let decay = (-(2.0 - 2.0 * sigma) * t.ln_abs()).exp();
    Ok(0.25 - ((2.0 * sigma - 1.0) / (4.0 * (2.0 * sigma - 2.0))) * (1.0 - decay))
}

/// `sup_{T>1} K(σ,T) = 1/4 + (2σ−1)/(4(2−2σ))`.
pub fn k_coeff_sup(sigma: f64) -> Result<f64> {
    if !(0.5..1.0).contains(&sigma) {
        return domain(format!("σ = {sigma} outside [1/2, 1)"));
    }
    Ok(0.25 + (2.0 * sigma - 1.0) / (4.0 * (2.0 - 2.0 * sigma)))
}

/// `C₁` together with the `X₀` it used.
#[derive(Debug, Clone, PartialEq)]
pub struct C1Report {
    pub value: f64,
    pub log_x0_used: f64,
    pub c_of_sigma: f64,
    pub k_coeff_sup: f64,
    pub warnings: Vec<String>,
}

/// ```text
/// C₁ = 1.36(0.5 + 2πm₀/T₀)(2σ−1 + lnlnT₀/lnT₀)³ C(σ,X₀)
///    + 2πm₀ (K/lnT₀)(2σ + lnlnT₀/lnT₀)²
/// ```
///
/// with `X₀ = max(T₀^{2σ−1}, 433)` and `K = sup K(σ,T)`.
pub fn c1(params: &DensityParams) -> Result<C1Report> {
    let sigma = params.sigma;
    let l = params.log_t0;
    let mut warnings = Vec::new();
    let natural = (2.0 * sigma - 1.0) * l;
    let floor = X0_FLOOR.ln();
    let log_x0 = if natural < floor {
        warnings.push(format!(
            "X0 = T0^(2sigma-1) = {:.6} below 433; clamped to 433",
            natural.exp()
        ));
        floor
    } else {
        natural
    };
    let c_sig = c_sigma_ln(sigma, log_x0)?;
    let k = k_coeff_sup(sigma)?;
    let m0 = m0();
    let r = l.ln() / l;
    let first = 1.36 * (0.5 + 2.0 * PI * m0 * (-l).exp()) * (2.0 * sigma - 1.0 + r).powi(3) * c_sig;
    let second = 2.0 * PI * m0 * (k / l) * (2.0 * sigma + r).powi(2);
    Ok(C1Report {
        value: first + second,
        log_x0_used: log_x0,
        c_of_sigma: c_sig,
        k_coeff_sup: k,
        warnings,
    })
}

/// Displayed B-term `(166.34/(2σ−1))(1 − 2^{1−2σ})/(T₀ ln³T₀)`.
pub fn b_term(params: &DensityParams) -> f64 {
    let sigma = params.sigma;
    let l = params.log_t0;
    166.34 / (2.0 * sigma - 1.0) * (1.0 - 2f64.powf(1.0 - 2.0 * sigma)) * (-l).exp() / l.powi(3)
}

fn b_term_evaluable(params: &DensityParams) -> f64 {
    let sigma = params.sigma;
    let l = params.log_t0;
    let a = 2.0 * sigma - 1.0;
    let ln_x = a * l + l.ln();
    let ln_value = 2f64.ln() + 3.09f64.ln() + (2.0 - 2.0 * sigma) * ln_x
        - 2.0 * (1.0 - sigma).ln()
        + (2f64.powf(a) - 1.0).ln()
        - a.ln()
        + (1.0 - 2.0 * sigma) * l
        - 4.0 * sigma * (1.0 - sigma) * l
        - 3.0 * l.ln();
    ln_value.exp()
}

/// `C₂ = 2C₁ + B-term`.
pub fn c2(params: &DensityParams) -> Result<f64> {
    Ok(2.0 * c1(params)?.value + b_term(params))
}

/// Divisor `1 − 0.5^{4σ(1−σ)}` of `C₃`.
pub fn c3_divisor(sigma: f64) -> f64 {
    1.0 - 0.5f64.powf(4.0 * sigma * (1.0 - sigma))
}

/// `C₃ = C₂/(1 − 0.5^{4σ(1−σ)})`.
pub fn c3(params: &DensityParams) -> Result<f64> {
    Ok(c2(params)? / c3_divisor(params.sigma))
}

/// `K(σ,T₀)` with the derived contour coefficient.
pub fn k_final(params: &DensityParams) -> Result<ConstantBreakdown> {
    k_final_with(params, ContourTerm::Derived)
}

/// ```text
/// K(σ,T₀) = C₃/(2π) + c·(1.25 − σ + 1/lnT₀) + 0.05/(4π ln²T₀)
/// ```
///
/// where `c` is selected by `contour`. The `1/ln T` of the contour term is
/// taken at `T = T₀`, its largest value.
pub fn k_final_with(params: &DensityParams, contour: ContourTerm) -> Result<ConstantBreakdown> {
    let sigma = params.sigma;
    let l = params.log_t0;
    let c1r = c1(params)?;
    let b = b_term(params);
    let c2 = 2.0 * c1r.value + b;
    let c3 = c2 / c3_divisor(sigma);
    let coeff = contour.coefficient(l);
    let k = c3 / (2.0 * PI)
        + coeff * (1.25 - sigma + 1.0 / l)
        + RIGHT_EDGE_CONSTANT / (4.0 * PI * l * l);
    let mut warnings = c1r.warnings;
    if !(0.6..=2.0 / 3.0).contains(&sigma) {
        warnings.push(format!("sigma = {sigma} outside [0.6, 2/3] (override)"));
    }
    let out = ConstantBreakdown {
        sigma,
        log_t0: l,
        log_x0_used: c1r.log_x0_used,
        x0_used: c1r.log_x0_used.exp(),
        c_of_sigma: c1r.c_of_sigma,
        k_coeff_sup: c1r.k_coeff_sup,
        c1: c1r.value,
        b_term: b,
        b_term_evaluable: b_term_evaluable(params),
        c2,
        c3,
        contour,
        contour_coefficient: coeff,
        k_final: k,
        warnings,
    };
    if [out.c_of_sigma, out.c1, out.c2, out.c3, out.k_final]
        .iter()
        .any(|v| !(v.is_finite() && *v > 0.0))
    {
        return Err(Error::Precision(format!(
            "non-positive or non-finite constant at σ = {sigma}, ln T₀ = {l}"
        )));
    }
    Ok(out)
}

/// `lim_{T₀→∞} K(σ,T₀) = (1/2π)·0.68σ(2σ−1)²/(1 − 0.5^{4σ(1−σ)})`.
pub fn k_limit(sigma: f64) -> Result<f64> {
    if !(0.5..1.0).contains(&sigma) {
        return domain(format!("σ = {sigma} outside [1/2, 1)"));
    }
    let a = 2.0 * sigma - 1.0;
    Ok(0.68 * sigma * a * a / c3_divisor(sigma) / (2.0 * PI))
}
