//! Euler–Maclaurin evaluation of `ζ(s)`, the approximate functional
//! equation main sum, and the mollified functions
//! `M_X(s) = Σ_{n≤X} μ(n)n^{−s}`, `f_X = ζM_X − 1`, `h_X = 1 − f_X²`.

use num_complex::Complex64;

use crate::arith::ArithTables;
use crate::error::{domain, Error, Result};
use crate::sum::KahanComplex;

/// Lowest height at which the AFE remainder bound is claimed (first zero).
pub const AFE_T_FLOOR: f64 = 14.1347;

/// Constant in `|R(s)| ≤ 1.755 t^{−σ}`.
pub const AFE_CONSTANT: f64 = 1.755;

pub const MAX_HEIGHT: f64 = 1e5;
pub const MIN_SIGMA: f64 = 0.4;
pub const MIN_ABS_ERR: f64 = 1e-12;

// B₂/2!, B₄/4!, B₆/6!, B₈/8!
const BERNOULLI_OVER_FACTORIAL: [f64; 4] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
];
// |B₁₀|/10!
const B10_OVER_FACTORIAL: f64 = (5.0 / 66.0) / 3_628_800.0;

const MAX_DOUBLINGS: u32 = 4;

/// `s = σ + it`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Self {
        Self { sigma, t }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

/// A value of `ζ(s)` with the bound that certifies it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaEval {
    pub value: Complex64,
    /// Euler–Maclaurin main-sum length.
    pub n: u64,
    /// Rigorous bound on the truncation remainder.
    pub truncation: f64,
    /// Estimate of accumulated rounding.
    pub rounding: f64,
}

impl ZetaEval {
    pub fn error_bound(&self) -> f64 {
        self.truncation + self.rounding
    }
}

/// `n^{−s}` for real `ln n`.
#[inline]
pub(crate) fn n_pow_minus_s(ln_n: f64, s: ComplexPoint) -> Complex64 {
    let mag = (-s.sigma * ln_n).exp();
    let (sin, cos) = (s.t * ln_n).sin_cos();
    Complex64::new(mag * cos, -mag * sin)
}

fn truncation_bound(s: ComplexPoint, n: f64) -> f64 {
    let sc = s.to_complex();
    let mut prod = 1.0;
    for j in 0..10 {
        prod *= (sc + j as f64).norm();
    }
    prod * B10_OVER_FACTORIAL * n.powf(-s.sigma - 9.0) / (s.sigma + 9.0)
}

fn rounding_estimate(s: ComplexPoint, n: u64) -> f64 {
    let nf = n as f64;
    // Σ_{k≤N} k^{−2σ} ≤ 1 + ∫_1^N x^{−2σ}dx
    let a = 1.0 - 2.0 * s.sigma;
    let sq = if a.abs() < 1e-12 {
        1.0 + nf.ln()
    } else {
        1.0 + (nf.powf(a) - 1.0) / a
    };
    3.0 * f64::EPSILON * (s.t.abs() * nf.ln() + 2.0) * sq.sqrt()
}

fn em_sum(s: ComplexPoint, n: u64) -> Complex64 {
    let sc = s.to_complex();
    let mut acc = KahanComplex::default();
    for k in 1..n {
        acc.add(n_pow_minus_s((k as f64).ln(), s));
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_s = n_pow_minus_s(ln_n, s);
    acc.add(n_s * nf / (sc - 1.0));
    acc.add(n_s * 0.5);
    // s(s+1)…(s+2k−2) N^{−s−2k+1}
    let mut rising = sc;
    let mut npow = n_s / nf;
    for (k, b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        acc.add(rising * npow * *b);
        let j = 2.0 * k as f64;
        rising = rising * (sc + j + 1.0) * (sc + j + 2.0);
        npow /= nf * nf;
    }
    acc.value()
}

/// `ζ(s)` to within `abs_err`, with the certificate.
pub fn zeta_certified(s: ComplexPoint, abs_err: f64) -> Result<ZetaEval> {
    if !(s.sigma.is_finite() && s.t.is_finite()) {
        return domain("s must be finite");
    }
    if s.sigma < MIN_SIGMA {
        return domain(format!("σ = {} below {MIN_SIGMA}", s.sigma));
    }
    if !(0.0..=MAX_HEIGHT).contains(&s.t) {
        return domain(format!("t = {} outside [0, {MAX_HEIGHT}]", s.t));
    }
    if !(abs_err >= MIN_ABS_ERR) {
        return domain(format!("abs_err = {abs_err} below {MIN_ABS_ERR}"));
    }
    if s.sigma == 1.0 && s.t == 0.0 {
        return Err(Error::Pole);
    }
    let mut n = ((2.0 * s.t).ceil() as u64).max(64);
    for _ in 0..=MAX_DOUBLINGS {
        let truncation = truncation_bound(s, n as f64);
        let rounding = rounding_estimate(s, n);
        if truncation + rounding <= abs_err {
            return Ok(ZetaEval {
                value: em_sum(s, n),
                n,
                truncation,
                rounding,
            });
        }
        if rounding > abs_err {
            break;
        }
        n *= 2;
    }
    Err(Error::Precision(format!(
        "cannot certify ζ({} + {}i) to {abs_err:e} in double precision",
        s.sigma, s.t
    )))
}

/// `ζ(s)` to within `abs_err`.
pub fn zeta_reference(s: ComplexPoint, abs_err: f64) -> Result<Complex64> {
    zeta_certified(s, abs_err).map(|e| e.value)
}

fn check_afe(sigma: f64, t: f64) -> Result<()> {
    if !(t >= AFE_T_FLOOR) || !t.is_finite() {
        return domain(format!("t = {t} below {AFE_T_FLOOR}"));
    }
    if !(sigma >= 0.5) || !sigma.is_finite() {
        return domain(format!("σ = {sigma} below 1/2"));
    }
    Ok(())
}

/// `Σ_{1≤n≤⌊t⌋} n^{−s}`.
pub fn afe_main_sum(s: ComplexPoint) -> Result<Complex64> {
    check_afe(s.sigma, s.t)?;
    let top = s.t.floor() as u64;
    let mut acc = KahanComplex::default();
    for n in 1..=top {
        acc.add(n_pow_minus_s((n as f64).ln(), s));
    }
    Ok(acc.value())
}

/// `1.755 t^{−σ}`.
pub fn afe_remainder_bound(sigma: f64, t: f64) -> Result<f64> {
    check_afe(sigma, t)?;
    Ok(AFE_CONSTANT * t.powf(-sigma))
}

/// `M_X(s) = Σ_{n≤X} μ(n)n^{−s}`.
pub fn mollifier(s: ComplexPoint, x: usize, tables: &ArithTables) -> Result<Complex64> {
    if x > tables.limit() {
        return Err(Error::Capacity(format!(
            "X = {x} exceeds sieve limit {}",
            tables.limit()
        )));
    }
    let mu = tables.mu_slice();
    let mut acc = KahanComplex::default();
    for n in 1..=x {
        if mu[n] != 0 {
            acc.add(n_pow_minus_s((n as f64).ln(), s) * f64::from(mu[n]));
        }
    }
    Ok(acc.value())
}

/// `f_X(s) = ζ(s)M_X(s) − 1`.
pub fn mollified_f(s: ComplexPoint, x: usize, tables: &ArithTables, abs_err: f64) -> Result<Complex64> {
    let m = mollifier(s, x, tables)?;
    Ok(zeta_reference(s, abs_err)? * m - 1.0)
}

/// `h_X(s) = 1 − f_X(s)²`.
pub fn mollified_h(s: ComplexPoint, x: usize, tables: &ArithTables, abs_err: f64) -> Result<Complex64> {
    let f = mollified_f(s, x, tables, abs_err)?;
    Ok(1.0 - f * f)
}

/// `h_X(s)` in the factored form `ζM_X(2 − ζM_X)`.
pub fn mollified_h_factored(
    s: ComplexPoint,
    x: usize,
    tables: &ArithTables,
    abs_err: f64,
) -> Result<Complex64> {
    let zm = zeta_reference(s, abs_err)? * mollifier(s, x, tables)?;
    Ok(zm * (2.0 - zm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zeta_two() {
        let z = zeta_reference(ComplexPoint::new(2.0, 0.0), 1e-12).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn pole_and_domain() {
        assert_eq!(
            zeta_reference(ComplexPoint::new(1.0, 0.0), 1e-10),
            Err(Error::Pole)
        );
        assert!(zeta_reference(ComplexPoint::new(0.3, 10.0), 1e-10).is_err());
        assert!(zeta_reference(ComplexPoint::new(0.5, 2e5), 1e-10).is_err());
        assert!(zeta_reference(ComplexPoint::new(0.5, 10.0), 1e-13).is_err());
    }

    #[test]
    fn first_zero() {
        let z = zeta_reference(ComplexPoint::new(0.5, 14.134725141734693), 1e-10).unwrap();
        assert!(z.norm() < 1e-9);
    }

    #[test]
    fn afe_bound_values() {
        assert!((afe_remainder_bound(1.0, 1755.0).unwrap() - 0.001).abs() < 1e-18);
        assert!(afe_remainder_bound(0.6, 10.0).is_err());
        assert!(afe_main_sum(ComplexPoint::new(0.6, 10.0)).is_err());
    }
}
