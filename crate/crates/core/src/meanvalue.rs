//! Mean squares of Dirichlet polynomials over `[T/2, T]`, the
//! Montgomery–Vaughan right-hand side, the mollified mean-value lemma, and
//! the second and fourth moment bounds on the critical line.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::ArithTables;
use crate::constants::{c_sigma, k_coeff, m0, X0_FLOOR};
use crate::error::{domain, Error, Result};
use crate::extrange::ExtReal;
use crate::sum::{Kahan, CHUNK};
use crate::zeta::{zeta_reference, ComplexPoint, AFE_T_FLOOR};

/// Largest `X·T` accepted by [`mollifier_product_coeffs`].
pub const MAX_PRODUCT_LENGTH: usize = 10_000_000;

/// Largest polynomial length accepted by [`exact_mean_square`].
pub const MAX_MEAN_SQUARE_LENGTH: usize = 100_000;

/// Coefficients of the fourth-moment bound, in display order.
pub const FOURTH_MOMENT_COEFFS: [f64; 9] = [
    24.0, 1022.0, 2.0, 1181.16, 19.86, 364.25, 177.07, 355.83, 181.83,
];

/// `Σ_{n=1}^{N} c_n n^{−s}`, stored as `values[n−1] = c_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCoeffs {
    values: Vec<f64>,
}

impl DirichletCoeffs {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return domain("a Dirichlet polynomial needs at least one coefficient");
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return domain(format!("coefficient c_{} is not finite", i + 1));
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `c_n`, `1 ≤ n ≤ N`.
    pub fn get(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(n, u_n)` with `u_n = c_n n^{−σ}` for the nonzero coefficients.
    pub fn weighted_terms(&self, sigma: f64) -> Vec<(u64, f64)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| {
                let n = (i + 1) as u64;
                (n, c * (n as f64).powf(-sigma))
            })
            .collect()
    }
}

/// `N` coefficients uniform in `[−1, 1]` from a ChaCha8 stream seeded with `seed`.
pub fn seeded_coeffs(seed: u64, n: usize) -> Result<DirichletCoeffs> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DirichletCoeffs::new((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect())
}

/// Coefficients of `(Σ_{1<m≤T} m^{−s})(Σ_{n≤X} μ(n)n^{−s})`, by enumerating
/// every pair `(m, n)`.
pub fn mollifier_product_coeffs(x: usize, t: usize, tables: &ArithTables) -> Result<DirichletCoeffs> {
    if x == 0 || t < 2 {
        return domain(format!("need X ≥ 1 and T ≥ 2, got X = {x}, T = {t}"));
    }
    let len = x
        .checked_mul(t)
        .filter(|&l| l <= MAX_PRODUCT_LENGTH)
        .ok_or_else(|| {
            Error::Capacity(format!("X·T = {x}·{t} exceeds {MAX_PRODUCT_LENGTH}"))
        })?;
    if x > tables.limit() {
        return Err(Error::Capacity(format!(
            "X = {x} exceeds sieve limit {}",
            tables.limit()
        )));
    }
    let mu = tables.mu_slice();
    let mut c = vec![0i64; len];
    for m in 2..=t {
        for n in 1..=x {
            if mu[n] != 0 {
                c[m * n - 1] += i64::from(mu[n]);
            }
        }
    }
    DirichletCoeffs::new(c.into_iter().map(|v| v as f64).collect())
}

/// `Σ_n |u_n|²(T/2 + 2πm₀(n+1))` with `u_n = c_n n^{−σ}`.
pub fn mv_rhs(coeffs: &DirichletCoeffs, sigma: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("T = {t} must be positive"));
    }
    let m0 = m0();
    let mut acc = Kahan::default();
    for (n, u) in coeffs.weighted_terms(sigma) {
        acc.add(u * u * (t / 2.0 + 2.0 * PI * m0 * (n as f64 + 1.0)));
    }
    Ok(acc.value())
}

/// `∫_{T/2}^{T} |Σ c_n n^{−σ−it}|² dt` in closed form.
pub fn exact_mean_square(coeffs: &DirichletCoeffs, sigma: f64, t: f64) -> Result<f64> {
    if coeffs.len() > MAX_MEAN_SQUARE_LENGTH {
        return Err(Error::Capacity(format!(
            "polynomial length {} exceeds {MAX_MEAN_SQUARE_LENGTH}",
            coeffs.len()
        )));
    }
    exact_mean_square_terms(&coeffs.weighted_terms(sigma), t)
}

/// `∫_{T/2}^{T} |Σ_j u_j n_j^{it}|² dt` for explicit `(n_j, u_j)` with
/// distinct `n_j`, summed in the given order.
pub fn exact_mean_square_terms(terms: &[(u64, f64)], t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("T = {t} must be positive"));
    }
    if terms.len() > MAX_MEAN_SQUARE_LENGTH {
        return Err(Error::Capacity(format!(
            "{} terms exceed {MAX_MEAN_SQUARE_LENGTH}",
            terms.len()
        )));
    }
    let k = terms.len();
    let ln: Vec<f64> = terms.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let u: Vec<f64> = terms.iter().map(|&(_, u)| u).collect();
    let full: Vec<(f64, f64)> = ln.iter().map(|&l| (t * l).sin_cos()).collect();
    let half: Vec<(f64, f64)> = ln.iter().map(|&l| (0.5 * t * l).sin_cos()).collect();

    let mut diag = Kahan::default();
    for &x in &u {
        diag.add(x * x);
    }

    let chunks: Vec<f64> = (0..k.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut part = Kahan::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(k) {
                let (si, ci) = full[i];
                let (hsi, hci) = half[i];
                let mut inner = Kahan::default();
                for j in i + 1..k {
                    let (sj, cj) = full[j];
                    let (hsj, hcj) = half[j];
                    // sin(Tδ) − sin(Tδ/2), δ = ln n_j − ln n_i
                    let num = (sj * ci - cj * si) - (hsj * hci - hcj * hsi);
                    inner.add(u[j] * num / (ln[j] - ln[i]));
                }
                part.add(u[i] * inner.value());
            }
            part.value()
        })
        .collect();
    let mut off = Kahan::default();
    for p in chunks {
        off.add(p);
    }
    Ok(0.5 * t * diag.value() + 2.0 * off.value())
}

/// ```text
/// 2πm₀K(σ,T)(XT)^{2−2σ}ln²(XT) + 1.36(0.5 + 2πm₀/T)C(σ,X₀)TX^{1−2σ}ln³X
/// ```
pub fn lemma_meanv_rhs(sigma: f64, t: f64, x: f64, x0: f64) -> Result<f64> {
    if !(0.6..=2.0 / 3.0).contains(&sigma) {
        return domain(format!("σ = {sigma} outside [0.6, 2/3]"));
    }
    if !(x0 >= X0_FLOOR) || !(x >= x0) {
        return domain(format!("need X ≥ X₀ ≥ 433, got X = {x}, X₀ = {x0}"));
    }
    if !(t > 1.0) || !t.is_finite() {
        return domain(format!("T = {t} must exceed 1"));
    }
    let m0 = m0();
    let k = k_coeff(sigma, ExtReal::from_f64(t)?)?;
    let xt = x * t;
    let first = 2.0 * PI * m0 * k * xt.powf(2.0 - 2.0 * sigma) * xt.ln().powi(2);
    let second = 1.36 * (0.5 + 2.0 * PI * m0 / t)
        * c_sigma(sigma, x0)?
        * t
        * x.powf(1.0 - 2.0 * sigma)
        * x.ln().powi(3);
    Ok(first + second)
}

fn check_moment_height(t: f64) -> Result<()> {
    if !(t >= AFE_T_FLOOR) || !t.is_finite() {
        return domain(format!("T = {t} below {AFE_T_FLOOR}"));
    }
    Ok(())
}

/// `T lnT + 26.48T + 8.27 lnT + 17.20 + 8.27/T`.
pub fn second_moment_bound(t: f64) -> Result<f64> {
    check_moment_height(t)?;
    let l = t.ln();
    Ok(t * l + 26.48 * t + 8.27 * l + 17.20 + 8.27 / t)
}

/// Nine-term bound for `∫_T^{2T}|ζ(1/2+it)|⁴dt`.
pub fn fourth_moment_bound(t: f64) -> Result<f64> {
    check_moment_height(t)?;
    let [a, b, c, d, e, f, g, h, i] = FOURTH_MOMENT_COEFFS;
    let t2 = t * t;
    let l = t.ln();
    Ok(a * t2 * (8.0 * t).ln().powi(3)
        + b * t2 * (2.0 * t).ln().powi(2)
        + c * t * (4.0 * t).ln().powi(3)
        + d * t * l * l
        + e * t * l
        + f * t
        + g * l
        + h
        + i / t)
}

/// Simpson approximations of `∫_T^{2T}|ζ(1/2+it)|^k dt` for `k = 2` and `k = 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalMoments {
    pub t: f64,
    pub intervals: usize,
    pub second: f64,
    pub fourth: f64,
}

/// Both moments from one set of `ζ` evaluations.
pub fn empirical_moments(t: f64, step: f64) -> Result<EmpiricalMoments> {
    if !(100.0..=5000.0).contains(&t) {
        return domain(format!("T = {t} outside [100, 5000]"));
    }
    if !(step > 0.0 && step <= 0.1) {
        return domain(format!("step = {step} outside (0, 0.1]"));
    }
    let mut intervals = (t / step).ceil() as usize;
    if intervals % 2 == 1 {
        intervals += 1;
    }
    let h = t / intervals as f64;
    let nodes = intervals + 1;
    let parts: Vec<Result<(f64, f64)>> = (0..nodes.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut s2 = Kahan::default();
            let mut s4 = Kahan::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(nodes) {
                let w = if i == 0 || i == intervals {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                let z = zeta_reference(ComplexPoint::new(0.5, t + i as f64 * h), 1e-8)?;
                let a2 = z.norm_sqr();
                s2.add(w * a2);
                s4.add(w * a2 * a2);
            }
            Ok((s2.value(), s4.value()))
        })
        .collect();
    let mut s2 = Kahan::default();
    let mut s4 = Kahan::default();
    for p in parts {
        let (a, b) = p?;
        s2.add(a);
        s4.add(b);
    }
    Ok(EmpiricalMoments {
        t,
        intervals,
        second: s2.value() * h / 3.0,
        fourth: s4.value() * h / 3.0,
    })
}

/// `∫_T^{2T}|ζ(1/2+it)|^k dt` by composite Simpson, `k ∈ {2, 4}`.
pub fn empirical_moment(k: u32, t: f64, step: f64) -> Result<f64> {
    let m = match k {
        2 | 4 => empirical_moments(t, step)?,
        _ => return domain(format!("moment order {k} not in {{2, 4}}")),
    };
    Ok(if k == 2 { m.second } else { m.fourth })
}
