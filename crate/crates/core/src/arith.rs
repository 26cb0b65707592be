//! Sieved divisor counts and Möbius values, and the divisor-square sum
//! checks behind the tail estimate
//!
//! ```text
//! Σ_{n≥X} d(n)²/n^τ ≤ (τ/(4X^{τ−1})) (ln³X/(τ−1) + 3ln²X/(τ−1)² + 6lnX/(τ−1)³ + 6/(τ−1)⁴),
//! ```
//!
//! valid for `X ≥ 433`, which follows by partial summation from the prefix
//! bound `Σ_{n≤t} d(n)² ≤ ¼ t ln³t` (`t ≥ 433`). All logarithms are natural.

use rayon::prelude::*;

use crate::constants::c_sigma;
use crate::error::{domain, Error, Result};
use crate::sum::Kahan;

/// Largest table size accepted by [`ArithTables::build`].
pub const MAX_LIMIT: usize = 100_000_000;

/// Smallest height at which the prefix bound `Σ_{n≤t} d(n)² ≤ ¼ t ln³t` is claimed.
pub const PREFIX_BOUND_FLOOR: u64 = 433;

/// A tail enclosure is rejected by [`tail_sum_oracle`] when its remainder
/// exceeds this fraction of the explicitly summed part.
pub const MAX_REMAINDER_RATIO: f64 = 0.1;

/// `d(n)`, `μ(n)` and `Σ_{k≤t} d(k)²` for `1 ≤ n, t ≤ limit`.
#[derive(Debug, Clone)]
pub struct ArithTables {
    limit: usize,
    d: Vec<u16>,
    mu: Vec<i8>,
    prefix_d2: Vec<u64>,
}

impl ArithTables {
    /// Linear (smallest-prime-factor) sieve.
    pub fn build(limit: usize) -> Result<Self> {
        if !(1..=MAX_LIMIT).contains(&limit) {
            return Err(Error::Capacity(format!(
                "sieve limit {limit} outside 1..={MAX_LIMIT}"
            )));
        }
        let mut d = vec![0u16; limit + 1];
        let mut mu = vec![0i8; limit + 1];
        // exponent of the smallest prime factor
        let mut spf_exp = vec![0u8; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        d[1] = 1;
        mu[1] = 1;
        for i in 2..=limit {
            if d[i] == 0 {
                d[i] = 2;
                mu[i] = -1;
                spf_exp[i] = 1;
                primes.push(i as u32);
            }
            for &p in &primes {
                let p = p as usize;
                let ip = i * p;
                if ip > limit {
                    break;
                }
                if i % p == 0 {
                    let e = spf_exp[i];
                    spf_exp[ip] = e + 1;
                    d[ip] = d[i] / (e as u16 + 1) * (e as u16 + 2);
                    mu[ip] = 0;
                    break;
                }
                spf_exp[ip] = 1;
                d[ip] = d[i] * 2;
                mu[ip] = -mu[i];
            }
        }
        let mut prefix_d2 = vec![0u64; limit + 1];
        let mut acc = 0u64;
        for n in 1..=limit {
            acc += u64::from(d[n]) * u64::from(d[n]);
            prefix_d2[n] = acc;
        }
        Ok(Self {
            limit,
            d,
            mu,
            prefix_d2,
        })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Number of divisors of `n`, `1 ≤ n ≤ limit`.
    pub fn d(&self, n: usize) -> u32 {
        assert!(n >= 1 && n <= self.limit, "n = {n} outside table");
        u32::from(self.d[n])
    }

    pub fn mu(&self, n: usize) -> i8 {
        assert!(n >= 1 && n <= self.limit, "n = {n} outside table");
        self.mu[n]
    }

    /// `Σ_{k≤t} d(k)²`; zero for `t = 0`.
    pub fn prefix_d2(&self, t: usize) -> u64 {
        assert!(t <= self.limit, "t = {t} outside table");
        self.prefix_d2[t]
    }

    pub(crate) fn mu_slice(&self) -> &[i8] {
        &self.mu
    }
}

/// Outcome of the exhaustive prefix-bound sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixReport {
    pub t_min: u64,
    pub t_max: u64,
    pub checked: u64,
    /// Every `t` with `Σ_{n≤t} d(n)² > ¼ t ln³t`.
    pub violations: Vec<u64>,
    /// `min_t (1 − LHS/RHS)`.
    pub min_margin: f64,
    pub argmin: u64,
}

impl PrefixReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn prefix_bound_rhs(t: u64) -> f64 {
    let tf = t as f64;
    0.25 * tf * tf.ln().powi(3)
}

/// Checks `Σ_{n≤t} d(n)² ≤ ¼ t ln³t` for every integer `t` in `[t_min, t_max]`.
pub fn verify_cht_prefix(tables: &ArithTables, t_min: u64, t_max: u64) -> Result<PrefixReport> {
    if t_min < PREFIX_BOUND_FLOOR {
        return domain(format!(
            "prefix bound is only claimed for t ≥ {PREFIX_BOUND_FLOOR}, got t_min = {t_min}"
        ));
    }
    if t_max < t_min {
        return domain(format!("empty range [{t_min}, {t_max}]"));
    }
    if t_max as usize > tables.limit {
        return Err(Error::Capacity(format!(
            "t_max = {t_max} exceeds sieve limit {}",
            tables.limit
        )));
    }
    const SWEEP_CHUNK: u64 = 1 << 16;
    let starts: Vec<u64> = (t_min..=t_max).step_by(SWEEP_CHUNK as usize).collect();
    let parts: Vec<(Vec<u64>, f64, u64)> = starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + SWEEP_CHUNK - 1).min(t_max);
            let mut violations = Vec::new();
            let mut min_margin = f64::INFINITY;
            let mut argmin = lo;
            for t in lo..=hi {
                let lhs = tables.prefix_d2[t as usize] as f64;
                let rhs = prefix_bound_rhs(t);
                let margin = 1.0 - lhs / rhs;
                if lhs > rhs {
                    violations.push(t);
                }
                if margin < min_margin {
                    min_margin = margin;
                    argmin = t;
                }
            }
            (violations, min_margin, argmin)
        })
        .collect();
    let mut report = PrefixReport {
        t_min,
        t_max,
        checked: t_max - t_min + 1,
        violations: Vec::new(),
        min_margin: f64::INFINITY,
        argmin: t_min,
    };
    for (v, m, a) in parts {
        report.violations.extend(v);
        if m < report.min_margin {
            report.min_margin = m;
            report.argmin = a;
        }
    }
    Ok(report)
}

/// `τ ∫_x^∞ ¼ ln³t · t^{−τ} dt` in closed form.
fn tail_integral(x: f64, tau: f64) -> f64 {
    let a = tau - 1.0;
    let l = x.ln();
    let poly = l.powi(3) / a + 3.0 * l * l / (a * a) + 6.0 * l / a.powi(3) + 6.0 / a.powi(4);
    tau / (4.0 * x.powf(a)) * poly
}

/// Right-hand side of the divisor-square tail estimate, valid for `X ≥ 433`, `τ > 1`.
pub fn cht_tail_bound(x: f64, tau: f64) -> Result<f64> {
    if !(tau > 1.0) || !tau.is_finite() {
        return domain(format!("tail bound needs τ > 1, got {tau}"));
    }
    if !(x >= PREFIX_BOUND_FLOOR as f64) || !x.is_finite() {
        return domain(format!("tail bound needs X ≥ 433, got {x}"));
    }
    Ok(tail_integral(x, tau))
}

/// Rigorous enclosure of `Σ_{n≥X} d(n)²/n^τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailEnclosure {
    pub x: u64,
    pub tau: f64,
    /// Sieve limit `N`; terms `X ≤ n ≤ N` are summed explicitly.
    pub limit: u64,
    pub truncated: f64,
    /// Upper bound `R` for `Σ_{n>N} d(n)²/n^τ`.
    pub remainder: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Enclosure `[S, S + R]` where `S = Σ_{X≤n≤N} d(n)²/n^τ` and
/// `R = ¼N ln³N / N^τ + τ∫_N^∞ ¼ ln³t · t^{−τ} dt`, the partial-summation
/// remainder under the prefix bound. No width requirement is imposed; see
/// [`tail_sum_oracle`] for the guarded variant.
pub fn tail_sum_enclosure(tables: &ArithTables, x: u64, tau: f64) -> Result<TailEnclosure> {
    if !(tau > 1.0) || !tau.is_finite() {
        return domain(format!("tail sum needs τ > 1, got {tau}"));
    }
    if x < PREFIX_BOUND_FLOOR {
        return domain(format!("tail sum needs X ≥ 433, got {x}"));
    }
    let n = tables.limit as u64;
    if x > n {
        return Err(Error::Capacity(format!(
            "X = {x} exceeds sieve limit {n}"
        )));
    }
    let mut acc = Kahan::default();
    for k in x..=n {
        let dk = f64::from(tables.d[k as usize]);
        acc.add(dk * dk * (k as f64).powf(-tau));
    }
    let truncated = acc.value();
    let nf = n as f64;
    let remainder = 0.25 * nf.ln().powi(3) * nf.powf(1.0 - tau) + tail_integral(nf, tau);
    Ok(TailEnclosure {
        x,
        tau,
        limit: n,
        truncated,
        remainder,
        lo: truncated,
        hi: truncated + remainder,
    })
}

/// [`tail_sum_enclosure`] that refuses enclosures whose remainder exceeds
/// [`MAX_REMAINDER_RATIO`] of the truncated sum.
pub fn tail_sum_oracle(tables: &ArithTables, x: u64, tau: f64) -> Result<TailEnclosure> {
    let enc = tail_sum_enclosure(tables, x, tau)?;
    if enc.remainder > MAX_REMAINDER_RATIO * enc.truncated {
        return Err(Error::Precision(format!(
            "tail remainder {:.3e} exceeds {}% of the truncated sum {:.3e} at X = {x}, τ = {tau}; use a larger sieve limit",
            enc.remainder,
            MAX_REMAINDER_RATIO * 100.0,
            enc.truncated
        )));
    }
    Ok(enc)
}

/// One row of [`c_sigma_tail_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct CSigmaRow {
    pub x: u64,
    pub enclosure_hi: f64,
    /// `C(σ,X₀) X^{1−2σ} ln³X`.
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CSigmaReport {
    pub sigma: f64,
    pub x0: u64,
    pub c_sigma: f64,
    pub rows: Vec<CSigmaRow>,
}

impl CSigmaReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.enclosure_hi <= r.rhs)
    }
}

/// Checks `Σ_{n≥X} d(n)²/n^{2σ} ≤ C(σ,X₀) X^{1−2σ} ln³X` at `X ∈ {X₀, 2X₀, 10X₀}`.
pub fn c_sigma_tail_check(tables: &ArithTables, sigma: f64, x0: u64) -> Result<CSigmaReport> {
    if !(0.6..=2.0 / 3.0).contains(&sigma) {
        return domain(format!("σ must lie in [0.6, 2/3], got {sigma}"));
    }
    if x0 < PREFIX_BOUND_FLOOR {
        return domain(format!("X₀ must be at least 433, got {x0}"));
    }
    let c = c_sigma(sigma, x0 as f64)?;
    let mut rows = Vec::with_capacity(3);
    for x in [x0, 2 * x0, 10 * x0] {
        let enc = tail_sum_enclosure(tables, x, 2.0 * sigma)?;
        let xf = x as f64;
        let rhs = c * xf.powf(1.0 - 2.0 * sigma) * xf.ln().powi(3);
        rows.push(CSigmaRow {
            x,
            enclosure_hi: enc.hi,
            rhs,
            margin: 1.0 - enc.hi / rhs,
        });
    }
    Ok(CSigmaReport {
        sigma,
        x0,
        c_sigma: c,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_d(n: usize) -> u32 {
        (1..=n).filter(|k| n % k == 0).count() as u32
    }

    fn brute_mu(mut n: usize) -> i8 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }

    #[test]
    fn small_values() {
        let t = ArithTables::build(30).unwrap();
        assert_eq!(t.d(12), 6);
        assert_eq!(t.mu(12), 0);
        assert_eq!(t.mu(30), -1);
        assert_eq!(t.d(1), 1);
        assert_eq!(t.mu(1), 1);
        assert_eq!(t.prefix_d2(10), 83);
        assert_eq!(t.prefix_d2(0), 0);
    }

    #[test]
    fn matches_trial_division() {
        let t = ArithTables::build(5000).unwrap();
        for n in 1..=5000 {
            assert_eq!(t.d(n), brute_d(n), "d({n})");
            assert_eq!(t.mu(n), brute_mu(n), "mu({n})");
        }
    }

    #[test]
    fn capacity() {
        assert!(matches!(ArithTables::build(0), Err(Error::Capacity(_))));
        assert!(matches!(
            ArithTables::build(MAX_LIMIT + 1),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn prefix_sweep_domain() {
        let t = ArithTables::build(1000).unwrap();
        assert!(matches!(
            verify_cht_prefix(&t, 100, 500),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            verify_cht_prefix(&t, 433, 2000),
            Err(Error::Capacity(_))
        ));
        let r = verify_cht_prefix(&t, 433, 433).unwrap();
        let rhs = 0.25 * 433.0 * 433f64.ln().powi(3);
        assert!((r.min_margin - (1.0 - t.prefix_d2(433) as f64 / rhs)).abs() < 1e-15);
        assert!(r.min_margin > 0.0);
    }

    #[test]
    fn tail_bound_domain_and_shape() {
        assert!(matches!(cht_tail_bound(100.0, 2.0), Err(Error::Domain(_))));
        assert!(matches!(cht_tail_bound(433.0, 1.0), Err(Error::Domain(_))));
        assert!(cht_tail_bound(1000.0, 4.0).unwrap() < cht_tail_bound(1000.0, 2.0).unwrap());
    }

    #[test]
    fn degenerate_enclosure() {
        let t = ArithTables::build(1000).unwrap();
        let e = tail_sum_enclosure(&t, 1000, 2.0).unwrap();
        let d = f64::from(t.d(1000));
        assert_eq!(e.lo, d * d / 1e6);
        assert!(e.hi > e.lo);
    }

    #[test]
    fn slow_tail_is_rejected() {
        let t = ArithTables::build(1_000_000).unwrap();
        assert!(matches!(
            tail_sum_oracle(&t, 433, 1.0001),
            Err(Error::Precision(_))
        ));
    }

    #[test]
    fn c_sigma_check_domain() {
        let t = ArithTables::build(10_000).unwrap();
        assert!(matches!(
            c_sigma_tail_check(&t, 0.5, 433),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            c_sigma_tail_check(&t, 0.6, 400),
            Err(Error::Domain(_))
        ));
    }
}
