//! Extended-range signed reals stored as a sign and a natural-log magnitude.
//!
//! Bound values such as `T^{0.96} (log T)^{3.8}` at `T = 10^{308}` or at
//! `T = 10^{10^5}` leave the `f64` range long before they become
//! interesting. [`ExtReal`] keeps `ln |x|` instead, so products and powers are
//! exact up to the rounding of one addition, and sums go through a
//! log-sum-exp.
//!
//! Textual form: `+10^308.976810000`, `-10^2.00000000000`, `0`. The exponent
//! is base 10 and printed to 12 significant digits; parsing also accepts plain
//! decimals such as `2.5e3`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// Relative `ln_mag` difference below which opposite-sign operands cancel to
/// the canonical zero.
pub const CANCELLATION_TOLERANCE: f64 = 1e-15;

/// Double-double helpers; the log-magnitude is carried as `hi + lo`.
mod dd {
    pub const LN2: (f64, f64) = (0.6931471805599453, 2.3190468138462996e-17);
    pub const LN10: (f64, f64) = (2.302585092994046, -2.1707562233822494e-16);

    pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        (s, b - (s - a))
    }

    pub fn add(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        let (s, e) = two_sum(a.0, b.0);
        quick_two_sum(s, e + a.1 + b.1)
    }

    pub fn mul_f64(a: (f64, f64), p: f64) -> (f64, f64) {
        let h = a.0 * p;
        let e = a.0.mul_add(p, -h);
        quick_two_sum(h, e + a.1 * p)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExtReal {
    sign: i8,
    ln_mag: f64,
    ln_lo: f64,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal {
        sign: 0,
        ln_mag: 0.0,
        ln_lo: 0.0,
    };
    pub const ONE: ExtReal = ExtReal {
        sign: 1,
        ln_mag: 0.0,
        ln_lo: 0.0,
    };

    fn from_dd(ln: (f64, f64), sign: i8) -> Result<Self> {
        if !matches!(sign, -1..=1) {
            return domain(format!("sign must be -1, 0 or +1, got {sign}"));
        }
        if sign == 0 {
            return Ok(Self::ZERO);
        }
        if !ln.0.is_finite() {
            return domain(format!("log-magnitude must be finite, got {}", ln.0));
        }
        Ok(Self {
            sign,
            ln_mag: ln.0,
            ln_lo: ln.1,
        })
    }

    fn ln_dd(&self) -> (f64, f64) {
        (self.ln_mag, self.ln_lo)
    }

    /// `sign · e^{ln_mag}`.
    pub fn from_ln(ln_mag: f64, sign: i8) -> Result<Self> {
        Self::from_dd((ln_mag, 0.0), sign)
    }

    /// `sign · 10^l`.
    pub fn from_log10(l: f64, sign: i8) -> Result<Self> {
        if !l.is_finite() {
            return domain(format!("exponent must be finite, got {l}"));
        }
        Self::from_dd(dd::mul_f64(dd::LN10, l), sign)
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return domain(format!("cannot represent {x}"));
        }
        if x == 0.0 {
            return Ok(Self::ZERO);
        }
        // |x| = m·2^e with m in [1, 2); ln|x| = e·ln 2 + ln m
        let a = x.abs();
        let (m, e) = frexp(a);
        let ln = dd::add(dd::mul_f64(dd::LN2, e as f64), (m.ln(), 0.0));
        Self::from_dd(ln, if x > 0.0 { 1 } else { -1 })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Natural log of `|x|`; `-∞` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.ln_mag + self.ln_lo
        }
    }

    pub fn log10_abs(&self) -> f64 {
        self.ln_abs() / std::f64::consts::LN_10
    }

    /// Nearest `f64`; saturates to `±∞` or `±0` outside the native range.
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let k = (self.ln_mag / dd::LN2.0).round();
        if k > 1100.0 {
            return f64::from(self.sign) * f64::INFINITY;
        }
        if k < -1100.0 {
            return f64::from(self.sign) * 0.0;
        }
        let r = dd::add(self.ln_dd(), dd::mul_f64(dd::LN2, -k));
        let mag = (r.0 + r.1).exp() * 2f64.powi(k as i32 / 2) * 2f64.powi(k as i32 - k as i32 / 2);
        f64::from(self.sign) * mag
    }

    pub fn abs(&self) -> Self {
        Self {
            sign: self.sign.abs(),
            ..*self
        }
    }

    /// `x^p`. A negative base is allowed only for integer `p`.
    pub fn pow(&self, p: f64) -> Result<Self> {
        if !p.is_finite() {
            return domain(format!("exponent must be finite, got {p}"));
        }
        match self.sign {
            0 if p > 0.0 => Ok(Self::ZERO),
            0 if p == 0.0 => Ok(Self::ONE),
            0 => domain("zero raised to a negative power"),
            1 => Self::from_dd(dd::mul_f64(self.ln_dd(), p), 1),
            _ => {
                if p.fract() != 0.0 {
                    return domain(format!("negative base with fractional exponent {p}"));
                }
                let odd = (p % 2.0).abs() == 1.0;
                Self::from_dd(dd::mul_f64(self.ln_dd(), p), if odd { -1 } else { 1 })
            }
        }
    }

    /// Signed log-sum-exp.
    fn add_impl(self, rhs: Self) -> Self {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.cmp_magnitude(&rhs) != Ordering::Less {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let d = (small.ln_mag - big.ln_mag) + (small.ln_lo - big.ln_lo);
        if big.sign == small.sign {
            let ln = dd::add(big.ln_dd(), (d.exp().ln_1p(), 0.0));
            return Self {
                sign: big.sign,
                ln_mag: ln.0,
                ln_lo: ln.1,
            };
        }
        let scale = big.ln_mag.abs().max(1.0);
        if -d <= CANCELLATION_TOLERANCE * scale {
            return Self::ZERO;
        }
        // 1 − e^d without cancellation
        let ln = dd::add(big.ln_dd(), ((-d.exp_m1()).ln(), 0.0));
        Self {
            sign: big.sign,
            ln_mag: ln.0,
            ln_lo: ln.1,
        }
    }

    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        self.ln_mag
            .total_cmp(&other.ln_mag)
            .then(self.ln_lo.total_cmp(&other.ln_lo))
    }
}

/// `a = m·2^e` with `m ∈ [1, 2)` for finite positive `a`.
fn frexp(a: f64) -> (f64, i64) {
    let bits = a.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    if exp == 0 {
        // subnormal: scale into the normal range first
        let (m, e) = frexp(a * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1023u64 << 52));
    (m, exp - 1023)
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.sign {
            0 => Ordering::Equal,
            1 => self.cmp_magnitude(other),
            _ => other.cmp_magnitude(self),
        }
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;

    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        let ln = dd::add(self.ln_dd(), rhs.ln_dd());
        Self {
            sign: self.sign * rhs.sign,
            ln_mag: ln.0,
            ln_lo: ln.1,
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: Self) -> Self {
        self.add_impl(rhs)
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> Self {
        Self {
            sign: -self.sign,
            ..self
        }
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;

    fn sub(self, rhs: Self) -> Self {
        self.add_impl(-rhs)
    }
}

fn fmt_significant(x: f64, digits: i32) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let int_digits = x.abs().log10().floor() as i32 + 1;
    let decimals = (digits - int_digits).max(0) as usize;
    format!("{x:.decimals$}")
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => {
                let sign = if s > 0 { '+' } else { '-' };
                write!(f, "{sign}10^{}", fmt_significant(self.log10_abs(), 12))
            }
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = || Error::Parse {
            line: 1,
            text: s.to_string(),
        };
        if let Some(pos) = text.find("10^") {
            let (head, exp) = (&text[..pos], &text[pos + 3..]);
            let sign = match head {
                "" | "+" => 1,
                "-" => -1,
                _ => return Err(bad()),
            };
            let l: f64 = exp.trim().parse().map_err(|_| bad())?;
            return Self::from_log10(l, sign).map_err(|_| bad());
        }
        if text == "0" {
            return Ok(Self::ZERO);
        }
        let x: f64 = text.parse().map_err(|_| bad())?;
        Self::from_f64(x).map_err(|_| bad())
    }
}
