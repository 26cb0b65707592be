//! 128-bit re-evaluation of the constant pipeline, written independently of
//! the library so it can serve as an oracle for the `f64` code.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

const P: usize = 128;
const RM: RoundingMode = RoundingMode::ToEven;

pub struct Hp {
    cc: Consts,
}

/// `(C₁, C₃, K(σ,T₀))` at full precision, rounded to `f64` at the end.
#[derive(Debug, Clone, Copy)]
pub struct HpConstants {
    pub c1: f64,
    pub c3: f64,
    pub k_final: f64,
}

impl Hp {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("constants cache"),
        }
    }

    fn dec(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, P, RM, &mut self.cc)
    }

    fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, P)
    }

    fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(P, RM, &mut self.cc)
    }

    fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(P, RM, &mut self.cc)
    }

    fn pi(&mut self) -> BigFloat {
        self.cc.pi(P, RM)
    }

    pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
        let s = x.format(Radix::Dec, RM, &mut self.cc).expect("format");
        s.parse().unwrap_or_else(|_| panic!("unparseable {s}"))
    }

    /// Pipeline at `(σ, ln T₀)`, both taken as exact binary values.
    /// `derived` selects `17.29/(2π ln²T₀)` over `0.004` for the contour term.
    pub fn pipeline(&mut self, sigma: f64, log_t0: f64, derived: bool) -> HpConstants {
        let one = self.f(1.0);
        let two = self.f(2.0);
        let s = self.f(sigma);
        let l = self.f(log_t0);
        let a = two.mul(&s, P, RM).sub(&one, P, RM);

        let natural = a.mul(&l, P, RM);
        let floor = self.ln(&self.f(433.0));
        let lx = if natural.cmp(&floor).is_some_and(|c| c < 0) { floor } else { natural };

        let a2 = a.mul(&a, P, RM);
        let a3 = a2.mul(&a, P, RM);
        let a4 = a3.mul(&a, P, RM);
        let lx2 = lx.mul(&lx, P, RM);
        let lx3 = lx2.mul(&lx, P, RM);
        let poly = a3
            .add(&self.f(3.0).mul(&a2, P, RM).div(&lx, P, RM), P, RM)
            .add(&self.f(6.0).mul(&a, P, RM).div(&lx2, P, RM), P, RM)
            .add(&self.f(6.0).div(&lx3, P, RM), P, RM);
        let c_sig = s.div(&two.mul(&a4, P, RM), P, RM).mul(&poly, P, RM);

        let quarter = self.f(0.25);
        let k = quarter.add(
            &a.div(&self.f(4.0).mul(&two.sub(&two.mul(&s, P, RM), P, RM), P, RM), P, RM),
            P,
            RM,
        );

        let six_fifths = self.f(6.0).div(&self.f(5.0), P, RM);
        let inner = one.add(
            &two.div(&self.f(3.0), P, RM).mul(&six_fifths.sqrt(P, RM), P, RM),
            P,
            RM,
        );
        let m0 = inner.sqrt(P, RM);
        let pi = self.pi();
        let two_pi = two.mul(&pi, P, RM);
        let two_pi_m0 = two_pi.mul(&m0, P, RM);

        let r = self.ln(&l).div(&l, P, RM);
        let e_neg_l = self.exp(&l.neg());
        let half = self.f(0.5);
        let first = self
            .dec("1.36")
            .mul(&half.add(&two_pi_m0.mul(&e_neg_l, P, RM), P, RM), P, RM)
            .mul(&a.add(&r, P, RM).powi(3, P, RM), P, RM)
            .mul(&c_sig, P, RM);
        let second = two_pi_m0
            .mul(&k.div(&l, P, RM), P, RM)
            .mul(&two.mul(&s, P, RM).add(&r, P, RM).powi(2, P, RM), P, RM);
        let c1 = first.add(&second, P, RM);

        let ln2 = self.cc.ln_2(P, RM);
        let pow2 = self.exp(&one.sub(&two.mul(&s, P, RM), P, RM).mul(&ln2, P, RM));
        let l3 = l.powi(3, P, RM);
        let b = self
            .dec("166.34")
            .div(&a, P, RM)
            .mul(&one.sub(&pow2, P, RM), P, RM)
            .mul(&e_neg_l, P, RM)
            .div(&l3, P, RM);
        let c2 = two.mul(&c1, P, RM).add(&b, P, RM);

        let e = self.f(4.0).mul(&s, P, RM).mul(&one.sub(&s, P, RM), P, RM);
        let half_pow = self.exp(&e.neg().mul(&ln2, P, RM));
        let c3 = c2.div(&one.sub(&half_pow, P, RM), P, RM);

        let l2 = l.mul(&l, P, RM);
        let coeff = if derived {
            self.dec("17.29").div(&two_pi.mul(&l2, P, RM), P, RM)
        } else {
            self.dec("0.004")
        };
        let contour = coeff.mul(
            &self
                .dec("1.25")
                .sub(&s, P, RM)
                .add(&one.div(&l, P, RM), P, RM),
            P,
            RM,
        );
        let edge = self
            .dec("0.05")
            .div(&self.f(4.0).mul(&pi, P, RM).mul(&l2, P, RM), P, RM);
        let kf = c3.div(&two_pi, P, RM).add(&contour, P, RM).add(&edge, P, RM);

        HpConstants {
            c1: self.to_f64(&c1),
            c3: self.to_f64(&c3),
            k_final: self.to_f64(&kf),
        }
    }
}
