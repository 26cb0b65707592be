use std::sync::OnceLock;

use proptest::prelude::*;
use zerodensity::arith::{
    c_sigma_tail_check, cht_tail_bound, prefix_bound_rhs, tail_sum_enclosure, tail_sum_oracle,
    verify_cht_prefix, ArithTables,
};
use zerodensity::error::Error;

const LIMIT: usize = 200_000;

fn tables() -> &'static ArithTables {
    static T: OnceLock<ArithTables> = OnceLock::new();
    T.get_or_init(|| ArithTables::build(LIMIT).unwrap())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn small_tables() {
    let t = ArithTables::build(30).unwrap();
    assert_eq!((t.d(12), t.mu(12)), (6, 0));
    assert_eq!(t.mu(30), -1);
    assert_eq!(t.prefix_d2(10), 83);
}

#[test]
fn prefix_at_floor() {
    // brute-force divisor counts
    assert_eq!(tables().prefix_d2(433), 24_196);
    assert!((prefix_bound_rhs(433) - 24_218.783_049_449_21).abs() < 1e-8);
    let rep = verify_cht_prefix(tables(), 433, 433).unwrap();
    assert!(rep.passed() && rep.min_margin > 0.0);
    assert!(verify_cht_prefix(tables(), 100, 1000).is_err());
}

#[test]
fn tail_bound_closed_form() {
    let v = cht_tail_bound(433.0, 1.2).unwrap();
    assert!((v / 1_085.614_638_819_128 - 1.0).abs() < 1e-12);
    let t4 = cht_tail_bound(1000.0, 4.0).unwrap();
    let t2 = cht_tail_bound(1000.0, 2.0).unwrap();
    assert!((t4 / 1.273_874_691_180_196_8e-7 - 1.0).abs() < 1e-12);
    assert!((t2 / 0.260_107_856_304_176_26 - 1.0).abs() < 1e-12);
    assert!(t4 < t2);
    assert!(cht_tail_bound(100.0, 2.0).is_err());
}

#[test]
fn enclosures() {
    let enc = tail_sum_oracle(tables(), 433, 2.0).unwrap();
    assert!(enc.lo <= enc.hi && enc.hi < cht_tail_bound(433.0, 2.0).unwrap());
    let n = LIMIT as u64;
    let last = tail_sum_enclosure(tables(), n, 2.0).unwrap();
    let d = f64::from(tables().d(LIMIT));
    assert!((last.lo - d * d / (n as f64).powi(2)).abs() < 1e-20);
    assert!(matches!(
        tail_sum_oracle(tables(), 433, 1.0001),
        Err(Error::Precision(_))
    ));
}

#[test]
fn c_sigma_margins() {
    assert!(c_sigma_tail_check(tables(), 0.6, 433).unwrap().passed());
    assert!(c_sigma_tail_check(tables(), 2.0 / 3.0, 1000).unwrap().passed());
    assert!(c_sigma_tail_check(tables(), 0.5, 433).is_err());
}

proptest! {
    #[test]
    fn mobius_sums_over_divisors(n in 1usize..20_000) {
        let s: i64 = (1..=n).filter(|k| n % k == 0).map(|k| i64::from(tables().mu(k))).sum();
        prop_assert_eq!(s, i64::from(n == 1));
    }

    #[test]
    fn divisor_count_is_multiplicative(a in 1usize..400, b in 1usize..400) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(tables().d(a * b), tables().d(a) * tables().d(b));
    }

    #[test]
    fn prefix_steps_by_square(t in 1usize..LIMIT) {
        let d = u64::from(tables().d(t + 1));
        prop_assert_eq!(tables().prefix_d2(t + 1) - tables().prefix_d2(t), d * d);
    }
}

#[test]
fn tail_enclosure_at_full_capacity() {
    let big = ArithTables::build(100_000_000).unwrap();
    let enc = tail_sum_oracle(&big, 433, 2.0).unwrap();
    assert!(enc.hi < cht_tail_bound(433.0, 2.0).unwrap());
}
