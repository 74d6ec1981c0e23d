//! Binary fixed-point arithmetic on big integers and the Levin u-transform.
//!
//! A value `v` is stored as the integer `round(v * 2^bits)`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Fixed {
    bits: u64,
}

impl Fixed {
    pub fn new(bits: u64) -> Self {
        Self { bits }
    }

    pub fn one(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    #[cfg(test)]
    pub fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v) << self.bits
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.bits
    }

    pub fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a << self.bits) / b
    }

    pub fn to_f64(&self, a: &BigInt) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        let len = a.bits();
        let shift = len.saturating_sub(64);
        let top = (a >> shift).to_f64().unwrap_or(f64::NAN);
        ldexp(top, shift as i64 - self.bits as i64)
    }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// Levin u-transform of order `order` from partial sums `partial[n0..=n0+order]`.
///
/// `terms[n]` is the term added to form `partial[n]`, with `n` counted from zero
/// for the first term of the series. Returns `None` if a remainder estimate
/// in the window vanishes.
pub(crate) fn levin_u(
    fx: &Fixed,
    partial: &[BigInt],
    terms: &[BigInt],
    n0: usize,
    order: usize,
) -> Option<BigInt> {
    assert!(n0 + order < partial.len() && partial.len() == terms.len());
    let one = fx.one();
    let mut num = BigInt::zero();
    let mut den = BigInt::zero();
    let mut binom = BigInt::one();
    for j in 0..=order {
        let n = n0 + j;
        let w = &terms[n] * BigInt::from(n + 2);
        if w.is_zero() {
            return None;
        }
        let mut c = &binom * BigInt::from(n0 + 1 + j).pow(order.saturating_sub(1) as u32);
        if j % 2 == 1 {
            c = -c;
        }
        num += &c * fx.div(&partial[n], &w);
        den += &c * fx.div(&one, &w);
        binom = binom * BigInt::from(order - j) / BigInt::from(j + 1);
    }
    if den.is_zero() {
        return None;
    }
    Some(fx.div(&num, &den))
}
