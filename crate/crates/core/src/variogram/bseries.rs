//! The B constant of the near-unit expansion, as two independent series.
//!
//! Both series converge algebraically and their inner finite sums cancel
//! catastrophically in double precision, so terms are generated exactly in
//! big fixed-point arithmetic and the partial sums are accelerated with the
//! Levin u-transform. Two transforms on windows `[n0, 2n0)` and `[2n0, 4n0)`
//! must agree before a value is accepted.

use num_bigint::BigInt;

use super::Lag;
use crate::config::EvalConfig;
use crate::series::{CompensatedSum, SeriesValue};
use crate::specfun::fixed::{levin_u, Fixed};
use crate::{Error, Result};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Terms `k = 1..=count` of the direct B-series.
fn direct_terms(lag: Lag, fx: &Fixed, count: usize) -> Vec<BigInt> {
    let (s, t) = (lag.s as i64, lag.t as i64);
    let n = s + t;
    let one = fx.one();
    let mut outer = one.clone();
    let mut out = Vec::with_capacity(count);
    for k in 1..=count as i64 {
        outer = outer * big((2 * s + 2 * k - 1) * (2 * t + 2 * k - 1))
            / big((n + 2 * k - 1) * (n + 2 * k));
        let mut acc = one.clone();
        for m in (0..k).rev() {
            let num = big((n + 2 * m) * (n + 2 * m + 1)) * big(m - k);
            let den = big((2 * s + 2 * m + 1) * (2 * t + 2 * m + 1)) * big(m + 1);
            acc = &one + acc * num / den;
        }
        out.push(fx.mul(&outer, &acc) / big(k));
    }
    out
}

/// Terms `k = 1..=count` of the transformed B-series.
fn transformed_terms(lag: Lag, fx: &Fixed, count: usize) -> Result<Vec<BigInt>> {
    let (s, t) = (lag.s as i64, lag.t as i64);
    let n = s + t;
    let d = s - t;
    let one = fx.one();
    let mut outer = one.clone();
    let mut out = Vec::with_capacity(count);
    for k in 1..=count as i64 {
        outer = outer * big((2 * s + 2 * k - 1) * (-d + 2 * k - 1))
            / big((n + 2 * k - 1) * (n + 2 * k));
        let mut last = k;
        for m in 0..k {
            if (n + 2 * m) * (d + 2 * m) == 0 {
                last = m;
                break;
            }
            if d + 1 - 2 * k + 2 * m == 0 {
                return Err(Error::PoleInTerm {
                    k: k as u64,
                    m: m as u64,
                });
            }
        }
        let mut acc = one.clone();
        for m in (0..last).rev() {
            let num = big((n + 2 * m) * (d + 2 * m)) * big(m - k);
            let den = big((2 * s + 2 * m + 1) * (d + 1 - 2 * k + 2 * m)) * big(m + 1);
            acc = &one + acc * num / den;
        }
        out.push(fx.mul(&outer, &acc) / big(k));
    }
    Ok(out)
}

/// Working precision in bits for a run with `count` terms.
fn precision_bits(count: usize) -> u64 {
    512 + 3 * count as u64
}

/// First window start; terms are not yet in their asymptotic regime before
/// roughly `2 (s - t)^2`.
fn initial_window(lag: Lag) -> usize {
    let d = lag.s.abs_diff(lag.t) as usize;
    16 + 2 * d * d
}

type TermGenerator = dyn Fn(&Fixed, usize) -> Result<Vec<BigInt>>;

fn accelerate(lag: Lag, cfg: &EvalConfig, gen: &TermGenerator) -> Result<SeriesValue> {
    let mut n0 = initial_window(lag);
    let mut last: Option<(f64, f64, u64)> = None;
    loop {
        let count = 4 * n0;
        if count > cfg.b_series_max_terms {
            let (partial, tail, terms) = last.unwrap_or((f64::NAN, f64::INFINITY, 0));
            return Err(Error::MaxTermsExceeded {
                terms,
                partial,
                tail,
            });
        }
        let fx = Fixed::new(precision_bits(count));
        let terms = gen(&fx, count)?;
        let mut partial = Vec::with_capacity(count);
        let mut acc = BigInt::from(0);
        for t in &terms {
            acc += t;
            partial.push(acc.clone());
        }
        let coarse = levin_u(&fx, &partial, &terms, n0, n0 - 1);
        let fine = levin_u(&fx, &partial, &terms, 2 * n0, 2 * n0 - 1);
        if let (Some(coarse), Some(fine)) = (coarse, fine) {
            let value = fx.to_f64(&fine);
            let diff = fx.to_f64(&(&fine - &coarse)).abs();
            if diff <= cfg.tol * value.abs().max(1.0) {
                return Ok(SeriesValue {
                    value,
                    terms_used: count as u64,
                    tail_estimate: diff,
                    converged: true,
                });
            }
            last = Some((value, diff, count as u64));
        }
        n0 *= 2;
    }
}

/// `B_st` from the direct series with terminating inner `3F2` sums.
pub fn b_st(lag: Lag, cfg: &EvalConfig) -> Result<SeriesValue> {
    accelerate(lag, cfg, &move |fx, count| Ok(direct_terms(lag, fx, count)))
}

/// `B_st` from the transformed series.
///
/// For `s > t` with `s - t` odd a lower parameter of the inner sum reaches
/// zero, and `PoleInTerm` is returned.
pub fn b_st_transformed(lag: Lag, cfg: &EvalConfig) -> Result<SeriesValue> {
    if lag.s > lag.t && (lag.s - lag.t) % 2 == 1 {
        return Err(Error::PoleInTerm {
            k: (lag.s - lag.t).div_ceil(2),
            m: 0,
        });
    }
    accelerate(lag, cfg, &move |fx, count| transformed_terms(lag, fx, count))
}

/// `B_ss = Psi(s + 1) - Psi(s + 1/2)`, summed from harmonic-type sums.
pub fn b_ss_closed(s: u64) -> f64 {
    let mut acc = CompensatedSum::new();
    acc.add(2.0 * std::f64::consts::LN_2);
    for k in 1..=s {
        acc.add(1.0 / k as f64);
        acc.add(-2.0 / (2 * k - 1) as f64);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::digamma;

    const LN4: f64 = 2.0 * std::f64::consts::LN_2;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn closed_form_matches_digamma() {
        for s in 0..30u64 {
            let d = digamma(s as f64 + 1.0).unwrap() - digamma(s as f64 + 0.5).unwrap();
            assert!((b_ss_closed(s) - d).abs() < 1e-14);
        }
        assert_eq!(b_ss_closed(0), LN4);
        assert!((b_ss_closed(1) - (LN4 - 1.0)).abs() < 1e-16);
    }

    #[test]
    fn direct_series_examples() {
        let v = b_st(Lag::new(0, 0), &cfg()).unwrap();
        assert!((v.value - LN4).abs() < 1e-14, "{v:?}");
        let v = b_st(Lag::new(1, 1), &cfg()).unwrap();
        assert!((v.value - (LN4 - 1.0)).abs() < 1e-14);
        // (1, 0) is forced by nu_10(1/4, 1/4) = 1
        let v = b_st(Lag::new(1, 0), &cfg()).unwrap();
        assert!((v.value - (LN4 + 2.0 - std::f64::consts::PI)).abs() < 1e-14);
    }

    #[test]
    fn transformed_series_examples() {
        let v = b_st_transformed(Lag::new(0, 0), &cfg()).unwrap();
        assert!((v.value - LN4).abs() < 1e-14);
        let a = b_st_transformed(Lag::new(2, 1), &cfg());
        assert!(matches!(a, Err(Error::PoleInTerm { .. })));
        let a = b_st_transformed(Lag::new(1, 2), &cfg()).unwrap();
        let b = b_st(Lag::new(2, 1), &cfg()).unwrap();
        assert!((a.value - b.value).abs() < 1e-12);
    }

    #[test]
    fn diagonal_transformed_terms_reduce() {
        // on the diagonal every inner sum is 1
        let fx = Fixed::new(256);
        let s = 3;
        let terms = transformed_terms(Lag::new(s, s), &fx, 20).unwrap();
        let mut coef = 1.0;
        for (i, t) in terms.iter().enumerate() {
            let k = (i + 1) as f64;
            coef *= (k - 0.5) / (s as f64 + k);
            assert!((fx.to_f64(t) - coef / k).abs() < 1e-16);
        }
    }

    #[test]
    fn result_is_stable_under_extra_precision() {
        let lag = Lag::new(0, 5);
        let count = 4 * initial_window(lag);
        let run = |bits| {
            let fx = Fixed::new(bits);
            let terms = direct_terms(lag, &fx, count);
            let mut partial = Vec::new();
            let mut acc = BigInt::from(0);
            for t in &terms {
                acc += t;
                partial.push(acc.clone());
            }
            let n0 = initial_window(lag);
            fx.to_f64(&levin_u(&fx, &partial, &terms, 2 * n0, 2 * n0 - 1).unwrap())
        };
        let base = run(precision_bits(count));
        let more = run(precision_bits(count) + 512);
        assert_eq!(base, more);
    }

    #[test]
    fn term_cap() {
        let mut c = cfg();
        c.b_series_max_terms = 32;
        assert!(matches!(
            b_st(Lag::new(0, 6), &c),
            Err(Error::MaxTermsExceeded { .. })
        ));
    }
}
