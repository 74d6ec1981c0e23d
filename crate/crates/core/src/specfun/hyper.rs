//! Single-variable generalized hypergeometric series.

use crate::config::EvalConfig;
use crate::series::{geometric_tail, CompensatedSum, SeriesValue};
use crate::{Error, Result};

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

/// `3F2[a1, a2, -k; b1, b2; 1]`, a finite sum.
///
/// Summation stops at the first vanishing numerator factor. A vanishing
/// denominator factor met before that is reported as a pole.
pub fn hyp3f2_terminating(a1: f64, a2: f64, k: u64, b1: f64, b2: f64) -> Result<f64> {
    let mut sum = CompensatedSum::new();
    let mut term = 1.0;
    sum.add(term);
    let kf = k as f64;
    for m in 0..k {
        let mf = m as f64;
        let num = (a1 + mf) * (a2 + mf) * (mf - kf);
        if num == 0.0 {
            break;
        }
        let den = (b1 + mf) * (b2 + mf) * (mf + 1.0);
        if den == 0.0 {
            return Err(Error::PoleInTerm { k, m: m + 1 });
        }
        term *= num / den;
        sum.add(term);
    }
    Ok(sum.value())
}

/// Parameters of `4F3[a1..a4; b1..b3; z]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp4F3 {
    pub a: [f64; 4],
    pub b: [f64; 3],
}

/// Largest mismatch of parameter sums accepted as zero-balanced.
pub const ZERO_BALANCE_TOL: f64 = 1e-12;

/// A `4F3` whose numerator and denominator parameters have equal sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroBalanced4F3(Hyp4F3);

impl ZeroBalanced4F3 {
    pub fn new(a: [f64; 4], b: [f64; 3]) -> Result<Self> {
        let numer: f64 = a.iter().sum();
        let denom: f64 = b.iter().sum();
        if (numer - denom).abs() > ZERO_BALANCE_TOL {
            return Err(Error::NotZeroBalanced { numer, denom });
        }
        Ok(Self(Hyp4F3 { a, b }))
    }

    pub fn params(&self) -> &Hyp4F3 {
        &self.0
    }
}

/// Sums the `4F3` series at `|z| < 1`.
pub fn hyp4f3_series(p: &Hyp4F3, z: f64, cfg: &EvalConfig) -> Result<SeriesValue> {
    if !z.is_finite() || p.a.iter().chain(p.b.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite 4F3 argument".into()));
    }
    if z.abs() >= 1.0 {
        return Err(Error::OutOfRegion(format!("|z| = {} >= 1 for 4F3", z.abs())));
    }
    if let Some(b) = p.b.iter().find(|&&b| is_nonpositive_integer(b)) {
        return Err(Error::Domain(format!(
            "4F3 lower parameter {b} is a nonpositive integer"
        )));
    }
    let mut sum = CompensatedSum::new();
    let mut term = 1.0;
    let mut prev = 1.0;
    sum.add(term);
    let mut n: u64 = 0;
    let mut small_run = 0;
    loop {
        let nf = n as f64;
        let num: f64 = p.a.iter().map(|a| a + nf).product();
        let den: f64 = p.b.iter().map(|b| b + nf).product::<f64>() * (nf + 1.0);
        term *= num / den * z;
        n += 1;
        if term == 0.0 {
            return Ok(SeriesValue::exact(sum.value(), n));
        }
        sum.add(term);
        let s = sum.value();
        if term.abs() < cfg.tol * s.abs() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        let tail = geometric_tail(term, prev, z.abs());
        if small_run >= 2 && tail <= cfg.tol * s.abs() {
            return Ok(SeriesValue {
                value: s,
                terms_used: n + 1,
                tail_estimate: tail,
                converged: true,
            });
        }
        if n + 1 >= cfg.max_terms {
            return Err(Error::MaxTermsExceeded {
                terms: n + 1,
                partial: s,
                tail,
            });
        }
        prev = term;
    }
}

/// `F4[alpha, beta; gamma1, gamma2; x, x]` through its equal-argument `4F3` form at `4x`.
pub fn f4_equal_args_reduction(
    alpha: f64,
    beta: f64,
    gamma1: f64,
    gamma2: f64,
    x: f64,
    cfg: &EvalConfig,
) -> Result<SeriesValue> {
    let g = gamma1 + gamma2;
    let p = Hyp4F3 {
        a: [alpha, beta, 0.5 * g, 0.5 * (g - 1.0)],
        b: [gamma1, gamma2, g - 1.0],
    };
    hyp4f3_series(&p, 4.0 * x, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    /// Exact rational value of the terminating 3F2 with half-integer parameters.
    fn exact_3f2(a1: (i64, i64), a2: (i64, i64), k: u64, b1: (i64, i64), b2: (i64, i64)) -> f64 {
        let (a1, a2, b1, b2) = (rat(a1.0, a1.1), rat(a2.0, a2.1), rat(b1.0, b1.1), rat(b2.0, b2.1));
        let mut total = BigRational::zero();
        let mut term = BigRational::one();
        for m in 0..=k {
            total += &term;
            let mr = rat(m as i64, 1);
            let num = (&a1 + &mr) * (&a2 + &mr) * (&mr - rat(k as i64, 1));
            if num.is_zero() {
                break;
            }
            term = term * num / ((&b1 + &mr) * (&b2 + &mr) * (&mr + rat(1, 1)));
        }
        total.to_f64().unwrap()
    }

    #[test]
    fn terminating_3f2_examples() {
        assert_eq!(hyp3f2_terminating(0.3, 0.7, 0, 1.1, 2.2).unwrap(), 1.0);
        assert_eq!(hyp3f2_terminating(0.0, 0.7, 9, 1.1, 2.2).unwrap(), 1.0);
        let got = hyp3f2_terminating(1.0, 0.5, 3, 1.5, 0.5).unwrap();
        let want = exact_3f2((1, 1), (1, 2), 3, (3, 2), (1, 2));
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn terminating_3f2_matches_rationals_up_to_40() {
        for k in [5u64, 17, 28, 40] {
            for (s, t) in [(0i64, 0i64), (1, 3), (4, 2), (6, 6)] {
                let n = s + t;
                let got = hyp3f2_terminating(
                    n as f64 / 2.0,
                    (n + 1) as f64 / 2.0,
                    k,
                    s as f64 + 0.5,
                    t as f64 + 0.5,
                )
                .unwrap();
                let want = exact_3f2((n, 2), (n + 1, 2), k, (2 * s + 1, 2), (2 * t + 1, 2));
                // the alternating sum loses bits relative to its largest term
                let scale: f64 = 2f64.powi(k as i32);
                assert!(
                    (got - want).abs() <= 1e-15 * scale.max(1.0),
                    "k={k} s={s} t={t}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn terminating_3f2_pole() {
        // b1 = -1 is reached at m = 2 before the sum terminates
        let e = hyp3f2_terminating(0.5, 0.5, 4, -1.0, 1.0);
        assert!(matches!(e, Err(Error::PoleInTerm { .. })));
        // termination shields the pole
        assert!(hyp3f2_terminating(-1.0, 0.5, 4, -3.0, 1.0).is_ok());
    }

    #[test]
    fn zero_balance_is_checked() {
        assert!(ZeroBalanced4F3::new([0.5, 1.0, 1.0, 0.5], [1.0, 1.0, 1.0]).is_ok());
        assert!(matches!(
            ZeroBalanced4F3::new([0.5, 1.0, 1.0, 0.5], [1.0, 1.0, 1.1]),
            Err(Error::NotZeroBalanced { .. })
        ));
    }

    #[test]
    fn hyp4f3_trivial() {
        let cfg = EvalConfig::default();
        let p = Hyp4F3 {
            a: [0.5, 1.0, 1.5, 2.0],
            b: [1.0, 2.0, 2.0],
        };
        assert_eq!(hyp4f3_series(&p, 0.0, &cfg).unwrap().value, 1.0);
        let q = Hyp4F3 {
            a: [0.0, 1.0, 1.5, 2.0],
            b: [1.0, 2.0, 2.0],
        };
        assert_eq!(hyp4f3_series(&q, 0.9, &cfg).unwrap().value, 1.0);
        assert!(matches!(hyp4f3_series(&p, 1.0, &cfg), Err(Error::OutOfRegion(_))));
    }

    #[test]
    fn hyp4f3_matches_direct_sum() {
        // s = t = 1 instance of the zero-balanced family, summed in exact rationals
        let p = ZeroBalanced4F3::new([1.5, 2.0, 2.0, 1.5], [2.0, 2.0, 3.0]).unwrap();
        let cfg = EvalConfig::default();
        let got = hyp4f3_series(p.params(), 0.5, &cfg).unwrap();
        let mut total = BigRational::zero();
        let mut term = BigRational::one();
        for n in 0..200i64 {
            total += &term;
            let nn = rat(n, 1);
            let num = (rat(3, 2) + &nn) * (rat(3, 2) + &nn) * (rat(2, 1) + &nn) * (rat(2, 1) + &nn);
            let den = (rat(2, 1) + &nn) * (rat(2, 1) + &nn) * (rat(3, 1) + &nn) * (rat(1, 1) + &nn);
            term = term * num / den * rat(1, 2);
        }
        let want = total.to_f64().unwrap();
        assert!((got.value - want).abs() < 1e-14 * want);
    }

    #[test]
    fn burchnall_examples() {
        let cfg = EvalConfig::default();
        use crate::specfun::appell::{appell_f4, F4Params};
        assert_eq!(f4_equal_args_reduction(0.5, 1.0, 1.0, 1.0, 0.0, &cfg).unwrap().value, 1.0);
        for (a, b, g1, g2, x) in [(0.5, 1.0, 1.0, 1.0, 0.04), (0.3, 0.6, 1.2, 0.8, 0.05)] {
            let r = f4_equal_args_reduction(a, b, g1, g2, x, &cfg).unwrap().value;
            let f = appell_f4(&F4Params::new(a, b, g1, g2, x, x), &cfg).unwrap().value;
            assert!((r - f).abs() < 1e-10 * f.abs().max(1.0), "{r} vs {f}");
        }
    }
}
