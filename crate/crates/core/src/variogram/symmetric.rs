//! Closed forms at `a = b = 1/4` and the near-unit expansion of the equal-argument `4F3`.

use std::f64::consts::{LN_2, PI};

use super::{b_st, b_st_transformed, clamp_nonnegative, Diagnostic, Lag, Method, VariogramResult};
use crate::config::EvalConfig;
use crate::series::CompensatedSum;
use crate::specfun::{binomial, ZeroBalanced4F3};
use crate::{Error, Result};

/// Parameters of the zero-balanced `4F3` reached from `F4` at `a = b = 1/4`.
pub fn eq11_params(lag: Lag) -> ZeroBalanced4F3 {
    let n = lag.order() as f64;
    let (s, t) = (lag.s as f64, lag.t as f64);
    ZeroBalanced4F3::new(
        [0.5 * (n + 1.0), 0.5 * n + 1.0, 0.5 * n + 1.0, 0.5 * (n + 1.0)],
        [s + 1.0, t + 1.0, n + 1.0],
    )
    .expect("parameter family is zero-balanced by construction")
}

/// `Gamma_st = C(s+t, s) pi / 4^(s+t)`.
pub fn gamma_st(lag: Lag) -> f64 {
    let n = lag.order();
    let k = lag.s.min(lag.t);
    if n <= 500 {
        return binomial(n, k) * PI * 0.25f64.powi(n as i32);
    }
    // interleave the quarter powers with the binomial product
    let mut g = PI;
    let mut quarters = n;
    for i in 1..=k {
        g *= (n - k + i) as f64 / i as f64;
        while g > 1.0 && quarters > 0 {
            g *= 0.25;
            quarters -= 1;
        }
    }
    g * 0.25f64.powi(quarters as i32)
}

/// `L_st = -2 gamma - Psi((s+t+1)/2) - Psi((s+t)/2 + 1)`.
pub fn l_st(lag: Lag) -> f64 {
    let n = lag.order();
    let mut acc = CompensatedSum::new();
    acc.add(2.0 * LN_2);
    for k in 1..=n / 2 {
        acc.add(-1.0 / k as f64);
    }
    for k in 0..n.div_ceil(2) {
        acc.add(-2.0 / (2 * k + 1) as f64);
    }
    acc.value()
}

/// The three constituents of the near-unit expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricExpansionTerms {
    pub gamma_st: f64,
    pub l_st: f64,
    pub b_st: f64,
}

pub fn symmetric_expansion_terms(lag: Lag, cfg: &EvalConfig) -> Result<SymmetricExpansionTerms> {
    Ok(SymmetricExpansionTerms {
        gamma_st: gamma_st(lag),
        l_st: l_st(lag),
        b_st: b_st(lag, cfg)?.value,
    })
}

/// Leading behaviour `(L + B - ln theta) / Gamma` of the zero-balanced `4F3` at `1 - theta`.
pub fn zero_balanced_4f3_near_unit(lag: Lag, theta: f64, cfg: &EvalConfig) -> Result<f64> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!("theta = {theta} outside (0, 1)")));
    }
    let terms = symmetric_expansion_terms(lag, cfg)?;
    Ok((terms.l_st + terms.b_st - theta.ln()) / terms.gamma_st)
}

fn harmonic(n: u64) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).collect::<CompensatedSum>().value()
}

/// Variogram at `a = b = 1/4` from the expansion constants.
///
/// The transformed B-series is evaluated as a cross-check whenever it has no
/// pole; the two values must agree to `1e-9`.
pub fn variogram_symmetric(lag: Lag, cfg: &EvalConfig) -> Result<VariogramResult> {
    if lag.is_zero() {
        return Ok(VariogramResult::zero(Method::SymmetricClosed));
    }
    let b = b_st(lag, cfg)?;
    let mut diagnostics = vec![Diagnostic {
        label: "B series".into(),
        series: b,
    }];
    let mut b_err = b.tail_estimate;
    let alternative = if lag.s > lag.t && (lag.s - lag.t) % 2 == 1 {
        b_st_transformed(lag.transposed(), cfg)
    } else {
        b_st_transformed(lag, cfg)
    };
    match alternative {
        Ok(alt) => {
            let gap = (alt.value - b.value).abs();
            if gap > 1e-9 * b.value.abs().max(1.0) {
                return Err(Error::Inconsistent(format!(
                    "B series disagree for {lag:?}: {} vs {}",
                    b.value, alt.value
                )));
            }
            b_err = b_err.max(gap);
            diagnostics.push(Diagnostic {
                label: "transformed B series".into(),
                series: alt,
            });
        }
        Err(Error::MaxTermsExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    let n = lag.order();
    let raw = (2.0 * LN_2 + 2.0 * harmonic(n) - b.value) / PI;
    let est_error = b_err / PI + 8.0 * f64::EPSILON * raw.abs();
    let value = clamp_nonnegative(raw, est_error, 1.0)?;
    Ok(VariogramResult {
        value,
        method: Method::SymmetricClosed,
        est_error,
        diagnostics,
    })
}

/// `(4/pi) sum_{k<s} 1/(2k+1)`, the diagonal variogram at `a = b = 1/4`.
pub fn variogram_diagonal(s: u64) -> f64 {
    let sum: CompensatedSum = (0..s).map(|k| 1.0 / (2 * k + 1) as f64).collect();
    4.0 / PI * sum.value()
}
