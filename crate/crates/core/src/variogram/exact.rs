//! Interior evaluation through Appell F4.

use super::{clamp_nonnegative, CoeffPair, Diagnostic, Lag, Method, Regime, VariogramResult};
use crate::config::{EvalConfig, EPS_EDGE};
use crate::series::SeriesValue;
use crate::specfun::appell::{appell_f4_scaled, Scaled};
use crate::specfun::{binomial, F4Params};
use crate::{Error, Result};

fn ln_binomial(n: u64, k: u64) -> f64 {
    let b = binomial(n, k);
    if b.is_finite() {
        return b.ln();
    }
    let k = k.min(n - k);
    (1..=k)
        .map(|i| ((n - k + i) as f64 / i as f64).ln())
        .sum()
}

/// `C(s+t, s) a^s b^t lambda^(s+t) F4[(s+t+1)/2, (s+t)/2+1; s+1, t+1; 4a^2 lambda^2, 4b^2 lambda^2]`.
///
/// `lambda_sq` is 1 on the interior path and `1 - theta` on the edge path.
pub(crate) fn i_st_scaled(
    a: f64,
    b: f64,
    lag: Lag,
    lambda_sq: f64,
    tol: f64,
    max_terms: u64,
) -> Result<SeriesValue> {
    let Lag { s, t } = lag;
    if (a == 0.0 && s > 0) || (b == 0.0 && t > 0) {
        return Ok(SeriesValue::exact(0.0, 1));
    }
    let n = s + t;
    let nf = n as f64;
    let negative = (a < 0.0 && s % 2 == 1) != (b < 0.0 && t % 2 == 1);
    let sign = if negative { -1.0 } else { 1.0 };
    let (aa, bb) = (a.abs(), b.abs());

    let direct =
        binomial(n, s) * aa.powi(s as i32) * bb.powi(t as i32) * lambda_sq.powf(0.5 * nf);
    let prefactor = if direct.is_normal() && direct > 1e-280 {
        Scaled {
            mant: sign * direct,
            log_scale: 0.0,
        }
    } else {
        let mut log = ln_binomial(n, s) + 0.5 * nf * lambda_sq.ln();
        if s > 0 {
            log += s as f64 * aa.ln();
        }
        if t > 0 {
            log += t as f64 * bb.ln();
        }
        Scaled {
            mant: sign,
            log_scale: log,
        }
    };
    let p = F4Params::new(
        0.5 * (nf + 1.0),
        0.5 * nf + 1.0,
        s as f64 + 1.0,
        t as f64 + 1.0,
        4.0 * aa * aa * lambda_sq,
        4.0 * bb * bb * lambda_sq,
    );
    appell_f4_scaled(&p, prefactor, tol, max_terms)
}

fn require_interior(c: &CoeffPair) -> Result<()> {
    let r = c.a.abs() + c.b.abs();
    if c.regime != Regime::Interior || r >= 0.5 - EPS_EDGE {
        return Err(Error::OutOfRegion(format!(
            "|a| + |b| = {r} is not inside the interior region"
        )));
    }
    Ok(())
}

/// The Laplace-type integral `I_st` of the interior representation.
pub fn i_st(c: &CoeffPair, lag: Lag, cfg: &EvalConfig) -> Result<SeriesValue> {
    require_interior(c)?;
    i_st_scaled(c.a, c.b, lag, 1.0, cfg.tol, cfg.max_terms)
}

/// Interior variogram `I_00 - I_st`.
pub fn variogram_exact(c: &CoeffPair, lag: Lag, cfg: &EvalConfig) -> Result<VariogramResult> {
    require_interior(c)?;
    if lag.is_zero() {
        return Ok(VariogramResult::zero(Method::ExactF4));
    }
    let i00 = i_st(c, Lag::new(0, 0), cfg)?;
    let ist = i_st(c, lag, cfg)?;
    let raw = i00.value - ist.value;
    let est_error = i00.tail_estimate
        + ist.tail_estimate
        + 4.0 * f64::EPSILON * (i00.value.abs() + ist.value.abs());
    let value = clamp_nonnegative(raw, est_error, i00.value)?;
    Ok(VariogramResult {
        value,
        method: Method::ExactF4,
        est_error,
        diagnostics: vec![
            Diagnostic {
                label: "I_00".into(),
                series: i00,
            },
            Diagnostic {
                label: format!("I_{}_{}", lag.s, lag.t),
                series: ist,
            },
        ],
    })
}
