//! Abel-limit evaluation on the edge `a + b = 1/2`.
//!
//! The variogram is evaluated at arguments pulled inside the region by a
//! factor `1 - theta` and extrapolated to `theta = 0` with the model
//! `nu(theta) = nu0 + sum_n theta^n (c_n + d_n ln(theta))`, truncated at the order
//! the theta schedule supports.

use nalgebra::{DMatrix, DVector};

use super::exact::i_st_scaled;
use super::{clamp_nonnegative, Diagnostic, Lag, Method, VariogramResult};
use crate::config::EvalConfig;
use crate::series::SeriesValue;
use crate::{Error, Result};

/// Weights `w` with `nu0 = sum_i w_i nu(theta_i)` for the model
/// `nu0 + sum_{n=1..m} theta^n (c_n + d_n ln theta)`, `m = (len - 1) / 2`.
fn extrapolation_weights(thetas: &[f64]) -> Result<DVector<f64>> {
    let k = thetas.len();
    let m = DMatrix::from_fn(k, k, |i, j| {
        let th = thetas[i];
        if j == 0 {
            1.0
        } else {
            let p = th.powi(j.div_ceil(2) as i32);
            if j % 2 == 1 {
                p
            } else {
                p * th.ln()
            }
        }
    });
    let inv = m
        .try_inverse()
        .ok_or_else(|| Error::Domain(format!("degenerate theta schedule {thetas:?}")))?;
    Ok(inv.row(0).transpose())
}

struct Sample {
    theta: f64,
    value: f64,
    tail: f64,
}

fn sample(a: f64, b: f64, lag: Lag, theta: f64, cfg: &EvalConfig) -> Result<(Sample, [SeriesValue; 2])> {
    let lambda_sq = 1.0 - theta;
    let stalled = |e: Error| match e {
        Error::MaxTermsExceeded { terms, .. } => Error::SlowConvergence { theta, terms },
        other => other,
    };
    let i00 = i_st_scaled(a, b, Lag::new(0, 0), lambda_sq, cfg.edge_tol, cfg.max_terms)
        .map_err(stalled)?;
    let ist = i_st_scaled(a, b, lag, lambda_sq, cfg.edge_tol, cfg.max_terms).map_err(stalled)?;
    let s = Sample {
        theta,
        value: i00.value - ist.value,
        tail: i00.tail_estimate + ist.tail_estimate,
    };
    Ok((s, [i00, ist]))
}

/// Variogram at `(a, 1/2 - a)` by Abel-limit extrapolation.
pub fn variogram_edge(a: f64, lag: Lag, cfg: &EvalConfig) -> Result<VariogramResult> {
    if !(a > 0.0 && a < 0.5) {
        return Err(Error::Domain(format!("edge path requires 0 < a < 1/2, got {a}")));
    }
    if lag.is_zero() {
        return Ok(VariogramResult::zero(Method::EdgeAbel));
    }
    let sched = &cfg.theta_schedule;
    let valid = sched.len() % 2 == 1
        && sched.iter().all(|&th| th > 0.0 && th < 0.25)
        && sched.windows(2).all(|w| w[0] > w[1]);
    if !valid {
        return Err(Error::Domain(format!(
            "theta schedule must hold an odd number of decreasing values in (0, 1/4), got {sched:?}"
        )));
    }
    let b = 0.5 - a;
    let validation = 2.0 * sched[0];
    let mut samples = Vec::with_capacity(4);
    let mut diagnostics = Vec::with_capacity(8);
    for &theta in std::iter::once(&validation).chain(sched.iter()) {
        let (s, [i00, ist]) = sample(a, b, lag, theta, cfg)?;
        diagnostics.push(Diagnostic {
            label: format!("I_00 at theta={theta:e}"),
            series: i00,
        });
        diagnostics.push(Diagnostic {
            label: format!("I_{}_{} at theta={theta:e}", lag.s, lag.t),
            series: ist,
        });
        samples.push(s);
    }

    let fit = |pts: &[Sample]| -> Result<(f64, f64)> {
        let thetas: Vec<f64> = pts.iter().map(|p| p.theta).collect();
        let w = extrapolation_weights(&thetas)?;
        let v = pts.iter().zip(w.iter()).map(|(p, w)| w * p.value).sum::<f64>();
        let tail = pts.iter().zip(w.iter()).map(|(p, w)| w.abs() * p.tail).sum::<f64>();
        Ok((v, tail))
    };
    // the same fit on a window shifted one step coarser bounds the model error
    let k = sched.len();
    let (value, tail) = fit(&samples[1..])?;
    let (coarse, coarse_tail) = fit(&samples[..k])?;
    let est_error = (value - coarse).abs() + tail.max(coarse_tail);
    let value = clamp_nonnegative(value, est_error, samples[k].value)?;
    Ok(VariogramResult {
        value,
        method: Method::EdgeAbel,
        est_error,
        diagnostics,
    })
}
