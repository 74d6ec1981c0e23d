//! Laplace-type integrals of products of modified Bessel functions.
//!
//! `I_st = Int_0^inf e^{-x} I_s(2ax) I_t(2bx) dx` and the variogram
//! `I_00 - I_st` as a single integral of the difference. With scaled Bessel
//! functions the integrands carry the factor `exp(-g x)`, `g = 1 - 2|a| - 2|b|`.

use std::f64::consts::PI;

use super::bessel::modified_bessel_i_scaled;
use super::expint::expint;
use super::gk::{integrate, QuadratureValue};
use crate::config::QuadratureSettings;
use crate::variogram::{CoeffPair, Lag};
use crate::{Error, Result};

const MAX_UPPER_LIMIT: f64 = 1e5;

/// Bound on `I_n(z) e^{-z}` valid for all `z >= 0`.
fn scaled_bessel_bound(z: f64) -> f64 {
    if z < 1.0 {
        1.0
    } else {
        (1.18 / (2.0 * PI * z).sqrt()).min(1.0)
    }
}

/// Breakpoints `0, 1, 2, 4, ..., upper`.
fn geometric_points(upper: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    let mut x = 1.0;
    while x < upper {
        pts.push(x);
        x *= 2.0;
    }
    pts.push(upper);
    pts
}

struct Setup {
    s: u32,
    t: u32,
    a: f64,
    b: f64,
    sign: f64,
    gap: f64,
}

impl Setup {
    fn new(c: &CoeffPair, lag: Lag) -> Result<Self> {
        let (s, t) = (
            u32::try_from(lag.s).map_err(|_| Error::Domain("lag too large".into()))?,
            u32::try_from(lag.t).map_err(|_| Error::Domain("lag too large".into()))?,
        );
        let negative = (c.a < 0.0 && s % 2 == 1) != (c.b < 0.0 && t % 2 == 1);
        let (a, b) = (c.a.abs(), c.b.abs());
        Ok(Self {
            s,
            t,
            a,
            b,
            sign: if negative { -1.0 } else { 1.0 },
            gap: (1.0 - 2.0 * (a + b)).max(0.0),
        })
    }

    fn product(&self, s: u32, t: u32, x: f64) -> f64 {
        modified_bessel_i_scaled(s, 2.0 * self.a * x) * modified_bessel_i_scaled(t, 2.0 * self.b * x)
    }
}

/// `Int_0^inf e^{-x} I_s(2ax) I_t(2bx) dx` for `|a| + |b| < 1/2`.
pub fn bessel_laplace_i_st(c: &CoeffPair, lag: Lag, q: &QuadratureSettings) -> Result<QuadratureValue> {
    q.validate()?;
    let p = Setup::new(c, lag)?;
    if p.gap <= 0.0 {
        return Err(Error::OutOfRegion(
            "the single-term integral diverges on the edge |a| + |b| = 1/2".into(),
        ));
    }
    let tail = |x: f64| {
        scaled_bessel_bound(2.0 * p.a * x) * scaled_bessel_bound(2.0 * p.b * x) * (-p.gap * x).exp() / p.gap
    };
    let target = 0.1 * q.abs_tol;
    let mut upper = 8.0;
    while tail(upper) > target && upper < MAX_UPPER_LIMIT {
        upper *= 2.0;
    }
    let upper = upper.min(MAX_UPPER_LIMIT);
    let body = integrate(
        |x| Ok((-p.gap * x).exp() * p.product(p.s, p.t, x)),
        &geometric_points(upper),
        0.5 * q.abs_tol,
        q.rel_tol,
        q.max_subdivisions,
    )?;
    let value = p.sign * body.value;
    let error = body.error + tail(upper);
    if tail(upper) > target {
        return Err(Error::ToleranceNotReached { value, error });
    }
    Ok(QuadratureValue { value, error })
}

/// Coefficients `c_k` with `I_n(z) e^{-z} ~ (2 pi z)^{-1/2} sum_k c_k z^{-k}`.
fn hankel_coefficients(n: u32, count: usize) -> Vec<f64> {
    let mu = 4.0 * (n as f64).powi(2);
    let mut out = Vec::with_capacity(count);
    let mut c = 1.0;
    out.push(c);
    for k in 1..count {
        let kf = k as f64;
        c *= -(mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf);
        out.push(c);
    }
    out
}

/// Number of terms in the large-`x` expansion of the difference integrand.
const TAIL_TERMS: usize = 10;

/// Tail `Int_X^inf` of the difference integrand from its large-`x` expansion.
fn asymptotic_tail(p: &Setup, upper: f64) -> (f64, f64) {
    let ba = 2.0 * p.a;
    let bb = 2.0 * p.b;
    let product_coeffs = |s: u32, t: u32| {
        let cs = hankel_coefficients(s, TAIL_TERMS + 1);
        let ct = hankel_coefficients(t, TAIL_TERMS + 1);
        (0..=TAIL_TERMS)
            .map(|m| {
                (0..=m)
                    .map(|k| cs[k] * ba.powi(-(k as i32)) * ct[m - k] * bb.powi(-((m - k) as i32)))
                    .sum::<f64>()
            })
            .collect::<Vec<f64>>()
    };
    let e00 = product_coeffs(0, 0);
    let est = product_coeffs(p.s, p.t);
    let pref = 1.0 / (2.0 * PI * (ba * bb).sqrt());
    let mut sum = 0.0;
    let mut last = 0.0;
    for m in 0..=TAIL_TERMS {
        let d = e00[m] - p.sign * est[m];
        if d == 0.0 {
            continue;
        }
        last = pref * d * upper.powi(-(m as i32)) * expint(m as u32 + 1, p.gap * upper);
        sum += last;
    }
    (sum, last.abs())
}

/// The variogram as one integral of `e^{-x} [I_0 I_0 - I_s I_t]`, valid up to the edge.
pub fn bessel_laplace_variogram(c: &CoeffPair, lag: Lag, q: &QuadratureSettings) -> Result<QuadratureValue> {
    q.validate()?;
    if lag.is_zero() {
        return Ok(QuadratureValue {
            value: 0.0,
            error: 0.0,
        });
    }
    let p = Setup::new(c, lag)?;
    if c.a.abs() + c.b.abs() > 0.5 + crate::config::EPS_EDGE {
        return Err(Error::OutOfRegion("|a| + |b| exceeds 1/2".into()));
    }
    let integrand = |x: f64| {
        Ok((-p.gap * x).exp() * (p.product(0, 0, x) - p.sign * p.product(p.s, p.t, x)))
    };

    let smallest = p.a.min(p.b);
    let order = p.s.max(p.t) as f64;
    let asym_upper = 40.0 * (order * order + 1.0) / smallest.max(f64::MIN_POSITIVE);
    let exp_upper = if p.gap > 0.0 {
        (20.0 / (p.gap * q.abs_tol)).ln().max(1.0) / p.gap
    } else {
        f64::INFINITY
    };

    let (upper, tail, tail_err) = if exp_upper <= asym_upper.min(MAX_UPPER_LIMIT) || smallest == 0.0 {
        if !exp_upper.is_finite() {
            return Err(Error::Domain(
                "the variogram integral diverges on the edge with a zero coefficient".into(),
            ));
        }
        (exp_upper.min(MAX_UPPER_LIMIT), 0.0, 2.0 * (-p.gap * exp_upper).exp() / p.gap)
    } else if asym_upper <= MAX_UPPER_LIMIT {
        if p.gap == 0.0 && p.sign < 0.0 {
            return Err(Error::OutOfRegion(
                "the difference integral diverges for this sign pattern on the edge".into(),
            ));
        }
        let (t, e) = asymptotic_tail(&p, asym_upper);
        (asym_upper, t, e)
    } else {
        return Err(Error::ToleranceNotReached {
            value: f64::NAN,
            error: f64::INFINITY,
        });
    };
    let body = integrate(
        integrand,
        &geometric_points(upper),
        0.5 * q.abs_tol,
        q.rel_tol,
        q.max_subdivisions,
    )?;
    Ok(QuadratureValue {
        value: body.value + tail,
        error: body.error + tail_err,
    })
}
