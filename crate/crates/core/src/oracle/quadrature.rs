//! Two-dimensional quadrature of the defining integral.
//!
//! The integrand is written as
//!
//! ```text
//! (2 sin^2(sx/2) + cos(sx) 2 sin^2(ty/2)) / (g + 4a sin^2(x/2) + 4b sin^2(y/2)),  g = 1 - 2a - 2b,
//! ```
//!
//! which avoids the cancellation of `1 - cos` near the origin. On the edge
//! `g = 0` the integrand has a direction-dependent limit at the origin, so
//! the square `[0, d]^2` is integrated in polar coordinates, where it is
//! smooth in the radius.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::gk::{integrate, QuadratureValue};
use crate::config::{QuadratureSettings, EPS_EDGE};
use crate::variogram::{CoeffPair, Lag};
use crate::{Error, Result};

struct Integrand {
    s: f64,
    t: f64,
    a: f64,
    b: f64,
    gap: f64,
}

impl Integrand {
    fn eval(&self, x: f64, y: f64) -> f64 {
        let sx = (0.5 * self.s * x).sin();
        let ty = (0.5 * self.t * y).sin();
        let hx = (0.5 * x).sin();
        let hy = (0.5 * y).sin();
        let num = 2.0 * sx * sx + (self.s * x).cos() * 2.0 * ty * ty;
        let den = self.gap + 4.0 * self.a * hx * hx + 4.0 * self.b * hy * hy;
        if num == 0.0 {
            0.0
        } else {
            num / den
        }
    }
}

/// Nested integral of `f(u, v)` over `u in [u0, u1]`, `v in [v0(u), v1(u)]`.
fn nested<F, G>(f: &F, u: [f64; 2], v_range: G, q: &QuadratureSettings, budget: f64) -> Result<QuadratureValue>
where
    F: Fn(f64, f64) -> f64,
    G: Fn(f64) -> (f64, f64),
{
    let width = u[1] - u[0];
    let inner_abs = 0.1 * budget / width;
    let inner_rel = 0.1 * q.rel_tol;
    let mut inner_err = 0.0f64;
    let outer = integrate(
        |x| {
            let (v0, v1) = v_range(x);
            let r = integrate(|y| Ok(f(x, y)), &[v0, v1], inner_abs, inner_rel, q.max_subdivisions)?;
            inner_err = inner_err.max(r.error);
            Ok(r.value)
        },
        &u,
        0.9 * budget,
        q.rel_tol,
        q.max_subdivisions,
    )?;
    Ok(QuadratureValue {
        value: outer.value,
        error: outer.error + inner_err * width,
    })
}

/// Variogram by adaptive quadrature of the defining double integral.
pub fn quadrature_variogram(c: &CoeffPair, lag: Lag, q: &QuadratureSettings) -> Result<QuadratureValue> {
    q.validate()?;
    let (a, b) = (c.a, c.b);
    if a < 0.0 || b < 0.0 {
        return Err(Error::Domain(format!(
            "quadrature oracle requires a, b >= 0, got ({a}, {b})"
        )));
    }
    if a + b > 0.5 + EPS_EDGE {
        return Err(Error::OutOfRegion(format!("a + b = {} exceeds 1/2", a + b)));
    }
    if lag.is_zero() {
        return Ok(QuadratureValue {
            value: 0.0,
            error: 0.0,
        });
    }
    let gap = (1.0 - 2.0 * (a + b)).max(0.0);
    if gap == 0.0 && (a == 0.0 || b == 0.0) {
        return Err(Error::Domain(
            "the variogram integral diverges on the edge with a zero coefficient".into(),
        ));
    }
    let f = Integrand {
        s: lag.s as f64,
        t: lag.t as f64,
        a,
        b,
        gap,
    };
    let d = q.origin_split_radius;
    let budget = q.abs_tol / 4.0;

    let polar = |phi: f64, r: f64| {
        let (sp, cp) = phi.sin_cos();
        r * f.eval(r * cp, r * sp)
    };
    let low = nested(&polar, [0.0, FRAC_PI_4], |phi| (0.0, d / phi.cos()), q, budget)?;
    let high = nested(&polar, [FRAC_PI_4, FRAC_PI_2], |phi| (0.0, d / phi.sin()), q, budget)?;
    let plain = |x: f64, y: f64| f.eval(x, y);
    let right = nested(&plain, [d, PI], |_| (0.0, PI), q, budget)?;
    let top = nested(&plain, [0.0, d], |_| (d, PI), q, budget)?;

    let parts = [low, high, right, top];
    let scale = 1.0 / (PI * PI);
    Ok(QuadratureValue {
        value: parts.iter().map(|p| p.value).sum::<f64>() * scale,
        error: parts.iter().map(|p| p.error).sum::<f64>() * scale,
    })
}
