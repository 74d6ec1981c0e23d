//! Appell double hypergeometric series F4 and F2.

use crate::config::EvalConfig;
use crate::series::{geometric_tail, CompensatedSum, SeriesValue};
use crate::{Error, Result};

/// Parameters of `F4[alpha, beta; gamma1, gamma2; x, y]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F4Params {
    pub alpha: f64,
    pub beta: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub x: f64,
    pub y: f64,
}

impl F4Params {
    pub fn new(alpha: f64, beta: f64, gamma1: f64, gamma2: f64, x: f64, y: f64) -> Self {
        Self {
            alpha,
            beta,
            gamma1,
            gamma2,
            x,
            y,
        }
    }

    fn validate(&self) -> Result<()> {
        let all = [self.alpha, self.beta, self.gamma1, self.gamma2, self.x, self.y];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite F4 parameter in {self:?}")));
        }
        if !(self.gamma1 > 0.0 && self.gamma2 > 0.0) {
            return Err(Error::Domain(format!(
                "F4 lower parameters must be positive, got {} and {}",
                self.gamma1, self.gamma2
            )));
        }
        if self.x < 0.0 || self.y < 0.0 {
            return Err(Error::Domain(format!(
                "F4 arguments must be nonnegative, got ({}, {})",
                self.x, self.y
            )));
        }
        let r = self.x.sqrt() + self.y.sqrt();
        if r >= 1.0 {
            return Err(Error::OutOfRegion(format!(
                "sqrt(x) + sqrt(y) = {r} >= 1 for F4"
            )));
        }
        Ok(())
    }
}

/// A value `mant * exp(log_scale)`, used to carry prefactors that would overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scaled {
    pub mant: f64,
    pub log_scale: f64,
}

impl Scaled {
    pub const ONE: Self = Self {
        mant: 1.0,
        log_scale: 0.0,
    };
}

/// Terms below this fraction of the diagonal peak are not evaluated.
const DIAGONAL_CUTOFF: f64 = 1e-20;

/// Appell's F4 summed over anti-diagonals `j + k = n`.
pub fn appell_f4(p: &F4Params, cfg: &EvalConfig) -> Result<SeriesValue> {
    appell_f4_scaled(p, Scaled::ONE, cfg.tol, cfg.max_terms)
}

/// `prefactor * F4`, with the series carried in scaled form throughout.
///
/// Along an anti-diagonal the terms have constant sign and are log-concave in
/// `j`, so each diagonal is summed outward from its peak and the peak of the
/// next diagonal is reached by a short walk.
pub(crate) fn appell_f4_scaled(
    p: &F4Params,
    prefactor: Scaled,
    tol: f64,
    max_terms: u64,
) -> Result<SeriesValue> {
    p.validate()?;
    let F4Params {
        alpha,
        beta,
        gamma1: g1,
        gamma2: g2,
        x,
        y,
    } = *p;

    let mut log_scale = prefactor.log_scale;
    let finish = |s: f64, tail: f64, log_scale: f64, terms: u64| {
        let f = if log_scale == 0.0 { 1.0 } else { log_scale.exp() };
        SeriesValue {
            value: s * f,
            terms_used: terms,
            tail_estimate: tail * f,
            converged: true,
        }
    };
    if prefactor.mant == 0.0 || (x == 0.0 && y == 0.0) {
        return Ok(finish(prefactor.mant, 0.0, log_scale, 1));
    }

    // T(n, j+1) / T(n, j) and its inverse
    let up = |n: u64, j: u64| {
        let (j, k) = (j as f64, (n - j) as f64);
        x * k * (g2 + k - 1.0) / (y * (j + 1.0) * (g1 + j))
    };
    let down = |n: u64, j: u64| {
        let (j, k) = (j as f64, (n - j) as f64);
        y * (j + 1.0) * (g1 + j) / (x * k * (g2 + k - 1.0))
    };

    let r_asym = (x.sqrt() + y.sqrt()).powi(2);
    let mut n: u64 = 0;
    let mut jp: u64 = 0;
    let mut tp = prefactor.mant;
    let mut sum = CompensatedSum::new();
    sum.add(tp);
    let mut prev_diag = tp;
    let mut terms: u64 = 1;
    let mut small_run = 0;

    loop {
        let nf = n as f64;
        let c = (alpha + nf) * (beta + nf);
        if c == 0.0 {
            // a numerator parameter is a nonpositive integer
            return Ok(finish(sum.value(), 0.0, log_scale, terms));
        }

        // step to diagonal n + 1, choosing the larger of the two neighbours
        let k = (n - jp) as f64;
        let jf = jp as f64;
        let via_k = if y > 0.0 {
            tp * c * y / ((g2 + k) * (k + 1.0))
        } else {
            0.0
        };
        let via_j = if x > 0.0 {
            tp * c * x / ((g1 + jf) * (jf + 1.0))
        } else {
            0.0
        };
        n += 1;
        if via_j.abs() > via_k.abs() {
            jp += 1;
            tp = via_j;
        } else {
            tp = via_k;
        }

        let mut diag = tp;
        terms += 1;
        if x > 0.0 && y > 0.0 {
            while jp < n {
                let r = up(n, jp);
                if r <= 1.0 {
                    break;
                }
                tp *= r;
                jp += 1;
                terms += 1;
            }
            while jp > 0 {
                let r = down(n, jp - 1);
                if r <= 1.0 {
                    break;
                }
                tp *= r;
                jp -= 1;
                terms += 1;
            }
            diag = tp;
            let cut = DIAGONAL_CUTOFF * tp.abs();
            let mut t = tp;
            for j in jp..n {
                t *= up(n, j);
                diag += t;
                terms += 1;
                if t.abs() < cut {
                    break;
                }
            }
            t = tp;
            for j in (0..jp).rev() {
                t *= down(n, j);
                diag += t;
                terms += 1;
                if t.abs() < cut {
                    break;
                }
            }
        }

        sum.add(diag);
        if tp != 0.0 && !(1e-200..=1e200).contains(&tp.abs()) {
            let f = tp.abs();
            tp /= f;
            diag /= f;
            prev_diag /= f;
            sum.scale(1.0 / f);
            log_scale += f.ln();
        }
        let s = sum.value();

        if diag.abs() < tol * s.abs() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        let tail = geometric_tail(diag, prev_diag, r_asym);
        if small_run >= 2 && tail <= tol * s.abs() {
            return Ok(finish(s, tail, log_scale, terms));
        }
        if tp == 0.0 {
            return Ok(finish(s, 0.0, log_scale, terms));
        }
        if terms >= max_terms {
            let f = log_scale.exp();
            return Err(Error::MaxTermsExceeded {
                terms,
                partial: s * f,
                tail: tail * f,
            });
        }
        prev_diag = diag;
    }
}

/// Appell's F2 summed over anti-diagonals `j + k = n`.
#[allow(clippy::too_many_arguments)]
pub fn appell_f2(
    alpha: f64,
    beta1: f64,
    beta2: f64,
    gamma1: f64,
    gamma2: f64,
    x: f64,
    y: f64,
    cfg: &EvalConfig,
) -> Result<SeriesValue> {
    let all = [alpha, beta1, beta2, gamma1, gamma2, x, y];
    if all.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite F2 parameter".into()));
    }
    let is_pole = |g: f64| g <= 0.0 && g == g.round();
    if is_pole(gamma1) || is_pole(gamma2) {
        return Err(Error::Domain(format!(
            "F2 lower parameters must not be nonpositive integers, got {gamma1} and {gamma2}"
        )));
    }
    let r_asym = x.abs() + y.abs();
    if r_asym >= 1.0 {
        return Err(Error::OutOfRegion(format!("|x| + |y| = {r_asym} >= 1 for F2")));
    }

    let mut diag = vec![1.0];
    let mut sum = CompensatedSum::new();
    sum.add(1.0);
    let mut prev = 1.0;
    let mut terms: u64 = 1;
    let mut small_run = 0;
    let mut n: u64 = 0;
    loop {
        let nf = n as f64;
        let mut next = Vec::with_capacity(diag.len() + 1);
        for (j, &t) in diag.iter().enumerate() {
            let k = (n - j as u64) as f64;
            next.push(t * (alpha + nf) * (beta2 + k) * y / ((gamma2 + k) * (k + 1.0)));
        }
        let last = diag[n as usize];
        next.push(last * (alpha + nf) * (beta1 + nf) * x / ((gamma1 + nf) * (nf + 1.0)));
        n += 1;
        terms += next.len() as u64;
        let d: f64 = next.iter().copied().collect::<CompensatedSum>().value();
        sum.add(d);
        let s = sum.value();
        if d.abs() < cfg.tol * s.abs() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        let tail = geometric_tail(d, prev, r_asym);
        if (small_run >= 2 && tail <= cfg.tol * s.abs()) || next.iter().all(|&t| t == 0.0) {
            return Ok(SeriesValue {
                value: s,
                terms_used: terms,
                tail_estimate: if small_run >= 2 { tail } else { 0.0 },
                converged: true,
            });
        }
        if terms >= cfg.max_terms {
            return Err(Error::MaxTermsExceeded {
                terms,
                partial: s,
                tail,
            });
        }
        prev = d;
        diag = next;
    }
}
