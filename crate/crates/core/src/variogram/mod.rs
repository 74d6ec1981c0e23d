//! Lag-(s, t) variogram: exact F4 path, edge extrapolation and symmetric closed forms.

mod bseries;
mod edge;
mod exact;
mod symmetric;

pub use bseries::{b_ss_closed, b_st, b_st_transformed};
pub use edge::variogram_edge;
pub use exact::{i_st, variogram_exact};
pub use symmetric::{
    eq11_params, gamma_st, l_st, symmetric_expansion_terms, variogram_diagonal,
    variogram_symmetric, zero_balanced_4f3_near_unit, SymmetricExpansionTerms,
};

use crate::config::{EvalConfig, EPS_EDGE, EPS_SYM};
use crate::series::SeriesValue;
use crate::{Error, Result};

/// Lag `(s, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lag {
    pub s: u64,
    pub t: u64,
}

impl Lag {
    pub fn new(s: u64, t: u64) -> Self {
        Self { s, t }
    }

    pub fn is_zero(&self) -> bool {
        self.s == 0 && self.t == 0
    }

    /// `s + t`.
    pub fn order(&self) -> u64 {
        self.s + self.t
    }

    pub fn transposed(&self) -> Self {
        Self::new(self.t, self.s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Interior,
    Edge,
    SymmetricQuarter,
}

/// Autoregression coefficients with their evaluation regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffPair {
    pub a: f64,
    pub b: f64,
    pub regime: Regime,
}

impl CoeffPair {
    /// Classifies `(a, b)`; fails when `|a| + |b| > 1/2 + EPS_EDGE`.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!("non-finite coefficients ({a}, {b})")));
        }
        let r = a.abs() + b.abs();
        if r > 0.5 + EPS_EDGE {
            return Err(Error::OutOfRegion(format!(
                "|a| + |b| = {r} exceeds 1/2"
            )));
        }
        let regime = if (a - 0.25).abs() <= EPS_SYM && (b - 0.25).abs() <= EPS_SYM {
            Regime::SymmetricQuarter
        } else if (r - 0.5).abs() <= EPS_EDGE {
            Regime::Edge
        } else {
            Regime::Interior
        };
        Ok(Self { a, b, regime })
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            regime: self.regime,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactF4,
    EdgeAbel,
    SymmetricClosed,
    DiagonalClosed,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ExactF4 => "exact",
            Method::EdgeAbel => "edge",
            Method::SymmetricClosed => "symmetric",
            Method::DiagonalClosed => "diagonal",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One sub-evaluation behind a variogram value.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub label: String,
    pub series: SeriesValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariogramResult {
    pub value: f64,
    pub method: Method,
    pub est_error: f64,
    pub diagnostics: Vec<Diagnostic>,
}

impl VariogramResult {
    fn zero(method: Method) -> Self {
        Self {
            value: 0.0,
            method,
            est_error: 0.0,
            diagnostics: Vec::new(),
        }
    }

    /// Total number of series terms evaluated.
    pub fn terms_used(&self) -> u64 {
        self.diagnostics.iter().map(|d| d.series.terms_used).sum()
    }
}

/// Applies the nonnegativity clamp to a raw difference.
fn clamp_nonnegative(value: f64, est_error: f64, scale: f64) -> Result<f64> {
    if value >= 0.0 {
        return Ok(value);
    }
    let slack = 10.0 * est_error.max(4.0 * f64::EPSILON * scale.abs());
    if value > -slack {
        Ok(0.0)
    } else {
        Err(Error::Inconsistent(format!(
            "negative variogram {value:e} beyond error estimate {est_error:e}"
        )))
    }
}

/// Evaluates the variogram with the method matching the coefficient regime.
pub fn variogram(c: &CoeffPair, lag: Lag, cfg: &EvalConfig) -> Result<VariogramResult> {
    match c.regime {
        Regime::SymmetricQuarter => {
            let mut r = variogram_symmetric(lag, cfg)?;
            if lag.s == lag.t {
                let d = variogram_diagonal(lag.s);
                let gap = (d - r.value).abs();
                if gap > 1e-10 {
                    return Err(Error::Inconsistent(format!(
                        "symmetric series {} and diagonal closed form {d} differ by {gap:e}",
                        r.value
                    )));
                }
                r.diagnostics.push(Diagnostic {
                    label: "diagonal closed form".into(),
                    series: SeriesValue::exact(d, lag.s),
                });
            }
            Ok(r)
        }
        Regime::Edge => {
            if c.a <= 0.0 || c.b <= 0.0 {
                return Err(Error::Domain(format!(
                    "edge evaluation requires a, b > 0, got ({}, {})",
                    c.a, c.b
                )));
            }
            variogram_edge(c.a, lag, cfg)
        }
        Regime::Interior => variogram_exact(c, lag, cfg),
    }
}
