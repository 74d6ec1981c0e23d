//! Exact variogram of the first-order intrinsic autoregression on the square lattice.
//!
//! The lag-(s, t) variogram of the model with coefficients (a, b) is
//!
//! ```text
//! nu_st(a, b) = 1/pi^2 * Int_[0,pi]^2 (1 - cos(sx) cos(ty)) / (1 - 2a cos x - 2b cos y) dx dy
//! ```
//!
//! [`variogram`] evaluates it through Appell F4 series inside the region
//! `|a| + |b| < 1/2`, an Abel-limit extrapolation on the edge `a + b = 1/2`,
//! and closed forms at `a = b = 1/4`. The [`oracle`] module provides two
//! independent integral representations used for verification.

pub mod config;
pub mod error;
pub mod oracle;
pub mod series;
pub mod specfun;

pub use config::{EvalConfig, QuadratureSettings};
pub use error::{Error, Result};
pub use series::SeriesValue;
pub mod variogram;

pub use variogram::{variogram, CoeffPair, Lag, Method, Regime, VariogramResult};
