//! Independent numerical references for the variogram.
//!
//! [`quadrature_variogram`] integrates the defining double integral directly.
//! [`bessel_laplace_i_st`] and [`bessel_laplace_variogram`] evaluate the
//! one-dimensional Laplace-type integrals of modified Bessel functions. Neither
//! shares code with the hypergeometric series.

mod bessel;
mod expint;
mod gk;
mod laplace;
mod quadrature;

pub use bessel::{modified_bessel_i, modified_bessel_i_scaled};
pub use expint::expint;
pub use gk::{integrate, QuadratureValue};
pub use laplace::{bessel_laplace_i_st, bessel_laplace_variogram};
pub use quadrature::quadrature_variogram;
