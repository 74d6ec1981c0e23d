//! Hypergeometric and gamma-family kernels.

pub mod appell;
pub(crate) mod fixed;
pub mod gamma;
pub mod hyper;

pub use appell::{appell_f2, appell_f4, F4Params};
pub use gamma::{binomial, digamma, pochhammer, EULER_GAMMA};
pub use hyper::{
    f4_equal_args_reduction, hyp3f2_terminating, hyp4f3_series, Hyp4F3, ZeroBalanced4F3,
};
