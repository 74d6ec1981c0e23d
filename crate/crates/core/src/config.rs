/// Distance of `|a| + |b|` from 1/2 below which the Abel (edge) path is used.
pub const EPS_EDGE: f64 = 1e-9;
/// Distance of `a` and `b` from 1/4 within which the symmetric closed form applies.
pub const EPS_SYM: f64 = 1e-14;

/// Controls for the adaptive quadrature oracles.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of interval bisections per one-dimensional integral.
    pub max_subdivisions: usize,
    /// Side of the square around the origin that is integrated in polar coordinates.
    pub origin_split_radius: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            max_subdivisions: 4000,
            origin_split_radius: 0.1,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(crate::Error::Domain("quadrature tolerances must be positive".into()));
        }
        let r = self.origin_split_radius;
        if !(r > 0.0 && r <= std::f64::consts::FRAC_PI_4) {
            return Err(crate::Error::Domain(format!(
                "origin_split_radius {r} outside (0, pi/4]"
            )));
        }
        Ok(())
    }
}

/// Tolerances and budgets shared by every series evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    /// Relative stopping tolerance for infinite series.
    pub tol: f64,
    /// Cap on the number of series terms evaluated by a single double series.
    pub max_terms: u64,
    /// Abel parameters used by the edge path, largest first.
    pub theta_schedule: Vec<f64>,
    /// Relative tolerance of the double series evaluated on the edge path.
    pub edge_tol: f64,
    /// Cap on the number of terms generated for the accelerated B-series.
    pub b_series_max_terms: usize,
    pub quadrature: QuadratureSettings,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            tol: 1e-14,
            max_terms: 2_000_000_000,
            theta_schedule: vec![64e-3, 32e-3, 16e-3, 8e-3, 4e-3, 2e-3, 1e-3],
            edge_tol: 1e-13,
            b_series_max_terms: 8192,
            quadrature: QuadratureSettings::default(),
        }
    }
}

impl EvalConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}
