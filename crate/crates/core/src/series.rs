//! Truncated-series bookkeeping shared by the hypergeometric kernels.

/// Result of summing a truncated infinite series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms_used: u64,
    /// Estimated magnitude of the neglected tail.
    pub tail_estimate: f64,
    pub converged: bool,
}

impl SeriesValue {
    pub fn exact(value: f64, terms_used: u64) -> Self {
        Self {
            value,
            terms_used,
            tail_estimate: 0.0,
            converged: true,
        }
    }
}

/// Neumaier's variant of compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Multiplies the running sum by `f`.
    pub fn scale(&mut self, f: f64) {
        self.sum *= f;
        self.comp *= f;
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Largest ratio admitted by the geometric tail model.
const MAX_TAIL_RATIO: f64 = 0.999;

/// Geometric tail model `last / (1 - r)`.
///
/// `r` is the observed ratio of the last two contributions, floored at the
/// known asymptotic ratio of the series and clamped to `[0, 0.999]`.
pub fn geometric_tail(last: f64, previous: f64, asymptotic_ratio: f64) -> f64 {
    let last = last.abs();
    if last == 0.0 {
        return 0.0;
    }
    let observed = if previous != 0.0 { last / previous.abs() } else { 0.0 };
    let r = observed.max(asymptotic_ratio).clamp(0.0, MAX_TAIL_RATIO);
    last / (1.0 - r)
}
