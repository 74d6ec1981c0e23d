//! Modified Bessel functions of the first kind and integer order.

use std::f64::consts::PI;

/// Above `40 + n^2` the large-argument expansion is used.
fn uses_asymptotic(n: u32, x: f64) -> bool {
    x > 40.0 + (n as f64).powi(2)
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Power series of `I_n(x) e^{-x}`.
fn scaled_series(n: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let nf = n as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        term *= q / ((k + 1.0) * (nf + k + 1.0));
        sum += term;
        k += 1.0;
        if term < 1e-17 * sum {
            break;
        }
    }
    let log_pref = nf * (0.5 * x).ln() - ln_factorial(n) - x;
    (log_pref + sum.ln()).exp()
}

/// Large-argument expansion of `I_n(x) e^{-x}`.
fn scaled_asymptotic(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n as f64).powi(2);
    let mut term = 1.0f64;
    let mut sum = 1.0;
    let mut k = 1.0f64;
    loop {
        let next = -term * (mu - (2.0 * k - 1.0).powi(2)) / (k * 8.0 * x);
        if next.abs() >= term.abs() || next == 0.0 {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    sum / (2.0 * PI * x).sqrt()
}

/// `I_n(x) e^{-|x|}`.
pub fn modified_bessel_i_scaled(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ax = x.abs();
    let v = if uses_asymptotic(n, ax) {
        scaled_asymptotic(n, ax)
    } else {
        scaled_series(n, ax)
    };
    if x < 0.0 && n % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `I_n(x)`; overflows to infinity beyond `|x| ~ 709`.
pub fn modified_bessel_i(n: u32, x: f64) -> f64 {
    modified_bessel_i_scaled(n, x) * x.abs().exp()
}
