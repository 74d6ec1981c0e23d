//! Generalized exponential integral `E_n(x) = Int_1^inf e^{-xt} t^{-n} dt`.

use crate::specfun::EULER_GAMMA;

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

/// `E_n(x)` for `n >= 1`, `x >= 0`; infinite at `n = 1, x = 0`.
pub fn expint(n: u32, x: f64) -> f64 {
    assert!(n >= 1 && x >= 0.0, "expint requires n >= 1 and x >= 0");
    let nf = n as f64;
    if x == 0.0 {
        return if n == 1 { f64::INFINITY } else { 1.0 / (nf - 1.0) };
    }
    if x > 1.0 {
        // modified Lentz evaluation of the continued fraction
        let mut b = x + nf;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let i = i as f64;
            let an = -i * (nf - 1.0 + i);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        return h * (-x).exp();
    }
    let mut ans = if n == 1 { -x.ln() - EULER_GAMMA } else { 1.0 / (nf - 1.0) };
    let mut fact = 1.0;
    for i in 1..10_000u32 {
        fact *= -x / i as f64;
        let del = if i + 1 != n {
            -fact / (i as f64 - nf + 1.0)
        } else {
            let psi = -EULER_GAMMA + (1..n).map(|k| 1.0 / k as f64).sum::<f64>();
            fact * (-x.ln() + psi)
        };
        ans += del;
        if del.abs() < ans.abs() * EPS {
            break;
        }
    }
    ans
}
