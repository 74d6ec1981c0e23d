//! Pochhammer symbols, digamma and binomial coefficients.

use crate::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Rising factorial `w (w+1) ... (w+n-1)`; overflow saturates to infinity.
pub fn pochhammer(w: f64, n: u64) -> f64 {
    let mut p = 1.0;
    for i in 0..n {
        p *= w + i as f64;
        if p == 0.0 || !p.is_finite() {
            break;
        }
    }
    p
}

/// Argument above which the asymptotic expansion is used.
const DIGAMMA_SHIFT: f64 = 10.0;

/// `B_{2k} / (2k)` for k = 1..6.
const DIGAMMA_ASYMPTOTIC: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
];

/// Digamma function for positive arguments.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("digamma requires x > 0, got {x}")));
    }
    let mut x = x;
    let mut shift = 0.0;
    while x < DIGAMMA_SHIFT {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut series = 0.0;
    for c in DIGAMMA_ASYMPTOTIC.iter().rev() {
        series = (series + c) * inv2;
    }
    Ok(shift + (x.ln() - 0.5 / x - series))
}

/// Digamma at `n/2` for a positive integer `n`, built from exact harmonic sums.
pub fn digamma_half_integer(n: u64) -> f64 {
    assert!(n > 0, "digamma_half_integer requires n > 0");
    let mut acc = crate::series::CompensatedSum::new();
    if n % 2 == 0 {
        // Psi(m) = -gamma + H_{m-1}
        acc.add(-EULER_GAMMA);
        for k in 1..n / 2 {
            acc.add(1.0 / k as f64);
        }
    } else {
        // Psi(m + 1/2) = -gamma - 2 ln 2 + sum_{k<m} 2/(2k+1)
        acc.add(-EULER_GAMMA);
        acc.add(-2.0 * std::f64::consts::LN_2);
        for k in 0..n / 2 {
            acc.add(2.0 / (2 * k + 1) as f64);
        }
    }
    acc.value()
}

/// Largest `n` for which the binomial coefficient is built in exact integer arithmetic.
const EXACT_BINOMIAL_MAX: u64 = 120;

/// Binomial coefficient `C(n, k)`.
///
/// Exact up to `n = 120`, double-double product beyond, saturating at infinity.
///
/// # Panics
/// If `k > n`.
pub fn binomial(n: u64, k: u64) -> f64 {
    assert!(k <= n, "binomial({n}, {k}) requires k <= n");
    let k = k.min(n - k);
    if n <= EXACT_BINOMIAL_MAX {
        let mut r: u128 = 1;
        for i in 1..=k as u128 {
            r = r * (n as u128 - k as u128 + i) / i;
        }
        return r as f64;
    }
    let mut r = DoubleDouble::ONE;
    for i in 1..=k {
        r = r.mul_f64((n - k + i) as f64).div_f64(i as f64);
        if !r.hi.is_finite() {
            return f64::INFINITY;
        }
    }
    r.hi + r.lo
}

#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn mul_f64(self, b: f64) -> Self {
        let p = self.hi * b;
        let e = self.hi.mul_add(b, -p);
        let (hi, lo) = Self::two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }

    fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self.sub(Self { hi: q1, lo: 0.0 }.mul_f64(b));
        let q2 = r.hi / b;
        let (hi, lo) = Self::two_sum(q1, q2);
        Self { hi, lo }
    }

    fn sub(self, o: Self) -> Self {
        let (s, e) = Self::two_sum(self.hi, -o.hi);
        let (hi, lo) = Self::two_sum(s, e + self.lo - o.lo);
        Self { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(0.7, 0), 1.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
        assert_eq!(pochhammer(0.5, 3), 15.0 / 8.0);
        assert_eq!(pochhammer(-2.0, 5), 0.0);
        assert_eq!(pochhammer(10.0, 1000), f64::INFINITY);
    }

    #[test]
    fn digamma_closed_forms() {
        assert!(close(digamma(1.0).unwrap(), -EULER_GAMMA, 1e-14));
        assert!(close(digamma(0.5).unwrap(), -EULER_GAMMA - 2.0 * LN_2, 1e-14));
        let lhs = digamma(7.3).unwrap();
        let rhs = digamma(6.3).unwrap() + 1.0 / 6.3;
        assert!(close(lhs, rhs, 1e-13));
        assert!(digamma(0.0).is_err());
        assert!(digamma(-1.5).is_err());
        assert!(digamma(f64::NAN).is_err());
    }

    #[test]
    fn digamma_reference_values() {
        // high-precision references
        let cases = [
            (1e-3, -1000.5755719318103),
            (0.25, -4.2274535333762654),
            (1.4616321449683622, -9.2412655217294275e-17),
            (2.5, 0.70315664064524319),
            (9.99, 2.2507003728312011),
            (10.0, 2.2517525890667211),
            (123.456, 4.8118293238289854),
            (1e6, 13.815510057964191),
        ];
        for (x, want) in cases {
            let got = digamma(x).unwrap();
            assert!(
                (got - want).abs() <= 1e-13 * want.abs().max(1.0),
                "digamma({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn half_integer_digamma_matches_general() {
        for n in 1..40 {
            let a = digamma_half_integer(n);
            let b = digamma(n as f64 / 2.0).unwrap();
            assert!(close(a, b, 1e-14), "n = {n}: {a} vs {b}");
        }
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(0, 0), 1.0);
        assert_eq!(binomial(2, 1), 2.0);
        assert_eq!(binomial(10, 4), 210.0);
        assert_eq!(binomial(60, 30), 118264581564861424.0);
        assert!((binomial(120, 60) / 9.661_490_884_036_332e34 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn binomial_large_matches_pascal() {
        // Pascal's rule checked in exact integers
        use num_bigint::BigUint;
        let n = 300u64;
        let mut row = vec![BigUint::from(1u32)];
        for _ in 0..n {
            let mut next = vec![BigUint::from(1u32); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        for k in [0u64, 1, 7, 50, 149, 150, 233, 300] {
            let exact: f64 = num_traits::ToPrimitive::to_f64(&row[k as usize]).unwrap();
            let got = binomial(n, k);
            assert!(((got - exact) / exact).abs() <= 1e-15, "k = {k}");
        }
        assert_eq!(binomial(5000, 2500), f64::INFINITY);
    }

    #[test]
    #[should_panic]
    fn binomial_contract() {
        binomial(3, 4);
    }
}
