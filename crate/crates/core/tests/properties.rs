use lattice_variogram::oracle::{
    bessel_laplace_i_st, bessel_laplace_variogram, quadrature_variogram,
};
use lattice_variogram::specfun::{
    appell_f2, appell_f4, f4_equal_args_reduction, hyp4f3_series, pochhammer, F4Params,
};
use lattice_variogram::variogram::{
    b_ss_closed, b_st, b_st_transformed, eq11_params, i_st, variogram_diagonal, variogram_edge,
    variogram_exact, variogram_symmetric, zero_balanced_4f3_near_unit,
};
use lattice_variogram::{CoeffPair, EvalConfig, Lag, QuadratureSettings};
use proptest::prelude::*;

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

/// Gauss series by direct summation.
fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..100_000 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pochhammer_splits(w in -5.0f64..5.0, m in 0u64..=30, n in 0u64..=30) {
        let whole = pochhammer(w, m + n);
        let split = pochhammer(w, m) * pochhammer(w + m as f64, n);
        prop_assert!((whole - split).abs() <= 1e-13 * whole.abs().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn equal_argument_reduction(
        alpha in 0.1f64..3.0, beta in 0.1f64..3.0,
        g1 in 0.2f64..3.0, g2 in 0.2f64..3.0, x in 1e-4f64..0.06,
    ) {
        let f4 = appell_f4(&F4Params::new(alpha, beta, g1, g2, x, x), &cfg()).unwrap().value;
        let red = f4_equal_args_reduction(alpha, beta, g1, g2, x, &cfg()).unwrap().value;
        prop_assert!(rel_close(red, f4, 1e-10), "{} vs {}", red, f4);
    }

    #[test]
    fn f4_f2_transformation(
        alpha in 0.01f64..2.0, g1 in 0.3f64..2.0, g2 in 0.3f64..2.0,
        x in 1e-4f64..0.15, y in 1e-4f64..0.15,
    ) {
        // the first upper parameter is alpha/2; with alpha itself the identity fails
        let f4 = appell_f4(
            &F4Params::new(0.5 * alpha, 0.5 * (alpha + 1.0), g1 + 0.5, g2 + 0.5, x * x, y * y),
            &cfg(),
        ).unwrap().value;
        let d = 1.0 + x + y;
        let f2 = appell_f2(alpha, g1, g2, 2.0 * g1, 2.0 * g2, 2.0 * x / d, 2.0 * y / d, &cfg())
            .unwrap().value;
        let rhs = d.powf(-alpha) * f2;
        prop_assert!((f4 - rhs).abs() <= 1e-9 * rhs.abs(), "{} vs {}", f4, rhs);
    }

    #[test]
    fn f4_single_variable_collapse(
        alpha in 0.1f64..4.0, beta in 0.1f64..4.0, g1 in 0.2f64..4.0, x in 0.0f64..0.8,
    ) {
        let f4 = appell_f4(&F4Params::new(alpha, beta, g1, 1.7, x, 0.0), &cfg()).unwrap().value;
        let g = gauss_2f1(alpha, beta, g1, x);
        prop_assert!(rel_close(f4, g, 1e-12), "{} vs {}", f4, g);
    }

    #[test]
    fn f4_tail_estimate_bounds_the_error(
        alpha in 0.1f64..3.0, beta in 0.1f64..3.0, g1 in 0.2f64..3.0, g2 in 0.2f64..3.0,
        rx in 0.05f64..0.9, split in 0.0f64..1.0,
    ) {
        let (x, y) = ((rx * split).powi(2), (rx * (1.0 - split)).powi(2));
        let p = F4Params::new(alpha, beta, g1, g2, x, y);
        let mut loose = cfg();
        loose.tol = 1e-8;
        let mut tight = cfg();
        tight.tol = 1e-9;
        let a = appell_f4(&p, &loose).unwrap();
        let b = appell_f4(&p, &tight).unwrap();
        // positive terms: partial sums increase, and the tail covers the gap
        prop_assert!(b.value >= a.value);
        prop_assert!(b.value - a.value <= a.tail_estimate + 1e-15 * b.value);
    }

    #[test]
    fn i_st_swap_symmetry(a in -0.24f64..0.24, b in -0.24f64..0.24, s in 0u64..6, t in 0u64..6) {
        let c = CoeffPair::new(a, b).unwrap();
        let lag = Lag::new(s, t);
        let x = i_st(&c, lag, &cfg()).unwrap().value;
        let y = i_st(&c.swapped(), lag.transposed(), &cfg()).unwrap().value;
        prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
    }

    #[test]
    fn zero_lag_vanishes(a in 0.0f64..0.5, frac in 0.0f64..1.0) {
        let b = (0.5 - a) * frac;
        let c = CoeffPair::new(a, b).unwrap();
        let lag = Lag::new(0, 0);
        prop_assert_eq!(lattice_variogram::variogram(&c, lag, &cfg()).unwrap().value, 0.0);
        prop_assert_eq!(quadrature_variogram(&c, lag, &QuadratureSettings::default()).unwrap().value, 0.0);
    }
}

#[test]
fn diagonal_grows() {
    for s in 0..200 {
        assert!(variogram_diagonal(s + 1) > variogram_diagonal(s));
    }
}

#[test]
fn b_series_agree_where_both_are_defined() {
    for s in 0..=6 {
        for t in 0..=6 {
            let lag = Lag::new(s, t);
            let direct = b_st(lag, &cfg()).unwrap().value;
            match b_st_transformed(lag, &cfg()) {
                Ok(v) => assert!(
                    (v.value - direct).abs() <= 1e-9 * direct.abs().max(1.0),
                    "({s},{t}): {} vs {direct}",
                    v.value
                ),
                Err(_) => assert!(s > t && (s - t) % 2 == 1),
            }
        }
    }
}

#[test]
fn b_series_is_symmetric_in_the_lag() {
    for (s, t) in [(0, 3), (1, 4), (2, 7)] {
        let x = b_st(Lag::new(s, t), &cfg()).unwrap().value;
        let y = b_st(Lag::new(t, s), &cfg()).unwrap().value;
        assert!((x - y).abs() < 1e-13);
    }
}

#[test]
fn diagonal_b_matches_digamma_difference() {
    for s in 0..=10 {
        let v = b_st(Lag::new(s, s), &cfg()).unwrap().value;
        assert!((v - b_ss_closed(s)).abs() <= 1e-10);
    }
}

#[test]
fn symmetric_series_matches_diagonal_closed_form() {
    for s in 0..=10 {
        let v = variogram_symmetric(Lag::new(s, s), &cfg()).unwrap().value;
        assert!((v - variogram_diagonal(s)).abs() <= 1e-10);
    }
}

#[test]
fn near_unit_remainder_stays_bounded() {
    for lag in [Lag::new(0, 0), Lag::new(1, 1), Lag::new(2, 1)] {
        let p = eq11_params(lag);
        let ratio = |theta: f64| {
            let direct = hyp4f3_series(p.params(), 1.0 - theta, &cfg()).unwrap().value;
            let approx = zero_balanced_4f3_near_unit(lag, theta, &cfg()).unwrap();
            (direct - approx).abs() / (theta * theta.ln().abs())
        };
        let base = ratio(1e-2);
        for theta in [1e-3, 1e-4] {
            let r = ratio(theta);
            assert!(r <= 3.0 * base, "{lag:?} theta={theta}: {r} vs {base}");
        }
    }
}

#[test]
fn exact_path_matches_quadrature_on_a_sample() {
    let q = QuadratureSettings::default();
    for (a, b) in [(0.05, 0.2), (0.15, 0.15), (0.2, 0.1)] {
        let c = CoeffPair::new(a, b).unwrap();
        for (s, t) in [(0, 1), (2, 3), (4, 4)] {
            let lag = Lag::new(s, t);
            let e = variogram_exact(&c, lag, &cfg()).unwrap().value;
            let o = quadrature_variogram(&c, lag, &q).unwrap().value;
            assert!((e - o).abs() <= 1e-6, "({a},{b},{s},{t}): {e} vs {o}");
            let i = i_st(&c, lag, &cfg()).unwrap().value;
            let l = bessel_laplace_i_st(&c, lag, &q).unwrap().value;
            assert!((i - l).abs() <= 1e-8 * i.abs().max(1.0));
        }
    }
}

#[test]
fn edge_path_matches_quadrature_off_the_diagonal() {
    let c = CoeffPair::new(0.3, 0.2).unwrap();
    for lag in [Lag::new(1, 0), Lag::new(1, 1)] {
        let e = variogram_edge(0.3, lag, &cfg()).unwrap();
        let o = quadrature_variogram(&c, lag, &QuadratureSettings::default()).unwrap();
        assert!((e.value - o.value).abs() <= 1e-4);
        assert!((e.value - o.value).abs() <= e.est_error + o.error);
    }
}

#[test]
fn oracles_agree_with_each_other() {
    let q = QuadratureSettings::default();
    for a in [0.1, 0.2, 0.25] {
        for b in [0.1, 0.2, 0.25] {
            if a + b > 0.5 {
                continue;
            }
            let c = CoeffPair::new(a, b).unwrap();
            for s in 0..=3 {
                for t in 0..=3 {
                    let lag = Lag::new(s, t);
                    let x = quadrature_variogram(&c, lag, &q).unwrap().value;
                    let y = bessel_laplace_variogram(&c, lag, &q).unwrap().value;
                    assert!((x - y).abs() <= 1e-6, "({a},{b},{s},{t}): {x} vs {y}");
                }
            }
        }
    }
}

#[test]
fn quadrature_refinement_stays_within_reported_error() {
    let coarse = QuadratureSettings {
        abs_tol: 1e-7,
        rel_tol: 1e-7,
        ..QuadratureSettings::default()
    };
    let fine = QuadratureSettings {
        abs_tol: 5e-8,
        rel_tol: 5e-8,
        ..QuadratureSettings::default()
    };
    let cases = [(0.1, 0.1), (0.2, 0.25), (0.25, 0.25), (0.4, 0.05), (0.05, 0.3)];
    for (a, b) in cases {
        let c = CoeffPair::new(a, b).unwrap();
        for (s, t) in [(1, 0), (0, 2), (3, 1), (2, 2)] {
            let lag = Lag::new(s, t);
            let x = quadrature_variogram(&c, lag, &coarse).unwrap();
            let y = quadrature_variogram(&c, lag, &fine).unwrap();
            assert!((x.value - y.value).abs() <= x.error, "({a},{b},{s},{t})");
        }
    }
}
