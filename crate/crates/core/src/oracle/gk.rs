//! Adaptive Gauss–Kronrod (10/21-point) quadrature on finite intervals.

use crate::series::CompensatedSum;
use crate::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_643_843_925,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn rule<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kron = WGK[10] * fc;
    let mut gauss = 0.0;
    for i in 0..10 {
        let dx = h * XGK[i];
        let pair = f(c - dx)? + f(c + dx)?;
        kron += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kron * h,
        error: ((kron - gauss) * h).abs(),
    })
}

/// Result of a numerical integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureValue {
    pub value: f64,
    pub error: f64,
}

/// Integrates `f` over `[points[0], points[last]]`, starting from the given panels.
///
/// The worst panel is bisected until the summed error estimate meets
/// `max(abs_tol, rel_tol |I|)`. Panels are summed in left-to-right order.
pub fn integrate<F>(
    mut f: F,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadratureValue>
where
    F: FnMut(f64) -> Result<f64>,
{
    assert!(points.len() >= 2);
    let mut panels = Vec::with_capacity(points.len() + 64);
    for w in points.windows(2) {
        if w[1] > w[0] {
            panels.push(rule(&mut f, w[0], w[1])?);
        }
    }
    let total = |panels: &[Panel]| {
        let mut sorted: Vec<Panel> = panels.to_vec();
        sorted.sort_by(|p, q| p.a.total_cmp(&q.a));
        let v: CompensatedSum = sorted.iter().map(|p| p.value).collect();
        let e: f64 = sorted.iter().map(|p| p.error).sum();
        QuadratureValue {
            value: v.value(),
            error: e,
        }
    };
    let mut splits = 0;
    loop {
        let q = total(&panels);
        if q.error <= abs_tol.max(rel_tol * q.value.abs()) {
            return Ok(q);
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.b - p.a > 1e-13 * (p.a.abs() + p.b.abs()).max(1e-300))
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i);
        let Some(i) = worst.filter(|_| splits < max_subdivisions) else {
            return Err(Error::ToleranceNotReached {
                value: q.value,
                error: q.error,
            });
        };
        let p = panels.swap_remove(i);
        let mid = 0.5 * (p.a + p.b);
        panels.push(rule(&mut f, p.a, mid)?);
        panels.push(rule(&mut f, mid, p.b)?);
        splits += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let q = integrate(|x| Ok(x.powi(30)), &[0.0, 1.0], 1e-15, 1e-15, 10).unwrap();
        assert!((q.value - 1.0 / 31.0).abs() < 1e-16);
    }

    #[test]
    fn adapts_to_a_peak() {
        let eps: f64 = 1e-4;
        let f = |x: f64| Ok(eps / (x * x + eps * eps));
        let q = integrate(f, &[-1.0, 1.0], 1e-12, 1e-12, 500).unwrap();
        let want = 2.0 * (1.0 / eps).atan();
        assert!((q.value - want).abs() < 1e-11, "{q:?}");
    }

    #[test]
    fn reports_failure() {
        let f = |x: f64| Ok(1.0 / x.abs().sqrt().max(1e-300));
        let e = integrate(f, &[-1.0, 1.0], 1e-14, 1e-14, 5);
        assert!(matches!(e, Err(Error::ToleranceNotReached { .. })));
    }
}
