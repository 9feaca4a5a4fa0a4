//! Adaptive Gauss–Kronrod quadrature on finite intervals and half-lines.
//!
//! The integrator bisects the sub-interval with the largest error estimate
//! until the summed estimate drops below `max(rel_tol·|I|, abs_tol)`.
//! Half-lines are mapped onto `[0, 1)` with `x = x0 + s·t/(1 − t)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and subdivision budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol.is_finite() && rel_tol > 0.0) {
            return Err(Error::invalid("rel_tol", "finite and positive", rel_tol));
        }
        if !(abs_tol.is_finite() && abs_tol >= 0.0) {
            return Err(Error::invalid("abs_tol", "finite and non-negative", abs_tol));
        }
        if max_subdivisions < 1 {
            return Err(Error::invalid(
                "max_subdivisions",
                "at least 1",
                max_subdivisions as f64,
            ));
        }
        Ok(QuadratureSpec {
            rel_tol,
            abs_tol,
            max_subdivisions,
        })
    }

    fn target(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_tol)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-9,
            abs_tol: 0.0,
            max_subdivisions: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// `[a, b]` with `a < b`.
    Interval(f64, f64),
    /// `[start, ∞)`. `scale` sets where the mapped variable puts its midpoint,
    /// and should match the decay length of the integrand.
    HalfLine { start: f64, scale: f64 },
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    /// Integral of `|f|`, useful when the signed value suffers cancellation.
    pub abs_value: f64,
    pub evaluations: usize,
}

#[allow(clippy::excessive_precision)]
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
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

fn checked<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFiniteIntegrand { x })
    }
}

/// 21-point Kronrod rule with the embedded 10-point Gauss rule, QUADPACK
/// error scaling.
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = checked(f, center)?;
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = checked(f, center - dx)?;
        let f2 = checked(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }

    Ok(Segment {
        a,
        b,
        value,
        error,
        abs_value: res_abs,
    })
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, q: &QuadratureSpec) -> Result<Estimate> {
    let mut segments = vec![gk21(f, a, b)?];
    let mut evaluations = 21;
    let mut subdivisions = 0;

    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= q.target(value) {
            let abs_value = segments.iter().map(|s| s.abs_value).sum();
            return Ok(Estimate {
                value,
                error,
                abs_value,
                evaluations,
            });
        }
        if subdivisions >= q.max_subdivisions {
            return Err(Error::NonConvergence {
                result: value,
                error,
                subdivisions,
            });
        }

        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // interval cannot be split further in floating point
            return Err(Error::NonConvergence {
                result: value,
                error,
                subdivisions,
            });
        }
        segments.push(gk21(f, seg.a, mid)?);
        segments.push(gk21(f, mid, seg.b)?);
        evaluations += 42;
        subdivisions += 1;
    }
}

/// Integrates `f` over `domain` to the tolerance in `q`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, domain: Domain, q: &QuadratureSpec) -> Result<Estimate> {
    match domain {
        Domain::Interval(a, b) => {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::InvalidRange(format!(
                    "integration interval [{a}, {b}] must be finite with a < b"
                )));
            }
            adaptive(&f, a, b, q)
        }
        Domain::HalfLine { start, scale } => {
            if !start.is_finite() || !(scale.is_finite() && scale > 0.0) {
                return Err(Error::InvalidRange(format!(
                    "half-line start {start} and scale {scale} must be finite, scale > 0"
                )));
            }
            let mapped = |t: f64| {
                let one_minus = 1.0 - t;
                let x = start + scale * t / one_minus;
                let y = f(x);
                // the integrand has decayed to zero where the map runs off to infinity
                if y == 0.0 {
                    0.0
                } else {
                    y * scale / (one_minus * one_minus)
                }
            };
            adaptive(&mapped, 0.0, 1.0, q)
        }
    }
}

/// Integrates an oscillatory `f` over `[a, b]` split into `pieces` equal
/// sub-intervals. The tolerance is taken relative to `∫|f|` over the whole
/// interval, so strong cancellation does not force endless refinement.
pub fn integrate_oscillatory<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    pieces: usize,
    q: &QuadratureSpec,
) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidRange(format!(
            "integration interval [{a}, {b}] must be finite with a < b"
        )));
    }
    let pieces = pieces.max(1);
    let width = (b - a) / pieces as f64;
    let bounds = |i: usize| {
        let lo = a + width * i as f64;
        let hi = if i + 1 == pieces { b } else { a + width * (i + 1) as f64 };
        (lo, hi)
    };

    let mut first = Vec::with_capacity(pieces);
    for i in 0..pieces {
        let (lo, hi) = bounds(i);
        first.push(gk21(&f, lo, hi)?);
    }
    let norm: f64 = first.iter().map(|s| s.abs_value).sum();
    let target = (q.rel_tol * norm).max(q.abs_tol);
    let piece_spec = QuadratureSpec {
        rel_tol: q.rel_tol,
        abs_tol: target / pieces as f64,
        max_subdivisions: q.max_subdivisions,
    };

    let mut total = Estimate {
        value: 0.0,
        error: 0.0,
        abs_value: 0.0,
        evaluations: 0,
    };
    for (i, seg) in first.iter().enumerate() {
        let est = if seg.error <= piece_spec.target(seg.value) {
            Estimate {
                value: seg.value,
                error: seg.error,
                abs_value: seg.abs_value,
                evaluations: 21,
            }
        } else {
            let (lo, hi) = bounds(i);
            let mut e = adaptive(&f, lo, hi, &piece_spec)?;
            e.evaluations += 21;
            e
        };
        total.value += est.value;
        total.error += est.error;
        total.abs_value += est.abs_value;
        total.evaluations += est.evaluations;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_half_line() {
        let q = QuadratureSpec::default();
        let e = integrate(|r: f64| (-r).exp(), Domain::HalfLine { start: 0.0, scale: 1.0 }, &q)
            .unwrap();
        assert!((e.value - 1.0).abs() < 1e-10, "{e:?}");
    }

    #[test]
    fn second_moment_half_line() {
        let q = QuadratureSpec::default();
        let e = integrate(
            |r: f64| r * r * (-2.0 * r).exp(),
            Domain::HalfLine { start: 0.0, scale: 1.0 },
            &q,
        )
        .unwrap();
        assert!((e.value - 0.25).abs() < 1e-10, "{e:?}");
    }

    #[test]
    fn finite_interval_polynomial_is_exact() {
        let q = QuadratureSpec::default();
        let e = integrate(|x: f64| x.powi(5) - 3.0 * x, Domain::Interval(-1.0, 2.0), &q).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - 1.5 * (4.0 - 1.0);
        assert!((e.value - exact).abs() < 1e-13);
        assert_eq!(e.evaluations, 21);
    }

    #[test]
    fn shifted_half_line() {
        let q = QuadratureSpec::default();
        let e = integrate(|x: f64| (-x).exp(), Domain::HalfLine { start: 2.0, scale: 1.0 }, &q)
            .unwrap();
        assert!((e.value - (-2.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_matches_closed_form() {
        // ∫₀^40 e^{-x/4} sin(7x) dx
        let q = QuadratureSpec::default();
        let e = integrate_oscillatory(|x: f64| (-x / 4.0).exp() * (7.0 * x).sin(), 0.0, 40.0, 45, &q)
            .unwrap();
        let (a, w): (f64, f64) = (0.25, 7.0);
        let end = 40.0;
        let exact = (w - (-a * end).exp() * (a * (w * end).sin() + w * (w * end).cos()))
            / (a * a + w * w);
        assert!((e.value - exact).abs() < 1e-10, "{} vs {}", e.value, exact);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let q = QuadratureSpec::default();
        let err = integrate(|x: f64| 1.0 / x, Domain::Interval(-1.0, 1.0), &q);
        // the midpoint of [-1, 1] is sampled by the 21-point rule
        assert!(matches!(err, Err(Error::NonFiniteIntegrand { .. })));
        let err = integrate(|_| f64::NAN, Domain::Interval(0.0, 1.0), &q);
        assert!(matches!(err, Err(Error::NonFiniteIntegrand { .. })));
    }

    #[test]
    fn subdivision_budget_exhaustion() {
        let q = QuadratureSpec::new(1e-12, 0.0, 1).unwrap();
        let err = integrate(|x: f64| x.abs().sqrt(), Domain::Interval(-1.0, 0.3), &q);
        assert!(matches!(err, Err(Error::NonConvergence { .. })), "{err:?}");
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 0.0, 10).is_err());
        assert!(QuadratureSpec::new(1e-6, -1.0, 10).is_err());
        assert!(QuadratureSpec::new(1e-6, 0.0, 0).is_err());
        assert!(integrate(|x| x, Domain::Interval(1.0, 0.0), &QuadratureSpec::default()).is_err());
    }
}
