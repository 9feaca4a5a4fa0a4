//! Counting analysis, coupling bounds and exclusion scans over λ/a².
//!
//! The neutron bound comes from inverting the expected CSL count against the
//! one-sided upper limit on the background-subtracted neutron excess. The
//! electron bound and the Fu radiation ceiling are external inputs; the lower
//! edge of the allowed λ/a² band comes from requiring a just-visible sphere to
//! collapse within a fraction of the human perception time.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{
    lambda_over_a2, CollapseParams, PhysicalConstants, RateDensity, M3_PER_KILO_M3,
    GRW_LAMBDA_OVER_A2, REFERENCE_R2_CM2, REFERENCE_R2_SPREAD,
};
use crate::deuteron::{mean_square_radius, BoundStateModel, ModelKind};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::rates::{expected_count, grw_count_coefficient, CountPrediction};
use crate::uncertainty::{
    combine_quadrature, from_rate_per_day, one_sided_upper_limit, scale, subtract, AsymmetricValue,
};

/// Upper limit on λ/a² from conduction-electron radiation in Ge (s⁻¹cm⁻²).
pub const FU_CEILING: f64 = 2.5;

/// Factor in the Ge 1s-ionization bound `|g_e − M_e/M_p| < 12·(M_e/M_p)` at GRW λ/a².
pub const ELECTRON_BOUND_FACTOR: f64 = 12.0;

/// Neutron events observed, with statistical and systematic error pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservedCounts {
    pub value: f64,
    pub stat_up: f64,
    pub stat_down: f64,
    pub syst_up: f64,
    pub syst_down: f64,
}

impl ObservedCounts {
    pub fn total(&self) -> Result<AsymmetricValue> {
        let stat = AsymmetricValue::new(self.value, self.stat_up, self.stat_down)?;
        let syst = AsymmetricValue::new(self.value, self.syst_up, self.syst_down)?;
        Ok(combine_quadrature(&stat, &syst))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub live_time_days: f64,
    pub fiducial_radius_m: f64,
    pub deuteron_density_per_cc: f64,
    pub efficiency: f64,
    pub observed: ObservedCounts,
    /// Expected background (solar-model) neutrons per day.
    pub background_rate_per_day: AsymmetricValue,
}

impl ExperimentConfig {
    /// The SNO neutral-current data set: 254.2 live days inside 5.5 m.
    pub fn sno() -> Self {
        ExperimentConfig {
            live_time_days: 254.2,
            fiducial_radius_m: 5.5,
            deuteron_density_per_cc: 2.0 / 3.0 * 1e23,
            efficiency: 0.40,
            observed: ObservedCounts {
                value: 1344.2,
                stat_up: 69.8,
                stat_down: 69.0,
                syst_up: 98.1,
                syst_down: 96.8,
            },
            background_rate_per_day: AsymmetricValue {
                central: 13.0,
                err_up: 2.6,
                err_down: 2.08,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("experiment.live_time_days", self.live_time_days),
            ("experiment.fiducial_radius_m", self.fiducial_radius_m),
            ("experiment.deuteron_density_per_cc", self.deuteron_density_per_cc),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, "finite and positive", v));
            }
        }
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(Error::invalid(
                "efficiency",
                "in (0,1]",
                self.efficiency,
            ));
        }
        self.observed.total()?;
        let b = self.background_rate_per_day;
        AsymmetricValue::new(b.central, b.err_up, b.err_down)?;
        Ok(())
    }

    pub fn live_time_years(&self, pc: &PhysicalConstants) -> f64 {
        self.live_time_days * pc.seconds_per_day / pc.seconds_per_year
    }

    /// (4π/3)r³ in units of 10³ m³.
    pub fn fiducial_volume_kilo_m3(&self) -> f64 {
        4.0 * PI / 3.0 * self.fiducial_radius_m.powi(3) / M3_PER_KILO_M3
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::sno()
    }
}

/// A just-visible sphere in a superposition of two touching positions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereVisibilityConfig {
    pub diameter_cm: f64,
    pub nucleon_count: f64,
    pub perception_time_s: f64,
    /// Fraction of the perception time within which collapse must happen.
    pub collapse_margin: f64,
}

impl SphereVisibilityConfig {
    /// d = 4·10⁻⁵ cm, N = 2·10¹⁰ nucleons, collapse within 0.1 s.
    pub fn just_visible() -> Self {
        SphereVisibilityConfig {
            diameter_cm: 4e-5,
            nucleon_count: 2e10,
            perception_time_s: 0.1,
            collapse_margin: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("sphere.diameter_cm", self.diameter_cm),
            ("sphere.nucleon_count", self.nucleon_count),
            ("sphere.perception_time_s", self.perception_time_s),
            ("sphere.margin", self.collapse_margin),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, "finite and positive", v));
            }
        }
        Ok(())
    }

    /// Longest tolerated collapse time, in s.
    pub fn collapse_time_budget(&self) -> f64 {
        self.perception_time_s * self.collapse_margin
    }

    pub fn volume_cm3(&self) -> f64 {
        PI / 6.0 * self.diameter_cm.powi(3)
    }
}

impl Default for SphereVisibilityConfig {
    fn default() -> Self {
        Self::just_visible()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountSummary {
    pub n_expt: AsymmetricValue,
    pub n_ssm: AsymmetricValue,
    pub n_csl: AsymmetricValue,
}

/// Efficiency-corrected observed count, background expectation and their
/// difference.
pub fn net_csl_counts(e: &ExperimentConfig) -> Result<CountSummary> {
    e.validate()?;
    let n_expt = scale(&e.observed.total()?, 1.0 / e.efficiency)?;
    let n_ssm = from_rate_per_day(&e.background_rate_per_day, e.live_time_days)?;
    let n_csl = subtract(&n_expt, &n_ssm);
    Ok(CountSummary {
        n_expt,
        n_ssm,
        n_csl,
    })
}

/// Rounds a positive value up to one significant digit (0.0074 → 0.008).
pub fn round_up_one_significant(x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 || x.is_infinite() {
        return x.max(0.0);
    }
    let mut exponent = x.log10().floor() as i32;
    let mut digit = (x / 10f64.powi(exponent) * (1.0 - 1e-12)).ceil();
    if digit >= 10.0 {
        digit = 1.0;
        exponent += 1;
    }
    let rounded = if exponent < 0 {
        digit / 10f64.powi(-exponent)
    } else {
        digit * 10f64.powi(exponent)
    };
    // log10 can land one decade low right at a power of ten
    if rounded < x {
        round_up_one_significant(x * (1.0 + 1e-12))
    } else {
        rounded
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeutronBound {
    /// Bound on |g_n − M_n/M_p|.
    pub bound: f64,
    /// `bound` rounded up to one significant digit.
    pub rounded: f64,
}

/// Largest |g_n − M_n/M_p| whose expected count stays below `n_limit`.
pub fn neutron_coupling_bound(
    n_limit: f64,
    ld: RateDensity,
    coefficient: f64,
    t_yr: f64,
    v_kilo_m3: f64,
) -> Result<NeutronBound> {
    if !(n_limit.is_finite() && n_limit >= 0.0) {
        return Err(Error::invalid("n_limit", "finite and non-negative", n_limit));
    }
    if !(coefficient.is_finite() && coefficient > 0.0) {
        return Err(Error::invalid("coefficient", "finite and positive", coefficient));
    }
    for (name, v) in [("live time", t_yr), ("volume", v_kilo_m3)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::invalid(name, "finite and positive", v));
        }
    }
    let at_grw = (n_limit / (coefficient * t_yr * v_kilo_m3)).sqrt();
    let bound = at_grw * (GRW_LAMBDA_OVER_A2 / ld.value()).sqrt();
    Ok(NeutronBound {
        bound,
        rounded: round_up_one_significant(bound),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElectronBound {
    /// Bound on |g_e − M_e/M_p|.
    pub bound: f64,
    /// Upper edge of the allowed g_e range.
    pub ge_ceiling: f64,
}

pub fn electron_coupling_bound(ld: RateDensity, pc: &PhysicalConstants) -> ElectronBound {
    let bound = ELECTRON_BOUND_FACTOR * pc.m_e_over_m_p * (GRW_LAMBDA_OVER_A2 / ld.value()).sqrt();
    ElectronBound {
        bound,
        ge_ceiling: pc.m_e_over_m_p + bound,
    }
}

/// Floor on λ/a² for a ≫ d/2: `[λN²d²/4a²]⁻¹ < budget`.
pub fn visibility_floor_large_a(s: &SphereVisibilityConfig) -> Result<RateDensity> {
    s.validate()?;
    let n = s.nucleon_count;
    RateDensity::new(4.0 / (s.collapse_time_budget() * n * n * s.diameter_cm * s.diameter_cm))
}

/// Floor on λ/a² for a ≪ d/2: `[λN²a³(4π)^{3/2}/V]⁻¹ < budget`.
pub fn visibility_floor_small_a(s: &SphereVisibilityConfig, a_cm: f64) -> Result<RateDensity> {
    s.validate()?;
    if !(a_cm.is_finite() && a_cm > 0.0) {
        return Err(Error::invalid("a_cm", "finite and positive", a_cm));
    }
    let n = s.nucleon_count;
    let four_pi_32 = (4.0 * PI).powf(1.5);
    RateDensity::new(
        s.volume_cm3() / (s.collapse_time_budget() * n * n * a_cm.powi(5) * four_pi_32),
    )
}

/// Which visibility formula matches the localization length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// a > d/2
    LargeA,
    /// a ≤ d/2
    SmallA,
}

impl Regime {
    pub fn classify(a_cm: f64, s: &SphereVisibilityConfig) -> Regime {
        if a_cm > 0.5 * s.diameter_cm {
            Regime::LargeA
        } else {
            Regime::SmallA
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log_spacing: bool,
}

impl Default for ScanSpec {
    /// Ten points per decade from 1e-11 to 10 s⁻¹cm⁻².
    fn default() -> Self {
        ScanSpec {
            min: 1e-11,
            max: 10.0,
            points: 121,
            log_spacing: true,
        }
    }
}

impl ScanSpec {
    pub fn grid(&self) -> Result<Vec<f64>> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min > 0.0 && self.min < self.max)
        {
            return Err(Error::InvalidRange(format!(
                "scan range must satisfy 0 < min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidRange(format!(
                "scan needs at least 2 points, got {}",
                self.points
            )));
        }
        let last = (self.points - 1) as f64;
        let grid = if self.log_spacing {
            let (lo, hi) = (self.min.log10(), self.max.log10());
            (0..self.points)
                .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / last))
                .collect()
        } else {
            (0..self.points)
                .map(|i| self.min + (self.max - self.min) * i as f64 / last)
                .collect()
        };
        Ok(grid)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExclusionPoint {
    pub lambda_over_a2: f64,
    pub gn_bound: f64,
    pub ge_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExclusionCurve {
    pub points: Vec<ExclusionPoint>,
    pub theoretical_floor: f64,
    pub experimental_ceiling: f64,
}

/// Bounds on |g_n − M_n/M_p| and |g_e − M_e/M_p| across the λ/a² grid.
pub fn scan_exclusion(a: &Analysis) -> Result<ExclusionCurve> {
    let counts = net_csl_counts(&a.experiment)?;
    let n_limit = one_sided_upper_limit(&counts.n_csl, a.n_sigma);
    let coefficient =
        grw_count_coefficient(a.experiment.deuteron_density_per_cc, &a.model, &a.constants);
    let t_yr = a.experiment.live_time_years(&a.constants);
    let v = a.experiment.fiducial_volume_kilo_m3();

    let floor = visibility_floor_large_a(&a.sphere)?
        .value()
        .max(visibility_floor_small_a(&a.sphere, a.collapse.a_length())?.value());
    if !(a.fu_ceiling.is_finite() && a.fu_ceiling > 0.0) {
        return Err(Error::invalid("ceiling", "finite and positive", a.fu_ceiling));
    }
    if floor > a.fu_ceiling {
        return Err(Error::InvalidRange(format!(
            "theoretical floor {floor:e} exceeds the experimental ceiling {:e}",
            a.fu_ceiling
        )));
    }

    let points = a
        .scan
        .grid()?
        .into_iter()
        .map(|ld| {
            let density = RateDensity::new(ld)?;
            Ok(ExclusionPoint {
                lambda_over_a2: ld,
                gn_bound: neutron_coupling_bound(n_limit, density, coefficient, t_yr, v)?.bound,
                ge_bound: electron_coupling_bound(density, &a.constants).bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ExclusionCurve {
        points,
        theoretical_floor: floor,
        experimental_ceiling: a.fu_ceiling,
    })
}

/// Everything the end-to-end analysis needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub collapse: CollapseParams,
    pub experiment: ExperimentConfig,
    pub sphere: SphereVisibilityConfig,
    pub scan: ScanSpec,
    pub model: BoundStateModel,
    pub constants: PhysicalConstants,
    pub quadrature: QuadratureSpec,
    pub n_sigma: f64,
    pub fu_ceiling: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub kind: ModelKind,
    pub binding_energy_mev: f64,
    pub kappa_per_fm: f64,
    pub beta_per_fm: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n_expt: AsymmetricValue,
    pub n_ssm: AsymmetricValue,
    pub n_csl: AsymmetricValue,
    pub n_sigma: f64,
    pub n_limit: f64,
    pub live_time_yr: f64,
    pub volume_kilo_m3: f64,
    pub count_coefficient: f64,
    pub gn_bound_at_grw: f64,
    pub rounded_bound: f64,
    pub ge_bound_at_grw: f64,
    pub ge_ceiling_at_grw: f64,
    /// Fractional width of the g_e bound over that of the g_n bound, at GRW.
    pub strength_ratio: f64,
    pub lambda_over_a2: f64,
    pub gn_bound_at_configured: f64,
    pub ge_bound_at_configured: f64,
    pub large_a_floor: f64,
    pub small_a_floor: f64,
    pub regime: Regime,
    pub model: ModelSummary,
    pub model_r2_cm2: f64,
    pub curve: ExclusionCurve,
    pub warnings: Vec<String>,
}

/// Composes counting, inversion, theoretical constraints and the scan.
pub fn run_full_analysis(a: &Analysis) -> Result<AnalysisReport> {
    if !(a.n_sigma.is_finite() && a.n_sigma >= 0.0) {
        return Err(Error::invalid("n_sigma", "finite and non-negative", a.n_sigma));
    }
    let pc = &a.constants;
    let counts = net_csl_counts(&a.experiment)?;
    let n_limit = one_sided_upper_limit(&counts.n_csl, a.n_sigma);
    let coefficient = grw_count_coefficient(a.experiment.deuteron_density_per_cc, &a.model, pc);
    let t_yr = a.experiment.live_time_years(pc);
    let v = a.experiment.fiducial_volume_kilo_m3();

    let grw = RateDensity::grw();
    let configured = lambda_over_a2(&a.collapse);
    let gn_grw = neutron_coupling_bound(n_limit, grw, coefficient, t_yr, v)?;
    let gn_cfg = neutron_coupling_bound(n_limit, configured, coefficient, t_yr, v)?;
    let ge_grw = electron_coupling_bound(grw, pc);
    let ge_cfg = electron_coupling_bound(configured, pc);

    let strength_ratio =
        (ge_grw.bound / pc.m_e_over_m_p) / (gn_grw.bound / pc.m_n_over_m_p);

    let large_a_floor = visibility_floor_large_a(&a.sphere)?.value();
    let small_a_floor = visibility_floor_small_a(&a.sphere, a.collapse.a_length())?.value();
    let regime = Regime::classify(a.collapse.a_length(), &a.sphere);

    let model_r2_cm2 = mean_square_radius(&a.model, &a.quadrature)?;
    let curve = scan_exclusion(a)?;

    let mut warnings = Vec::new();
    let spread = model_r2_cm2 / REFERENCE_R2_CM2 - 1.0;
    if spread.abs() > REFERENCE_R2_SPREAD {
        warnings.push(format!(
            "model-spread: {} model <r^2> = {:.3e} cm^2 deviates from the reference (3e-13 cm)^2 \
             by {:+.1}% (more than {:.0}%)",
            a.model.kind(),
            model_r2_cm2,
            100.0 * spread,
            100.0 * REFERENCE_R2_SPREAD
        ));
    }
    if counts.n_csl.central < 0.0 {
        warnings.push(format!(
            "negative-excess: background-subtracted count {:.1} is below zero",
            counts.n_csl.central
        ));
    }
    let ratio = a.collapse.a_length() / (0.5 * a.sphere.diameter_cm);
    if (0.1..=10.0).contains(&ratio) {
        warnings.push(format!(
            "regime: a/(d/2) = {ratio:.3} is neither large nor small; both visibility floors are \
             indicative only"
        ));
    }
    if configured.value() < curve.theoretical_floor || configured.value() > curve.experimental_ceiling {
        warnings.push(format!(
            "outside-band: configured lambda/a^2 = {:e} lies outside [{:e}, {:e}]",
            configured.value(),
            curve.theoretical_floor,
            curve.experimental_ceiling
        ));
    }

    Ok(AnalysisReport {
        n_expt: counts.n_expt,
        n_ssm: counts.n_ssm,
        n_csl: counts.n_csl,
        n_sigma: a.n_sigma,
        n_limit,
        live_time_yr: t_yr,
        volume_kilo_m3: v,
        count_coefficient: coefficient,
        gn_bound_at_grw: gn_grw.bound,
        rounded_bound: gn_grw.rounded,
        ge_bound_at_grw: ge_grw.bound,
        ge_ceiling_at_grw: ge_grw.ge_ceiling,
        strength_ratio,
        lambda_over_a2: configured.value(),
        gn_bound_at_configured: gn_cfg.bound,
        ge_bound_at_configured: ge_cfg.bound,
        large_a_floor,
        small_a_floor,
        regime,
        model: ModelSummary {
            kind: a.model.kind(),
            binding_energy_mev: a.model.binding_energy(),
            kappa_per_fm: a.model.kappa(),
            beta_per_fm: a.model.beta(),
        },
        model_r2_cm2,
        curve,
        warnings,
    })
}

/// Expected CSL count in the configured experiment for the configured g_n.
pub fn predict_count(a: &Analysis) -> Result<CountPrediction> {
    a.experiment.validate()?;
    expected_count(
        &a.collapse,
        a.experiment.live_time_years(&a.constants),
        a.experiment.fiducial_volume_kilo_m3(),
        a.experiment.deuteron_density_per_cc,
        &a.model,
        &a.constants,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_up() {
        assert_eq!(round_up_one_significant(0.0074), 0.008);
        assert_eq!(round_up_one_significant(0.00748), 0.008);
        assert_eq!(round_up_one_significant(0.008), 0.008);
        assert_eq!(round_up_one_significant(0.0091), 0.01);
        assert_eq!(round_up_one_significant(0.74), 0.8);
        assert_eq!(round_up_one_significant(12.0), 20.0);
        assert_eq!(round_up_one_significant(1.0), 1.0);
        assert_eq!(round_up_one_significant(0.001), 0.001);
        assert_eq!(round_up_one_significant(0.0), 0.0);
    }

    #[test]
    fn null_experiment() {
        let mut e = ExperimentConfig::sno();
        e.observed = ObservedCounts {
            value: 0.0,
            stat_up: 0.0,
            stat_down: 0.0,
            syst_up: 0.0,
            syst_down: 0.0,
        };
        e.background_rate_per_day = AsymmetricValue::exact(0.0);
        let c = net_csl_counts(&e).unwrap();
        assert_eq!(c.n_csl, AsymmetricValue::exact(0.0));
    }

    #[test]
    fn efficiency_scales_inversely() {
        let base = net_csl_counts(&ExperimentConfig::sno()).unwrap();
        let mut e = ExperimentConfig::sno();
        e.efficiency = 0.80;
        let doubled = net_csl_counts(&e).unwrap();
        assert!((doubled.n_expt.central * 2.0 - base.n_expt.central).abs() < 1e-9);
        e.efficiency = 0.0;
        assert!(net_csl_counts(&e).is_err());
        e.efficiency = 1.2;
        assert!(net_csl_counts(&e).is_err());
    }

    #[test]
    fn zero_limit_forces_mass_proportionality() {
        let b = neutron_coupling_bound(0.0, RateDensity::grw(), 2.4e7, 0.7, 0.7).unwrap();
        assert_eq!(b.bound, 0.0);
        assert!(neutron_coupling_bound(1.0, RateDensity::grw(), 0.0, 0.7, 0.7).is_err());
        assert!(neutron_coupling_bound(-1.0, RateDensity::grw(), 1.0, 0.7, 0.7).is_err());
    }

    #[test]
    fn electron_bound_scaling() {
        let pc = PhysicalConstants::standard();
        let b1 = electron_coupling_bound(RateDensity::grw(), &pc);
        let b4 = electron_coupling_bound(RateDensity::new(4e-6).unwrap(), &pc);
        assert!((b1.bound / b4.bound - 2.0).abs() < 1e-14);
        assert!((b1.ge_ceiling / pc.m_e_over_m_p - 13.0).abs() < 1e-12);
    }

    #[test]
    fn visibility_floor_scalings() {
        let s = SphereVisibilityConfig::just_visible();
        let base = visibility_floor_large_a(&s).unwrap().value();
        let mut heavy = s;
        heavy.nucleon_count *= 4.0;
        assert!((base / visibility_floor_large_a(&heavy).unwrap().value() - 16.0).abs() < 1e-12);
        let mut slow = s;
        slow.perception_time_s *= 2.0;
        assert!((base / visibility_floor_large_a(&slow).unwrap().value() - 2.0).abs() < 1e-12);
        let f1 = visibility_floor_small_a(&s, 1e-5).unwrap().value();
        let f2 = visibility_floor_small_a(&s, 2e-5).unwrap().value();
        assert!((f1 / f2 - 32.0).abs() < 1e-10);
        assert!(visibility_floor_small_a(&s, 0.0).is_err());
    }

    #[test]
    fn regimes() {
        let s = SphereVisibilityConfig::just_visible();
        assert_eq!(Regime::classify(1e-5, &s), Regime::SmallA);
        assert_eq!(Regime::classify(1e-3, &s), Regime::LargeA);
    }

    #[test]
    fn scan_grid_validation() {
        let bad = ScanSpec {
            min: 1.0,
            max: 1.0,
            points: 10,
            log_spacing: true,
        };
        assert!(bad.grid().is_err());
        let few = ScanSpec {
            points: 1,
            ..ScanSpec::default()
        };
        assert!(few.grid().is_err());
        let lin = ScanSpec {
            min: 1.0,
            max: 3.0,
            points: 3,
            log_spacing: false,
        };
        assert_eq!(lin.grid().unwrap(), vec![1.0, 2.0, 3.0]);
        let g = ScanSpec::default().grid().unwrap();
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g.iter().any(|&x| (x / 1e-6 - 1.0).abs() < 1e-9));
    }
}
