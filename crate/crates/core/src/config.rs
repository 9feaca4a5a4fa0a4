//! JSON run configuration. Every key is optional; absent sections fall back
//! to the GRW collapse parameters, the SNO data set and the just-visible
//! sphere.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants::{CollapseParams, PhysicalConstants, DEUTERON_BINDING_MEV, GRW_A, GRW_LAMBDA};
use crate::deuteron::{build_hulthen, build_zero_range, ModelKind, DEFAULT_BETA_OVER_KAPPA};
use crate::limits::{
    Analysis, ExperimentConfig, ObservedCounts, ScanSpec, SphereVisibilityConfig, FU_CEILING,
};
use crate::quadrature::QuadratureSpec;
use crate::uncertainty::AsymmetricValue;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Invalid(#[from] crate::error::Error),
}

impl ConfigError {
    pub fn code(&self) -> &'static str {
        match self {
            ConfigError::Syntax { .. } => "config-syntax",
            ConfigError::Schema { .. } => "config-schema",
            ConfigError::Invalid(_) => "config-invalid",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CollapseSection {
    pub lambda_per_sec: f64,
    pub a_cm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_n: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_e: Option<f64>,
}

impl Default for CollapseSection {
    fn default() -> Self {
        CollapseSection {
            lambda_per_sec: GRW_LAMBDA,
            a_cm: GRW_A,
            g_n: None,
            g_e: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ObservedSection {
    pub value: f64,
    pub stat_up: f64,
    pub stat_down: f64,
    pub syst_up: f64,
    pub syst_down: f64,
}

impl Default for ObservedSection {
    fn default() -> Self {
        let o = ExperimentConfig::sno().observed;
        ObservedSection {
            value: o.value,
            stat_up: o.stat_up,
            stat_down: o.stat_down,
            syst_up: o.syst_up,
            syst_down: o.syst_down,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RateSection {
    pub value: f64,
    pub up: f64,
    pub down: f64,
}

impl Default for RateSection {
    fn default() -> Self {
        let b = ExperimentConfig::sno().background_rate_per_day;
        RateSection {
            value: b.central,
            up: b.err_up,
            down: b.err_down,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSection {
    pub live_time_days: f64,
    pub fiducial_radius_m: f64,
    pub deuteron_density_per_cc: f64,
    pub efficiency: f64,
    pub observed: ObservedSection,
    pub ssm_rate_per_day: RateSection,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        let e = ExperimentConfig::sno();
        ExperimentSection {
            live_time_days: e.live_time_days,
            fiducial_radius_m: e.fiducial_radius_m,
            deuteron_density_per_cc: e.deuteron_density_per_cc,
            efficiency: e.efficiency,
            observed: ObservedSection::default(),
            ssm_rate_per_day: RateSection::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SphereSection {
    pub diameter_cm: f64,
    pub nucleon_count: f64,
    pub perception_time_s: f64,
    pub margin: f64,
}

impl Default for SphereSection {
    fn default() -> Self {
        let s = SphereVisibilityConfig::just_visible();
        SphereSection {
            diameter_cm: s.diameter_cm,
            nucleon_count: s.nucleon_count,
            perception_time_s: s.perception_time_s,
            margin: s.collapse_margin,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanSection {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log_spacing: bool,
}

impl Default for ScanSection {
    fn default() -> Self {
        let s = ScanSpec::default();
        ScanSection {
            min: s.min,
            max: s.max,
            points: s.points,
            log_spacing: s.log_spacing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub kind: ModelKind,
    pub binding_energy_mev: f64,
    pub beta_over_kappa: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        ModelSection {
            kind: ModelKind::ZeroRange,
            binding_energy_mev: DEUTERON_BINDING_MEV,
            beta_over_kappa: DEFAULT_BETA_OVER_KAPPA,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub collapse: CollapseSection,
    pub experiment: ExperimentSection,
    pub sphere: SphereSection,
    pub scan: ScanSection,
    pub model: ModelSection,
    pub n_sigma: f64,
    /// Experimental upper limit on λ/a² (s⁻¹cm⁻²).
    pub fu_ceiling: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            collapse: CollapseSection::default(),
            experiment: ExperimentSection::default(),
            sphere: SphereSection::default(),
            scan: ScanSection::default(),
            model: ModelSection::default(),
            n_sigma: 1.0,
            fu_ceiling: FU_CEILING,
        }
    }
}

/// Parses and validates a JSON configuration document.
pub fn parse_config(document: &[u8]) -> Result<RunConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_slice(document);
    let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Data => ConfigError::Schema {
                path,
                message: strip_position(&inner.to_string()),
            },
            _ => ConfigError::Syntax {
                line: inner.line(),
                column: inner.column(),
                message: strip_position(&inner.to_string()),
            },
        }
    })?;
    cfg.to_analysis()?;
    Ok(cfg)
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn collapse_params(&self) -> crate::error::Result<CollapseParams> {
        let c = &self.collapse;
        let mut p = CollapseParams::new(c.lambda_per_sec, c.a_cm)?;
        if let Some(g) = c.g_n {
            p = p.with_g_n(g)?;
        }
        if let Some(g) = c.g_e {
            p = p.with_g_e(g)?;
        }
        Ok(p)
    }

    /// Builds validated domain objects from the document.
    pub fn to_analysis(&self) -> crate::error::Result<Analysis> {
        let constants = PhysicalConstants::standard();
        let collapse = self.collapse_params()?;

        let e = &self.experiment;
        let experiment = ExperimentConfig {
            live_time_days: e.live_time_days,
            fiducial_radius_m: e.fiducial_radius_m,
            deuteron_density_per_cc: e.deuteron_density_per_cc,
            efficiency: e.efficiency,
            observed: ObservedCounts {
                value: e.observed.value,
                stat_up: e.observed.stat_up,
                stat_down: e.observed.stat_down,
                syst_up: e.observed.syst_up,
                syst_down: e.observed.syst_down,
            },
            background_rate_per_day: AsymmetricValue::new(
                e.ssm_rate_per_day.value,
                e.ssm_rate_per_day.up,
                e.ssm_rate_per_day.down,
            )?,
        };
        experiment.validate()?;

        let sphere = SphereVisibilityConfig {
            diameter_cm: self.sphere.diameter_cm,
            nucleon_count: self.sphere.nucleon_count,
            perception_time_s: self.sphere.perception_time_s,
            collapse_margin: self.sphere.margin,
        };
        sphere.validate()?;

        let scan = ScanSpec {
            min: self.scan.min,
            max: self.scan.max,
            points: self.scan.points,
            log_spacing: self.scan.log_spacing,
        };
        scan.grid()?;

        let model = match self.model.kind {
            ModelKind::ZeroRange => build_zero_range(self.model.binding_energy_mev, &constants)?,
            ModelKind::Hulthen => build_hulthen(
                self.model.binding_energy_mev,
                self.model.beta_over_kappa,
                &constants,
            )?,
        };

        if !(self.n_sigma.is_finite() && self.n_sigma >= 0.0) {
            return Err(crate::error::Error::invalid(
                "n_sigma",
                "finite and non-negative",
                self.n_sigma,
            ));
        }
        if !(self.fu_ceiling.is_finite() && self.fu_ceiling > 0.0) {
            return Err(crate::error::Error::invalid(
                "fu_ceiling",
                "finite and positive",
                self.fu_ceiling,
            ));
        }

        Ok(Analysis {
            collapse,
            experiment,
            sphere,
            scan,
            model,
            constants,
            quadrature: QuadratureSpec::default(),
            n_sigma: self.n_sigma,
            fu_ceiling: self.fu_ceiling,
        })
    }
}
