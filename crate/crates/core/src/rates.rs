//! First-order collapse-induced excitation rates and expected neutron counts.
//!
//! The leading term of the excitation probability per unit time is
//! `(λ/2a²)·|⟨φ|Σ g_α r_α|ψ⟩|²`. Higher orders in (size/a) are not modelled.

use serde::{Deserialize, Serialize};

use crate::constants::{
    lambda_over_a2, CollapseParams, PhysicalConstants, CM3_PER_KILO_M3, FM2_TO_CM2,
    GRW_LAMBDA_OVER_A2,
};
use crate::deuteron::{spectrum_density, BoundStateModel};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;

/// `|⟨φ|Σ g_α r_α|ψ⟩|²` in cm².
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixElementSq(f64);

impl MatrixElementSq {
    pub fn new(value_cm2: f64) -> Result<Self> {
        if !(value_cm2.is_finite() && value_cm2 >= 0.0) {
            return Err(Error::invalid(
                "matrix element squared",
                "finite and non-negative",
                value_cm2,
            ));
        }
        Ok(MatrixElementSq(value_cm2))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Excitation probability per second for one bound state.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ExcitationRate {
    pub per_bound_state: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountPrediction {
    pub expected_neutrons: f64,
    /// Count at unit coupling deviation, one year, 10³ m³ and GRW λ/a².
    pub coefficient: f64,
}

pub fn general_rate(p: &CollapseParams, me: MatrixElementSq) -> ExcitationRate {
    ExcitationRate {
        per_bound_state: 0.5 * lambda_over_a2(p).value() * me.value(),
    }
}

/// Position-operator coefficients `(c_p, c_n)` with `r_p = c_p·r`, `r_n = c_n·r`
/// for the relative coordinate `r = r_p − r_n` in the deuteron rest frame.
pub fn center_of_mass_coefficients(pc: &PhysicalConstants) -> (f64, f64) {
    let ratio = pc.m_n_over_m_p;
    (ratio / (1.0 + ratio), -1.0 / (1.0 + ratio))
}

/// `[(g_n − M_n/M_p)/(1 + M_n/M_p)]²`.
pub fn relative_coordinate_factor(g_n: f64, pc: &PhysicalConstants) -> f64 {
    let ratio = pc.m_n_over_m_p;
    let x = (g_n - ratio) / (1.0 + ratio);
    x * x
}

fn require_g_n(p: &CollapseParams) -> Result<f64> {
    p.g_n().ok_or(Error::MissingCoupling("g_n"))
}

/// Total dissociation rate per deuteron, electron contribution neglected.
pub fn deuteron_rate(
    p: &CollapseParams,
    m: &BoundStateModel,
    pc: &PhysicalConstants,
) -> Result<ExcitationRate> {
    let g_n = require_g_n(p)?;
    let me = MatrixElementSq::new(
        relative_coordinate_factor(g_n, pc) * m.mean_square_radius_exact_cm2(),
    )?;
    Ok(general_rate(p, me))
}

/// Dissociation rate per unit relative momentum, s⁻¹ per fm⁻¹.
pub fn deuteron_spectrum(
    p: &CollapseParams,
    m: &BoundStateModel,
    k: f64,
    pc: &PhysicalConstants,
    q: &QuadratureSpec,
) -> Result<f64> {
    let g_n = require_g_n(p)?;
    let factor = relative_coordinate_factor(g_n, pc);
    if factor == 0.0 {
        if !(k.is_finite() && k >= 0.0) {
            return Err(Error::invalid("k", "finite and non-negative", k));
        }
        return Ok(0.0);
    }
    let s = spectrum_density(m, k, q)?;
    Ok(0.5 * lambda_over_a2(p).value() * factor * s.density * FM2_TO_CM2)
}

/// Count per (unit coupling deviation)² per year per 10³ m³ at GRW λ/a².
pub fn grw_count_coefficient(
    deuteron_density_per_cc: f64,
    m: &BoundStateModel,
    pc: &PhysicalConstants,
) -> f64 {
    let unit = 1.0 / ((1.0 + pc.m_n_over_m_p) * (1.0 + pc.m_n_over_m_p));
    let rate = 0.5 * GRW_LAMBDA_OVER_A2 * unit * m.mean_square_radius_exact_cm2();
    rate * deuteron_density_per_cc * CM3_PER_KILO_M3 * pc.seconds_per_year
}

/// Expected number of CSL-dissociated deuterons.
pub fn expected_count(
    p: &CollapseParams,
    live_time_yr: f64,
    volume_kilo_m3: f64,
    deuteron_density_per_cc: f64,
    m: &BoundStateModel,
    pc: &PhysicalConstants,
) -> Result<CountPrediction> {
    for (name, v) in [
        ("live_time_yr", live_time_yr),
        ("volume_kilo_m3", volume_kilo_m3),
        ("deuteron_density_per_cc", deuteron_density_per_cc),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::invalid(name, "finite and positive", v));
        }
    }
    let rate = deuteron_rate(p, m, pc)?;
    let deuterons = deuteron_density_per_cc * volume_kilo_m3 * CM3_PER_KILO_M3;
    Ok(CountPrediction {
        expected_neutrons: rate.per_bound_state * deuterons * live_time_yr * pc.seconds_per_year,
        coefficient: grw_count_coefficient(deuteron_density_per_cc, m, pc),
    })
}
