//! Physical constants, collapse-model parameters and unit conventions.
//!
//! Internally lengths are in cm and times in s on the collapse side, and
//! fm / MeV on the nuclear side. Conversions happen only through the
//! constants below.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// fm² → cm².
pub const FM2_TO_CM2: f64 = 1e-26;

/// Cubic centimetres in one unit of detector volume (10³ m³).
pub const CM3_PER_KILO_M3: f64 = 1e9;

/// m³ in one unit of detector volume.
pub const M3_PER_KILO_M3: f64 = 1e3;

/// GRW collapse rate (s⁻¹).
pub const GRW_LAMBDA: f64 = 1e-16;

/// GRW localization length (cm).
pub const GRW_A: f64 = 1e-5;

/// (λ/a²) at the GRW values (s⁻¹cm⁻²).
pub const GRW_LAMBDA_OVER_A2: f64 = GRW_LAMBDA / GRW_A / GRW_A;

/// Deuteron binding energy (MeV).
pub const DEUTERON_BINDING_MEV: f64 = 2.224575;

/// Reference ⟨r²⟩ of the deuteron relative coordinate, (3·10⁻¹³ cm)².
pub const REFERENCE_R2_CM2: f64 = 9e-26;

/// Fractional model spread tolerated around [`REFERENCE_R2_CM2`].
pub const REFERENCE_R2_SPREAD: f64 = 0.10;

/// Mass ratios and conversion factors used by every computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub m_e_over_m_p: f64,
    pub m_n_over_m_p: f64,
    /// ħc in MeV·fm.
    pub hbar_c: f64,
    /// Neutron–proton reduced mass in MeV/c².
    pub reduced_mass_np: f64,
    pub seconds_per_day: f64,
    pub seconds_per_year: f64,
}

impl PhysicalConstants {
    /// CODATA-style reference values; a year is 365 days.
    pub fn standard() -> Self {
        let seconds_per_day = 86_400.0;
        PhysicalConstants {
            m_e_over_m_p: 1.0 / 1_836.152_67,
            m_n_over_m_p: 1.001_378_42,
            hbar_c: 197.3270,
            reduced_mass_np: 469.459,
            seconds_per_day,
            seconds_per_year: 365.0 * seconds_per_day,
        }
    }

    /// Custom constants. Every value must be finite and strictly positive.
    pub fn new(
        m_e_over_m_p: f64,
        m_n_over_m_p: f64,
        hbar_c: f64,
        reduced_mass_np: f64,
        seconds_per_day: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("m_e_over_m_p", m_e_over_m_p),
            ("m_n_over_m_p", m_n_over_m_p),
            ("hbar_c", hbar_c),
            ("reduced_mass_np", reduced_mass_np),
            ("seconds_per_day", seconds_per_day),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, "finite and positive", v));
            }
        }
        Ok(PhysicalConstants {
            m_e_over_m_p,
            m_n_over_m_p,
            hbar_c,
            reduced_mass_np,
            seconds_per_day,
            seconds_per_year: 365.0 * seconds_per_day,
        })
    }

    /// (M_n − M_p)/M_p.
    pub fn neutron_proton_splitting(&self) -> f64 {
        self.m_n_over_m_p - 1.0
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::standard()
    }
}

/// Collapse-model parameters. The proton coupling is fixed to 1 and is not
/// stored; `g_e` and `g_n` are relative to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseParams {
    lambda_rate: f64,
    a_length: f64,
    g_e: Option<f64>,
    g_n: Option<f64>,
}

impl CollapseParams {
    /// `lambda_rate` in s⁻¹, `a_length` in cm.
    pub fn new(lambda_rate: f64, a_length: f64) -> Result<Self> {
        if !(lambda_rate.is_finite() && lambda_rate > 0.0) {
            return Err(Error::invalid("lambda_per_sec", "finite and positive", lambda_rate));
        }
        if !(a_length.is_finite() && a_length > 0.0) {
            return Err(Error::invalid("a_cm", "finite and positive", a_length));
        }
        Ok(CollapseParams {
            lambda_rate,
            a_length,
            g_e: None,
            g_n: None,
        })
    }

    pub fn with_g_n(mut self, g_n: f64) -> Result<Self> {
        if !(g_n.is_finite() && g_n >= 0.0) {
            return Err(Error::invalid("g_n", "finite and non-negative", g_n));
        }
        self.g_n = Some(g_n);
        Ok(self)
    }

    pub fn with_g_e(mut self, g_e: f64) -> Result<Self> {
        if !(g_e.is_finite() && g_e >= 0.0) {
            return Err(Error::invalid("g_e", "finite and non-negative", g_e));
        }
        self.g_e = Some(g_e);
        Ok(self)
    }

    pub fn lambda_rate(&self) -> f64 {
        self.lambda_rate
    }

    pub fn a_length(&self) -> f64 {
        self.a_length
    }

    pub fn g_e(&self) -> Option<f64> {
        self.g_e
    }

    pub fn g_n(&self) -> Option<f64> {
        self.g_n
    }

    /// Same couplings with (λ, a) replaced.
    pub fn with_rate_and_length(self, lambda_rate: f64, a_length: f64) -> Result<Self> {
        let mut p = CollapseParams::new(lambda_rate, a_length)?;
        p.g_e = self.g_e;
        p.g_n = self.g_n;
        Ok(p)
    }
}

/// The composite collapse strength λ/a² in s⁻¹cm⁻².
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RateDensity(f64);

impl RateDensity {
    pub fn new(lambda_over_a2: f64) -> Result<Self> {
        if !(lambda_over_a2.is_finite() && lambda_over_a2 > 0.0) {
            return Err(Error::invalid(
                "lambda_over_a2",
                "finite and positive",
                lambda_over_a2,
            ));
        }
        Ok(RateDensity(lambda_over_a2))
    }

    pub fn grw() -> Self {
        RateDensity(GRW_LAMBDA_OVER_A2)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// This strength relative to the GRW value.
    pub fn relative_to_grw(self) -> f64 {
        self.0 / GRW_LAMBDA_OVER_A2
    }
}

/// GRW rate and length with both couplings unset.
pub fn grw_defaults() -> CollapseParams {
    CollapseParams {
        lambda_rate: GRW_LAMBDA,
        a_length: GRW_A,
        g_e: None,
        g_n: None,
    }
}

pub fn lambda_over_a2(p: &CollapseParams) -> RateDensity {
    RateDensity(p.lambda_rate / p.a_length / p.a_length)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grw_values() {
        let p = grw_defaults();
        assert_eq!(p.lambda_rate(), 1e-16);
        assert_eq!(p.a_length(), 1e-5);
        assert_eq!(p.g_n(), None);
        assert_eq!(p.g_e(), None);
        assert_eq!(grw_defaults(), grw_defaults());
        let ld = lambda_over_a2(&p).value();
        assert_eq!(ld, 1e-6);
    }

    #[test]
    fn lambda_over_a2_examples() {
        let p = CollapseParams::new(4e-16, 2e-5).unwrap();
        assert_eq!(lambda_over_a2(&p).value(), 1e-6);
        let p = CollapseParams::new(2.5e-10, 1e-5).unwrap();
        assert_eq!(lambda_over_a2(&p).value(), 2.5);
    }

    #[test]
    fn standard_constants_are_consistent() {
        let pc = PhysicalConstants::standard();
        let split = pc.neutron_proton_splitting();
        assert!(pc.m_n_over_m_p > 1.0);
        assert!((split - 1.4e-3).abs() / 1.4e-3 < 0.05);
        assert!((pc.m_e_over_m_p - 1.0 / 1836.15).abs() * 1836.15 < 1e-3);
        assert_eq!(pc.seconds_per_year, 365.0 * pc.seconds_per_day);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(CollapseParams::new(0.0, 1e-5).is_err());
        assert!(CollapseParams::new(1e-16, -1.0).is_err());
        assert!(CollapseParams::new(f64::NAN, 1e-5).is_err());
        assert!(grw_defaults().with_g_n(-0.1).is_err());
        assert!(RateDensity::new(0.0).is_err());
        assert!(PhysicalConstants::new(1.0, 1.0, 0.0, 1.0, 1.0).is_err());
    }
}
