//! Deuteron relative-motion wavefunctions and the free-final-state dipole
//! spectrum.
//!
//! Wavefunctions are s-wave, `ψ(r) = u(r) / (r √4π)`, with the reduced radial
//! function `u` normalized to `∫ u² dr = 1`. All lengths here are in fm.
//!
//! For a plane-wave final state `|k⟩` only the ℓ = 1 partial wave of
//! `e^{ik·r}` survives the angular integral against `r ψ(r)`, which gives
//!
//! ```text
//! ∫ d³k |⟨k|r|ψ⟩|² = ∫₀^∞ dk (2/π) k² I(k)²,   I(k) = ∫₀^∞ r² j₁(kr) u(r) dr
//! ```
//!
//! and the left side equals `⟨ψ|r²|ψ⟩` by completeness.

use std::cell::RefCell;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{PhysicalConstants, FM2_TO_CM2};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_oscillatory, Domain, QuadratureSpec};

/// β/κ used when a Hulthén shape is requested without one.
pub const DEFAULT_BETA_OVER_KAPPA: f64 = 6.163;

/// Radial cutoff for oscillatory integrals, in units of 1/κ. The envelope
/// `r² e^{-κr}` is below 1e-14 of its peak there.
const RADIAL_CUTOFF_KAPPA: f64 = 40.0;

/// Upper limit of the k-integral in [`spectrum_sum`], in units of κ. The
/// neglected tail is below 1e-5 of the total for both shapes.
pub const SPECTRUM_CUTOFF_KAPPA: f64 = 80.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    ZeroRange,
    Hulthen,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelKind::ZeroRange => f.write_str("zero-range"),
            ModelKind::Hulthen => f.write_str("hulthen"),
        }
    }
}

/// A normalized deuteron radial wavefunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundStateModel {
    kind: ModelKind,
    kappa: f64,
    beta: Option<f64>,
    norm: f64,
    binding_energy: f64,
}

/// κ = √(2 μ E_B) / ħc in fm⁻¹.
pub fn binding_wavenumber(binding_energy: f64, pc: &PhysicalConstants) -> f64 {
    (2.0 * pc.reduced_mass_np * binding_energy).sqrt() / pc.hbar_c
}

fn check_binding(binding_energy: f64) -> Result<()> {
    if binding_energy.is_finite() && binding_energy > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "binding_energy_mev",
            "finite and positive",
            binding_energy,
        ))
    }
}

/// `u(r) = √(2κ) e^{-κr}`.
pub fn build_zero_range(binding_energy: f64, pc: &PhysicalConstants) -> Result<BoundStateModel> {
    check_binding(binding_energy)?;
    let kappa = binding_wavenumber(binding_energy, pc);
    Ok(BoundStateModel {
        kind: ModelKind::ZeroRange,
        kappa,
        beta: None,
        norm: (2.0 * kappa).sqrt(),
        binding_energy,
    })
}

/// `u(r) = N (e^{-κr} − e^{-βr})` with `N² = 2κβ(κ+β)/(β−κ)²`.
pub fn build_hulthen(
    binding_energy: f64,
    beta_over_kappa: f64,
    pc: &PhysicalConstants,
) -> Result<BoundStateModel> {
    check_binding(binding_energy)?;
    if !(beta_over_kappa.is_finite() && beta_over_kappa > 1.0) {
        return Err(Error::invalid(
            "beta_over_kappa",
            "finite and greater than 1",
            beta_over_kappa,
        ));
    }
    let kappa = binding_wavenumber(binding_energy, pc);
    let beta = beta_over_kappa * kappa;
    let norm_sq = 2.0 * kappa * beta * (kappa + beta) / ((beta - kappa) * (beta - kappa));
    Ok(BoundStateModel {
        kind: ModelKind::Hulthen,
        kappa,
        beta: Some(beta),
        norm: norm_sq.sqrt(),
        binding_energy,
    })
}

impl BoundStateModel {
    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    /// fm⁻¹.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// fm⁻¹, Hulthén only.
    pub fn beta(&self) -> Option<f64> {
        self.beta
    }

    /// fm⁻¹ᐟ².
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// MeV.
    pub fn binding_energy(&self) -> f64 {
        self.binding_energy
    }

    /// Reduced radial wavefunction at `r` (fm).
    pub fn radial(&self, r: f64) -> f64 {
        match self.beta {
            None => self.norm * (-self.kappa * r).exp(),
            Some(beta) => self.norm * ((-self.kappa * r).exp() - (-beta * r).exp()),
        }
    }

    /// Closed-form `∫ r² u² dr` in fm².
    pub fn mean_square_radius_exact_fm2(&self) -> f64 {
        let k = self.kappa;
        match self.beta {
            None => 0.5 / (k * k),
            Some(b) => {
                let s = k + b;
                self.norm * self.norm * (0.25 / k.powi(3) + 0.25 / b.powi(3) - 4.0 / s.powi(3))
            }
        }
    }

    /// Closed-form ⟨r²⟩ in cm².
    pub fn mean_square_radius_exact_cm2(&self) -> f64 {
        self.mean_square_radius_exact_fm2() * FM2_TO_CM2
    }

    fn decay_length(&self) -> f64 {
        1.0 / self.kappa
    }
}

/// One point of the k-resolved ⟨r²⟩ integrand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDensity {
    /// fm⁻¹.
    pub k: f64,
    /// fm³ (fm² of ⟨r²⟩ per fm⁻¹).
    pub density: f64,
}

/// Numerical `∫ u² dr`.
pub fn normalization(m: &BoundStateModel, q: &QuadratureSpec) -> Result<f64> {
    let est = integrate(
        |r| {
            let u = m.radial(r);
            u * u
        },
        Domain::HalfLine {
            start: 0.0,
            scale: m.decay_length(),
        },
        q,
    )?;
    Ok(est.value)
}

/// Numerical `∫ r² u² dr`, returned in cm².
pub fn mean_square_radius(m: &BoundStateModel, q: &QuadratureSpec) -> Result<f64> {
    let est = integrate(
        |r| {
            let u = m.radial(r);
            r * r * u * u
        },
        Domain::HalfLine {
            start: 0.0,
            scale: m.decay_length(),
        },
        q,
    )?;
    Ok(est.value * FM2_TO_CM2)
}

/// Spherical Bessel function j₁.
pub fn spherical_j1(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 0.1 {
        let x2 = x * x;
        x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0)))
    } else {
        let (s, c) = x.sin_cos();
        s / (x * x) - c / x
    }
}

/// `I(k) = ∫₀^∞ r² j₁(kr) u(r) dr` in fm^{5/2}.
pub fn radial_dipole_integral(m: &BoundStateModel, k: f64, q: &QuadratureSpec) -> Result<f64> {
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::invalid("k", "finite and non-negative", k));
    }
    if k == 0.0 {
        return Ok(0.0);
    }
    let r_max = RADIAL_CUTOFF_KAPPA * m.decay_length();
    let periods = (k * r_max / (2.0 * PI)).ceil() as usize;
    let pieces = periods.max(RADIAL_CUTOFF_KAPPA as usize / 2);
    let est = integrate_oscillatory(
        |r| r * r * spherical_j1(k * r) * m.radial(r),
        0.0,
        r_max,
        pieces,
        q,
    )?;
    Ok(est.value)
}

/// k-resolved integrand of ⟨r²⟩: `(2/π) k² I(k)²`.
pub fn spectrum_density(
    m: &BoundStateModel,
    k: f64,
    q: &QuadratureSpec,
) -> Result<SpectrumDensity> {
    let i = radial_dipole_integral(m, k, q)?;
    Ok(SpectrumDensity {
        k,
        density: 2.0 / PI * k * k * i * i,
    })
}

/// `∫ spectrum_density dk` over `[0, SPECTRUM_CUTOFF_KAPPA·κ]`, in fm².
pub fn spectrum_sum(m: &BoundStateModel, q: &QuadratureSpec) -> Result<f64> {
    let k_max = SPECTRUM_CUTOFF_KAPPA * m.kappa();
    // the integrand itself carries quadrature noise, so the outer pass
    // cannot ask for more than the inner one delivers
    let outer = QuadratureSpec {
        rel_tol: (q.rel_tol * 100.0).max(1e-8),
        ..*q
    };
    let failure = RefCell::new(None);
    let est = integrate(
        |k| match spectrum_density(m, k, q) {
            Ok(s) => s.density,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        Domain::Interval(0.0, k_max),
        &outer,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(est?.value)
}

/// Logarithmic k-grid in fm⁻¹ from `lo_factor·κ` to `hi_factor·κ`.
pub fn k_grid(m: &BoundStateModel, lo_factor: f64, hi_factor: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo_factor > 0.0 && hi_factor > lo_factor && hi_factor.is_finite()) {
        return Err(Error::InvalidRange(format!(
            "k-grid factors must satisfy 0 < lo < hi, got [{lo_factor}, {hi_factor}]"
        )));
    }
    if points < 2 {
        return Err(Error::InvalidRange(format!(
            "k-grid needs at least 2 points, got {points}"
        )));
    }
    let (lo, hi) = (lo_factor.ln(), hi_factor.ln());
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| m.kappa() * (lo + step * i as f64).exp())
        .collect())
}

/// Legendre polynomial `P_ℓ(x)` by upward recursion.
pub fn legendre(ell: usize, x: f64) -> f64 {
    match ell {
        0 => 1.0,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for n in 1..ell {
                let n = n as f64;
                let next = ((2.0 * n + 1.0) * x * cur - n * prev) / (n + 1.0);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `∫_{-1}^{1} P_ℓ(x) x dx`: the angular overlap of the ℓ-th plane-wave
/// partial wave with the dipole operator along k̂, for an s-wave bound state.
pub fn partial_wave_angular_integral(ell: usize, q: &QuadratureSpec) -> Result<f64> {
    let q = QuadratureSpec {
        abs_tol: q.abs_tol.max(1e-13),
        ..*q
    };
    Ok(integrate(|x| legendre(ell, x) * x, Domain::Interval(-1.0, 1.0), &q)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc() -> PhysicalConstants {
        PhysicalConstants::standard()
    }

    /// Closed form of I(k) for a sum of exponentials: ∫ r² j₁(kr) e^{-ar} dr = 2k/(k²+a²)².
    fn dipole_oracle(m: &BoundStateModel, k: f64) -> f64 {
        let term = |a: f64| 2.0 * k / (k * k + a * a).powi(2);
        match m.beta() {
            None => m.norm() * term(m.kappa()),
            Some(b) => m.norm() * (term(m.kappa()) - term(b)),
        }
    }

    #[test]
    fn zero_range_kappa() {
        let m = build_zero_range(2.2246, &pc()).unwrap();
        assert!((1.0 / m.kappa() - 4.318).abs() < 1e-3);
        let m4 = build_zero_range(4.0 * 2.2246, &pc()).unwrap();
        assert!((m4.kappa() / m.kappa() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn normalizations() {
        let q = QuadratureSpec::default();
        for m in [
            build_zero_range(2.2246, &pc()).unwrap(),
            build_hulthen(2.2246, 6.163, &pc()).unwrap(),
            build_hulthen(1.0, 1.5, &pc()).unwrap(),
        ] {
            let n = normalization(&m, &q).unwrap();
            assert!((n - 1.0).abs() < 1e-9, "{m:?}: {n}");
        }
    }

    #[test]
    fn hulthen_shape() {
        let m = build_hulthen(2.2246, 6.163, &pc()).unwrap();
        assert!(m.beta().unwrap() > m.kappa());
        assert_eq!(m.radial(0.0), 0.0);
        for r in [1e-3, 0.5, 2.0, 10.0, 50.0] {
            assert!(m.radial(r) > 0.0);
        }
        let r2 = m.mean_square_radius_exact_fm2() * m.kappa().powi(2);
        assert!((r2 / 0.7954 - 1.0).abs() < 1e-3, "{r2}");
    }

    #[test]
    fn hulthen_approaches_zero_range() {
        let zr = build_zero_range(2.2246, &pc()).unwrap();
        let h = build_hulthen(2.2246, 1e4, &pc()).unwrap();
        for r in [1.0, 5.0, 20.0] {
            assert!((h.radial(r) / zr.radial(r) - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(build_zero_range(0.0, &pc()).is_err());
        assert!(build_zero_range(-1.0, &pc()).is_err());
        assert!(build_hulthen(2.2, 1.0, &pc()).is_err());
        assert!(build_hulthen(2.2, 0.5, &pc()).is_err());
        let m = build_zero_range(2.2, &pc()).unwrap();
        assert!(spectrum_density(&m, -1.0, &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn mean_square_radius_values() {
        let q = QuadratureSpec::default();
        let m = build_zero_range(2.2246, &pc()).unwrap();
        let r2 = mean_square_radius(&m, &q).unwrap();
        assert!((r2 / 9.32e-26 - 1.0).abs() < 1e-3, "{r2}");
        assert!((r2 / 9e-26 - 1.0).abs() < 0.1);
        let h = build_hulthen(2.2246, 6.163, &pc()).unwrap();
        let r2h = mean_square_radius(&h, &q).unwrap();
        assert!((r2h / h.mean_square_radius_exact_cm2() - 1.0).abs() < 1e-9);
        assert!((r2h / 1.48e-25 - 1.0).abs() < 5e-3, "{r2h}");
    }

    #[test]
    fn dipole_integral_matches_closed_form() {
        let q = QuadratureSpec::default();
        for m in [
            build_zero_range(2.2246, &pc()).unwrap(),
            build_hulthen(2.2246, 6.163, &pc()).unwrap(),
        ] {
            for f in [0.01, 0.3, 1.0, 3.0, 15.0] {
                let k = f * m.kappa();
                let num = radial_dipole_integral(&m, k, &q).unwrap();
                let exact = dipole_oracle(&m, k);
                assert!((num - exact).abs() <= 1e-7 * exact.abs(), "k={k}: {num} vs {exact}");
            }
        }
    }

    #[test]
    fn density_vanishes_at_origin_and_is_non_negative() {
        let q = QuadratureSpec::default();
        let m = build_hulthen(2.2246, 6.163, &pc()).unwrap();
        assert_eq!(spectrum_density(&m, 0.0, &q).unwrap().density, 0.0);
        for k in k_grid(&m, 1e-3, 50.0, 100).unwrap() {
            assert!(spectrum_density(&m, k, &q).unwrap().density >= 0.0);
        }
        let far = spectrum_density(&m, 60.0 * m.kappa(), &q).unwrap().density;
        let peak = spectrum_density(&m, m.kappa(), &q).unwrap().density;
        assert!(far < 1e-6 * peak);
    }

    #[test]
    fn parity_selects_p_wave() {
        let q = QuadratureSpec::default();
        assert!(partial_wave_angular_integral(0, &q).unwrap().abs() < 1e-13);
        assert!((partial_wave_angular_integral(1, &q).unwrap() - 2.0 / 3.0).abs() < 1e-13);
        assert!(partial_wave_angular_integral(2, &q).unwrap().abs() < 1e-13);
        assert!(partial_wave_angular_integral(3, &q).unwrap().abs() < 1e-13);
    }

    #[test]
    fn j1_series_and_closed_form_agree() {
        for x in [0.099_999, 0.1, 0.100_001] {
            let (s, c) = f64::sin_cos(x);
            let closed = s / (x * x) - c / x;
            assert!((spherical_j1(x) - closed).abs() < 1e-12);
        }
        assert_eq!(spherical_j1(0.0), 0.0);
    }

    #[test]
    fn grid_is_logarithmic() {
        let m = build_zero_range(2.2246, &pc()).unwrap();
        let g = k_grid(&m, 0.01, 20.0, 200).unwrap();
        assert_eq!(g.len(), 200);
        assert!((g[0] / (0.01 * m.kappa()) - 1.0).abs() < 1e-12);
        assert!((g[199] / (20.0 * m.kappa()) - 1.0).abs() < 1e-12);
        assert!(k_grid(&m, 1.0, 1.0, 10).is_err());
        assert!(k_grid(&m, 0.1, 1.0, 1).is_err());
    }
}
