//! Values with independent one-sigma upper and lower errors.
//!
//! Errors are treated as independent and Gaussian and are combined in
//! quadrature, separately for the upward and downward sides.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetricValue {
    pub central: f64,
    pub err_up: f64,
    pub err_down: f64,
}

impl AsymmetricValue {
    pub fn new(central: f64, err_up: f64, err_down: f64) -> Result<Self> {
        if !central.is_finite() {
            return Err(Error::invalid("central", "finite", central));
        }
        if !(err_up.is_finite() && err_up >= 0.0) {
            return Err(Error::invalid("err_up", "finite and non-negative", err_up));
        }
        if !(err_down.is_finite() && err_down >= 0.0) {
            return Err(Error::invalid("err_down", "finite and non-negative", err_down));
        }
        Ok(AsymmetricValue {
            central,
            err_up,
            err_down,
        })
    }

    pub fn exact(central: f64) -> Self {
        AsymmetricValue {
            central,
            err_up: 0.0,
            err_down: 0.0,
        }
    }

    /// Merges two error sources of the same measurement. The central value is
    /// taken from `self`.
    pub fn combine_quadrature(&self, other: &AsymmetricValue) -> AsymmetricValue {
        combine_quadrature(self, other)
    }

    pub fn scale(&self, factor: f64) -> Result<AsymmetricValue> {
        scale(self, factor)
    }

    pub fn upper_limit(&self, n_sigma: f64) -> f64 {
        one_sided_upper_limit(self, n_sigma)
    }
}

impl fmt::Display for AsymmetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(
                f,
                "{:.p$} +{:.p$}/-{:.p$}",
                self.central,
                self.err_up,
                self.err_down,
                p = p
            ),
            None => write!(f, "{} +{}/-{}", self.central, self.err_up, self.err_down),
        }
    }
}

/// `up = √(a.up² + b.up²)`, `down = √(a.down² + b.down²)`, central from `a`.
pub fn combine_quadrature(a: &AsymmetricValue, b: &AsymmetricValue) -> AsymmetricValue {
    AsymmetricValue {
        central: a.central,
        err_up: a.err_up.hypot(b.err_up),
        err_down: a.err_down.hypot(b.err_down),
    }
}

pub fn scale(v: &AsymmetricValue, factor: f64) -> Result<AsymmetricValue> {
    if !(factor.is_finite() && factor > 0.0) {
        return Err(Error::invalid("scale factor", "finite and positive", factor));
    }
    Ok(AsymmetricValue {
        central: v.central * factor,
        err_up: v.err_up * factor,
        err_down: v.err_down * factor,
    })
}

/// Difference of independent values. `b` enters with a minus sign, so its
/// downward error widens the upward side of the result and vice versa.
pub fn subtract(a: &AsymmetricValue, b: &AsymmetricValue) -> AsymmetricValue {
    AsymmetricValue {
        central: a.central - b.central,
        err_up: a.err_up.hypot(b.err_down),
        err_down: a.err_down.hypot(b.err_up),
    }
}

/// Sum of independent values; same-side errors pair up.
pub fn add(a: &AsymmetricValue, b: &AsymmetricValue) -> AsymmetricValue {
    AsymmetricValue {
        central: a.central + b.central,
        err_up: a.err_up.hypot(b.err_up),
        err_down: a.err_down.hypot(b.err_down),
    }
}

/// `central + n_sigma·err_up`. Only the upward error enters, and the result
/// is not clipped at zero.
pub fn one_sided_upper_limit(v: &AsymmetricValue, n_sigma: f64) -> f64 {
    v.central + n_sigma * v.err_up
}

/// Converts a daily rate into a count over `days`.
pub fn from_rate_per_day(rate: &AsymmetricValue, days: f64) -> Result<AsymmetricValue> {
    if !(days.is_finite() && days > 0.0) {
        return Err(Error::invalid("days", "finite and positive", days));
    }
    scale(rate, days)
}

impl Add for AsymmetricValue {
    type Output = AsymmetricValue;

    fn add(self, rhs: AsymmetricValue) -> AsymmetricValue {
        add(&self, &rhs)
    }
}

impl Sub for AsymmetricValue {
    type Output = AsymmetricValue;

    fn sub(self, rhs: AsymmetricValue) -> AsymmetricValue {
        subtract(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(c: f64, u: f64, d: f64) -> AsymmetricValue {
        AsymmetricValue::new(c, u, d).unwrap()
    }

    #[test]
    fn stat_and_syst_merge() {
        let stat = v(1344.2, 69.8, 69.0);
        let syst = v(1344.2, 98.1, 96.8);
        let total = combine_quadrature(&stat, &syst);
        assert_eq!(total.central, 1344.2);
        assert!((total.err_up - 120.4).abs() < 0.05);
        assert!((total.err_down - 118.9).abs() < 0.05);
        assert!((total.err_up - 120.0).abs() < 2.0);
        assert!((total.err_down - 119.0).abs() < 2.0);
        assert_eq!(combine_quadrature(&stat, &v(0.0, 0.0, 0.0)), stat);
    }

    #[test]
    fn efficiency_correction() {
        let observed = v(1344.2, 120.4, 118.9);
        let n = scale(&observed, 1.0 / 0.40).unwrap();
        assert!((n.central - 3361.0).abs() <= 2.0);
        assert!((n.err_up - 300.0).abs() <= 2.0);
        assert!((n.err_down - 298.0).abs() <= 2.0);
        assert_eq!(scale(&observed, 1.0).unwrap(), observed);
        assert!(scale(&observed, 0.0).is_err());
        assert!(scale(&observed, -2.0).is_err());
    }

    #[test]
    fn background_subtraction() {
        let n = subtract(&v(3361.0, 300.0, 298.0), &v(3305.0, 661.0, 529.0));
        assert_eq!(n.central, 56.0);
        assert!((n.err_up - 608.0).abs() < 1.0, "{n}");
        assert!((n.err_down - 725.0).abs() < 1.0, "{n}");
    }

    #[test]
    fn self_subtraction_pairs_opposite_sides() {
        let a = v(10.0, 3.0, 4.0);
        let d = a - a;
        assert_eq!(d.central, 0.0);
        assert_eq!(d.err_up, 5.0);
        assert_eq!(d.err_down, 5.0);
    }

    #[test]
    fn upper_limit() {
        assert!((one_sided_upper_limit(&v(56.0, 608.0, 725.0), 1.0) - 664.0).abs() < 1e-12);
        assert_eq!(one_sided_upper_limit(&v(0.0, 1.0, 1.0), 2.0), 2.0);
        assert_eq!(one_sided_upper_limit(&v(-5.0, 1.0, 1.0), 1.0), -4.0);
    }

    #[test]
    fn ssm_rate_over_live_time() {
        let n = from_rate_per_day(&v(13.0, 2.6, 2.08), 254.2).unwrap();
        assert!((n.central - 3305.0).abs() < 1.0);
        assert!((n.err_up - 661.0).abs() < 1.0);
        assert!((n.err_down - 529.0).abs() < 1.0);
        assert!(from_rate_per_day(&n, 0.0).is_err());
        assert_eq!(from_rate_per_day(&n, 1.0).unwrap(), n);
    }

    #[test]
    fn display() {
        assert_eq!(format!("{:.1}", v(56.0, 608.4, 724.7)), "56.0 +608.4/-724.7");
        assert!(AsymmetricValue::new(1.0, -1.0, 0.0).is_err());
        assert!(AsymmetricValue::new(f64::INFINITY, 1.0, 0.0).is_err());
    }

    fn value() -> impl Strategy<Value = AsymmetricValue> {
        (-1e4..1e4f64, 0.0..1e3f64, 0.0..1e3f64).prop_map(|(c, u, d)| v(c, u, d))
    }

    proptest! {
        #[test]
        fn quadrature_commutes(a in value(), b in value()) {
            let ab = combine_quadrature(&a, &b);
            let ba = combine_quadrature(&b, &a);
            prop_assert_eq!(ab.err_up, ba.err_up);
            prop_assert_eq!(ab.err_down, ba.err_down);
        }

        #[test]
        fn quadrature_associates(a in value(), b in value(), c in value()) {
            let left = combine_quadrature(&combine_quadrature(&a, &b), &c);
            let right = combine_quadrature(&a, &combine_quadrature(&b, &c));
            let tol = 4.0 * f64::EPSILON * left.err_up.max(1.0);
            prop_assert!((left.err_up - right.err_up).abs() <= tol);
            let tol = 4.0 * f64::EPSILON * left.err_down.max(1.0);
            prop_assert!((left.err_down - right.err_down).abs() <= tol);
        }

        #[test]
        fn scale_is_multiplicative(a in value(), x in 0.01..100.0f64, y in 0.01..100.0f64) {
            let once = scale(&a, x * y).unwrap();
            let twice = scale(&scale(&a, x).unwrap(), y).unwrap();
            for (p, q) in [(once.central, twice.central), (once.err_up, twice.err_up), (once.err_down, twice.err_down)] {
                prop_assert!((p - q).abs() <= 4.0 * f64::EPSILON * p.abs());
            }
        }

        #[test]
        fn subtraction_is_antisymmetric(a in value(), b in value()) {
            let ab = subtract(&a, &b);
            let ba = subtract(&b, &a);
            prop_assert_eq!(ab.central, -ba.central);
            prop_assert_eq!(ab.err_up, ba.err_down);
            prop_assert_eq!(ab.err_down, ba.err_up);
        }

        #[test]
        fn add_then_subtract_restores_central(a in 0.0..1e4f64, b in 0.0..1e4f64) {
            // dyadic values keep the round trip exact
            let a = v((a * 64.0).round() / 64.0, 1.0, 1.0);
            let b = v((b * 64.0).round() / 64.0, 2.0, 3.0);
            prop_assert_eq!(subtract(&add(&a, &b), &b).central, a.central);
        }

        #[test]
        fn upper_limit_is_monotone(a in value(), s in 0.0..5.0f64, ds in 0.0..5.0f64) {
            prop_assert!(one_sided_upper_limit(&a, s + ds) >= one_sided_upper_limit(&a, s));
            prop_assert!(one_sided_upper_limit(&a, s) >= a.central);
        }
    }
}
