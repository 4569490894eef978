//! Converters between real signals and graded mnesors.
//!
//! A quantizer maps a signal to `PST·g` when positive and `NGT·g` when
//! negative, with `g = min(L, floor((|v| - deadband) / scale) + 1)`. Larger
//! magnitudes get larger grades, which sit lower in the flat order. Inside the
//! deadband the signal carries no constraint.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::ValidationError;
use crate::minplus::FlatNumber;
use crate::mnesor::{Mnesor, Polarity};

/// What a quantizer emits for `|v| <= deadband`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeadbandTarget {
    /// `ALL`, the identity of internal multiplication: the other input decides.
    #[default]
    All,
    /// `ZERO`, which annihilates the product.
    Zero,
}

impl DeadbandTarget {
    pub fn mnesor(self) -> Mnesor {
        match self {
            DeadbandTarget::All => Mnesor::All,
            DeadbandTarget::Zero => Mnesor::Zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantizerConfig {
    /// Signal units per grade step.
    pub scale: f64,
    pub deadband: f64,
    pub max_grade: u32,
    pub deadband_target: DeadbandTarget,
}

impl QuantizerConfig {
    /// Angle quantizer: 0.025 rad per grade, 0.005 rad deadband, 8 grades.
    pub const THETA: QuantizerConfig = QuantizerConfig {
        scale: 0.025,
        deadband: 0.005,
        max_grade: 8,
        deadband_target: DeadbandTarget::All,
    };

    /// Rate quantizer: 0.125 rad/s per grade, 0.025 rad/s deadband, 8 grades.
    pub const OMEGA: QuantizerConfig = QuantizerConfig {
        scale: 0.125,
        deadband: 0.025,
        max_grade: 8,
        deadband_target: DeadbandTarget::All,
    };

    pub fn validate(&self) -> Result<(), ValidationError> {
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(ValidationError::new("scale", "must be finite and > 0"));
        }
        if !(self.deadband.is_finite() && self.deadband >= 0.0) {
            return Err(ValidationError::new("deadband", "must be finite and >= 0"));
        }
        if self.max_grade < 1 {
            return Err(ValidationError::new("max_grade", "must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActuatorConfig {
    /// Saturation magnitude, m/s².
    pub u_max: f64,
    pub max_grade: u32,
}

impl Default for ActuatorConfig {
    fn default() -> Self {
        ActuatorConfig {
            u_max: 30.0,
            max_grade: 8,
        }
    }
}

impl ActuatorConfig {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if !(self.u_max.is_finite() && self.u_max > 0.0) {
            return Err(ValidationError::new("u_max", "must be finite and > 0"));
        }
        if self.max_grade < 1 {
            return Err(ValidationError::new("max_grade", "must be >= 1"));
        }
        Ok(())
    }

    /// The `2L + 1` actuation levels `±u_max·k/L`, in increasing order.
    pub fn levels(&self) -> Vec<f64> {
        let l = i64::from(self.max_grade);
        (-l..=l).map(|k| self.level(k)).collect()
    }

    fn level(&self, k: i64) -> f64 {
        k as f64 / f64::from(self.max_grade) * self.u_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ConvertError {
    #[error("signal value {0} is not finite")]
    NonFinite(f64),
}

pub fn real_to_mnesor(v: f64, cfg: &QuantizerConfig) -> Result<Mnesor, ConvertError> {
    if !v.is_finite() {
        return Err(ConvertError::NonFinite(v));
    }
    let magnitude = v.abs();
    if magnitude <= cfg.deadband {
        return Ok(cfg.deadband_target.mnesor());
    }
    let steps = ((magnitude - cfg.deadband) / cfg.scale).floor() + 1.0;
    let grade = steps.min(f64::from(cfg.max_grade)) as i32;
    let polarity = if v > 0.0 {
        Polarity::Pst
    } else {
        Polarity::Ngt
    };
    Ok(Mnesor::graded(polarity, FlatNumber::from(grade)))
}

/// Maps a control mnesor to an acceleration in `[-u_max, u_max]`.
///
/// Grades are clamped to `[0, L]`; ungraded mnesors actuate nothing.
pub fn mnesor_to_real(u: Mnesor, cfg: &ActuatorConfig) -> f64 {
    let (sign, grade) = match u {
        Mnesor::Zero | Mnesor::All => return 0.0,
        Mnesor::Pst(g) => (1, g),
        Mnesor::Ngt(g) => (-1, g),
    };
    let k = grade.grade().clamp(0, i64::from(cfg.max_grade));
    cfg.level(sign * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(scale: f64, deadband: f64) -> QuantizerConfig {
        QuantizerConfig {
            scale,
            deadband,
            max_grade: 8,
            deadband_target: DeadbandTarget::All,
        }
    }

    fn f(g: i32) -> FlatNumber {
        FlatNumber::from(g)
    }

    #[test]
    fn deadband_is_unconstrained() {
        assert_eq!(
            real_to_mnesor(0.0, &QuantizerConfig::THETA).unwrap(),
            Mnesor::All
        );
        assert_eq!(
            real_to_mnesor(-0.005, &QuantizerConfig::THETA).unwrap(),
            Mnesor::All
        );
        let zero_target = QuantizerConfig {
            deadband_target: DeadbandTarget::Zero,
            ..QuantizerConfig::THETA
        };
        assert_eq!(real_to_mnesor(0.001, &zero_target).unwrap(), Mnesor::Zero);
        // Zero-width deadband still catches exact zero.
        assert_eq!(real_to_mnesor(0.0, &cfg(0.5, 0.0)).unwrap(), Mnesor::All);
    }

    #[test]
    fn staircase_grades() {
        let c = cfg(0.5, 0.0);
        assert_eq!(real_to_mnesor(3.5 * 0.5, &c).unwrap(), Mnesor::Pst(f(4)));
        assert_eq!(real_to_mnesor(-100.0 * 0.5, &c).unwrap(), Mnesor::Ngt(f(8)));
        assert_eq!(real_to_mnesor(0.1, &c).unwrap(), Mnesor::Pst(f(1)));
        assert_eq!(real_to_mnesor(0.5, &c).unwrap(), Mnesor::Pst(f(2)));
        assert_eq!(real_to_mnesor(1e300, &c).unwrap(), Mnesor::Pst(f(8)));
        // Default angle quantizer at the default initial condition saturates.
        assert_eq!(
            real_to_mnesor(0.2, &QuantizerConfig::THETA).unwrap(),
            Mnesor::Pst(f(8))
        );
        assert_eq!(
            real_to_mnesor(0.01, &QuantizerConfig::THETA).unwrap(),
            Mnesor::Pst(f(1))
        );
    }

    #[test]
    fn non_finite_input_is_rejected() {
        assert!(real_to_mnesor(f64::NAN, &QuantizerConfig::THETA).is_err());
        assert!(real_to_mnesor(f64::NEG_INFINITY, &QuantizerConfig::THETA).is_err());
    }

    #[test]
    fn actuator_levels() {
        let a = ActuatorConfig::default();
        assert_eq!(mnesor_to_real(Mnesor::Zero, &a), 0.0);
        assert_eq!(mnesor_to_real(Mnesor::All, &a), 0.0);
        assert_eq!(mnesor_to_real(Mnesor::Pst(f(8)), &a), 30.0);
        assert_eq!(mnesor_to_real(Mnesor::Ngt(f(4)), &a), -15.0);
        assert_eq!(mnesor_to_real(Mnesor::Pst(f(-3)), &a), 0.0);
        assert_eq!(mnesor_to_real(Mnesor::Ngt(f(12)), &a), -30.0);
        assert_eq!(a.levels().len(), 17);
        assert_eq!(a.levels()[0], -30.0);
    }

    #[test]
    fn validation() {
        assert!(QuantizerConfig::THETA.validate().is_ok());
        assert_eq!(cfg(0.0, 0.0).validate().unwrap_err().path, "scale");
        assert_eq!(cfg(1.0, -1.0).validate().unwrap_err().path, "deadband");
        let bad = ActuatorConfig {
            u_max: 30.0,
            max_grade: 0,
        };
        assert_eq!(bad.validate().unwrap_err().path, "max_grade");
    }

    fn any_quantizer() -> impl Strategy<Value = QuantizerConfig> {
        (1e-3f64..1.0, 0.0f64..0.1, 1u32..16).prop_map(|(scale, deadband, max_grade)| {
            QuantizerConfig {
                scale,
                deadband,
                max_grade,
                deadband_target: DeadbandTarget::All,
            }
        })
    }

    proptest! {
        #[test]
        fn sign_selects_the_base(c in any_quantizer(), v in -10.0f64..10.0) {
            let m = real_to_mnesor(v, &c).unwrap();
            if v > c.deadband {
                prop_assert_eq!(m.polarity(), Some(Polarity::Pst));
            } else if v < -c.deadband {
                prop_assert_eq!(m.polarity(), Some(Polarity::Ngt));
            } else {
                prop_assert_eq!(m, Mnesor::All);
            }
        }

        #[test]
        fn larger_magnitude_is_lower_in_order(c in any_quantizer(), a in 0.0f64..10.0, b in 0.0f64..10.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assume!(lo > c.deadband);
            for sign in [1.0, -1.0] {
                let m_lo = real_to_mnesor(sign * lo, &c).unwrap();
                let m_hi = real_to_mnesor(sign * hi, &c).unwrap();
                prop_assert!(m_hi.mleq(m_lo));
            }
        }

        #[test]
        fn quantizer_is_odd(c in any_quantizer(), v in -10.0f64..10.0) {
            let pos = real_to_mnesor(v, &c).unwrap();
            let neg = real_to_mnesor(-v, &c).unwrap();
            prop_assert_eq!(pos.grade(), neg.grade());
            prop_assert_eq!(pos.polarity().map(Polarity::opposite), neg.polarity());
        }

        #[test]
        fn round_trip_is_bounded(c in any_quantizer(), u_max in 0.1f64..100.0, v in -1e6f64..1e6) {
            let a = ActuatorConfig { u_max, max_grade: c.max_grade };
            let u = mnesor_to_real(real_to_mnesor(v, &c).unwrap(), &a);
            prop_assert!(u.abs() <= u_max);
            prop_assert!(a.levels().contains(&u));
            let flipped = mnesor_to_real(real_to_mnesor(-v, &c).unwrap(), &a);
            prop_assert_eq!(flipped, -u);
        }
    }
}
