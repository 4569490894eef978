//! Feedback laws: a proportional-derivative baseline and the mnesor law
//! `U = Ξ × Ω`.

use serde::{Deserialize, Serialize};

use crate::convert::{
    mnesor_to_real, real_to_mnesor, ActuatorConfig, ConvertError, QuantizerConfig,
};
use crate::error::ValidationError;
use crate::mnesor::Mnesor;
use crate::plant::{PendulumParams, PendulumState};

/// Sign applied to `kp·θ + kd·ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignMode {
    /// `u = −(kp·θ + kd·ω)`, as the law is usually written. It destabilizes
    /// this crate's plant, whose control enters `ω̇` with a negative sign.
    PaperLiteral,
    /// `u = +(kp·θ + kd·ω)`: stabilizing for the plant in [`crate::plant`].
    #[default]
    PlantConsistent,
}

impl SignMode {
    fn sigma(self) -> f64 {
        match self {
            SignMode::PaperLiteral => -1.0,
            SignMode::PlantConsistent => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PdGains {
    pub kp: f64,
    pub kd: f64,
    pub sign_mode: SignMode,
}

impl Default for PdGains {
    fn default() -> Self {
        PdGains {
            kp: 10.0,
            kd: 5.0,
            sign_mode: SignMode::PlantConsistent,
        }
    }
}

impl PdGains {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if !self.kp.is_finite() {
            return Err(ValidationError::new("kp", "must be finite"));
        }
        if !self.kd.is_finite() {
            return Err(ValidationError::new("kd", "must be finite"));
        }
        Ok(())
    }
}

pub fn pd_control(s: &PendulumState, gains: &PdGains, u_max: f64) -> f64 {
    let raw = gains.sign_mode.sigma() * (gains.kp * s.theta + gains.kd * s.omega);
    raw.clamp(-u_max, u_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MnesorControllerConfig {
    pub theta_quantizer: QuantizerConfig,
    pub omega_quantizer: QuantizerConfig,
    pub actuator: ActuatorConfig,
    /// Force `U = ZERO` whenever Ξ and Ω have opposite polarity, not only on
    /// equal grades.
    pub cross_sign_zero: bool,
}

impl Default for MnesorControllerConfig {
    fn default() -> Self {
        MnesorControllerConfig {
            theta_quantizer: QuantizerConfig::THETA,
            omega_quantizer: QuantizerConfig::OMEGA,
            actuator: ActuatorConfig::default(),
            cross_sign_zero: true,
        }
    }
}

impl MnesorControllerConfig {
    pub fn validate(&self) -> Result<(), ValidationError> {
        self.theta_quantizer
            .validate()
            .map_err(|e| e.within("theta_quantizer"))?;
        self.omega_quantizer
            .validate()
            .map_err(|e| e.within("omega_quantizer"))?;
        self.actuator.validate().map_err(|e| e.within("actuator"))?;
        let l = self.actuator.max_grade;
        for (name, q) in [
            ("theta_quantizer", &self.theta_quantizer),
            ("omega_quantizer", &self.omega_quantizer),
        ] {
            if q.max_grade != l {
                return Err(ValidationError::new(
                    format!("{name}.max_grade"),
                    format!("must equal actuator.max_grade ({l})"),
                ));
            }
        }
        Ok(())
    }
}

/// Controller inputs and output in mnesor form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MnesorInternals {
    pub xi: Mnesor,
    pub omega: Mnesor,
    pub u: Mnesor,
}

/// `Ξ × Ω`, or `ZERO` on opposite polarities when `cross_sign_zero` is set.
pub fn combine(xi: Mnesor, omega: Mnesor, cross_sign_zero: bool) -> Mnesor {
    match (xi.polarity(), omega.polarity()) {
        (Some(a), Some(b)) if cross_sign_zero && a != b => Mnesor::Zero,
        _ => xi.mmul(omega),
    }
}

pub fn mnesor_control(
    s: &PendulumState,
    cfg: &MnesorControllerConfig,
) -> Result<(f64, MnesorInternals), ConvertError> {
    let xi = real_to_mnesor(s.theta, &cfg.theta_quantizer)?;
    let omega = real_to_mnesor(s.omega, &cfg.omega_quantizer)?;
    let u = combine(xi, omega, cfg.cross_sign_zero);
    Ok((
        mnesor_to_real(u, &cfg.actuator),
        MnesorInternals { xi, omega, u },
    ))
}

/// Either feedback law behind one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Controller {
    Pd(PdGains),
    Mnesor(MnesorControllerConfig),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlOutput {
    pub u: f64,
    pub internals: Option<MnesorInternals>,
}

impl Controller {
    pub fn name(&self) -> &'static str {
        match self {
            Controller::Pd(_) => "pd",
            Controller::Mnesor(_) => "mnesor",
        }
    }

    pub fn evaluate(
        &self,
        s: &PendulumState,
        plant: &PendulumParams,
    ) -> Result<ControlOutput, ConvertError> {
        Ok(match self {
            Controller::Pd(gains) => ControlOutput {
                u: pd_control(s, gains, plant.u_max),
                internals: None,
            },
            Controller::Mnesor(cfg) => {
                let (u, internals) = mnesor_control(s, cfg)?;
                ControlOutput {
                    u,
                    internals: Some(internals),
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minplus::FlatNumber;
    use proptest::prelude::*;

    fn state(theta: f64, omega: f64) -> PendulumState {
        PendulumState::new(theta, omega)
    }

    #[test]
    fn pd_law() {
        let g = PdGains::default();
        assert_eq!(pd_control(&state(0.0, 0.0), &g, 30.0), 0.0);
        assert!((pd_control(&state(0.1, 0.2), &g, 30.0) - 2.0).abs() < 1e-12);
        assert_eq!(pd_control(&state(10.0, 10.0), &g, 30.0), 30.0);
        let literal = PdGains {
            sign_mode: SignMode::PaperLiteral,
            ..g
        };
        assert!((pd_control(&state(0.1, 0.2), &literal, 30.0) + 2.0).abs() < 1e-12);
        assert_eq!(pd_control(&state(10.0, 10.0), &literal, 30.0), -30.0);
    }

    #[test]
    fn saturated_inputs_give_full_actuation() {
        let cfg = MnesorControllerConfig::default();
        let (u, m) = mnesor_control(&state(1.0, 5.0), &cfg).unwrap();
        assert_eq!(m.u, Mnesor::Pst(FlatNumber::from(8)));
        assert_eq!(u, 30.0);
        let (u, _) = mnesor_control(&state(-1.0, -5.0), &cfg).unwrap();
        assert_eq!(u, -30.0);
    }

    #[test]
    fn opposite_equal_grades_cancel() {
        let cfg = MnesorControllerConfig {
            cross_sign_zero: false,
            ..Default::default()
        };
        // θ = 0.06 → grade 3; ω = −0.3 → grade 3.
        let (u, m) = mnesor_control(&state(0.06, -0.3), &cfg).unwrap();
        assert_eq!(m.xi, Mnesor::Pst(FlatNumber::from(3)));
        assert_eq!(m.omega, Mnesor::Ngt(FlatNumber::from(3)));
        assert_eq!(m.u, Mnesor::Zero);
        assert_eq!(u, 0.0);
    }

    #[test]
    fn cross_sign_gate() {
        let on = MnesorControllerConfig::default();
        let off = MnesorControllerConfig {
            cross_sign_zero: false,
            ..on
        };
        // Grades 8 and 2: the algebra keeps the stronger angle term.
        let s = state(0.2, -0.2);
        let (u_on, m_on) = mnesor_control(&s, &on).unwrap();
        let (u_off, m_off) = mnesor_control(&s, &off).unwrap();
        assert_eq!(m_on.u, Mnesor::Zero);
        assert_eq!(u_on, 0.0);
        assert_eq!(m_off.u, Mnesor::Pst(FlatNumber::from(8)));
        assert_eq!(u_off, 30.0);
    }

    #[test]
    fn angle_deadband_leaves_rate_damping() {
        let cfg = MnesorControllerConfig::default();
        let (u, m) = mnesor_control(&state(0.001, 0.3), &cfg).unwrap();
        assert_eq!(m.xi, Mnesor::All);
        assert_eq!(m.u, m.omega);
        assert_eq!(u, 30.0 * 3.0 / 8.0);
    }

    #[test]
    fn validation_names_the_field() {
        let mut cfg = MnesorControllerConfig::default();
        cfg.omega_quantizer.max_grade = 4;
        assert_eq!(
            cfg.validate().unwrap_err().path,
            "omega_quantizer.max_grade"
        );
        cfg.omega_quantizer.scale = -1.0;
        assert_eq!(cfg.validate().unwrap_err().path, "omega_quantizer.scale");
        let g = PdGains {
            kp: f64::NAN,
            ..Default::default()
        };
        assert_eq!(g.validate().unwrap_err().path, "kp");
    }

    proptest! {
        #[test]
        fn both_laws_are_odd_and_bounded(theta in -3.0f64..3.0, omega in -20.0f64..20.0, gate: bool) {
            let plant = PendulumParams::default();
            let mnesor = MnesorControllerConfig { cross_sign_zero: gate, ..Default::default() };
            for c in [Controller::Pd(PdGains::default()), Controller::Mnesor(mnesor)] {
                let u = c.evaluate(&state(theta, omega), &plant).unwrap().u;
                let v = c.evaluate(&state(-theta, -omega), &plant).unwrap().u;
                prop_assert_eq!(u, -v);
                prop_assert!(u.abs() <= 30.0);
            }
        }

        #[test]
        fn mnesor_output_is_quantized(theta in -3.0f64..3.0, omega in -20.0f64..20.0) {
            let cfg = MnesorControllerConfig::default();
            let (u, _) = mnesor_control(&state(theta, omega), &cfg).unwrap();
            prop_assert!(cfg.actuator.levels().contains(&u));
        }

        #[test]
        fn opposite_signs(theta in -1.0f64..1.0, omega in -5.0f64..5.0) {
            let on = MnesorControllerConfig::default();
            let off = MnesorControllerConfig { cross_sign_zero: false, ..on };
            let (_, m) = mnesor_control(&state(theta, omega), &on).unwrap();
            let opposite = matches!(
                (m.xi.polarity(), m.omega.polarity()),
                (Some(a), Some(b)) if a != b
            );
            prop_assume!(opposite);
            prop_assert_eq!(mnesor_control(&state(theta, omega), &on).unwrap().0, 0.0);
            let (u_off, _) = mnesor_control(&state(theta, omega), &off).unwrap();
            prop_assert_eq!(u_off == 0.0, m.xi.grade() == m.omega.grade());
        }
    }
}
