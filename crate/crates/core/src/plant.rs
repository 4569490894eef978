//! Inverted pendulum on a cart.
//!
//! A point mass sits on top of a weightless bar of length `a`; the control is
//! the cart acceleration `u = ẍ`. With θ measured from the upright vertical:
//!
//! ```text
//! θ̇ = ω
//! ω̇ = (g·sin θ − u·cos θ) / a
//! ẋ = v
//! v̇ = u
//! ```
//!
//! The mass cancels out of every equation but is kept in [`PendulumParams`].

use serde::Serialize;
use thiserror::Error;

use crate::error::ValidationError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PendulumParams {
    /// Bar length, m.
    pub a: f64,
    /// Gravity, m/s².
    pub g: f64,
    /// Point mass, kg.
    pub m: f64,
    /// Actuation saturation, m/s².
    pub u_max: f64,
}

impl Default for PendulumParams {
    fn default() -> Self {
        PendulumParams {
            a: 1.0,
            g: 9.81,
            m: 1.0,
            u_max: 30.0,
        }
    }
}

impl PendulumParams {
    pub fn validate(&self) -> Result<(), ValidationError> {
        for (name, value) in [("a", self.a), ("g", self.g), ("u_max", self.u_max)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ValidationError::new(name, "must be finite and > 0"));
            }
        }
        if !self.m.is_finite() {
            return Err(ValidationError::new("m", "must be finite"));
        }
        Ok(())
    }

    /// `√(g/a)`, the divergence rate of the uncontrolled linearized pendulum.
    pub fn natural_rate(&self) -> f64 {
        (self.g / self.a).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PendulumState {
    pub t: f64,
    pub theta: f64,
    pub omega: f64,
    pub x: f64,
    pub v: f64,
}

impl PendulumState {
    pub fn new(theta: f64, omega: f64) -> Self {
        PendulumState {
            theta,
            omega,
            ..Default::default()
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.t, self.theta, self.omega, self.x, self.v]
            .iter()
            .all(|c| c.is_finite())
    }

    pub fn fell_over(&self) -> bool {
        self.theta.abs() > std::f64::consts::PI
    }

    fn offset(&self, d: &Derivative, h: f64) -> PendulumState {
        PendulumState {
            t: self.t + h,
            theta: self.theta + h * d.theta,
            omega: self.omega + h * d.omega,
            x: self.x + h * d.x,
            v: self.v + h * d.v,
        }
    }
}

/// Time derivatives of the state components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Derivative {
    pub theta: f64,
    pub omega: f64,
    pub x: f64,
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum PlantError {
    #[error("state became non-finite at t = {t}")]
    NonFinite { t: f64 },
    #[error("time step {0} must be finite and > 0")]
    BadStep(f64),
}

pub fn derivative(p: &PendulumParams, s: &PendulumState, u: f64) -> Derivative {
    let (sin, cos) = s.theta.sin_cos();
    Derivative {
        theta: s.omega,
        omega: (p.g * sin - u * cos) / p.a,
        x: s.v,
        v: u,
    }
}

/// One classical Runge–Kutta step with `u` held constant over the step.
pub fn step_rk4(
    p: &PendulumParams,
    s: &PendulumState,
    u: f64,
    dt: f64,
) -> Result<PendulumState, PlantError> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(PlantError::BadStep(dt));
    }
    let k1 = derivative(p, s, u);
    let k2 = derivative(p, &s.offset(&k1, dt / 2.0), u);
    let k3 = derivative(p, &s.offset(&k2, dt / 2.0), u);
    let k4 = derivative(p, &s.offset(&k3, dt), u);
    let blend = |a: f64, b: f64, c: f64, d: f64| (a + 2.0 * b + 2.0 * c + d) / 6.0;
    let next = PendulumState {
        t: s.t + dt,
        theta: s.theta + dt * blend(k1.theta, k2.theta, k3.theta, k4.theta),
        omega: s.omega + dt * blend(k1.omega, k2.omega, k3.omega, k4.omega),
        x: s.x + dt * blend(k1.x, k2.x, k3.x, k4.x),
        v: s.v + dt * blend(k1.v, k2.v, k3.v, k4.v),
    };
    if next.is_finite() {
        Ok(next)
    } else {
        Err(PlantError::NonFinite { t: next.t })
    }
}
