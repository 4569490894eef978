//! Closed-loop simulation of the pendulum under either controller.
//!
//! The controller is sampled once per integration step and its output held
//! over the step. Runs are deterministic: identical configurations produce
//! bit-identical trajectories.

use serde::Serialize;
use thiserror::Error;

use crate::control::{Controller, MnesorInternals};
use crate::convert::ConvertError;
use crate::error::ValidationError;
use crate::plant::{step_rk4, PendulumParams, PendulumState, PlantError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub duration: f64,
    pub theta0: f64,
    pub omega0: f64,
    pub plant: PendulumParams,
    pub controller: Controller,
}

impl SimConfig {
    pub fn new(controller: Controller) -> Self {
        SimConfig {
            dt: 0.001,
            duration: 10.0,
            theta0: 0.2,
            omega0: 0.0,
            plant: PendulumParams::default(),
            controller,
        }
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(ValidationError::new("dt", "must be finite and > 0"));
        }
        if !(self.duration.is_finite() && self.duration >= self.dt) {
            return Err(ValidationError::new("duration", "must be finite and >= dt"));
        }
        if !self.theta0.is_finite() {
            return Err(ValidationError::new("theta0", "must be finite"));
        }
        if !self.omega0.is_finite() {
            return Err(ValidationError::new("omega0", "must be finite"));
        }
        self.plant.validate().map_err(|e| e.within("plant"))?;
        match &self.controller {
            Controller::Pd(g) => g.validate().map_err(|e| e.within("pd")),
            Controller::Mnesor(c) => c.validate().map_err(|e| e.within("mnesor")),
        }
    }

    /// Number of integration steps; the trajectory holds one more sample.
    pub fn steps(&self) -> usize {
        (self.duration / self.dt).round() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub theta: f64,
    pub omega: f64,
    pub u: f64,
    #[serde(skip)]
    pub mnesor: Option<MnesorInternals>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Completed,
    FellOver,
    /// The integrator produced a non-finite state.
    Diverged,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub controller: &'static str,
    pub dt: f64,
    pub samples: Vec<Sample>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Invalid(#[from] ValidationError),
    #[error("{0}")]
    Signal(#[from] ConvertError),
    #[error("comparison runs differ in {0}")]
    Mismatch(&'static str),
}

/// Runs one closed-loop simulation.
///
/// Sample `i` holds the state at `t = i·dt` and the control computed from it.
/// A fall-over (`|θ| > π`) or a non-finite state ends the run early with the
/// corresponding status; the samples up to that point are kept.
pub fn run(cfg: &SimConfig) -> Result<Trajectory, SimError> {
    cfg.validate()?;
    let steps = cfg.steps();
    let mut samples = Vec::with_capacity(steps + 1);
    let mut state = PendulumState::new(cfg.theta0, cfg.omega0);
    let mut status = Status::Completed;
    for i in 0..=steps {
        state.t = i as f64 * cfg.dt;
        let out = cfg.controller.evaluate(&state, &cfg.plant)?;
        let u = out.u.clamp(-cfg.plant.u_max, cfg.plant.u_max);
        samples.push(Sample {
            t: state.t,
            theta: state.theta,
            omega: state.omega,
            u,
            mnesor: out.internals,
        });
        if state.fell_over() {
            status = Status::FellOver;
            break;
        }
        if i == steps {
            break;
        }
        match step_rk4(&cfg.plant, &state, u, cfg.dt) {
            Ok(next) => state = next,
            Err(PlantError::NonFinite { .. }) => {
                status = Status::Diverged;
                break;
            }
            Err(PlantError::BadStep(_)) => unreachable!("dt validated above"),
        }
    }
    Ok(Trajectory {
        controller: cfg.controller.name(),
        dt: cfg.dt,
        samples,
        status,
    })
}

/// Summary figures of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub status: Status,
    /// Settling band used for `settling_time`, rad.
    pub epsilon: f64,
    /// Earliest time after which `|θ| < ε` holds for the rest of the run;
    /// `None` if the run ends outside the band or did not complete.
    pub settling_time: Option<f64>,
    pub max_abs_theta: f64,
    pub max_abs_u: f64,
    /// `Σ |uᵢ|·dt`, m/s.
    pub control_effort: f64,
    pub terminal_theta: f64,
    pub samples: usize,
}

pub fn metrics(tr: &Trajectory, epsilon: f64) -> Metrics {
    let samples = &tr.samples;
    let settling_time = if tr.status != Status::Completed {
        None
    } else {
        match samples.iter().rposition(|s| s.theta.abs() >= epsilon) {
            None => samples.first().map(|s| s.t),
            Some(last) => samples.get(last + 1).map(|s| s.t),
        }
    };
    Metrics {
        status: tr.status,
        epsilon,
        settling_time,
        max_abs_theta: samples.iter().map(|s| s.theta.abs()).fold(0.0, f64::max),
        max_abs_u: samples.iter().map(|s| s.u.abs()).fold(0.0, f64::max),
        control_effort: samples.iter().map(|s| s.u.abs()).sum::<f64>() * tr.dt,
        terminal_theta: samples.last().map_or(0.0, |s| s.theta),
        samples: samples.len(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub trajectory: Trajectory,
    pub metrics: Metrics,
}

/// Runs two configurations side by side on the same plant and initial state.
pub fn compare(
    left: &SimConfig,
    right: &SimConfig,
    epsilon: f64,
) -> Result<[RunResult; 2], SimError> {
    if left.plant != right.plant {
        return Err(SimError::Mismatch("plant parameters"));
    }
    if left.theta0 != right.theta0 || left.omega0 != right.omega0 {
        return Err(SimError::Mismatch("initial conditions"));
    }
    if left.dt != right.dt || left.duration != right.duration {
        return Err(SimError::Mismatch("time grid"));
    }
    let one = |cfg: &SimConfig| {
        run(cfg).map(|trajectory| RunResult {
            metrics: metrics(&trajectory, epsilon),
            trajectory,
        })
    };
    let (a, b) = std::thread::scope(|scope| {
        let handle = scope.spawn(|| one(left));
        let b = one(right);
        (handle.join().expect("simulation thread panicked"), b)
    });
    Ok([a?, b?])
}
