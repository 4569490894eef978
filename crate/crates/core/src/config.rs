//! JSON run configuration.
//!
//! Every key is optional; missing keys take the defaults below. Unknown keys
//! are rejected and every error names the offending path.
//!
//! ```json
//! {
//!   "sim":    { "dt": 0.001, "duration": 10.0, "theta0": 0.2, "omega0": 0.0,
//!               "controller": "pd", "settling_epsilon": 0.01 },
//!   "plant":  { "a": 1.0, "g": 9.81, "m": 1.0, "u_max": 30.0 },
//!   "pd":     { "kp": 10.0, "kd": 5.0, "sign_mode": "plant-consistent" },
//!   "mnesor": {
//!     "theta_quantizer": { "scale": 0.025, "deadband": 0.005, "max_grade": 8,
//!                          "deadband_target": "all" },
//!     "omega_quantizer": { "scale": 0.125, "deadband": 0.025, "max_grade": 8,
//!                          "deadband_target": "all" },
//!     "actuator": { "u_max": 30.0, "max_grade": 8 },
//!     "cross_sign_zero": true
//!   }
//! }
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::control::{Controller, MnesorControllerConfig, PdGains, SignMode};
use crate::convert::{ActuatorConfig, DeadbandTarget, QuantizerConfig};
use crate::error::ValidationError;
use crate::plant::PendulumParams;
use crate::sim::SimConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControllerKind {
    #[default]
    Pd,
    Mnesor,
}

impl fmt::Display for ControllerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ControllerKind::Pd => "pd",
            ControllerKind::Mnesor => "mnesor",
        })
    }
}

impl FromStr for ControllerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pd" => Ok(ControllerKind::Pd),
            "mnesor" => Ok(ControllerKind::Mnesor),
            other => Err(format!(
                "unknown controller '{other}' (expected pd or mnesor)"
            )),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    sim: Option<RawSim>,
    plant: Option<RawPlant>,
    pd: Option<RawPd>,
    mnesor: Option<RawMnesor>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSim {
    dt: Option<f64>,
    duration: Option<f64>,
    theta0: Option<f64>,
    omega0: Option<f64>,
    controller: Option<ControllerKind>,
    settling_epsilon: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlant {
    a: Option<f64>,
    g: Option<f64>,
    m: Option<f64>,
    u_max: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPd {
    kp: Option<f64>,
    kd: Option<f64>,
    sign_mode: Option<SignMode>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuantizer {
    scale: Option<f64>,
    deadband: Option<f64>,
    max_grade: Option<u32>,
    deadband_target: Option<DeadbandTarget>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawActuator {
    u_max: Option<f64>,
    max_grade: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMnesor {
    theta_quantizer: Option<RawQuantizer>,
    omega_quantizer: Option<RawQuantizer>,
    actuator: Option<RawActuator>,
    cross_sign_zero: Option<bool>,
}

impl RawQuantizer {
    fn over(self, base: QuantizerConfig) -> QuantizerConfig {
        QuantizerConfig {
            scale: self.scale.unwrap_or(base.scale),
            deadband: self.deadband.unwrap_or(base.deadband),
            max_grade: self.max_grade.unwrap_or(base.max_grade),
            deadband_target: self.deadband_target.unwrap_or(base.deadband_target),
        }
    }
}

/// A fully resolved run configuration. Serializes in the file layout, so
/// an echoed config can be loaded back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub dt: f64,
    pub duration: f64,
    pub theta0: f64,
    pub omega0: f64,
    pub controller: ControllerKind,
    pub settling_epsilon: f64,
    pub plant: PendulumParams,
    pub pd: PdGains,
    pub mnesor: MnesorControllerConfig,
}

#[derive(Serialize)]
struct FileView<'a> {
    sim: SimView,
    plant: &'a PendulumParams,
    pd: &'a PdGains,
    mnesor: &'a MnesorControllerConfig,
}

#[derive(Serialize)]
struct SimView {
    dt: f64,
    duration: f64,
    theta0: f64,
    omega0: f64,
    controller: ControllerKind,
    settling_epsilon: f64,
}

impl Serialize for RunConfig {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FileView {
            sim: SimView {
                dt: self.dt,
                duration: self.duration,
                theta0: self.theta0,
                omega0: self.omega0,
                controller: self.controller,
                settling_epsilon: self.settling_epsilon,
            },
            plant: &self.plant,
            pd: &self.pd,
            mnesor: &self.mnesor,
        }
        .serialize(serializer)
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dt: 0.001,
            duration: 10.0,
            theta0: 0.2,
            omega0: 0.0,
            controller: ControllerKind::Pd,
            settling_epsilon: 0.01,
            plant: PendulumParams::default(),
            pd: PdGains::default(),
            mnesor: MnesorControllerConfig::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config error at {path} (line {line}, column {column}): {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid config value at {0}")]
    Invalid(#[from] ValidationError),
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let (line, column) = (inner.line(), inner.column());
            let full = inner.to_string();
            let message = full
                .strip_suffix(&format!(" at line {line} column {column}"))
                .unwrap_or(&full)
                .to_string();
            ConfigError::Syntax {
                path,
                line,
                column,
                message,
            }
        })?;
        let cfg = RunConfig::resolve(raw);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        RunConfig::from_json(&text)
    }

    fn resolve(raw: RawFile) -> Self {
        let d = RunConfig::default();
        let sim = raw.sim.unwrap_or_default();
        let plant = raw.plant.unwrap_or_default();
        let pd = raw.pd.unwrap_or_default();
        let mnesor = raw.mnesor.unwrap_or_default();
        let actuator = mnesor.actuator.unwrap_or_default();
        RunConfig {
            dt: sim.dt.unwrap_or(d.dt),
            duration: sim.duration.unwrap_or(d.duration),
            theta0: sim.theta0.unwrap_or(d.theta0),
            omega0: sim.omega0.unwrap_or(d.omega0),
            controller: sim.controller.unwrap_or(d.controller),
            settling_epsilon: sim.settling_epsilon.unwrap_or(d.settling_epsilon),
            plant: PendulumParams {
                a: plant.a.unwrap_or(d.plant.a),
                g: plant.g.unwrap_or(d.plant.g),
                m: plant.m.unwrap_or(d.plant.m),
                u_max: plant.u_max.unwrap_or(d.plant.u_max),
            },
            pd: PdGains {
                kp: pd.kp.unwrap_or(d.pd.kp),
                kd: pd.kd.unwrap_or(d.pd.kd),
                sign_mode: pd.sign_mode.unwrap_or(d.pd.sign_mode),
            },
            mnesor: MnesorControllerConfig {
                theta_quantizer: mnesor
                    .theta_quantizer
                    .unwrap_or_default()
                    .over(d.mnesor.theta_quantizer),
                omega_quantizer: mnesor
                    .omega_quantizer
                    .unwrap_or_default()
                    .over(d.mnesor.omega_quantizer),
                actuator: ActuatorConfig {
                    u_max: actuator.u_max.unwrap_or(d.mnesor.actuator.u_max),
                    max_grade: actuator.max_grade.unwrap_or(d.mnesor.actuator.max_grade),
                },
                cross_sign_zero: mnesor.cross_sign_zero.unwrap_or(d.mnesor.cross_sign_zero),
            },
        }
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let sim = self.sim_config(self.controller);
        sim.validate().map_err(|e| match e.path.split('.').next() {
            Some("plant") | Some("pd") | Some("mnesor") => e,
            _ => e.within("sim"),
        })?;
        if !(self.settling_epsilon.is_finite() && self.settling_epsilon > 0.0) {
            return Err(ValidationError::new(
                "sim.settling_epsilon",
                "must be finite and > 0",
            ));
        }
        self.pd.validate().map_err(|e| e.within("pd"))?;
        self.mnesor.validate().map_err(|e| e.within("mnesor"))
    }

    pub fn controller(&self, kind: ControllerKind) -> Controller {
        match kind {
            ControllerKind::Pd => Controller::Pd(self.pd),
            ControllerKind::Mnesor => Controller::Mnesor(self.mnesor),
        }
    }

    pub fn sim_config(&self, kind: ControllerKind) -> SimConfig {
        SimConfig {
            dt: self.dt,
            duration: self.duration,
            theta0: self.theta0,
            omega0: self.omega0,
            plant: self.plant,
            controller: self.controller(kind),
        }
    }
}
