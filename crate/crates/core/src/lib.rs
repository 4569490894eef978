//! The flat mnesor algebra and a pendulum controller built on it.
//!
//! Layers, bottom up:
//! - [`minplus`]: flat numbers, the min-plus integers.
//! - [`mnesor`]: canonical flat mnesors with addition, scaling, conjugation,
//!   internal multiplication and ordering; [`laws`] checks them exhaustively.
//! - [`expr`]: a small expression language over mnesors.
//! - [`convert`], [`plant`], [`control`], [`sim`]: real/mnesor converters, the
//!   inverted pendulum, the two feedback laws and the closed-loop harness.
//! - [`config`], [`trace`], [`plot`]: file formats.

pub mod config;
pub mod control;
pub mod convert;
pub mod error;
pub mod expr;
pub mod laws;
pub mod minplus;
pub mod mnesor;
pub mod plant;
pub mod plot;
pub mod sim;
pub mod trace;

pub use config::{ConfigError, ControllerKind, RunConfig};
pub use control::{Controller, MnesorControllerConfig, PdGains, SignMode};
pub use error::{AlgebraError, ParseError};
pub use expr::{evaluate, parse_expr, Expr, ExprError};
pub use minplus::{parse_flat, FlatNumber};
pub use mnesor::{parse_mnesor, Mnesor, Polarity};
pub use sim::{compare, metrics, run, Metrics, RunResult, SimConfig, SimError, Status, Trajectory};
