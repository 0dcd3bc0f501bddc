//! Command-line harness around the `mmimo` library: canned figure sweeps,
//! a statistical self-check suite, and the scheme-selection threshold report.
//!
//! Sweeps emit CSV; validate and thresholds emit plain text. Powers enter in
//! dB and are converted to linear exactly once, at the argument boundary.

use thiserror::Error;

pub mod cfgfile;
pub mod curve;
pub mod figures;
pub mod sweep;
pub mod thresholds;
pub mod validation;

/// Everything the harness can refuse to do, with enough context to repair
/// the invocation.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("axis needs at least one value")]
    EmptyAxis,
    #[error("axis values must be strictly increasing (violated at position {index})")]
    AxisNotIncreasing { index: usize },
    #[error("{axis} axis values must be whole numbers >= 1, got {value}")]
    FractionalCount { axis: &'static str, value: f64 },
    #[error("a sweep needs at least one curve")]
    NoCurves,
    #[error("unknown curve {name:?}; known curves: {known}")]
    UnknownCurve { name: String, known: String },
    #[error("unknown figure {id:?}; known figures: {known}")]
    UnknownFigure { id: String, known: String },
    #[error(
        "closed form {name} is outside its certified power range at linear power {power}; \
         rerun with --exploratory to emit it anyway"
    )]
    FormOutOfRange { name: &'static str, power: f64 },
    #[error("curve {curve} at {axis} = {value}: {message}")]
    CurveFailure {
        curve: &'static str,
        axis: &'static str,
        value: f64,
        message: String,
    },
    #[error("bad axis name {name:?}: use users, power-db, or antennas")]
    BadAxisName { name: String },
    #[error("bad axis range {spec:?}: {reason}")]
    BadAxisRange { spec: String, reason: &'static str },
    #[error("config line {line}: expected \"key = value\", got {text:?}")]
    ConfigSyntax { line: usize, text: String },
    #[error("config line {line}: unknown key {key:?} (known: m, k, pt_db, pu_db, trials, seed, axis)")]
    UnknownKey { line: usize, key: String },
    #[error("config line {line}: cannot parse {value:?} as a value for {key}")]
    BadConfigValue { line: usize, key: String, value: String },
    #[error(transparent)]
    Selection(#[from] mmimo::SelectionError),
}
