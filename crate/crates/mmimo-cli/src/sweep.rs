//! Axis expansion, sweep execution, and CSV assembly.
//!
//! Row order is axis-major, curve-minor, and every estimator is deterministic
//! in (config, seed), so a sweep document is byte-identical across runs and
//! thread counts.

use std::fmt::Write as _;
use std::str::FromStr;

use mmimo::{ergodic_sum_rate, ergodic_zf_mat_u1, SystemConfig};

use crate::curve::{Curve, CurveSource};
use crate::HarnessError;

/// Quantity swept along the x axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Users,
    PowerDb,
    Antennas,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Users => "users",
            SweepAxis::PowerDb => "power-db",
            SweepAxis::Antennas => "antennas",
        }
    }

    /// True when axis values are counts and must be whole numbers.
    pub fn is_count(self) -> bool {
        !matches!(self, SweepAxis::PowerDb)
    }
}

impl FromStr for SweepAxis {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "users" => Ok(SweepAxis::Users),
            "power-db" => Ok(SweepAxis::PowerDb),
            "antennas" => Ok(SweepAxis::Antennas),
            _ => Err(HarnessError::BadAxisName { name: s.to_string() }),
        }
    }
}

/// Expands an inclusive "start:stop:step" grid. The stop point is kept when
/// it lands within one part in 1e9 of a grid point, so dB grids like
/// -20:20:0.5 include both endpoints.
pub fn expand_range(spec: &str) -> Result<Vec<f64>, HarnessError> {
    let bad = |reason| HarnessError::BadAxisRange { spec: spec.to_string(), reason };
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected start:stop:step"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad("all three fields must be numbers"))?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !nums.iter().all(|v| v.is_finite()) {
        return Err(bad("all three fields must be finite"));
    }
    if step <= 0.0 {
        return Err(bad("step must be positive"));
    }
    if stop < start {
        return Err(bad("stop must not be below start"));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

/// One sweep: an axis, its grid, the fixed operating point, and the curves.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub axis_values: Vec<f64>,
    pub fixed: SystemConfig,
    pub curves: Vec<Curve>,
    /// Allow closed forms outside their certified power range.
    pub exploratory: bool,
}

impl SweepSpec {
    pub fn new(
        axis: SweepAxis,
        axis_values: Vec<f64>,
        fixed: SystemConfig,
        curves: Vec<Curve>,
        exploratory: bool,
    ) -> Result<Self, HarnessError> {
        if axis_values.is_empty() {
            return Err(HarnessError::EmptyAxis);
        }
        for i in 1..axis_values.len() {
            let (prev, cur) = (axis_values[i - 1], axis_values[i]);
            // NaN entries must be rejected, so the pair fails unless provably increasing
            if prev.is_nan() || cur.is_nan() || cur <= prev {
                return Err(HarnessError::AxisNotIncreasing { index: i });
            }
        }
        if axis.is_count() {
            for &v in &axis_values {
                if v.fract() != 0.0 || !(1.0..=1e9).contains(&v) {
                    return Err(HarnessError::FractionalCount { axis: axis.name(), value: v });
                }
            }
        }
        if curves.is_empty() {
            return Err(HarnessError::NoCurves);
        }
        Ok(SweepSpec { axis, axis_values, fixed, curves, exploratory })
    }
}

/// One CSV data row. `rate_stderr` and `trials` stay `None` for closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub axis_value: f64,
    pub curve_name: &'static str,
    pub rate_mean: f64,
    pub rate_stderr: Option<f64>,
    pub trials: Option<u64>,
}

pub const CSV_HEADER: &str = "axis,curve,rate,stderr,trials";

/// 9 significant digits, stable across platforms.
pub fn fmt9(x: f64) -> String {
    format!("{x:.8e}")
}

fn config_at(spec: &SweepSpec, value: f64) -> SystemConfig {
    let mut cfg = spec.fixed;
    match spec.axis {
        SweepAxis::Users => cfg.k = value as usize,
        SweepAxis::Antennas => cfg.m = value as usize,
        SweepAxis::PowerDb => {
            let p = 10f64.powf(value / 10.0);
            cfg.pt = p;
            cfg.pu = p;
        }
    }
    cfg
}

fn eval_curve(
    cfg: &SystemConfig,
    curve: Curve,
    axis: SweepAxis,
    value: f64,
    exploratory: bool,
) -> Result<(f64, Option<f64>, Option<u64>), HarnessError> {
    let fail = |message: String| HarnessError::CurveFailure {
        curve: curve.name,
        axis: axis.name(),
        value,
        message,
    };
    match curve.source {
        CurveSource::MonteCarlo { direction, scheme, normalization } => {
            let est = ergodic_sum_rate(cfg, direction, scheme, normalization)
                .map_err(|e| fail(e.to_string()))?;
            Ok((est.mean_rate, Some(est.std_error), Some(est.trials)))
        }
        CurveSource::ZfMatU1 => {
            let est = ergodic_zf_mat_u1(cfg).map_err(|e| fail(e.to_string()))?;
            Ok((est.mean_rate, Some(est.std_error), Some(est.trials)))
        }
        CurveSource::ClosedForm(kind) => {
            let power = if kind.is_downlink() { cfg.pt } else { cfg.pu };
            if !exploratory && !kind.valid_at(power) {
                return Err(HarnessError::FormOutOfRange { name: kind.name(), power });
            }
            let form = kind.evaluate(power, cfg.m, cfg.k).map_err(|e| fail(e.to_string()))?;
            Ok((form.value, None, None))
        }
    }
}

/// Evaluates every (axis value, curve) pair in output order.
pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<CsvRow>, HarnessError> {
    let mut rows = Vec::with_capacity(spec.axis_values.len() * spec.curves.len());
    for &value in &spec.axis_values {
        let cfg = config_at(spec, value);
        for &curve in &spec.curves {
            let (rate_mean, rate_stderr, trials) =
                eval_curve(&cfg, curve, spec.axis, value, spec.exploratory)?;
            rows.push(CsvRow {
                axis_value: value,
                curve_name: curve.name,
                rate_mean,
                rate_stderr,
                trials,
            });
        }
    }
    Ok(rows)
}

/// Renders rows as a CSV document with a trailing newline.
pub fn render_csv(axis: SweepAxis, rows: &[CsvRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let axis_cell = if axis.is_count() {
            format!("{}", row.axis_value as u64)
        } else {
            fmt9(row.axis_value)
        };
        let stderr_cell = row.rate_stderr.map(fmt9).unwrap_or_default();
        let trials_cell = row.trials.map(|t| t.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{axis_cell},{},{},{stderr_cell},{trials_cell}",
            row.curve_name,
            fmt9(row.rate_mean)
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn run_sweep(spec: &SweepSpec) -> Result<String, HarnessError> {
    Ok(render_csv(spec.axis, &sweep_rows(spec)?))
}
