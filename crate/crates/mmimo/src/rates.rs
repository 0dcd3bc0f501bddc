//! Instantaneous SINR, sum rate, and Monte-Carlo ergodic estimation.
//!
//! Noise variance is one on both links, so the downlink total SNR equals pt
//! and the per-user uplink SNR equals pu. Symbols are unit-power. The
//! Monte-Carlo estimator writes each trial into an indexed buffer and sums in
//! index order afterwards, which makes serial and parallel runs bit-equal.

use rayon::prelude::*;
use thiserror::Error;

use crate::beamforming::{downlink_beamformer, uplink_combiner, zf_precoder, BeamformerSet, BeamformingError};
use crate::channel::{draw_channel, StreamKey};
use crate::config::{validate_config, ConfigError, LinkDirection, Normalization, Scheme, SystemConfig};
use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RateError {
    #[error("beamformer set is for the {got}, not the {expected}")]
    WrongDirection { expected: &'static str, got: &'static str },
    #[error("channel is {hk}x{hm} but beamformer is {bm}x{bk}; expected {hm}x{hk}")]
    Shape { hk: usize, hm: usize, bm: usize, bk: usize },
    #[error("combiner column {k} has zero norm")]
    ZeroCombiner { k: usize },
    #[error("downlink precoding requires Vector or Matrix normalization")]
    DownlinkNeedsNormalization,
    #[error("uplink combiners are unnormalized; pass Normalization::None")]
    UplinkForbidsNormalization,
    #[error("scheme {scheme} does not apply to the {direction}")]
    UnsupportedScheme { scheme: &'static str, direction: &'static str },
    #[error("trial {trial}: degenerate draw: {source}")]
    Degenerate {
        trial: u64,
        #[source]
        source: BeamformingError,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Per-user linear SINR values for one realization.
#[derive(Debug, Clone, PartialEq)]
pub struct SinrVector {
    values: Vec<f64>,
}

impl SinrVector {
    /// Wraps raw values, enforcing that each is finite and nonnegative.
    pub fn new(values: Vec<f64>) -> Self {
        for (k, v) in values.iter().enumerate() {
            assert!(v.is_finite() && *v >= 0.0, "SINR for user {k} is {v}");
        }
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Monte-Carlo rate estimate with a normal-approximation error bar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    /// bits/s/Hz
    pub mean_rate: f64,
    /// sample standard deviation divided by sqrt(trials)
    pub std_error: f64,
    pub trials: u64,
}

impl RateEstimate {
    pub fn ci95_halfwidth(&self) -> f64 {
        1.96 * self.std_error
    }
}

fn check_shape(h: &ComplexMatrix, set: &BeamformerSet) -> Result<(), RateError> {
    let b = &set.matrix;
    if b.rows() != h.cols() || b.cols() != h.rows() {
        return Err(RateError::Shape {
            hk: h.rows(),
            hm: h.cols(),
            bm: b.rows(),
            bk: b.cols(),
        });
    }
    Ok(())
}

/// SINR_k = pt |h_k^T g_k|^2 / (pt sum_{l != k} |h_k^T g_l|^2 + 1).
pub fn downlink_sinr(h: &ComplexMatrix, g: &BeamformerSet, pt: f64) -> Result<SinrVector, RateError> {
    if g.direction != LinkDirection::Downlink {
        return Err(RateError::WrongDirection {
            expected: LinkDirection::Downlink.name(),
            got: g.direction.name(),
        });
    }
    check_shape(h, g)?;
    let k = h.rows();
    let mut out = Vec::with_capacity(k);
    for user in 0..k {
        let mut desired = 0.0;
        let mut interference = 0.0;
        for l in 0..k {
            let p = h.row_dot_col(user, &g.matrix, l).norm_sqr();
            if l == user {
                desired = p;
            } else {
                interference += p;
            }
        }
        out.push(pt * desired / (pt * interference + 1.0));
    }
    Ok(SinrVector::new(out))
}

/// SINR_k = pu |w_k^T h_k|^2 / (pu sum_{l != k} |w_k^T h_l|^2 + |w_k|^2).
///
/// The noise term carries the combiner gain, so the value is invariant to
/// rescaling any single column w_k.
pub fn uplink_sinr(h: &ComplexMatrix, w: &BeamformerSet, pu: f64) -> Result<SinrVector, RateError> {
    if w.direction != LinkDirection::Uplink {
        return Err(RateError::WrongDirection {
            expected: LinkDirection::Uplink.name(),
            got: w.direction.name(),
        });
    }
    check_shape(h, w)?;
    let k = h.rows();
    let mut out = Vec::with_capacity(k);
    for user in 0..k {
        let noise_gain = w.matrix.column_norm_sq(user);
        if noise_gain <= 0.0 {
            return Err(RateError::ZeroCombiner { k: user });
        }
        let mut desired = 0.0;
        let mut interference = 0.0;
        for l in 0..k {
            // w_user^T h_l pairs row l of H with column `user` of W
            let p = h.row_dot_col(l, &w.matrix, user).norm_sqr();
            if l == user {
                desired = p;
            } else {
                interference += p;
            }
        }
        out.push(pu * desired / (pu * interference + noise_gain));
    }
    Ok(SinrVector::new(out))
}

/// sum_k log2(1 + SINR_k).
pub fn sum_rate(sinrs: &SinrVector) -> f64 {
    sinrs.values().iter().map(|s| (1.0 + s).log2()).sum()
}

fn finish_estimate(rates: Vec<f64>) -> RateEstimate {
    let n = rates.len();
    let nf = n as f64;
    let mean = rates.iter().sum::<f64>() / nf;
    let std_error = if n > 1 {
        let var = rates.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / (nf - 1.0);
        (var / nf).sqrt()
    } else {
        0.0
    };
    RateEstimate { mean_rate: mean, std_error, trials: n as u64 }
}

/// Evaluates one trial and maps any construction failure to its trial index.
fn trial_sum_rate(
    cfg: &SystemConfig,
    direction: LinkDirection,
    scheme: Scheme,
    normalization: Normalization,
    t: u64,
) -> Result<f64, RateError> {
    let h = draw_channel(cfg, StreamKey { seed: cfg.seed, trial_index: t });
    let wrap = |source| RateError::Degenerate { trial: t, source };
    let sinrs = match direction {
        LinkDirection::Downlink => {
            let set = downlink_beamformer(&h, scheme, normalization).map_err(wrap)?;
            downlink_sinr(&h, &set, cfg.pt)?
        }
        LinkDirection::Uplink => {
            let set = uplink_combiner(&h, scheme).map_err(wrap)?;
            uplink_sinr(&h, &set, cfg.pu)?
        }
    };
    Ok(sum_rate(&sinrs))
}

/// Monte-Carlo ergodic sum rate over `cfg.trials` independent draws.
///
/// Deterministic in `cfg.seed`: trial t always uses the stream keyed by t,
/// and the reduction runs in index order, so thread count cannot change the
/// result. A degenerate draw aborts the whole estimate and names the trial.
pub fn ergodic_sum_rate(
    cfg: &SystemConfig,
    direction: LinkDirection,
    scheme: Scheme,
    normalization: Normalization,
) -> Result<RateEstimate, RateError> {
    let cfg = validate_config(cfg, scheme)?;
    if !scheme.supports(direction) {
        return Err(RateError::UnsupportedScheme {
            scheme: scheme.name(),
            direction: direction.name(),
        });
    }
    match (direction, normalization) {
        (LinkDirection::Downlink, Normalization::None) => {
            return Err(RateError::DownlinkNeedsNormalization)
        }
        (LinkDirection::Uplink, n) if n != Normalization::None => {
            return Err(RateError::UplinkForbidsNormalization)
        }
        _ => {}
    }
    let rates: Vec<f64> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| trial_sum_rate(&cfg, direction, scheme, normalization, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(finish_estimate(rates))
}

/// Monte-Carlo estimate of K log2(1 + pt E{1/|F|_F^2}) for the unnormalized
/// ZF precoder. The expectation has no closed form, so the sample mean of
/// 1/|F|_F^2 feeds the log and the error bar follows by the delta method.
pub fn ergodic_zf_mat_u1(cfg: &SystemConfig) -> Result<RateEstimate, RateError> {
    let cfg = validate_config(cfg, Scheme::Zf)?;
    let xs: Vec<f64> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let h = draw_channel(&cfg, StreamKey { seed: cfg.seed, trial_index: t });
            match zf_precoder(&h) {
                Ok(f) => Ok(1.0 / f.frobenius_norm_sq()),
                Err(source) => Err(RateError::Degenerate { trial: t, source }),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = xs.len();
    let nf = n as f64;
    let mean_x = xs.iter().sum::<f64>() / nf;
    let se_x = if n > 1 {
        let var = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum::<f64>() / (nf - 1.0);
        (var / nf).sqrt()
    } else {
        0.0
    };
    let kf = cfg.k as f64;
    let mean_rate = kf * (1.0 + cfg.pt * mean_x).log2();
    // delta method: d/dx of k log2(1 + pt x) at the sample mean
    let std_error = kf * cfg.pt / ((1.0 + cfg.pt * mean_x) * std::f64::consts::LN_2) * se_x;
    Ok(RateEstimate { mean_rate, std_error, trials: n as u64 })
}
