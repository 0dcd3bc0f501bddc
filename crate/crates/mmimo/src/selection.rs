//! Transceiver mode selection from the operating point alone.
//!
//! The low-SNR closed forms for ZF and maximum-ratio processing cross at a
//! power that depends only on (M, K), so the scheme choice reduces to one
//! threshold comparison per link. Equality resolves to ZF. All powers are
//! linear.

use thiserror::Error;

use crate::config::{LinkDirection, Scheme};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SelectionError {
    #[error("downlink selection needs at least two users; the k=1 cross point is degenerate")]
    SingleUserDownlink,
    #[error("k ({k}) exceeds m ({m})")]
    KExceedsM { k: usize, m: usize },
    #[error("m must be at least 2 for a cross power, got {m}")]
    TooFewAntennas { m: usize },
    #[error("power must be positive, got {p}")]
    NonPositivePower { p: f64 },
}

/// What kind of boundary a decision was made against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdKind {
    /// scheme flips as power crosses it at fixed (m, k)
    PowerThreshold,
    /// below it maximum-ratio wins for every user count
    PowerCross,
    /// scheme flips as the user count crosses it at fixed power
    UserCross,
}

/// One mode-selection outcome, with the boundary that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeDecision {
    pub direction: LinkDirection,
    pub chosen: Scheme,
    pub threshold_kind: ThresholdKind,
    /// linear power for the power kinds, a (possibly fractional) user count
    /// for UserCross
    pub threshold_value: f64,
    pub m: usize,
    pub k: usize,
    pub power: f64,
}

/// Downlink power threshold K^2 / ((K-1)(M-K+1)); ZF wins at or above it.
pub fn p_th_dl(m: usize, k: usize) -> Result<f64, SelectionError> {
    if k < 2 {
        return Err(SelectionError::SingleUserDownlink);
    }
    if k > m {
        return Err(SelectionError::KExceedsM { k, m });
    }
    let (mf, kf) = (m as f64, k as f64);
    Ok(kf * kf / ((kf - 1.0) * (mf - kf + 1.0)))
}

/// Uplink power threshold 1 / (M-K+1); ZF wins at or above it.
pub fn p_th_ul(m: usize, k: usize) -> Result<f64, SelectionError> {
    if k > m {
        return Err(SelectionError::KExceedsM { k, m });
    }
    assert!(k >= 1, "k must be positive");
    let (mf, kf) = (m as f64, k as f64);
    Ok(1.0 / (mf - kf + 1.0))
}

/// Power below which maximum-ratio processing beats ZF for every user count:
/// 4/(M-1) on the downlink, 1/(M-1) on the uplink. Equals the k=2 power
/// threshold, where the thresholds take their minimum over K.
pub fn p_cross(direction: LinkDirection, m: usize) -> Result<f64, SelectionError> {
    if m < 2 {
        return Err(SelectionError::TooFewAntennas { m });
    }
    let mf = m as f64;
    Ok(match direction {
        LinkDirection::Downlink => 4.0 / (mf - 1.0),
        LinkDirection::Uplink => 1.0 / (mf - 1.0),
    })
}

/// Downlink user cross point pt (M+1) / (1 + pt); MRT wins at or above it.
/// Fractional on purpose; the caller compares an integer K against it.
pub fn k_cross_dl(pt: f64, m: usize) -> f64 {
    assert!(pt > 0.0, "pt must be positive, got {pt}");
    let mf = m as f64;
    pt * (mf + 1.0) / (1.0 + pt)
}

/// Uplink user cross point M + 1 - 1/pu; MRC wins at or above it.
pub fn k_cross_ul(pu: f64, m: usize) -> f64 {
    assert!(pu > 0.0, "pu must be positive, got {pu}");
    let mf = m as f64;
    mf + 1.0 - 1.0 / pu
}

/// Picks the better linear scheme for the operating point.
pub fn select_mode(
    direction: LinkDirection,
    power: f64,
    m: usize,
    k: usize,
) -> Result<ModeDecision, SelectionError> {
    // NaN power must be refused, not silently compared
    if power.is_nan() || power <= 0.0 {
        return Err(SelectionError::NonPositivePower { p: power });
    }
    let (threshold, zf_alternative) = match direction {
        LinkDirection::Downlink => (p_th_dl(m, k)?, Scheme::Mrt),
        LinkDirection::Uplink => (p_th_ul(m, k)?, Scheme::Mrc),
    };
    let chosen = if power >= threshold { Scheme::Zf } else { zf_alternative };
    Ok(ModeDecision {
        direction,
        chosen,
        threshold_kind: ThresholdKind::PowerThreshold,
        threshold_value: threshold,
        m,
        k,
        power,
    })
}
