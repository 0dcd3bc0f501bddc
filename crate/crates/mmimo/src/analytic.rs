//! Closed-form ergodic sum-rate expressions and their validity regimes.
//!
//! Pure scalar functions of (power, M, K). Each formula carries validity
//! tags so the harness can refuse to compare, say, a low-SNR approximation
//! against a high-power Monte-Carlo run. Powers are linear; convert from dB
//! before calling.

use std::f64::consts::LN_2;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("k ({k}) exceeds m ({m}) in a zero-forcing closed form")]
    KExceedsM { k: usize, m: usize },
    #[error("power must be nonnegative, got {p}")]
    NegativePower { p: f64 },
}

/// Regime in which a closed form tracks the true ergodic rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validity {
    LowSnr,
    HighSnr,
    Bound,
    ExactLimit,
}

/// One evaluated closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub name: &'static str,
    pub value: f64,
    pub validity: &'static [Validity],
}

fn check_zf_domain(pt: f64, m: usize, k: usize) -> Result<(), AnalyticError> {
    assert!(m >= 1 && k >= 1, "m and k must be positive");
    if k > m {
        return Err(AnalyticError::KExceedsM { k, m });
    }
    if pt < 0.0 {
        return Err(AnalyticError::NegativePower { p: pt });
    }
    Ok(())
}

fn check_power(p: f64) {
    assert!(p >= 0.0 && p.is_finite(), "power must be finite and nonnegative, got {p}");
}

/// K log2(1 + pt (M-K) / K); a bound valid at any SNR.
pub fn zf_dl_lower(pt: f64, m: usize, k: usize) -> Result<f64, AnalyticError> {
    check_zf_domain(pt, m, k)?;
    let (mf, kf) = (m as f64, k as f64);
    Ok(kf * (1.0 + pt * (mf - kf) / kf).log2())
}

/// K log2(1 + pt (M-K+1) / K); upper bound, tight at low SNR.
pub fn zf_dl_vec(pt: f64, m: usize, k: usize) -> Result<f64, AnalyticError> {
    check_zf_domain(pt, m, k)?;
    let (mf, kf) = (m as f64, k as f64);
    Ok(kf * (1.0 + pt * (mf - kf + 1.0) / kf).log2())
}

/// K log2(1 + pt M / (pt (K-1) + K)); vector-normalized MRT at low SNR.
pub fn mrt_dl_vec_low(pt: f64, m: usize, k: usize) -> f64 {
    check_power(pt);
    let (mf, kf) = (m as f64, k as f64);
    kf * (1.0 + pt * mf / (pt * (kf - 1.0) + kf)).log2()
}

/// K log2(1 + pt (M+1) / (pt (K-1) + K)); vector-normalized MRT at high SNR.
pub fn mrt_dl_vec_high(pt: f64, m: usize, k: usize) -> f64 {
    check_power(pt);
    let (mf, kf) = (m as f64, k as f64);
    kf * (1.0 + pt * (mf + 1.0) / (pt * (kf - 1.0) + kf)).log2()
}

/// K log2(1 + pt (M+1) / (pt (K-1) + K)); matrix-normalized MRT at either
/// SNR extreme. Identical to the vector-normalized high-SNR form, which is
/// why no separate high/low pair exists for matrix normalization.
pub fn mrt_dl_mat(pt: f64, m: usize, k: usize) -> f64 {
    mrt_dl_vec_high(pt, m, k)
}

/// K log2(1 + pu (M+1) / (pu (K-1) + 1)); MRC at high SNR.
pub fn mrc_ul_high(pu: f64, m: usize, k: usize) -> f64 {
    check_power(pu);
    let (mf, kf) = (m as f64, k as f64);
    kf * (1.0 + pu * (mf + 1.0) / (pu * (kf - 1.0) + 1.0)).log2()
}

/// K log2(1 + pu M / (pu (K-1) + 1)); MRC at low SNR.
pub fn mrc_ul_low(pu: f64, m: usize, k: usize) -> f64 {
    check_power(pu);
    let (mf, kf) = (m as f64, k as f64);
    kf * (1.0 + pu * mf / (pu * (kf - 1.0) + 1.0)).log2()
}

/// K log2(1 + pu (M-K+1)); uplink ZF at low SNR.
pub fn zf_ul_low(pu: f64, m: usize, k: usize) -> Result<f64, AnalyticError> {
    check_zf_domain(pu, m, k)?;
    let (mf, kf) = (m as f64, k as f64);
    Ok(kf * (1.0 + pu * (mf - kf + 1.0)).log2())
}

/// Which M = K limit to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticScheme {
    /// pt log2(e), independent of M
    ZfDl,
    /// M log2(1 + pt / (pt + 1))
    MrtDl,
    /// M exactly, independent of power
    MrcUl,
    /// M log2(1 + p_sum / (p_sum + 1)) with power read as the total budget
    MrcUlScaled,
}

/// Limit of the sum rate as M = K grow together.
pub fn asymptotic_mk(scheme: AsymptoticScheme, power: f64, m: usize) -> f64 {
    check_power(power);
    let mf = m as f64;
    match scheme {
        AsymptoticScheme::ZfDl => power * std::f64::consts::LOG2_E,
        AsymptoticScheme::MrtDl => mf * (1.0 + power / (power + 1.0)).log2(),
        AsymptoticScheme::MrcUl => mf,
        AsymptoticScheme::MrcUlScaled => mf * (1.0 + power / (power + 1.0)).log2(),
    }
}

/// Difference of the rate gradients (ZF minus MRT) with respect to K at the
/// downlink user cross point:
/// (pt+1)^2 / ((M+1) pt ln4) - (M+1)(pt+1) / (M pt (2M+1) ln2).
///
/// The second denominator's log term is (2M+1) ln2, the chain-rule factor of
/// a log2 expression; the value changes sign at pt = (3M+2)/(M(2M+1)) and is
/// positive only above it.
pub fn gradient_difference(pt: f64, m: usize) -> f64 {
    assert!(pt > 0.0, "pt must be positive, got {pt}");
    assert!(m >= 2, "m must be at least 2, got {m}");
    let mf = m as f64;
    let ln4 = 2.0 * LN_2;
    (pt + 1.0) * (pt + 1.0) / ((mf + 1.0) * pt * ln4)
        - (mf + 1.0) * (pt + 1.0) / (mf * pt * (2.0 * mf + 1.0) * LN_2)
}

/// Catalog of the closed forms the harness can plot or validate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormKind {
    ZfDlLower,
    ZfDlVec,
    MrtDlVecLow,
    MrtDlVecHigh,
    MrtDlMat,
    MrcUlHigh,
    MrcUlLow,
    ZfUlLow,
}

impl ClosedFormKind {
    pub const ALL: [ClosedFormKind; 8] = [
        ClosedFormKind::ZfDlLower,
        ClosedFormKind::ZfDlVec,
        ClosedFormKind::MrtDlVecLow,
        ClosedFormKind::MrtDlVecHigh,
        ClosedFormKind::MrtDlMat,
        ClosedFormKind::MrcUlHigh,
        ClosedFormKind::MrcUlLow,
        ClosedFormKind::ZfUlLow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedFormKind::ZfDlLower => "zf-dl-lower",
            ClosedFormKind::ZfDlVec => "zf-dl-vec",
            ClosedFormKind::MrtDlVecLow => "mrt-dl-vec-low",
            ClosedFormKind::MrtDlVecHigh => "mrt-dl-vec-high",
            ClosedFormKind::MrtDlMat => "mrt-dl-mat",
            ClosedFormKind::MrcUlHigh => "mrc-ul-high",
            ClosedFormKind::MrcUlLow => "mrc-ul-low",
            ClosedFormKind::ZfUlLow => "zf-ul-low",
        }
    }

    pub fn validity(self) -> &'static [Validity] {
        match self {
            ClosedFormKind::ZfDlLower => &[Validity::Bound],
            ClosedFormKind::ZfDlVec => &[Validity::LowSnr, Validity::Bound],
            ClosedFormKind::MrtDlVecLow => &[Validity::LowSnr],
            ClosedFormKind::MrtDlVecHigh => &[Validity::HighSnr],
            ClosedFormKind::MrtDlMat => &[Validity::LowSnr, Validity::HighSnr],
            ClosedFormKind::MrcUlHigh => &[Validity::HighSnr],
            ClosedFormKind::MrcUlLow => &[Validity::LowSnr],
            ClosedFormKind::ZfUlLow => &[Validity::LowSnr],
        }
    }

    /// True when a formula may be compared against a Monte-Carlo run at
    /// linear power `p`: a bound always applies, a low-SNR form needs
    /// p <= 1, a high-SNR form needs p >= 1.
    pub fn valid_at(self, p: f64) -> bool {
        self.validity().iter().any(|v| match v {
            Validity::Bound | Validity::ExactLimit => true,
            Validity::LowSnr => p <= 1.0,
            Validity::HighSnr => p >= 1.0,
        })
    }

    /// True for downlink forms (power argument is pt); false for uplink (pu).
    pub fn is_downlink(self) -> bool {
        !matches!(
            self,
            ClosedFormKind::MrcUlHigh | ClosedFormKind::MrcUlLow | ClosedFormKind::ZfUlLow
        )
    }

    pub fn evaluate(self, power: f64, m: usize, k: usize) -> Result<ClosedForm, AnalyticError> {
        let value = match self {
            ClosedFormKind::ZfDlLower => zf_dl_lower(power, m, k)?,
            ClosedFormKind::ZfDlVec => zf_dl_vec(power, m, k)?,
            ClosedFormKind::MrtDlVecLow => mrt_dl_vec_low(power, m, k),
            ClosedFormKind::MrtDlVecHigh => mrt_dl_vec_high(power, m, k),
            ClosedFormKind::MrtDlMat => mrt_dl_mat(power, m, k),
            ClosedFormKind::MrcUlHigh => mrc_ul_high(power, m, k),
            ClosedFormKind::MrcUlLow => mrc_ul_low(power, m, k),
            ClosedFormKind::ZfUlLow => zf_ul_low(power, m, k)?,
        };
        Ok(ClosedForm { name: self.name(), value, validity: self.validity() })
    }
}
