//! Multi-user massive-MIMO sum-rate library.
//!
//! Simulates a single-cell system where an M-antenna base station serves K
//! single-antenna users through linear transceivers (zero-forcing and maximum
//! ratio), estimates ergodic sum rates by Monte Carlo, evaluates the matching
//! closed-form approximations, and decides which scheme to run from the
//! operating point alone.
//!
//! Conventions used throughout: the channel is the K x M matrix H with
//! i.i.d. unit-variance complex Gaussian entries, noise power is one on both
//! links, and all powers are linear (callers convert dB at the boundary).

pub mod analytic;
pub mod beamforming;
pub mod channel;
pub mod config;
pub mod linalg;
pub mod rates;
pub mod selection;

pub use analytic::{
    asymptotic_mk, gradient_difference, mrc_ul_high, mrc_ul_low, mrt_dl_mat, mrt_dl_vec_high,
    mrt_dl_vec_low, zf_dl_lower, zf_dl_vec, zf_ul_low, AnalyticError, AsymptoticScheme,
    ClosedForm, ClosedFormKind, Validity,
};
pub use beamforming::{
    downlink_beamformer, mrc_combiner, mrt_precoder, normalize, uplink_combiner, zf_combiner,
    zf_precoder, BeamformerSet, BeamformingError,
};
pub use channel::{draw_channel, effective_channel_deviation, estimate_moments, MomentReport, StreamKey};
pub use config::{
    validate_config, ConfigError, LinkDirection, Normalization, Scheme, SystemConfig,
};
pub use linalg::{ComplexMatrix, LinalgError};
pub use rates::{
    downlink_sinr, ergodic_sum_rate, ergodic_zf_mat_u1, sum_rate, uplink_sinr, RateError,
    RateEstimate, SinrVector,
};
pub use selection::{
    k_cross_dl, k_cross_ul, p_cross, p_th_dl, p_th_ul, select_mode, ModeDecision, SelectionError,
    ThresholdKind,
};
