//! System configuration and the shared enumerations every other module keys on.
//!
//! Powers are linear throughout the library; decibel conversion belongs to the
//! CLI layer. Noise variance is fixed at 1 in both links, so `pt` is the total
//! downlink SNR and `pu` the per-user uplink SNR.

use thiserror::Error;

/// Simulation parameters for one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    /// Base-station antenna count M.
    pub m: usize,
    /// Single-antenna user count K.
    pub k: usize,
    /// Total downlink transmit power (linear).
    pub pt: f64,
    /// Per-user uplink transmit power (linear).
    pub pu: f64,
    /// Monte-Carlo realization count.
    pub trials: u64,
    /// Base seed for the per-trial random substreams.
    pub seed: u64,
}

/// Linear transceiver family. `Zf` serves both links; `Mrt` is the downlink
/// matched filter and `Mrc` its uplink counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Zf,
    Mrt,
    Mrc,
}

/// Precoder power normalization. `None` is only legal for uplink combiners,
/// where scaling cannot change the SINR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    Vector,
    Matrix,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkDirection {
    Downlink,
    Uplink,
}

impl Scheme {
    /// Whether the scheme is defined for the given link.
    pub fn supports(self, direction: LinkDirection) -> bool {
        match self {
            Scheme::Zf => true,
            Scheme::Mrt => direction == LinkDirection::Downlink,
            Scheme::Mrc => direction == LinkDirection::Uplink,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Zf => "zf",
            Scheme::Mrt => "mrt",
            Scheme::Mrc => "mrc",
        }
    }
}

impl LinkDirection {
    pub fn name(self) -> &'static str {
        match self {
            LinkDirection::Downlink => "downlink",
            LinkDirection::Uplink => "uplink",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("m must be at least 1 (got {0})")]
    BadM(usize),
    #[error("k must be at least 1 (got {0})")]
    BadK(usize),
    #[error("pt must be positive and finite (got {0})")]
    BadPt(f64),
    #[error("pu must be positive and finite (got {0})")]
    BadPu(f64),
    #[error("trials must be at least 1")]
    BadTrials,
    #[error("k ({k}) exceeds m ({m}): ZF Gram matrix is singular by construction")]
    KExceedsM { k: usize, m: usize },
}

/// Checks the config against the scheme's requirements and returns it
/// unchanged. ZF additionally needs `k <= m`; `k == m` is accepted but logged
/// as a warning because the Gram matrix is then ill-conditioned with nonzero
/// probability at finite precision.
pub fn validate_config(cfg: &SystemConfig, scheme: Scheme) -> Result<SystemConfig, ConfigError> {
    if cfg.m < 1 {
        return Err(ConfigError::BadM(cfg.m));
    }
    if cfg.k < 1 {
        return Err(ConfigError::BadK(cfg.k));
    }
    if !(cfg.pt > 0.0 && cfg.pt.is_finite()) {
        return Err(ConfigError::BadPt(cfg.pt));
    }
    if !(cfg.pu > 0.0 && cfg.pu.is_finite()) {
        return Err(ConfigError::BadPu(cfg.pu));
    }
    if cfg.trials < 1 {
        return Err(ConfigError::BadTrials);
    }
    if scheme == Scheme::Zf && cfg.k > cfg.m {
        return Err(ConfigError::KExceedsM { k: cfg.k, m: cfg.m });
    }
    if let Some(w) = config_warning(cfg, scheme) {
        log::warn!("{}", w);
    }
    Ok(*cfg)
}

/// Warning text for accepted-but-delicate configs, if any.
pub fn config_warning(cfg: &SystemConfig, scheme: Scheme) -> Option<String> {
    if scheme == Scheme::Zf && cfg.k == cfg.m {
        Some(format!(
            "k == m == {}: ZF Gram matrix may be ill-conditioned on some draws",
            cfg.m
        ))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SystemConfig {
        SystemConfig {
            m: 24,
            k: 20,
            pt: 1.0,
            pu: 1.0,
            trials: 100,
            seed: 7,
        }
    }

    #[test]
    fn accepts_valid_zf_config() {
        let cfg = base();
        assert_eq!(validate_config(&cfg, Scheme::Zf).unwrap(), cfg);
    }

    #[test]
    fn validation_is_idempotent() {
        let cfg = base();
        let once = validate_config(&cfg, Scheme::Zf).unwrap();
        let twice = validate_config(&once, Scheme::Zf).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn rejects_k_above_m_for_zf_only() {
        let cfg = SystemConfig { m: 4, k: 5, ..base() };
        let err = validate_config(&cfg, Scheme::Zf).unwrap_err();
        assert_eq!(err, ConfigError::KExceedsM { k: 5, m: 4 });
        // the message must name the violated fields
        assert!(err.to_string().contains('k') && err.to_string().contains('m'));
        // MRT has no rank requirement
        assert!(validate_config(&cfg, Scheme::Mrt).is_ok());
    }

    #[test]
    fn rejects_nonpositive_fields_by_name() {
        let cfg = SystemConfig { pt: 0.0, ..base() };
        assert!(validate_config(&cfg, Scheme::Zf)
            .unwrap_err()
            .to_string()
            .contains("pt"));
        let cfg = SystemConfig { pu: -1.0, ..base() };
        assert!(validate_config(&cfg, Scheme::Mrc)
            .unwrap_err()
            .to_string()
            .contains("pu"));
        let cfg = SystemConfig { k: 0, ..base() };
        assert!(validate_config(&cfg, Scheme::Zf)
            .unwrap_err()
            .to_string()
            .contains('k'));
        let cfg = SystemConfig { trials: 0, ..base() };
        assert!(validate_config(&cfg, Scheme::Zf)
            .unwrap_err()
            .to_string()
            .contains("trials"));
    }

    #[test]
    fn k_equals_m_is_accepted_with_warning() {
        let cfg = SystemConfig { m: 24, k: 24, ..base() };
        assert!(validate_config(&cfg, Scheme::Zf).is_ok());
        assert!(config_warning(&cfg, Scheme::Zf).is_some());
        assert!(config_warning(&cfg, Scheme::Mrt).is_none());
    }

    #[test]
    fn scheme_direction_support() {
        assert!(Scheme::Zf.supports(LinkDirection::Downlink));
        assert!(Scheme::Zf.supports(LinkDirection::Uplink));
        assert!(Scheme::Mrt.supports(LinkDirection::Downlink));
        assert!(!Scheme::Mrt.supports(LinkDirection::Uplink));
        assert!(Scheme::Mrc.supports(LinkDirection::Uplink));
        assert!(!Scheme::Mrc.supports(LinkDirection::Downlink));
    }
}
