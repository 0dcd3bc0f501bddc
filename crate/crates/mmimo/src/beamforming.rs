//! Precoders and combiners built from one channel realization.
//!
//! Downlink precoding produces an unnormalized M x K matrix F first (columns
//! f_k), then a separate normalization step scales it into G. The two stages
//! stay separate because the rate analysis needs both the raw column norms
//! and the normalized columns. Uplink combiners are never normalized; the
//! uplink SINR is scale-invariant per combiner column.

use thiserror::Error;

use crate::config::{LinkDirection, Normalization, Scheme};
use crate::linalg::{ComplexMatrix, LinalgError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BeamformingError {
    #[error("k ({k}) exceeds m ({m}): the zero-forcing Gram matrix is singular by construction")]
    KExceedsM { k: usize, m: usize },
    #[error("scheme {scheme} does not apply to the {direction}")]
    UnsupportedScheme { scheme: &'static str, direction: &'static str },
    #[error("column {j} has zero norm; the draw is degenerate")]
    ZeroColumn { j: usize },
    #[error("matrix has zero Frobenius norm; the draw is degenerate")]
    ZeroMatrix,
    #[error("normalize requires Vector or Matrix mode; None means leave the combiner unscaled")]
    NoneMode,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A ready-to-use set of beamforming columns.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamformerSet {
    /// M x K; column k is g_k (downlink) or w_k (uplink).
    pub matrix: ComplexMatrix,
    pub scheme: Scheme,
    pub normalization: Normalization,
    pub direction: LinkDirection,
}

/// Shared Gram-path kernel: H^H (H H^H)^{-1}, an M x K matrix.
///
/// Both the ZF precoder and the ZF combiner reduce to this on the row space;
/// going through the K x K Gram system avoids ever factoring an M x M matrix.
fn zf_gram_path(h: &ComplexMatrix) -> Result<ComplexMatrix, BeamformingError> {
    let (k, m) = (h.rows(), h.cols());
    if k > m {
        return Err(BeamformingError::KExceedsM { k, m });
    }
    let hh = h.hermitian();
    let gram = h.matmul(&hh)?;
    let gram_inv = gram.invert_hpd()?;
    Ok(hh.matmul(&gram_inv)?)
}

/// Unnormalized ZF precoder F with H F = I_K.
pub fn zf_precoder(h: &ComplexMatrix) -> Result<ComplexMatrix, BeamformingError> {
    zf_gram_path(h)
}

/// Unnormalized MRT precoder F = H^H.
pub fn mrt_precoder(h: &ComplexMatrix) -> ComplexMatrix {
    h.hermitian()
}

/// ZF combiner W with w_i^T h_j = delta_ij.
pub fn zf_combiner(h: &ComplexMatrix) -> Result<ComplexMatrix, BeamformingError> {
    zf_gram_path(h)
}

/// MRC combiner W = H^H, so w_k^T h_l is the inner product h_k^H h_l.
pub fn mrc_combiner(h: &ComplexMatrix) -> ComplexMatrix {
    h.hermitian()
}

/// Scales precoder columns to unit total transmit power.
///
/// Vector mode gives every stream the same power: g_k = f_k / (sqrt(K) |f_k|).
/// Matrix mode preserves the column-norm ratios: g_k = f_k / |F|_F.
pub fn normalize(f: &ComplexMatrix, mode: Normalization) -> Result<ComplexMatrix, BeamformingError> {
    let (m, k) = (f.rows(), f.cols());
    match mode {
        Normalization::Vector => {
            let root_k = (k as f64).sqrt();
            let mut g = ComplexMatrix::zeros(m, k);
            for j in 0..k {
                let norm = f.column_norm_sq(j).sqrt();
                if norm <= 0.0 {
                    return Err(BeamformingError::ZeroColumn { j });
                }
                let s = 1.0 / (root_k * norm);
                for i in 0..m {
                    g.set(i, j, f.get(i, j) * s);
                }
            }
            Ok(g)
        }
        Normalization::Matrix => {
            let fro = f.frobenius_norm_sq().sqrt();
            if fro <= 0.0 {
                return Err(BeamformingError::ZeroMatrix);
            }
            let s = 1.0 / fro;
            Ok(ComplexMatrix::from_fn(m, k, |i, j| f.get(i, j) * s))
        }
        Normalization::None => Err(BeamformingError::NoneMode),
    }
}

/// Builds the normalized downlink precoder for one realization.
pub fn downlink_beamformer(
    h: &ComplexMatrix,
    scheme: Scheme,
    normalization: Normalization,
) -> Result<BeamformerSet, BeamformingError> {
    if !scheme.supports(LinkDirection::Downlink) {
        return Err(BeamformingError::UnsupportedScheme {
            scheme: scheme.name(),
            direction: LinkDirection::Downlink.name(),
        });
    }
    let f = match scheme {
        Scheme::Zf => zf_precoder(h)?,
        Scheme::Mrt => mrt_precoder(h),
        Scheme::Mrc => unreachable!("rejected above"),
    };
    let g = normalize(&f, normalization)?;
    Ok(BeamformerSet { matrix: g, scheme, normalization, direction: LinkDirection::Downlink })
}

/// Builds the uplink combiner for one realization; combiners stay unscaled.
pub fn uplink_combiner(h: &ComplexMatrix, scheme: Scheme) -> Result<BeamformerSet, BeamformingError> {
    if !scheme.supports(LinkDirection::Uplink) {
        return Err(BeamformingError::UnsupportedScheme {
            scheme: scheme.name(),
            direction: LinkDirection::Uplink.name(),
        });
    }
    let w = match scheme {
        Scheme::Zf => zf_combiner(h)?,
        Scheme::Mrc => mrc_combiner(h),
        Scheme::Mrt => unreachable!("rejected above"),
    };
    Ok(BeamformerSet {
        matrix: w,
        scheme,
        normalization: Normalization::None,
        direction: LinkDirection::Uplink,
    })
}
