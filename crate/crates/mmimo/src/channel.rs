//! Channel generation and empirical moment checks.
//!
//! Every random draw flows through a [`StreamKey`]: the 64-bit seed and the
//! trial index are mixed through a bijective finalizer into the ChaCha8 seed,
//! so trial t produces the same matrix whether trials run serially or on a
//! thread pool. Entries are CN(0,1): real and imaginary parts are independent
//! N(0, 1/2).

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::config::SystemConfig;
use crate::linalg::ComplexMatrix;

/// Identifies one independent random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub seed: u64,
    pub trial_index: u64,
}

/// splitmix64 finalizer; bijective on u64.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Builds the generator for a stream key. Distinct keys decorrelate because
/// the mix is bijective and the golden-ratio multiplier spreads trial indices
/// across the seed space.
pub fn rng_for(key: StreamKey) -> ChaCha8Rng {
    let s0 = mix64(key.seed);
    let s1 = mix64(s0 ^ key.trial_index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    ChaCha8Rng::seed_from_u64(s1)
}

/// One CN(0,1) sample.
pub fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

fn draw_matrix(rows: usize, cols: usize, key: StreamKey) -> ComplexMatrix {
    let mut rng = rng_for(key);
    let mut h = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            h.set(i, j, standard_complex(&mut rng));
        }
    }
    h
}

/// Draws the K x M channel for one trial.
pub fn draw_channel(cfg: &SystemConfig, key: StreamKey) -> ComplexMatrix {
    draw_matrix(cfg.k, cfg.m, key)
}

/// Empirical and analytic statistics for one scalar quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantityStats {
    pub name: &'static str,
    pub empirical_mean: f64,
    pub empirical_var: f64,
    pub analytic_mean: f64,
    pub analytic_var: f64,
    pub samples: u64,
    /// (empirical_mean - analytic_mean) / sqrt(analytic_var / samples)
    pub z_score: f64,
}

/// Moment check over independent vector pairs (h_k, h_l) of length M.
///
/// Quantities covered: |h_k|^2, the inner product h_k^H h_l, |h_k|^4 and
/// |h_k^H h_l|^2; analytic means are M, 0, M^2+M, M and analytic variances
/// M, M, 4M^3+10M^2+6M, M^2+2M. For the complex inner product the empirical
/// mean reported is the modulus of the complex sample mean.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub m: usize,
    pub samples: u64,
    pub quantities: [QuantityStats; 4],
}

impl MomentReport {
    pub fn max_abs_z(&self) -> f64 {
        self.quantities.iter().map(|q| q.z_score.abs()).fold(0.0, f64::max)
    }
}

fn sample_stats(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Estimates the four vector moments from `samples` independent pairs.
pub fn estimate_moments(m: usize, samples: usize, seed: u64) -> MomentReport {
    assert!(m >= 1, "antenna count must be positive");
    assert!(samples >= 1000, "need at least 1000 samples, got {samples}");

    let mut norm_sq = Vec::with_capacity(samples);
    let mut cross = Vec::with_capacity(samples);
    let mut norm_4 = Vec::with_capacity(samples);
    let mut cross_abs_sq = Vec::with_capacity(samples);

    for i in 0..samples {
        let mut rng = rng_for(StreamKey { seed, trial_index: i as u64 });
        let mut ns = 0.0;
        let mut ip = Complex64::new(0.0, 0.0);
        let hk: Vec<Complex64> = (0..m).map(|_| standard_complex(&mut rng)).collect();
        let hl: Vec<Complex64> = (0..m).map(|_| standard_complex(&mut rng)).collect();
        for j in 0..m {
            ns += hk[j].norm_sqr();
            ip += hk[j].conj() * hl[j];
        }
        norm_sq.push(ns);
        cross.push(ip);
        norm_4.push(ns * ns);
        cross_abs_sq.push(ip.norm_sqr());
    }

    let mf = m as f64;
    let n = samples as f64;

    let (ns_mean, ns_var) = sample_stats(&norm_sq);
    let (n4_mean, n4_var) = sample_stats(&norm_4);
    let (ca_mean, ca_var) = sample_stats(&cross_abs_sq);

    let cr_mean_c = cross.iter().sum::<Complex64>() / n;
    let cr_var = cross.iter().map(|z| (z - cr_mean_c).norm_sqr()).sum::<f64>() / (n - 1.0);

    let zify = |emp: f64, mean: f64, var: f64| (emp - mean) / (var / n).sqrt();

    let quantities = [
        QuantityStats {
            name: "|h_k|^2",
            empirical_mean: ns_mean,
            empirical_var: ns_var,
            analytic_mean: mf,
            analytic_var: mf,
            samples: samples as u64,
            z_score: zify(ns_mean, mf, mf),
        },
        QuantityStats {
            name: "h_k^H h_l",
            empirical_mean: cr_mean_c.norm(),
            empirical_var: cr_var,
            analytic_mean: 0.0,
            analytic_var: mf,
            samples: samples as u64,
            z_score: zify(cr_mean_c.norm(), 0.0, mf),
        },
        QuantityStats {
            name: "|h_k|^4",
            empirical_mean: n4_mean,
            empirical_var: n4_var,
            analytic_mean: mf * mf + mf,
            analytic_var: 4.0 * mf.powi(3) + 10.0 * mf * mf + 6.0 * mf,
            samples: samples as u64,
            z_score: zify(n4_mean, mf * mf + mf, 4.0 * mf.powi(3) + 10.0 * mf * mf + 6.0 * mf),
        },
        QuantityStats {
            name: "|h_k^H h_l|^2",
            empirical_mean: ca_mean,
            empirical_var: ca_var,
            analytic_mean: mf,
            analytic_var: mf * mf + 2.0 * mf,
            samples: samples as u64,
            z_score: zify(ca_mean, mf, mf * mf + 2.0 * mf),
        },
    ];

    MomentReport { m, samples: samples as u64, quantities }
}

/// max_{i,j} |(1/M)(H H^H)_{ij} - delta_{ij}| for one realization.
pub fn effective_deviation(h: &ComplexMatrix) -> f64 {
    let m = h.cols() as f64;
    let g = h
        .matmul(&h.hermitian())
        .expect("H and H^H are conformable by construction");
    let k = g.rows();
    let mut worst = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let target = if i == j { 1.0 } else { 0.0 };
            let dev = (g.get(i, j) / m - Complex64::new(target, 0.0)).norm();
            worst = worst.max(dev);
        }
    }
    worst
}

/// Median over trials of [`effective_deviation`] on fresh K x M draws.
/// Shrinks toward zero as M grows, which is the hardening effect the
/// closed-form rates lean on.
pub fn effective_channel_deviation(m: usize, k: usize, trials: usize, seed: u64) -> f64 {
    assert!(k >= 1 && k <= m, "need 1 <= k <= m, got k={k}, m={m}");
    assert!(trials >= 1, "need at least one trial");
    let mut devs: Vec<f64> = (0..trials)
        .map(|t| {
            let h = draw_matrix(k, m, StreamKey { seed, trial_index: t as u64 });
            effective_deviation(&h)
        })
        .collect();
    devs.sort_by(f64::total_cmp);
    let n = devs.len();
    if n % 2 == 1 {
        devs[n / 2]
    } else {
        0.5 * (devs[n / 2 - 1] + devs[n / 2])
    }
}
