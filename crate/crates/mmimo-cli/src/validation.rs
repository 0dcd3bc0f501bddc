//! Statistical self-checks behind the `validate` subcommand.
//!
//! Failures are report content, not errors: the caller turns the aggregate
//! into an exit status. Every check is deterministic in the seed.

use mmimo::{
    downlink_beamformer, downlink_sinr, draw_channel, ergodic_sum_rate, estimate_moments,
    sum_rate, LinkDirection, Normalization, Scheme, StreamKey, SystemConfig,
};

/// Outcome of one self-check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub fn all_passed(checks: &[CheckResult]) -> bool {
    checks.iter().all(|c| c.passed)
}

const MOMENT_SAMPLES: usize = 100_000;
const MOMENT_Z_LIMIT: f64 = 4.5;
const MOMENT_VAR_TOL: f64 = 0.10;

/// Channel-vector moments against their analytic means and variances.
fn moment_check(m: usize, seed: u64) -> CheckResult {
    let report = estimate_moments(m, MOMENT_SAMPLES, seed);
    let max_z = report.max_abs_z();
    let worst_var = report
        .quantities
        .iter()
        .map(|q| (q.empirical_var / q.analytic_var - 1.0).abs())
        .fold(0.0, f64::max);
    CheckResult {
        name: format!("moments m={m}"),
        passed: max_z <= MOMENT_Z_LIMIT && worst_var <= MOMENT_VAR_TOL,
        detail: format!(
            "max |z| = {max_z:.2}, worst variance deviation = {:.2}% over {MOMENT_SAMPLES} samples",
            worst_var * 100.0
        ),
    }
}

/// Per-draw ZF sum rate with vector normalization must not fall below the
/// matrix-normalized rate; the margin is nonnegative draw by draw, not just
/// in the mean.
fn ordering_check(seed: u64) -> CheckResult {
    let draws = 2000u64;
    let cfg = SystemConfig { m: 24, k: 20, pt: 1.0, pu: 1.0, trials: draws, seed };
    let powers = [0.1, 1.0, 10.0];
    let mut violations = 0u64;
    let mut smallest_margin = f64::INFINITY;
    for t in 0..draws {
        let h = draw_channel(&cfg, StreamKey { seed, trial_index: t });
        let vec_set =
            downlink_beamformer(&h, Scheme::Zf, Normalization::Vector).expect("k <= m holds");
        let mat_set =
            downlink_beamformer(&h, Scheme::Zf, Normalization::Matrix).expect("k <= m holds");
        for pt in powers {
            let rv = sum_rate(&downlink_sinr(&h, &vec_set, pt).expect("shapes agree"));
            let rm = sum_rate(&downlink_sinr(&h, &mat_set, pt).expect("shapes agree"));
            let margin = rv - rm;
            smallest_margin = smallest_margin.min(margin);
            if margin < -1e-10 {
                violations += 1;
            }
        }
    }
    CheckResult {
        name: "ZF vector rate >= matrix rate per draw".to_string(),
        passed: violations == 0,
        detail: format!(
            "{violations} violations in {} comparisons, smallest margin = {smallest_margin:.3e}",
            draws * powers.len() as u64
        ),
    }
}

/// Normalized ZF must keep cross-user leakage at rounding level.
fn orthogonality_check(seed: u64) -> CheckResult {
    let draws = 500u64;
    let cfg = SystemConfig { m: 24, k: 8, pt: 1.0, pu: 1.0, trials: draws, seed };
    let mut worst = 0.0f64;
    for t in 0..draws {
        let h = draw_channel(&cfg, StreamKey { seed, trial_index: t });
        let set =
            downlink_beamformer(&h, Scheme::Zf, Normalization::Vector).expect("k <= m holds");
        for k in 0..cfg.k {
            for l in 0..cfg.k {
                if k != l {
                    worst = worst.max(h.row_dot_col(k, &set.matrix, l).norm());
                }
            }
        }
    }
    CheckResult {
        name: "ZF cross-user leakage".to_string(),
        passed: worst <= 1e-8,
        detail: format!("max off-diagonal |h_k^T g_l| = {worst:.3e} over {draws} draws"),
    }
}

/// Both normalizations must spend exactly unit total power.
fn unit_power_check(seed: u64) -> CheckResult {
    let draws = 500u64;
    let cfg = SystemConfig { m: 24, k: 8, pt: 1.0, pu: 1.0, trials: draws, seed };
    let mut worst = 0.0f64;
    for t in 0..draws {
        let h = draw_channel(&cfg, StreamKey { seed, trial_index: t });
        for scheme in [Scheme::Zf, Scheme::Mrt] {
            for norm in [Normalization::Vector, Normalization::Matrix] {
                let set = downlink_beamformer(&h, scheme, norm).expect("k <= m holds");
                worst = worst.max((set.matrix.frobenius_norm_sq() - 1.0).abs());
            }
        }
    }
    CheckResult {
        name: "unit total precoder power".to_string(),
        passed: worst <= 1e-10,
        detail: format!("max |power - 1| = {worst:.3e} over {draws} draws x 4 precoders"),
    }
}

/// Oversubscribed ZF must come back as a configuration error, not a panic.
fn oversubscription_check(seed: u64) -> CheckResult {
    let cfg = SystemConfig { m: 24, k: 30, pt: 1.0, pu: 1.0, trials: 4, seed };
    let name = "ZF refuses k > m".to_string();
    match ergodic_sum_rate(&cfg, LinkDirection::Downlink, Scheme::Zf, Normalization::Vector) {
        Err(e) => CheckResult { name, passed: true, detail: format!("rejected with: {e}") },
        Ok(_) => CheckResult {
            name,
            passed: false,
            detail: "a 30-user ZF run on 24 antennas went through".to_string(),
        },
    }
}

/// Runs the full suite in a fixed order.
pub fn run_validation(seed: u64) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for m in [4, 8, 24] {
        checks.push(moment_check(m, seed));
    }
    checks.push(ordering_check(seed));
    checks.push(orthogonality_check(seed));
    checks.push(unit_power_check(seed));
    checks.push(oversubscription_check(seed));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_for_two_seeds() {
        for seed in [1, 2] {
            let checks = run_validation(seed);
            assert_eq!(checks.len(), 7);
            for c in &checks {
                assert!(c.passed, "seed {seed}: {} failed: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn oversubscription_is_an_error_not_a_panic() {
        let check = oversubscription_check(5);
        assert!(check.passed);
        assert!(check.detail.contains("exceeds"));
    }
}
