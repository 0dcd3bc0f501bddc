//! Acceptance gate: one test per numbered check. Each test ends in a single
//! PASS line with the measured numbers; a failing assert carries the same
//! detail in its message.

use std::time::Instant;

use mmimo::{
    downlink_beamformer, downlink_sinr, draw_channel, ergodic_sum_rate, estimate_moments,
    gradient_difference, mrc_ul_high, mrc_ul_low, mrt_dl_mat, mrt_dl_vec_low, sum_rate,
    zf_dl_vec, LinkDirection, Normalization, RateEstimate, Scheme, StreamKey, SystemConfig,
};

const SEED: u64 = 1;
const TRIALS: u64 = 10_000;

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn cfg(m: usize, k: usize, pt: f64, pu: f64, trials: u64) -> SystemConfig {
    SystemConfig { m, k, pt, pu, trials, seed: SEED }
}

fn dl(c: &SystemConfig, scheme: Scheme, norm: Normalization) -> RateEstimate {
    ergodic_sum_rate(c, LinkDirection::Downlink, scheme, norm).expect("valid config")
}

fn ul(c: &SystemConfig, scheme: Scheme) -> RateEstimate {
    ergodic_sum_rate(c, LinkDirection::Uplink, scheme, Normalization::None).expect("valid config")
}

/// Std error of a difference of two estimates, treating them as independent.
/// The estimates share channel draws, which only shrinks the true error, so
/// this bound is conservative.
fn se2(a: &RateEstimate, b: &RateEstimate) -> f64 {
    (a.std_error * a.std_error + b.std_error * b.std_error).sqrt()
}

/// Interpolated zero crossings of `diff` over `grid`.
fn crossings(grid: &[f64], diff: &[f64]) -> Vec<f64> {
    let mut found = Vec::new();
    for i in 1..diff.len() {
        let (a, b) = (diff[i - 1], diff[i]);
        if (a < 0.0) != (b < 0.0) {
            found.push(grid[i - 1] + (grid[i] - grid[i - 1]) * a / (a - b));
        }
    }
    found
}

#[test]
fn check_01_channel_moment_identities() {
    let started = Instant::now();
    let mut worst_z = 0.0f64;
    let mut worst_var = 0.0f64;
    for m in [4usize, 8, 24] {
        let report = estimate_moments(m, 100_000, SEED);
        // quantities 0, 2, 3: squared norm, fourth power, squared inner product
        for idx in [0usize, 2, 3] {
            let q = &report.quantities[idx];
            worst_z = worst_z.max(q.z_score.abs());
            assert!(
                q.z_score.abs() <= 4.5,
                "check 1 FAIL: m={m} {} mean has |z| = {:.2} > 4.5",
                q.name,
                q.z_score.abs()
            );
            let var_dev = (q.empirical_var / q.analytic_var - 1.0).abs();
            worst_var = worst_var.max(var_dev);
            assert!(
                var_dev <= 0.10,
                "check 1 FAIL: m={m} {} variance off by {:.1}%",
                q.name,
                var_dev * 100.0
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "check 1 FAIL: took {elapsed:?}, limit 10 s");
    println!(
        "check 1 PASS: moments at m in {{4, 8, 24}}, 1e5 samples: worst |z| = {worst_z:.2}, \
         worst variance deviation = {:.2}%, {elapsed:?}",
        worst_var * 100.0
    );
}

#[test]
fn check_02_zf_vector_rate_dominates_matrix_rate() {
    let draws = 10_000u64;
    let powers = [0.1, 1.0, 10.0];
    let mut comparisons = 0u64;
    let mut smallest = f64::INFINITY;
    for k in [2usize, 8, 20] {
        let c = cfg(24, k, 1.0, 1.0, draws);
        for t in 0..draws {
            let h = draw_channel(&c, StreamKey { seed: SEED, trial_index: t });
            let fv = downlink_beamformer(&h, Scheme::Zf, Normalization::Vector).expect("k <= m");
            let fm = downlink_beamformer(&h, Scheme::Zf, Normalization::Matrix).expect("k <= m");
            for pt in powers {
                let rv = sum_rate(&downlink_sinr(&h, &fv, pt).expect("shapes agree"));
                let rm = sum_rate(&downlink_sinr(&h, &fm, pt).expect("shapes agree"));
                let margin = rv - rm;
                smallest = smallest.min(margin);
                comparisons += 1;
                assert!(
                    margin >= -1e-10,
                    "check 2 FAIL: k={k} pt={pt} trial {t}: vector {rv:.9} < matrix {rm:.9}"
                );
            }
        }
    }
    println!(
        "check 2 PASS: vector >= matrix in all {comparisons} comparisons, \
         smallest margin {smallest:.3e}"
    );
}

#[test]
fn check_03_zf_vector_low_snr_closed_form() {
    let pt = db_to_linear(-13.8);
    let est = dl(&cfg(24, 20, pt, pt, TRIALS), Scheme::Zf, Normalization::Vector);
    let target = 20.0 * (1.0 + pt * 5.0 / 20.0).log2();
    let tol = (3.0 * est.std_error).max(0.02 * target);
    let gap = (est.mean_rate - target).abs();
    assert!(
        gap <= tol,
        "check 3 FAIL: mc {:.6} vs form {target:.6}, gap {gap:.2e} > tol {tol:.2e}",
        est.mean_rate
    );
    println!(
        "check 3 PASS: zf vector mc {:.6} vs form {target:.6} (gap {gap:.2e}, tol {tol:.2e})",
        est.mean_rate
    );
}

#[test]
fn check_04_mrt_closed_forms_at_low_snr() {
    let pt = db_to_linear(-13.8);
    let c = cfg(24, 20, pt, pt, TRIALS);
    let mat = dl(&c, Scheme::Mrt, Normalization::Matrix);
    let mat_form = mrt_dl_mat(pt, 24, 20);
    let mat_err = (mat.mean_rate / mat_form - 1.0).abs();
    assert!(
        mat_err <= 0.10,
        "check 4 FAIL: mrt matrix mc {:.6} vs form {mat_form:.6}, off {:.2}% > 10%",
        mat.mean_rate,
        mat_err * 100.0
    );
    let vec_est = dl(&c, Scheme::Mrt, Normalization::Vector);
    let vec_form = mrt_dl_vec_low(pt, 24, 20);
    let vec_err = (vec_est.mean_rate / vec_form - 1.0).abs();
    assert!(
        vec_err <= 0.03,
        "check 4 FAIL: mrt vector mc {:.6} vs form {vec_form:.6}, off {:.2}% > 3%",
        vec_est.mean_rate,
        vec_err * 100.0
    );
    println!(
        "check 4 PASS: mrt matrix off {:.2}% (limit 10%), vector off {:.2}% (limit 3%)",
        mat_err * 100.0,
        vec_err * 100.0
    );
}

#[test]
fn check_05_mrc_closed_forms_both_ends() {
    let hi = db_to_linear(13.8);
    let est_hi = ul(&cfg(24, 20, hi, hi, TRIALS), Scheme::Mrc);
    let form_hi = mrc_ul_high(hi, 24, 20);
    let err_hi = (est_hi.mean_rate / form_hi - 1.0).abs();
    assert!(
        err_hi <= 0.05,
        "check 5 FAIL: mrc mc {:.6} vs high form {form_hi:.6}, off {:.2}% > 5%",
        est_hi.mean_rate,
        err_hi * 100.0
    );
    let lo = db_to_linear(-13.8);
    let est_lo = ul(&cfg(24, 20, lo, lo, TRIALS), Scheme::Mrc);
    let form_lo = mrc_ul_low(lo, 24, 20);
    let err_lo = (est_lo.mean_rate / form_lo - 1.0).abs();
    assert!(
        err_lo <= 0.05,
        "check 5 FAIL: mrc mc {:.6} vs low form {form_lo:.6}, off {:.2}% > 5%",
        est_lo.mean_rate,
        err_lo * 100.0
    );
    println!(
        "check 5 PASS: mrc off {:.2}% at 13.8 dB, {:.2}% at -13.8 dB (limit 5%)",
        err_hi * 100.0,
        err_lo * 100.0
    );
}

#[test]
fn check_06_downlink_power_threshold_crossing() {
    let grid: Vec<f64> = (0..=80).map(|i| -20.0 + 0.5 * i as f64).collect();
    let diff: Vec<f64> = grid
        .iter()
        .map(|&db| {
            let p = db_to_linear(db);
            let c = cfg(24, 20, p, p, TRIALS);
            let zf = dl(&c, Scheme::Zf, Normalization::Vector);
            let mrt = dl(&c, Scheme::Mrt, Normalization::Matrix);
            zf.mean_rate - mrt.mean_rate
        })
        .collect();
    let found = crossings(&grid, &diff);
    let expected = 10.0 * (400.0f64 / 95.0).log10();
    assert!(!found.is_empty(), "check 6 FAIL: no zf/mrt crossing on [-20, 20] dB");
    for &x in &found {
        assert!(
            (x - expected).abs() <= 1.0,
            "check 6 FAIL: crossing at {x:.3} dB, expected {expected:.3} +/- 1.0 dB"
        );
    }
    println!(
        "check 6 PASS: downlink crossing at {:.3} dB (expected {expected:.3} +/- 1.0 dB)",
        found[0]
    );
}

#[test]
fn check_07_uplink_power_threshold_crossing() {
    let grid: Vec<f64> = (0..=80).map(|i| -20.0 + 0.5 * i as f64).collect();
    let diff: Vec<f64> = grid
        .iter()
        .map(|&db| {
            let p = db_to_linear(db);
            let c = cfg(24, 20, p, p, TRIALS);
            let zf = ul(&c, Scheme::Zf);
            let mrc = ul(&c, Scheme::Mrc);
            zf.mean_rate - mrc.mean_rate
        })
        .collect();
    let found = crossings(&grid, &diff);
    let expected = 10.0 * 0.2f64.log10();
    assert!(!found.is_empty(), "check 7 FAIL: no zf/mrc crossing on [-20, 20] dB");
    for &x in &found {
        assert!(
            (x - expected).abs() <= 1.0,
            "check 7 FAIL: crossing at {x:.3} dB, expected {expected:.3} +/- 1.0 dB"
        );
    }
    println!(
        "check 7 PASS: uplink crossing at {:.3} dB (expected {expected:.3} +/- 1.0 dB)",
        found[0]
    );
}

#[test]
fn check_08_power_cross_points_favor_maximum_ratio() {
    let pt = 4.0 / 23.0;
    let pu = 1.0 / 23.0;
    let mut violations = Vec::new();
    let mut tightest = f64::INFINITY;
    for k in 2..=24usize {
        let c = cfg(24, k, pt, pu, TRIALS);
        let zf_dl = dl(&c, Scheme::Zf, Normalization::Vector);
        let mrt = dl(&c, Scheme::Mrt, Normalization::Matrix);
        let margin_dl = (mrt.mean_rate - zf_dl.mean_rate) / se2(&mrt, &zf_dl);
        tightest = tightest.min(margin_dl);
        if margin_dl < -2.0 {
            violations.push(format!("downlink k={k}: {margin_dl:.2} se"));
        }
        let zf_ul = ul(&c, Scheme::Zf);
        let mrc = ul(&c, Scheme::Mrc);
        let margin_ul = (mrc.mean_rate - zf_ul.mean_rate) / se2(&mrc, &zf_ul);
        tightest = tightest.min(margin_ul);
        if margin_ul < -2.0 {
            violations.push(format!("uplink k={k}: {margin_ul:.2} se"));
        }
    }
    assert!(
        violations.is_empty(),
        "check 8 FAIL: maximum ratio fell more than 2 std errors below ZF at {} of 46 points: {}",
        violations.len(),
        violations.join("; ")
    );
    println!(
        "check 8 PASS: maximum ratio >= ZF - 2 se at both cross powers for k = 2..=24 \
         (tightest margin {tightest:.2} se)"
    );
}

#[test]
fn check_09_user_cross_point_ordering() {
    // Monte-Carlo half first so its margins are always measured.
    let mut mc_lines = Vec::new();
    for (k, zf_should_lead) in [(10usize, true), (15usize, false)] {
        let c = cfg(24, k, 1.0, 1.0, TRIALS);
        let zf = dl(&c, Scheme::Zf, Normalization::Vector);
        let mrt = dl(&c, Scheme::Mrt, Normalization::Matrix);
        let diff = zf.mean_rate - mrt.mean_rate;
        let se = se2(&zf, &mrt);
        if zf_should_lead {
            assert!(
                diff >= -2.0 * se,
                "check 9 FAIL: at k={k} zf should lead but trails by {:.4} ({:.1} se)",
                -diff,
                -diff / se
            );
        } else {
            assert!(
                diff <= 2.0 * se,
                "check 9 FAIL: at k={k} mrt should lead but trails by {diff:.4} ({:.1} se)",
                diff / se
            );
        }
        mc_lines.push(format!("k={k}: zf - mrt = {diff:.4} ({:+.0} se)", diff / se));
    }
    // Closed-form ordering around the 12.5 cross point.
    let mut violations = Vec::new();
    for k in 2..=24usize {
        let zf = zf_dl_vec(1.0, 24, k).expect("k <= m");
        let mrt = mrt_dl_mat(1.0, 24, k);
        let zf_should_lead = k <= 12;
        if zf_should_lead != (zf > mrt) {
            violations.push(format!(
                "k={k}: zf-vec {zf:.6} vs mrt-mat {mrt:.6} ({:+.6})",
                zf - mrt
            ));
        }
    }
    assert!(
        violations.is_empty(),
        "check 9 FAIL: closed-form ordering breaks at {}; monte carlo halves passed: {}",
        violations.join("; "),
        mc_lines.join(", ")
    );
    println!(
        "check 9 PASS: closed forms flip between k=12 and k=13; {}",
        mc_lines.join(", ")
    );
}

#[test]
fn check_10_equal_antenna_user_asymptotics() {
    let limit = std::f64::consts::LOG2_E;
    let values: Vec<f64> = [100usize, 1000, 10_000]
        .iter()
        .map(|&k| zf_dl_vec(1.0, k, k).expect("m == k"))
        .collect();
    assert!(
        values[0] < values[1] && values[1] < values[2],
        "check 10 FAIL: not monotone toward the limit: {values:?}"
    );
    let gaps: Vec<f64> = values.iter().map(|v| (v - limit).abs()).collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "check 10 FAIL: not converging: {gaps:?}");
    let rel = gaps[2] / limit;
    assert!(rel < 0.01, "check 10 FAIL: relative error {:.3}% at k = 10^4", rel * 100.0);

    let pu = 1e4;
    let est = ul(&cfg(64, 64, pu, pu, 2000), Scheme::Mrc);
    let rel_mc = (est.mean_rate / 64.0 - 1.0).abs();
    assert!(
        rel_mc <= 0.10,
        "check 10 FAIL: mrc at m=k=64, pu=1e4 gave {:.3}, off 64 by {:.1}% > 10%",
        est.mean_rate,
        rel_mc * 100.0
    );
    println!(
        "check 10 PASS: formula closes on log2(e) (rel err {:.2e}) and mrc lands within \
         {:.2}% of 64",
        rel,
        rel_mc * 100.0
    );
}

#[test]
fn check_11_large_m_tightness() {
    let p = 1e-2;
    let ms = [10usize, 40, 100];
    let mut mrt_gaps = Vec::new();
    let mut mrc_gaps = Vec::new();
    for &m in &ms {
        let c = cfg(m, 10, p, p, TRIALS);
        let mrt = dl(&c, Scheme::Mrt, Normalization::Matrix);
        let mrt_form = mrt_dl_mat(p, m, 10);
        mrt_gaps.push((mrt.mean_rate / mrt_form - 1.0).abs());
        let mrc = ul(&c, Scheme::Mrc);
        let mrc_form = mrc_ul_low(p, m, 10);
        mrc_gaps.push((mrc.mean_rate / mrc_form - 1.0).abs());
    }
    for (name, gaps) in [("mrt-mat", &mrt_gaps), ("mrc", &mrc_gaps)] {
        assert!(
            gaps[0] >= gaps[1] && gaps[1] >= gaps[2],
            "check 11 FAIL: {name} relative gaps not nonincreasing over m = 10, 40, 100: {gaps:?}"
        );
        assert!(
            gaps[2] <= 0.03,
            "check 11 FAIL: {name} off by {:.2}% at m=100, limit 3%",
            gaps[2] * 100.0
        );
    }
    println!(
        "check 11 PASS: gaps shrink with m; at m=100 mrt {:.2}%, mrc {:.2}% (limit 3%)",
        mrt_gaps[2] * 100.0,
        mrc_gaps[2] * 100.0
    );
}

#[test]
fn check_12_gradient_difference_positivity() {
    let mut violations = Vec::new();
    for &pt in &[1e-3, 1e-2, 1e-1] {
        for &m in &[16usize, 24, 64, 256] {
            let g = gradient_difference(pt, m);
            if g.is_nan() || g <= 0.0 {
                violations.push(format!("pt={pt:.0e} m={m}: {g:.6}"));
            }
        }
    }
    assert!(
        violations.is_empty(),
        "check 12 FAIL: gradient difference not positive at {} of 12 grid points: {}",
        violations.len(),
        violations.join("; ")
    );
    println!("check 12 PASS: gradient difference positive on the whole pt x m grid");
}

#[test]
fn check_13_reproduction_is_byte_identical() {
    let invoke = |extra: &[&str]| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_mmimo"))
            .args(["reproduce-fig", "3a", "--seed", "7"])
            .args(extra)
            .output()
            .expect("binary should spawn");
        assert!(
            out.status.success(),
            "check 13 FAIL: run errored: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let first = invoke(&[]);
    let second = invoke(&[]);
    assert_eq!(first, second, "check 13 FAIL: two identical invocations differ");
    let serial = invoke(&["--threads", "1"]);
    assert_eq!(first, serial, "check 13 FAIL: serial run differs from default");
    assert!(!first.is_empty(), "check 13 FAIL: empty document");
    println!(
        "check 13 PASS: fig 3a byte-identical across reruns and thread counts ({} bytes)",
        first.len()
    );
}
