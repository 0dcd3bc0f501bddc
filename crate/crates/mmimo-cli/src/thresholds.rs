//! Plain-text report of every selection boundary the library knows.
//!
//! Sections appear only when their inputs were given: cross powers always,
//! per-k thresholds with k, user cross points with a power, and the mode
//! decisions once both are present.

use mmimo::{k_cross_dl, k_cross_ul, p_cross, p_th_dl, p_th_ul, select_mode, LinkDirection};

use crate::figures::db_to_linear;
use crate::sweep::fmt9;
use crate::HarnessError;

fn to_db(p: f64) -> f64 {
    10.0 * p.log10()
}

/// Renders the threshold report for one antenna count and whatever subset of
/// (k, pt, pu) the caller pinned down.
pub fn thresholds_report(
    m: usize,
    k: Option<usize>,
    pt_db: Option<f64>,
    pu_db: Option<f64>,
) -> Result<String, HarnessError> {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };

    line(format!("m = {m}"));
    let pc_dl = p_cross(LinkDirection::Downlink, m)?;
    let pc_ul = p_cross(LinkDirection::Uplink, m)?;
    line(format!("P_cross,DL = {} ({:.2} dB)", fmt9(pc_dl), to_db(pc_dl)));
    line(format!("P_cross,UL = {} ({:.2} dB)", fmt9(pc_ul), to_db(pc_ul)));

    if let Some(k) = k {
        let th_dl = p_th_dl(m, k)?;
        let th_ul = p_th_ul(m, k)?;
        line(format!("P_th,DL (k = {k}) = {} ({:.2} dB)", fmt9(th_dl), to_db(th_dl)));
        line(format!("P_th,UL (k = {k}) = {} ({:.2} dB)", fmt9(th_ul), to_db(th_ul)));
    }

    let pt = pt_db.map(db_to_linear);
    let pu = pu_db.map(db_to_linear);
    if let Some(pt) = pt {
        line(format!("K_cross,DL (pt = {:.2} dB) = {}", pt_db.expect("pt came from pt_db"), k_cross_dl(pt, m)));
    }
    if let Some(pu) = pu {
        line(format!("K_cross,UL (pu = {:.2} dB) = {}", pu_db.expect("pu came from pu_db"), k_cross_ul(pu, m)));
    }

    if let (Some(k), Some(pt)) = (k, pt) {
        let d = select_mode(LinkDirection::Downlink, pt, m, k)?;
        line(format!(
            "decision downlink (m = {m}, k = {k}, pt = {:.2} dB): {} [threshold {:.2} dB]",
            pt_db.expect("pt came from pt_db"),
            d.chosen.name(),
            to_db(d.threshold_value)
        ));
    }
    if let (Some(k), Some(pu)) = (k, pu) {
        let d = select_mode(LinkDirection::Uplink, pu, m, k)?;
        line(format!(
            "decision uplink (m = {m}, k = {k}, pu = {:.2} dB): {} [threshold {:.2} dB]",
            pu_db.expect("pu came from pu_db"),
            d.chosen.name(),
            to_db(d.threshold_value)
        ));
    }

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_report_carries_all_boundaries() {
        let report = thresholds_report(24, Some(20), Some(0.0), Some(0.0)).unwrap();
        assert!(report.contains("m = 24"));
        assert!(report.contains("P_cross,DL = 1.73913043e-1 (-7.60 dB)"));
        assert!(report.contains("P_cross,UL = 4.34782609e-2 (-13.62 dB)"));
        assert!(report.contains("P_th,DL (k = 20) = 4.21052632e0 (6.24 dB)"));
        assert!(report.contains("P_th,UL (k = 20) = 2.00000000e-1 (-6.99 dB)"));
        assert!(report.contains("K_cross,DL (pt = 0.00 dB) = 12.5"));
        assert!(report.contains("K_cross,UL (pu = 0.00 dB) = 24"));
        assert!(report.contains("decision downlink (m = 24, k = 20, pt = 0.00 dB): mrt"));
        assert!(report.contains("decision uplink (m = 24, k = 20, pu = 0.00 dB): zf"));
    }

    #[test]
    fn sections_without_inputs_stay_out() {
        let report = thresholds_report(24, None, None, None).unwrap();
        assert!(report.contains("P_cross,DL"));
        assert!(!report.contains("P_th"));
        assert!(!report.contains("K_cross"));
        assert!(!report.contains("decision"));
    }

    #[test]
    fn decision_flips_across_the_downlink_threshold() {
        let below = thresholds_report(24, Some(20), Some(6.0), None).unwrap();
        assert!(below.contains("decision downlink (m = 24, k = 20, pt = 6.00 dB): mrt"));
        let above = thresholds_report(24, Some(20), Some(6.5), None).unwrap();
        assert!(above.contains("decision downlink (m = 24, k = 20, pt = 6.50 dB): zf"));
    }

    #[test]
    fn single_user_downlink_is_refused() {
        let err = thresholds_report(24, Some(1), None, None).unwrap_err();
        assert!(err.to_string().contains("at least two users"));
    }
}
