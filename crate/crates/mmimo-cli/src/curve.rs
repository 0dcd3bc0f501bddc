//! Curve registry: every name a sweep may plot and the estimator behind it.

use mmimo::{ClosedFormKind, LinkDirection, Normalization, Scheme};

use crate::HarnessError;

/// How one curve's rate values are produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveSource {
    /// Ergodic Monte-Carlo estimate with error bars.
    MonteCarlo {
        direction: LinkDirection,
        scheme: Scheme,
        normalization: Normalization,
    },
    /// Mean-then-log rate for the unnormalized ZF Frobenius ratio.
    ZfMatU1,
    /// Closed-form evaluation; stderr and trials columns stay empty.
    ClosedForm(ClosedFormKind),
}

/// One plottable curve. Names are stable CLI surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curve {
    pub name: &'static str,
    pub source: CurveSource,
}

const fn mc(
    name: &'static str,
    direction: LinkDirection,
    scheme: Scheme,
    normalization: Normalization,
) -> Curve {
    Curve {
        name,
        source: CurveSource::MonteCarlo { direction, scheme, normalization },
    }
}

const fn cf(name: &'static str, kind: ClosedFormKind) -> Curve {
    Curve { name, source: CurveSource::ClosedForm(kind) }
}

/// Every registered curve, Monte-Carlo first, then the closed forms.
pub const ALL_CURVES: [Curve; 15] = [
    mc("zf-vec-mc", LinkDirection::Downlink, Scheme::Zf, Normalization::Vector),
    mc("zf-mat-mc", LinkDirection::Downlink, Scheme::Zf, Normalization::Matrix),
    mc("mrt-vec-mc", LinkDirection::Downlink, Scheme::Mrt, Normalization::Vector),
    mc("mrt-mat-mc", LinkDirection::Downlink, Scheme::Mrt, Normalization::Matrix),
    mc("zf-ul-mc", LinkDirection::Uplink, Scheme::Zf, Normalization::None),
    mc("mrc-mc", LinkDirection::Uplink, Scheme::Mrc, Normalization::None),
    Curve { name: "zf-mat-u1-mc", source: CurveSource::ZfMatU1 },
    cf("zf-dl-lower-cf", ClosedFormKind::ZfDlLower),
    cf("zf-dl-vec-cf", ClosedFormKind::ZfDlVec),
    cf("mrt-dl-vec-low-cf", ClosedFormKind::MrtDlVecLow),
    cf("mrt-dl-vec-high-cf", ClosedFormKind::MrtDlVecHigh),
    cf("mrt-dl-mat-cf", ClosedFormKind::MrtDlMat),
    cf("mrc-ul-high-cf", ClosedFormKind::MrcUlHigh),
    cf("mrc-ul-low-cf", ClosedFormKind::MrcUlLow),
    cf("zf-ul-low-cf", ClosedFormKind::ZfUlLow),
];

/// Comma-joined registry names, for help and error text.
pub fn known_names() -> String {
    ALL_CURVES
        .iter()
        .map(|c| c.name)
        .collect::<Vec<_>>()
        .join(", ")
}

impl Curve {
    pub fn parse(name: &str) -> Result<Curve, HarnessError> {
        ALL_CURVES
            .iter()
            .copied()
            .find(|c| c.name == name)
            .ok_or_else(|| HarnessError::UnknownCurve {
                name: name.to_string(),
                known: known_names(),
            })
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self.source, CurveSource::ClosedForm(_))
    }

    /// True when the curve reads the downlink power pt, false for pu.
    pub fn uses_downlink_power(&self) -> bool {
        match self.source {
            CurveSource::MonteCarlo { direction, .. } => direction == LinkDirection::Downlink,
            CurveSource::ZfMatU1 => true,
            CurveSource::ClosedForm(kind) => kind.is_downlink(),
        }
    }
}

/// Parses a comma-separated curve list; surrounding whitespace is ignored and
/// empty items are dropped, so trailing commas are harmless.
pub fn parse_curve_list(list: &str) -> Result<Vec<Curve>, HarnessError> {
    let curves: Vec<Curve> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Curve::parse)
        .collect::<Result<_, _>>()?;
    if curves.is_empty() {
        return Err(HarnessError::NoCurves);
    }
    Ok(curves)
}
