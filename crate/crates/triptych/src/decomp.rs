//! Exact decomposition of a mean score into miscalibration (MCB),
//! discrimination (DSC), and uncertainty (UNC) components, and the
//! MCB-DSC plot model for comparing many forecasters at once.
//!
//! With `S_c` the mean score of the isotonically re-calibrated forecasts
//! and `S_r` the mean score of the constant event-frequency forecast,
//!
//! ```text
//! mean = (mean - S_c) - (S_r - S_c) + S_r = MCB - DSC + UNC
//! ```
//!
//! holds exactly for every proper scoring rule, with `MCB >= 0` and
//! `DSC >= 0`. Re-calibrated values are block event frequencies, so `S_c`
//! stays finite even under the logarithmic score; an infinite mean score
//! surfaces as an infinite MCB with finite DSC and UNC.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::ForecastRecord;
use crate::pav;
use crate::scoring::{mean_score, ExtendedReal, ScoreError, ScoringRule};

#[derive(Debug, Error)]
pub enum DecompError {
    #[error(transparent)]
    Score(#[from] ScoreError),
    #[error("plot needs at least one decomposition")]
    EmptyPlot,
    #[error("plot mixes scoring rules: {0} and {1}")]
    MixedRules(ScoringRule, ScoringRule),
    #[error("plot mixes outcome sets: UNC {0} differs from {1}")]
    MismatchedUncertainty(f64, f64),
}

/// The components of a mean score under one scoring rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreDecomposition {
    pub rule: ScoringRule,
    /// Mean score of the forecast as issued.
    pub mean: ExtendedReal,
    /// Miscalibration `mean - s_c`; infinite exactly when `mean` is.
    pub mcb: ExtendedReal,
    /// Discrimination `s_r - s_c`.
    pub dsc: f64,
    /// Uncertainty `s_r`, shared by all forecasts of the same outcomes.
    pub unc: f64,
    /// Mean score of the re-calibrated forecast.
    pub s_c: f64,
    /// Mean score of the constant reference forecast.
    pub s_r: f64,
}

/// Decompose the mean score of a record under `rule`.
pub fn corp_decomposition(
    rule: ScoringRule,
    record: &ForecastRecord,
) -> Result<ScoreDecomposition, DecompError> {
    let mean = mean_score(rule, record)?;

    let recalibrated = pav::recalibrate(record);
    let s_c = mean_score(rule, &recalibrated)?
        .finite()
        .expect("block event frequencies never score an impossible outcome");

    let r = record.event_count() as f64 / record.len() as f64;
    let reference = ForecastRecord::constant(record.name(), r, record.outcomes().to_vec())
        .expect("event frequency lies in [0, 1]");
    let s_r = mean_score(rule, &reference)?
        .finite()
        .expect("the reference forecast never scores an impossible outcome");

    Ok(ScoreDecomposition {
        rule,
        mean,
        mcb: mean - s_c,
        dsc: s_r - s_c,
        unc: s_r,
        s_c,
        s_r,
    })
}

/// One forecaster's point in an MCB-DSC plot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McbDscPoint {
    pub name: String,
    pub mcb: ExtendedReal,
    pub dsc: f64,
    /// Set for infinite-MCB points, rendered along the right margin.
    pub margin: bool,
}

/// Scatter model of miscalibration against discrimination.
///
/// Iso-score contours have slope one in the `(MCB, DSC)` plane; the
/// diagonal through the origin carries the mean score of the best constant
/// forecast, and points above it beat that baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McbDscPlot {
    pub rule: ScoringRule,
    pub points: Vec<McbDscPoint>,
    /// Shared uncertainty component; the label of the baseline diagonal.
    pub unc: f64,
    /// Mean-score values whose iso-lines are drawn.
    pub contour_levels: Vec<f64>,
}

/// Assemble an MCB-DSC plot from named decompositions under one rule.
pub fn mcb_dsc_plot(
    decompositions: &[(String, ScoreDecomposition)],
) -> Result<McbDscPlot, DecompError> {
    let (_, first) = decompositions.first().ok_or(DecompError::EmptyPlot)?;
    for (_, d) in decompositions {
        if d.rule != first.rule {
            return Err(DecompError::MixedRules(first.rule, d.rule));
        }
        if (d.unc - first.unc).abs() > 1e-12 {
            return Err(DecompError::MismatchedUncertainty(first.unc, d.unc));
        }
    }

    let points: Vec<McbDscPoint> = decompositions
        .iter()
        .map(|(name, d)| McbDscPoint {
            name: name.clone(),
            mcb: d.mcb,
            dsc: d.dsc,
            margin: d.mcb.is_infinite(),
        })
        .collect();

    // Five equally spaced mean-score levels across the observed finite
    // range, rounded to three decimals for labels.
    let finite_scores: Vec<f64> = decompositions
        .iter()
        .filter_map(|(_, d)| d.mean.finite())
        .collect();
    let contour_levels = match (
        finite_scores.iter().copied().reduce(f64::min),
        finite_scores.iter().copied().reduce(f64::max),
    ) {
        (Some(lo), Some(hi)) if hi > lo => (0..5)
            .map(|k| {
                let level = lo + (hi - lo) * k as f64 / 4.0;
                (level * 1000.0).round() / 1000.0
            })
            .collect(),
        (Some(lo), _) => vec![(lo * 1000.0).round() / 1000.0],
        _ => Vec::new(),
    };

    Ok(McbDscPlot {
        rule: first.rule,
        points,
        unc: first.unc,
        contour_levels,
    })
}
