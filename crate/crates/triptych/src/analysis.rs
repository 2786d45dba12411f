//! Curve differences, sign-change counting, and dominance checks for pairs
//! of forecasts of the same outcomes.
//!
//! For in-sample calibrated forecasts the Murphy curve difference equals
//! the running integral of the forecast CDF difference, and the ROC curve
//! difference (measured along lines of slope `-pi0/pi1`, i.e. at a common
//! curve index) equals the running integral of the quantile difference.
//! Consequently the two differences cross zero equally often, and one
//! forecast dominates in the Murphy sense exactly when it dominates in the
//! ROC sense. [`crossing_report`] re-calibrates its inputs first, so these
//! guarantees apply; raw curves can still be differenced descriptively.
//!
//! Sign changes are counted on the partition definition: a function has
//! `n` sign changes if the unit interval splits into `n + 1` consecutive
//! parts of alternating (weak) sign. For piecewise-linear functions,
//! evaluating at breakpoints and piece midpoints is equivalent.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::{EmpiricalDistribution, ForecastRecord};
use crate::murphy::{murphy_curve, MurphyCurve};
use crate::pav;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("records do not share the same outcomes")]
    OutcomeMismatch,
    #[error("both outcome classes are required")]
    SingleClass,
    #[error("negative tolerance {0}")]
    NegativeTolerance(f64),
}

/// A piecewise-affine function on the unit interval with optional exact
/// values at its breakpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseFunction {
    /// Sorted breakpoints spanning `[0, 1]`.
    pub breakpoints: Vec<f64>,
    /// Affine coefficients `(a, b)`: the function is `a + b t` on each
    /// open interval between consecutive breakpoints.
    pub pieces: Vec<(f64, f64)>,
    /// Exact function values at the breakpoints, when they differ from the
    /// one-sided limits or are simply known.
    pub point_values: Option<Vec<f64>>,
}

impl PiecewiseFunction {
    pub fn new(
        breakpoints: Vec<f64>,
        pieces: Vec<(f64, f64)>,
        point_values: Option<Vec<f64>>,
    ) -> Self {
        assert_eq!(breakpoints.len(), pieces.len() + 1, "one piece per interval");
        if let Some(v) = &point_values {
            assert_eq!(v.len(), breakpoints.len());
        }
        PiecewiseFunction {
            breakpoints,
            pieces,
            point_values,
        }
    }

    /// Value at `t`; breakpoints use the stored point values when present.
    pub fn evaluate(&self, t: f64) -> f64 {
        match self.breakpoints.binary_search_by(|b| b.total_cmp(&t)) {
            Ok(idx) => match &self.point_values {
                Some(values) => values[idx],
                None => {
                    let piece = self.pieces[idx.min(self.pieces.len() - 1)];
                    piece.0 + piece.1 * t
                }
            },
            Err(idx) => {
                let piece = self.pieces[(idx.saturating_sub(1)).min(self.pieces.len() - 1)];
                piece.0 + piece.1 * t
            }
        }
    }

    /// Function values at breakpoints and piece midpoints, left to right.
    pub fn sample_values(&self) -> Vec<f64> {
        let mut values = Vec::with_capacity(2 * self.pieces.len() + 1);
        for (idx, window) in self.breakpoints.windows(2).enumerate() {
            values.push(self.evaluate(window[0]));
            let mid = 0.5 * (window[0] + window[1]);
            let (a, b) = self.pieces[idx];
            values.push(a + b * mid);
        }
        values.push(self.evaluate(*self.breakpoints.last().unwrap()));
        values
    }

    /// Extremes over breakpoint values and one-sided piece limits.
    pub fn range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut take = |v: f64| {
            lo = lo.min(v);
            hi = hi.max(v);
        };
        for (idx, window) in self.breakpoints.windows(2).enumerate() {
            let (a, b) = self.pieces[idx];
            take(a + b * window[0]);
            take(a + b * window[1]);
        }
        if let Some(values) = &self.point_values {
            values.iter().copied().for_each(take);
        }
        (lo, hi)
    }
}

/// Count sign alternations of `f`, treating `|f| <= tol` as zero.
pub fn count_sign_changes(f: &PiecewiseFunction, tol: f64) -> Result<usize, AnalysisError> {
    if tol < 0.0 {
        return Err(AnalysisError::NegativeTolerance(tol));
    }
    let mut changes = 0;
    let mut last_sign = 0i8;
    for value in f.sample_values() {
        let sign = if value.abs() <= tol {
            0
        } else if value > 0.0 {
            1
        } else {
            -1
        };
        if sign != 0 {
            if last_sign != 0 && sign != last_sign {
                changes += 1;
            }
            last_sign = sign;
        }
    }
    Ok(changes)
}

/// Which record of a pair dominates a difference curve, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominance {
    None,
    First,
    Second,
}

/// Dominance of `first - second` style differences: the first record
/// dominates when the difference stays below `tol` everywhere and dips
/// below `-tol` somewhere.
fn dominance_of(difference: &PiecewiseFunction, tol: f64) -> Dominance {
    let (min, max) = difference.range();
    if max <= tol && min < -tol {
        Dominance::First
    } else if min >= -tol && max > tol {
        Dominance::Second
    } else {
        Dominance::None
    }
}

/// Exact difference of two Murphy curves over the union knot set, scaled
/// by one half.
///
/// Negative values favor the first curve's forecast.
pub fn murphy_difference(
    first: &MurphyCurve,
    second: &MurphyCurve,
) -> Result<PiecewiseFunction, AnalysisError> {
    if first.n() != second.n() || first.event_count() != second.event_count() {
        return Err(AnalysisError::OutcomeMismatch);
    }
    let n = first.n() as f64;

    let mut breakpoints: Vec<f64> = first
        .knots()
        .iter()
        .chain(second.knots())
        .copied()
        .collect();
    breakpoints.sort_by(f64::total_cmp);
    breakpoints.dedup();

    let seg1 = first.segment_count_pairs();
    let seg2 = second.segment_count_pairs();
    let counts_at = |segments: &[(f64, f64, usize, usize)], mid: f64| -> (f64, f64) {
        let idx = segments
            .partition_point(|&(lo, _, _, _)| lo < mid)
            .saturating_sub(1);
        let (_, _, false_alarms, misses) = segments[idx];
        (false_alarms as f64, misses as f64)
    };

    let mut pieces = Vec::with_capacity(breakpoints.len() - 1);
    for window in breakpoints.windows(2) {
        let mid = 0.5 * (window[0] + window[1]);
        let (fa1, m1) = counts_at(&seg1, mid);
        let (fa2, m2) = counts_at(&seg2, mid);
        // Half of 2((1-t) dm + t dfa)/n.
        let a = (m1 - m2) / n;
        let b = ((fa1 - fa2) - (m1 - m2)) / n;
        pieces.push((a, b));
    }

    let value_at = |curve: &MurphyCurve, t: f64| -> f64 {
        if t <= 0.0 {
            curve.limit_at_zero()
        } else if t >= 1.0 {
            curve.limit_at_one()
        } else {
            curve.value(t).expect("interior threshold")
        }
    };
    let point_values = breakpoints
        .iter()
        .map(|&t| 0.5 * (value_at(first, t) - value_at(second, t)))
        .collect();

    Ok(PiecewiseFunction::new(
        breakpoints,
        pieces,
        Some(point_values),
    ))
}

fn validate_shared_outcomes(
    first: &ForecastRecord,
    second: &ForecastRecord,
) -> Result<(), AnalysisError> {
    if first.outcomes() != second.outcomes() {
        return Err(AnalysisError::OutcomeMismatch);
    }
    if first.is_degenerate() {
        return Err(AnalysisError::SingleClass);
    }
    Ok(())
}

/// ROC curve difference at a common curve index, as the running integral
/// of the empirical quantile difference.
///
/// The index `c` is the forecast CDF level; the gap between the two ROC
/// curves at index `c`, measured along lines of slope `-pi0/pi1`, equals
/// this integral. Callers pass re-calibrated records; negative values
/// favor the first record.
pub fn roc_difference(
    first: &ForecastRecord,
    second: &ForecastRecord,
) -> Result<PiecewiseFunction, AnalysisError> {
    validate_shared_outcomes(first, second)?;
    let dist1 = EmpiricalDistribution::new(first.forecasts()).expect("records are nonempty");
    let dist2 = EmpiricalDistribution::new(second.forecasts()).expect("records are nonempty");

    let mut breakpoints = vec![0.0, 1.0];
    breakpoints.extend(dist1.cumulative_fractions());
    breakpoints.extend(dist2.cumulative_fractions());
    breakpoints.sort_by(f64::total_cmp);
    breakpoints.dedup();

    // The integrand Q1 - Q2 is constant on each interval; accumulate the
    // integral left to right.
    let mut pieces = Vec::with_capacity(breakpoints.len() - 1);
    let mut point_values = Vec::with_capacity(breakpoints.len());
    let mut running = 0.0;
    point_values.push(0.0);
    for window in breakpoints.windows(2) {
        let (lo, hi) = (window[0], window[1]);
        let mid = 0.5 * (lo + hi);
        let slope = dist1.quantile(mid) - dist2.quantile(mid);
        let a = running - slope * lo;
        pieces.push((a, slope));
        running += slope * (hi - lo);
        point_values.push(running);
    }

    Ok(PiecewiseFunction::new(
        breakpoints,
        pieces,
        Some(point_values),
    ))
}

/// Sign-change and dominance report for a pair of forecasts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub murphy_sign_changes: usize,
    pub roc_sign_changes: usize,
    pub tolerance: f64,
    pub murphy_dominates: Dominance,
    pub roc_dominates: Dominance,
}

/// Default tolerance for classifying a difference value as zero.
pub const DEFAULT_SIGN_TOLERANCE: f64 = 1e-10;

/// Re-calibrate both records, difference their Murphy and ROC curves, and
/// count sign changes and dominance of each difference.
pub fn crossing_report(
    first: &ForecastRecord,
    second: &ForecastRecord,
    tol: f64,
) -> Result<CrossingReport, AnalysisError> {
    if tol < 0.0 {
        return Err(AnalysisError::NegativeTolerance(tol));
    }
    validate_shared_outcomes(first, second)?;

    let recal1 = pav::recalibrate(first);
    let recal2 = pav::recalibrate(second);

    let murphy_diff = murphy_difference(&murphy_curve(&recal1), &murphy_curve(&recal2))?;
    let roc_diff = roc_difference(&recal1, &recal2)?;

    Ok(CrossingReport {
        murphy_sign_changes: count_sign_changes(&murphy_diff, tol)?,
        roc_sign_changes: count_sign_changes(&roc_diff, tol)?,
        tolerance: tol,
        murphy_dominates: dominance_of(&murphy_diff, tol),
        roc_dominates: dominance_of(&roc_diff, tol),
    })
}
