//! Weighted pool-adjacent-violators isotonic regression.
//!
//! [`pav_calibrate`] produces the nondecreasing re-calibrated values that
//! drive reliability diagrams, score decompositions, and concave ROC
//! curves. Block means are ratios of outcome counts, so violations are
//! detected by exact integer cross-multiplication; the fit is bit-identical
//! across platforms and merge orders.

use crate::data::ForecastRecord;

/// A maximal constant segment of the isotonic fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    /// First index of the block in sorted order.
    pub start: usize,
    /// One past the last index in sorted order.
    pub end: usize,
    /// Number of events (`y = 1`) pooled into the block.
    pub events: usize,
}

impl Block {
    /// Cases pooled into the block.
    pub fn weight(&self) -> usize {
        self.end - self.start
    }

    /// Fitted value: the event frequency of the block.
    pub fn value(&self) -> f64 {
        self.events as f64 / self.weight() as f64
    }
}

/// Result of isotonic regression on a forecast record.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationFit {
    sorted_forecasts: Vec<f64>,
    sorted_outcomes: Vec<bool>,
    recalibrated: Vec<f64>,
    blocks: Vec<Block>,
    /// `rank[i]` is the sorted position of original row `i`.
    rank: Vec<usize>,
}

impl CalibrationFit {
    /// Forecast values in nondecreasing order.
    pub fn sorted_forecasts(&self) -> &[f64] {
        &self.sorted_forecasts
    }

    /// Outcomes carried along with the sort.
    pub fn sorted_outcomes(&self) -> &[bool] {
        &self.sorted_outcomes
    }

    /// Re-calibrated values aligned with [`sorted_forecasts`](Self::sorted_forecasts).
    pub fn recalibrated(&self) -> &[f64] {
        &self.recalibrated
    }

    /// Maximal constant blocks with strictly increasing values.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Mapping from original row order to sorted position.
    pub fn permutation(&self) -> &[usize] {
        &self.rank
    }

    /// Re-calibrated values in original row order.
    pub fn recalibrated_in_original_order(&self) -> Vec<f64> {
        self.rank.iter().map(|&pos| self.recalibrated[pos]).collect()
    }

    /// The distinct `(forecast, recalibrated)` pairs of the reliability curve.
    pub fn curve_points(&self) -> Vec<(f64, f64)> {
        let mut points: Vec<(f64, f64)> = Vec::new();
        for (&x, &v) in self.sorted_forecasts.iter().zip(&self.recalibrated) {
            if points.last().map(|p| p.0) != Some(x) {
                points.push((x, v));
            }
        }
        points
    }
}

/// Isotonic least-squares fit of outcomes on forecasts.
///
/// Tied forecast values are pooled into one weighted point before the
/// pass, so identical inputs always map to identical outputs; the stack
/// merge then runs in O(n) after an O(n log n) stable sort.
pub fn pav_calibrate(record: &ForecastRecord) -> CalibrationFit {
    let n = record.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| record.forecasts()[a].total_cmp(&record.forecasts()[b]));

    let mut rank = vec![0usize; n];
    for (pos, &original) in order.iter().enumerate() {
        rank[original] = pos;
    }
    let sorted_forecasts: Vec<f64> = order.iter().map(|&i| record.forecasts()[i]).collect();
    let sorted_outcomes: Vec<bool> = order.iter().map(|&i| record.outcomes()[i]).collect();

    // Pre-pool ties, then merge adjacent violators. Merging also on equal
    // means keeps block values strictly increasing.
    let mut stack: Vec<Block> = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && sorted_forecasts[j] == sorted_forecasts[i] {
            j += 1;
        }
        let events = sorted_outcomes[i..j].iter().filter(|&&y| y).count();
        let mut block = Block { start: i, end: j, events };
        while let Some(prev) = stack.last() {
            // prev.value() >= block.value(), compared exactly on integers
            if prev.events * block.weight() >= block.events * prev.weight() {
                block = Block {
                    start: prev.start,
                    end: block.end,
                    events: prev.events + block.events,
                };
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(block);
        i = j;
    }

    let mut recalibrated = vec![0.0; n];
    for block in &stack {
        let value = block.value();
        for slot in &mut recalibrated[block.start..block.end] {
            *slot = value;
        }
    }

    CalibrationFit {
        sorted_forecasts,
        sorted_outcomes,
        recalibrated,
        blocks: stack,
        rank,
    }
}

/// Replace a record's forecasts with the re-calibrated values, keeping the
/// original row order and outcomes.
pub fn apply_recalibration(
    fit: &CalibrationFit,
    record: &ForecastRecord,
) -> Result<ForecastRecord, crate::data::DataError> {
    if fit.rank.len() != record.len() {
        return Err(crate::data::DataError::LengthMismatch {
            forecasts: fit.rank.len(),
            outcomes: record.len(),
        });
    }
    debug_assert!(record
        .forecasts()
        .iter()
        .enumerate()
        .all(|(i, &x)| fit.sorted_forecasts[fit.rank[i]] == x));
    record.with_forecasts(fit.recalibrated_in_original_order())
}

/// Convenience: fit and apply in one step.
pub fn recalibrate(record: &ForecastRecord) -> ForecastRecord {
    let fit = pav_calibrate(record);
    apply_recalibration(&fit, record).expect("fit comes from the same record")
}
