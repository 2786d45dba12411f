//! Murphy curves: the mean elementary score as a function of the decision
//! threshold.
//!
//! Between consecutive distinct forecast values the counts of potential
//! false alarms and misses are constant, so the curve is exactly piecewise
//! linear; the only subtlety is the fixed tie penalty when the threshold
//! coincides with a forecast value, which changes the curve on a set of
//! measure zero. The curve stores the case counts behind every segment and
//! knot, which keeps evaluation exact (at the threshold one half, the value
//! reproduces the misclassification rate bit for bit).

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::data::ForecastRecord;
use crate::scoring::{self, ExtendedReal, ScoringRule};

#[derive(Debug, Error)]
pub enum MurphyError {
    #[error("threshold {0} outside the open interval (0, 1)")]
    ThetaOutOfRange(f64),
}

/// Per-interval case counts: potential false alarms and misses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SegmentCounts {
    /// `#{x_i > theta, y_i = 0}` for thresholds inside the interval.
    false_alarms: usize,
    /// `#{x_i < theta, y_i = 1}` for thresholds inside the interval.
    misses: usize,
}

/// Case counts at a knot, where ties contribute the fixed penalty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct KnotCounts {
    false_alarms: usize,
    misses: usize,
    ties: usize,
}

/// Mean elementary score as an exact piecewise-linear function of the
/// threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct MurphyCurve {
    n: usize,
    events: usize,
    /// Sorted distinct forecast values augmented with 0 and 1.
    knots: Vec<f64>,
    /// One entry per open interval between consecutive knots.
    segments: Vec<SegmentCounts>,
    /// One entry per interior knot (`knots[1..len-1]`).
    knot_counts: Vec<KnotCounts>,
}

/// Geometry of a Murphy curve: what gets serialized and plotted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MurphyGeometry {
    /// Sorted distinct forecast values augmented with 0 and 1.
    pub knots: Vec<f64>,
    /// Affine pieces `a + b * theta` on the open inter-knot intervals.
    pub segments: Vec<MurphySegment>,
    /// Exact curve values at the interior knots, tie penalty included.
    pub knot_values: Vec<f64>,
}

/// One affine piece of a Murphy curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MurphySegment {
    pub lo: f64,
    pub hi: f64,
    pub a: f64,
    pub b: f64,
}

impl MurphyCurve {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn event_count(&self) -> usize {
        self.events
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Interior knots, i.e. the distinct forecast values in `(0, 1)`.
    pub fn interior_knots(&self) -> &[f64] {
        &self.knots[1..self.knots.len() - 1]
    }

    fn eval_counts(&self, theta: f64, counts: (usize, usize, usize)) -> f64 {
        let (false_alarms, misses, ties) = counts;
        let weighted = (1.0 - theta) * misses as f64
            + theta * false_alarms as f64
            + theta * (1.0 - theta) * ties as f64;
        2.0 * weighted / self.n as f64
    }

    /// Exact curve value at each interior knot, including the tie term.
    pub fn knot_values(&self) -> Vec<f64> {
        self.interior_knots()
            .iter()
            .zip(&self.knot_counts)
            .map(|(&theta, k)| self.eval_counts(theta, (k.false_alarms, k.misses, k.ties)))
            .collect()
    }

    /// Curve value anywhere in `(0, 1)`; exact knot value if `theta` is a knot.
    pub fn value(&self, theta: f64) -> Result<f64, MurphyError> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(MurphyError::ThetaOutOfRange(theta));
        }
        let interior = &self.knots[1..self.knots.len() - 1];
        match interior.binary_search_by(|k| k.total_cmp(&theta)) {
            Ok(idx) => {
                let k = self.knot_counts[idx];
                Ok(self.eval_counts(theta, (k.false_alarms, k.misses, k.ties)))
            }
            Err(idx) => {
                // theta lies strictly inside interval idx of the full knot vector.
                let seg = self.segments[idx];
                Ok(self.eval_counts(theta, (seg.false_alarms, seg.misses, 0)))
            }
        }
    }

    /// One-sided limit of the curve at `theta = 0`.
    pub fn limit_at_zero(&self) -> f64 {
        let seg = self.segments[0];
        2.0 * seg.misses as f64 / self.n as f64
    }

    /// One-sided limit of the curve at `theta = 1`.
    pub fn limit_at_one(&self) -> f64 {
        let seg = self.segments[self.segments.len() - 1];
        2.0 * seg.false_alarms as f64 / self.n as f64
    }

    /// Affine coefficients `(a, b)` of the segment on interval `idx`.
    fn segment_coefficients(&self, idx: usize) -> (f64, f64) {
        let seg = self.segments[idx];
        let a = 2.0 * seg.misses as f64 / self.n as f64;
        let b = 2.0 * (seg.false_alarms as f64 - seg.misses as f64) / self.n as f64;
        (a, b)
    }

    /// Serializable geometry view of the curve.
    pub fn geometry(&self) -> MurphyGeometry {
        let segments = (0..self.segments.len())
            .map(|idx| {
                let (a, b) = self.segment_coefficients(idx);
                MurphySegment {
                    lo: self.knots[idx],
                    hi: self.knots[idx + 1],
                    a,
                    b,
                }
            })
            .collect();
        MurphyGeometry {
            knots: self.knots.clone(),
            segments,
            knot_values: self.knot_values(),
        }
    }

    /// `(lo, hi, false_alarms, misses)` per segment, for curve differencing.
    pub(crate) fn segment_count_pairs(&self) -> Vec<(f64, f64, usize, usize)> {
        (0..self.segments.len())
            .map(|idx| {
                let seg = self.segments[idx];
                (
                    self.knots[idx],
                    self.knots[idx + 1],
                    seg.false_alarms,
                    seg.misses,
                )
            })
            .collect()
    }
}

impl Serialize for MurphyCurve {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let geometry = self.geometry();
        let mut state = serializer.serialize_struct("MurphyCurve", 3)?;
        state.serialize_field("knots", &geometry.knots)?;
        state.serialize_field("segments", &geometry.segments)?;
        state.serialize_field("knot_values", &geometry.knot_values)?;
        state.end()
    }
}

/// Build the Murphy curve of a record in O(n log n).
pub fn murphy_curve(record: &ForecastRecord) -> MurphyCurve {
    let n = record.len();
    let mut pairs: Vec<(f64, bool)> = record.pairs().collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    // Distinct values with per-class counts.
    let mut values: Vec<f64> = Vec::new();
    let mut count0: Vec<usize> = Vec::new();
    let mut count1: Vec<usize> = Vec::new();
    for (x, y) in pairs {
        if values.last() != Some(&x) {
            values.push(x);
            count0.push(0);
            count1.push(0);
        }
        if y {
            *count1.last_mut().unwrap() += 1;
        } else {
            *count0.last_mut().unwrap() += 1;
        }
    }

    let mut knots = Vec::with_capacity(values.len() + 2);
    knots.push(0.0);
    for &v in &values {
        if v > 0.0 && v < 1.0 {
            knots.push(v);
        }
    }
    knots.push(1.0);

    // Sweep thresholds left to right. Crossing the value v_j removes its
    // non-events from the false-alarm count and adds its events to the
    // miss count.
    let total_false_alarms: usize = count0.iter().sum();
    let mut segments = Vec::with_capacity(knots.len() - 1);
    let mut knot_counts = Vec::with_capacity(knots.len().saturating_sub(2));
    let starts_at_zero = values.first() == Some(&0.0);
    let mut false_alarms =
        total_false_alarms - if starts_at_zero { count0[0] } else { 0 };
    let mut misses = if starts_at_zero { count1[0] } else { 0 };
    let mut next = usize::from(starts_at_zero);

    for window in knots.windows(2) {
        let hi = window[1];
        segments.push(SegmentCounts { false_alarms, misses });
        if next < values.len() && values[next] == hi {
            let ties = count0[next] + count1[next];
            let fa_at_knot = false_alarms - count0[next];
            if hi < 1.0 {
                knot_counts.push(KnotCounts {
                    false_alarms: fa_at_knot,
                    misses,
                    ties,
                });
            }
            false_alarms = fa_at_knot;
            misses += count1[next];
            next += 1;
        }
    }

    MurphyCurve {
        n,
        events: record.event_count(),
        knots,
        segments,
        knot_counts,
    }
}

/// Curve value at a threshold; exact knot handling included.
pub fn murphy_value(curve: &MurphyCurve, theta: f64) -> Result<f64, MurphyError> {
    curve.value(theta)
}

/// Area under the curve over `(0, 1)`; equals the mean Brier score.
///
/// Knot points have measure zero, so only the affine segments contribute.
pub fn murphy_area(curve: &MurphyCurve) -> f64 {
    let mut total = 0.0;
    for idx in 0..curve.segments.len() {
        let (a, b) = curve.segment_coefficients(idx);
        let lo = curve.knots[idx];
        let hi = curve.knots[idx + 1];
        total += a * (hi - lo) + 0.5 * b * (hi * hi - lo * lo);
    }
    total
}

/// Weighted area under the curve with the mixing density of `rule`;
/// equals the mean score of the corresponding mixture rule.
///
/// For point-mass rules this is the curve value at the threshold; for the
/// Log rule the integral diverges exactly when the record assigns zero
/// probability to a realized outcome, reported as infinity.
pub fn weighted_murphy_area(
    curve: &MurphyCurve,
    rule: ScoringRule,
    nodes: usize,
) -> Result<ExtendedReal, MurphyError> {
    match rule {
        ScoringRule::Brier => Ok(ExtendedReal::Finite(murphy_area(curve))),
        ScoringRule::ZeroOne => Ok(ExtendedReal::Finite(curve.value(0.5)?)),
        ScoringRule::Elementary(theta) => Ok(ExtendedReal::Finite(curve.value(theta)?)),
        ScoringRule::Log | ScoringRule::BetaFamily { .. } => {
            if matches!(rule, ScoringRule::Log)
                && (curve.segments[0].misses > 0
                    || curve.segments[curve.segments.len() - 1].false_alarms > 0)
            {
                // An event was forecast impossible, or a non-event certain.
                return Ok(ExtendedReal::Infinite);
            }
            let cells = (nodes / (5 * curve.segments.len().max(1))).max(4);
            let mut total = 0.0;
            for idx in 0..curve.segments.len() {
                let (a, b) = curve.segment_coefficients(idx);
                let lo = curve.knots[idx];
                let hi = curve.knots[idx + 1];
                if hi <= lo {
                    continue;
                }
                let f = |theta: f64| (a + b * theta) * scoring::mixing_density(rule, theta);
                total += if lo == 0.0 {
                    scoring::integrate_panel_substituted(&f, lo, hi, cells, true)
                } else if hi == 1.0 {
                    scoring::integrate_panel_substituted(&f, lo, hi, cells, false)
                } else {
                    scoring::integrate_panel(&f, lo, hi, cells)
                };
            }
            Ok(ExtendedReal::Finite(total))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ForecastRecord;
    use crate::rng::Stream;
    use crate::scoring::{elementary_score, mean_score};

    fn rec(forecasts: &[f64], outcomes: &[bool]) -> ForecastRecord {
        ForecastRecord::new("t", forecasts.to_vec(), outcomes.to_vec()).unwrap()
    }

    fn random_record(stream: &mut Stream, n: usize) -> ForecastRecord {
        let forecasts: Vec<f64> = (0..n)
            .map(|_| {
                // Mix continuous values with ties and boundary values.
                let u = stream.uniform();
                if u < 0.2 {
                    (u * 25.0).floor() / 5.0
                } else {
                    stream.uniform()
                }
            })
            .collect();
        let outcomes: Vec<bool> = forecasts
            .iter()
            .map(|&x| stream.bernoulli(0.3 + 0.4 * x))
            .collect();
        rec(&forecasts, &outcomes)
    }

    /// Direct averaging of the elementary score over the record.
    fn grid_oracle(record: &ForecastRecord, theta: f64) -> f64 {
        let sum: f64 = record
            .pairs()
            .map(|(x, y)| elementary_score(theta, x, y).unwrap())
            .sum();
        sum / record.len() as f64
    }

    #[test]
    fn single_event_case() {
        let curve = murphy_curve(&rec(&[0.5], &[true]));
        assert_eq!(curve.knots(), &[0.0, 0.5, 1.0]);
        assert_eq!(curve.value(0.25).unwrap(), 0.0);
        assert_eq!(curve.value(0.5).unwrap(), 0.5);
        assert!((curve.value(0.75).unwrap() - 0.5).abs() < 1e-15);
        assert!((curve.value(0.9).unwrap() - 0.2).abs() < 1e-14);
    }

    #[test]
    fn single_non_event_case() {
        let curve = murphy_curve(&rec(&[0.5], &[false]));
        // Rising leg 2 theta below the forecast value, zero above.
        assert!((curve.value(0.25).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(curve.value(0.75).unwrap(), 0.0);
        assert_eq!(curve.value(0.5).unwrap(), 0.5);
        let record = rec(&[0.5], &[false]);
        for k in 1..40 {
            let theta = k as f64 / 40.0;
            assert!((curve.value(theta).unwrap() - grid_oracle(&record, theta)).abs() < 1e-15);
        }
    }

    #[test]
    fn matches_grid_oracle_on_random_records() {
        let mut stream = Stream::new(404, 0);
        for _ in 0..20 {
            let record = random_record(&mut stream, 50);
            let curve = murphy_curve(&record);
            for k in 1..1000 {
                let theta = k as f64 / 1000.0;
                let direct = grid_oracle(&record, theta);
                let via_curve = curve.value(theta).unwrap();
                assert!(
                    (direct - via_curve).abs() < 1e-12,
                    "theta={theta}: {direct} vs {via_curve}"
                );
            }
            // Also at the knots themselves, where the tie term bites.
            for &theta in curve.interior_knots() {
                let direct = grid_oracle(&record, theta);
                let via_curve = curve.value(theta).unwrap();
                assert!((direct - via_curve).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn value_at_half_is_the_misclassification_rate_exactly() {
        let mut stream = Stream::new(405, 0);
        for _ in 0..50 {
            let n = 1 + (stream.uniform() * 80.0) as usize;
            let record = random_record(&mut stream, n);
            let curve = murphy_curve(&record);
            let mr = mean_score(ScoringRule::ZeroOne, &record)
                .unwrap()
                .finite()
                .unwrap();
            assert_eq!(curve.value(0.5).unwrap(), mr);
        }
    }

    #[test]
    fn area_equals_mean_brier_score() {
        let single = murphy_curve(&rec(&[0.5], &[true]));
        assert!((murphy_area(&single) - 0.25).abs() < 1e-15);

        let constant = murphy_curve(&rec(&[0.5, 0.5], &[false, true]));
        assert!((murphy_area(&constant) - 0.25).abs() < 1e-15);

        let mut stream = Stream::new(406, 0);
        for _ in 0..50 {
            let n = 1 + (stream.uniform() * 120.0) as usize;
            let record = random_record(&mut stream, n);
            let curve = murphy_curve(&record);
            let brier = mean_score(ScoringRule::Brier, &record)
                .unwrap()
                .finite()
                .unwrap();
            assert!((murphy_area(&curve) - brier).abs() < 1e-12);
        }
    }

    #[test]
    fn curve_bounds_hold() {
        let mut stream = Stream::new(407, 0);
        for _ in 0..20 {
            let record = random_record(&mut stream, 40);
            let curve = murphy_curve(&record);
            for k in 1..100 {
                let theta = k as f64 / 100.0;
                let v = curve.value(theta).unwrap();
                assert!(v >= 0.0);
                assert!(v <= 2.0 * theta.max(1.0 - theta) + 1e-15);
            }
            assert!(curve.limit_at_zero() >= 0.0);
            assert!(curve.limit_at_one() >= 0.0);
        }
    }

    #[test]
    fn recalibrated_curve_never_exceeds_the_original() {
        // In-sample version of the superiority of re-calibration.
        let mut stream = Stream::new(408, 0);
        for _ in 0..30 {
            let record = random_record(&mut stream, 60);
            let recal = crate::pav::recalibrate(&record);
            let raw = murphy_curve(&record);
            let better = murphy_curve(&recal);
            let mut thetas: Vec<f64> = (1..200).map(|k| k as f64 / 200.0).collect();
            thetas.extend_from_slice(raw.interior_knots());
            thetas.extend_from_slice(better.interior_knots());
            for theta in thetas {
                assert!(
                    better.value(theta).unwrap() <= raw.value(theta).unwrap() + 1e-12,
                    "recalibrated curve above original at theta={theta}"
                );
            }
        }
    }

    #[test]
    fn uniform_weight_reproduces_the_area() {
        let curve = murphy_curve(&rec(&[0.3, 0.6, 0.9], &[false, true, true]));
        let area = weighted_murphy_area(&curve, ScoringRule::Brier, 1000).unwrap();
        assert_eq!(area, ExtendedReal::Finite(murphy_area(&curve)));
    }

    #[test]
    fn log_weight_matches_the_mean_log_score() {
        let record = rec(&[0.5], &[true]);
        let curve = murphy_curve(&record);
        let area = weighted_murphy_area(&curve, ScoringRule::Log, 20_000).unwrap();
        assert!((area.finite().unwrap() - std::f64::consts::LN_2).abs() < 1e-6);

        let mut stream = Stream::new(409, 0);
        for _ in 0..10 {
            let n = 1 + (stream.uniform() * 40.0) as usize;
            let forecasts: Vec<f64> =
                (0..n).map(|_| 0.05 + 0.9 * stream.uniform()).collect();
            let outcomes: Vec<bool> = forecasts.iter().map(|&x| stream.bernoulli(x)).collect();
            let record = rec(&forecasts, &outcomes);
            let curve = murphy_curve(&record);
            let area = weighted_murphy_area(&curve, ScoringRule::Log, 50_000)
                .unwrap()
                .finite()
                .unwrap();
            let mean = mean_score(ScoringRule::Log, &record).unwrap().finite().unwrap();
            assert!((area - mean).abs() < 1e-6, "{area} vs {mean}");
        }
    }

    #[test]
    fn log_weight_diverges_on_impossible_outcomes() {
        let record = rec(&[0.0, 0.5], &[true, false]);
        let curve = murphy_curve(&record);
        let area = weighted_murphy_area(&curve, ScoringRule::Log, 1000).unwrap();
        assert!(area.is_infinite());

        let record = rec(&[1.0, 0.5], &[false, true]);
        let curve = murphy_curve(&record);
        assert!(weighted_murphy_area(&curve, ScoringRule::Log, 1000)
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn point_mass_weight_is_the_curve_value() {
        let record = rec(&[0.2, 0.7], &[false, true]);
        let curve = murphy_curve(&record);
        let v = weighted_murphy_area(&curve, ScoringRule::Elementary(0.4), 0).unwrap();
        assert_eq!(v, ExtendedReal::Finite(curve.value(0.4).unwrap()));
    }

    #[test]
    fn beta_weight_matches_the_beta_mean_score() {
        let rule = ScoringRule::BetaFamily { alpha: 2.0, beta: 3.0 };
        let mut stream = Stream::new(410, 0);
        let n = 30;
        let forecasts: Vec<f64> = (0..n).map(|_| stream.uniform()).collect();
        let outcomes: Vec<bool> = forecasts.iter().map(|&x| stream.bernoulli(x)).collect();
        let record = rec(&forecasts, &outcomes);
        let curve = murphy_curve(&record);
        let area = weighted_murphy_area(&curve, rule, 50_000)
            .unwrap()
            .finite()
            .unwrap();
        let mean = mean_score(rule, &record).unwrap().finite().unwrap();
        assert!((area - mean).abs() < 1e-6, "{area} vs {mean}");
    }

    #[test]
    fn rejects_thresholds_outside_the_open_interval() {
        let curve = murphy_curve(&rec(&[0.5], &[true]));
        assert!(curve.value(0.0).is_err());
        assert!(curve.value(1.0).is_err());
        assert!(murphy_value(&curve, -0.1).is_err());
    }

    #[test]
    fn geometry_serializes_with_the_documented_shape() {
        let curve = murphy_curve(&rec(&[0.5], &[true]));
        let json = serde_json::to_value(&curve).unwrap();
        assert_eq!(json["knots"], serde_json::json!([0.0, 0.5, 1.0]));
        assert_eq!(json["knot_values"], serde_json::json!([0.5]));
        assert_eq!(json["segments"][0]["lo"], 0.0);
        assert_eq!(json["segments"][1]["hi"], 1.0);
        let geometry: MurphyGeometry = serde_json::from_value(json).unwrap();
        assert_eq!(geometry, curve.geometry());
    }

    #[test]
    fn boundary_forecast_values_merge_with_boundary_knots() {
        let record = rec(&[0.0, 0.5, 1.0], &[true, false, false]);
        let curve = murphy_curve(&record);
        assert_eq!(curve.knots(), &[0.0, 0.5, 1.0]);
        // x = 0 with y = 1 is a miss at every threshold; x = 1 with y = 0 a
        // false alarm at every threshold.
        assert!((curve.limit_at_zero() - 2.0 / 3.0).abs() < 1e-15);
        assert!((curve.limit_at_one() - 2.0 / 3.0).abs() < 1e-15);
        for k in 1..40 {
            let theta = k as f64 / 40.0;
            assert!((curve.value(theta).unwrap() - grid_oracle(&record, theta)).abs() < 1e-14);
        }
    }
}
