//! ROC curves: hit rate against false alarm rate as the classification
//! threshold decreases.
//!
//! A vertex is generated at every distinct forecast value with the strict
//! exceedance convention (`x > t` predicts the event), plus the sentinel
//! `(1, 1)` reached below the smallest value. A value carrying both events
//! and non-events yields a single diagonal-sloped segment, never an
//! arbitrary within-tie ordering. The concave variant evaluates the same
//! construction on the isotonically re-calibrated forecasts, which turns
//! the curve into its upper concave hull.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::ForecastRecord;
use crate::pav;

#[derive(Debug, Error)]
pub enum RocError {
    #[error("ROC requires both outcome classes, record {0:?} has only one")]
    SingleClass(String),
}

/// One ROC vertex with the threshold that generates it.
///
/// `threshold` is `None` for the final `(1, 1)` vertex, which is attained
/// only below every forecast value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub far: f64,
    pub hr: f64,
    pub threshold: Option<f64>,
}

/// Piecewise-linear ROC curve from `(0, 0)` to `(1, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    pub vertices: Vec<RocPoint>,
    /// Set when the curve was computed from re-calibrated forecasts.
    pub concave: bool,
    /// Trapezoidal area under the vertex polyline.
    pub auc: f64,
}

impl RocCurve {
    /// `(FAR, HR)` pairs of the vertex polyline.
    pub fn vertex_coordinates(&self) -> Vec<(f64, f64)> {
        self.vertices.iter().map(|v| (v.far, v.hr)).collect()
    }
}

fn trapezoid_area(vertices: &[RocPoint]) -> f64 {
    let mut area = 0.0;
    for w in vertices.windows(2) {
        area += (w[1].far - w[0].far) * (w[0].hr + w[1].hr) * 0.5;
    }
    area
}

fn build_curve(record: &ForecastRecord, concave: bool) -> Result<RocCurve, RocError> {
    let events = record.event_count();
    let non_events = record.len() - events;
    if events == 0 || non_events == 0 {
        return Err(RocError::SingleClass(record.name().to_string()));
    }

    // Distinct values in decreasing order with per-class counts.
    let mut pairs: Vec<(f64, bool)> = record.pairs().collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
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

    // Threshold at the largest value yields (0, 0); each further distinct
    // value admits the cases above it.
    let mut vertices = Vec::with_capacity(values.len() + 1);
    let mut false_alarms = 0usize;
    let mut hits = 0usize;
    for (idx, &value) in values.iter().enumerate() {
        vertices.push(RocPoint {
            far: false_alarms as f64 / non_events as f64,
            hr: hits as f64 / events as f64,
            threshold: Some(value),
        });
        false_alarms += count0[idx];
        hits += count1[idx];
    }
    vertices.push(RocPoint {
        far: 1.0,
        hr: 1.0,
        threshold: None,
    });

    let auc = trapezoid_area(&vertices);
    Ok(RocCurve {
        vertices,
        concave,
        auc,
    })
}

/// ROC curve of the record as issued.
pub fn roc_curve(record: &ForecastRecord) -> Result<RocCurve, RocError> {
    build_curve(record, false)
}

/// Concave ROC curve: the ROC curve of the PAV re-calibrated record.
///
/// Coincides with the upper concave hull of the raw curve; strictly
/// increasing block values make its segment slopes strictly decreasing.
pub fn concave_roc(record: &ForecastRecord) -> Result<RocCurve, RocError> {
    let events = record.event_count();
    if events == 0 || events == record.len() {
        return Err(RocError::SingleClass(record.name().to_string()));
    }
    build_curve(&pav::recalibrate(record), true)
}

/// Trapezoidal area under a curve's vertex polyline, in `[0, 1]`.
pub fn auc(curve: &RocCurve) -> f64 {
    trapezoid_area(&curve.vertices)
}
