//! Reliability diagrams: re-calibrated event probabilities against the
//! forecast values, with Monte Carlo consistency bands.
//!
//! The curve connects the points `(x, x_hat)` at the distinct forecast
//! values; any horizontal stretch can be read as a bin whose estimate is
//! the bin's empirical event frequency. The consistency band shows the
//! pointwise range of curves compatible with the forecast being calibrated:
//! outcomes are resampled as independent Bernoulli draws at the forecast
//! values and the fit is recomputed per replicate. Replicates use
//! independent seeded streams, so the band is bit-identical for a given
//! seed no matter how the work is scheduled.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::ForecastRecord;
use crate::pav::{pav_calibrate, CalibrationFit};
use crate::rng::Stream;

#[derive(Debug, Error)]
pub enum BandError {
    #[error("band level {0} outside the open interval (0, 1)")]
    InvalidLevel(f64),
    #[error("at least one replicate required")]
    NoReplicates,
}

/// One bin of the diagram: a maximal constant stretch of the fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bin {
    /// Smallest forecast value in the bin.
    pub lo: f64,
    /// Largest forecast value in the bin.
    pub hi: f64,
    /// Empirical event frequency of the bin, the CEP estimate.
    pub cep: f64,
    /// Number of cases pooled.
    pub count: usize,
}

/// Pointwise resampling band around the diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyBand {
    /// Nominal coverage of the band.
    pub level: f64,
    /// Distinct forecast values the band is evaluated at.
    pub forecasts: Vec<f64>,
    /// Pointwise lower quantiles of the resampled curves.
    pub lower: Vec<f64>,
    /// Pointwise upper quantiles of the resampled curves.
    pub upper: Vec<f64>,
    /// Number of resampled curves.
    pub replicates: usize,
    pub seed: u64,
}

/// Reliability curve, bins, forecast histogram, and optional band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityDiagram {
    /// `(forecast, recalibrated)` at the distinct sorted forecast values.
    pub curve_points: Vec<(f64, f64)>,
    pub bins: Vec<Bin>,
    /// Counts of forecast values per equal-width display bin on `[0, 1]`.
    pub histogram: Vec<usize>,
    pub band: Option<ConsistencyBand>,
}

fn bins_from_fit(fit: &CalibrationFit) -> Vec<Bin> {
    fit.blocks()
        .iter()
        .map(|block| Bin {
            lo: fit.sorted_forecasts()[block.start],
            hi: fit.sorted_forecasts()[block.end - 1],
            cep: block.value(),
            count: block.weight(),
        })
        .collect()
}

/// Histogram of forecast values over `bins` equal-width cells on `[0, 1]`;
/// the value 1.0 lands in the last cell.
pub fn forecast_histogram(forecasts: &[f64], bins: usize) -> Vec<usize> {
    let bins = bins.max(1);
    let mut counts = vec![0usize; bins];
    for &x in forecasts {
        let idx = ((x * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    counts
}

/// Build the reliability diagram of a record (10 display bins, no band).
pub fn reliability_curve(record: &ForecastRecord) -> ReliabilityDiagram {
    reliability_curve_with(record, 10, None)
}

/// Reliability diagram with a chosen histogram resolution and an optional
/// precomputed band.
pub fn reliability_curve_with(
    record: &ForecastRecord,
    histogram_bins: usize,
    band: Option<ConsistencyBand>,
) -> ReliabilityDiagram {
    let fit = pav_calibrate(record);
    ReliabilityDiagram {
        curve_points: fit.curve_points(),
        bins: bins_from_fit(&fit),
        histogram: forecast_histogram(record.forecasts(), histogram_bins),
        band,
    }
}

/// Empirical quantile by order statistic with ceiling index.
fn order_statistic(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let rank = ((p * n as f64).ceil() as usize).clamp(1, n);
    sorted[rank - 1]
}

/// Pointwise consistency band at the given coverage level.
///
/// For each replicate, outcomes are redrawn as `Bernoulli(x_i)` and the
/// isotonic fit recomputed; the band keeps the pointwise `(1 - level) / 2`
/// and `(1 + level) / 2` empirical quantiles at every distinct forecast
/// value. Replicate `b` draws from stream `b` of the seed, so results do
/// not depend on evaluation order.
pub fn consistency_band(
    forecasts: &[f64],
    level: f64,
    replicates: usize,
    seed: u64,
) -> Result<ConsistencyBand, BandError> {
    if !(level > 0.0 && level < 1.0) {
        return Err(BandError::InvalidLevel(level));
    }
    if replicates == 0 {
        return Err(BandError::NoReplicates);
    }

    let mut distinct: Vec<f64> = forecasts.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();

    // Curve value per distinct forecast value, one entry per replicate.
    let mut samples = vec![Vec::with_capacity(replicates); distinct.len()];
    for b in 0..replicates {
        let mut stream = Stream::new(seed, b as u64);
        let outcomes: Vec<bool> = forecasts.iter().map(|&x| stream.bernoulli(x)).collect();
        let record = ForecastRecord::new("band", forecasts.to_vec(), outcomes)
            .expect("forecasts validated by the caller");
        let fit = pav_calibrate(&record);
        let points = fit.curve_points();
        debug_assert_eq!(points.len(), distinct.len());
        for (slot, (_, v)) in samples.iter_mut().zip(points) {
            slot.push(v);
        }
    }

    let mut lower = Vec::with_capacity(distinct.len());
    let mut upper = Vec::with_capacity(distinct.len());
    for slot in &mut samples {
        slot.sort_by(f64::total_cmp);
        lower.push(order_statistic(slot, (1.0 - level) / 2.0));
        upper.push(order_statistic(slot, (1.0 + level) / 2.0));
    }

    Ok(ConsistencyBand {
        level,
        forecasts: distinct,
        lower,
        upper,
        replicates,
        seed,
    })
}
