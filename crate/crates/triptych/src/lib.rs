//! Diagnostic graphics and score decompositions for probability forecasts
//! of binary outcomes.
//!
//! The crate evaluates probabilistic classifiers through three
//! complementary displays — Murphy curves for overall predictive
//! performance, reliability diagrams (isotonic-regression based) for
//! calibration, and ROC curves for discrimination ability — together with
//! the exact decomposition of any proper mean score into miscalibration
//! (MCB), discrimination (DSC), and uncertainty (UNC) components, and
//! MCB-DSC summary plots for many competitors at once.
//!
//! Start from [`data::ForecastRecord`] and the per-module entry points:
//!
//! - [`pav::pav_calibrate`] — isotonic re-calibration (the backbone of
//!   everything else),
//! - [`scoring::mean_score`] — proper scoring rules,
//! - [`murphy::murphy_curve`] — exact piecewise-linear Murphy curves,
//! - [`reliability::reliability_curve`] — reliability diagrams with
//!   resampled consistency bands,
//! - [`roc::roc_curve`] / [`roc::concave_roc`] — raw and concave ROC
//!   curves with AUC,
//! - [`decomp::corp_decomposition`] — MCB/DSC/UNC components,
//! - [`analysis::crossing_report`] — curve differences, sign changes, and
//!   dominance checks,
//! - [`sim::sample_scenario`] — reproducible samplers for three idealized
//!   forecast scenarios.
//!
//! Runnable demonstrations of each capability live in the crate's
//! `examples/` directory; the `triptych` binary wraps the same
//! functionality as a small CLI.

pub mod analysis;
pub mod cli;
pub mod data;
pub mod decomp;
pub mod figure;
pub mod murphy;
pub mod pav;
pub mod reliability;
pub mod roc;
pub(crate) mod rng;
pub mod scoring;
pub mod sim;

pub use data::{ForecastRecord, Dataset};
pub use scoring::{ExtendedReal, ScoringRule};
