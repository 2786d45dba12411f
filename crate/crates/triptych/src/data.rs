//! Forecast/outcome records, CSV ingestion, and empirical distributions.
//!
//! A [`ForecastRecord`] pairs probability forecasts in `[0, 1]` with binary
//! outcomes. A [`Dataset`] holds several named forecast series aligned to a
//! shared outcome column, with per-cell missingness, so that competing
//! forecasters can be restricted to a joint set of complete cases before
//! evaluation.

use std::io::Read;

use thiserror::Error;

/// Errors raised while parsing or reorganizing forecast data.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("empty input: no data rows")]
    Empty,
    #[error("row {row}: {message}")]
    Malformed { row: usize, message: String },
    #[error("row {row}: forecast {value} outside [0, 1]")]
    ForecastOutOfRange { row: usize, value: f64 },
    #[error("row {row}: outcome {value} is not 0 or 1")]
    InvalidOutcome { row: usize, value: String },
    #[error("no jointly complete rows")]
    NoCompleteRows,
    #[error("unknown forecaster {0:?}")]
    UnknownForecaster(String),
    #[error("forecaster {0:?} has missing values; restrict to complete cases first")]
    MissingValues(String),
    #[error("forecasts and outcomes must have equal positive length (got {forecasts} and {outcomes})")]
    LengthMismatch { forecasts: usize, outcomes: usize },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Input layout of a forecast CSV file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsvFormat {
    /// Header `y,<name1>,<name2>,...`: outcome column first, one column per forecaster.
    Wide,
    /// Header `forecaster,forecast,outcome`: one row per (forecaster, case).
    Long,
}

/// Paired forecasts and outcomes for a single named forecaster.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastRecord {
    name: String,
    forecasts: Vec<f64>,
    outcomes: Vec<bool>,
}

impl ForecastRecord {
    /// Build and validate a record: equal lengths, `n >= 1`, forecasts in `[0, 1]`.
    pub fn new(
        name: impl Into<String>,
        forecasts: Vec<f64>,
        outcomes: Vec<bool>,
    ) -> Result<Self, DataError> {
        if forecasts.len() != outcomes.len() || forecasts.is_empty() {
            return Err(DataError::LengthMismatch {
                forecasts: forecasts.len(),
                outcomes: outcomes.len(),
            });
        }
        for (i, &x) in forecasts.iter().enumerate() {
            if !(0.0..=1.0).contains(&x) {
                return Err(DataError::ForecastOutOfRange { row: i + 1, value: x });
            }
        }
        Ok(ForecastRecord {
            name: name.into(),
            forecasts,
            outcomes,
        })
    }

    /// Record issuing the same forecast `value` for every case.
    pub fn constant(
        name: impl Into<String>,
        value: f64,
        outcomes: Vec<bool>,
    ) -> Result<Self, DataError> {
        let forecasts = vec![value; outcomes.len()];
        ForecastRecord::new(name, forecasts, outcomes)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.forecasts.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn forecasts(&self) -> &[f64] {
        &self.forecasts
    }

    pub fn outcomes(&self) -> &[bool] {
        &self.outcomes
    }

    /// Number of cases where the event realized.
    pub fn event_count(&self) -> usize {
        self.outcomes.iter().filter(|&&y| y).count()
    }

    /// Iterate over `(forecast, outcome)` pairs in original order.
    pub fn pairs(&self) -> impl Iterator<Item = (f64, bool)> + '_ {
        self.forecasts
            .iter()
            .copied()
            .zip(self.outcomes.iter().copied())
    }

    /// Same outcomes with forecasts replaced; keeps the record name.
    pub fn with_forecasts(&self, forecasts: Vec<f64>) -> Result<Self, DataError> {
        ForecastRecord::new(self.name.clone(), forecasts, self.outcomes.clone())
    }

    /// True if only one outcome class is present.
    pub fn is_degenerate(&self) -> bool {
        let events = self.event_count();
        events == 0 || events == self.len()
    }
}

/// One named forecast series with optional missing cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<Option<f64>>,
}

/// Shared outcomes plus aligned named forecast series.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    outcomes: Vec<bool>,
    columns: Vec<Column>,
}

impl Dataset {
    pub fn new(outcomes: Vec<bool>, columns: Vec<Column>) -> Result<Self, DataError> {
        if outcomes.is_empty() {
            return Err(DataError::Empty);
        }
        for c in &columns {
            if c.values.len() != outcomes.len() {
                return Err(DataError::LengthMismatch {
                    forecasts: c.values.len(),
                    outcomes: outcomes.len(),
                });
            }
        }
        Ok(Dataset { outcomes, columns })
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn outcomes(&self) -> &[bool] {
        &self.outcomes
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn forecaster_names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    /// Keep only the named columns, in the order given.
    pub fn select(&self, names: &[&str]) -> Result<Dataset, DataError> {
        let mut columns = Vec::with_capacity(names.len());
        for &name in names {
            let col = self
                .columns
                .iter()
                .find(|c| c.name == name)
                .ok_or_else(|| DataError::UnknownForecaster(name.to_string()))?;
            columns.push(col.clone());
        }
        Ok(Dataset {
            outcomes: self.outcomes.clone(),
            columns,
        })
    }

    /// Extract one forecaster as a record; errors if the column has missing cells.
    pub fn record(&self, name: &str) -> Result<ForecastRecord, DataError> {
        let col = self
            .columns
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| DataError::UnknownForecaster(name.to_string()))?;
        let mut forecasts = Vec::with_capacity(col.values.len());
        for v in &col.values {
            match v {
                Some(x) => forecasts.push(*x),
                None => return Err(DataError::MissingValues(name.to_string())),
            }
        }
        ForecastRecord::new(col.name.clone(), forecasts, self.outcomes.clone())
    }

    /// Records for every column; callers usually restrict to complete cases first.
    pub fn records(&self) -> Result<Vec<ForecastRecord>, DataError> {
        self.columns.iter().map(|c| self.record(&c.name)).collect()
    }
}

/// Parse CSV text into a [`Dataset`].
///
/// Missing cells are empty strings or the literal `NA`. Forecast values are
/// parsed as decimal text at full binary precision. In long format the rows
/// of each forecaster, in file order, form its case sequence; all
/// forecasters must report the same outcome sequence.
pub fn parse_csv<R: Read>(input: R, format: CsvFormat) -> Result<Dataset, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(input);
    match format {
        CsvFormat::Wide => parse_wide(&mut reader),
        CsvFormat::Long => parse_long(&mut reader),
    }
}

fn parse_outcome(field: &str, row: usize) -> Result<bool, DataError> {
    match field.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        other => match other.parse::<f64>() {
            Ok(0.0) => Ok(false),
            Ok(1.0) => Ok(true),
            _ => Err(DataError::InvalidOutcome {
                row,
                value: field.to_string(),
            }),
        },
    }
}

fn parse_forecast_cell(field: &str, row: usize) -> Result<Option<f64>, DataError> {
    let trimmed = field.trim();
    if trimmed.is_empty() || trimmed == "NA" {
        return Ok(None);
    }
    let value: f64 = trimmed.parse().map_err(|_| DataError::Malformed {
        row,
        message: format!("cannot parse forecast {trimmed:?}"),
    })?;
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(DataError::ForecastOutOfRange { row, value });
    }
    Ok(Some(value))
}

fn parse_wide<R: Read>(reader: &mut csv::Reader<R>) -> Result<Dataset, DataError> {
    let headers = reader.headers()?.clone();
    if headers.len() < 2 {
        return Err(DataError::Malformed {
            row: 0,
            message: "wide format needs an outcome column and at least one forecaster".into(),
        });
    }
    let names: Vec<String> = headers.iter().skip(1).map(|h| h.trim().to_string()).collect();
    let mut outcomes = Vec::new();
    let mut values: Vec<Vec<Option<f64>>> = vec![Vec::new(); names.len()];
    for (idx, result) in reader.records().enumerate() {
        let row = idx + 1;
        let record = result?;
        if record.len() != headers.len() {
            return Err(DataError::Malformed {
                row,
                message: format!("expected {} fields, found {}", headers.len(), record.len()),
            });
        }
        outcomes.push(parse_outcome(&record[0], row)?);
        for (j, field) in record.iter().skip(1).enumerate() {
            values[j].push(parse_forecast_cell(field, row)?);
        }
    }
    if outcomes.is_empty() {
        return Err(DataError::Empty);
    }
    let columns = names
        .into_iter()
        .zip(values)
        .map(|(name, values)| Column { name, values })
        .collect();
    Dataset::new(outcomes, columns)
}

fn parse_long<R: Read>(reader: &mut csv::Reader<R>) -> Result<Dataset, DataError> {
    let headers = reader.headers()?.clone();
    let expected = ["forecaster", "forecast", "outcome"];
    let got: Vec<&str> = headers.iter().map(|h| h.trim()).collect();
    if got != expected {
        return Err(DataError::Malformed {
            row: 0,
            message: format!("long format header must be {expected:?}, found {got:?}"),
        });
    }
    // Group rows by forecaster in first-appearance order.
    let mut names: Vec<String> = Vec::new();
    let mut series: Vec<(Vec<Option<f64>>, Vec<bool>)> = Vec::new();
    for (idx, result) in reader.records().enumerate() {
        let row = idx + 1;
        let record = result?;
        if record.len() != 3 {
            return Err(DataError::Malformed {
                row,
                message: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let name = record[0].trim().to_string();
        let forecast = parse_forecast_cell(&record[1], row)?;
        let outcome = parse_outcome(&record[2], row)?;
        let slot = match names.iter().position(|n| *n == name) {
            Some(pos) => pos,
            None => {
                names.push(name);
                series.push((Vec::new(), Vec::new()));
                series.len() - 1
            }
        };
        series[slot].0.push(forecast);
        series[slot].1.push(outcome);
    }
    if names.is_empty() {
        return Err(DataError::Empty);
    }
    let n = series[0].1.len();
    for (name, (values, outcomes)) in names.iter().zip(&series) {
        if values.len() != n {
            return Err(DataError::Malformed {
                row: 0,
                message: format!("forecaster {name:?} has {} rows, expected {n}", values.len()),
            });
        }
        if *outcomes != series[0].1 {
            return Err(DataError::Malformed {
                row: 0,
                message: format!("forecaster {name:?} reports a different outcome sequence"),
            });
        }
    }
    let outcomes = series[0].1.clone();
    let columns = names
        .into_iter()
        .zip(series)
        .map(|(name, (values, _))| Column { name, values })
        .collect();
    Dataset::new(outcomes, columns)
}

/// Rows where every column is present, order preserved.
///
/// Fair comparisons require evaluation on a joint set of cases, so
/// multi-forecaster operations run on the complete-case view.
pub fn complete_cases(dataset: &Dataset) -> Result<Dataset, DataError> {
    let keep: Vec<usize> = (0..dataset.len())
        .filter(|&i| dataset.columns.iter().all(|c| c.values[i].is_some()))
        .collect();
    if keep.is_empty() {
        return Err(DataError::NoCompleteRows);
    }
    let outcomes = keep.iter().map(|&i| dataset.outcomes[i]).collect();
    let columns = dataset
        .columns
        .iter()
        .map(|c| Column {
            name: c.name.clone(),
            values: keep.iter().map(|&i| c.values[i]).collect(),
        })
        .collect();
    Dataset::new(outcomes, columns)
}

/// Step-function empirical distribution of a list of values.
///
/// `cdf` is the right-continuous empirical distribution function and
/// `quantile` its left-continuous generalized inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    support: Vec<f64>,
    cum_counts: Vec<usize>,
    n: usize,
}

impl EmpiricalDistribution {
    pub fn new(values: &[f64]) -> Result<Self, DataError> {
        if values.is_empty() {
            return Err(DataError::Empty);
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut support = Vec::new();
        let mut cum_counts = Vec::new();
        for &v in &sorted {
            if support.last() == Some(&v) {
                *cum_counts.last_mut().unwrap() += 1;
            } else {
                support.push(v);
                let prev = cum_counts.last().copied().unwrap_or(0);
                cum_counts.push(prev + 1);
            }
        }
        Ok(EmpiricalDistribution {
            support,
            cum_counts,
            n: sorted.len(),
        })
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `F(t) = #{v_i <= t} / n`.
    pub fn cdf(&self, t: f64) -> f64 {
        let idx = self.support.partition_point(|&v| v <= t);
        if idx == 0 {
            0.0
        } else {
            self.cum_counts[idx - 1] as f64 / self.n as f64
        }
    }

    /// `Q(alpha)`: smallest support value `v` with `F(v) >= alpha`, for `alpha` in `(0, 1]`.
    pub fn quantile(&self, alpha: f64) -> f64 {
        debug_assert!(alpha > 0.0 && alpha <= 1.0, "quantile level out of range");
        let n = self.n as f64;
        let idx = self
            .cum_counts
            .partition_point(|&c| (c as f64 / n) < alpha)
            .min(self.support.len() - 1);
        self.support[idx]
    }

    /// Cumulative fractions `F(v)` at each support point, in order.
    pub fn cumulative_fractions(&self) -> Vec<f64> {
        self.cum_counts
            .iter()
            .map(|&c| c as f64 / self.n as f64)
            .collect()
    }
}

/// Marginal outcome frequencies of a record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassPriors {
    /// Probability of a non-event, `1 - r`.
    pub pi0: f64,
    /// Probability of an event.
    pub pi1: f64,
    /// Realized unconditional event frequency (equals `pi1`).
    pub r: f64,
    /// True when only one outcome class occurs.
    pub degenerate: bool,
}

/// Event frequency `r = mean(y)` and the complementary class probability.
pub fn class_priors(outcomes: &[bool]) -> Result<ClassPriors, DataError> {
    if outcomes.is_empty() {
        return Err(DataError::Empty);
    }
    let events = outcomes.iter().filter(|&&y| y).count();
    let r = events as f64 / outcomes.len() as f64;
    Ok(ClassPriors {
        pi0: 1.0 - r,
        pi1: r,
        r,
        degenerate: events == 0 || events == outcomes.len(),
    })
}
