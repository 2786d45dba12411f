//! Proper scoring rules with Savage and mixture representations.
//!
//! All rules are negatively oriented: smaller scores are better. The
//! logarithmic score can produce an infinite penalty, so score values are
//! [`ExtendedReal`]s; infinities serialize as the string `"inf"` to keep
//! JSON and CSV round-trips unambiguous.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::data::ForecastRecord;

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("forecast {0} outside [0, 1]")]
    ForecastOutOfRange(f64),
    #[error("threshold {0} outside the open interval (0, 1)")]
    InvalidTheta(f64),
    #[error("beta family parameters must be positive, got alpha={0}, beta={1}")]
    InvalidBetaParams(f64, f64),
    #[error("mixture integral diverges for forecast {x} with outcome {y}")]
    NonIntegrable { x: f64, y: u8 },
    #[error("unknown score name {0:?}; expected brier, log, misclass, elementary:<theta>, or beta:<alpha>:<beta>")]
    UnknownName(String),
}

/// A real number or positive infinity.
///
/// Means over records propagate infinity: one infinite penalty renders the
/// mean infinite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum ExtendedReal {
    Finite(f64),
    Infinite,
}

impl ExtendedReal {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedReal::Infinite)
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::Infinite => None,
        }
    }

    /// Finite value or `f64::INFINITY`, for numeric contexts.
    pub fn as_f64(self) -> f64 {
        match self {
            ExtendedReal::Finite(v) => v,
            ExtendedReal::Infinite => f64::INFINITY,
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(v: f64) -> Self {
        if v.is_infinite() && v > 0.0 {
            ExtendedReal::Infinite
        } else {
            ExtendedReal::Finite(v)
        }
    }
}

impl std::ops::Add for ExtendedReal {
    type Output = ExtendedReal;
    fn add(self, rhs: ExtendedReal) -> ExtendedReal {
        match (self, rhs) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => ExtendedReal::Finite(a + b),
            _ => ExtendedReal::Infinite,
        }
    }
}

impl std::ops::Sub<f64> for ExtendedReal {
    type Output = ExtendedReal;
    /// Subtract a finite real; infinity minus a finite value stays infinite.
    fn sub(self, rhs: f64) -> ExtendedReal {
        match self {
            ExtendedReal::Finite(a) => ExtendedReal::Finite(a - rhs),
            ExtendedReal::Infinite => ExtendedReal::Infinite,
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(v) => serializer.serialize_f64(*v),
            ExtendedReal::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(v) => Ok(ExtendedReal::Finite(v)),
            Raw::Text(s) if s == "inf" => Ok(ExtendedReal::Infinite),
            Raw::Text(s) => Err(D::Error::custom(format!("invalid extended real {s:?}"))),
        }
    }
}

/// A proper scoring rule for probability forecasts of a binary outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScoringRule {
    /// Squared error `(x - y)^2`; uniform mixing density.
    Brier,
    /// `-y ln x - (1 - y) ln(1 - x)`; mixing density `1 / (2 theta (1 - theta))`.
    Log,
    /// Zero-one score whose mean is the misclassification rate; equals `Elementary(1/2)`.
    ZeroOne,
    /// Elementary score at decision threshold `theta` in `(0, 1)`.
    Elementary(f64),
    /// Mixture with density `theta^(alpha-1) (1-theta)^(beta-1)`; `Beta(1, 1)` is the Brier score.
    BetaFamily { alpha: f64, beta: f64 },
}

impl ScoringRule {
    pub fn elementary(theta: f64) -> Result<Self, ScoreError> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(ScoreError::InvalidTheta(theta));
        }
        Ok(ScoringRule::Elementary(theta))
    }

    pub fn beta_family(alpha: f64, beta: f64) -> Result<Self, ScoreError> {
        if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(ScoreError::InvalidBetaParams(alpha, beta));
        }
        Ok(ScoringRule::BetaFamily { alpha, beta })
    }

    /// CLI/JSON name of the rule.
    pub fn name(&self) -> String {
        match self {
            ScoringRule::Brier => "brier".into(),
            ScoringRule::Log => "log".into(),
            ScoringRule::ZeroOne => "misclass".into(),
            ScoringRule::Elementary(theta) => format!("elementary:{theta}"),
            ScoringRule::BetaFamily { alpha, beta } => format!("beta:{alpha}:{beta}"),
        }
    }
}

impl fmt::Display for ScoringRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for ScoringRule {
    type Err = ScoreError;

    fn from_str(s: &str) -> Result<Self, ScoreError> {
        match s {
            "brier" => Ok(ScoringRule::Brier),
            "log" => Ok(ScoringRule::Log),
            "misclass" => Ok(ScoringRule::ZeroOne),
            other => {
                if let Some(theta) = other.strip_prefix("elementary:") {
                    let theta: f64 = theta
                        .parse()
                        .map_err(|_| ScoreError::UnknownName(s.to_string()))?;
                    return ScoringRule::elementary(theta);
                }
                if let Some(params) = other.strip_prefix("beta:") {
                    let mut parts = params.splitn(2, ':');
                    let alpha = parts.next().and_then(|p| p.parse::<f64>().ok());
                    let beta = parts.next().and_then(|p| p.parse::<f64>().ok());
                    if let (Some(alpha), Some(beta)) = (alpha, beta) {
                        return ScoringRule::beta_family(alpha, beta);
                    }
                }
                Err(ScoreError::UnknownName(s.to_string()))
            }
        }
    }
}

impl Serialize for ScoringRule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for ScoringRule {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

fn check_forecast(x: f64) -> Result<(), ScoreError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(ScoreError::ForecastOutOfRange(x));
    }
    Ok(())
}

/// Elementary score `S_theta(x, y)` at threshold `theta` in `(0, 1)`.
///
/// Penalizes `2 theta` for a false alarm (`x > theta`, non-event),
/// `2 (1 - theta)` for a miss (`x < theta`, event), and a fixed
/// `2 theta (1 - theta)` when `x = theta`, regardless of the outcome.
pub fn elementary_score(theta: f64, x: f64, y: bool) -> Result<f64, ScoreError> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(ScoreError::InvalidTheta(theta));
    }
    check_forecast(x)?;
    Ok(elementary_score_unchecked(theta, x, y))
}

#[inline]
pub(crate) fn elementary_score_unchecked(theta: f64, x: f64, y: bool) -> f64 {
    if x == theta {
        2.0 * theta * (1.0 - theta)
    } else if x > theta && !y {
        2.0 * theta
    } else if x < theta && y {
        2.0 * (1.0 - theta)
    } else {
        0.0
    }
}

fn log_score(x: f64, y: bool) -> ExtendedReal {
    // 0 * ln 0 never arises: the score reads the probability assigned to
    // the realized outcome only.
    let p = if y { x } else { 1.0 - x };
    if p == 0.0 {
        ExtendedReal::Infinite
    } else {
        ExtendedReal::Finite(-p.ln())
    }
}

fn beta_closed_form(alpha: f64, beta: f64, x: f64, y: bool) -> f64 {
    use statrs::function::beta as beta_fn;
    // Density h(t) = t^(alpha-1) (1-t)^(beta-1), normalized so that
    // Beta(1, 1) is exactly the Brier score.
    if y {
        // integral over (x, 1) of 2 (1 - t) h(t) dt
        let total = beta_fn::beta(alpha, beta + 1.0);
        let part = if x == 0.0 {
            0.0
        } else {
            total * beta_fn::beta_reg(alpha, beta + 1.0, x)
        };
        2.0 * (total - part)
    } else {
        // integral over (0, x) of 2 t h(t) dt
        if x == 0.0 {
            0.0
        } else {
            2.0 * beta_fn::beta(alpha + 1.0, beta) * beta_fn::beta_reg(alpha + 1.0, beta, x)
        }
    }
}

/// Evaluate a scoring rule in closed form.
pub fn score(rule: ScoringRule, x: f64, y: bool) -> Result<ExtendedReal, ScoreError> {
    check_forecast(x)?;
    Ok(match rule {
        ScoringRule::Brier => {
            let target = if y { 1.0 } else { 0.0 };
            ExtendedReal::Finite((x - target) * (x - target))
        }
        ScoringRule::Log => log_score(x, y),
        ScoringRule::ZeroOne => ExtendedReal::Finite(elementary_score_unchecked(0.5, x, y)),
        ScoringRule::Elementary(theta) => {
            ExtendedReal::Finite(elementary_score(theta, x, y)?)
        }
        ScoringRule::BetaFamily { alpha, beta } => {
            ExtendedReal::Finite(beta_closed_form(alpha, beta, x, y))
        }
    })
}

/// Mean score of a record; infinite as soon as one row is infinite.
pub fn mean_score(rule: ScoringRule, record: &ForecastRecord) -> Result<ExtendedReal, ScoreError> {
    let mut sum = 0.0;
    for (x, y) in record.pairs() {
        match score(rule, x, y)? {
            ExtendedReal::Finite(v) => sum += v,
            ExtendedReal::Infinite => return Ok(ExtendedReal::Infinite),
        }
    }
    Ok(ExtendedReal::Finite(sum / record.len() as f64))
}

/// The convex function `phi` of the Savage representation, normalized per rule.
///
/// Brier uses `phi(t) = t^2` and Log the negative entropy
/// `t ln t + (1 - t) ln(1 - t)`. The elementary rule uses the piecewise
/// linear `phi(t) = -2 min((1 - theta) t, theta (1 - t))` with kink at
/// `theta`; the zero subgradient chosen at the kink reproduces the
/// symmetric `2 theta (1 - theta)` tie penalty. The Beta family uses the
/// generic normalization with `phi(0) = phi(1) = 0`.
pub fn savage_phi(rule: ScoringRule, t: f64) -> Result<f64, ScoreError> {
    check_forecast(t)?;
    Ok(match rule {
        ScoringRule::Brier => t * t,
        ScoringRule::Log => {
            let mut v = 0.0;
            if t > 0.0 {
                v += t * t.ln();
            }
            if t < 1.0 {
                v += (1.0 - t) * (1.0 - t).ln();
            }
            v
        }
        ScoringRule::ZeroOne => savage_phi(ScoringRule::Elementary(0.5), t)?,
        ScoringRule::Elementary(theta) => -2.0 * ((1.0 - theta) * t).min(theta * (1.0 - t)),
        ScoringRule::BetaFamily { alpha, beta } => {
            let s0 = beta_closed_form(alpha, beta, t, false);
            let s1 = beta_closed_form(alpha, beta, t, true);
            -(1.0 - t) * s0 - t * s1
        }
    })
}

/// A subgradient of [`savage_phi`]; `None` encodes an infinite slope at the
/// boundary of the Log rule's domain.
pub fn savage_subgradient(rule: ScoringRule, t: f64) -> Result<Option<f64>, ScoreError> {
    check_forecast(t)?;
    Ok(match rule {
        ScoringRule::Brier => Some(2.0 * t),
        ScoringRule::Log => {
            if t == 0.0 || t == 1.0 {
                None
            } else {
                Some((t / (1.0 - t)).ln())
            }
        }
        ScoringRule::ZeroOne => savage_subgradient(ScoringRule::Elementary(0.5), t)?,
        ScoringRule::Elementary(theta) => Some(if t < theta {
            -2.0 * (1.0 - theta)
        } else if t > theta {
            2.0 * theta
        } else {
            0.0
        }),
        ScoringRule::BetaFamily { alpha, beta } => {
            let s0 = beta_closed_form(alpha, beta, t, false);
            let s1 = beta_closed_form(alpha, beta, t, true);
            Some(s0 - s1)
        }
    })
}

/// Score via the Savage representation `phi(y) - phi(x) - phi'(x) (y - x)`.
///
/// Agrees with [`score`] for every rule; kept as an independent algebraic
/// route.
pub fn savage_score(rule: ScoringRule, x: f64, y: bool) -> Result<ExtendedReal, ScoreError> {
    check_forecast(x)?;
    let target = if y { 1.0 } else { 0.0 };
    let phi_y = savage_phi(rule, target)?;
    let phi_x = savage_phi(rule, x)?;
    match savage_subgradient(rule, x)? {
        Some(slope) => Ok(ExtendedReal::Finite(phi_y - phi_x - slope * (target - x))),
        None => {
            // Log rule at the boundary: slope is -inf at 0 and +inf at 1.
            if target == x {
                // 0 * inf: the boundary forecast was right; penalty
                // reduces to phi(y) - phi(x) = 0.
                Ok(ExtendedReal::Finite(phi_y - phi_x))
            } else {
                Ok(ExtendedReal::Infinite)
            }
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, five points.
const GL5_NODES: [f64; 5] = [
    -0.906179845938664,
    -0.5384693101056831,
    0.0,
    0.5384693101056831,
    0.906179845938664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.23692688505618908,
    0.47862867049936647,
    0.5688888888888889,
    0.47862867049936647,
    0.23692688505618908,
];

/// Mixing density of the Schervish representation, evaluated at interior points.
pub(crate) fn mixing_density(rule: ScoringRule, theta: f64) -> f64 {
    match rule {
        ScoringRule::Brier => 1.0,
        ScoringRule::Log => 0.5 / (theta * (1.0 - theta)),
        ScoringRule::BetaFamily { alpha, beta } => {
            theta.powf(alpha - 1.0) * (1.0 - theta).powf(beta - 1.0)
        }
        // Point-mass rules are handled before the quadrature path.
        ScoringRule::ZeroOne | ScoringRule::Elementary(_) => 0.0,
    }
}

/// Composite Gauss-Legendre integration of `f` over `[lo, hi]`.
pub(crate) fn integrate_panel(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, cells: usize) -> f64 {
    let cells = cells.max(1);
    let h = (hi - lo) / cells as f64;
    let mut total = 0.0;
    for c in 0..cells {
        let a = lo + c as f64 * h;
        let mid = a + 0.5 * h;
        let half = 0.5 * h;
        let mut cell = 0.0;
        for (node, weight) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
            cell += weight * f(mid + half * node);
        }
        total += cell * half;
    }
    total
}

/// Like [`integrate_panel`] but with the substitution `u -> lo + (hi-lo) u^2`
/// (or its mirror), clustering nodes at the singular endpoint.
pub(crate) fn integrate_panel_substituted(
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    cells: usize,
    singular_at_lo: bool,
) -> f64 {
    let width = hi - lo;
    let g = |u: f64| {
        if singular_at_lo {
            f(lo + width * u * u) * 2.0 * u * width
        } else {
            f(hi - width * u * u) * 2.0 * u * width
        }
    };
    integrate_panel(&g, 0.0, 1.0, cells)
}

/// Score via numerical quadrature of the Schervish mixture integral.
///
/// `nodes` is the total evaluation budget; a budget of a few thousand
/// reaches absolute accuracy around 1e-6 or better for the Brier, Log, and
/// Beta-family rules (endpoint panels are substituted to tame the
/// boundary behavior of the density). Converges to [`score`] as the budget
/// grows.
pub fn mixture_score(rule: ScoringRule, x: f64, y: bool, nodes: usize) -> Result<f64, ScoreError> {
    check_forecast(x)?;
    match rule {
        ScoringRule::ZeroOne => return Ok(elementary_score_unchecked(0.5, x, y)),
        ScoringRule::Elementary(theta) => return elementary_score(theta, x, y),
        ScoringRule::Log
            // Diverges when an impossible outcome realized.
            if ((x == 0.0 && y) || (x == 1.0 && !y)) => {
                return Err(ScoreError::NonIntegrable { x, y: y as u8 });
            }
        _ => {}
    }

    // The integrand vanishes on one side of x: only false alarms are
    // penalized below x and only misses above x.
    let f = |theta: f64| elementary_score_unchecked(theta, x, y) * mixing_density(rule, theta);
    let cells_total = (nodes / 5).max(8);

    // Panels split at x and 1/2 so every panel has a smooth interior.
    let mut cuts = vec![0.0, 0.5, 1.0];
    if x > 0.0 && x < 1.0 && x != 0.5 {
        cuts.push(x);
        cuts.sort_by(f64::total_cmp);
    }
    let mut total = 0.0;
    let panels = cuts.len() - 1;
    let cells = (cells_total / panels).max(4);
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo <= 0.0 {
            continue;
        }
        total += if lo == 0.0 {
            integrate_panel_substituted(&f, lo, hi, cells, true)
        } else if hi == 1.0 {
            integrate_panel_substituted(&f, lo, hi, cells, false)
        } else {
            integrate_panel(&f, lo, hi, cells)
        };
    }
    Ok(total)
}
