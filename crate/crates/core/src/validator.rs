//! Stress-model verdicts.
//!
//! A shock of `k·σ` is only guaranteed to exceed every observation of an
//! N-point history with kurtosis κ when `k ≥ a(N, κ)`. Since `a` grows with
//! N, each tail factor also has a longest history it can safely cover.

use serde::Serialize;

use crate::distributions::blr_tail_factor;
use crate::error::{Error, Result};
use crate::extreme_point::{feasible_kurtosis_range, min_feasible_n, solve_extreme_point};
use crate::series::ReturnSeries;

/// Search ceiling for [`max_safe_history`].
pub const DEFAULT_HISTORY_CEILING: u64 = 1_000_000_000;
/// Business days per year used to express history lengths in years.
pub const DEFAULT_DAYS_PER_YEAR: f64 = 250.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SafeHistory {
    /// Largest N with `a(N, κ) ≤ k`.
    Bounded { n: u64 },
    /// No violation found at or below the search ceiling.
    Unbounded { ceiling: u64 },
    /// Even the smallest feasible history already needs more than `k`.
    BelowFloor { floor: u64 },
}

impl SafeHistory {
    pub fn bounded(self) -> Option<u64> {
        match self {
            SafeHistory::Bounded { n } => Some(n),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelVerdict {
    pub tail_factor: f64,
    pub history_n: u64,
    pub kappa: f64,
    pub required_a: f64,
    /// `tail_factor - required_a`.
    pub margin: f64,
    pub pass: bool,
    pub max_safe_history: SafeHistory,
}

/// History length in years.
pub fn history_years(n: u64, days_per_year: f64) -> f64 {
    n as f64 / days_per_year
}

/// Tail factor needed to cover any observation of an N-point history with
/// kurtosis κ, i.e. `a(N, κ)`.
pub fn required_tail_factor(history_n: f64, kappa: f64) -> Result<f64> {
    solve_extreme_point(history_n, kappa).map(|s| s.a)
}

pub fn max_safe_history(tail_factor: f64, kappa: f64) -> Result<SafeHistory> {
    max_safe_history_with_ceiling(tail_factor, kappa, DEFAULT_HISTORY_CEILING)
}

/// Bisection over integer N, using that `a(N, κ)` increases with N.
pub fn max_safe_history_with_ceiling(
    tail_factor: f64,
    kappa: f64,
    ceiling: u64,
) -> Result<SafeHistory> {
    if !(tail_factor > 0.0) {
        return Err(Error::domain(format!(
            "tail factor must be positive, got {tail_factor}"
        )));
    }
    let floor = min_feasible_n(kappa)?;
    let a_at = |n: u64| required_tail_factor(n as f64, kappa);

    if a_at(floor)? > tail_factor {
        return Ok(SafeHistory::BelowFloor { floor });
    }
    if ceiling <= floor || a_at(ceiling)? <= tail_factor {
        return Ok(SafeHistory::Unbounded { ceiling });
    }
    let (mut lo, mut hi) = (floor, ceiling);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if a_at(mid)? <= tail_factor {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(SafeHistory::Bounded { n: lo })
}

pub fn validate_model(tail_factor: f64, history_n: u64, kappa: f64) -> Result<ModelVerdict> {
    if !(tail_factor > 0.0) {
        return Err(Error::domain(format!(
            "tail factor must be positive, got {tail_factor}"
        )));
    }
    let required_a = required_tail_factor(history_n as f64, kappa)?;
    let margin = tail_factor - required_a;
    Ok(ModelVerdict {
        tail_factor,
        history_n,
        kappa,
        required_a,
        margin,
        pass: margin >= 0.0,
        max_safe_history: max_safe_history(tail_factor, kappa)?,
    })
}

/// Validate a Brace-Lauer-Rado tail factor taken from the published table.
pub fn validate_blr(g_inverse_label: &str, kappa: f64, history_n: u64) -> Result<ModelVerdict> {
    let tail_factor = blr_tail_factor(g_inverse_label, kappa)?;
    validate_model(tail_factor, history_n, kappa)
}

/// Where the empirical threshold came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdSource {
    /// `a(n, κ_observed)`.
    ClosedForm,
    /// Observed kurtosis outside the feasible range; `√(n-1)` used instead.
    SamuelsonFallback,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalVerdict {
    pub statistics: ReturnSeries,
    pub tail_factor: f64,
    pub required_a: f64,
    pub threshold_source: ThresholdSource,
    pub margin: f64,
    /// An observation already lies beyond the tail factor.
    pub historical_breach: bool,
    /// The tail factor is below what the observed kurtosis allows.
    pub theoretical_exposure: bool,
    pub pass: bool,
    /// `None` when the observed kurtosis is infeasible for every N.
    pub max_safe_history: Option<SafeHistory>,
}

pub fn empirical_validate(series: &ReturnSeries, tail_factor: f64) -> Result<EmpiricalVerdict> {
    if !(tail_factor > 0.0) {
        return Err(Error::domain(format!(
            "tail factor must be positive, got {tail_factor}"
        )));
    }
    let n = series.n as f64;
    let kappa = series.kurtosis;
    let range = feasible_kurtosis_range(n)?;

    let (required_a, threshold_source) = if range.contains(kappa) {
        (required_tail_factor(n, kappa)?, ThresholdSource::ClosedForm)
    } else {
        ((n - 1.0).sqrt(), ThresholdSource::SamuelsonFallback)
    };

    let historical_breach = tail_factor < series.max_abs_deviation_in_sigmas;
    let theoretical_exposure = tail_factor < required_a;
    let max_safe_history = if kappa > 1.0 {
        Some(max_safe_history(tail_factor, kappa)?)
    } else {
        None
    };

    Ok(EmpiricalVerdict {
        statistics: series.clone(),
        tail_factor,
        required_a,
        threshold_source,
        margin: tail_factor - required_a,
        historical_breach,
        theoretical_exposure,
        pass: !historical_breach && !theoretical_exposure,
        max_safe_history,
    })
}
