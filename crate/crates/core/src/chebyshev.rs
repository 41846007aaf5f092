//! Kurtosis-aware extensions of Chebyshev's inequality.
//!
//! Each bound is evaluated as written, with its validity domain enforced: an
//! out-of-domain request is an error, never a clamped probability. The
//! `*_at_extreme_point` helpers plug in `t = a(N, κ)` and the third moment of
//! the extremal configuration, which is how the bounds are compared against
//! the `1/N` achieved by that configuration.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extreme_point::{min_feasible_n, solve_extreme_point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    EvenMoment,
    Zelen,
    Bhattacharyya,
}

impl BoundMethod {
    pub fn name(self) -> &'static str {
        match self {
            BoundMethod::EvenMoment => "even_moment",
            BoundMethod::Zelen => "zelen",
            BoundMethod::Bhattacharyya => "bhattacharyya",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundEvaluation {
    pub method: BoundMethod,
    /// Threshold in standard deviations.
    pub threshold_t: f64,
    pub probability: Option<f64>,
    pub one_in_n: Option<f64>,
    pub valid: bool,
}

impl BoundEvaluation {
    fn new(method: BoundMethod, threshold_t: f64, probability: f64) -> Self {
        Self {
            method,
            threshold_t,
            probability: Some(probability),
            one_in_n: Some(1.0 / probability),
            valid: true,
        }
    }

    /// A placeholder for a threshold where the bound's preconditions failed.
    pub fn invalid(method: BoundMethod, threshold_t: f64) -> Self {
        Self {
            method,
            threshold_t,
            probability: None,
            one_in_n: None,
            valid: false,
        }
    }
}

/// `P(|X - μ| ≥ t·m₂ₖ^{1/2k}) ≤ t^{-2k}`, from Markov's inequality applied to
/// the 2k-th central moment. `threshold_t` of the result is in data units,
/// `t·m₂ₖ^{1/2k}`.
pub fn even_moment_bound(t: f64, k: u32, moment_2k: f64) -> Result<BoundEvaluation> {
    if !(t > 0.0) || !(moment_2k > 0.0) || k == 0 {
        return Err(Error::domain(format!(
            "even-moment bound needs t > 0, k >= 1 and a positive moment (t = {t}, k = {k}, moment = {moment_2k})"
        )));
    }
    let two_k = 2.0 * k as f64;
    let probability = t.powf(-two_k);
    if probability > 1.0 {
        return Err(Error::domain(format!(
            "even-moment bound is vacuous for t = {t} < 1"
        )));
    }
    Ok(BoundEvaluation::new(
        BoundMethod::EvenMoment,
        t * moment_2k.powf(1.0 / two_k),
        probability,
    ))
}

/// Fourth-moment bound at `t = N^{1/4}`: threshold `(κN)^{1/4}`, probability `1/N`.
pub fn even_moment_endpoint(n: f64, kappa: f64) -> Result<BoundEvaluation> {
    if !(n >= 1.0) {
        return Err(Error::domain(format!("N must be at least 1, got {n}")));
    }
    even_moment_bound(n.powf(0.25), 2, kappa)
}

/// Smallest `t` for which Zelen's bound holds: `(θ₃ + √(θ₃² + 4))/2`.
pub fn zelen_min_threshold(theta3: f64) -> f64 {
    0.5 * (theta3 + (theta3 * theta3 + 4.0).sqrt())
}

/// Zelen's two-sided bound from the third and fourth standardised moments:
///
/// `P(|X - μ| ≥ tσ) ≤ [1 + t² + (t² - tθ₃ - 1)² / (θ₄ - θ₃² - 1)]⁻¹`
pub fn zelen_bound(t: f64, theta3: f64, theta4: f64) -> Result<BoundEvaluation> {
    let min_t = zelen_min_threshold(theta3);
    if !(t >= min_t) {
        return Err(Error::ZelenThreshold { t, min_t });
    }
    let denom = theta4 - theta3 * theta3 - 1.0;
    if !(denom > 0.0) {
        return Err(Error::MomentInfeasible(denom));
    }
    let q = t * t - t * theta3 - 1.0;
    let inv = 1.0 + t * t + q * q / denom;
    Ok(BoundEvaluation::new(BoundMethod::Zelen, t, 1.0 / inv))
}

/// Bhattacharyya's one-sided bound:
///
/// `P(X ≥ tσ) ≤ (κ - θ₃² - 1) / [(κ - θ₃² - 1)(1 + t²) + (t² - tθ₃ - 1)]`
pub fn bhattacharyya_bound(t: f64, theta3: f64, kappa: f64) -> Result<BoundEvaluation> {
    let q = t * t - t * theta3 - 1.0;
    if !(q > 0.0) {
        return Err(Error::BhattacharyyaThreshold(q));
    }
    let d = kappa - theta3 * theta3 - 1.0;
    if !(d > 0.0) {
        return Err(Error::BhattacharyyaMoments(d));
    }
    let probability = d / (d * (1.0 + t * t) + q);
    Ok(BoundEvaluation::new(
        BoundMethod::Bhattacharyya,
        t,
        probability,
    ))
}

/// Zelen's bound at `t = a(N, κ)` for the extremal configuration.
pub fn zelen_at_extreme_point(n: f64, kappa: f64) -> Result<BoundEvaluation> {
    let sol = solve_extreme_point(n, kappa)?;
    zelen_bound(sol.a, sol.theta3, kappa)
}

/// Bhattacharyya's bound at `t = a(N, κ)` for the extremal configuration.
pub fn bhattacharyya_at_extreme_point(n: f64, kappa: f64) -> Result<BoundEvaluation> {
    let sol = solve_extreme_point(n, kappa)?;
    bhattacharyya_bound(sol.a, sol.theta3, kappa)
}

/// Smallest integer N at which both Bhattacharyya preconditions hold at
/// `t = a(N, κ)`. Scans upward from the feasibility floor.
pub fn min_n_for_bhattacharyya_validity(kappa: f64) -> Result<u64> {
    const SCAN_LIMIT: u64 = 10_000_000;
    let floor = min_feasible_n(kappa)?;
    (floor..floor + SCAN_LIMIT)
        .find(|&n| bhattacharyya_at_extreme_point(n as f64, kappa).is_ok())
        .ok_or_else(|| {
            Error::domain(format!(
                "no N in [{floor}, {}) satisfies the Bhattacharyya domain for kappa = {kappa}",
                floor + SCAN_LIMIT
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn chebyshev_at_one_sigma() {
        let b = even_moment_bound(1.0, 1, 1.0).unwrap();
        assert_eq!(b.probability, Some(1.0));
        assert_eq!(b.one_in_n, Some(1.0));
    }

    #[test]
    fn fourth_moment_endpoint() {
        let b = even_moment_endpoint(1000.0, 10.0).unwrap();
        assert_relative_eq!(b.threshold_t, 10.0, max_relative = 1e-12);
        assert_relative_eq!(b.probability.unwrap(), 1e-3, max_relative = 1e-12);
        let b = even_moment_endpoint(10_000.0, 16.0).unwrap();
        assert_relative_eq!(b.threshold_t, 20.0, max_relative = 1e-12);
    }

    #[test]
    fn even_moment_rejects_bad_input() {
        assert!(even_moment_bound(0.0, 2, 1.0).is_err());
        assert!(even_moment_bound(2.0, 2, -1.0).is_err());
        assert!(even_moment_bound(0.5, 2, 1.0).is_err());
    }

    #[test]
    fn zelen_direct_substitution() {
        // θ₃ = 0, θ₄ = 3, t = √3: [1 + 3 + (3 - 1)²/(3 - 0 - 1)]⁻¹ = 1/6
        let b = zelen_bound(3.0_f64.sqrt(), 0.0, 3.0).unwrap();
        assert_relative_eq!(b.probability.unwrap(), 1.0 / 6.0, max_relative = 1e-14);
    }

    #[test]
    fn zelen_domain() {
        assert_relative_eq!(zelen_min_threshold(0.0), 1.0);
        assert!(matches!(
            zelen_bound(0.9, 0.0, 3.0),
            Err(Error::ZelenThreshold { .. })
        ));
        assert!(matches!(
            zelen_bound(2.0, 1.0, 2.0),
            Err(Error::MomentInfeasible(_))
        ));
    }

    #[test]
    fn zelen_at_extremal_configuration() {
        let b = zelen_at_extreme_point(500.0, 7.0).unwrap();
        assert!((b.one_in_n.unwrap() - 500.0).abs() <= 3.0);
        let b = zelen_at_extreme_point(1e6, 10.0).unwrap();
        assert!((b.one_in_n.unwrap() - 1e6).abs() <= 3.0);
    }

    #[test]
    fn bhattacharyya_direct_substitution() {
        let b = bhattacharyya_bound(2.0_f64.sqrt(), 0.0, 3.0).unwrap();
        assert_relative_eq!(b.probability.unwrap(), 2.0 / 7.0, max_relative = 1e-14);
    }

    #[test]
    fn bhattacharyya_domain_errors_are_distinct() {
        assert!(matches!(
            bhattacharyya_bound(1.0, 0.5, 5.0),
            Err(Error::BhattacharyyaThreshold(_))
        ));
        assert!(matches!(
            bhattacharyya_bound(3.0, 2.0, 4.0),
            Err(Error::BhattacharyyaMoments(_))
        ));
    }

    #[test]
    fn bhattacharyya_published_cells() {
        let p = bhattacharyya_at_extreme_point(10_001.0, 7.0)
            .unwrap()
            .probability
            .unwrap();
        assert!((p - 0.003453).abs() / 0.003453 < 0.02, "{p}");
        let p = bhattacharyya_at_extreme_point(1e8 + 1.0, 16.0)
            .unwrap()
            .probability
            .unwrap();
        assert!((p - 0.000024).abs() / 0.000024 < 0.02, "{p}");
    }

    #[test]
    fn bhattacharyya_validity_floor() {
        // Values frozen from a brute-force scan over N of both preconditions.
        assert_eq!(min_n_for_bhattacharyya_validity(7.0).unwrap(), 9);
        assert_eq!(min_n_for_bhattacharyya_validity(16.0).unwrap(), 18);
        // Both preconditions are exactly zero at the Samuelson endpoint.
        let n = 9.0;
        let kmax = crate::extreme_point::feasible_kurtosis_range(n)
            .unwrap()
            .kappa_max;
        assert!(bhattacharyya_at_extreme_point(n, kmax).is_err());
        assert!(min_n_for_bhattacharyya_validity(0.5).is_err());
    }
}
