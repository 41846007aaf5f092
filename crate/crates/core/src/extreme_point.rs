//! The bi-modal-plus-outlier extremal configuration.
//!
//! One observation sits at `a` standard deviations above the mean and the
//! remaining `N - 1` split evenly between two levels `±b` (shifted so the whole
//! set has zero mean and unit variance). Fixing the fourth moment at `kappa`
//! leaves a quadratic in `a²`:
//!
//! ```text
//! (a²)² - 2·(N-1)/(N+1)·a² + G(N, κ) = 0
//! G(N, κ) = (N(N-1)² - (N-1)³κ) / ((N+1)(N-3))
//! ```
//!
//! whose larger root gives the extreme point. At the top of the feasible
//! kurtosis range `b = 0` and the configuration collapses to Samuelson's,
//! with `a = √(N-1)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest observation count for which the closed form is evaluated.
pub const MIN_OBSERVATIONS: f64 = 5.0;

/// Feasible kurtosis interval `(kappa_min, kappa_max]` for a given N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KurtosisRange {
    /// Exclusive lower endpoint, `N/(N-1)`, where `G(N, κ)` changes sign.
    pub kappa_min: f64,
    /// Inclusive upper endpoint, `(N² - 3N + 3)/(N-1)`, where `b = 0`.
    pub kappa_max: f64,
}

impl KurtosisRange {
    pub fn contains(&self, kappa: f64) -> bool {
        kappa > self.kappa_min && kappa <= self.kappa_max
    }
}

/// Solved extremal configuration for `(n, kappa)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremePointSolution {
    pub n: f64,
    pub kappa: f64,
    pub g_value: f64,
    /// Extreme point in standard deviations, `(X₁ - mean)/σ`.
    pub a: f64,
    /// Squared bi-modal level of the remaining `N - 1` points.
    pub b_squared: f64,
    /// Population skewness `E[X³]` of the normalised configuration.
    pub theta3: f64,
    pub samuelson_bound: f64,
}

impl ExtremePointSolution {
    /// Residual of the quadratic in `a²`, relative to its largest term.
    pub fn quadratic_residual(&self) -> f64 {
        let u = self.a * self.a;
        let lin = 2.0 * (self.n - 1.0) / (self.n + 1.0) * u;
        let r = u * u - lin + self.g_value;
        r / (u * u).max(lin.abs()).max(self.g_value.abs())
    }

    /// The common shift `a/(N-1)` applied to the bi-modal points.
    pub fn mean_shift(&self) -> f64 {
        self.a / (self.n - 1.0)
    }
}

fn check_n(n: f64) -> Result<()> {
    if !(n >= MIN_OBSERVATIONS) || !n.is_finite() {
        return Err(Error::domain(format!(
            "observation count must be at least {MIN_OBSERVATIONS}, got {n}"
        )));
    }
    Ok(())
}

pub fn feasible_kurtosis_range(n: f64) -> Result<KurtosisRange> {
    check_n(n)?;
    Ok(KurtosisRange {
        kappa_min: n / (n - 1.0),
        kappa_max: (n * n - 3.0 * n + 3.0) / (n - 1.0),
    })
}

/// `G(N, κ)`, the constant term of the quadratic in `a²`.
pub fn g_value(n: f64, kappa: f64) -> f64 {
    let nm1 = n - 1.0;
    (n * nm1 * nm1 - nm1 * nm1 * nm1 * kappa) / ((n + 1.0) * (n - 3.0))
}

pub fn solve_extreme_point(n: f64, kappa: f64) -> Result<ExtremePointSolution> {
    let range = feasible_kurtosis_range(n)?;
    if !range.contains(kappa) {
        return Err(Error::InfeasibleKurtosis {
            n,
            kappa,
            kappa_min: range.kappa_min,
            kappa_max: range.kappa_max,
        });
    }

    let nm1 = n - 1.0;
    let r = nm1 / (n + 1.0);
    let g = g_value(n, kappa);
    // Inside the range G < 0, so the discriminant exceeds r².
    // Rounding can push the root an ulp past Samuelson's bound at kappa_max.
    let a = (r + (r * r - g).sqrt()).sqrt().min(nm1.sqrt());
    let a_sq = a * a;

    // b² is exactly zero at kappa_max; keep rounding from making it negative.
    let b_squared = (n / nm1 - a_sq * n / (nm1 * nm1)).max(0.0);

    Ok(ExtremePointSolution {
        n,
        kappa,
        g_value: g,
        a,
        b_squared,
        theta3: third_moment_at(n, a),
        samuelson_bound: nm1.sqrt(),
    })
}

/// Which large-N form of the extreme point to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticForm {
    /// `√(-1 + √(1 + N(κ-1)))`, the form carried over from the minus-sign root.
    MinusRoot,
    /// `√(1 + √(1 + N(κ-1)))`, the large-N limit of the root actually used.
    SignCorrected,
}

pub fn asymptotic_a(n: f64, kappa: f64, form: AsymptoticForm) -> Result<f64> {
    check_n(n)?;
    if !(kappa > 1.0) {
        return Err(Error::domain(format!(
            "asymptotic form needs kappa > 1, got {kappa}"
        )));
    }
    let inner = (1.0 + n * (kappa - 1.0)).sqrt();
    Ok(match form {
        AsymptoticForm::MinusRoot => (inner - 1.0).sqrt(),
        AsymptoticForm::SignCorrected => (inner + 1.0).sqrt(),
    })
}

/// Leading-order growth `[N(κ-1)]^{1/4}`.
pub fn leading_order(n: f64, kappa: f64) -> f64 {
    (n * (kappa - 1.0)).max(0.0).powf(0.25)
}

/// `√(n-1)`: no observation can lie further than this from the mean.
pub fn samuelson_bound(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!(
            "Samuelson bound needs at least 2 observations, got {n}"
        )));
    }
    Ok(((n - 1) as f64).sqrt())
}

pub fn third_moment(solution: &ExtremePointSolution) -> f64 {
    third_moment_at(solution.n, solution.a)
}

/// `E[X³] = -3a/(N-1) + (N+1)a³/(N-1)²`.
pub fn third_moment_at(n: f64, a: f64) -> f64 {
    let nm1 = n - 1.0;
    -3.0 * a / nm1 + (n + 1.0) * a * a * a / (nm1 * nm1)
}

/// Large-N behaviour of the third moment,
/// `-3(κ-1)^{1/4} N^{-3/4} + (κ-1)^{3/4} N^{-1/4}`.
pub fn third_moment_asymptotic(n: f64, kappa: f64) -> f64 {
    let k = kappa - 1.0;
    -3.0 * k.powf(0.25) * n.powf(-0.75) + k.powf(0.75) * n.powf(-0.25)
}

/// Smallest integer N ≥ 5 at which `kappa` is feasible. Feasibility is
/// upward closed in N (the range widens on both ends as N grows).
pub fn min_feasible_n(kappa: f64) -> Result<u64> {
    if !(kappa > 1.0) || !kappa.is_finite() {
        return Err(Error::domain(format!(
            "kurtosis must exceed 1 to be feasible for any N, got {kappa}"
        )));
    }
    // kappa > N/(N-1)  <=>  N > kappa/(kappa-1)
    let from_min = kappa / (kappa - 1.0);
    // kappa <= kappa_max(N)  <=>  N² - (3+κ)N + (3+κ) >= 0
    let s = 3.0 + kappa;
    let from_max = 0.5 * (s + (s * s - 4.0 * s).max(0.0).sqrt());
    let mut n = from_min.max(from_max).max(MIN_OBSERVATIONS).floor() as u64;
    n = n.saturating_sub(2).max(5);
    while !feasible_kurtosis_range(n as f64)?.contains(kappa) {
        n += 1;
    }
    Ok(n)
}

/// Explicit centred dataset for odd `n`: the outlier `a` first, then
/// alternating `b - a/(N-1)` and `-b - a/(N-1)`.
pub fn construct_distribution(n: u64, kappa: f64) -> Result<Vec<f64>> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenCount(n));
    }
    let sol = solve_extreme_point(n as f64, kappa)?;
    let b = sol.b_squared.sqrt();
    let shift = sol.mean_shift();
    let half = ((n - 1) / 2) as usize;

    let mut data = Vec::with_capacity(n as usize);
    data.push(sol.a);
    for _ in 0..half {
        data.push(b - shift);
        data.push(-b - shift);
    }
    Ok(data)
}
