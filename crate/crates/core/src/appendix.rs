//! Alternative base shapes with a grafted outlier.
//!
//! Each base shape is a low-kurtosis point set. A single outlier `x` beyond the
//! largest base point is moved outward until the whole set reaches a target
//! kurtosis, and `(x - mean)/σ` is reported. For the bi-modal base this
//! reproduces the closed-form extreme point; the other shapes show how much
//! (little) the answer depends on the choice of base.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::oracle_moments;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseShape {
    /// Equal counts at −1 and 1.
    Bimodal,
    /// Equal counts at −1, 0 and 1.
    Trimodal,
    /// Two thirds at 0, one third at 1.
    TwoThirds,
    /// Equally spaced on [−1, 1], endpoints included.
    Uniform,
}

impl BaseShape {
    pub const ALL: [BaseShape; 4] = [
        BaseShape::Bimodal,
        BaseShape::Trimodal,
        BaseShape::TwoThirds,
        BaseShape::Uniform,
    ];

    /// Kurtosis of the continuous/infinite-count shape.
    pub fn base_kurtosis(self) -> f64 {
        match self {
            BaseShape::Bimodal => 1.0,
            BaseShape::Trimodal | BaseShape::TwoThirds => 1.5,
            BaseShape::Uniform => 1.8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseShape::Bimodal => "bimodal",
            BaseShape::Trimodal => "trimodal",
            BaseShape::TwoThirds => "two_thirds",
            BaseShape::Uniform => "uniform",
        }
    }
}

pub const MIN_BASE_POINTS: usize = 4;

/// Point multiset for `kind` with `m` points.
///
/// When `m` is not a multiple of the shape's modality the leftover points go
/// to the outermost modes: +1 first, then −1 (two-thirds: all to 1).
pub fn generate_base(kind: BaseShape, m: usize) -> Result<Vec<f64>> {
    if m < MIN_BASE_POINTS {
        return Err(Error::domain(format!(
            "base shape needs at least {MIN_BASE_POINTS} points, got {m}"
        )));
    }
    let repeat = |v: f64, k: usize| std::iter::repeat_n(v, k);
    let points: Vec<f64> = match kind {
        BaseShape::Bimodal => {
            let h = m / 2;
            let extra = m - 2 * h;
            repeat(1.0, h + extra).chain(repeat(-1.0, h)).collect()
        }
        BaseShape::Trimodal => {
            let t = m / 3;
            let rem = m - 3 * t;
            let plus = t + usize::from(rem >= 1);
            let minus = t + usize::from(rem == 2);
            repeat(1.0, plus)
                .chain(repeat(0.0, t))
                .chain(repeat(-1.0, minus))
                .collect()
        }
        BaseShape::TwoThirds => {
            let t = m / 3;
            let rem = m - 3 * t;
            repeat(1.0, t + rem).chain(repeat(0.0, 2 * t)).collect()
        }
        BaseShape::Uniform => {
            let step = 2.0 / (m - 1) as f64;
            (0..m)
                .map(|i| {
                    if i == m - 1 {
                        1.0
                    } else {
                        -1.0 + step * i as f64
                    }
                })
                .collect()
        }
    };
    Ok(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutlierSearch {
    /// `(x - mean)/σ` of the final dataset.
    pub a_statistic: f64,
    pub outlier_value: f64,
    pub achieved_kappa: f64,
}

/// Kurtosis tolerance the search must reach.
pub const SEARCH_KAPPA_TOLERANCE: f64 = 1e-9;
const MONOTONE_SAMPLES: usize = 64;

struct Grafted<'a> {
    base: &'a [f64],
    buf: Vec<f64>,
}

impl Grafted<'_> {
    fn kurtosis(&mut self, x: f64) -> Result<f64> {
        *self.buf.last_mut().expect("non-empty") = x;
        oracle_moments(&self.buf).map(|m| m.kurtosis)
    }

    fn statistic(&mut self, x: f64) -> Result<(f64, f64)> {
        *self.buf.last_mut().expect("non-empty") = x;
        let m = oracle_moments(&self.buf)?;
        Ok(((x - m.mean) / m.sigma(), m.kurtosis))
    }
}

/// Search for an outlier beyond `max(base)` giving the whole set kurtosis
/// `target_kappa`. Works on any base; the statistic is invariant under
/// affine maps of the base.
pub fn search_outlier_in(base: &[f64], target_kappa: f64) -> Result<OutlierSearch> {
    if base.len() < MIN_BASE_POINTS {
        return Err(Error::domain(format!(
            "base needs at least {MIN_BASE_POINTS} points, got {}",
            base.len()
        )));
    }
    let base_max = base.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let base_min = base.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = base_max - base_min;
    if !(spread > 0.0) {
        return Err(Error::DegenerateData);
    }

    let mut buf = base.to_vec();
    buf.push(base_max);
    let mut g = Grafted { base, buf };

    let lo0 = base_max;
    let k_lo = g.kurtosis(lo0)?;
    if !(k_lo < target_kappa) {
        return Err(Error::Unbracketable {
            target: target_kappa,
            reason: format!("kurtosis is already {k_lo} with the outlier at the base maximum"),
        });
    }

    // As x -> inf the kurtosis tends to (n² - 3n + 3)/(n - 1).
    let n = (g.base.len() + 1) as f64;
    let sup = (n * n - 3.0 * n + 3.0) / (n - 1.0);
    if !(target_kappa < sup) {
        return Err(Error::Unbracketable {
            target: target_kappa,
            reason: format!("kurtosis with {n} points cannot reach {sup} or more"),
        });
    }

    let mut width = spread;
    let mut hi = lo0 + width;
    let mut doublings = 0;
    while g.kurtosis(hi)? < target_kappa {
        width *= 2.0;
        hi = lo0 + width;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::Unbracketable {
                target: target_kappa,
                reason: "upper bracket did not converge".into(),
            });
        }
    }

    let mut prev = k_lo;
    for i in 1..=MONOTONE_SAMPLES {
        let x = lo0 + (hi - lo0) * i as f64 / MONOTONE_SAMPLES as f64;
        let k = g.kurtosis(x)?;
        if k < prev {
            return Err(Error::NonMonotone { lo: lo0, hi, at: x });
        }
        prev = k;
    }

    let (mut lo, mut hi) = (lo0, hi);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g.kurtosis(mid)? < target_kappa {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let k_lo = g.kurtosis(lo)?;
    let k_hi = g.kurtosis(hi)?;
    let x = if (k_hi - target_kappa).abs() < (k_lo - target_kappa).abs() {
        hi
    } else {
        lo
    };
    let (a_statistic, achieved_kappa) = g.statistic(x)?;
    if (achieved_kappa - target_kappa).abs() >= SEARCH_KAPPA_TOLERANCE {
        return Err(Error::Unbracketable {
            target: target_kappa,
            reason: format!("bisection stalled at kurtosis {achieved_kappa}"),
        });
    }
    Ok(OutlierSearch {
        a_statistic,
        outlier_value: x,
        achieved_kappa,
    })
}

/// Outlier search on `generate_base(kind, n - 1)`; `n` counts the outlier.
pub fn search_outlier(kind: BaseShape, n: usize, target_kappa: f64) -> Result<OutlierSearch> {
    if n == 0 {
        return Err(Error::domain("total count must include the outlier"));
    }
    let base = generate_base(kind, n - 1)?;
    search_outlier_in(&base, target_kappa)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    /// Number of base points, `N - 1`.
    pub base_count: usize,
    pub samuelson: f64,
    pub bimodal: f64,
    pub trimodal: f64,
    pub two_thirds: f64,
    pub uniform: f64,
}

impl ComparisonRow {
    pub fn get(&self, shape: BaseShape) -> f64 {
        match shape {
            BaseShape::Bimodal => self.bimodal,
            BaseShape::Trimodal => self.trimodal,
            BaseShape::TwoThirds => self.two_thirds,
            BaseShape::Uniform => self.uniform,
        }
    }
}

/// One row per base count: `√(N-1)` and the statistic for every shape.
pub fn comparison_table(base_counts: &[usize], target_kappa: f64) -> Result<Vec<ComparisonRow>> {
    base_counts
        .iter()
        .map(|&m| {
            let stat = |kind| search_outlier(kind, m + 1, target_kappa).map(|s| s.a_statistic);
            Ok(ComparisonRow {
                base_count: m,
                samuelson: (m as f64).sqrt(),
                bimodal: stat(BaseShape::Bimodal)?,
                trimodal: stat(BaseShape::Trimodal)?,
                two_thirds: stat(BaseShape::TwoThirds)?,
                uniform: stat(BaseShape::Uniform)?,
            })
        })
        .collect()
}
