//! Population moments (divisor N throughout).

use serde::Serialize;

use crate::error::{Error, Result};

/// Mean, variance and the normalised third and fourth moments of a sample,
/// all with the population convention. Kurtosis is non-excess.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PopulationMoments {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

impl PopulationMoments {
    pub fn sigma(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// Brute-force population moments by direct summation (two passes).
pub fn oracle_moments(data: &[f64]) -> Result<PopulationMoments> {
    if data.is_empty() {
        return Err(Error::TooFewObservations { got: 0, need: 1 });
    }
    let n = data.len() as f64;
    let mean = data.iter().sum::<f64>() / n;

    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in data {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    // A spread this small relative to the data scale is rounding noise.
    let scale = data.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if m2.sqrt() <= scale * 1e-12 {
        return Err(Error::DegenerateData);
    }

    Ok(PopulationMoments {
        mean,
        variance: m2,
        skewness: m3 / m2.powf(1.5),
        kurtosis: m4 / (m2 * m2),
    })
}

/// Largest |x - mean| / sigma over the sample.
pub fn max_abs_deviation_in_sigmas(data: &[f64], moments: &PopulationMoments) -> f64 {
    let sigma = moments.sigma();
    data.iter()
        .map(|x| (x - moments.mean).abs() / sigma)
        .fold(0.0, f64::max)
}
