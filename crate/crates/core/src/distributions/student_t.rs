use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::beta::beta_reg;
use statrs::function::gamma::ln_gamma;

use super::{check_probability, normal_upper_quantile, solve_upper_tail};
use crate::error::{Error, Result};

pub fn student_t_pdf(x: f64, dof: f64) -> f64 {
    let v = dof;
    (ln_gamma(0.5 * (v + 1.0))
        - ln_gamma(0.5 * v)
        - 0.5 * (v * PI).ln()
        - 0.5 * (v + 1.0) * (x * x / v).ln_1p())
    .exp()
}

/// Upper tail `P(T > x)`.
pub fn student_t_sf(x: f64, dof: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    let x2 = x * x;
    // Evaluate whichever of I_z(ν/2, ½) or I_{1-z}(½, ν/2) has its argument
    // formed without cancellation.
    let z = dof / (dof + x2);
    let half_tail = if z < 0.5 {
        0.5 * beta_reg(0.5 * dof, 0.5, z)
    } else {
        0.5 * (1.0 - beta_reg(0.5, 0.5 * dof, x2 / (dof + x2)))
    };
    if x > 0.0 {
        half_tail
    } else {
        1.0 - half_tail
    }
}

pub fn student_t_cdf(x: f64, dof: f64) -> f64 {
    student_t_sf(-x, dof)
}

/// `x` with `P(T > x) = tail` for `dof` degrees of freedom. This is the raw
/// t quantile, not rescaled to unit variance.
pub fn student_t_upper_quantile(tail: f64, dof: f64) -> Result<f64> {
    if !(dof > 0.0) {
        return Err(Error::domain(format!(
            "degrees of freedom must be positive, got {dof}"
        )));
    }
    if !(tail > 0.0 && tail < 1.0) {
        return Err(Error::domain(format!(
            "upper-tail probability must lie in (0, 1), got {tail}"
        )));
    }
    if tail == 0.5 {
        return Ok(0.0);
    }
    if tail > 0.5 {
        return student_t_upper_quantile(1.0 - tail, dof).map(|x| -x);
    }

    let z = normal_upper_quantile(tail)?;
    let guess = if dof > 2.0 {
        z * (dof / (dof - 2.0)).sqrt()
    } else {
        z
    };
    let sf = |x| student_t_sf(x, dof);
    let (mut lo, mut hi) = (0.0, guess.max(1.0));
    while sf(hi) > tail {
        lo = hi;
        hi *= 2.0;
    }
    Ok(solve_upper_tail(
        sf,
        |x| student_t_pdf(x, dof),
        tail,
        lo,
        hi,
        guess,
    ))
}

/// Inverse CDF of Student's t with `dof` degrees of freedom.
pub fn student_t_quantile(p: f64, dof: u32) -> Result<f64> {
    check_probability(p)?;
    if dof == 0 {
        return Err(Error::domain(
            "Student-t needs at least 1 degree of freedom",
        ));
    }
    let v = dof as f64;
    if p >= 0.5 {
        student_t_upper_quantile(1.0 - p, v)
    } else {
        student_t_upper_quantile(p, v).map(|x| -x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KurtosisConvention {
    /// Non-excess: 3 for the normal.
    Raw,
    /// Raw minus 3.
    Excess,
}

/// Kurtosis of Student's t, finite only above 4 degrees of freedom.
pub fn student_t_kurtosis(dof: u32, convention: KurtosisConvention) -> Result<f64> {
    if dof <= 4 {
        return Err(Error::InfiniteKurtosis(dof));
    }
    let excess = 6.0 / (dof as f64 - 4.0);
    Ok(match convention {
        KurtosisConvention::Excess => excess,
        KurtosisConvention::Raw => 3.0 + excess,
    })
}
