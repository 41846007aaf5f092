//! Kurtosis-constrained extreme-deviation bounds.
//!
//! Given an N-point history normalised to zero mean and unit variance, and a
//! fixed (non-excess, population) kurtosis, [`extreme_point`] computes how many
//! standard deviations a single observation can lie from the mean. The other
//! modules turn that number into stress-model verdicts ([`validator`]),
//! compare it with kurtosis-aware Chebyshev-type inequalities
//! ([`chebyshev`]), and cross-check the extremal shape against alternative
//! base distributions ([`appendix`]).

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod appendix;
pub mod chebyshev;
pub mod cli;
pub mod distributions;
pub mod error;
pub mod extreme_point;
pub mod moments;
pub mod output;
pub mod series;
pub mod validator;

pub use error::{Error, Result};
pub use extreme_point::{
    construct_distribution, feasible_kurtosis_range, samuelson_bound, solve_extreme_point,
    third_moment, ExtremePointSolution, KurtosisRange,
};
pub use moments::{oracle_moments, PopulationMoments};
