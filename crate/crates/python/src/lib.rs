//! Python bindings for `kurtbound`.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use kurtbound::appendix::{self, BaseShape};
use kurtbound::chebyshev::{self, BoundEvaluation};
use kurtbound::distributions::{self, TailFactorQuery, TailModel};
use kurtbound::series::ReturnSeries;
use kurtbound::validator::{self, ModelVerdict, SafeHistory as CoreSafeHistory, ThresholdSource};
use kurtbound::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(msg) => PyOSError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

#[pyclass(frozen, get_all, skip_from_py_object, module = "kurtbound")]
#[derive(Clone)]
pub struct ExtremePoint {
    pub n: f64,
    pub kappa: f64,
    pub a: f64,
    pub b_squared: f64,
    pub theta3: f64,
    pub samuelson_bound: f64,
}

#[pymethods]
impl ExtremePoint {
    fn __repr__(&self) -> String {
        format!(
            "ExtremePoint(n={}, kappa={}, a={}, theta3={})",
            self.n, self.kappa, self.a, self.theta3
        )
    }
}

#[pyclass(
    name = "Bound",
    frozen,
    get_all,
    skip_from_py_object,
    module = "kurtbound"
)]
#[derive(Clone)]
pub struct TailBound {
    pub method: String,
    pub threshold_t: f64,
    pub probability: Option<f64>,
    pub one_in_n: Option<f64>,
}

impl From<BoundEvaluation> for TailBound {
    fn from(b: BoundEvaluation) -> Self {
        Self {
            method: b.method.name().to_string(),
            threshold_t: b.threshold_t,
            probability: b.probability,
            one_in_n: b.one_in_n,
        }
    }
}

#[pymethods]
impl TailBound {
    fn __repr__(&self) -> String {
        format!(
            "Bound(method={:?}, threshold_t={}, probability={:?})",
            self.method, self.threshold_t, self.probability
        )
    }
}

/// `kind` is "bounded", "unbounded" or "below_floor"; `n` is the history
/// length, search ceiling or feasibility floor respectively.
#[pyclass(frozen, get_all, skip_from_py_object, module = "kurtbound")]
#[derive(Clone)]
pub struct SafeHistory {
    pub kind: String,
    pub n: u64,
}

impl From<CoreSafeHistory> for SafeHistory {
    fn from(h: CoreSafeHistory) -> Self {
        let (kind, n) = match h {
            CoreSafeHistory::Bounded { n } => ("bounded", n),
            CoreSafeHistory::Unbounded { ceiling } => ("unbounded", ceiling),
            CoreSafeHistory::BelowFloor { floor } => ("below_floor", floor),
        };
        Self {
            kind: kind.to_string(),
            n,
        }
    }
}

#[pymethods]
impl SafeHistory {
    fn __repr__(&self) -> String {
        format!("SafeHistory(kind={:?}, n={})", self.kind, self.n)
    }
}

#[pyclass(frozen, get_all, skip_from_py_object, module = "kurtbound")]
#[derive(Clone)]
pub struct Verdict {
    pub tail_factor: f64,
    pub history_n: u64,
    pub kappa: f64,
    pub required_a: f64,
    pub margin: f64,
    pub passed: bool,
    pub max_safe_history: SafeHistory,
}

impl From<ModelVerdict> for Verdict {
    fn from(v: ModelVerdict) -> Self {
        Self {
            tail_factor: v.tail_factor,
            history_n: v.history_n,
            kappa: v.kappa,
            required_a: v.required_a,
            margin: v.margin,
            passed: v.pass,
            max_safe_history: v.max_safe_history.into(),
        }
    }
}

#[pymethods]
impl Verdict {
    fn __repr__(&self) -> String {
        format!(
            "Verdict({}, tail_factor={}, required_a={}, margin={})",
            if self.passed { "PASS" } else { "FAIL" },
            self.tail_factor,
            self.required_a,
            self.margin
        )
    }
}

#[pyclass(frozen, get_all, skip_from_py_object, module = "kurtbound")]
#[derive(Clone)]
pub struct EmpiricalVerdict {
    pub n: usize,
    pub mean: f64,
    pub sigma: f64,
    pub skewness: f64,
    pub kurtosis: f64,
    pub max_abs_deviation_in_sigmas: f64,
    pub tail_factor: f64,
    pub required_a: f64,
    /// "closed_form" or "samuelson_fallback".
    pub threshold_source: String,
    pub margin: f64,
    pub historical_breach: bool,
    pub theoretical_exposure: bool,
    pub passed: bool,
    pub max_safe_history: Option<SafeHistory>,
}

#[pymethods]
impl EmpiricalVerdict {
    fn __repr__(&self) -> String {
        format!(
            "EmpiricalVerdict({}, n={}, kurtosis={}, required_a={})",
            if self.passed { "PASS" } else { "FAIL" },
            self.n,
            self.kurtosis,
            self.required_a
        )
    }
}

#[pyfunction]
fn solve_extreme_point(n: f64, kappa: f64) -> PyResult<ExtremePoint> {
    let s = kurtbound::solve_extreme_point(n, kappa).map_err(py_err)?;
    Ok(ExtremePoint {
        n: s.n,
        kappa: s.kappa,
        a: s.a,
        b_squared: s.b_squared,
        theta3: s.theta3,
        samuelson_bound: s.samuelson_bound,
    })
}

/// `(kappa_min, kappa_max)`; the lower end is exclusive.
#[pyfunction]
fn feasible_kurtosis_range(n: f64) -> PyResult<(f64, f64)> {
    let r = kurtbound::feasible_kurtosis_range(n).map_err(py_err)?;
    Ok((r.kappa_min, r.kappa_max))
}

#[pyfunction]
fn construct_distribution(n: u64, kappa: f64) -> PyResult<Vec<f64>> {
    kurtbound::construct_distribution(n, kappa).map_err(py_err)
}

/// Population `(mean, variance, skewness, kurtosis)`.
#[pyfunction]
fn population_moments(data: Vec<f64>) -> PyResult<(f64, f64, f64, f64)> {
    let m = kurtbound::oracle_moments(&data).map_err(py_err)?;
    Ok((m.mean, m.variance, m.skewness, m.kurtosis))
}

#[pyfunction]
#[pyo3(signature = (horizon, model = "normal", dof = None))]
fn tail_factor(horizon: f64, model: &str, dof: Option<u32>) -> PyResult<f64> {
    let model = match (model, dof) {
        ("normal", _) => TailModel::Normal,
        ("student-t" | "student_t" | "t", Some(dof)) => TailModel::StudentT { dof },
        ("student-t" | "student_t" | "t", None) => {
            return Err(PyValueError::new_err(
                "dof is required for the student-t model",
            ))
        }
        (other, _) => return Err(PyValueError::new_err(format!("unknown model {other:?}"))),
    };
    TailFactorQuery::new(horizon, model)
        .and_then(|q| q.tail_factor())
        .map_err(py_err)
}

#[pyfunction]
fn normal_quantile(p: f64) -> PyResult<f64> {
    distributions::normal_quantile(p).map_err(py_err)
}

#[pyfunction]
fn student_t_quantile(p: f64, dof: u32) -> PyResult<f64> {
    distributions::student_t_quantile(p, dof).map_err(py_err)
}

#[pyfunction]
fn student_t_cdf(x: f64, dof: f64) -> f64 {
    distributions::student_t_cdf(x, dof)
}

#[pyfunction]
fn blr_tail_factor(g_inverse: &str, kappa: f64) -> PyResult<f64> {
    distributions::blr_tail_factor(g_inverse, kappa).map_err(py_err)
}

#[pyfunction]
fn even_moment_endpoint(n: f64, kappa: f64) -> PyResult<TailBound> {
    chebyshev::even_moment_endpoint(n, kappa)
        .map(Into::into)
        .map_err(py_err)
}

#[pyfunction]
fn zelen_bound(t: f64, theta3: f64, theta4: f64) -> PyResult<TailBound> {
    chebyshev::zelen_bound(t, theta3, theta4)
        .map(Into::into)
        .map_err(py_err)
}

#[pyfunction]
fn bhattacharyya_bound(t: f64, theta3: f64, kappa: f64) -> PyResult<TailBound> {
    chebyshev::bhattacharyya_bound(t, theta3, kappa)
        .map(Into::into)
        .map_err(py_err)
}

#[pyfunction]
fn zelen_at_extreme_point(n: f64, kappa: f64) -> PyResult<TailBound> {
    chebyshev::zelen_at_extreme_point(n, kappa)
        .map(Into::into)
        .map_err(py_err)
}

#[pyfunction]
fn bhattacharyya_at_extreme_point(n: f64, kappa: f64) -> PyResult<TailBound> {
    chebyshev::bhattacharyya_at_extreme_point(n, kappa)
        .map(Into::into)
        .map_err(py_err)
}

#[pyfunction]
fn max_safe_history(tail_factor: f64, kappa: f64) -> PyResult<SafeHistory> {
    validator::max_safe_history(tail_factor, kappa)
        .map(Into::into)
        .map_err(py_err)
}

#[pyfunction]
fn validate_model(tail_factor: f64, history: u64, kappa: f64) -> PyResult<Verdict> {
    validator::validate_model(tail_factor, history, kappa)
        .map(Into::into)
        .map_err(py_err)
}

#[pyfunction]
fn validate_blr(g_inverse: &str, kappa: f64, history: u64) -> PyResult<Verdict> {
    validator::validate_blr(g_inverse, kappa, history)
        .map(Into::into)
        .map_err(py_err)
}

/// Validate against a return series, given as values or as a CSV path.
#[pyfunction]
#[pyo3(signature = (tail_factor, values = None, path = None))]
fn empirical_validate(
    tail_factor: f64,
    values: Option<Vec<f64>>,
    path: Option<std::path::PathBuf>,
) -> PyResult<EmpiricalVerdict> {
    let series = match (values, path) {
        (Some(v), None) => ReturnSeries::new(v),
        (None, Some(p)) => ReturnSeries::from_path(p),
        _ => return Err(PyValueError::new_err("pass exactly one of values or path")),
    }
    .map_err(py_err)?;
    let v = validator::empirical_validate(&series, tail_factor).map_err(py_err)?;
    let s = &v.statistics;
    Ok(EmpiricalVerdict {
        n: s.n,
        mean: s.mean,
        sigma: s.sigma,
        skewness: s.skewness,
        kurtosis: s.kurtosis,
        max_abs_deviation_in_sigmas: s.max_abs_deviation_in_sigmas,
        tail_factor: v.tail_factor,
        required_a: v.required_a,
        threshold_source: match v.threshold_source {
            ThresholdSource::ClosedForm => "closed_form",
            ThresholdSource::SamuelsonFallback => "samuelson_fallback",
        }
        .to_string(),
        margin: v.margin,
        historical_breach: v.historical_breach,
        theoretical_exposure: v.theoretical_exposure,
        passed: v.pass,
        max_safe_history: v.max_safe_history.map(Into::into),
    })
}

fn parse_shape(name: &str) -> PyResult<BaseShape> {
    BaseShape::ALL
        .into_iter()
        .find(|s| s.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| {
            let names: Vec<_> = BaseShape::ALL.iter().map(|s| s.name()).collect();
            PyValueError::new_err(format!("unknown shape {name:?}; expected one of {names:?}"))
        })
}

/// Outlier statistic `(x - mean)/σ` for a base shape of `n_total - 1` points
/// plus one outlier tuned to the target kurtosis.
#[pyfunction]
fn search_outlier(shape: &str, n_total: usize, kappa: f64) -> PyResult<f64> {
    appendix::search_outlier(parse_shape(shape)?, n_total, kappa)
        .map(|r| r.a_statistic)
        .map_err(py_err)
}

#[pymodule]
#[pyo3(name = "kurtbound")]
fn kurtbound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<ExtremePoint>()?;
    m.add_class::<TailBound>()?;
    m.add_class::<SafeHistory>()?;
    m.add_class::<Verdict>()?;
    m.add_class::<EmpiricalVerdict>()?;
    m.add_function(wrap_pyfunction!(solve_extreme_point, m)?)?;
    m.add_function(wrap_pyfunction!(feasible_kurtosis_range, m)?)?;
    m.add_function(wrap_pyfunction!(construct_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(population_moments, m)?)?;
    m.add_function(wrap_pyfunction!(tail_factor, m)?)?;
    m.add_function(wrap_pyfunction!(normal_quantile, m)?)?;
    m.add_function(wrap_pyfunction!(student_t_quantile, m)?)?;
    m.add_function(wrap_pyfunction!(student_t_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(blr_tail_factor, m)?)?;
    m.add_function(wrap_pyfunction!(even_moment_endpoint, m)?)?;
    m.add_function(wrap_pyfunction!(zelen_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bhattacharyya_bound, m)?)?;
    m.add_function(wrap_pyfunction!(zelen_at_extreme_point, m)?)?;
    m.add_function(wrap_pyfunction!(bhattacharyya_at_extreme_point, m)?)?;
    m.add_function(wrap_pyfunction!(max_safe_history, m)?)?;
    m.add_function(wrap_pyfunction!(validate_model, m)?)?;
    m.add_function(wrap_pyfunction!(validate_blr, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_validate, m)?)?;
    m.add_function(wrap_pyfunction!(search_outlier, m)?)?;
    Ok(())
}
