use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),

    #[error(
        "kurtosis {kappa} is infeasible for N = {n}; feasible range is ({kappa_min}, {kappa_max}]"
    )]
    InfeasibleKurtosis {
        n: f64,
        kappa: f64,
        kappa_min: f64,
        kappa_max: f64,
    },

    #[error("dataset construction needs an odd observation count, got {0}; use the closed form for even N")]
    EvenCount(u64),

    #[error("data has zero variance; normalised moments are undefined")]
    DegenerateData,

    #[error("too few observations: got {got}, need at least {need}")]
    TooFewObservations { got: usize, need: usize },

    #[error("Zelen bound requires t >= {min_t}, got t = {t}")]
    ZelenThreshold { t: f64, min_t: f64 },

    #[error("moment combination theta4 - theta3^2 - 1 = {0} must be positive")]
    MomentInfeasible(f64),

    #[error("Bhattacharyya bound requires t^2 - t*theta3 - 1 > 0, got {0}")]
    BhattacharyyaThreshold(f64),

    #[error("Bhattacharyya bound requires kappa - theta3^2 - 1 > 0, got {0}")]
    BhattacharyyaMoments(f64),

    #[error("Student-t with {0} degrees of freedom does not have a finite kurtosis")]
    InfiniteKurtosis(u32),

    #[error("no published tail factor for {key}; available: {available}")]
    UnknownTableKey { key: String, available: String },

    #[error("outlier search cannot bracket target kurtosis {target}: {reason}")]
    Unbracketable { target: f64, reason: String },

    #[error("kurtosis is not monotone in the outlier on [{lo}, {hi}] (dropped at x = {at})")]
    NonMonotone { lo: f64, hi: f64, at: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("row has {got} cells but the table has {expected} columns")]
    RowWidth { got: usize, expected: usize },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
