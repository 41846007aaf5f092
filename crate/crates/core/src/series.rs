//! Empirical daily return series and their CSV ingestion.
//!
//! Accepted input: UTF-8 text, one observation per line, either `value` or
//! `date,value`. An optional single header line is recognised by a
//! non-numeric value field on the first line. Decimal point only, no
//! thousands separators. Dates are kept for echoing but play no part in the
//! statistics.

use std::io::Read;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{max_abs_deviation_in_sigmas, oracle_moments};

pub const MIN_SERIES_LEN: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReturnSeries {
    #[serde(skip)]
    pub values: Vec<f64>,
    #[serde(skip)]
    pub dates: Option<Vec<String>>,
    pub n: usize,
    pub mean: f64,
    /// Population standard deviation.
    pub sigma: f64,
    pub skewness: f64,
    /// Population, non-excess kurtosis.
    pub kurtosis: f64,
    pub max_abs_deviation_in_sigmas: f64,
}

impl ReturnSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_dates(values, None)
    }

    pub fn with_dates(values: Vec<f64>, dates: Option<Vec<String>>) -> Result<Self> {
        if values.len() < MIN_SERIES_LEN {
            return Err(Error::TooFewObservations {
                got: values.len(),
                need: MIN_SERIES_LEN,
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "observation {} is not finite",
                i + 1
            )));
        }
        let m = oracle_moments(&values)?;
        Ok(Self {
            n: values.len(),
            mean: m.mean,
            sigma: m.sigma(),
            skewness: m.skewness,
            kurtosis: m.kurtosis,
            max_abs_deviation_in_sigmas: max_abs_deviation_in_sigmas(&values, &m),
            values,
            dates,
        })
    }

    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let (values, dates) = parse_returns_csv(reader)?;
        Self::with_dates(values, dates)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file =
            std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_csv_reader(std::io::BufReader::new(file))
    }
}

type Parsed = (Vec<f64>, Option<Vec<String>>);

/// Parse the return-series CSV contract into values and (optional) dates.
pub fn parse_returns_csv<R: Read>(reader: R) -> Result<Parsed> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut values = Vec::new();
    let mut dates: Vec<String> = Vec::new();
    let mut width = None;

    for (idx, record) in rdr.records().enumerate() {
        let line_of = |r: &csv::StringRecord| r.position().map_or(idx + 1, |p| p.line() as usize);
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(idx + 1, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = line_of(&record);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let (date, raw) = match record.len() {
            1 => (None, &record[0]),
            2 => (Some(&record[0]), &record[1]),
            k => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `value` or `date,value`, found {k} fields"),
                })
            }
        };
        let parsed = raw.parse::<f64>().ok().filter(|v| v.is_finite());
        match parsed {
            None if width.is_none() && values.is_empty() => {
                // header line
                width = Some(record.len());
                continue;
            }
            None => {
                return Err(Error::Parse {
                    line,
                    message: format!("`{raw}` is not a decimal number"),
                })
            }
            Some(v) => {
                match width {
                    None => width = Some(record.len()),
                    Some(w) if w != record.len() => {
                        return Err(Error::Parse {
                            line,
                            message: format!("expected {w} fields, found {}", record.len()),
                        })
                    }
                    _ => {}
                }
                values.push(v);
                if let Some(d) = date {
                    dates.push(d.to_string());
                }
            }
        }
    }

    let dates = (width == Some(2)).then_some(dates);
    Ok((values, dates))
}
