//! Tabular output documents rendered as CSV, JSON or markdown.
//!
//! JSON layout (keys in this order): `title`, `source`, `columns`, `rows`,
//! `notes`. Numeric cells are JSON numbers (non-finite values become `null`),
//! text cells are strings and invalid cells are `{"invalid": "<reason>"}`.
//! CSV carries only the header row and the data rows.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

/// Numeric display: fixed decimals, or the shortest representation that
/// parses back to the same `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Fixed(usize),
    Full,
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Fixed(3)
    }
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("full") {
            return Ok(Precision::Full);
        }
        s.parse::<usize>()
            .ok()
            .filter(|&p| p <= 17)
            .map(Precision::Fixed)
            .ok_or_else(|| format!("expected 0..=17 or `full`, got `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Integer(i64),
    Text(String),
    /// A cell whose computation failed; carries the reason.
    Invalid(String),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn format_number(v: f64, precision: Precision) -> String {
        match precision {
            Precision::Fixed(p) => format!("{v:.p$}"),
            Precision::Full => format!("{v}"),
        }
    }

    fn render(&self, precision: Precision) -> String {
        match self {
            Cell::Number(v) => Self::format_number(*v, precision),
            Cell::Integer(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Invalid(reason) => format!("invalid: {reason}"),
        }
    }

    fn to_json(&self, precision: Precision) -> Value {
        match self {
            Cell::Number(v) if !v.is_finite() => Value::Null,
            Cell::Number(v) => {
                let shown: f64 = Self::format_number(*v, precision).parse().unwrap_or(*v);
                json!(shown)
            }
            Cell::Integer(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Invalid(reason) => json!({ "invalid": reason }),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Number(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Integer(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputDocument {
    pub title: String,
    /// Stable identifier of the table family, if any.
    pub source: Option<String>,
    headers: Vec<String>,
    rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    title: &'a str,
    source: Option<&'a str>,
    columns: &'a [String],
    rows: Vec<Vec<Value>>,
    notes: &'a [String],
}

impl OutputDocument {
    pub fn new<S: Into<String>>(
        title: impl Into<String>,
        headers: impl IntoIterator<Item = S>,
    ) -> Self {
        Self {
            title: title.into(),
            source: None,
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.headers.len() {
            return Err(Error::RowWidth {
                got: row.len(),
                expected: self.headers.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn has_invalid(&self) -> bool {
        self.rows
            .iter()
            .flatten()
            .any(|c| matches!(c, Cell::Invalid(_)))
    }

    pub fn render(&self, format: Format, precision: Precision) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(precision),
            Format::Json => self.to_json(precision),
            Format::Markdown => Ok(self.to_markdown(precision)),
        }
    }

    pub fn to_csv(&self, precision: Precision) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.headers).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render(precision)))
                .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_json(&self, precision: Precision) -> Result<String> {
        let doc = JsonDocument {
            title: &self.title,
            source: self.source.as_deref(),
            columns: &self.headers,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|c| c.to_json(precision)).collect())
                .collect(),
            notes: &self.notes,
        };
        let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_markdown(&self, precision: Precision) -> String {
        let escape = |s: &str| s.replace('|', "\\|");
        let mut out = format!("## {}\n\n", self.title);
        if let Some(src) = &self.source {
            out.push_str(&format!("Source: {src}\n\n"));
        }
        out.push_str(&format!(
            "| {} |\n",
            self.headers
                .iter()
                .map(|h| escape(h))
                .collect::<Vec<_>>()
                .join(" | ")
        ));
        out.push_str(&format!("|{}\n", "---|".repeat(self.headers.len())));
        for row in &self.rows {
            let cells: Vec<_> = row.iter().map(|c| escape(&c.render(precision))).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                out.push_str(&format!("- {n}\n"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputDocument {
        let mut doc = OutputDocument::new("t", ["N", "value, quoted", "status"]);
        doc.push_row(vec![Cell::Integer(250), 6.295_871.into(), "ok".into()])
            .unwrap();
        doc.push_row(vec![
            Cell::Integer(500),
            Cell::Invalid("kurtosis infeasible".into()),
            "say \"hi\"".into(),
        ])
        .unwrap();
        doc
    }

    #[test]
    fn row_width_enforced() {
        let mut doc = OutputDocument::new("t", ["a", "b"]);
        assert_eq!(
            doc.push_row(vec![1.0.into()]),
            Err(Error::RowWidth {
                got: 1,
                expected: 2
            })
        );
    }

    #[test]
    fn csv_quoting() {
        let csv = sample().to_csv(Precision::Fixed(3)).unwrap();
        assert_eq!(
            csv,
            "N,\"value, quoted\",status\r\n250,6.296,ok\r\n500,invalid: kurtosis infeasible,\"say \"\"hi\"\"\"\r\n"
        );
    }

    #[test]
    fn json_layout() {
        let mut doc = sample().with_source("a-grid");
        doc.note("n");
        let v: Value = serde_json::from_str(&doc.to_json(Precision::Fixed(2)).unwrap()).unwrap();
        assert_eq!(v["columns"][1], "value, quoted");
        assert_eq!(v["rows"][0][1], json!(6.3));
        assert_eq!(v["rows"][1][1]["invalid"], "kurtosis infeasible");
        assert_eq!(v["source"], "a-grid");
        let text = doc.to_json(Precision::Full).unwrap();
        let order: Vec<_> = [
            "\"title\"",
            "\"source\"",
            "\"columns\"",
            "\"rows\"",
            "\"notes\"",
        ]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn markdown_table() {
        let md = sample().to_markdown(Precision::Fixed(1));
        assert!(md.starts_with("## t\n\n| N | value, quoted | status |\n|---|---|---|\n"));
        assert!(md.contains("| 250 | 6.3 | ok |"));
    }

    #[test]
    fn precision_parsing() {
        assert_eq!("full".parse::<Precision>(), Ok(Precision::Full));
        assert_eq!("5".parse::<Precision>(), Ok(Precision::Fixed(5)));
        assert!("x".parse::<Precision>().is_err());
    }
}
