//! Result tables: CSV with `#`-prefixed `key: value` metadata lines.

use std::fmt::Write;

use qent_core::csv::format_f64;

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub name: String,
    pub columns: Vec<String>,
    /// Columns printed as integers.
    pub integer: Vec<bool>,
    pub rows: Vec<Vec<f64>>,
    pub metadata: Vec<(String, String)>,
}

impl ResultTable {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        ResultTable {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            integer: vec![false; columns.len()],
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn integer_columns(mut self, names: &[&str]) -> Self {
        for (flag, col) in self.integer.iter_mut().zip(&self.columns) {
            *flag = names.contains(&col.as_str());
        }
        self
    }

    /// Stamps the standard header: tool version, experiment, table name and
    /// the canonical config with its hash.
    pub fn stamp(&mut self, config: &ExperimentConfig) {
        let mut head = vec![
            ("qent_version".to_string(), VERSION.to_string()),
            ("experiment".to_string(), config.experiment.name().to_string()),
            ("table".to_string(), self.name.clone()),
            ("config_hash".to_string(), config.hash()),
            ("config".to_string(), config.canonical_json()),
        ];
        head.append(&mut self.metadata);
        self.metadata = head;
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width of table {}", self.name);
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn meta_f64(&mut self, key: &str, value: f64) {
        self.meta(key, format_f64(value));
    }

    pub fn get_meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&self.integer)
                .map(|(&x, &int)| if int { format!("{}", x as i64) } else { format_f64(x) })
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn parse(name: &str, text: &str) -> CliResult<Self> {
        let bad = |msg: String| CliError::Config(format!("table {name}: {msg}"));
        let mut metadata = Vec::new();
        let mut lines = text.lines();
        let header = loop {
            let line = lines.next().ok_or_else(|| bad("no header line".into()))?;
            match line.strip_prefix('#') {
                Some(meta) => {
                    let (k, v) = meta
                        .trim_start()
                        .split_once(": ")
                        .ok_or_else(|| bad(format!("malformed metadata line `{line}`")))?;
                    metadata.push((k.to_string(), v.to_string()));
                }
                None => break line,
            }
        };
        let columns: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
        let mut integer = vec![true; columns.len()];
        let mut rows = Vec::new();
        for (n, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != columns.len() {
                return Err(bad(format!("row {} has {} cells, expected {}", n + 1, cells.len(), columns.len())));
            }
            let mut row = Vec::with_capacity(cells.len());
            for (j, cell) in cells.iter().enumerate() {
                integer[j] &= cell.parse::<i64>().is_ok();
                row.push(cell.parse::<f64>().map_err(|e| bad(format!("row {}: `{cell}`: {e}", n + 1)))?);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            integer = vec![false; columns.len()];
        }
        let table_name = metadata
            .iter()
            .find(|(k, _)| k == "table")
            .map_or(name.to_string(), |(_, v)| v.clone());
        Ok(ResultTable {
            name: table_name,
            columns,
            integer,
            rows,
            metadata,
        })
    }

    /// The config embedded by [`ResultTable::stamp`].
    pub fn embedded_config(&self) -> CliResult<ExperimentConfig> {
        let json = self
            .get_meta("config")
            .ok_or_else(|| CliError::Config(format!("table {} has no embedded config", self.name)))?;
        ExperimentConfig::from_json(json)
    }
}

/// Slope, intercept and correlation coefficient of an ordinary least-squares
/// line through `(x, y)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx, sxy / (sxx * syy).sqrt())
}

/// Root-mean-square residual of the least-squares line.
pub fn fit_residual(x: &[f64], y: &[f64]) -> f64 {
    let (slope, intercept, _) = linear_fit(x, y);
    let ss: f64 = x.iter().zip(y).map(|(a, b)| (b - slope * a - intercept).powi(2)).sum();
    (ss / x.len() as f64).sqrt()
}
