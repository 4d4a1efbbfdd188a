//! Corpus-level comparative analysis: pairwise metric matrices, per-row
//! averages, nearest-document lookups, and n-gram order comparison, with
//! CSV and JSON export.
//!
//! Values are kept at full precision internally; rounding happens only at
//! export time.

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, RawDocument};
use crate::error::{Error, Result};
use crate::metrics::{Interpretation, MetricKind};
use crate::ngram::FeatureVector;
use crate::preprocess::{PipelineConfig, StopWordList};

/// Pairwise metric values between row documents and column documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    pub metric: MetricKind,
    pub n: usize,
    pub row_ids: Vec<String>,
    pub col_ids: Vec<String>,
    /// `values[i][j]` is row `i` against column `j`.
    pub values: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    /// Assembles a matrix from explicit values, checking dimensions and
    /// non-negativity.
    pub fn from_values(
        metric: MetricKind,
        n: usize,
        row_ids: Vec<String>,
        col_ids: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidOrder);
        }
        if values.len() != row_ids.len() {
            return Err(Error::Config(format!(
                "matrix has {} value rows for {} row ids",
                values.len(),
                row_ids.len()
            )));
        }
        for (row_id, row) in row_ids.iter().zip(&values) {
            if row.len() != col_ids.len() {
                return Err(Error::Config(format!(
                    "row {row_id:?} has {} values for {} column ids",
                    row.len(),
                    col_ids.len()
                )));
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(Error::Config(format!(
                    "row {row_id:?} contains invalid value {bad}"
                )));
            }
        }
        Ok(DistanceMatrix {
            metric,
            n,
            row_ids,
            col_ids,
            values,
        })
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row][col]
    }

    pub fn row_index(&self, row_id: &str) -> Result<usize> {
        self.row_ids
            .iter()
            .position(|id| id == row_id)
            .ok_or_else(|| Error::UnknownDoc(row_id.to_string()))
    }

    pub fn row(&self, row_id: &str) -> Result<&[f64]> {
        Ok(&self.values[self.row_index(row_id)?])
    }
}

/// Computes `metric` between every row document and every column document,
/// where each document is preprocessed and counted at order `n`.
pub fn build_matrix(
    rows: &[&RawDocument],
    cols: &[&RawDocument],
    n: usize,
    metric: MetricKind,
    config: &PipelineConfig,
    stopwords: &StopWordList,
) -> Result<DistanceMatrix> {
    if rows.is_empty() || cols.is_empty() {
        return Err(Error::EmptyInput(
            "matrix needs at least one row document and one column document".to_string(),
        ));
    }
    let row_vectors: Vec<FeatureVector> = rows
        .iter()
        .map(|d| d.vector(n, config, stopwords))
        .collect::<Result<_>>()?;
    let col_vectors: Vec<FeatureVector> = cols
        .iter()
        .map(|d| d.vector(n, config, stopwords))
        .collect::<Result<_>>()?;

    let mut values = Vec::with_capacity(rows.len());
    for rv in &row_vectors {
        let mut row = Vec::with_capacity(cols.len());
        for cv in &col_vectors {
            row.push(metric.compute(rv, cv)?.value);
        }
        values.push(row);
    }
    DistanceMatrix::from_values(
        metric,
        n,
        rows.iter().map(|d| d.doc_id.clone()).collect(),
        cols.iter().map(|d| d.doc_id.clone()).collect(),
        values,
    )
}

impl Corpus {
    /// All-against-all matrix over this corpus.
    pub fn distance_matrix(&self, n: usize, metric: MetricKind) -> Result<DistanceMatrix> {
        let docs: Vec<&RawDocument> = self.documents.iter().collect();
        build_matrix(&docs, &docs, n, metric, &self.config, &self.stopwords)
    }
}

/// Arithmetic mean of one row.
pub fn row_average(matrix: &DistanceMatrix, row_id: &str) -> Result<f64> {
    let row = matrix.row(row_id)?;
    if row.is_empty() {
        return Err(Error::EmptyInput(format!("row {row_id:?} has no columns")));
    }
    Ok(row.iter().sum::<f64>() / row.len() as f64)
}

/// The winning column for one row: argmin for distance metrics, argmax for
/// similarity metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Nearest {
    pub col_id: String,
    pub value: f64,
    /// True when another column ties the winning value; the first column
    /// in column order is reported.
    pub tie: bool,
}

/// Finds the most similar column document for `row_id`. With
/// `exclude_self`, a column whose id equals the row id is skipped.
pub fn nearest_document(
    matrix: &DistanceMatrix,
    row_id: &str,
    exclude_self: bool,
) -> Result<Nearest> {
    let row = matrix.row(row_id)?;
    let better = |candidate: f64, best: f64| match matrix.metric.interpretation() {
        Interpretation::Distance => candidate < best,
        Interpretation::Similarity => candidate > best,
    };

    let mut best: Option<(usize, f64)> = None;
    let mut tie = false;
    for (j, &value) in row.iter().enumerate() {
        if exclude_self && matrix.col_ids[j] == row_id {
            continue;
        }
        match best {
            None => best = Some((j, value)),
            Some((_, best_value)) => {
                if better(value, best_value) {
                    best = Some((j, value));
                    tie = false;
                } else if value == best_value {
                    tie = true;
                }
            }
        }
    }
    let (j, value) =
        best.ok_or_else(|| Error::EmptyInput(format!("row {row_id:?} has no candidate columns")))?;
    Ok(Nearest {
        col_id: matrix.col_ids[j].clone(),
        value,
        tie,
    })
}

/// Per-order summary of one report row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderSummary {
    pub n: usize,
    pub average: f64,
    pub nearest: String,
    pub nearest_value: f64,
}

/// One document's comparison across n-gram orders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub doc_id: String,
    pub entries: Vec<OrderSummary>,
    /// The order whose average is most favorable for this row; `None` when
    /// the orders tie.
    pub winner: Option<usize>,
}

/// Row averages, nearest documents, and per-row winners across n-gram
/// orders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub metric: MetricKind,
    pub orders: Vec<usize>,
    pub rows: Vec<ReportRow>,
}

impl ComparisonReport {
    /// Builds the report from one matrix per order. All matrices must share
    /// the metric and the row/column id sets.
    pub fn from_matrices(matrices: &[&DistanceMatrix], exclude_self: bool) -> Result<Self> {
        if matrices.len() < 2 {
            return Err(Error::Config(
                "order comparison needs at least two matrices".to_string(),
            ));
        }
        let first = matrices[0];
        for m in &matrices[1..] {
            if m.metric != first.metric {
                return Err(Error::Config("matrices use different metrics".to_string()));
            }
            if m.row_ids != first.row_ids || m.col_ids != first.col_ids {
                return Err(Error::Config(
                    "matrices cover different document sets".to_string(),
                ));
            }
        }
        let mut orders: Vec<usize> = matrices.iter().map(|m| m.n).collect();
        orders.dedup();
        if orders.len() != matrices.len() {
            return Err(Error::Config("duplicate n-gram order".to_string()));
        }

        let mut rows = Vec::with_capacity(first.row_ids.len());
        for row_id in &first.row_ids {
            let mut entries = Vec::with_capacity(matrices.len());
            for m in matrices {
                let nearest = nearest_document(m, row_id, exclude_self)?;
                entries.push(OrderSummary {
                    n: m.n,
                    average: row_average(m, row_id)?,
                    nearest: nearest.col_id,
                    nearest_value: nearest.value,
                });
            }
            rows.push(ReportRow {
                doc_id: row_id.clone(),
                winner: pick_winner(&entries, first.metric.interpretation()),
                entries,
            });
        }
        Ok(ComparisonReport {
            metric: first.metric,
            orders: matrices.iter().map(|m| m.n).collect(),
            rows,
        })
    }
}

fn pick_winner(entries: &[OrderSummary], interpretation: Interpretation) -> Option<usize> {
    let mut winner = &entries[0];
    let mut tie = false;
    for entry in &entries[1..] {
        let better = match interpretation {
            Interpretation::Distance => entry.average < winner.average,
            Interpretation::Similarity => entry.average > winner.average,
        };
        if better {
            winner = entry;
            tie = false;
        } else if entry.average == winner.average {
            tie = true;
        }
    }
    if tie {
        None
    } else {
        Some(winner.n)
    }
}

/// Builds one all-against-all matrix per order and compares them.
pub fn compare_orders(
    corpus: &Corpus,
    orders: &[usize],
    metric: MetricKind,
    exclude_self: bool,
) -> Result<ComparisonReport> {
    if orders.len() < 2 {
        return Err(Error::Config(
            "order comparison needs at least two n-gram orders".to_string(),
        ));
    }
    let matrices: Vec<DistanceMatrix> = orders
        .iter()
        .map(|&n| corpus.distance_matrix(n, metric))
        .collect::<Result<_>>()?;
    let refs: Vec<&DistanceMatrix> = matrices.iter().collect();
    ComparisonReport::from_matrices(&refs, exclude_self)
}

/// Output encodings for matrices and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::Config(format!(
                "unknown format {other:?}; expected csv or json"
            ))),
        }
    }
}

fn format_value(value: f64, precision: usize) -> String {
    let mut s = String::new();
    write!(s, "{value:.precision$}").expect("formatting to string");
    s
}

/// CSV with a header row of column ids and values rounded to `precision`
/// decimals.
pub fn write_matrix_csv<W: Write>(
    matrix: &DistanceMatrix,
    out: W,
    precision: usize,
) -> std::io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let mut header = vec![String::new()];
    header.extend(matrix.col_ids.iter().cloned());
    writer.write_record(&header).map_err(to_io)?;
    for (row_id, row) in matrix.row_ids.iter().zip(&matrix.values) {
        let mut record = vec![row_id.clone()];
        record.extend(row.iter().map(|&v| format_value(v, precision)));
        writer.write_record(&record).map_err(to_io)?;
    }
    writer.flush()
}

/// Full-precision JSON mirror of the matrix.
pub fn write_matrix_json<W: Write>(matrix: &DistanceMatrix, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, matrix)?;
    out.write_all(b"\n")
}

/// Parses a JSON matrix, re-checking the dimensional invariants.
pub fn read_matrix_json<R: Read>(reader: R) -> Result<DistanceMatrix> {
    let raw: DistanceMatrix = serde_json::from_reader(reader)
        .map_err(|e| Error::Config(format!("invalid matrix json: {e}")))?;
    DistanceMatrix::from_values(raw.metric, raw.n, raw.row_ids, raw.col_ids, raw.values)
}

/// CSV report: one row per document with per-order average and nearest
/// columns plus the winning order (or `tie`).
pub fn write_report_csv<W: Write>(
    report: &ComparisonReport,
    out: W,
    precision: usize,
) -> std::io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let mut header = vec!["doc_id".to_string()];
    for n in &report.orders {
        header.push(format!("avg_n{n}"));
        header.push(format!("nearest_n{n}"));
        header.push(format!("nearest_value_n{n}"));
    }
    header.push("winner".to_string());
    writer.write_record(&header).map_err(to_io)?;
    for row in &report.rows {
        let mut record = vec![row.doc_id.clone()];
        for entry in &row.entries {
            record.push(format_value(entry.average, precision));
            record.push(entry.nearest.clone());
            record.push(format_value(entry.nearest_value, precision));
        }
        record.push(match row.winner {
            Some(n) => n.to_string(),
            None => "tie".to_string(),
        });
        writer.write_record(&record).map_err(to_io)?;
    }
    writer.flush()
}

pub fn write_report_json<W: Write>(report: &ComparisonReport, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    out.write_all(b"\n")
}

fn to_io(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("csv error: {other:?}")),
    }
}

/// Writes a matrix to `path` in the chosen format.
pub fn export_matrix(
    matrix: &DistanceMatrix,
    format: ExportFormat,
    path: &Path,
    precision: usize,
) -> Result<()> {
    let mut buffer = Vec::new();
    match format {
        ExportFormat::Csv => write_matrix_csv(matrix, &mut buffer, precision),
        ExportFormat::Json => write_matrix_json(matrix, &mut buffer),
    }
    .and_then(|()| fs::write(path, &buffer))
    .map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a JSON matrix back from `path`.
pub fn import_matrix_json(path: &Path) -> Result<DistanceMatrix> {
    let file = fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_matrix_json(file)
}

/// Writes a report to `path` in the chosen format.
pub fn export_report(
    report: &ComparisonReport,
    format: ExportFormat,
    path: &Path,
    precision: usize,
) -> Result<()> {
    let mut buffer = Vec::new();
    match format {
        ExportFormat::Csv => write_report_csv(report, &mut buffer, precision),
        ExportFormat::Json => write_report_json(report, &mut buffer),
    }
    .and_then(|()| fs::write(path, &buffer))
    .map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
