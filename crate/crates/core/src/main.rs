//! Batch CLI over the igbotext pipeline.
//!
//! Exit codes: 0 success, 1 runtime/I-O/decode error, 2 usage error.
//! Stdout carries only data; diagnostics go to stderr.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use igbotext::analysis::{
    compare_orders, export_matrix, export_report, write_matrix_csv, write_matrix_json,
    write_report_csv, write_report_json, ExportFormat,
};
use igbotext::corpus::{
    decode_document, load_corpus, load_vectors, write_vectors, CorpusOptions, VECTOR_STORE_HEADER,
};
use igbotext::error::{Error, Result};
use igbotext::metrics::MetricKind;
use igbotext::ngram::FeatureVector;
use igbotext::preprocess::{PipelineConfig, StopWordList, StopwordSource};

#[derive(Parser)]
#[command(
    name = "igbotext",
    version,
    about = "Igbo text preprocessing, n-gram vectors, and document similarity",
    after_help = "Euclidean distance is the square root of summed squared frequency \
                  differences over the union vocabulary; for frequency pairs (4,2) and \
                  (6,5) that is sqrt(13) = 3.61 at two decimals."
)]
struct Cli {
    /// Pipeline config file (key = value).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Stop-word list file, overriding the config.
    #[arg(long, global = true, value_name = "FILE")]
    stopwords: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the preprocessing pipeline and dump one token per line.
    Preprocess {
        /// Input text file.
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build n-gram frequency vectors for a file or a corpus directory.
    Vectorize {
        /// Input text file or corpus directory.
        input: PathBuf,
        /// N-gram order.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Output encoding: store (tab-separated) or json.
        #[arg(long, default_value = "store")]
        format: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the metric value between two documents.
    Compare {
        /// First document: a text file or a single-document vector store.
        doc_a: PathBuf,
        /// Second document: a text file or a single-document vector store.
        doc_b: PathBuf,
        /// N-gram order used for text inputs.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value = "euclidean")]
        metric: MetricKind,
        /// Decimal places printed.
        #[arg(long, default_value_t = 2)]
        precision: usize,
    },
    /// Pairwise metric matrix over a corpus directory.
    Matrix {
        /// Corpus directory of .txt files.
        dir: PathBuf,
        /// N-gram order.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value = "euclidean")]
        metric: MetricKind,
        /// Output encoding: csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Decimal places in CSV output.
        #[arg(long, default_value_t = 2)]
        precision: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare n-gram orders: per-document averages, nearest documents, and
    /// the winning order.
    Report {
        /// Corpus directory of .txt files.
        dir: PathBuf,
        /// Comma-separated n-gram orders (at least two).
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        n: Vec<usize>,
        #[arg(long, default_value = "euclidean")]
        metric: MetricKind,
        /// Output encoding: csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Decimal places in CSV output.
        #[arg(long, default_value_t = 2)]
        precision: usize,
        /// Skip the self column when picking each row's nearest document.
        #[arg(long)]
        exclude_self: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_usage() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = load_pipeline_config(cli.config.as_deref(), cli.stopwords.as_deref())?;
    match cli.command {
        Command::Preprocess { input, output } => cmd_preprocess(&input, &config, &output),
        Command::Vectorize {
            input,
            n,
            format,
            output,
        } => cmd_vectorize(&input, n, &format, &config, &output),
        Command::Compare {
            doc_a,
            doc_b,
            n,
            metric,
            precision,
        } => cmd_compare(&doc_a, &doc_b, n, metric, precision, &config),
        Command::Matrix {
            dir,
            n,
            metric,
            format,
            precision,
            output,
        } => cmd_matrix(&dir, n, metric, &format, precision, &config, &output),
        Command::Report {
            dir,
            n,
            metric,
            format,
            precision,
            exclude_self,
            output,
        } => cmd_report(
            &dir,
            &n,
            metric,
            &format,
            precision,
            exclude_self,
            &config,
            &output,
        ),
    }
}

fn load_pipeline_config(
    config_path: Option<&Path>,
    stopwords_path: Option<&Path>,
) -> Result<PipelineConfig> {
    let mut config = match config_path {
        Some(path) => PipelineConfig::from_file(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(path) = stopwords_path {
        config.stopwords = StopwordSource::File(path.to_path_buf());
    }
    config.validate()?;
    Ok(config)
}

fn open_output(output: &OutputArgs) -> Result<Box<dyn Write>> {
    match &output.out {
        None => Ok(Box::new(std::io::stdout().lock())),
        Some(path) => {
            let file = File::create(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

fn write_failed(output: &OutputArgs, source: std::io::Error) -> Error {
    Error::Io {
        path: output
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from("<stdout>")),
        source,
    }
}

fn cmd_preprocess(input: &Path, config: &PipelineConfig, output: &OutputArgs) -> Result<()> {
    let stopwords = StopWordList::load(&config.stopwords)?;
    let doc = decode_document(input)?;
    let stream = doc.preprocess(config, &stopwords);
    let mut out = open_output(output)?;
    for token in stream.iter() {
        writeln!(out, "{token}").map_err(|e| write_failed(output, e))?;
    }
    out.flush().map_err(|e| write_failed(output, e))
}

fn cmd_vectorize(
    input: &Path,
    n: usize,
    format: &str,
    config: &PipelineConfig,
    output: &OutputArgs,
) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidOrder);
    }
    let vectors = if input.is_dir() {
        let corpus = load_corpus(input, config, &CorpusOptions::default())?;
        report_skipped(&corpus.skipped);
        corpus.vectors(n)?
    } else {
        let stopwords = StopWordList::load(&config.stopwords)?;
        vec![decode_document(input)?.vector(n, config, &stopwords)?]
    };

    let mut out = open_output(output)?;
    match format {
        "store" => write_vectors(&vectors, &mut out).map_err(|e| write_failed(output, e))?,
        "json" => {
            serde_json::to_writer_pretty(&mut out, &vectors)
                .map_err(|e| write_failed(output, e.into()))?;
            writeln!(out).map_err(|e| write_failed(output, e))?;
        }
        other => {
            return Err(Error::Config(format!(
                "unknown format {other:?}; expected store or json"
            )))
        }
    }
    out.flush().map_err(|e| write_failed(output, e))
}

/// Reads a compare operand: a vector store holding exactly one document, or
/// a text file vectorized at order `n`.
fn compare_operand(path: &Path, n: usize, config: &PipelineConfig) -> Result<FeatureVector> {
    if is_vector_store(path)? {
        let mut vectors = load_vectors(path)?;
        if vectors.len() != 1 {
            return Err(Error::Config(format!(
                "{} holds {} documents; compare needs exactly one",
                path.display(),
                vectors.len()
            )));
        }
        Ok(vectors.remove(0))
    } else {
        let stopwords = StopWordList::load(&config.stopwords)?;
        decode_document(path)?.vector(n, config, &stopwords)
    }
}

fn is_vector_store(path: &Path) -> Result<bool> {
    let mut file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut prefix = vec![0u8; VECTOR_STORE_HEADER.len()];
    match file.read_exact(&mut prefix) {
        Ok(()) => Ok(prefix == VECTOR_STORE_HEADER.as_bytes()),
        Err(_) => Ok(false),
    }
}

fn cmd_compare(
    doc_a: &Path,
    doc_b: &Path,
    n: usize,
    metric: MetricKind,
    precision: usize,
    config: &PipelineConfig,
) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidOrder);
    }
    let a = compare_operand(doc_a, n, config)?;
    let b = compare_operand(doc_b, n, config)?;
    let value = metric.compute(&a, &b)?;
    println!("{:.*}", precision, value.value);
    Ok(())
}

fn parse_format(format: &str) -> Result<ExportFormat> {
    format.parse()
}

fn report_skipped(skipped: &[igbotext::corpus::SkippedFile]) {
    for s in skipped {
        eprintln!("warning: skipped {}: {}", s.path.display(), s.reason);
    }
}

fn cmd_matrix(
    dir: &Path,
    n: usize,
    metric: MetricKind,
    format: &str,
    precision: usize,
    config: &PipelineConfig,
    output: &OutputArgs,
) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidOrder);
    }
    let format = parse_format(format)?;
    let corpus = load_corpus(dir, config, &CorpusOptions::default())?;
    report_skipped(&corpus.skipped);
    if corpus.is_empty() {
        return Err(Error::EmptyInput(format!(
            "no documents found in {}",
            dir.display()
        )));
    }
    let matrix = corpus.distance_matrix(n, metric)?;
    match &output.out {
        Some(path) => export_matrix(&matrix, format, path, precision),
        None => {
            let out = std::io::stdout().lock();
            match format {
                ExportFormat::Csv => write_matrix_csv(&matrix, out, precision),
                ExportFormat::Json => write_matrix_json(&matrix, out),
            }
            .map_err(|e| write_failed(output, e))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_report(
    dir: &Path,
    orders: &[usize],
    metric: MetricKind,
    format: &str,
    precision: usize,
    exclude_self: bool,
    config: &PipelineConfig,
    output: &OutputArgs,
) -> Result<()> {
    if orders.iter().any(|&n| n < 1) {
        return Err(Error::InvalidOrder);
    }
    if orders.len() < 2 {
        return Err(Error::Config(
            "report needs at least two n-gram orders".to_string(),
        ));
    }
    let format = parse_format(format)?;
    let corpus = load_corpus(dir, config, &CorpusOptions::default())?;
    report_skipped(&corpus.skipped);
    if corpus.is_empty() {
        return Err(Error::EmptyInput(format!(
            "no documents found in {}",
            dir.display()
        )));
    }
    let report = compare_orders(&corpus, orders, metric, exclude_self)?;
    match &output.out {
        Some(path) => export_report(&report, format, path, precision),
        None => {
            let out = std::io::stdout().lock();
            match format {
                ExportFormat::Csv => write_report_csv(&report, out, precision),
                ExportFormat::Json => write_report_json(&report, out),
            }
            .map_err(|e| write_failed(output, e))
        }
    }
}
