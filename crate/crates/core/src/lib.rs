//! Igbo text analysis: preprocessing, word n-gram vectors, and document
//! similarity.
//!
//! The crate covers the full path from raw UTF-8 files to comparative
//! similarity reports:
//!
//! * [`corpus`] — strict UTF-8 ingestion, document identity, and a
//!   tab-separated vector store.
//! * [`preprocess`] — Igbo-aware normalization, tokenization, and stop-word
//!   filtering. Tone marks (combining grave/acute) are stripped; the dotted
//!   letters ọ, ụ, ị, ṅ are alphabet members and survive.
//! * [`ngram`] — sliding-window n-gram frequency vectors (unigram, bigram,
//!   or any order).
//! * [`metrics`] — euclidean distance plus cosine, jaccard (Tanimoto), and
//!   dice similarity over sparse count vectors.
//! * [`analysis`] — pairwise matrices, row averages, nearest-document
//!   lookups, n-gram order comparison, and CSV/JSON export.
//!
//! The `igbotext` binary exposes the same pipeline as batch subcommands.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod metrics;
pub mod ngram;
pub mod preprocess;

pub use analysis::{
    build_matrix, compare_orders, nearest_document, row_average, ComparisonReport, DistanceMatrix,
    ExportFormat,
};
pub use corpus::{
    decode_document, encode_document, load_corpus, load_vectors, save_vectors, Corpus,
    CorpusOptions, DecodePolicy, RawDocument,
};
pub use error::{Error, Result};
pub use metrics::{
    cosine_similarity, dice_similarity, dot, euclidean_distance, jaccard_similarity,
    Interpretation, MetricKind, MetricValue,
};
pub use ngram::{build_ngrams, vocabulary_union, FeatureVector};
pub use preprocess::{
    normalize, preprocess, remove_stopwords, tokenize, PipelineConfig, StopWordList,
    StopwordSource, TokenStream,
};
