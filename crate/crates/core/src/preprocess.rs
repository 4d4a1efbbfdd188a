//! Igbo text preprocessing: normalization, tokenization, and stop-word
//! filtering.
//!
//! The pipeline runs three stages in order:
//!
//! 1. [`normalize`] — case-folds, strips tone marks (combining grave/acute),
//!    drops words containing digits or hard special characters, and splits
//!    hyphenated/apostrophized words apart.
//! 2. [`tokenize`] — splits on whitespace, strips trailing sentence
//!    punctuation and surrounding quotes, and splits configured verb-prefix
//!    compounds ("na-akwunye" → "na", "akwunye").
//! 3. [`remove_stopwords`] — drops stop-listed tokens and tokens shorter
//!    than the configured minimum length.
//!
//! [`preprocess`] composes the three. The dotted letters ọ, ụ, ị, and ṅ are
//! members of the Igbo alphabet, not diacritic decorations, and survive
//! normalization by default.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Combining grave accent (low tone).
const COMBINING_GRAVE: char = '\u{0300}';
/// Combining acute accent (high tone).
const COMBINING_ACUTE: char = '\u{0301}';
/// Combining dot above: decomposition of ṅ.
const COMBINING_DOT_ABOVE: char = '\u{0307}';
/// Combining dot below: decomposition of ọ, ụ, ị.
const COMBINING_DOT_BELOW: char = '\u{0323}';

const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords_default.txt");

const DEFAULT_SPLIT_PREFIXES: [&str; 8] =
    ["ga-", "aga-", "na-", "ana-", "oga-", "iga-", "ona-", "ina-"];

/// Where a pipeline's stop-word list comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StopwordSource {
    /// The list embedded in this crate.
    BuiltinDefault,
    /// A user-supplied list file (one word per line).
    File(PathBuf),
}

impl StopwordSource {
    pub fn id(&self) -> String {
        match self {
            StopwordSource::BuiltinDefault => "builtin-default".to_string(),
            StopwordSource::File(path) => path.display().to_string(),
        }
    }
}

/// Settings for the preprocessing pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Minimum surviving token length, in characters (scalar values).
    pub min_token_length: usize,
    /// Strip combining grave/acute accents during normalization.
    pub strip_tone_marks: bool,
    /// Keep ọ/ụ/ị/ṅ intact. When false they fold to o/u/i/n.
    pub preserve_underdots: bool,
    /// Stop-word list used by the filtering stage.
    pub stopwords: StopwordSource,
    /// Affixes split off the front of a token; each entry ends with '-'.
    pub split_prefixes: Vec<String>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            min_token_length: 3,
            strip_tone_marks: true,
            preserve_underdots: true,
            stopwords: StopwordSource::BuiltinDefault,
            split_prefixes: DEFAULT_SPLIT_PREFIXES
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_token_length < 1 {
            return Err(Error::Config(
                "min_token_length must be at least 1".to_string(),
            ));
        }
        for prefix in &self.split_prefixes {
            if prefix.is_empty() || !prefix.ends_with('-') {
                return Err(Error::Config(format!(
                    "split prefix {prefix:?} must be non-empty and end with '-'"
                )));
            }
        }
        Ok(())
    }

    /// Loads a `key = value` config file. Blank lines and `#` comments are
    /// ignored. Unset keys keep their defaults.
    ///
    /// Recognized keys: `min_token_length`, `strip_tone_marks`,
    /// `preserve_underdots`, `stopwords` (a path, or `builtin-default`),
    /// `split_prefixes` (comma-separated).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut config = PipelineConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected `key = value`, got {line:?}")))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "min_token_length" => {
                    config.min_token_length = value
                        .parse()
                        .map_err(|_| parse_err(format!("invalid integer {value:?}")))?;
                }
                "strip_tone_marks" => {
                    config.strip_tone_marks = parse_bool(value).ok_or_else(|| {
                        parse_err(format!("expected true or false, got {value:?}"))
                    })?;
                }
                "preserve_underdots" => {
                    config.preserve_underdots = parse_bool(value).ok_or_else(|| {
                        parse_err(format!("expected true or false, got {value:?}"))
                    })?;
                }
                "stopwords" => {
                    config.stopwords = if value == "builtin-default" {
                        StopwordSource::BuiltinDefault
                    } else {
                        StopwordSource::File(PathBuf::from(value))
                    };
                }
                "split_prefixes" => {
                    config.split_prefixes = value
                        .split(',')
                        .map(|p| p.trim().to_string())
                        .filter(|p| !p.is_empty())
                        .collect();
                }
                _ => return Err(parse_err(format!("unknown key {key:?}"))),
            }
        }
        config.validate()?;
        Ok(config)
    }
}

fn parse_bool(value: &str) -> Option<bool> {
    match value {
        "true" => Some(true),
        "false" => Some(false),
        _ => None,
    }
}

/// A case-folded set of stop words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopWordList {
    words: BTreeSet<String>,
    source: String,
}

impl StopWordList {
    /// The list shipped with this crate.
    pub fn builtin_default() -> Self {
        Self::parse(DEFAULT_STOPWORDS, "builtin-default".to_string())
    }

    /// Loads a list file: one word per line, `#` comments and blank lines
    /// ignored, entries case-folded.
    pub fn from_file(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Err(Error::StopwordsMissing {
                id: path.display().to_string(),
            });
        }
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self::parse(&text, path.display().to_string()))
    }

    /// Resolves the list a config refers to.
    pub fn load(source: &StopwordSource) -> Result<Self> {
        match source {
            StopwordSource::BuiltinDefault => Ok(Self::builtin_default()),
            StopwordSource::File(path) => Self::from_file(path),
        }
    }

    pub fn from_words<I, S>(words: I, source: &str) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words = words
            .into_iter()
            .map(|w| fold_entry(w.as_ref()))
            .filter(|w| !w.is_empty())
            .collect();
        StopWordList {
            words,
            source: source.to_string(),
        }
    }

    pub fn empty() -> Self {
        StopWordList {
            words: BTreeSet::new(),
            source: "empty".to_string(),
        }
    }

    fn parse(text: &str, source: String) -> Self {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(fold_entry)
            .collect();
        StopWordList { words, source }
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

// Entries are case-folded and NFC-normalized so they compare equal to
// pipeline output regardless of how the list file spelled them.
fn fold_entry(word: &str) -> String {
    word.to_lowercase().nfc().collect()
}

/// Which pipeline stages produced a [`TokenStream`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Provenance {
    pub normalized: bool,
    pub tokenized: bool,
    pub filtered: bool,
}

/// An ordered sequence of tokens from one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenStream {
    pub doc_id: String,
    pub tokens: Vec<String>,
    pub provenance: Provenance,
}

impl TokenStream {
    pub fn with_doc_id(mut self, doc_id: &str) -> Self {
        self.doc_id = doc_id.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }
}

fn is_sentence_punct(c: char) -> bool {
    matches!(c, ',' | ':' | ';' | '!' | '?' | '.')
}

fn is_quote(c: char) -> bool {
    matches!(
        c,
        '"' | '\'' | '\u{2018}' | '\u{2019}' | '\u{201C}' | '\u{201D}'
    )
}

fn is_word_separator(c: char) -> bool {
    // Hyphenated and apostrophized compounds split into their parts.
    matches!(c, '-' | '\'' | '\u{2019}')
}

/// Strips trailing sentence punctuation and surrounding quote marks,
/// repeating until neither applies. Interior punctuation is untouched.
fn strip_soft_punctuation(token: &str) -> &str {
    let mut t = token;
    loop {
        if let Some(last) = t.chars().next_back() {
            if is_sentence_punct(last) || is_quote(last) {
                t = &t[..t.len() - last.len_utf8()];
                continue;
            }
        }
        if let Some(first) = t.chars().next() {
            if is_quote(first) {
                t = &t[first.len_utf8()..];
                continue;
            }
        }
        return t;
    }
}

fn stripped_mark(c: char, config: &PipelineConfig) -> bool {
    match c {
        COMBINING_GRAVE | COMBINING_ACUTE => config.strip_tone_marks,
        COMBINING_DOT_BELOW | COMBINING_DOT_ABOVE => !config.preserve_underdots,
        _ => false,
    }
}

/// Normalizes raw text: lower-cases, strips tone marks via canonical
/// decomposition (remove U+0300/U+0301, recompose), drops words containing
/// digits, splits words at hyphens and apostrophes, and drops words that
/// still contain non-letter characters other than trailing sentence
/// punctuation or surrounding quotes (those are left for [`tokenize`]).
///
/// The result is NFC, lower-case, and single-space separated. Empty input
/// yields empty output, and the function is idempotent.
pub fn normalize(text: &str, config: &PipelineConfig) -> String {
    let folded: String = text
        .to_lowercase()
        .nfd()
        .filter(|&c| !stripped_mark(c, config))
        .nfc()
        .collect();

    let mut words: Vec<&str> = Vec::new();
    for word in folded.split_whitespace() {
        if word.chars().any(|c| c.is_ascii_digit()) {
            continue;
        }
        for part in word.split(is_word_separator) {
            if part.is_empty() {
                continue;
            }
            let core = strip_soft_punctuation(part);
            if !core.is_empty() && core.chars().all(char::is_alphabetic) {
                words.push(part);
            }
        }
    }
    words.join(" ")
}

/// Splits normalized text into tokens: whitespace segmentation, trailing
/// sentence punctuation (`, : ; ! ? .`) stripped, surrounding quotes
/// stripped, and tokens starting with a configured split prefix divided
/// into prefix (hyphen dropped) and remainder. Never emits empty tokens.
pub fn tokenize(text: &str, config: &PipelineConfig) -> TokenStream {
    let mut tokens = Vec::new();
    for raw in text.split_whitespace() {
        push_token(raw, config, &mut tokens);
    }
    TokenStream {
        doc_id: String::new(),
        tokens,
        provenance: Provenance {
            normalized: false,
            tokenized: true,
            filtered: false,
        },
    }
}

fn push_token(raw: &str, config: &PipelineConfig, out: &mut Vec<String>) {
    let token = strip_soft_punctuation(raw);
    if token.is_empty() {
        return;
    }
    for prefix in &config.split_prefixes {
        if let Some(rest) = token.strip_prefix(prefix.as_str()) {
            let head = &prefix[..prefix.len() - 1];
            if !head.is_empty() {
                out.push(head.to_string());
            }
            if !rest.is_empty() {
                push_token(rest, config, out);
            }
            return;
        }
    }
    out.push(token.to_string());
}

/// Drops tokens that are stop-listed or shorter than
/// `config.min_token_length` characters. Survivor order is preserved.
pub fn remove_stopwords(
    stream: TokenStream,
    list: &StopWordList,
    config: &PipelineConfig,
) -> TokenStream {
    let tokens = stream
        .tokens
        .into_iter()
        .filter(|t| !list.contains(t) && t.chars().count() >= config.min_token_length)
        .collect();
    TokenStream {
        doc_id: stream.doc_id,
        tokens,
        provenance: Provenance {
            filtered: true,
            ..stream.provenance
        },
    }
}

/// Runs the full pipeline: `remove_stopwords(tokenize(normalize(text)))`.
pub fn preprocess(text: &str, config: &PipelineConfig, list: &StopWordList) -> TokenStream {
    let normalized = normalize(text, config);
    let mut stream = tokenize(&normalized, config);
    stream.provenance.normalized = true;
    remove_stopwords(stream, list, config)
}
