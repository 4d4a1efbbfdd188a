//! Document ingestion and persistence.
//!
//! Text files are decoded as strict UTF-8 (an invalid byte is an error, not
//! a replacement character), a leading byte-order mark is dropped, and line
//! endings are normalized to LF. Feature vectors persist in a line-oriented
//! tab-separated store format with a one-line header.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::ngram::{build_ngrams, FeatureVector};
use crate::preprocess::{preprocess, PipelineConfig, StopWordList, TokenStream};

/// First line of a vector store file.
pub const VECTOR_STORE_HEADER: &str = "igbotext-vectors 1";

/// A decoded UTF-8 text with identity and source metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    /// Stable identifier, unique within a corpus. Defaults to the file stem.
    pub doc_id: String,
    pub source_path: PathBuf,
    /// Decoded text: BOM-free, LF line endings.
    pub text: String,
    pub byte_length: usize,
    pub char_length: usize,
}

impl RawDocument {
    /// Wraps an in-memory string as a document (no backing file).
    pub fn from_text(doc_id: &str, text: &str) -> Self {
        let text = normalize_line_endings(text);
        RawDocument {
            doc_id: doc_id.to_string(),
            source_path: PathBuf::new(),
            byte_length: text.len(),
            char_length: text.chars().count(),
            text,
        }
    }

    /// Runs the preprocessing pipeline on this document's text, stamping
    /// the stream with the document id.
    pub fn preprocess(&self, config: &PipelineConfig, stopwords: &StopWordList) -> TokenStream {
        preprocess(&self.text, config, stopwords).with_doc_id(&self.doc_id)
    }

    /// Preprocesses and counts n-grams in one step.
    pub fn vector(
        &self,
        n: usize,
        config: &PipelineConfig,
        stopwords: &StopWordList,
    ) -> Result<FeatureVector> {
        build_ngrams(&self.preprocess(config, stopwords), n)
    }
}

fn normalize_line_endings(text: &str) -> String {
    if !text.contains('\r') {
        return text.to_string();
    }
    text.replace("\r\n", "\n").replace('\r', "\n")
}

/// Reads and strictly decodes one UTF-8 text file.
pub fn decode_document(path: &Path) -> Result<RawDocument> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        offset: e.valid_up_to(),
    })?;
    let text = text.strip_prefix('\u{FEFF}').unwrap_or(text);
    let text = normalize_line_endings(text);
    let doc_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(RawDocument {
        doc_id,
        source_path: path.to_path_buf(),
        byte_length: text.len(),
        char_length: text.chars().count(),
        text,
    })
}

/// Writes the document's text back out as UTF-8. `decode_document` of the
/// written file returns the same text.
pub fn encode_document(doc: &RawDocument, path: &Path) -> Result<()> {
    fs::write(path, doc.text.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// What to do when a corpus file fails to decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecodePolicy {
    /// Stop at the first bad file.
    #[default]
    FailFast,
    /// Skip bad files, collecting them on the corpus.
    Skip,
}

/// Options for [`load_corpus`].
#[derive(Debug, Clone)]
pub struct CorpusOptions {
    /// File-name pattern; `*` matches any run of characters.
    pub glob: String,
    pub decode_policy: DecodePolicy,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            glob: "*.txt".to_string(),
            decode_policy: DecodePolicy::FailFast,
        }
    }
}

/// A file skipped under [`DecodePolicy::Skip`].
#[derive(Debug, Clone)]
pub struct SkippedFile {
    pub path: PathBuf,
    pub reason: String,
}

/// An ordered document collection plus the pipeline settings used on it.
#[derive(Debug, Clone)]
pub struct Corpus {
    /// Documents in lexicographic path order.
    pub documents: Vec<RawDocument>,
    pub stopwords: StopWordList,
    pub config: PipelineConfig,
    /// Files skipped during loading (empty under fail-fast).
    pub skipped: Vec<SkippedFile>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn document(&self, doc_id: &str) -> Option<&RawDocument> {
        self.documents.iter().find(|d| d.doc_id == doc_id)
    }

    pub fn doc_ids(&self) -> Vec<String> {
        self.documents.iter().map(|d| d.doc_id.clone()).collect()
    }

    /// N-gram vectors for every document, in corpus order.
    pub fn vectors(&self, n: usize) -> Result<Vec<FeatureVector>> {
        self.documents
            .iter()
            .map(|d| d.vector(n, &self.config, &self.stopwords))
            .collect()
    }
}

// `*`-only glob: pattern segments between stars must appear in order.
fn glob_match(pattern: &str, name: &str) -> bool {
    let mut segments = pattern.split('*');
    let first = segments.next().unwrap_or("");
    let Some(mut rest) = name.strip_prefix(first) else {
        return false;
    };
    let mut segments = segments.peekable();
    while let Some(segment) = segments.next() {
        if segments.peek().is_none() {
            return segment.is_empty() || rest.ends_with(segment);
        }
        match rest.find(segment) {
            Some(idx) => rest = &rest[idx + segment.len()..],
            None => return false,
        }
    }
    // No '*' in the pattern: the prefix must have consumed everything.
    rest.is_empty()
}

/// Reads an optional `manifest.tsv` (`doc_id<TAB>filename` per line) that
/// overrides default file-stem ids. Filenames are relative to the corpus
/// directory.
fn read_manifest(dir: &Path) -> Result<BTreeMap<String, String>> {
    let path = dir.join("manifest.tsv");
    if !path.exists() {
        return Ok(BTreeMap::new());
    }
    let text = fs::read_to_string(&path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (doc_id, filename) = line.split_once('\t').ok_or_else(|| Error::Parse {
            path: path.clone(),
            line: idx + 1,
            message: format!("expected `doc_id<TAB>filename`, got {line:?}"),
        })?;
        map.insert(filename.to_string(), doc_id.to_string());
    }
    Ok(map)
}

/// Loads every file under `dir` (recursively) whose name matches the glob,
/// in lexicographic relative-path order. Document ids default to file stems;
/// a `manifest.tsv` in `dir` may override them. Duplicate ids are an error.
pub fn load_corpus(dir: &Path, config: &PipelineConfig, options: &CorpusOptions) -> Result<Corpus> {
    config.validate()?;
    let stopwords = StopWordList::load(&config.stopwords)?;
    let manifest = read_manifest(dir)?;

    let mut paths: Vec<PathBuf> = Vec::new();
    for entry in WalkDir::new(dir).follow_links(false) {
        let entry = entry.map_err(|e| Error::Io {
            path: e
                .path()
                .map(Path::to_path_buf)
                .unwrap_or_else(|| dir.to_path_buf()),
            source: e
                .into_io_error()
                .unwrap_or_else(|| std::io::Error::other("walk error")),
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let name = entry.file_name().to_string_lossy();
        if glob_match(&options.glob, &name) {
            paths.push(entry.into_path());
        }
    }
    paths.sort_by(|a, b| {
        let ra = a
            .strip_prefix(dir)
            .unwrap_or(a)
            .to_string_lossy()
            .into_owned();
        let rb = b
            .strip_prefix(dir)
            .unwrap_or(b)
            .to_string_lossy()
            .into_owned();
        ra.cmp(&rb)
    });

    let mut documents = Vec::new();
    let mut skipped = Vec::new();
    let mut seen_ids = BTreeSet::new();
    for path in paths {
        let mut doc = match decode_document(&path) {
            Ok(doc) => doc,
            Err(err) => match options.decode_policy {
                DecodePolicy::FailFast => return Err(err),
                DecodePolicy::Skip => {
                    skipped.push(SkippedFile {
                        path,
                        reason: err.to_string(),
                    });
                    continue;
                }
            },
        };
        let relative = path
            .strip_prefix(dir)
            .unwrap_or(&path)
            .to_string_lossy()
            .replace(std::path::MAIN_SEPARATOR, "/");
        if let Some(id) = manifest.get(&relative) {
            doc.doc_id = id.clone();
        }
        if !seen_ids.insert(doc.doc_id.clone()) {
            return Err(Error::DuplicateDocId { id: doc.doc_id });
        }
        documents.push(doc);
    }

    Ok(Corpus {
        documents,
        stopwords,
        config: config.clone(),
        skipped,
    })
}

/// Writes vectors in the store format:
///
/// ```text
/// igbotext-vectors 1
/// doc<TAB>doc_id<TAB>n<TAB>feature_count
/// feature<TAB>frequency
/// ```
pub fn write_vectors<W: Write>(vectors: &[FeatureVector], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{VECTOR_STORE_HEADER}")?;
    for v in vectors {
        writeln!(out, "doc\t{}\t{}\t{}", v.doc_id, v.n, v.counts.len())?;
        for (feature, count) in &v.counts {
            writeln!(out, "{feature}\t{count}")?;
        }
    }
    Ok(())
}

pub fn save_vectors(vectors: &[FeatureVector], path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    write_vectors(vectors, &mut writer)
        .and_then(|()| writer.flush())
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
}

/// Parses the store format back into vectors. `origin` names the source in
/// errors.
pub fn read_vectors<R: Read>(reader: R, origin: &Path) -> Result<Vec<FeatureVector>> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut lines = BufReader::new(reader).lines().enumerate();
    let mut line_no = 0usize;
    let next_line = |lines: &mut dyn Iterator<Item = (usize, std::io::Result<String>)>,
                     line_no: &mut usize|
     -> Result<Option<String>> {
        match lines.next() {
            None => Ok(None),
            Some((idx, line)) => {
                *line_no = idx + 1;
                line.map(Some).map_err(|source| Error::Io {
                    path: origin.to_path_buf(),
                    source,
                })
            }
        }
    };

    let header = next_line(&mut lines, &mut line_no)?
        .ok_or_else(|| parse_err(1, "empty file: missing header".to_string()))?;
    if header != VECTOR_STORE_HEADER {
        return Err(parse_err(
            1,
            format!("bad header {header:?}; expected {VECTOR_STORE_HEADER:?}"),
        ));
    }

    let mut vectors = Vec::new();
    while let Some(line) = next_line(&mut lines, &mut line_no)? {
        let mut fields = line.split('\t');
        if fields.next() != Some("doc") {
            return Err(parse_err(
                line_no,
                format!("expected doc record, got {line:?}"),
            ));
        }
        let doc_id = fields
            .next()
            .ok_or_else(|| parse_err(line_no, "doc record missing id".to_string()))?
            .to_string();
        let n: usize = fields
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| parse_err(line_no, "doc record has invalid n".to_string()))?;
        let expected: usize = fields.next().and_then(|f| f.parse().ok()).ok_or_else(|| {
            parse_err(line_no, "doc record has invalid feature count".to_string())
        })?;
        if fields.next().is_some() {
            return Err(parse_err(
                line_no,
                "doc record has extra fields".to_string(),
            ));
        }

        let mut counts = BTreeMap::new();
        for _ in 0..expected {
            let feature_line = next_line(&mut lines, &mut line_no)?.ok_or_else(|| {
                parse_err(
                    line_no + 1,
                    format!("unexpected end of file: document {doc_id:?} is truncated"),
                )
            })?;
            let (feature, count) = feature_line.rsplit_once('\t').ok_or_else(|| {
                parse_err(
                    line_no,
                    format!("expected feature<TAB>count, got {feature_line:?}"),
                )
            })?;
            let count: u64 = count
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid frequency {count:?}")))?;
            match counts.entry(feature.to_string()) {
                Entry::Occupied(_) => {
                    return Err(parse_err(line_no, format!("duplicate feature {feature:?}")))
                }
                Entry::Vacant(slot) => {
                    slot.insert(count);
                }
            }
        }
        let vector = FeatureVector::from_counts(&doc_id, n, counts)
            .map_err(|e| parse_err(line_no, e.to_string()))?;
        vectors.push(vector);
    }
    Ok(vectors)
}

pub fn load_vectors(path: &Path) -> Result<Vec<FeatureVector>> {
    let file = fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_vectors(file, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_ascii_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("abc.txt");
        fs::write(&path, "abc").unwrap();
        let doc = decode_document(&path).unwrap();
        assert_eq!(doc.text, "abc");
        assert_eq!(doc.char_length, 3);
        assert_eq!(doc.byte_length, 3);
        assert_eq!(doc.doc_id, "abc");
    }

    #[test]
    fn decode_multibyte_scalar() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("o.txt");
        fs::write(&path, [0xE1, 0xBB, 0x8D]).unwrap();
        let doc = decode_document(&path).unwrap();
        assert_eq!(doc.text, "\u{1ECD}");
        assert_eq!(doc.char_length, 1);
        assert_eq!(doc.byte_length, 3);
    }

    #[test]
    fn decode_rejects_invalid_byte_with_offset() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        fs::write(&path, [b'o', b'k', 0xFF, b'x']).unwrap();
        match decode_document(&path).unwrap_err() {
            Error::Decode { offset, .. } => assert_eq!(offset, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn decode_strips_bom_and_normalizes_line_endings() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bom.txt");
        fs::write(&path, b"\xEF\xBB\xBFline one\r\nline two\rthree").unwrap();
        let doc = decode_document(&path).unwrap();
        assert_eq!(doc.text, "line one\nline two\nthree");
    }

    #[test]
    fn encode_decode_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("round.txt");
        let doc = RawDocument::from_text("round", "kpaacharu a\u{1E45}a \u{1EE5}l\u{1ECD}\n");
        encode_document(&doc, &path).unwrap();
        let back = decode_document(&path).unwrap();
        assert_eq!(back.text, doc.text);
        assert_eq!(back.byte_length, doc.byte_length);
    }

    #[test]
    fn encode_empty_document_is_zero_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.txt");
        encode_document(&RawDocument::from_text("empty", ""), &path).unwrap();
        assert_eq!(fs::metadata(&path).unwrap().len(), 0);
    }

    #[test]
    fn load_corpus_from_empty_dir() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = load_corpus(
            dir.path(),
            &PipelineConfig::default(),
            &CorpusOptions::default(),
        )
        .unwrap();
        assert!(corpus.is_empty());
    }

    #[test]
    fn load_corpus_orders_by_filename() {
        let dir = tempfile::tempdir().unwrap();
        for name in ["c.txt", "a.txt", "b.txt", "notes.md"] {
            fs::write(dir.path().join(name), "oke anya").unwrap();
        }
        let corpus = load_corpus(
            dir.path(),
            &PipelineConfig::default(),
            &CorpusOptions::default(),
        )
        .unwrap();
        assert_eq!(corpus.doc_ids(), ["a", "b", "c"]);
    }

    #[test]
    fn load_corpus_takes_every_matching_file() {
        let dir = tempfile::tempdir().unwrap();
        for i in (0..11).rev() {
            fs::write(dir.path().join(format!("text{i:02}.txt")), "oke anya").unwrap();
        }
        let corpus = load_corpus(
            dir.path(),
            &PipelineConfig::default(),
            &CorpusOptions::default(),
        )
        .unwrap();
        assert_eq!(corpus.len(), 11);
        let ids = corpus.doc_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn load_corpus_rejects_duplicate_stems_in_nested_dirs() {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir(dir.path().join("x")).unwrap();
        fs::create_dir(dir.path().join("y")).unwrap();
        fs::write(dir.path().join("x/doc1.txt"), "oke").unwrap();
        fs::write(dir.path().join("y/doc1.txt"), "anya").unwrap();
        let err = load_corpus(
            dir.path(),
            &PipelineConfig::default(),
            &CorpusOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateDocId { id } if id == "doc1"));
    }

    #[test]
    fn load_corpus_skip_policy_collects_bad_files() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("good.txt"), "oke anya").unwrap();
        fs::write(dir.path().join("bad.txt"), [0xFFu8]).unwrap();
        let options = CorpusOptions {
            decode_policy: DecodePolicy::Skip,
            ..CorpusOptions::default()
        };
        let corpus = load_corpus(dir.path(), &PipelineConfig::default(), &options).unwrap();
        assert_eq!(corpus.doc_ids(), ["good"]);
        assert_eq!(corpus.skipped.len(), 1);
        assert!(corpus.skipped[0].reason.contains("byte offset 0"));
    }

    #[test]
    fn load_corpus_fail_fast_propagates_decode_error() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("bad.txt"), [0xFFu8]).unwrap();
        let err = load_corpus(
            dir.path(),
            &PipelineConfig::default(),
            &CorpusOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Decode { .. }));
    }

    #[test]
    fn manifest_overrides_doc_ids() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.txt"), "oke").unwrap();
        fs::write(dir.path().join("b.txt"), "anya").unwrap();
        fs::write(dir.path().join("manifest.tsv"), "Igbo Text1\ta.txt\n").unwrap();
        let corpus = load_corpus(
            dir.path(),
            &PipelineConfig::default(),
            &CorpusOptions::default(),
        )
        .unwrap();
        assert_eq!(corpus.doc_ids(), ["Igbo Text1", "b"]);
    }

    #[test]
    fn glob_matching() {
        assert!(glob_match("*.txt", "a.txt"));
        assert!(!glob_match("*.txt", "a.txt.bak"));
        assert!(!glob_match("*.txt", "a.md"));
        assert!(glob_match("doc*", "doc42"));
        assert!(glob_match("a*b*c", "aXbYc"));
        assert!(!glob_match("a*b*c", "aXcYb"));
        assert!(glob_match("exact.txt", "exact.txt"));
        assert!(!glob_match("exact.txt", "inexact.txt"));
    }

    fn sample_vectors() -> Vec<FeatureVector> {
        vec![
            FeatureVector::from_pairs("doc a", 1, [("oke", 2), ("anya", 1)]).unwrap(),
            FeatureVector::from_pairs("doc b", 2, [("oke anya", 3)]).unwrap(),
            FeatureVector::from_pairs("empty", 1, []).unwrap(),
        ]
    }

    #[test]
    fn vector_store_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vectors.tsv");
        let vectors = sample_vectors();
        save_vectors(&vectors, &path).unwrap();
        let back = load_vectors(&path).unwrap();
        assert_eq!(back, vectors);
    }

    #[test]
    fn vector_store_empty_set_is_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vectors.tsv");
        save_vectors(&[], &path).unwrap();
        let contents = fs::read_to_string(&path).unwrap();
        assert_eq!(contents, format!("{VECTOR_STORE_HEADER}\n"));
        assert!(load_vectors(&path).unwrap().is_empty());
    }

    #[test]
    fn vector_store_truncated_file_errors_at_final_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vectors.tsv");
        fs::write(
            &path,
            format!("{VECTOR_STORE_HEADER}\ndoc\td\t1\t2\noke\t2\n"),
        )
        .unwrap();
        match load_vectors(&path).unwrap_err() {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 4);
                assert!(message.contains("truncated"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn vector_store_malformed_record_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vectors.tsv");
        fs::write(
            &path,
            format!("{VECTOR_STORE_HEADER}\ndoc\td\t1\t1\noke two\n"),
        )
        .unwrap();
        match load_vectors(&path).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn vector_store_rejects_bad_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vectors.tsv");
        fs::write(&path, "not-a-store\n").unwrap();
        match load_vectors(&path).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn corpus_vectors_in_document_order() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.txt"), "kpaacharu anya kpaacharu").unwrap();
        fs::write(dir.path().join("b.txt"), "projekto").unwrap();
        let corpus = load_corpus(
            dir.path(),
            &PipelineConfig::default(),
            &CorpusOptions::default(),
        )
        .unwrap();
        let vectors = corpus.vectors(1).unwrap();
        assert_eq!(vectors.len(), 2);
        assert_eq!(vectors[0].doc_id, "a");
        assert_eq!(vectors[0].get("kpaacharu"), 2);
        assert_eq!(vectors[1].get("projekto"), 1);
    }
}
