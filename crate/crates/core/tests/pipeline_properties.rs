//! Property tests for the pipeline and metric invariants.

use std::collections::BTreeMap;

use proptest::prelude::*;

use igbotext::corpus::{decode_document, encode_document, RawDocument};
use igbotext::metrics::{dice_similarity, euclidean_distance, jaccard_similarity, MetricKind};
use igbotext::ngram::{build_ngrams, FeatureVector};
use igbotext::preprocess::{
    normalize, preprocess, remove_stopwords, tokenize, PipelineConfig, Provenance, StopWordList,
    TokenStream,
};

fn igbo_text() -> impl Strategy<Value = String> {
    // Words over the Igbo alphabet with tone marks (composed and combining),
    // joined by realistic separators and punctuation.
    let fragment = prop_oneof![
        Just("oke".to_string()),
        Just("anya".to_string()),
        Just("\u{1EE5}l\u{1ECD}".to_string()),
        Just("ah\u{1EE5}".to_string()),
        Just("a\u{1E45}a".to_string()),
        Just("n'elu".to_string()),
        Just("na-akwunye".to_string()),
        Just("ihe-ngosi".to_string()),
        Just("\u{1EE5}\u{0300}l\u{1ECD}".to_string()),
        Just("\u{00E1}ma".to_string()),
        Just("Oburu".to_string()),
        Just("3km".to_string()),
        Just("\"Jikoo\".".to_string()),
        Just("ntughe,".to_string()),
        Just("(oke)".to_string()),
    ];
    prop::collection::vec(fragment, 0..12).prop_map(|words| words.join(" "))
}

fn any_text() -> impl Strategy<Value = String> {
    prop_oneof![any::<String>(), igbo_text()]
}

fn token_list() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(prop::string::string_regex("[a-z]{1,6}").unwrap(), 0..50)
}

fn stream_of(tokens: Vec<String>) -> TokenStream {
    TokenStream {
        doc_id: String::new(),
        tokens,
        provenance: Provenance::default(),
    }
}

fn arb_vector(n: usize) -> impl Strategy<Value = FeatureVector> {
    prop::collection::btree_map(
        prop::collection::vec(prop::string::string_regex("[a-h][0-9]").unwrap(), n..=n)
            .prop_map(|words| words.join(" ")),
        1..=40u64,
        0..10,
    )
    .prop_map(move |counts| FeatureVector::from_counts("prop", n, counts).unwrap())
}

const SPECIAL_CHARACTERS: &str = ":;?!'(){}+&[]<>/@\"*=^%,.";

proptest! {
    #[test]
    fn normalize_is_idempotent(text in any_text()) {
        let config = PipelineConfig::default();
        let once = normalize(&text, &config);
        prop_assert_eq!(normalize(&once, &config), once);
    }

    #[test]
    fn preprocess_equals_composed_stages(text in any_text()) {
        let config = PipelineConfig::default();
        let stopwords = StopWordList::builtin_default();
        let composed = remove_stopwords(
            tokenize(&normalize(&text, &config), &config),
            &stopwords,
            &config,
        );
        let direct = preprocess(&text, &config, &stopwords);
        prop_assert_eq!(direct.tokens, composed.tokens);
    }

    #[test]
    fn preprocessed_tokens_are_pure(text in any_text()) {
        let config = PipelineConfig::default();
        let stopwords = StopWordList::builtin_default();
        for token in preprocess(&text, &config, &stopwords).iter() {
            for c in token.chars() {
                prop_assert!(!c.is_uppercase(), "uppercase {c:?} in {token:?}");
                prop_assert!(!c.is_ascii_digit(), "digit {c:?} in {token:?}");
                prop_assert!(c != '-' && c != '\'', "separator {c:?} in {token:?}");
                prop_assert!(
                    c != '\u{0300}' && c != '\u{0301}',
                    "tone mark left in {token:?}"
                );
                prop_assert!(
                    !SPECIAL_CHARACTERS.contains(c),
                    "special character {c:?} in {token:?}"
                );
            }
        }
    }

    #[test]
    fn preprocessed_tokens_respect_length_floor(
        text in any_text(),
        min_len in 1..6usize,
    ) {
        let config = PipelineConfig {
            min_token_length: min_len,
            ..PipelineConfig::default()
        };
        let stopwords = StopWordList::builtin_default();
        for token in preprocess(&text, &config, &stopwords).iter() {
            prop_assert!(token.chars().count() >= min_len, "{token:?} under {min_len}");
        }
    }

    #[test]
    fn remove_stopwords_never_grows_the_stream(tokens in token_list()) {
        let config = PipelineConfig::default();
        let stopwords = StopWordList::builtin_default();
        let before = tokens.len();
        let filtered = remove_stopwords(stream_of(tokens), &stopwords, &config);
        prop_assert!(filtered.len() <= before);
    }

    #[test]
    fn bigram_total_is_unigram_total_minus_one(tokens in token_list()) {
        prop_assume!(!tokens.is_empty());
        let stream = stream_of(tokens);
        let unigrams = build_ngrams(&stream, 1).unwrap();
        let bigrams = build_ngrams(&stream, 2).unwrap();
        prop_assert_eq!(bigrams.total_count(), unigrams.total_count() - 1);
    }

    #[test]
    fn unigram_counts_ignore_token_order(tokens in token_list()) {
        let forward = build_ngrams(&stream_of(tokens.clone()), 1).unwrap();
        let mut reversed_tokens = tokens;
        reversed_tokens.reverse();
        let reversed = build_ngrams(&stream_of(reversed_tokens), 1).unwrap();
        prop_assert_eq!(forward.counts, reversed.counts);
    }

    #[test]
    fn ngram_counts_match_index_enumeration(tokens in token_list(), n in 1..5usize) {
        let built = build_ngrams(&stream_of(tokens.clone()), n).unwrap();
        let mut expected: BTreeMap<String, u64> = BTreeMap::new();
        for start in 0..tokens.len() {
            if start + n <= tokens.len() {
                *expected.entry(tokens[start..start + n].join(" ")).or_insert(0) += 1;
            }
        }
        prop_assert_eq!(built.counts, expected);
    }

    #[test]
    fn metrics_are_symmetric_bit_for_bit(a in arb_vector(1), b in arb_vector(1)) {
        for kind in MetricKind::ALL {
            let ab = kind.compute(&a, &b).unwrap().value;
            let ba = kind.compute(&b, &a).unwrap().value;
            prop_assert_eq!(ab.to_bits(), ba.to_bits());
        }
    }

    #[test]
    fn euclidean_is_zero_iff_counts_equal(a in arb_vector(1), b in arb_vector(1)) {
        let d = euclidean_distance(&a, &b).unwrap().value;
        prop_assert!(d >= 0.0);
        prop_assert_eq!(d == 0.0, a.counts == b.counts);
    }

    #[test]
    fn euclidean_satisfies_triangle_inequality(
        a in arb_vector(1),
        b in arb_vector(1),
        c in arb_vector(1),
    ) {
        let ab = euclidean_distance(&a, &b).unwrap().value;
        let bc = euclidean_distance(&b, &c).unwrap().value;
        let ac = euclidean_distance(&a, &c).unwrap().value;
        prop_assert!(ac <= ab + bc + 1e-9);
    }

    #[test]
    fn similarities_stay_in_unit_interval(a in arb_vector(2), b in arb_vector(2)) {
        for kind in [MetricKind::Cosine, MetricKind::Jaccard, MetricKind::Dice] {
            let v = kind.compute(&a, &b).unwrap().value;
            prop_assert!((0.0..=1.0).contains(&v), "{} gave {}", kind, v);
        }
    }

    #[test]
    fn dice_is_determined_by_jaccard(a in arb_vector(1), b in arb_vector(1)) {
        let j = jaccard_similarity(&a, &b).unwrap().value;
        let d = dice_similarity(&a, &b).unwrap().value;
        let from_j = 2.0 * j / (1.0 + j);
        prop_assert!((d - from_j).abs() <= 1e-12 * d.abs().max(from_j.abs()).max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decode_encode_identity(words in prop::collection::vec(
        prop_oneof![
            prop::string::string_regex("[a-z]{1,8}").unwrap(),
            Just("\u{1ECD}k\u{1EE5}".to_string()),
            Just("\u{1E45}a".to_string()),
            Just("\u{1EE5}\u{0300}l\u{1ECD}".to_string()),
            Just("\u{00E0}nya".to_string()),
            Just("\n".to_string()),
        ],
        0..30,
    )) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("doc.txt");
        let doc = RawDocument::from_text("doc", &words.join(" "));
        encode_document(&doc, &path).unwrap();
        let back = decode_document(&path).unwrap();
        prop_assert_eq!(back.text, doc.text);
    }
}

#[test]
fn corpus_load_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("b.txt", "oke anya"),
        ("a.txt", "projekto"),
        ("c.txt", "ulo oke"),
    ] {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    let config = PipelineConfig::default();
    let options = igbotext::corpus::CorpusOptions::default();
    let first = igbotext::corpus::load_corpus(dir.path(), &config, &options).unwrap();
    let second = igbotext::corpus::load_corpus(dir.path(), &config, &options).unwrap();
    assert_eq!(first.doc_ids(), second.doc_ids());
    assert_eq!(first.doc_ids(), ["a", "b", "c"]);
}
