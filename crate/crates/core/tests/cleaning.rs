use proptest::prelude::*;
use reaction_lens::{clean_message, CleanConfig, Stopwords};
use serde::Deserialize;

#[derive(Deserialize)]
struct Golden {
    raw: String,
    #[serde(default)]
    stopwords: Vec<String>,
    expected: String,
}

fn golden_cases() -> Vec<Golden> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/clean_golden.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn golden_outputs_are_byte_exact() {
    let cases = golden_cases();
    assert!(cases.len() >= 30);
    for case in cases {
        let config = CleanConfig {
            stopwords: Stopwords::new(case.stopwords.clone()).unwrap(),
            ..Default::default()
        };
        let out = clean_message(&case.raw, &config);
        assert_eq!(out.text.as_bytes(), case.expected.as_bytes(), "raw {:?}", case.raw);
        let tokens: Vec<&str> = if case.expected.is_empty() {
            vec![]
        } else {
            case.expected.split(' ').collect()
        };
        assert_eq!(out.tokens, tokens);
    }
}

fn mixed_text() -> impl Strategy<Value = String> {
    let pieces = prop_oneof![
        "[a-zA-Z0-9@#:/.%,!-]{0,8}",
        "[\u{0D80}-\u{0DFF}]{1,6}",
        Just("\u{200D}".to_owned()),
        Just("\u{200C}".to_owned()),
        Just("\u{FEFF}".to_owned()),
        "[ \t\r\n\u{00A0}]{1,3}",
        Just("http://x.y".to_owned()),
        Just("a@b.lk".to_owned()),
        "[\u{0900}-\u{097F}]{1,3}",
        any::<char>().prop_map(String::from),
    ];
    prop::collection::vec(pieces, 0..12).prop_map(|v| v.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn cleaning_is_idempotent(raw in mixed_text()) {
        let config = CleanConfig::default();
        let once = clean_message(&raw, &config);
        let twice = clean_message(&once.text, &config);
        prop_assert_eq!(&once, &twice);
    }

    #[test]
    fn cleaning_is_idempotent_on_arbitrary_strings(raw in any::<String>()) {
        let config = CleanConfig::default();
        let once = clean_message(&raw, &config);
        prop_assert_eq!(clean_message(&once.text, &config), once);
    }

    #[test]
    fn output_alphabet_and_spacing(raw in mixed_text()) {
        let out = clean_message(&raw, &CleanConfig::default());
        for c in out.text.chars() {
            let sinhala = ('\u{0D80}'..='\u{0DFF}').contains(&c);
            let invisible = c.is_control() || c == '\u{200D}';
            prop_assert!(c.is_ascii() || sinhala, "char {:?}", c);
            prop_assert!(!invisible, "char {:?}", c);
        }
        prop_assert!(!out.text.contains("  "));
        prop_assert_eq!(out.text.trim(), out.text.as_str());
        let set: std::collections::BTreeSet<String> = out.tokens.iter().cloned().collect();
        prop_assert_eq!(set, out.unique_words);
    }
}
