//! Message cleaning.
//!
//! The pipeline runs in a fixed order:
//!
//! 1. delete every zero width joiner (U+200D), joining the word around it;
//! 2. replace every other control or format character (`Cc`, `Cf`) with a space;
//! 3. drop URL, email, `@user` and `#hashtag` tokens;
//! 4. drop tokens holding any character that is neither ASCII nor Sinhala;
//! 5. drop stopwords;
//! 6. drop tokens made only of digits;
//! 7. collapse whitespace runs to one space and trim.
//!
//! Tokens are whitespace-delimited; punctuation is kept inside tokens.

use std::collections::{BTreeSet, HashSet};
use std::io::BufRead;

use unicode_general_category::{get_general_category, GeneralCategory};

use crate::error::{Error, Result};

const ZERO_WIDTH_JOINER: char = '\u{200D}';
const SINHALA_BLOCK: std::ops::RangeInclusive<char> = '\u{0D80}'..='\u{0DFF}';
const SINHALA_DIGITS: std::ops::RangeInclusive<char> = '\u{0DE6}'..='\u{0DEF}';

/// A set of stopwords, matched against whole tokens.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stopwords(HashSet<String>);

impl Stopwords {
    pub fn new<I, S>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = HashSet::new();
        for word in words {
            let word = word.into();
            if word.is_empty() || word.chars().any(char::is_whitespace) {
                return Err(Error::InvalidConfig(format!(
                    "stopword {word:?} is empty or contains whitespace"
                )));
            }
            set.insert(word);
        }
        Ok(Stopwords(set))
    }

    /// Reads a stopword list: one word per line, `#` lines are comments.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut words = Vec::new();
        for line in reader.lines() {
            let line = line.map_err(Error::UnreadableSource)?;
            let word = line.trim();
            if word.is_empty() || word.starts_with('#') {
                continue;
            }
            words.push(word.to_owned());
        }
        Stopwords::new(words)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Per-step switches, all on by default. Turning steps off is meant for
/// diagnostics only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CleanSteps {
    pub zero_width_joiner: bool,
    pub control_chars: bool,
    pub links_and_tags: bool,
    pub script_filter: bool,
    pub stopwords: bool,
    pub digits: bool,
}

impl Default for CleanSteps {
    fn default() -> Self {
        CleanSteps {
            zero_width_joiner: true,
            control_chars: true,
            links_and_tags: true,
            script_filter: true,
            stopwords: true,
            digits: true,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CleanConfig {
    pub stopwords: Stopwords,
    /// Lower-case ASCII letters before stopword matching.
    pub casefold_ascii: bool,
    pub steps: CleanSteps,
}

/// Output of [`clean_message`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CleanedMessage {
    pub text: String,
    pub tokens: Vec<String>,
    pub unique_words: BTreeSet<String>,
}

impl CleanedMessage {
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

pub fn clean_message(raw: &str, config: &CleanConfig) -> CleanedMessage {
    let steps = config.steps;
    let prepared: String = raw
        .chars()
        .filter_map(|c| {
            if c == ZERO_WIDTH_JOINER && steps.zero_width_joiner {
                None
            } else if steps.control_chars && is_control_or_format(c) {
                Some(' ')
            } else {
                Some(c)
            }
        })
        .collect();

    let mut tokens = Vec::new();
    for token in prepared.split_whitespace() {
        if steps.links_and_tags && is_link_or_tag(token) {
            continue;
        }
        if steps.script_filter && !is_eligible_word(token) {
            continue;
        }
        let token = if config.casefold_ascii {
            token.to_ascii_lowercase()
        } else {
            token.to_owned()
        };
        if steps.stopwords && config.stopwords.contains(&token) {
            continue;
        }
        if steps.digits && is_digit_token(&token) {
            continue;
        }
        tokens.push(token);
    }

    let text = tokens.join(" ");
    let unique_words = tokens.iter().cloned().collect();
    CleanedMessage {
        text,
        tokens,
        unique_words,
    }
}

/// True iff every character is ASCII or in the Sinhala block.
pub fn is_eligible_word(token: &str) -> bool {
    token.chars().all(|c| c.is_ascii() || SINHALA_BLOCK.contains(&c))
}

fn is_control_or_format(c: char) -> bool {
    matches!(
        get_general_category(c),
        GeneralCategory::Control | GeneralCategory::Format
    )
}

fn is_link_or_tag(token: &str) -> bool {
    token.starts_with('@') || token.starts_with('#') || is_url(token) || is_email(token)
}

pub(crate) fn is_url(token: &str) -> bool {
    let lower = token.to_ascii_lowercase();
    lower.starts_with("http://")
        || lower.starts_with("https://")
        || lower.starts_with("www.")
        || lower.contains("://")
}

pub(crate) fn is_email(token: &str) -> bool {
    let mut parts = token.split('@');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(local), Some(domain), None) => {
            !local.is_empty()
                && domain
                    .split('.')
                    .filter(|label| !label.is_empty())
                    .count()
                    >= 2
        }
        _ => false,
    }
}

fn is_digit_token(token: &str) -> bool {
    !token.is_empty()
        && token
            .chars()
            .all(|c| c.is_ascii_digit() || SINHALA_DIGITS.contains(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clean(raw: &str) -> CleanedMessage {
        clean_message(raw, &CleanConfig::default())
    }

    #[test]
    fn zero_width_joiner_joins_word() {
        let out = clean("නිර්\u{200D}මාණ");
        assert_eq!(out.text, "නිර්මාණ");
        assert_eq!(out.tokens.len(), 1);
    }

    #[test]
    fn each_removal_rule_fires() {
        let out = clean("hello @user #tag http://a.b 123 world");
        assert_eq!(out.text, "hello world");
        assert_eq!(out.tokens, vec!["hello", "world"]);
    }

    #[test]
    fn tab_and_runs_collapse() {
        assert_eq!(clean("word1   word2\tword3").text, "word1 word2 word3");
    }

    #[test]
    fn only_urls_and_digits_is_empty() {
        let out = clean("https://x.y www.z.com 42 ෧෨ 007");
        assert!(out.is_empty());
        assert_eq!(out.text, "");
        assert!(out.unique_words.is_empty());
    }

    #[test]
    fn eligibility() {
        assert!(is_eligible_word("hello"));
        assert!(is_eligible_word("සිංහල"));
        assert!(!is_eligible_word("नमस्ते"));
        assert!(!is_eligible_word("hi😀"));
        assert!(!is_eligible_word("café"));
    }

    #[test]
    fn email_rule() {
        assert!(is_email("a@b.com"));
        assert!(!is_email("@b.com"));
        assert!(!is_email("a@localhost"));
        assert!(!is_email("a@b@c.com"));
        assert!(!is_email("a@.com"));
    }

    #[test]
    fn url_rule() {
        assert!(is_url("HTTPS://X.org"));
        assert!(is_url("www.example"));
        assert!(is_url("ftp://host"));
        assert!(!is_url("wwwhat"));
    }

    #[test]
    fn stopwords_match_whole_tokens() {
        let config = CleanConfig {
            stopwords: Stopwords::new(["සහ", "the"]).unwrap(),
            ..Default::default()
        };
        let out = clean_message("ගම සහ නගරය the theme", &config);
        assert_eq!(out.text, "ගම නගරය theme");
    }

    #[test]
    fn casefold_applies_before_stopwords() {
        let config = CleanConfig {
            stopwords: Stopwords::new(["the"]).unwrap(),
            casefold_ascii: true,
            ..Default::default()
        };
        assert_eq!(clean_message("The CAT", &config).text, "cat");
    }

    #[test]
    fn stopword_file_parsing() {
        let src = "# comment\nසහ\n\n  හා  \n";
        let sw = Stopwords::from_reader(src.as_bytes()).unwrap();
        assert_eq!(sw.len(), 2);
        assert!(sw.contains("හා"));
        assert!(Stopwords::new(["a b"]).is_err());
    }

    #[test]
    fn unique_words_is_token_set() {
        let out = clean("a b a c b");
        assert_eq!(out.tokens.len(), 5);
        assert_eq!(out.unique_words.len(), 3);
    }

    #[test]
    fn steps_can_be_disabled() {
        let mut config = CleanConfig::default();
        config.steps.digits = false;
        assert_eq!(clean_message("a 12", &config).text, "a 12");
    }
}
