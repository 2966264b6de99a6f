//! Word lists with optional frequencies, and the `word<TAB>count` frequency-list format.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::chars::nfc;
use crate::CorpusError;

/// Map from NFC-normalized word to frequency; frequency 0 means unweighted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, u64>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: impl IntoIterator<Item = (S, u64)>) -> Self {
        let mut lex = Lexicon::new();
        for (w, f) in pairs {
            lex.add(w.as_ref(), f);
        }
        lex
    }

    pub fn from_words<S: AsRef<str>>(words: impl IntoIterator<Item = S>) -> Self {
        Self::from_pairs(words.into_iter().map(|w| (w, 0)))
    }

    /// Adds `freq` to the entry for `word`. Empty words are ignored.
    pub fn add(&mut self, word: &str, freq: u64) {
        let w = nfc(word.trim());
        if !w.is_empty() {
            *self.entries.entry(w).or_insert(0) += freq;
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn freq(&self, word: &str) -> Option<u64> {
        self.entries.get(word).copied()
    }

    /// Entries in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|(w, &f)| (w.as_str(), f))
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// The `k` most frequent words; ties broken lexicographically.
    pub fn top_k(&self, k: usize) -> Vec<(&str, u64)> {
        let mut all: Vec<(&str, u64)> = self.iter().collect();
        all.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        all.truncate(k);
        all
    }

    /// Parses a frequency list: `word<TAB>count` per line (a bare word counts as 0),
    /// blank lines and `#` comments skipped.
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        let mut lex = Lexicon::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let word = cols.next().unwrap_or("").trim();
            if word.is_empty() {
                return Err(CorpusError::Parse { line: i + 1, msg: "empty word".into() });
            }
            let freq = match cols.next().map(str::trim) {
                None | Some("") => 0,
                Some(c) => c.parse::<u64>().map_err(|_| CorpusError::Parse {
                    line: i + 1,
                    msg: format!("count {c:?} is not a non-negative integer"),
                })?,
            };
            lex.add(word, freq);
        }
        Ok(lex)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| CorpusError::Io(path.display().to_string(), e.to_string()))?;
        Self::parse(&text)
    }

    /// `word<TAB>count` lines in lexicographic order.
    pub fn to_tsv(&self) -> String {
        self.iter().map(|(w, f)| format!("{w}\t{f}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_skips_comments_and_blanks() {
        let lex = Lexicon::parse("# header\n\nde\t100\nla\t50\n  \nchat\n").unwrap();
        assert_eq!(lex.len(), 3);
        assert_eq!(lex.freq("de"), Some(100));
        assert_eq!(lex.freq("chat"), Some(0));
    }

    #[test]
    fn parse_rejects_negative_counts() {
        let err = Lexicon::parse("de\t1\nla\t-3\n").unwrap_err();
        assert!(matches!(err, CorpusError::Parse { line: 2, .. }));
    }

    #[test]
    fn top_k_breaks_ties_lexicographically() {
        let lex = Lexicon::from_pairs([("b", 5), ("a", 5), ("c", 9), ("d", 1)]);
        let top: Vec<&str> = lex.top_k(3).into_iter().map(|(w, _)| w).collect();
        assert_eq!(top, ["c", "a", "b"]);
    }

    #[test]
    fn duplicate_lines_accumulate_and_normalize() {
        let lex = Lexicon::parse("e\u{301}t\u{e9}\t2\nété\t3\n").unwrap();
        assert_eq!(lex.len(), 1);
        assert_eq!(lex.freq("été"), Some(5));
    }
}
