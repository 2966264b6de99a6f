//! Message records, JSON-Lines corpora and synthetic corpus generation.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chars::{is_consonant, nfc};
use crate::lexicon::Lexicon;
use crate::phonetic::{closure, RuleSet};
use crate::rebus::{rebusify, RebusTable};
use crate::skeleton::skeletonize;
use crate::{CorpusError, GenError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hand {
    Boxed,
    Cursive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Given,
    Free,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Skeleton,
    Rebus,
    Phonetic,
    #[default]
    Other,
}

impl Category {
    pub const ALL: [Category; 4] = [Category::Skeleton, Category::Rebus, Category::Phonetic, Category::Other];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Skeleton => "skeleton",
            Category::Rebus => "rebus",
            Category::Phonetic => "phonetic",
            Category::Other => "other",
        }
    }

    /// Skeleton, rebus and phonetic messages.
    pub fn is_neography(self) -> bool {
        self != Category::Other
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown category {s:?}"))
    }
}

/// One handwritten short message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MessageRecord {
    pub id: String,
    pub writer: u32,
    pub hand: Hand,
    pub source: Source,
    pub label: String,
    #[serde(default)]
    pub category: Category,
    /// Standard spelling the label was derived from (synthetic corpora only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub original: Option<String>,
}

/// Parses a JSON-Lines corpus. Blank lines are skipped; labels are NFC-normalized.
pub fn parse_corpus(text: &str) -> Result<Vec<MessageRecord>, CorpusError> {
    let mut out = Vec::new();
    let mut ids = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut rec: MessageRecord =
            serde_json::from_str(line).map_err(|e| CorpusError::Parse { line: i + 1, msg: e.to_string() })?;
        rec.label = nfc(&rec.label);
        if rec.label.is_empty() {
            return Err(CorpusError::EmptyLabel(i + 1));
        }
        if !ids.insert(rec.id.clone()) {
            return Err(CorpusError::DuplicateId(rec.id));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<MessageRecord>, CorpusError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| CorpusError::Io(path.display().to_string(), e.to_string()))?;
    parse_corpus(&text)
}

/// Canonical JSON-Lines form: one compact object per line, fields in declaration order.
pub fn format_corpus(records: &[MessageRecord]) -> String {
    records.iter().map(|r| serde_json::to_string(r).expect("record serializes") + "\n").collect()
}

pub fn save_corpus(path: impl AsRef<Path>, records: &[MessageRecord]) -> Result<(), CorpusError> {
    let path = path.as_ref();
    fs::write(path, format_corpus(records)).map_err(|e| CorpusError::Io(path.display().to_string(), e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthCounts {
    pub skeleton: usize,
    pub rebus: usize,
    pub phonetic: usize,
    pub other: usize,
}

impl SynthCounts {
    pub fn new(skeleton: usize, rebus: usize, phonetic: usize, other: usize) -> Self {
        SynthCounts { skeleton, rebus, phonetic, other }
    }

    fn of(&self, c: Category) -> usize {
        match c {
            Category::Skeleton => self.skeleton,
            Category::Rebus => self.rebus,
            Category::Phonetic => self.phonetic,
            Category::Other => self.other,
        }
    }
}

impl FromStr for SynthCounts {
    type Err = String;

    /// `s,r,p,o`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Vec<usize> = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad count {x:?}")))
            .collect::<Result<_, _>>()?;
        match v[..] {
            [a, b, c, d] => Ok(SynthCounts::new(a, b, c, d)),
            _ => Err("expected four comma-separated counts s,r,p,o".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthOptions {
    /// Words per message, drawn uniformly from this inclusive range.
    pub min_words: usize,
    pub max_words: usize,
    pub writers: u32,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions { min_words: 1, max_words: 1, writers: 150 }
    }
}

/// Per-category word pools: (standard word, its non-identity neographies).
struct Pools {
    skeleton: Vec<(String, Vec<String>)>,
    rebus: Vec<(String, Vec<String>)>,
    phonetic: Vec<(String, Vec<String>)>,
    other: Vec<(String, Vec<String>)>,
}

impl Pools {
    fn build(lex: &Lexicon, rules: &RuleSet, table: &RebusTable) -> Result<Self, GenError> {
        let mut p = Pools { skeleton: Vec::new(), rebus: Vec::new(), phonetic: Vec::new(), other: Vec::new() };
        for w in lex.words() {
            p.other.push((w.to_string(), vec![w.to_string()]));
            let sk = skeletonize(w)?;
            if sk != w && sk.chars().any(is_consonant) {
                p.skeleton.push((w.to_string(), vec![sk]));
            }
            let reb: Vec<String> = rebusify(w, table)?.into_iter().filter(|v| v != w).collect();
            if !reb.is_empty() {
                p.rebus.push((w.to_string(), reb));
            }
            let ph: Vec<String> = closure(w, rules)?.variants.into_iter().filter(|v| v != w).collect();
            if !ph.is_empty() {
                p.phonetic.push((w.to_string(), ph));
            }
        }
        Ok(p)
    }

    fn get(&self, c: Category) -> &[(String, Vec<String>)] {
        match c {
            Category::Skeleton => &self.skeleton,
            Category::Rebus => &self.rebus,
            Category::Phonetic => &self.phonetic,
            Category::Other => &self.other,
        }
    }
}

/// Deterministic synthetic corpus: words sampled from `standard`, rewritten in the
/// style of each category, with the standard spelling kept in `original`.
pub fn synth_corpus(
    standard: &Lexicon,
    rules: &RuleSet,
    table: &RebusTable,
    counts: SynthCounts,
    seed: u64,
    opts: &SynthOptions,
) -> Result<Vec<MessageRecord>, GenError> {
    if standard.is_empty() {
        return Err(GenError::EmptyLexicon);
    }
    let pools = Pools::build(standard, rules, table)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (opts.min_words.max(1), opts.max_words.max(opts.min_words.max(1)));
    let mut out = Vec::new();
    for cat in Category::ALL {
        let n = counts.of(cat);
        let pool = pools.get(cat);
        if n > 0 && pool.is_empty() {
            return Err(GenError::InsufficientLexicon { have: 0, need: 1 });
        }
        for _ in 0..n {
            let k = rng.gen_range(lo..=hi);
            let mut label = Vec::with_capacity(k);
            let mut original = Vec::with_capacity(k);
            for _ in 0..k {
                let (w, variants) = pool.choose(&mut rng).expect("non-empty pool");
                original.push(w.clone());
                label.push(variants.choose(&mut rng).expect("non-empty variants").clone());
            }
            let i = out.len();
            out.push(MessageRecord {
                id: format!("syn{i:05}"),
                writer: (i as u32 % opts.writers.max(1)) + 1,
                hand: if i % 2 == 0 { Hand::Boxed } else { Hand::Cursive },
                source: Source::Free,
                label: label.join(" "),
                category: cat,
                original: Some(original.join(" ")),
            });
        }
    }
    Ok(out)
}

/// Every whitespace-separated word occurring in the labels, unweighted.
pub fn label_vocabulary(records: &[MessageRecord]) -> Lexicon {
    let mut lex = Lexicon::new();
    for r in records {
        for w in r.label.split_whitespace() {
            lex.add(w, 0);
        }
    }
    lex
}

/// Categories present in `records`, in canonical order.
pub fn categories(records: &[MessageRecord]) -> Vec<Category> {
    let present: BTreeSet<Category> = records.iter().map(|r| r.category).collect();
    present.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{default_rebus_table, default_rules};

    const LINE: &str = r#"{"id":"m1","writer":3,"hand":"boxed","source":"free","label":"a2m1","category":"rebus"}"#;

    #[test]
    fn parse_one_record() {
        let c = parse_corpus(LINE).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].category, Category::Rebus);
        assert_eq!(c[0].hand, Hand::Boxed);
        assert_eq!(format_corpus(&c), format!("{LINE}\n"));
    }

    #[test]
    fn category_defaults_to_other() {
        let c = parse_corpus(r#"{"id":"x","writer":1,"hand":"cursive","source":"given","label":"slt"}"#).unwrap();
        assert_eq!(c[0].category, Category::Other);
    }

    #[test]
    fn empty_file_is_empty_corpus() {
        assert!(parse_corpus("").unwrap().is_empty());
        assert!(parse_corpus("\n\n").unwrap().is_empty());
    }

    #[test]
    fn errors_carry_lines() {
        let dup = format!("{LINE}\n{LINE}\n");
        assert_eq!(parse_corpus(&dup).unwrap_err(), CorpusError::DuplicateId("m1".into()));
        let bad = format!("{LINE}\n{{not json\n");
        assert!(matches!(parse_corpus(&bad), Err(CorpusError::Parse { line: 2, .. })));
        let empty = r#"{"id":"e","writer":1,"hand":"boxed","source":"free","label":""}"#;
        assert_eq!(parse_corpus(empty).unwrap_err(), CorpusError::EmptyLabel(1));
        let hand = r#"{"id":"e","writer":1,"hand":"left","source":"free","label":"x"}"#;
        assert!(matches!(parse_corpus(hand), Err(CorpusError::Parse { line: 1, .. })));
    }

    #[test]
    fn synth_skeleton_of_text() {
        let lex = Lexicon::from_words(["text"]);
        let c = synth_corpus(&lex, &default_rules(), &default_rebus_table(), SynthCounts::new(1, 0, 0, 0), 1, &SynthOptions::default())
            .unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].label, "txt");
        assert_eq!(c[0].category, Category::Skeleton);
        assert_eq!(c[0].original.as_deref(), Some("text"));
    }

    #[test]
    fn synth_zero_counts_and_determinism() {
        let lex = crate::data::french_lexicon();
        let (r, t) = (default_rules(), default_rebus_table());
        let opts = SynthOptions { min_words: 1, max_words: 3, writers: 150 };
        assert!(synth_corpus(&lex, &r, &t, SynthCounts::new(0, 0, 0, 0), 5, &opts).unwrap().is_empty());
        let a = synth_corpus(&lex, &r, &t, SynthCounts::new(5, 5, 5, 5), 5, &opts).unwrap();
        let b = synth_corpus(&lex, &r, &t, SynthCounts::new(5, 5, 5, 5), 5, &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
        assert!(a.iter().filter(|m| m.category.is_neography()).all(|m| Some(&m.label) != m.original.as_ref()));
    }

    #[test]
    fn counts_parse() {
        assert_eq!("1,2,3,4".parse::<SynthCounts>().unwrap(), SynthCounts::new(1, 2, 3, 4));
        assert!("1,2".parse::<SynthCounts>().is_err());
    }
}
