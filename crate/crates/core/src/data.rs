//! Bundled default resources.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::chars::{is_letter, CharClass, CONSONANT_CHARS, VOWEL_CHARS};
use crate::lexicon::Lexicon;
use crate::phonetic::RuleSet;
use crate::rebus::RebusTable;

pub const FRENCH_LEXICON_TSV: &str = include_str!("../data/french_lexicon.tsv");
pub const PHONETIC_RULES_JSON: &str = include_str!("../data/phonetic_rules.json");
pub const REBUS_TABLE_TSV: &str = include_str!("../data/rebus_table.tsv");
pub const CONFUSIONS_JSON: &str = include_str!("../data/confusions.json");

/// About 1,300 common French words with rank-derived counts.
pub fn french_lexicon() -> Lexicon {
    Lexicon::parse(FRENCH_LEXICON_TSV).expect("bundled lexicon parses")
}

/// Mute-letter and respelling rules for French homophones.
pub fn default_rules() -> RuleSet {
    RuleSet::from_json(PHONETIC_RULES_JSON).expect("bundled rules parse")
}

pub fn default_rebus_table() -> RebusTable {
    RebusTable::parse(REBUS_TABLE_TSV).expect("bundled rebus table parses")
}

/// Letters weighted by their add-one smoothed count over the bundled word list.
pub fn french_letters() -> CharClass {
    static CLASS: OnceLock<CharClass> = OnceLock::new();
    CLASS
        .get_or_init(|| {
            let mut counts: BTreeMap<char, f64> = VOWEL_CHARS.chars().chain(CONSONANT_CHARS.chars()).map(|c| (c, 1.0)).collect();
            for w in french_lexicon().words() {
                for c in w.chars().filter(|&c| is_letter(c)) {
                    *counts.entry(c).or_insert(1.0) += 1.0;
                }
            }
            CharClass::weighted("LETTERS", counts).expect("positive counts")
        })
        .clone()
}

/// Visually confusable handwritten characters, as symmetric pairs.
pub fn default_confusions() -> Vec<(char, char)> {
    let pairs: Vec<String> = serde_json::from_str(CONFUSIONS_JSON).expect("bundled confusions parse");
    pairs
        .iter()
        .map(|p| {
            let mut it = p.chars();
            (it.next().expect("pair"), it.next().expect("pair"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_resources_load() {
        assert!(french_lexicon().len() >= 1000);
        assert!(default_rules().rules.len() > 20);
        assert!(default_rebus_table().len() > 10);
        assert!(default_confusions().len() > 10);
        let l = french_letters();
        assert_eq!(l.len(), CharClass::letters().len());
        assert!(l.member_prob('e') > l.member_prob('w'));
    }
}
