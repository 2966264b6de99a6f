//! Homophone generation with contextual rewrite rules.
//!
//! Rules drop mute letters or swap a spelling for a same-sounding shorter one.
//! [`closure`] applies every rule at every matching site, then again to the
//! results, until nothing new appears.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chars::{is_consonant, is_vowel, nfc};
use crate::lexicon::Lexicon;
use crate::GenError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    #[default]
    Anywhere,
    WordFinal,
}

/// A condition on the character next to a match; a list of these is satisfied
/// when any one of them holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Neighbor {
    Vowel,
    Consonant,
    /// Beginning of the word (no preceding character).
    Start,
    /// End of the word (no following character).
    End,
    Chars(String),
}

impl Neighbor {
    fn holds(&self, c: Option<char>) -> bool {
        match (self, c) {
            (Neighbor::Vowel, Some(c)) => is_vowel(c),
            (Neighbor::Consonant, Some(c)) => is_consonant(c),
            (Neighbor::Chars(set), Some(c)) => set.contains(c),
            (Neighbor::Start | Neighbor::End, None) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RewriteRule {
    pub name: String,
    pub pattern: String,
    #[serde(default)]
    pub replacement: String,
    #[serde(default)]
    pub position: Position,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub preceding: Vec<Neighbor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub following: Vec<Neighbor>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub forbid_preceding: String,
}

impl RewriteRule {
    pub fn new(name: &str, pattern: &str, replacement: &str) -> Self {
        RewriteRule {
            name: name.into(),
            pattern: nfc(pattern),
            replacement: nfc(replacement),
            position: Position::Anywhere,
            preceding: Vec::new(),
            following: Vec::new(),
            forbid_preceding: String::new(),
        }
    }

    pub fn word_final(mut self) -> Self {
        self.position = Position::WordFinal;
        self
    }

    pub fn preceded_by(mut self, n: Neighbor) -> Self {
        self.preceding.push(n);
        self
    }

    pub fn followed_by(mut self, n: Neighbor) -> Self {
        self.following.push(n);
        self
    }

    pub fn not_after(mut self, chars: &str) -> Self {
        self.forbid_preceding = chars.into();
        self
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let err = |msg: &str| GenError::InvalidRule { name: self.name.clone(), msg: msg.into() };
        if self.pattern.is_empty() {
            return Err(err("empty pattern"));
        }
        if self.replacement.chars().count() > self.pattern.chars().count() {
            return Err(err("replacement is longer than the pattern"));
        }
        Ok(())
    }

    fn matches_at(&self, chars: &[char], pat: &[char], i: usize) -> bool {
        let end = i + pat.len();
        if end > chars.len() || chars[i..end] != *pat {
            return false;
        }
        if self.position == Position::WordFinal && end != chars.len() {
            return false;
        }
        let before = i.checked_sub(1).map(|j| chars[j]);
        let after = chars.get(end).copied();
        if before.is_some_and(|c| self.forbid_preceding.contains(c)) {
            return false;
        }
        (self.preceding.is_empty() || self.preceding.iter().any(|n| n.holds(before)))
            && (self.following.is_empty() || self.following.iter().any(|n| n.holds(after)))
    }
}

/// Rewrites each match site independently. Rewrites that would empty the word are dropped.
pub fn apply_rule(word: &str, rule: &RewriteRule) -> BTreeSet<String> {
    let chars: Vec<char> = word.chars().collect();
    let pat: Vec<char> = rule.pattern.chars().collect();
    let mut out = BTreeSet::new();
    if pat.is_empty() {
        return out;
    }
    for i in 0..chars.len() {
        if rule.matches_at(&chars, &pat, i) {
            let s: String = chars[..i].iter().chain(rule.replacement.chars().collect::<Vec<_>>().iter()).chain(&chars[i + pat.len()..]).collect();
            if !s.is_empty() {
                out.insert(s);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSet {
    pub rules: Vec<RewriteRule>,
    #[serde(default = "default_depth")]
    pub max_depth: usize,
    #[serde(default = "default_size")]
    pub max_set_size: usize,
}

fn default_depth() -> usize {
    8
}

fn default_size() -> usize {
    256
}

impl RuleSet {
    pub fn new(rules: Vec<RewriteRule>) -> Result<Self, GenError> {
        let rs = RuleSet { rules, max_depth: default_depth(), max_set_size: default_size() };
        rs.validate()?;
        Ok(rs)
    }

    pub fn with_limits(mut self, max_depth: usize, max_set_size: usize) -> Result<Self, GenError> {
        self.max_depth = max_depth;
        self.max_set_size = max_set_size;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.rules.is_empty() {
            return Err(GenError::EmptyRuleSet);
        }
        if self.max_depth == 0 || self.max_set_size == 0 {
            return Err(GenError::InvalidRule { name: "<limits>".into(), msg: "limits must be positive".into() });
        }
        self.rules.iter().try_for_each(RewriteRule::validate)
    }

    pub fn from_json(text: &str) -> Result<Self, GenError> {
        let mut rs: RuleSet = serde_json::from_str(text).map_err(|e| GenError::Io(format!("rule set: {e}")))?;
        for r in &mut rs.rules {
            r.pattern = nfc(&r.pattern);
            r.replacement = nfc(&r.replacement);
        }
        rs.validate()?;
        Ok(rs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GenError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| GenError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rules serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub variants: BTreeSet<String>,
    /// Set when the depth or size limit stopped the expansion early.
    pub limit_exceeded: bool,
}

/// Least fixpoint of every rule, seeded with `word`, bounded by the rule set's limits.
pub fn closure(word: &str, rules: &RuleSet) -> Result<Closure, GenError> {
    let word = nfc(word);
    if word.is_empty() {
        return Err(GenError::EmptyWord);
    }
    let mut seen = BTreeSet::from([word.clone()]);
    let mut frontier = BTreeSet::from([word]);
    let mut limit_exceeded = false;
    for _ in 0..rules.max_depth {
        let mut next = BTreeSet::new();
        for w in &frontier {
            for r in &rules.rules {
                next.extend(apply_rule(w, r).into_iter().filter(|v| !seen.contains(v)));
            }
        }
        for v in &next {
            if seen.len() >= rules.max_set_size {
                limit_exceeded = true;
                break;
            }
            seen.insert(v.clone());
        }
        frontier = next.into_iter().filter(|v| seen.contains(v)).collect();
        if frontier.is_empty() || limit_exceeded {
            break;
        }
    }
    if !frontier.is_empty() && !limit_exceeded {
        // depth ran out: anything still expandable means the fixpoint was not reached
        limit_exceeded = frontier.iter().any(|w| rules.rules.iter().any(|r| apply_rule(w, r).iter().any(|v| !seen.contains(v))));
    }
    Ok(Closure { variants: seen, limit_exceeded })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomophoneLexicon {
    /// Variants with the summed frequency of their source words.
    pub lexicon: Lexicon,
    /// Source words each variant was generated from.
    pub provenance: BTreeMap<String, BTreeSet<String>>,
    /// Source words whose closure hit a limit.
    pub truncated: Vec<String>,
}

/// Union of the closures of the `top_k` most frequent words.
pub fn build_homophone_lexicon(freq: &Lexicon, top_k: usize, rules: &RuleSet) -> Result<HomophoneLexicon, GenError> {
    rules.validate()?;
    if freq.len() < top_k || freq.is_empty() {
        return Err(GenError::InsufficientLexicon { have: freq.len(), need: top_k.max(1) });
    }
    let mut lexicon = Lexicon::new();
    let mut provenance: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut truncated = Vec::new();
    for (w, f) in freq.top_k(top_k) {
        let c = closure(w, rules)?;
        if c.limit_exceeded {
            truncated.push(w.to_string());
        }
        for v in c.variants {
            lexicon.add(&v, f);
            provenance.entry(v).or_default().insert(w.to_string());
        }
    }
    Ok(HomophoneLexicon { lexicon, provenance, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::default_rules;

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn rule(name: &str) -> RewriteRule {
        default_rules().rules.into_iter().find(|r| r.name == name).unwrap()
    }

    #[test]
    fn apply_rule_examples() {
        assert_eq!(apply_rule("belle", &rule("double-l")), set(&["bele"]));
        assert_eq!(apply_rule("kkk", &rule("double-k")), set(&["kk"]));
        assert!(apply_rule("abc", &rule("au-o")).is_empty());
    }

    #[test]
    fn rule_never_empties_a_word() {
        assert!(apply_rule("e", &rule("mute-e-final")).is_empty());
    }

    #[test]
    fn contexts() {
        assert_eq!(apply_rule("homme", &rule("h-drop")), set(&["omme"]));
        assert!(apply_rule("chat", &rule("h-drop")).is_empty());
        assert_eq!(apply_rule("coca", &rule("hard-c")), set(&["koca", "coka"]));
        assert!(apply_rule("ceci", &rule("hard-c")).is_empty());
        assert_eq!(apply_rule("rose", &rule("intervocalic-s")), set(&["roze"]));
        assert!(apply_rule("sans", &rule("intervocalic-s")).is_empty());
        assert_eq!(apply_rule("ils", &rule("final-s")), set(&["il"]));
        assert!(apply_rule("ste", &rule("final-s")).is_empty());
    }

    #[test]
    fn musique() {
        let c = closure("musique", &default_rules()).unwrap();
        let expected = set(&["musique", "muzique", "musiqu", "musike", "muziqu", "muzike", "musik", "muzik"]);
        assert_eq!(c.variants, expected);
        assert!(!c.limit_exceeded);
    }

    #[test]
    fn belle_and_fixpoints() {
        let c = closure("belle", &default_rules()).unwrap();
        assert!(c.variants.is_superset(&set(&["belle", "bele", "bel", "bell"])));
        assert_eq!(closure("bjr", &default_rules()).unwrap().variants, set(&["bjr"]));
        assert!(closure("", &default_rules()).is_err());
    }

    #[test]
    fn limits_are_flagged() {
        let rules = default_rules().with_limits(1, 256).unwrap();
        let c = closure("musique", &rules).unwrap();
        assert!(c.limit_exceeded);
        assert!(c.variants.contains("musiqu"));
        assert!(!c.variants.contains("musik"));
        let tiny = default_rules().with_limits(8, 2).unwrap();
        let c = closure("musique", &tiny).unwrap();
        assert!(c.limit_exceeded);
        assert_eq!(c.variants.len(), 2);
    }

    #[test]
    fn rule_set_validation() {
        assert_eq!(RuleSet::new(vec![]).unwrap_err(), GenError::EmptyRuleSet);
        let long = RewriteRule::new("grow", "a", "aa");
        assert!(RuleSet::new(vec![long]).is_err());
        assert!(RuleSet::new(vec![RewriteRule::new("x", "", "")]).is_err());
    }

    #[test]
    fn homophone_lexicon() {
        let freq = Lexicon::from_pairs([("musique", 100), ("x", 1)]);
        let h = build_homophone_lexicon(&freq, 1, &default_rules()).unwrap();
        assert_eq!(h.lexicon.len(), 8);
        assert_eq!(h.provenance["muzik"], set(&["musique"]));
        assert_eq!(h.lexicon.freq("muzik"), Some(100));
        assert!(matches!(build_homophone_lexicon(&freq, 3, &default_rules()), Err(GenError::InsufficientLexicon { .. })));
    }

    #[test]
    fn rules_round_trip_through_json() {
        let rs = default_rules();
        assert_eq!(RuleSet::from_json(&rs.to_json()).unwrap(), rs);
    }
}
