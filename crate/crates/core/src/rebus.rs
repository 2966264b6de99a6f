//! Rebus writing: digits, letters and a few symbols standing in for syllables
//! ("demain" → "2m1", "later" → "l8er").
//!
//! The automaton splits its mass between lone symbols drawn from a weighted table
//! and mixed strings that contain at least one letter and at least one digit or
//! symbol, with no two digits in a row.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::automaton::{AutomatonBuilder, Label, StateId, WeightedAutomaton};
use crate::chars::{is_letter, nfc, CharClass};
use crate::{GenError, LmError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RebusParams {
    pub p_singleton: f64,
    /// Lone rebus symbols and their relative frequencies; must sum to 1.
    pub singletons: BTreeMap<String, f64>,
    /// Relative weights of letter / digit / symbol steps in mixed strings.
    pub letter_weight: f64,
    pub digit_weight: f64,
    pub symbol_weight: f64,
    /// Probability a mixed string stops once it contains both kinds of character.
    pub p_stop: f64,
    pub letters: CharClass,
    pub digits: CharClass,
    pub symbols: CharClass,
}

impl Default for RebusParams {
    fn default() -> Self {
        let singletons = [
            ("2", 0.35),
            ("1", 0.15),
            ("8", 0.10),
            ("b", 0.08),
            ("u", 0.08),
            ("r", 0.06),
            ("c", 0.06),
            ("7", 0.03),
            ("+", 0.03),
            ("4", 0.02),
            ("9", 0.02),
            ("-", 0.02),
        ]
            .into_iter()
            .map(|(s, p)| (s.to_string(), p))
            .collect();
        RebusParams {
            p_singleton: 0.5,
            singletons,
            letter_weight: 0.7,
            digit_weight: 0.25,
            symbol_weight: 0.05,
            p_stop: 0.3,
            letters: crate::data::french_letters(),
            digits: default_digits(),
            symbols: CharClass::symbols(),
        }
    }
}

/// Digits that stand for frequent syllables are favoured, as in the singleton table.
fn default_digits() -> CharClass {
    let w = [('2', 0.35), ('1', 0.25), ('8', 0.15), ('4', 0.05), ('7', 0.05), ('9', 0.05), ('0', 0.025), ('3', 0.025), ('5', 0.025), ('6', 0.025)];
    CharClass::weighted("DIGITS", w).expect("positive weights")
}

impl RebusParams {
    pub fn validate(&self) -> Result<(), LmError> {
        if !(self.p_singleton > 0.0 && self.p_singleton < 1.0) {
            return Err(LmError::BadParams(format!("p_singleton = {} is outside (0,1)", self.p_singleton)));
        }
        if !(self.p_stop > 0.0 && self.p_stop < 1.0) {
            return Err(LmError::BadParams(format!("p_stop = {} is outside (0,1)", self.p_stop)));
        }
        if self.singletons.is_empty() || self.singletons.iter().any(|(s, p)| s.is_empty() || p.is_nan() || *p <= 0.0) {
            return Err(LmError::BadParams("singleton table needs non-empty symbols with positive mass".into()));
        }
        let total: f64 = self.singletons.values().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(LmError::BadParams(format!("singleton probabilities sum to {total}, not 1")));
        }
        let w = [self.letter_weight, self.digit_weight, self.symbol_weight];
        if w.iter().any(|x| !(*x > 0.0 && x.is_finite())) {
            return Err(LmError::BadParams("mixed-branch weights must be positive".into()));
        }
        Ok(())
    }
}

pub fn build_rebus_automaton(params: &RebusParams) -> Result<WeightedAutomaton, LmError> {
    params.validate()?;
    let mut b = AutomatonBuilder::new();
    let start = b.add_state();
    let done = b.add_state();
    b.set_final(done, 1.0);

    for (sym, p) in &params.singletons {
        let chars: Vec<char> = nfc(sym).chars().collect();
        let mut cur = start;
        let mut prob = params.p_singleton * p;
        for (i, &c) in chars.iter().enumerate() {
            let next = if i + 1 == chars.len() { done } else { b.add_state() };
            b.add_transition(cur, Label::Char(c), prob, next);
            prob = 1.0;
            cur = next;
        }
    }

    // mixed states keyed by (has letter, has digit-or-symbol, last was digit)
    let mut ids: BTreeMap<(bool, bool, bool), StateId> = BTreeMap::new();
    for key in [false, true].iter().flat_map(|&l| [false, true].iter().flat_map(move |&o| [false, true].map(|d| (l, o, d)))) {
        ids.insert(key, b.add_state());
    }
    let letters = Label::Class(params.letters.clone().into());
    let digits = Label::Class(params.digits.clone().into());
    let symbols = Label::Class(params.symbols.clone().into());
    for (&(l, o, d), &s) in &ids {
        let stop = if l && o { params.p_stop } else { 0.0 };
        b.set_final(s, stop);
        let digit_w = if d { 0.0 } else { params.digit_weight };
        let z = params.letter_weight + digit_w + params.symbol_weight;
        let emit = 1.0 - stop;
        b.add_transition(s, letters.clone(), emit * params.letter_weight / z, ids[&(true, o, false)]);
        b.add_transition(s, digits.clone(), emit * digit_w / z, ids[&(l, true, true)]);
        b.add_transition(s, symbols.clone(), emit * params.symbol_weight / z, ids[&(l, true, false)]);
    }
    b.add_transition(start, Label::Epsilon, 1.0 - params.p_singleton, ids[&(false, false, false)]);
    b.build(start)
}

/// Grapheme-to-symbol replacements such as `de → 2`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RebusTable {
    entries: Vec<(String, String)>,
}

impl RebusTable {
    pub fn new<S: AsRef<str>>(entries: impl IntoIterator<Item = (S, S)>) -> Result<Self, GenError> {
        let mut t = RebusTable::default();
        for (i, (src, rep)) in entries.into_iter().enumerate() {
            t.push(src.as_ref(), rep.as_ref(), i + 1)?;
        }
        Ok(t)
    }

    fn push(&mut self, src: &str, rep: &str, line: usize) -> Result<(), GenError> {
        let (src, rep) = (nfc(src), nfc(rep));
        if src.is_empty() || rep.is_empty() {
            return Err(GenError::InvalidTableEntry { line, msg: "empty side".into() });
        }
        if rep.chars().all(is_letter) {
            return Err(GenError::InvalidTableEntry { line, msg: format!("replacement {rep:?} has no digit or symbol") });
        }
        self.entries.push((src, rep));
        Ok(())
    }

    /// `source<TAB>replacement` per line, `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<Self, GenError> {
        let mut t = RebusTable::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (src, rep) = line
                .split_once('\t')
                .ok_or_else(|| GenError::InvalidTableEntry { line: i + 1, msg: "expected source<TAB>replacement".into() })?;
            t.push(src.trim(), rep.trim(), i + 1)?;
        }
        Ok(t)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GenError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| GenError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Longest entry whose source occurs at `pos`, as (source length, replacement).
    fn longest_at(&self, chars: &[char], pos: usize) -> Option<(usize, &str)> {
        self.entries
            .iter()
            .filter_map(|(src, rep)| {
                let n = src.chars().count();
                let hit = pos + n <= chars.len() && src.chars().zip(&chars[pos..]).all(|(a, &b)| a == b);
                hit.then_some((n, rep.as_str()))
            })
            .max_by_key(|(n, _)| *n)
    }
}

/// Every spelling obtained by replacing a non-overlapping subset of table matches
/// (longest match at each position). Always contains `word` itself.
pub fn rebusify(word: &str, table: &RebusTable) -> Result<BTreeSet<String>, GenError> {
    if word.is_empty() {
        return Err(GenError::EmptyWord);
    }
    let chars: Vec<char> = word.chars().collect();
    let mut memo: Vec<Option<BTreeSet<String>>> = vec![None; chars.len() + 1];
    Ok(suffixes(&chars, 0, table, &mut memo))
}

fn suffixes(chars: &[char], pos: usize, table: &RebusTable, memo: &mut Vec<Option<BTreeSet<String>>>) -> BTreeSet<String> {
    if let Some(done) = &memo[pos] {
        return done.clone();
    }
    let mut out = BTreeSet::new();
    if pos == chars.len() {
        out.insert(String::new());
    } else {
        for rest in suffixes(chars, pos + 1, table, memo) {
            out.insert(format!("{}{rest}", chars[pos]));
        }
        if let Some((n, rep)) = table.longest_at(chars, pos) {
            let rep = rep.to_string();
            for rest in suffixes(chars, pos + n, table, memo) {
                out.insert(format!("{rep}{rest}"));
            }
        }
    }
    memo[pos] = Some(out.clone());
    out
}
