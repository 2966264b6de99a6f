//! Consonant-skeleton writing ("text" → "txt", "bonjour" → "bjour").
//!
//! The automaton encodes four observations about skeletons: most of them are
//! consonant bodies with the odd vowel kept; the remainder add a vowel at the
//! start, at the end, or at both ends. The skeletonizer is a small deterministic
//! rule set used to derive skeleton lexicons from ordinary word lists.

use serde::{Deserialize, Serialize};

use crate::automaton::WeightedAutomaton;
use crate::chars::{is_consonant, is_vowel, CharClass};
use crate::lexicon::Lexicon;
use crate::regex::StochasticRegex as R;
use crate::{GenError, LmError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SkeletonParams {
    /// Mass of the all-consonant branch.
    pub p_pure: f64,
    /// Within the vowel-edged branch: vowel at the start only.
    pub p_begin: f64,
    /// Within the vowel-edged branch: vowel at the end only.
    pub p_end: f64,
    /// Within the vowel-edged branch: vowels at both ends.
    pub p_both: f64,
    /// Probability a body position after the first is a kept vowel.
    pub p_keep_vowel: f64,
    /// Probability the body continues after each symbol.
    pub p_continue: f64,
    pub vowels: CharClass,
    pub consonants: CharClass,
}

impl Default for SkeletonParams {
    fn default() -> Self {
        SkeletonParams {
            p_pure: 0.80,
            p_begin: 0.70,
            p_end: 0.07,
            p_both: 0.23,
            p_keep_vowel: 0.10,
            p_continue: 0.5,
            vowels: CharClass::vowels(),
            consonants: CharClass::consonants(),
        }
    }
}

impl SkeletonParams {
    pub fn validate(&self) -> Result<(), LmError> {
        let probs = [
            ("p_pure", self.p_pure),
            ("p_begin", self.p_begin),
            ("p_end", self.p_end),
            ("p_both", self.p_both),
            ("p_keep_vowel", self.p_keep_vowel),
            ("p_continue", self.p_continue),
        ];
        if let Some((name, p)) = probs.iter().find(|(_, p)| !(*p > 0.0 && *p < 1.0)) {
            return Err(LmError::BadParams(format!("{name} = {p} is outside (0,1)")));
        }
        let edge = self.p_begin + self.p_end + self.p_both;
        if (edge - 1.0).abs() > 1e-9 {
            return Err(LmError::BadParams(format!("p_begin + p_end + p_both = {edge}, not 1")));
        }
        Ok(())
    }

    pub fn regex(&self) -> R {
        let c = || R::class(self.consonants.clone());
        let v = || R::class(self.vowels.clone());
        let step = R::union([(c(), 1.0 - self.p_keep_vowel), (v(), self.p_keep_vowel)]);
        let body = R::concat([c(), R::repeat(step, self.p_continue)]);
        let edged = R::union([
            (R::concat([v(), body.clone()]), self.p_begin),
            (R::concat([body.clone(), v()]), self.p_end),
            (R::concat([v(), body.clone(), v()]), self.p_both),
        ]);
        R::union([(body, self.p_pure), (edged, 1.0 - self.p_pure)])
    }
}

pub fn build_skeleton_automaton(params: &SkeletonParams) -> Result<WeightedAutomaton, LmError> {
    params.validate()?;
    WeightedAutomaton::compile(&params.regex())
}

/// Reduces a lowercase word to its consonant skeleton.
///
/// The first character is always kept. Later vowels are dropped, as is an `n`/`m`
/// that follows a dropped vowel and precedes a consonant or the end of the word.
/// The output has no vowel after its first character, which makes the function
/// idempotent.
pub fn skeletonize(word: &str) -> Result<String, GenError> {
    let chars: Vec<char> = word.chars().collect();
    let Some(&first) = chars.first() else {
        return Err(GenError::EmptyWord);
    };
    let mut out = String::with_capacity(word.len());
    out.push(first);
    for i in 1..chars.len() {
        let c = chars[i];
        if is_vowel(c) {
            continue;
        }
        let nasal = matches!(c, 'n' | 'm')
            && i >= 2
            && is_vowel(chars[i - 1])
            && chars.get(i + 1).is_none_or(|&n| is_consonant(n));
        if !nasal {
            out.push(c);
        }
    }
    Ok(out)
}

/// Skeletonizes every entry; colliding skeletons pool their frequencies.
pub fn build_skeleton_lexicon(lex: &Lexicon) -> Result<Lexicon, GenError> {
    if lex.is_empty() {
        return Err(GenError::EmptyLexicon);
    }
    let mut out = Lexicon::new();
    for (w, f) in lex.iter() {
        out.add(&skeletonize(w)?, f);
    }
    Ok(out)
}
