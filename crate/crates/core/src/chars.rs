//! Character classes over the French lowercase alphabet and text normalization helpers.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::LmError;

pub const VOWEL_CHARS: &str = "aeiouyéèêëàâîïôûùü";
pub const CONSONANT_CHARS: &str = "bcdfghjklmnpqrstvwxzç";
pub const DIGIT_CHARS: &str = "0123456789";
pub const SYMBOL_CHARS: &str = "+-";

pub fn is_vowel(c: char) -> bool {
    VOWEL_CHARS.contains(c)
}

pub fn is_consonant(c: char) -> bool {
    CONSONANT_CHARS.contains(c)
}

pub fn is_digit(c: char) -> bool {
    c.is_ascii_digit()
}

pub fn is_letter(c: char) -> bool {
    is_vowel(c) || is_consonant(c)
}

/// NFC-normalizes `s`.
pub fn nfc(s: &str) -> String {
    s.nfc().collect()
}

/// Number of Unicode scalar values in `s`.
pub fn char_len(s: &str) -> usize {
    s.chars().count()
}

/// A named set of characters, optionally carrying a per-member distribution.
///
/// Without explicit weights a class distributes its mass uniformly over its members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ClassSpec", into = "ClassSpec")]
pub struct CharClass {
    name: String,
    members: Vec<char>,
    // normalized, parallel to `members`
    weights: Option<Vec<f64>>,
}

impl CharClass {
    pub fn new(name: impl Into<String>, members: impl IntoIterator<Item = char>) -> Result<Self, LmError> {
        let name = name.into();
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        for c in members {
            if seen.insert(c) {
                list.push(c);
            }
        }
        if list.is_empty() {
            return Err(LmError::EmptyClass(name));
        }
        Ok(CharClass { name, members: list, weights: None })
    }

    /// Class with an explicit distribution over its members. Weights are normalized.
    pub fn weighted(name: impl Into<String>, members: impl IntoIterator<Item = (char, f64)>) -> Result<Self, LmError> {
        let name = name.into();
        let mut list: Vec<char> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for (c, w) in members {
            if !(w.is_finite() && w > 0.0) {
                return Err(LmError::BadClassWeight(name, c));
            }
            if let Some(i) = list.iter().position(|&m| m == c) {
                weights[i] += w;
            } else {
                list.push(c);
                weights.push(w);
            }
        }
        if list.is_empty() {
            return Err(LmError::EmptyClass(name));
        }
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        Ok(CharClass { name, members: list, weights: Some(weights) })
    }

    pub fn vowels() -> Self {
        Self::new("VOWELS", VOWEL_CHARS.chars()).expect("non-empty")
    }

    pub fn consonants() -> Self {
        Self::new("CONSONANTS", CONSONANT_CHARS.chars()).expect("non-empty")
    }

    pub fn digits() -> Self {
        Self::new("DIGITS", DIGIT_CHARS.chars()).expect("non-empty")
    }

    pub fn symbols() -> Self {
        Self::new("SYMBOLS", SYMBOL_CHARS.chars()).expect("non-empty")
    }

    pub fn letters() -> Self {
        Self::new("LETTERS", VOWEL_CHARS.chars().chain(CONSONANT_CHARS.chars())).expect("non-empty")
    }

    /// Looks up one of the built-in classes by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "VOWELS" => Some(Self::vowels()),
            "CONSONANTS" => Some(Self::consonants()),
            "DIGITS" => Some(Self::digits()),
            "SYMBOLS" => Some(Self::symbols()),
            "LETTERS" => Some(Self::letters()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn members(&self) -> &[char] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.members.contains(&c)
    }

    /// Probability this class assigns to `c` (0 for non-members).
    pub fn member_prob(&self, c: char) -> f64 {
        match self.members.iter().position(|&m| m == c) {
            None => 0.0,
            Some(i) => match &self.weights {
                Some(w) => w[i],
                None => 1.0 / self.members.len() as f64,
            },
        }
    }

    fn is_builtin_equal(&self) -> bool {
        self.weights.is_none() && Self::builtin(&self.name).as_ref() == Some(self)
    }
}

impl fmt::Display for CharClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.name)
    }
}

/// JSON form of a class: either a built-in name or an inline definition.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Named(String),
    Inline {
        name: String,
        members: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<f64>>,
    },
}

impl TryFrom<ClassSpec> for CharClass {
    type Error = LmError;

    fn try_from(spec: ClassSpec) -> Result<Self, Self::Error> {
        match spec {
            ClassSpec::Named(name) => CharClass::builtin(&name).ok_or(LmError::UnknownClass(name)),
            ClassSpec::Inline { name, members, weights: None } => CharClass::new(name, nfc(&members).chars()),
            ClassSpec::Inline { name, members, weights: Some(w) } => {
                let chars: Vec<char> = nfc(&members).chars().collect();
                if chars.len() != w.len() {
                    return Err(LmError::ClassWeightArity(name));
                }
                CharClass::weighted(name, chars.into_iter().zip(w))
            }
        }
    }
}

impl From<CharClass> for ClassSpec {
    fn from(class: CharClass) -> Self {
        if class.is_builtin_equal() {
            return ClassSpec::Named(class.name);
        }
        ClassSpec::Inline {
            members: class.members.iter().collect(),
            name: class.name,
            weights: class.weights,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_classes_partition_letters() {
        let v = CharClass::vowels();
        let c = CharClass::consonants();
        assert!(v.members().iter().all(|&x| !c.contains(x)));
        for ch in 'a'..='z' {
            assert!(v.contains(ch) ^ c.contains(ch), "{ch}");
        }
        assert!(c.contains('ç'));
        assert_eq!(v.len(), 18);
    }

    #[test]
    fn uniform_member_prob() {
        let d = CharClass::digits();
        assert!((d.member_prob('3') - 0.1).abs() < 1e-12);
        assert_eq!(d.member_prob('a'), 0.0);
    }

    #[test]
    fn weighted_class_normalizes() {
        let k = CharClass::weighted("S", [('2', 3.0), ('4', 1.0)]).unwrap();
        assert!((k.member_prob('2') - 0.75).abs() < 1e-12);
        assert!(CharClass::new("E", std::iter::empty()).is_err());
    }

    #[test]
    fn class_json_forms() {
        let v: CharClass = serde_json::from_str("\"VOWELS\"").unwrap();
        assert_eq!(v, CharClass::vowels());
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"VOWELS\"");
        let x: CharClass = serde_json::from_str(r#"{"name":"ab","members":"abba"}"#).unwrap();
        assert_eq!(x.members(), &['a', 'b']);
        assert!(serde_json::from_str::<CharClass>("\"NOPE\"").is_err());
    }

    #[test]
    fn nfc_composes_accents() {
        assert_eq!(char_len(&nfc("e\u{301}t\u{e9}")), 3);
    }
}
