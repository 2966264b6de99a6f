//! Character-level recognition rate.
//!
//! `D` is an edit distance from the label to the recognized string in which
//! deletions and substitutions cost 1 and insertions are free, so extra
//! characters in the recognized string are never penalized. The rate is
//! `RR = 100 · (#label − D) / #label`, kept as an exact rational.

use std::fmt;

use num_rational::Ratio;

use crate::chars::nfc;
use crate::MetricError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EditCosts {
    pub deletion: u32,
    pub substitution: u32,
    pub insertion: u32,
}

impl EditCosts {
    pub const RECOGNITION: EditCosts = EditCosts { deletion: 1, substitution: 1, insertion: 0 };
}

impl Default for EditCosts {
    fn default() -> Self {
        Self::RECOGNITION
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MetricOptions {
    pub costs: EditCosts,
    /// Compare case-insensitively.
    pub fold_case: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RrResult {
    pub distance: u64,
    pub label_len: u64,
}

impl RrResult {
    /// Exact percentage. Saturates at 0 if a custom cost table lets `D` exceed `#label`.
    pub fn rr(&self) -> Ratio<u64> {
        Ratio::new(100 * self.label_len.saturating_sub(self.distance), self.label_len)
    }

    pub fn percent(&self) -> f64 {
        let r = self.rr();
        *r.numer() as f64 / *r.denom() as f64
    }
}

impl fmt::Display for RrResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2}", self.percent())
    }
}

fn prepare(s: &str, opts: &MetricOptions) -> Vec<char> {
    let s = nfc(s);
    if opts.fold_case {
        s.chars().flat_map(char::to_lowercase).collect()
    } else {
        s.chars().collect()
    }
}

fn distance_chars(label: &[char], cand: &[char], costs: EditCosts) -> u64 {
    let (del, sub, ins) = (costs.deletion as u64, costs.substitution as u64, costs.insertion as u64);
    let mut prev: Vec<u64> = (0..=cand.len() as u64).map(|j| j * ins).collect();
    let mut cur = vec![0u64; cand.len() + 1];
    for (i, &a) in label.iter().enumerate() {
        cur[0] = (i as u64 + 1) * del;
        for (j, &b) in cand.iter().enumerate() {
            let diag = prev[j] + if a == b { 0 } else { sub };
            cur[j + 1] = diag.min(prev[j + 1] + del).min(cur[j] + ins);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[cand.len()]
}

/// Minimum cost of rewriting `label` into `candidate` (insertions free).
pub fn asym_distance(label: &str, candidate: &str) -> Result<u64, MetricError> {
    asym_distance_with(label, candidate, &MetricOptions::default())
}

pub fn asym_distance_with(label: &str, candidate: &str, opts: &MetricOptions) -> Result<u64, MetricError> {
    let l = prepare(label, opts);
    if l.is_empty() {
        return Err(MetricError::EmptyLabel);
    }
    Ok(distance_chars(&l, &prepare(candidate, opts), opts.costs))
}

pub fn recognition_rate(label: &str, candidate: &str) -> Result<RrResult, MetricError> {
    recognition_rate_with(label, candidate, &MetricOptions::default())
}

pub fn recognition_rate_with(label: &str, candidate: &str, opts: &MetricOptions) -> Result<RrResult, MetricError> {
    let l = prepare(label, opts);
    if l.is_empty() {
        return Err(MetricError::EmptyLabel);
    }
    let distance = distance_chars(&l, &prepare(candidate, opts), opts.costs);
    Ok(RrResult { distance, label_len: l.len() as u64 })
}

/// Character-weighted (micro) average over pairs.
pub fn corpus_rr<L: AsRef<str>, C: AsRef<str>>(pairs: &[(L, C)]) -> Result<RrResult, MetricError> {
    corpus_rr_with(pairs, &MetricOptions::default())
}

pub fn corpus_rr_with<L: AsRef<str>, C: AsRef<str>>(pairs: &[(L, C)], opts: &MetricOptions) -> Result<RrResult, MetricError> {
    if pairs.is_empty() {
        return Err(MetricError::EmptyCorpus);
    }
    let mut acc = RrResult { distance: 0, label_len: 0 };
    for (l, c) in pairs {
        let r = recognition_rate_with(l.as_ref(), c.as_ref(), opts)?;
        acc.distance += r.distance;
        acc.label_len += r.label_len;
    }
    Ok(acc)
}

/// Unweighted mean of per-pair rates.
pub fn corpus_rr_macro<L: AsRef<str>, C: AsRef<str>>(pairs: &[(L, C)]) -> Result<Ratio<u64>, MetricError> {
    if pairs.is_empty() {
        return Err(MetricError::EmptyCorpus);
    }
    let mut sum = Ratio::from_integer(0u64);
    for (l, c) in pairs {
        sum += recognition_rate(l.as_ref(), c.as_ref())?.rr();
    }
    Ok(sum / pairs.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_with_insertion() {
        assert_eq!(asym_distance("bjr", "loj.t").unwrap(), 2);
        let r = recognition_rate("bjr", "loj.t").unwrap();
        assert_eq!(r.rr(), Ratio::new(100, 3));
        assert_eq!(r.to_string(), "33.33");
    }

    #[test]
    fn identity_and_free_insertions() {
        assert_eq!(asym_distance("abc", "abc").unwrap(), 0);
        assert_eq!(asym_distance("abc", "xaxbxcx").unwrap(), 0);
        assert_eq!(recognition_rate("abc", "abc").unwrap().rr(), Ratio::from_integer(100));
        assert_eq!(recognition_rate("abc", "xyz").unwrap().rr(), Ratio::from_integer(0));
        assert_eq!(recognition_rate("abc", "").unwrap().rr(), Ratio::from_integer(0));
    }

    #[test]
    fn not_symmetric() {
        assert_eq!(asym_distance("a", "ab").unwrap(), 0);
        assert_eq!(asym_distance("ab", "a").unwrap(), 1);
    }

    #[test]
    fn empty_label() {
        assert_eq!(asym_distance("", "x"), Err(MetricError::EmptyLabel));
        assert_eq!(corpus_rr::<&str, &str>(&[]), Err(MetricError::EmptyCorpus));
    }

    #[test]
    fn accents_are_single_characters() {
        let r = recognition_rate("e\u{301}te\u{301}", "été").unwrap();
        assert_eq!(r.label_len, 3);
        assert_eq!(r.distance, 0);
    }

    #[test]
    fn case_folding_option() {
        let opts = MetricOptions { fold_case: true, ..Default::default() };
        assert_eq!(asym_distance_with("Bjr", "bjr", &opts).unwrap(), 0);
        assert_eq!(asym_distance("Bjr", "bjr").unwrap(), 1);
    }

    #[test]
    fn micro_and_macro() {
        let pairs = [("bjr", "loj.t"), ("bjr", "bjr")];
        assert_eq!(corpus_rr(&pairs).unwrap().rr(), Ratio::new(200, 3));
        let uneven = [("a", "x"), ("abc", "abc")];
        assert_eq!(corpus_rr(&uneven).unwrap().rr(), Ratio::from_integer(75));
        assert_eq!(corpus_rr_macro(&uneven).unwrap(), Ratio::from_integer(50));
    }
}
