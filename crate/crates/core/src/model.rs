//! Scoring contract shared by every language model, plus linear interpolation.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::automaton::WeightedAutomaton;
use crate::lexicon::Lexicon;
use crate::ngram::NGramModel;
use crate::LmError;

/// Negative natural log of a probability, or rejection when the probability is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Score {
    Cost(f64),
    Reject,
}

impl Score {
    pub fn from_log_prob(lp: f64) -> Self {
        if lp == f64::NEG_INFINITY || lp.is_nan() {
            Score::Reject
        } else {
            // rounding can push log(1) slightly above zero
            Score::Cost((-lp).max(0.0))
        }
    }

    pub fn from_prob(p: f64) -> Self {
        if p > 0.0 {
            Self::from_log_prob(p.ln())
        } else {
            Score::Reject
        }
    }

    pub fn cost(self) -> Option<f64> {
        match self {
            Score::Cost(c) => Some(c),
            Score::Reject => None,
        }
    }

    /// Cost with rejection mapped to +∞.
    pub fn cost_or_inf(self) -> f64 {
        self.cost().unwrap_or(f64::INFINITY)
    }

    pub fn probability(self) -> f64 {
        self.cost().map_or(0.0, |c| (-c).exp())
    }

    pub fn is_accept(self) -> bool {
        matches!(self, Score::Cost(_))
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Cost(c) => write!(f, "{c:.6}"),
            Score::Reject => write!(f, "REJECT"),
        }
    }
}

/// Unigram distribution over a word list; words outside it are rejected.
#[derive(Debug, Clone)]
pub struct LexiconModel {
    log_probs: HashMap<String, f64>,
}

impl LexiconModel {
    /// Each word gets mass proportional to `max(freq, 1)`, so unweighted lexicons are uniform.
    pub fn new(lex: &Lexicon) -> Result<Self, LmError> {
        if lex.is_empty() {
            return Err(LmError::EmptyLexicon);
        }
        let total: f64 = lex.iter().map(|(_, f)| f.max(1) as f64).sum();
        let log_probs = lex.iter().map(|(w, f)| (w.to_string(), (f.max(1) as f64 / total).ln())).collect();
        Ok(LexiconModel { log_probs })
    }

    pub fn len(&self) -> usize {
        self.log_probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_probs.is_empty()
    }

    pub fn score(&self, s: &str) -> Score {
        self.log_probs.get(s).map_or(Score::Reject, |&lp| Score::from_log_prob(lp))
    }
}

/// Independent uniform characters: `P(s) = |A|^-len(s)`, rejecting characters outside `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformModel {
    alphabet: Vec<char>,
}

impl UniformModel {
    pub fn new(alphabet: impl IntoIterator<Item = char>) -> Result<Self, LmError> {
        let mut alphabet: Vec<char> = alphabet.into_iter().collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet.is_empty() {
            return Err(LmError::EmptyAlphabet);
        }
        Ok(UniformModel { alphabet })
    }

    pub fn score(&self, s: &str) -> Score {
        let mut n = 0usize;
        for c in s.chars() {
            if self.alphabet.binary_search(&c).is_err() {
                return Score::Reject;
            }
            n += 1;
        }
        Score::Cost(n as f64 * (self.alphabet.len() as f64).ln())
    }
}

#[derive(Debug, Clone)]
pub enum ScoredModel {
    Automaton(Arc<WeightedAutomaton>),
    NGram(Arc<NGramModel>),
    Lexicon(Arc<LexiconModel>),
    Uniform(UniformModel),
    /// Linear mixture `Σ λ_i P_i(s)`; built by [`interpolate`].
    Mixture(Vec<(ScoredModel, f64)>),
}

impl ScoredModel {
    pub fn automaton(a: WeightedAutomaton) -> Self {
        ScoredModel::Automaton(Arc::new(a))
    }

    pub fn ngram(m: NGramModel) -> Self {
        ScoredModel::NGram(Arc::new(m))
    }

    pub fn lexicon(lex: &Lexicon) -> Result<Self, LmError> {
        Ok(ScoredModel::Lexicon(Arc::new(LexiconModel::new(lex)?)))
    }

    pub fn uniform(alphabet: impl IntoIterator<Item = char>) -> Result<Self, LmError> {
        Ok(ScoredModel::Uniform(UniformModel::new(alphabet)?))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ScoredModel::Automaton(_) => "automaton",
            ScoredModel::NGram(_) => "ngram",
            ScoredModel::Lexicon(_) => "lexicon",
            ScoredModel::Uniform(_) => "uniform",
            ScoredModel::Mixture(_) => "mixture",
        }
    }

    /// `−ln P(s)`. The empty string is always rejected.
    pub fn score(&self, s: &str) -> Score {
        if s.is_empty() {
            return Score::Reject;
        }
        match self {
            ScoredModel::Automaton(a) => a.score(s),
            ScoredModel::NGram(m) => m.score(s),
            ScoredModel::Lexicon(l) => l.score(s),
            ScoredModel::Uniform(u) => u.score(s),
            ScoredModel::Mixture(parts) => {
                let logs: Vec<f64> = parts
                    .iter()
                    .filter(|(_, w)| *w > 0.0)
                    .filter_map(|(m, w)| m.score(s).cost().map(|c| w.ln() - c))
                    .collect();
                Score::from_log_prob(log_sum_exp(&logs))
            }
        }
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Mixes models linearly. Weights must be non-negative and sum to one.
pub fn interpolate(models: Vec<(ScoredModel, f64)>) -> Result<ScoredModel, LmError> {
    if models.is_empty() {
        return Err(LmError::BadWeights("no components".into()));
    }
    let total: f64 = models.iter().map(|(_, w)| w).sum();
    if models.iter().any(|(_, w)| !(w.is_finite() && *w >= 0.0)) || (total - 1.0).abs() > 1e-9 {
        return Err(LmError::BadWeights(format!("weights must be non-negative and sum to 1 (got {total})")));
    }
    Ok(ScoredModel::Mixture(models))
}
