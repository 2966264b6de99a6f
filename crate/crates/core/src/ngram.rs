//! Character n-gram models with add-k smoothing.

use std::collections::{BTreeSet, HashMap};

use crate::model::Score;
use crate::LmError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Start,
    Char(char),
    End,
}

/// Counts are collected over `order - 1` symbol contexts padded with [`Symbol::Start`];
/// every string contributes an explicit [`Symbol::End`] event.
#[derive(Debug, Clone)]
pub struct NGramModel {
    order: usize,
    k: f64,
    alphabet: BTreeSet<char>,
    counts: HashMap<Vec<Symbol>, HashMap<Symbol, u64>>,
    totals: HashMap<Vec<Symbol>, u64>,
}

impl NGramModel {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    /// Smoothed `P(next | context)`; the context is truncated or padded to `order - 1` symbols.
    pub fn prob(&self, context: &[Symbol], next: Symbol) -> f64 {
        match next {
            Symbol::Start => return 0.0,
            Symbol::Char(c) if !self.alphabet.contains(&c) => return 0.0,
            _ => {}
        }
        let ctx = self.fit_context(context);
        let count = self.counts.get(&ctx).and_then(|m| m.get(&next)).copied().unwrap_or(0);
        let total = self.totals.get(&ctx).copied().unwrap_or(0);
        (count as f64 + self.k) / (total as f64 + self.k * (self.alphabet.len() + 1) as f64)
    }

    fn fit_context(&self, context: &[Symbol]) -> Vec<Symbol> {
        let n = self.order - 1;
        let mut ctx: Vec<Symbol> = context.iter().rev().take(n).rev().copied().collect();
        while ctx.len() < n {
            ctx.insert(0, Symbol::Start);
        }
        ctx
    }

    /// Events of `s`: each character then the end marker, with their contexts.
    fn events(order: usize, s: &str) -> Vec<(Vec<Symbol>, Symbol)> {
        let mut hist: Vec<Symbol> = vec![Symbol::Start; order - 1];
        let mut out = Vec::new();
        for next in s.chars().map(Symbol::Char).chain(std::iter::once(Symbol::End)) {
            let ctx = hist[hist.len() + 1 - order..].to_vec();
            out.push((ctx, next));
            hist.push(next);
        }
        out
    }

    pub fn score(&self, s: &str) -> Score {
        let mut lp = 0.0;
        for (ctx, next) in Self::events(self.order, s) {
            let p = self.prob(&ctx, next);
            if p <= 0.0 {
                return Score::Reject;
            }
            lp += p.ln();
        }
        Score::from_log_prob(lp)
    }

    /// Distinct contexts seen during training.
    pub fn contexts(&self) -> impl Iterator<Item = &[Symbol]> {
        self.totals.keys().map(Vec::as_slice)
    }
}

/// Trains over the characters seen in `corpus`.
pub fn train_ngram<S: AsRef<str>>(corpus: &[S], order: usize, k: f64) -> Result<NGramModel, LmError> {
    let alphabet: BTreeSet<char> = corpus.iter().flat_map(|s| s.as_ref().chars()).collect();
    train_ngram_with_alphabet(corpus, order, k, alphabet)
}

/// Trains with an explicit alphabet (extended with every corpus character).
pub fn train_ngram_with_alphabet<S: AsRef<str>>(
    corpus: &[S],
    order: usize,
    k: f64,
    alphabet: BTreeSet<char>,
) -> Result<NGramModel, LmError> {
    if corpus.is_empty() {
        return Err(LmError::EmptyCorpus);
    }
    if order == 0 {
        return Err(LmError::BadOrder);
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(LmError::BadSmoothing(k));
    }
    let mut alphabet = alphabet;
    let mut counts: HashMap<Vec<Symbol>, HashMap<Symbol, u64>> = HashMap::new();
    let mut totals: HashMap<Vec<Symbol>, u64> = HashMap::new();
    for s in corpus {
        alphabet.extend(s.as_ref().chars());
        for (ctx, next) in NGramModel::events(order, s.as_ref()) {
            *counts.entry(ctx.clone()).or_default().entry(next).or_insert(0) += 1;
            *totals.entry(ctx).or_insert(0) += 1;
        }
    }
    Ok(NGramModel { order, k, alphabet, counts, totals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unigram_counts_end_marker() {
        // a:1 b:1 end:1 → (1+1)/(3+3)
        let m = train_ngram(&["ab"], 1, 1.0).unwrap();
        assert!((m.prob(&[], Symbol::Char('a')) - 1.0 / 3.0).abs() < 1e-12);
        assert!((m.prob(&[], Symbol::End) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bigram_padded_context() {
        let m = train_ngram(&["aa"], 2, 1.0).unwrap();
        let p = m.prob(&[Symbol::Char('a')], Symbol::Char('a'));
        assert!((p - 0.5).abs() < 1e-12);
        // after Start: a seen once, end never: (1+1)/(1+2)
        assert!((m.prob(&[], Symbol::Char('a')) - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn unseen_character_rejected() {
        let m = train_ngram(&["abc"], 2, 0.5).unwrap();
        assert_eq!(m.score("abz"), Score::Reject);
        assert!(m.score("cab").is_accept());
    }

    #[test]
    fn errors() {
        assert!(matches!(train_ngram::<&str>(&[], 2, 1.0), Err(LmError::EmptyCorpus)));
        assert!(matches!(train_ngram(&["a"], 0, 1.0), Err(LmError::BadOrder)));
        assert!(matches!(train_ngram(&["a"], 2, 0.0), Err(LmError::BadSmoothing(_))));
    }

    #[test]
    fn score_matches_product_of_conditionals() {
        let m = train_ngram(&["abab", "ba"], 3, 0.1).unwrap();
        let s = "aba";
        let ctxs = [
            vec![Symbol::Start, Symbol::Start],
            vec![Symbol::Start, Symbol::Char('a')],
            vec![Symbol::Char('a'), Symbol::Char('b')],
            vec![Symbol::Char('b'), Symbol::Char('a')],
        ];
        let nexts = [Symbol::Char('a'), Symbol::Char('b'), Symbol::Char('a'), Symbol::End];
        let lp: f64 = ctxs.iter().zip(nexts).map(|(c, n)| m.prob(c, n).ln()).sum();
        assert!((m.score(s).cost().unwrap() + lp).abs() < 1e-12);
    }
}
