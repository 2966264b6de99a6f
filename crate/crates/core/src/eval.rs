//! Re-ranking of recognizer candidates and corpus-level evaluation.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::channel::{corrupt, CandidateList, ConfusionModel};
use crate::corpus::{categories, Category, MessageRecord};
use crate::metric::{recognition_rate, RrResult};
use crate::model::ScoredModel;
use crate::SimError;

/// Language-model cost of a possibly multi-word string: the sum of the costs of its
/// whitespace-separated tokens, +∞ if any token is rejected.
pub fn lm_cost(lm: &ScoredModel, text: &str) -> f64 {
    let mut total = 0.0;
    let mut any = false;
    for tok in text.split_whitespace() {
        any = true;
        total += lm.score(tok).cost_or_inf();
        if total.is_infinite() {
            break;
        }
    }
    if any {
        total
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub text: String,
    /// Rank of the chosen candidate in the channel list.
    pub index: usize,
    /// The model rejected every candidate and the channel-best was returned.
    pub all_rejected: bool,
}

/// Picks the candidate minimizing `(1−λ)·channel + λ·lm`. Ties go to the earlier
/// channel rank. With `λ = 0` or no model the channel-best is returned unscored.
pub fn decode(cands: &CandidateList, lm: Option<&ScoredModel>, lambda: f64) -> Result<Decoded, SimError> {
    if cands.is_empty() {
        return Err(SimError::EmptyCandidates);
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(SimError::InvalidConfig(format!("lambda {lambda} outside [0,1]")));
    }
    let first = || Decoded { text: cands.candidates[0].text.clone(), index: 0, all_rejected: false };
    let Some(lm) = lm.filter(|_| lambda > 0.0) else {
        return Ok(first());
    };
    let mut best: Option<(usize, f64)> = None;
    for (i, c) in cands.candidates.iter().enumerate() {
        let l = lm_cost(lm, &c.text);
        if l.is_infinite() {
            continue;
        }
        let total = (1.0 - lambda) * c.cost + lambda * l;
        if best.is_none_or(|(_, b)| total < b) {
            best = Some((i, total));
        }
    }
    Ok(match best {
        Some((i, _)) => Decoded { text: cands.candidates[i].text.clone(), index: i, all_rejected: false },
        None => Decoded { all_rejected: true, ..first() },
    })
}

#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub name: String,
    pub lm: Option<ScoredModel>,
    pub lambda: f64,
}

impl EvalConfig {
    pub fn new(name: &str, lm: Option<ScoredModel>, lambda: f64) -> Result<Self, SimError> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(SimError::InvalidConfig(format!("{name}: lambda {lambda} outside [0,1]")));
        }
        if name.is_empty() || name.contains(',') {
            return Err(SimError::InvalidConfig(format!("config name {name:?} must be non-empty without commas")));
        }
        Ok(EvalConfig { name: name.to_string(), lm, lambda })
    }

    /// Channel-only decoding.
    pub fn channel_only(name: &str) -> Self {
        EvalConfig { name: name.to_string(), lm: None, lambda: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub config: String,
    pub category: Category,
    pub n_messages: usize,
    pub n_chars: u64,
    pub rr: RrResult,
    /// Messages where every candidate was rejected by the model.
    pub n_fallbacks: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub rows: Vec<ReportRow>,
}

impl EvalReport {
    pub fn row(&self, config: &str, category: Category) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.config == config && r.category == category)
    }

    pub fn configs(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.config.as_str()) {
                out.push(&r.config);
            }
        }
        out
    }

    pub fn categories(&self) -> Vec<Category> {
        let mut out: Vec<Category> = self.rows.iter().map(|r| r.category).collect();
        out.sort();
        out.dedup();
        out
    }

    /// `config,category,n_messages,n_chars,rr_percent`, percentages to two decimals.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("config,category,n_messages,n_chars,rr_percent\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{},{:.2}", r.config, r.category, r.n_messages, r.n_chars, r.rr.percent());
        }
        s
    }

    /// One line per category, one column per configuration.
    pub fn to_table(&self) -> String {
        let configs = self.configs();
        let cats = self.categories();
        let labels: Vec<String> = cats
            .iter()
            .map(|&c| {
                let r = self.rows.iter().find(|r| r.category == c).expect("row exists");
                format!("{c} ({} msg., {} char.)", r.n_messages, r.n_chars)
            })
            .collect();
        let first = labels.iter().map(String::len).max().unwrap_or(0).max("category".len());
        let widths: Vec<usize> = configs.iter().map(|c| c.chars().count().max(7)).collect();
        let mut s = format!("{:<first$}", "category");
        for (c, w) in configs.iter().zip(&widths) {
            let _ = write!(s, "  {c:>w$}");
        }
        s.push('\n');
        for (cat, label) in cats.iter().zip(&labels) {
            let _ = write!(s, "{label:<first$}");
            for (c, w) in configs.iter().zip(&widths) {
                let cell = self.row(c, *cat).map_or("-".to_string(), |r| format!("{:.2}%", r.rr.percent()));
                let _ = write!(s, "  {cell:>w$}");
            }
            s.push('\n');
        }
        s
    }
}

/// Recognizes every message once through the channel, decodes it under each
/// configuration and reports the character-weighted rate per category.
pub fn evaluate(
    corpus: &[MessageRecord],
    cm: &ConfusionModel,
    configs: &[EvalConfig],
    n_best: usize,
) -> Result<EvalReport, SimError> {
    if corpus.is_empty() {
        return Err(SimError::EmptyCorpus);
    }
    if configs.is_empty() {
        return Err(SimError::NoConfigs);
    }
    let lists: Vec<CandidateList> = corpus
        .par_iter()
        .map(|m| {
            let mut cl = corrupt(&m.label, cm, n_best);
            cl.source = Some(m.id.clone());
            cl
        })
        .collect();
    let cats = categories(corpus);
    let mut rows = Vec::with_capacity(configs.len() * cats.len());
    for cfg in configs {
        let decoded: Vec<(RrResult, bool)> = corpus
            .par_iter()
            .zip(&lists)
            .map(|(m, cl)| {
                let d = decode(cl, cfg.lm.as_ref(), cfg.lambda)?;
                Ok((recognition_rate(&m.label, &d.text)?, d.all_rejected))
            })
            .collect::<Result<_, SimError>>()?;
        for &cat in &cats {
            let mut rr = RrResult { distance: 0, label_len: 0 };
            let (mut n, mut fb) = (0, 0);
            for ((r, rejected), m) in decoded.iter().zip(corpus) {
                if m.category == cat {
                    rr.distance += r.distance;
                    rr.label_len += r.label_len;
                    n += 1;
                    fb += usize::from(*rejected);
                }
            }
            rows.push(ReportRow { config: cfg.name.clone(), category: cat, n_messages: n, n_chars: rr.label_len, rr, n_fallbacks: fb });
        }
    }
    Ok(EvalReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Candidate;
    use crate::skeleton::{build_skeleton_automaton, SkeletonParams};

    fn list(items: &[(&str, f64)]) -> CandidateList {
        CandidateList::new(items.iter().map(|(t, c)| Candidate { text: t.to_string(), cost: *c }).collect()).unwrap()
    }

    #[test]
    fn lambda_zero_takes_channel_best() {
        let lm = ScoredModel::lexicon(&crate::Lexicon::from_words(["ob"])).unwrap();
        let cl = list(&[("ab", 0.1), ("ob", 0.2)]);
        assert_eq!(decode(&cl, Some(&lm), 0.0).unwrap().text, "ab");
        assert_eq!(decode(&cl, Some(&lm), 0.5).unwrap().text, "ob");
    }

    #[test]
    fn skeleton_prefers_consonant_reading() {
        let lm = ScoredModel::automaton(build_skeleton_automaton(&SkeletonParams::default()).unwrap());
        let cl = list(&[("byour", 0.9), ("bjour", 1.0)]);
        let d = decode(&cl, Some(&lm), 0.5).unwrap();
        assert_eq!(d.text, "bjour");
    }

    #[test]
    fn single_candidate_always_wins() {
        let lm = ScoredModel::lexicon(&crate::Lexicon::from_words(["zz"])).unwrap();
        let cl = list(&[("ab", 3.0)]);
        for l in [0.0, 0.3, 1.0] {
            assert_eq!(decode(&cl, Some(&lm), l).unwrap().text, "ab");
        }
    }

    #[test]
    fn all_rejected_falls_back() {
        let lm = ScoredModel::lexicon(&crate::Lexicon::from_words(["zz"])).unwrap();
        let cl = list(&[("ab", 0.1), ("ob", 0.2)]);
        let d = decode(&cl, Some(&lm), 1.0).unwrap();
        assert!(d.all_rejected);
        assert_eq!(d.index, 0);
    }

    #[test]
    fn ties_keep_channel_order() {
        let lm = ScoredModel::uniform('a'..='z').unwrap();
        let cl = list(&[("ab", 0.5), ("ob", 0.5)]);
        assert_eq!(decode(&cl, Some(&lm), 0.7).unwrap().index, 0);
    }

    #[test]
    fn multiword_cost_is_token_sum() {
        let lm = ScoredModel::uniform('a'..='z').unwrap();
        let c = lm_cost(&lm, "ab  c");
        assert!((c - 3.0 * 26f64.ln()).abs() < 1e-12);
        assert!(lm_cost(&lm, "ab 2").is_infinite());
        assert!(lm_cost(&lm, " ").is_infinite());
    }
}
