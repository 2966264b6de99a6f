//! A noisy channel standing in for a handwriting recognizer.
//!
//! For each message the channel draws one corrupted reading of the label (the
//! "ink"), then builds a per-position lattice of the characters that could have
//! produced each observed glyph, weighted by their posterior under the confusion
//! model. The n-best list is the exact k best paths through that lattice.
//! Everything is seeded by `(seed, label)`, so results never depend on the order
//! in which messages are processed.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::default_confusions;
use crate::SimError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfusionSpec {
    pub p_correct: f64,
    pub p_delete: f64,
    pub p_insert: f64,
    pub seed: u64,
    /// Symmetric confusable pairs, each a two-character string such as `"ao"`.
    pub confusions: Vec<String>,
}

impl Default for ConfusionSpec {
    fn default() -> Self {
        ConfusionSpec {
            p_correct: 0.9,
            p_delete: 0.02,
            p_insert: 0.02,
            seed: 0,
            confusions: default_confusions().iter().map(|(a, b)| format!("{a}{b}")).collect(),
        }
    }
}

/// Per-character substitution model plus structural noise.
///
/// A character with confusable partners is read correctly with probability
/// `p_correct` and otherwise as one of its partners, uniformly. Characters with no
/// partner are always read correctly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfusionSpec", into = "ConfusionSpec")]
pub struct ConfusionModel {
    spec: ConfusionSpec,
    partners: BTreeMap<char, Vec<char>>,
    alphabet: Vec<char>,
}

impl TryFrom<ConfusionSpec> for ConfusionModel {
    type Error = SimError;

    fn try_from(spec: ConfusionSpec) -> Result<Self, SimError> {
        ConfusionModel::new(spec)
    }
}

impl From<ConfusionModel> for ConfusionSpec {
    fn from(m: ConfusionModel) -> Self {
        m.spec
    }
}

impl Default for ConfusionModel {
    fn default() -> Self {
        ConfusionModel::new(ConfusionSpec::default()).expect("default channel is valid")
    }
}

impl ConfusionModel {
    pub fn new(spec: ConfusionSpec) -> Result<Self, SimError> {
        for (name, p) in [("p_correct", spec.p_correct), ("p_delete", spec.p_delete), ("p_insert", spec.p_insert)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(SimError::InvalidChannel(format!("{name} = {p} is outside [0,1]")));
            }
        }
        if spec.p_delete + spec.p_insert > 1.0 {
            return Err(SimError::InvalidChannel("p_delete + p_insert exceeds 1".into()));
        }
        let mut partners: BTreeMap<char, BTreeSet<char>> = BTreeMap::new();
        for pair in &spec.confusions {
            let cs: Vec<char> = pair.chars().collect();
            if cs.len() != 2 || cs[0] == cs[1] {
                return Err(SimError::InvalidChannel(format!("confusion {pair:?} must be two distinct characters")));
            }
            partners.entry(cs[0]).or_default().insert(cs[1]);
            partners.entry(cs[1]).or_default().insert(cs[0]);
        }
        let alphabet = partners.keys().copied().collect();
        let partners = partners.into_iter().map(|(c, s)| (c, s.into_iter().collect())).collect();
        Ok(ConfusionModel { spec, partners, alphabet })
    }

    /// A channel that never corrupts anything.
    pub fn noise_free() -> Self {
        ConfusionModel::new(ConfusionSpec { p_correct: 1.0, p_delete: 0.0, p_insert: 0.0, seed: 0, confusions: Vec::new() })
            .expect("valid")
    }

    pub fn from_json(text: &str) -> Result<Self, SimError> {
        serde_json::from_str(text).map_err(|e| SimError::InvalidChannel(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SimError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| SimError::InvalidChannel(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn spec(&self) -> &ConfusionSpec {
        &self.spec
    }

    pub fn seed(&self) -> u64 {
        self.spec.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.spec.seed = seed;
        self
    }

    /// `P(observed | written)`.
    pub fn substitution_prob(&self, written: char, observed: char) -> f64 {
        match self.partners.get(&written) {
            None => f64::from(u8::from(written == observed)),
            Some(_) if written == observed => self.spec.p_correct,
            Some(ps) if ps.contains(&observed) => (1.0 - self.spec.p_correct) / ps.len() as f64,
            Some(_) => 0.0,
        }
    }

    /// Distribution of readings for a written character.
    pub fn readings(&self, written: char) -> Vec<(char, f64)> {
        let mut out = vec![(written, self.substitution_prob(written, written))];
        if let Some(ps) = self.partners.get(&written) {
            out.extend(ps.iter().map(|&p| (p, self.substitution_prob(written, p))));
        }
        out.retain(|(_, p)| *p > 0.0);
        out
    }

    /// Characters that could have been written given an observed one, with
    /// normalized posterior weights (uniform prior).
    pub fn sources(&self, observed: char) -> Vec<(char, f64)> {
        let mut cands = vec![(observed, self.substitution_prob(observed, observed))];
        if let Some(ps) = self.partners.get(&observed) {
            cands.extend(ps.iter().map(|&w| (w, self.substitution_prob(w, observed))));
        }
        cands.retain(|(_, p)| *p > 0.0);
        let z: f64 = cands.iter().map(|(_, p)| p).sum();
        cands.iter_mut().for_each(|(_, p)| *p /= z);
        cands
    }

    fn rng_for(&self, label: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(fnv1a(self.spec.seed, label.as_bytes()))
    }

    /// Draws one corrupted reading of `label`. Whitespace passes through untouched;
    /// each other position gets at most one structural edit (deletion or insertion).
    pub fn observe(&self, label: &str) -> String {
        let mut rng = self.rng_for(label);
        let mut out = String::with_capacity(label.len());
        for c in label.chars() {
            if c.is_whitespace() {
                out.push(c);
                continue;
            }
            if rng.gen::<f64>() < self.spec.p_delete {
                continue;
            }
            out.push(sample(&self.readings(c), rng.gen::<f64>()));
            if !self.alphabet.is_empty() && rng.gen::<f64>() < self.spec.p_insert {
                out.push(self.alphabet[rng.gen_range(0..self.alphabet.len())]);
            }
        }
        out
    }

    /// Per-position alternatives for an observed string. `None` marks the option
    /// that the observed glyph was spurious.
    pub fn lattice(&self, observed: &str) -> Lattice {
        let columns = observed
            .chars()
            .map(|o| {
                if o.is_whitespace() {
                    return vec![(Some(o), 1.0)];
                }
                let keep = if self.alphabet.is_empty() { 1.0 } else { 1.0 - self.spec.p_insert };
                let mut col: Vec<(Option<char>, f64)> = self.sources(o).into_iter().map(|(c, p)| (Some(c), p * keep)).collect();
                if keep < 1.0 {
                    col.push((None, 1.0 - keep));
                }
                let seed = self.spec.seed;
                col.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| tie_key(seed, a.0).cmp(&tie_key(seed, b.0))));
                col
            })
            .collect();
        Lattice { columns }
    }
}

fn sample(dist: &[(char, f64)], u: f64) -> char {
    let mut acc = 0.0;
    for &(c, p) in dist {
        acc += p;
        if u < acc {
            return c;
        }
    }
    dist.last().expect("non-empty distribution").0
}

fn fnv1a(seed: u64, bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in seed.to_le_bytes().iter().chain(bytes) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn tie_key(seed: u64, c: Option<char>) -> u64 {
    let code = c.map_or(u32::MAX, u32::from);
    fnv1a(seed, &code.to_le_bytes())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    /// Alternatives per observed position, most probable first.
    pub columns: Vec<Vec<(Option<char>, f64)>>,
}

impl Lattice {
    pub fn num_paths(&self) -> usize {
        self.columns.iter().map(Vec::len).try_fold(1usize, usize::checked_mul).unwrap_or(usize::MAX)
    }

    /// The `n` cheapest distinct strings, each with the cost of its best path.
    /// Ties keep lattice order (earlier alternatives first).
    pub fn k_best(&self, n: usize) -> Vec<Candidate> {
        // (text, cost, alternative ranks for tie-breaking)
        let mut beam: Vec<(String, f64, Vec<usize>)> = vec![(String::new(), 0.0, Vec::new())];
        for col in &self.columns {
            let mut next: Vec<(String, f64, Vec<usize>)> = Vec::with_capacity(beam.len() * col.len());
            for (text, cost, ranks) in &beam {
                for (r, &(c, p)) in col.iter().enumerate() {
                    let mut t = text.clone();
                    if let Some(c) = c {
                        t.push(c);
                    }
                    let mut rk = ranks.clone();
                    rk.push(r);
                    next.push((t, cost - p.ln(), rk));
                }
            }
            beam = top_distinct(next, n);
        }
        beam.into_iter().map(|(text, cost, _)| Candidate { text, cost: cost.max(0.0) }).collect()
    }
}

fn top_distinct(mut items: Vec<(String, f64, Vec<usize>)>, n: usize) -> Vec<(String, f64, Vec<usize>)> {
    items.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.2.cmp(&b.2)));
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    for it in items {
        if out.len() == n {
            break;
        }
        if seen.insert(it.0.clone()) {
            out.push(it);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub text: String,
    /// `−ln` of the path probability through the lattice.
    pub cost: f64,
}

/// Recognizer output: candidates sorted by ascending channel cost.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateList {
    pub candidates: Vec<Candidate>,
    /// The corrupted reading the lattice was built around.
    pub observed: String,
    /// Id of the message the list was produced for, when known.
    pub source: Option<String>,
}

impl CandidateList {
    pub fn new(candidates: Vec<Candidate>) -> Result<Self, SimError> {
        if candidates.is_empty() {
            return Err(SimError::EmptyCandidates);
        }
        let mut candidates = candidates;
        candidates.sort_by(|a, b| a.cost.total_cmp(&b.cost));
        let observed = candidates[0].text.clone();
        Ok(CandidateList { candidates, observed, source: None })
    }

    pub fn best(&self) -> &Candidate {
        &self.candidates[0]
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn texts(&self) -> Vec<&str> {
        self.candidates.iter().map(|c| c.text.as_str()).collect()
    }
}

/// Simulated recognition of `label`: corrupt it once, then return the `n_best`
/// best readings of the corrupted ink.
pub fn corrupt(label: &str, cm: &ConfusionModel, n_best: usize) -> CandidateList {
    let observed = cm.observe(label);
    let mut candidates = cm.lattice(&observed).k_best(n_best.max(1));
    if candidates.is_empty() {
        candidates.push(Candidate { text: observed.clone(), cost: 0.0 });
    }
    CandidateList { candidates, observed, source: None }
}
