//! Probabilistic acceptors over characters.
//!
//! A [`WeightedAutomaton`] is built from an [`AutomatonBuilder`] (or compiled from a
//! [`StochasticRegex`]) and is immutable afterwards. Construction checks that every
//! state is a proper distribution (outgoing mass plus final mass equals one), trims
//! unreachable states and precomputes an epsilon-free view used for scoring.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::chars::CharClass;
use crate::model::Score;
use crate::regex::{StochasticRegex, PROB_TOLERANCE};
use crate::LmError;

pub type StateId = usize;

#[derive(Debug, Clone, PartialEq)]
pub enum Label {
    Epsilon,
    Char(char),
    /// Consumes one member of the class, distributing the arc mass by the class distribution.
    Class(Arc<CharClass>),
}

impl Label {
    fn emit_prob(&self, c: char) -> f64 {
        match self {
            Label::Epsilon => 0.0,
            Label::Char(x) => {
                if *x == c {
                    1.0
                } else {
                    0.0
                }
            }
            Label::Class(k) => k.member_prob(c),
        }
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self, Label::Epsilon)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Epsilon => write!(f, "ε"),
            Label::Char(c) => write!(f, "{c}"),
            Label::Class(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub label: Label,
    pub prob: f64,
    pub to: StateId,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct State {
    pub transitions: Vec<Transition>,
    pub final_prob: f64,
}

impl State {
    fn mass(&self) -> f64 {
        self.transitions.iter().map(|t| t.prob).sum::<f64>() + self.final_prob
    }
}

#[derive(Debug, Default, Clone)]
pub struct AutomatonBuilder {
    states: Vec<State>,
}

impl AutomatonBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_state(&mut self) -> StateId {
        self.states.push(State::default());
        self.states.len() - 1
    }

    /// Adds an arc. Arcs with zero probability are dropped.
    pub fn add_transition(&mut self, from: StateId, label: Label, prob: f64, to: StateId) {
        if prob > 0.0 {
            self.states[from].transitions.push(Transition { label, prob, to });
        }
    }

    pub fn set_final(&mut self, state: StateId, prob: f64) {
        self.states[state].final_prob = prob;
    }

    pub fn build(self, start: StateId) -> Result<WeightedAutomaton, LmError> {
        WeightedAutomaton::from_states(self.states, start)
    }
}

#[derive(Debug, Clone)]
pub struct WeightedAutomaton {
    states: Vec<State>,
    start: StateId,
    // epsilon-free view: emitting arcs and final mass after epsilon closure
    closed_arcs: Vec<Vec<Transition>>,
    closed_final: Vec<f64>,
}

impl WeightedAutomaton {
    fn from_states(states: Vec<State>, start: StateId) -> Result<Self, LmError> {
        if start >= states.len() {
            return Err(LmError::InvalidAutomaton("start state out of range".into()));
        }
        for (i, s) in states.iter().enumerate() {
            if s.transitions.iter().any(|t| t.to >= states.len()) {
                return Err(LmError::InvalidAutomaton(format!("state {i} has an arc to a missing state")));
            }
            if s.transitions.iter().any(|t| !(t.prob.is_finite() && t.prob > 0.0)) || !(0.0..=1.0).contains(&s.final_prob) {
                return Err(LmError::InvalidAutomaton(format!("state {i} has an invalid probability")));
            }
            let m = s.mass();
            if (m - 1.0).abs() > PROB_TOLERANCE {
                return Err(LmError::InvalidAutomaton(format!("state {i} outgoing mass {m} is not 1")));
            }
        }
        let (states, start) = trim(states, start)?;
        let (closed_arcs, closed_final) = remove_epsilons(&states)?;
        Ok(WeightedAutomaton { states, start, closed_arcs, closed_final })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    /// Largest deviation from one of any state's outgoing mass, over both the
    /// constructed automaton and its epsilon-free view.
    pub fn max_mass_deviation(&self) -> f64 {
        let raw = self.states.iter().map(|s| (s.mass() - 1.0).abs());
        let closed = self
            .closed_arcs
            .iter()
            .zip(&self.closed_final)
            .map(|(arcs, f)| (arcs.iter().map(|t| t.prob).sum::<f64>() + f - 1.0).abs());
        raw.chain(closed).fold(0.0, f64::max)
    }

    pub fn is_stochastic(&self, tol: f64) -> bool {
        self.max_mass_deviation() <= tol
    }

    /// Total probability of `s` summed over all accepting paths, as a cost.
    pub fn score(&self, s: &str) -> Score {
        let mut fw = Forward::new(self);
        for c in s.chars() {
            if !fw.step(self, c) {
                return Score::Reject;
            }
        }
        let p: f64 = fw.alpha.iter().zip(&self.closed_final).map(|(a, f)| a * f).sum();
        if p > 0.0 {
            Score::from_log_prob(fw.log_scale + p.ln())
        } else {
            Score::Reject
        }
    }

    pub fn probability(&self, s: &str) -> f64 {
        self.score(s).probability()
    }

    pub fn accepts(&self, s: &str) -> bool {
        self.score(s).is_accept()
    }

    /// Total probability of all strings that begin with `prefix`.
    pub fn prefix_probability(&self, prefix: &str) -> f64 {
        let mut fw = Forward::new(self);
        for c in prefix.chars() {
            if !fw.step(self, c) {
                return 0.0;
            }
        }
        fw.alpha.iter().sum::<f64>() * fw.log_scale.exp()
    }

    /// Every string over `alphabet` of length at most `max_len` with non-zero
    /// probability, in length-then-alphabet order.
    pub fn enumerate(&self, alphabet: &[char], max_len: usize) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        let mut layer: Vec<(String, Vec<f64>)> = vec![(String::new(), unit(self.states.len(), self.start))];
        for len in 0..=max_len {
            for (s, alpha) in &layer {
                let p: f64 = alpha.iter().zip(&self.closed_final).map(|(a, f)| a * f).sum();
                if p > 0.0 {
                    out.push((s.clone(), p));
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (s, alpha) in &layer {
                for &c in alphabet {
                    let a = self.advance(alpha, c);
                    if a.iter().any(|&x| x > 0.0) {
                        let mut t = s.clone();
                        t.push(c);
                        next.push((t, a));
                    }
                }
            }
            layer = next;
        }
        out
    }

    fn advance(&self, alpha: &[f64], c: char) -> Vec<f64> {
        let mut next = vec![0.0; alpha.len()];
        for (s, &a) in alpha.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for t in &self.closed_arcs[s] {
                let e = t.label.emit_prob(c);
                if e > 0.0 {
                    next[t.to] += a * t.prob * e;
                }
            }
        }
        next
    }

    pub fn compile(regex: &StochasticRegex) -> Result<Self, LmError> {
        compile(regex)
    }
}

struct Forward {
    alpha: Vec<f64>,
    log_scale: f64,
}

impl Forward {
    fn new(a: &WeightedAutomaton) -> Self {
        Forward { alpha: unit(a.states.len(), a.start), log_scale: 0.0 }
    }

    fn step(&mut self, a: &WeightedAutomaton, c: char) -> bool {
        let mut next = a.advance(&self.alpha, c);
        let z: f64 = next.iter().sum();
        if z <= 0.0 {
            return false;
        }
        next.iter_mut().for_each(|x| *x /= z);
        self.alpha = next;
        self.log_scale += z.ln();
        true
    }
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

fn trim(states: Vec<State>, start: StateId) -> Result<(Vec<State>, StateId), LmError> {
    let n = states.len();
    let mut reach = vec![false; n];
    let mut queue = VecDeque::from([start]);
    reach[start] = true;
    while let Some(s) = queue.pop_front() {
        for t in &states[s].transitions {
            if !reach[t.to] {
                reach[t.to] = true;
                queue.push_back(t.to);
            }
        }
    }
    let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for (s, st) in states.iter().enumerate() {
        for t in &st.transitions {
            rev[t.to].push(s);
        }
    }
    let mut coreach = vec![false; n];
    let mut queue: VecDeque<StateId> = (0..n).filter(|&s| states[s].final_prob > 0.0).collect();
    queue.iter().for_each(|&s| coreach[s] = true);
    while let Some(s) = queue.pop_front() {
        for &p in &rev[s] {
            if !coreach[p] {
                coreach[p] = true;
                queue.push_back(p);
            }
        }
    }
    if let Some(bad) = (0..n).find(|&s| reach[s] && !coreach[s]) {
        return Err(LmError::InvalidAutomaton(format!("state {bad} cannot reach a final state")));
    }
    let mut remap = vec![usize::MAX; n];
    let mut kept = Vec::new();
    for (s, st) in states.into_iter().enumerate() {
        if reach[s] {
            remap[s] = kept.len();
            kept.push(st);
        }
    }
    for st in &mut kept {
        for t in &mut st.transitions {
            t.to = remap[t.to];
        }
    }
    Ok((kept, remap[start]))
}

/// Computes the epsilon closure `(I - E)^-1` and folds it into emitting arcs and final mass.
fn remove_epsilons(states: &[State]) -> Result<(Vec<Vec<Transition>>, Vec<f64>), LmError> {
    let n = states.len();
    let has_eps = states.iter().any(|s| s.transitions.iter().any(|t| t.label.is_epsilon()));
    if !has_eps {
        let arcs = states.iter().map(|s| s.transitions.clone()).collect();
        let finals = states.iter().map(|s| s.final_prob).collect();
        return Ok((arcs, finals));
    }
    let mut m = vec![vec![0.0; n]; n];
    for (i, s) in states.iter().enumerate() {
        m[i][i] += 1.0;
        for t in s.transitions.iter().filter(|t| t.label.is_epsilon()) {
            m[i][t.to] -= t.prob;
        }
    }
    let closure = invert(m).ok_or_else(|| LmError::InvalidAutomaton("epsilon cycle with unit mass".into()))?;
    let mut arcs = vec![Vec::new(); n];
    let mut finals = vec![0.0; n];
    for s in 0..n {
        for (t, row) in states.iter().enumerate() {
            let w = closure[s][t];
            if w.abs() < 1e-300 {
                continue;
            }
            finals[s] += w * row.final_prob;
            for tr in row.transitions.iter().filter(|t| !t.label.is_epsilon()) {
                arcs[s].push(Transition { label: tr.label.clone(), prob: w * tr.prob, to: tr.to });
            }
        }
    }
    Ok((arcs, finals))
}

// Gauss-Jordan with partial pivoting.
fn invert(mut m: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|i| unit(n, i)).collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[pivot][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let d = m[col][col];
        for j in 0..n {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    // clean rounding noise so the closure stays non-negative
    for row in &mut inv {
        for x in row.iter_mut() {
            if x.abs() < 1e-15 {
                *x = 0.0;
            }
        }
    }
    Some(inv)
}

struct Fragment {
    entry: StateId,
    exit: StateId,
}

/// Thompson-style compilation. Every fragment has a single entry and a single exit;
/// the exit of the root fragment becomes the only final state.
pub fn compile(regex: &StochasticRegex) -> Result<WeightedAutomaton, LmError> {
    regex.validate()?;
    let mut b = AutomatonBuilder::new();
    let root = fragment(&mut b, regex);
    b.set_final(root.exit, 1.0);
    b.build(root.entry)
}

fn fragment(b: &mut AutomatonBuilder, re: &StochasticRegex) -> Fragment {
    match re {
        StochasticRegex::Literal(c) => {
            let (entry, exit) = (b.add_state(), b.add_state());
            b.add_transition(entry, Label::Char(*c), 1.0, exit);
            Fragment { entry, exit }
        }
        StochasticRegex::Class(k) => {
            let (entry, exit) = (b.add_state(), b.add_state());
            b.add_transition(entry, Label::Class(Arc::new(k.clone())), 1.0, exit);
            Fragment { entry, exit }
        }
        StochasticRegex::Concat(children) => {
            let entry = b.add_state();
            let mut cur = entry;
            for child in children {
                let f = fragment(b, child);
                b.add_transition(cur, Label::Epsilon, 1.0, f.entry);
                cur = f.exit;
            }
            Fragment { entry, exit: cur }
        }
        StochasticRegex::Union(branches) => {
            let (entry, exit) = (b.add_state(), b.add_state());
            for br in branches {
                let f = fragment(b, &br.node);
                b.add_transition(entry, Label::Epsilon, br.p, f.entry);
                b.add_transition(f.exit, Label::Epsilon, 1.0, exit);
            }
            Fragment { entry, exit }
        }
        StochasticRegex::Repeat { p, node } => {
            let (entry, exit) = (b.add_state(), b.add_state());
            let f = fragment(b, node);
            b.add_transition(entry, Label::Epsilon, *p, f.entry);
            b.add_transition(entry, Label::Epsilon, 1.0 - p, exit);
            b.add_transition(f.exit, Label::Epsilon, 1.0, entry);
            Fragment { entry, exit }
        }
        StochasticRegex::Optional { p, node } => {
            let (entry, exit) = (b.add_state(), b.add_state());
            let f = fragment(b, node);
            b.add_transition(entry, Label::Epsilon, *p, f.entry);
            b.add_transition(entry, Label::Epsilon, 1.0 - p, exit);
            b.add_transition(f.exit, Label::Epsilon, 1.0, exit);
            Fragment { entry, exit }
        }
    }
}
