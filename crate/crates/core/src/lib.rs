//! Language models for handwritten SMS-style text.
//!
//! The crate bundles the pieces needed to model three kinds of neography (novel
//! spellings of known words) and to measure how much they help a recognizer:
//!
//! * [`automaton`] / [`regex`]: stochastic regular expressions compiled into
//!   probabilistic acceptors, scored with the forward algorithm.
//! * [`skeleton`] and [`rebus`]: automata for consonant-skeleton ("txt") and
//!   rebus ("l8er") writing, plus generators for lexicons and synthetic data.
//! * [`phonetic`]: contextual rewrite rules applied to closure to produce
//!   homophone lexicons ("musique" → "muzik").
//! * [`metric`]: the recognition rate built on an edit distance where insertions are free.
//! * [`channel`] and [`eval`]: a noisy-channel stand-in for a handwriting recognizer
//!   whose n-best lists are re-ranked by any [`ScoredModel`].

pub mod automaton;
pub mod channel;
pub mod chars;
pub mod config;
pub mod corpus;
pub mod data;
mod error;
pub mod eval;
pub mod lexicon;
pub mod metric;
pub mod model;
pub mod ngram;
pub mod phonetic;
pub mod rebus;
pub mod regex;
pub mod skeleton;

pub use automaton::{AutomatonBuilder, Label, WeightedAutomaton};
pub use channel::{corrupt, CandidateList, ConfusionModel};
pub use chars::CharClass;
pub use corpus::{Category, MessageRecord};
pub use error::{CorpusError, GenError, LmError, MetricError, SimError};
pub use eval::{decode, evaluate, EvalConfig, EvalReport};
pub use lexicon::Lexicon;
pub use metric::{asym_distance, corpus_rr, recognition_rate, RrResult};
pub use model::{interpolate, Score, ScoredModel};
pub use ngram::{train_ngram, NGramModel};
pub use phonetic::{closure, RewriteRule, RuleSet};
pub use rebus::{RebusParams, RebusTable};
pub use regex::StochasticRegex;
pub use skeleton::{skeletonize, SkeletonParams};
