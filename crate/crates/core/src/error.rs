use thiserror::Error;

/// Errors from model construction and scoring.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LmError {
    #[error("invalid stochastic regex: {0}")]
    InvalidRegex(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("character class {0:?} is empty")]
    EmptyClass(String),
    #[error("unknown character class {0:?}")]
    UnknownClass(String),
    #[error("class {0:?}: weight for {1:?} must be positive")]
    BadClassWeight(String, char),
    #[error("class {0:?}: members and weights differ in length")]
    ClassWeightArity(String),
    #[error("bad interpolation weights: {0}")]
    BadWeights(String),
    #[error("empty training corpus")]
    EmptyCorpus,
    #[error("n-gram order must be at least 1")]
    BadOrder,
    #[error("smoothing constant must be positive, got {0}")]
    BadSmoothing(f64),
    #[error("empty lexicon")]
    EmptyLexicon,
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("label is empty")]
    EmptyLabel,
    #[error("no label/candidate pairs")]
    EmptyCorpus,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("empty word")]
    EmptyWord,
    #[error("empty lexicon")]
    EmptyLexicon,
    #[error("lexicon has {have} entries, {need} requested")]
    InsufficientLexicon { have: usize, need: usize },
    #[error("invalid rule {name:?}: {msg}")]
    InvalidRule { name: String, msg: String },
    #[error("rule set must contain at least one rule")]
    EmptyRuleSet,
    #[error("invalid rebus table entry at line {line}: {msg}")]
    InvalidTableEntry { line: usize, msg: String },
    #[error("{0}")]
    Model(#[from] LmError),
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorpusError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate message id {0:?}")]
    DuplicateId(String),
    #[error("line {0}: empty label")]
    EmptyLabel(usize),
    #[error("{0}: {1}")]
    Io(String, String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("candidate list is empty")]
    EmptyCandidates,
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("no configurations to evaluate")]
    NoConfigs,
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{0}")]
    Model(#[from] LmError),
    #[error("{0}")]
    Gen(#[from] GenError),
    #[error("{0}")]
    Corpus(#[from] CorpusError),
    #[error("{0}")]
    Metric(#[from] MetricError),
}
