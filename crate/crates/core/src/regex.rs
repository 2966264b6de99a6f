//! Stochastic regular expressions: regexes whose alternations and repetitions carry
//! probabilities, so that each expression defines a distribution over strings.
//!
//! JSON form (externally tagged):
//!
//! ```json
//! {"concat": [
//!     {"class": "CONSONANTS"},
//!     {"repeat": {"p": 0.5, "node": {"union": [
//!         {"p": 0.9, "node": {"class": "CONSONANTS"}},
//!         {"p": 0.1, "node": {"class": {"name": "AE", "members": "ae"}}}
//!     ]}}},
//!     {"optional": {"p": 0.25, "node": {"literal": "s"}}}
//! ]}
//! ```

use serde::{Deserialize, Serialize};

use crate::chars::CharClass;
use crate::LmError;

pub const PROB_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StochasticRegex {
    Literal(char),
    /// One member of the class, drawn from the class distribution.
    Class(CharClass),
    Concat(Vec<StochasticRegex>),
    Union(Vec<Branch>),
    /// Zero or more repetitions; each further repetition is taken with probability `p`.
    Repeat { p: f64, node: Box<StochasticRegex> },
    /// The child with probability `p`, the empty string otherwise.
    Optional { p: f64, node: Box<StochasticRegex> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub p: f64,
    pub node: StochasticRegex,
}

impl StochasticRegex {
    pub fn lit(c: char) -> Self {
        StochasticRegex::Literal(c)
    }

    /// Concatenation of literals.
    pub fn text(s: &str) -> Self {
        StochasticRegex::Concat(s.chars().map(StochasticRegex::Literal).collect())
    }

    pub fn class(c: CharClass) -> Self {
        StochasticRegex::Class(c)
    }

    pub fn concat(children: impl IntoIterator<Item = StochasticRegex>) -> Self {
        StochasticRegex::Concat(children.into_iter().collect())
    }

    pub fn union(branches: impl IntoIterator<Item = (StochasticRegex, f64)>) -> Self {
        StochasticRegex::Union(branches.into_iter().map(|(node, p)| Branch { p, node }).collect())
    }

    pub fn repeat(node: StochasticRegex, p: f64) -> Self {
        StochasticRegex::Repeat { p, node: Box::new(node) }
    }

    pub fn optional(node: StochasticRegex, p: f64) -> Self {
        StochasticRegex::Optional { p, node: Box::new(node) }
    }

    /// One or more repetitions: `node` followed by `repeat(node, p)`.
    pub fn plus(node: StochasticRegex, p: f64) -> Self {
        StochasticRegex::concat([node.clone(), StochasticRegex::repeat(node, p)])
    }

    pub fn validate(&self) -> Result<(), LmError> {
        match self {
            StochasticRegex::Literal(_) | StochasticRegex::Class(_) => Ok(()),
            StochasticRegex::Concat(children) => children.iter().try_for_each(StochasticRegex::validate),
            StochasticRegex::Union(branches) => {
                if branches.is_empty() {
                    return Err(LmError::InvalidRegex("union without branches".into()));
                }
                let mut total = 0.0;
                for b in branches {
                    if !(b.p.is_finite() && b.p > 0.0) {
                        return Err(LmError::InvalidRegex(format!("union branch probability {} is not positive", b.p)));
                    }
                    total += b.p;
                    b.node.validate()?;
                }
                if (total - 1.0).abs() > PROB_TOLERANCE {
                    return Err(LmError::InvalidRegex(format!("union probabilities sum to {total}, not 1")));
                }
                Ok(())
            }
            StochasticRegex::Repeat { p, node } => {
                if !(*p > 0.0 && *p < 1.0) {
                    return Err(LmError::InvalidRegex(format!("repeat probability {p} outside (0,1)")));
                }
                node.validate()
            }
            StochasticRegex::Optional { p, node } => {
                if !(0.0..=1.0).contains(p) {
                    return Err(LmError::InvalidRegex(format!("optional probability {p} outside [0,1]")));
                }
                node.validate()
            }
        }
    }

    pub fn from_json(s: &str) -> Result<Self, LmError> {
        let re: StochasticRegex = serde_json::from_str(s).map_err(|e| LmError::Json(e.to_string()))?;
        re.validate()?;
        Ok(re)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("regex serializes")
    }
}
