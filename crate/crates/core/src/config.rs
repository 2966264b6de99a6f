//! JSON descriptions of language models and simulation configurations.
//!
//! A model document is a tagged object, for example
//!
//! ```json
//! {"type": "mixture", "components": [
//!     {"weight": 0.5, "model": {"type": "lexicon"}},
//!     {"weight": 0.5, "model": {"type": "skeleton"}}
//! ]}
//! ```
//!
//! Relative paths are resolved against the directory of the file that names them.
//! Omitted lexicon and rule paths fall back to the bundled resources.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::automaton::WeightedAutomaton;
use crate::chars::nfc;
use crate::data;
use crate::eval::EvalConfig;
use crate::lexicon::Lexicon;
use crate::model::{interpolate, ScoredModel};
use crate::ngram::train_ngram_with_alphabet;
use crate::phonetic::{build_homophone_lexicon, RuleSet};
use crate::rebus::{build_rebus_automaton, RebusParams};
use crate::regex::StochasticRegex;
use crate::skeleton::{build_skeleton_automaton, build_skeleton_lexicon, SkeletonParams};
use crate::SimError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    /// Inline stochastic regex.
    Regex { regex: StochasticRegex },
    /// Stochastic regex stored in its own JSON file.
    RegexFile { path: PathBuf },
    Skeleton {
        #[serde(default)]
        params: SkeletonParams,
    },
    Rebus {
        #[serde(default)]
        params: RebusParams,
    },
    /// Unigram word model over a frequency list (bundled French list by default).
    Lexicon {
        #[serde(default)]
        path: Option<PathBuf>,
        #[serde(default)]
        words: Option<Vec<String>>,
    },
    SkeletonLexicon {
        #[serde(default)]
        lexicon: Option<PathBuf>,
    },
    HomophoneLexicon {
        #[serde(default)]
        lexicon: Option<PathBuf>,
        top_k: usize,
        #[serde(default)]
        rules: Option<PathBuf>,
    },
    /// Character n-gram trained on the words of a lexicon. Characters listed in
    /// `alphabet` get smoothed mass even when the training words never use them.
    Ngram {
        order: usize,
        k: f64,
        #[serde(default)]
        lexicon: Option<PathBuf>,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Uniform { alphabet: String },
    /// The exact vocabulary of the evaluated corpus labels.
    OptimalLexicon,
    Mixture { components: Vec<Component> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub weight: f64,
    pub model: ModelSpec,
}

/// What a spec needs from its surroundings to become a model.
#[derive(Debug, Clone, Default)]
pub struct ResolveContext<'a> {
    pub base_dir: Option<&'a Path>,
    /// Vocabulary for [`ModelSpec::OptimalLexicon`].
    pub label_vocabulary: Option<&'a Lexicon>,
}

impl ResolveContext<'_> {
    fn path(&self, p: &Path) -> PathBuf {
        match self.base_dir {
            Some(d) if p.is_relative() => d.join(p),
            _ => p.to_path_buf(),
        }
    }

    fn lexicon(&self, p: &Option<PathBuf>) -> Result<Lexicon, SimError> {
        match p {
            Some(p) => Ok(Lexicon::load(self.path(p))?),
            None => Ok(data::french_lexicon()),
        }
    }

    fn rules(&self, p: &Option<PathBuf>) -> Result<RuleSet, SimError> {
        match p {
            Some(p) => Ok(RuleSet::load(self.path(p))?),
            None => Ok(data::default_rules()),
        }
    }
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self, SimError> {
        serde_json::from_str(text).map_err(|e| SimError::InvalidConfig(e.to_string()))
    }

    /// Reads a model document; a bare stochastic regex is accepted as well.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, SimError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| SimError::InvalidConfig(format!("{}: {e}", path.display())))?;
        match Self::from_json(&text) {
            Ok(spec) => Ok(spec),
            Err(e) => StochasticRegex::from_json(&text).map(|regex| ModelSpec::Regex { regex }).map_err(|_| e),
        }
    }

    pub fn resolve(&self, ctx: &ResolveContext<'_>) -> Result<ScoredModel, SimError> {
        let model = match self {
            ModelSpec::Regex { regex } => ScoredModel::automaton(WeightedAutomaton::compile(regex)?),
            ModelSpec::RegexFile { path } => {
                let p = ctx.path(path);
                let text = fs::read_to_string(&p).map_err(|e| SimError::InvalidConfig(format!("{}: {e}", p.display())))?;
                ScoredModel::automaton(WeightedAutomaton::compile(&StochasticRegex::from_json(&text)?)?)
            }
            ModelSpec::Skeleton { params } => ScoredModel::automaton(build_skeleton_automaton(params)?),
            ModelSpec::Rebus { params } => ScoredModel::automaton(build_rebus_automaton(params)?),
            ModelSpec::Lexicon { path: None, words: Some(words) } => ScoredModel::lexicon(&Lexicon::from_words(words))?,
            ModelSpec::Lexicon { path, words: None } => ScoredModel::lexicon(&ctx.lexicon(path)?)?,
            ModelSpec::Lexicon { .. } => return Err(SimError::InvalidConfig("lexicon takes either a path or words, not both".into())),
            ModelSpec::SkeletonLexicon { lexicon } => ScoredModel::lexicon(&build_skeleton_lexicon(&ctx.lexicon(lexicon)?)?)?,
            ModelSpec::HomophoneLexicon { lexicon, top_k, rules } => {
                let h = build_homophone_lexicon(&ctx.lexicon(lexicon)?, *top_k, &ctx.rules(rules)?)?;
                ScoredModel::lexicon(&h.lexicon)?
            }
            ModelSpec::Ngram { order, k, lexicon, alphabet } => {
                let lex = ctx.lexicon(lexicon)?;
                let words: Vec<&str> = lex.words().collect();
                let extra = alphabet.as_deref().map(|a| nfc(a).chars().filter(|c| !c.is_whitespace()).collect()).unwrap_or_default();
                ScoredModel::ngram(train_ngram_with_alphabet(&words, *order, *k, extra)?)
            }
            ModelSpec::Uniform { alphabet } => ScoredModel::uniform(nfc(alphabet).chars())?,
            ModelSpec::OptimalLexicon => {
                let vocab = ctx
                    .label_vocabulary
                    .ok_or_else(|| SimError::InvalidConfig("optimal_lexicon needs a corpus".into()))?;
                ScoredModel::lexicon(vocab)?
            }
            ModelSpec::Mixture { components } => {
                let parts = components.iter().map(|c| Ok((c.model.resolve(ctx)?, c.weight))).collect::<Result<Vec<_>, SimError>>()?;
                interpolate(parts)?
            }
        };
        Ok(model)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    pub name: String,
    /// Weight of the language model against the channel score.
    pub lambda: f64,
    /// No model means channel-only decoding.
    #[serde(default)]
    pub model: Option<ModelSpec>,
}

/// Contents of a simulation configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSpec {
    #[serde(default = "default_n_best")]
    pub n_best: usize,
    pub configs: Vec<ConfigSpec>,
}

fn default_n_best() -> usize {
    10
}

impl SimulationSpec {
    pub fn from_json(text: &str) -> Result<Self, SimError> {
        serde_json::from_str(text).map_err(|e| SimError::InvalidConfig(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SimError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| SimError::InvalidConfig(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn resolve(&self, ctx: &ResolveContext<'_>) -> Result<Vec<EvalConfig>, SimError> {
        self.configs
            .iter()
            .map(|c| {
                let lm = c.model.as_ref().map(|m| m.resolve(ctx)).transpose()?;
                EvalConfig::new(&c.name, lm, c.lambda)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_resolve_mixture() {
        let doc = r#"{"type":"mixture","components":[
            {"weight":0.5,"model":{"type":"lexicon","words":["salut","bonjour"]}},
            {"weight":0.5,"model":{"type":"skeleton"}}]}"#;
        let m = ModelSpec::from_json(doc).unwrap().resolve(&ResolveContext::default()).unwrap();
        assert!(m.score("slt").is_accept());
        assert!(m.score("salut").is_accept());
        assert!(!m.score("aeiou").is_accept());
    }

    #[test]
    fn bad_mixture_weights() {
        let doc = r#"{"type":"mixture","components":[{"weight":0.7,"model":{"type":"skeleton"}}]}"#;
        let err = ModelSpec::from_json(doc).unwrap().resolve(&ResolveContext::default()).unwrap_err();
        assert!(matches!(err, SimError::Model(crate::LmError::BadWeights(_))));
    }

    #[test]
    fn optimal_lexicon_needs_vocabulary() {
        let spec = ModelSpec::OptimalLexicon;
        assert!(spec.resolve(&ResolveContext::default()).is_err());
        let vocab = Lexicon::from_words(["a2m1"]);
        let ctx = ResolveContext { label_vocabulary: Some(&vocab), ..Default::default() };
        assert!(spec.resolve(&ctx).unwrap().score("a2m1").is_accept());
    }

    #[test]
    fn simulation_spec_defaults() {
        let s = SimulationSpec::from_json(r#"{"configs":[{"name":"no-LM","lambda":0.0}]}"#).unwrap();
        assert_eq!(s.n_best, 10);
        let cfgs = s.resolve(&ResolveContext::default()).unwrap();
        assert!(cfgs[0].lm.is_none());
    }

    #[test]
    fn ngram_alphabet_extends_support() {
        let plain = r#"{"type":"ngram","order":2,"k":0.5}"#;
        let wide = r#"{"type":"ngram","order":2,"k":0.5,"alphabet":"0123456789"}"#;
        let ctx = ResolveContext::default();
        assert!(!ModelSpec::from_json(plain).unwrap().resolve(&ctx).unwrap().score("2main").is_accept());
        let m = ModelSpec::from_json(wide).unwrap().resolve(&ctx).unwrap();
        assert!(m.score("2main").cost().unwrap() > m.score("demain").cost().unwrap());
    }

    #[test]
    fn unknown_type_rejected() {
        assert!(ModelSpec::from_json(r#"{"type":"neural"}"#).is_err());
    }
}
