// End to end: synthesize a corpus, run every bundled configuration, print the table.

use neography::config::{ResolveContext, SimulationSpec};
use neography::corpus::{label_vocabulary, synth_corpus, SynthCounts, SynthOptions};
use neography::{data, evaluate, ConfusionModel};

const CONFIGS: &str = include_str!("../data/sim_configs.json");

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SynthOptions { min_words: 1, max_words: 3, ..SynthOptions::default() };
    let corpus = synth_corpus(
        &data::french_lexicon(),
        &data::default_rules(),
        &data::default_rebus_table(),
        SynthCounts::new(40, 40, 40, 40),
        1,
        &opts,
    )?;
    let vocab = label_vocabulary(&corpus);
    let spec = SimulationSpec::from_json(CONFIGS)?;
    let configs = spec.resolve(&ResolveContext { base_dir: None, label_vocabulary: Some(&vocab) })?;
    let report = evaluate(&corpus, &ConfusionModel::default().with_seed(7), &configs, spec.n_best)?;
    print!("{}", report.to_table());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
