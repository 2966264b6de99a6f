// Corpus handling and the recognition simulator.

use neography::config::{ResolveContext, SimulationSpec};
use neography::corpus::{format_corpus, label_vocabulary, parse_corpus, synth_corpus, Hand, Source, SynthCounts, SynthOptions};
use neography::eval::EvalConfig;
use neography::{corrupt, data, evaluate, Category, ConfusionModel, CorpusError, Lexicon, ScoredModel, SimError};

fn synth(n: usize, seed: u64) -> Vec<neography::MessageRecord> {
    let opts = SynthOptions { min_words: 1, max_words: 2, ..SynthOptions::default() };
    synth_corpus(&data::french_lexicon(), &data::default_rules(), &data::default_rebus_table(), SynthCounts::new(n, n, n, n), seed, &opts).unwrap()
}

#[test]
fn parse_one_record_and_errors() {
    let line = r#"{"id":"m1","writer":3,"hand":"boxed","source":"free","label":"a2m1","category":"rebus"}"#;
    let recs = parse_corpus(line).unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!((recs[0].hand, recs[0].source, recs[0].category), (Hand::Boxed, Source::Free, Category::Rebus));
    assert!(parse_corpus("").unwrap().is_empty());
    let dup = format!("{line}\n{line}\n");
    assert!(matches!(parse_corpus(&dup), Err(CorpusError::DuplicateId(id)) if id == "m1"));
    let no_cat = r#"{"id":"m2","writer":1,"hand":"cursive","source":"given","label":"slt"}"#;
    assert_eq!(parse_corpus(no_cat).unwrap()[0].category, Category::Other);
    let empty = r#"{"id":"m3","writer":1,"hand":"cursive","source":"given","label":""}"#;
    assert!(matches!(parse_corpus(&format!("{no_cat}\n{empty}")), Err(CorpusError::EmptyLabel(2))));
    assert!(matches!(parse_corpus("{not json"), Err(CorpusError::Parse { line: 1, .. })));
}

#[test]
fn canonical_round_trip() {
    let recs = synth(5, 3);
    let text = format_corpus(&recs);
    assert_eq!(format_corpus(&parse_corpus(&text).unwrap()), text);
}

#[test]
fn synth_examples() {
    let rules = data::default_rules();
    let table = data::default_rebus_table();
    let opts = SynthOptions::default();
    let one = synth_corpus(&Lexicon::from_words(["text"]), &rules, &table, SynthCounts::new(1, 0, 0, 0), 0, &opts).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!((one[0].label.as_str(), one[0].category), ("txt", Category::Skeleton));
    assert_eq!(one[0].original.as_deref(), Some("text"));
    let none = synth_corpus(&Lexicon::from_words(["text"]), &rules, &table, SynthCounts::new(0, 0, 0, 0), 0, &opts).unwrap();
    assert!(none.is_empty());
    assert_eq!(synth(10, 42), synth(10, 42));
    assert_ne!(synth(10, 42), synth(10, 43));
}

#[test]
fn noise_free_channel_is_perfect() {
    let corpus = synth(10, 1);
    let lm = ScoredModel::lexicon(&data::french_lexicon()).unwrap();
    let configs = [EvalConfig::channel_only("no-LM"), EvalConfig::new("words", Some(lm), 0.0).unwrap()];
    let report = evaluate(&corpus, &ConfusionModel::noise_free(), &configs, 10).unwrap();
    assert_eq!(report.rows.len(), configs.len() * Category::ALL.len());
    for r in &report.rows {
        assert_eq!(r.rr.distance, 0, "{} / {}", r.config, r.category);
        assert_eq!(r.n_messages, 10);
    }
}

#[test]
fn report_counts_and_determinism() {
    let corpus = synth(15, 2);
    let vocab = label_vocabulary(&corpus);
    let spec = SimulationSpec::from_json(include_str!("../data/sim_configs.json")).unwrap();
    let ctx = ResolveContext { base_dir: None, label_vocabulary: Some(&vocab) };
    let configs = spec.resolve(&ctx).unwrap();
    let cm = ConfusionModel::default().with_seed(7);
    let a = evaluate(&corpus, &cm, &configs, spec.n_best).unwrap();
    let b = evaluate(&corpus, &cm, &configs, spec.n_best).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.rows.len(), configs.len() * 4);
    for cat in Category::ALL {
        let chars: u64 = corpus.iter().filter(|m| m.category == cat).map(|m| m.label.chars().count() as u64).sum();
        assert!(a.rows.iter().filter(|r| r.category == cat).all(|r| r.n_chars == chars));
    }
    assert!(a.to_csv().starts_with("config,category,n_messages,n_chars,rr_percent\n"));
    assert!(a.to_table().lines().count() == 5);
}

#[test]
fn corruption_depends_only_on_seed_and_label() {
    let cm = ConfusionModel::default().with_seed(99);
    let first = corrupt("bizoo a2m1", &cm, 10);
    for other in ["slt", "bjr", "muzik"] {
        let _ = corrupt(other, &cm, 10);
    }
    assert_eq!(corrupt("bizoo a2m1", &cm, 10), first);
    assert!(first.candidates.windows(2).all(|w| w[0].cost <= w[1].cost));
    assert!(first.candidates.iter().all(|c| c.cost >= 0.0));
}

#[test]
fn bad_inputs() {
    let cm = ConfusionModel::default();
    assert!(matches!(evaluate(&[], &cm, &[EvalConfig::channel_only("x")], 5), Err(SimError::EmptyCorpus)));
    assert!(matches!(evaluate(&synth(1, 0), &cm, &[], 5), Err(SimError::NoConfigs)));
    assert!(EvalConfig::new("x", None, 1.5).is_err());
    assert!(ConfusionModel::from_json(r#"{"p_correct":1.5}"#).is_err());
    assert!(ConfusionModel::from_json(r#"{"confusions":["abc"]}"#).is_err());
}
