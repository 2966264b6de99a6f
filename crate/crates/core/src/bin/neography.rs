use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use neography::config::{ModelSpec, ResolveContext, SimulationSpec};
use neography::corpus::{label_vocabulary, load_corpus, save_corpus, synth_corpus, SynthCounts, SynthOptions};
use neography::phonetic::build_homophone_lexicon;
use neography::skeleton::build_skeleton_lexicon;
use neography::{corpus_rr, data, evaluate, recognition_rate, ConfusionModel, Lexicon, RebusTable, RuleSet};

#[derive(Parser)]
#[command(name = "neography", version, about = "Language models for SMS-style handwriting")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Skeleton,
    Phonetic,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a skeleton or homophone lexicon from a frequency list.
    GenLexicon {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        top_k: usize,
        /// Rewrite rules for phonetic mode; the bundled set when omitted.
        #[arg(long)]
        rules: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Print the cost of a string under a model, or REJECT.
    Score {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        text: String,
    },
    /// Recognition rate of one pair, or of a TAB-separated label/candidate file.
    Rr {
        #[arg(long, requires = "candidate", conflicts_with = "pairs")]
        label: Option<String>,
        #[arg(long)]
        candidate: Option<String>,
        #[arg(long, required_unless_present = "label")]
        pairs: Option<PathBuf>,
    },
    /// Run the recognition simulator and write the per-category report.
    Simulate {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_csv: PathBuf,
    },
    /// Generate a seeded synthetic corpus.
    Synth {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        rules: PathBuf,
        #[arg(long)]
        rebus_table: PathBuf,
        /// Messages per category: skeleton,rebus,phonetic,other.
        #[arg(long)]
        counts: SynthCounts,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_words: usize,
        #[arg(long, default_value_t = 1)]
        max_words: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parent(p: &Path) -> Option<&Path> {
    p.parent().filter(|d| !d.as_os_str().is_empty())
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::GenLexicon { mode, input, top_k, rules, output } => {
            let freq = Lexicon::load(&input)?;
            let lex = match mode {
                Mode::Skeleton => {
                    if freq.len() < top_k {
                        return Err(anyhow!("{} has {} words, fewer than --top-k {top_k}", input.display(), freq.len()));
                    }
                    build_skeleton_lexicon(&Lexicon::from_pairs(freq.top_k(top_k)))?
                }
                Mode::Phonetic => {
                    let rules = match rules {
                        Some(p) => RuleSet::load(p)?,
                        None => data::default_rules(),
                    };
                    let h = build_homophone_lexicon(&freq, top_k, &rules)?;
                    for w in &h.truncated {
                        eprintln!("warning: closure of {w:?} hit a limit and was truncated");
                    }
                    h.lexicon
                }
            };
            fs::write(&output, lex.to_tsv()).with_context(|| format!("writing {}", output.display()))?;
            eprintln!("{} entries written to {}", lex.len(), output.display());
        }
        Cmd::Score { model, text } => {
            let spec = ModelSpec::load(&model)?;
            let ctx = ResolveContext { base_dir: parent(&model), label_vocabulary: None };
            println!("{}", spec.resolve(&ctx)?.score(&text));
        }
        Cmd::Rr { label, candidate, pairs } => {
            let r = match (label, candidate, pairs) {
                (Some(l), Some(c), None) => recognition_rate(&l, &c)?,
                (None, None, Some(p)) => {
                    let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    let mut rows = Vec::new();
                    for (i, line) in text.lines().enumerate() {
                        if line.trim().is_empty() || line.starts_with('#') {
                            continue;
                        }
                        let (l, c) = line.split_once('\t').ok_or_else(|| anyhow!("line {}: expected label<TAB>candidate", i + 1))?;
                        rows.push((l.to_string(), c.to_string()));
                    }
                    corpus_rr(&rows)?
                }
                _ => unreachable!("clap enforces the flag combinations"),
            };
            println!("{r}");
        }
        Cmd::Simulate { corpus, channel, config, out_csv } => {
            let records = load_corpus(&corpus)?;
            let cm = ConfusionModel::load(&channel)?;
            let spec = SimulationSpec::load(&config)?;
            let vocab = label_vocabulary(&records);
            let ctx = ResolveContext { base_dir: parent(&config), label_vocabulary: Some(&vocab) };
            let configs = spec.resolve(&ctx)?;
            let report = evaluate(&records, &cm, &configs, spec.n_best)?;
            fs::write(&out_csv, report.to_csv()).with_context(|| format!("writing {}", out_csv.display()))?;
            print!("{}", report.to_table());
        }
        Cmd::Synth { lexicon, rules, rebus_table, counts, seed, out, min_words, max_words } => {
            let lex = Lexicon::load(&lexicon)?;
            let rules = RuleSet::load(&rules)?;
            let table = RebusTable::load(&rebus_table)?;
            if min_words == 0 || max_words < min_words {
                return Err(anyhow!("need 1 <= --min-words <= --max-words"));
            }
            let opts = SynthOptions { min_words, max_words, ..SynthOptions::default() };
            let records = synth_corpus(&lex, &rules, &table, counts, seed, &opts)?;
            save_corpus(&out, &records)?;
            eprintln!("{} messages written to {}", records.len(), out.display());
        }
    }
    Ok(())
}
