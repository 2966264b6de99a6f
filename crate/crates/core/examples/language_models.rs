// Word lists, character n-grams and their interpolation behind one scoring interface.

use neography::{data, interpolate, train_ngram, ScoredModel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lex = data::french_lexicon();
    let words: Vec<&str> = lex.words().collect();
    let ngram = ScoredModel::ngram(train_ngram(&words, 3, 0.1)?);
    let list = ScoredModel::lexicon(&lex)?;
    let both = interpolate(vec![(list.clone(), 0.7), (ngram.clone(), 0.3)])?;

    println!("{:>10} {:>12} {:>12} {:>12}", "", "lexicon", "3-gram", "mixture");
    for s in ["bonjour", "bonjoure", "bjr", "2main"] {
        println!("{s:>10} {:>12} {:>12} {:>12}", list.score(s).to_string(), ngram.score(s).to_string(), both.score(s).to_string());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
