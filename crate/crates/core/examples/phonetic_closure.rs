// Homophones from rewrite rules: the closure of one word, then a whole lexicon.

use neography::phonetic::build_homophone_lexicon;
use neography::{closure, data};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rules = data::default_rules();
    let c = closure("musique", &rules)?;
    println!("musique: {}", c.variants.iter().cloned().collect::<Vec<_>>().join(" "));

    let h = build_homophone_lexicon(&data::french_lexicon(), 200, &rules)?;
    println!("{} spellings for the 200 most frequent words", h.lexicon.len());
    if let Some(src) = h.provenance.get("sé") {
        println!("\"sé\" comes from {src:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
