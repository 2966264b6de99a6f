// Consonant skeletons: the automaton model and the "txt" rewriter.

use neography::skeleton::{build_skeleton_automaton, build_skeleton_lexicon};
use neography::{data, skeletonize, SkeletonParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for w in ["text", "salut", "bonjour", "demain", "amour"] {
        println!("{w:>8} -> {}", skeletonize(w)?);
    }

    let a = build_skeleton_automaton(&SkeletonParams::default())?;
    for s in ["slt", "bjr", "bjour", "aeiou"] {
        println!("{s:>8}  {}", a.score(s));
    }

    let lex = build_skeleton_lexicon(&data::french_lexicon())?;
    println!("{} distinct skeletons from the bundled word list", lex.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
