// A noisy recognizer reading and its re-ranking by different language models.

use neography::skeleton::build_skeleton_automaton;
use neography::{corrupt, data, decode, interpolate, ConfusionModel, ScoredModel, SkeletonParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cm = ConfusionModel::default().with_seed(17);
    let label = "slt bjr";
    let list = corrupt(label, &cm, 10);
    println!("observed {:?}", list.observed);
    for c in &list.candidates {
        println!("  {:<10} {:.3}", c.text, c.cost);
    }

    let words = ScoredModel::lexicon(&data::french_lexicon())?;
    let skel = ScoredModel::automaton(build_skeleton_automaton(&SkeletonParams::default())?);
    let mixed = interpolate(vec![(words.clone(), 0.5), (skel.clone(), 0.5)])?;
    for (name, lm) in [("words", &words), ("skeleton", &skel), ("words+skeleton", &mixed)] {
        let d = decode(&list, Some(lm), 0.7)?;
        println!("{name:>15}: {:?}{}", d.text, if d.all_rejected { " (all rejected)" } else { "" });
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
