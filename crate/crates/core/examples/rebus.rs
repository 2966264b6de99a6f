// Rebus spellings ("2m1") from a replacement table, and the rebus automaton.

use neography::rebus::{build_rebus_automaton, rebusify};
use neography::{data, RebusParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let table = data::default_rebus_table();
    for w in ["demain", "huit", "cinquante"] {
        let v: Vec<String> = rebusify(w, &table)?.into_iter().collect();
        println!("{w:>10} -> {}", v.join(", "));
    }

    let a = build_rebus_automaton(&RebusParams::default())?;
    for s in ["2", "l8er", "a2m1", "48", "salut"] {
        println!("{s:>6}  {}", a.score(s));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
