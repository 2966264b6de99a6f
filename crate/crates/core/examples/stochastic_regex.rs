// Compile a stochastic regular expression and score strings with it.

use neography::{StochasticRegex as R, WeightedAutomaton};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // "ha" repeated, then an optional "!", e.g. "haha!"
    let laugh = R::concat(vec![
        R::plus(R::text("ha"), 0.4),
        R::optional(R::lit('!'), 0.3),
    ]);
    println!("{}", serde_json::to_string(&laugh)?);

    let a = WeightedAutomaton::compile(&laugh)?;
    assert!(a.is_stochastic(1e-9));
    for s in ["ha", "haha!", "hahaha", "hah"] {
        println!("{s:>8}  cost {}", a.score(s));
    }

    let alphabet = ['h', 'a', '!'];
    let mass: f64 = a.enumerate(&alphabet, 9).iter().map(|(_, p)| p).sum();
    println!("mass of strings up to length 9: {mass:.6}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
