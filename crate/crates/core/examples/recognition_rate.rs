// Recognition rate where inserted characters are not penalised.

use neography::{asym_distance, corpus_rr, recognition_rate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = recognition_rate("bjr", "loj.t")?;
    println!("bjr vs loj.t: distance {}, RR {}% = {}", r.distance, r, r.rr());
    assert_eq!(asym_distance("abc", "xaxbxcx")?, 0);

    let pairs = [("slt", "slt"), ("a2m1", "a2ml"), ("muzik", "mvzik")];
    println!("corpus RR {}%", corpus_rr(&pairs)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
