//! Looks for two words naming the same element in each candidate
//! cross-section of the example monoid.

use hypword::structures::{adversarial_corpus, example_monoid, validate_cross_section};

fn main() -> hypword::Result<()> {
    let max_len: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let system = example_monoid(1);
    for candidate in adversarial_corpus() {
        let report = validate_cross_section(&candidate.dfa, &system, max_len)?;
        print!(
            "{:<34} {:>6} words, {:>5} collisions, {:>3} unwitnessed",
            candidate.name,
            report.words_checked,
            report.collisions.len(),
            report.unwitnessed.len()
        );
        match report.collisions.first() {
            Some(c) => println!("  e.g. {} ~ {}", c.first, c.second),
            None => println!(),
        }
    }
    Ok(())
}
