//! Compiles the equality grammar of the example system, prints a family
//! summary and answers pair and multiplication-table queries.

use std::collections::BTreeMap;

use hypword::structures::example_monoid;
use hypword::{build_theta, Word};

fn main() -> hypword::Result<()> {
    let system = example_monoid(1);
    let theta = build_theta(&system)?;

    let mut sizes: BTreeMap<String, usize> = BTreeMap::new();
    for family in theta.provenance() {
        let name = family.to_string();
        let head = name.split(' ').next().unwrap_or_default().to_string();
        *sizes.entry(head).or_default() += 1;
    }
    println!("{} productions", theta.grammar().productions().len());
    for (family, n) in &sizes {
        println!("  {family:<12} {n}");
    }

    let pairs = [("a b c d", "_"), ("a b", "a b c d a b"), ("a b", "a"), ("a a b c d", "a")];
    for (u, v) in pairs {
        let (u, v) = (Word::parse(u)?, Word::parse(v)?);
        println!(
            "{u} #2 ({v})^rev in K: {:<5}  normal forms agree: {}",
            theta.k_member(&u, &v)?,
            system.equal_in_monoid(&u, &v)?
        );
    }

    let (u, v, w) = (Word::parse("a")?, Word::parse("b c d")?, Word::empty());
    println!("{u} * {v} = {w}: {}", theta.mtable_member(&u, &v, &w)?);

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, theta.to_text())?;
        println!("wrote {path}");
    }
    Ok(())
}
