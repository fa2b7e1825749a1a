//! Moves a structure with unique representatives to new generators and
//! checks uniqueness survives, then swaps in a nonempty identity word.

use std::sync::Arc;

use hypword::automata::Nfa;
use hypword::rewriting::MonadicCfSystem;
use hypword::structures::{adjust_identity_rep, change_generators, Equality, GeneratorMap, WordHypStructure};
use hypword::{Alphabet, Homomorphism, Symbol, Word};

fn main() -> hypword::Result<()> {
    let x = Alphabet::plain("x")?;
    let x_squared = MonadicCfSystem::finite(x.clone(), &[(Word::parse("x x")?, None)])?;
    let reps = Nfa::from_words(x.clone(), &[Word::empty(), Word::parse("x")?])?;
    let eq_x: Equality = {
        let s = x_squared.clone();
        Arc::new(move |u, v| s.equal_in_monoid(u, v))
    };
    let structure = WordHypStructure::new(reps, eq_x, Homomorphism::identity(&x))?;

    let y = Alphabet::plain("y")?;
    let y_squared = MonadicCfSystem::finite(y.clone(), &[(Word::parse("y y")?, None)])?;
    let map = GeneratorMap::new(x, y.clone(), [(Symbol::plain("x"), Word::parse("y y y")?)], true)?;
    let eq_y: Equality = Arc::new(move |u, v| y_squared.equal_in_monoid(u, v));

    let moved = change_generators(&structure, &map, eq_y)?;
    for group in moved.representative_groups(8)? {
        let names: Vec<String> = group.iter().map(Word::to_string).collect();
        println!("element named by {}", names.join(" ~ "));
    }
    let yyy = Word::parse("y y y")?;
    println!("yyy * yyy = _ in the table: {}", moved.ml_member(&yyy, &yyy, &Word::empty())?);

    let adjusted = adjust_identity_rep(moved.reps(), &Word::parse("y y")?)?;
    let words: Vec<String> = adjusted.enumerate(8).iter().map(Word::to_string).collect();
    println!("with a nonempty identity: {}", words.join(", "));
    Ok(())
}
