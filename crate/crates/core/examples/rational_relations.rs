//! Finite transducers: star, concatenation, reversal, pair membership and
//! images of regular languages.

use hypword::automata::{Nfa, Transducer};
use hypword::{Alphabet, Symbol, Word};

fn main() -> hypword::Result<()> {
    let b = Alphabet::plain("b")?;
    let xy = Alphabet::plain("x y")?;
    let p = Transducer::from_pairs(b.clone(), xy, [(Some(Symbol::plain("b")), Word::parse("x y")?)])?.star();

    for (u, v) in [("b b", "x y x y"), ("b", "x"), ("_", "_")] {
        println!("({u}, {v}) related: {}", p.relates(&Word::parse(u)?, &Word::parse(v)?)?);
    }

    let q = Transducer::concat(&[
        p.clone(),
        Transducer::singleton(&Symbol::marker1()),
        p.clone(),
        Transducer::singleton(&Symbol::marker2()),
        p.reverse(),
    ]);
    let left = Word::parse("b #1 b #2 b")?;
    println!("{left} -> y x in the last factor: {}", q.relates(&left, &Word::parse("x y #1 x y #2 y x")?)?);

    let image = p.image(&Nfa::universal(b))?;
    let words: Vec<String> = image.enumerate(6).iter().map(Word::to_string).collect();
    println!("image of b*: {}", words.join(", "));
    print!("{}", image.trim().to_text());
    Ok(())
}
