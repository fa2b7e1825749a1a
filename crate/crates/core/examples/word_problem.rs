//! Normal forms and equality in the four-letter example monoid, plus a
//! non-confluent system caught by the bounded confluence check.

use hypword::rewriting::{ConfluenceReport, MonadicCfSystem, Strategy};
use hypword::structures::example_monoid;
use hypword::{Alphabet, Word};

fn main() -> hypword::Result<()> {
    let system = example_monoid(1);
    print!("{}", system.to_text());

    for text in ["a a b c d d", "a b c a b c d d", "a b b c c d", "a d", "d c b a"] {
        let w = Word::parse(text)?;
        let redex = match system.find_redex(&w)? {
            Some(r) => format!("at {} length {}", r.position, r.length),
            None => "none".to_string(),
        };
        println!("{:>16}  first redex {redex:<18} normal form {}", w.to_string(), system.normal_form(&w)?);
    }

    let u = Word::parse("a b")?;
    let v = Word::parse("a b c d a b")?;
    println!("{u} = {v}: {}", system.equal_in_monoid(&u, &v)?);

    let w = Word::parse("a b a b c d c d")?;
    for strategy in [Strategy::LeftmostShortest, Strategy::RightmostShortest, Strategy::Random(3)] {
        println!("{strategy:?}: {}", system.normal_form_with(&w, strategy)?);
    }

    match system.check_confluence_bounded(6)? {
        ConfluenceReport::Pass { words_checked, .. } => {
            println!("confluent on all {words_checked} words of length <= 6")
        }
        ConfluenceReport::Witness { word, descendants } => println!("{word} -> {descendants:?}"),
    }

    let a = Word::parse("a")?;
    let bad = MonadicCfSystem::finite(
        Alphabet::plain("a")?,
        &[(a.concat(&a), None), (a.concat(&a).concat(&a), None)],
    )?;
    if let ConfluenceReport::Witness { word, descendants } = bad.check_confluence_bounded(4)? {
        println!("aa -> _, aaa -> _ is not confluent: {word} reduces to {descendants:?}");
    }
    Ok(())
}
