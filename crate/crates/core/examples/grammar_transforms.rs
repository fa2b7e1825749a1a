//! Grammar file parsing, empty-production elimination, reversal,
//! relabeling and chart-parser membership.

use std::collections::HashMap;

use hypword::grammar::text::parse_grammar;
use hypword::{Symbol, Word};

fn main() -> hypword::Result<()> {
    let g = parse_grammar(
        "; a^n b^n, including the empty word
start: S
S -> a S b | _
",
    )?;
    let show = |label: &str, words: &std::collections::BTreeSet<Word>| {
        let list: Vec<String> = words.iter().map(Word::to_string).collect();
        println!("{label:<12} {}", list.join(", "));
    };

    show("original", &g.enumerate(6));
    let no_eps = g.eliminate_epsilon_productions();
    show("no empty", &no_eps.enumerate(6));
    show("reversed", &no_eps.reverse_productions().enumerate(6));

    let map: HashMap<Symbol, Symbol> = [("a", "x"), ("b", "y")]
        .into_iter()
        .map(|(from, to)| (Symbol::plain(from), Symbol::plain(to)))
        .collect();
    let relabeled = no_eps.relabel_terminals(&map)?;
    print!("{}", relabeled.to_text());
    println!("shortest word: {:?}", relabeled.min_word_length());

    let recognizer = relabeled.recognizer();
    for text in ["x x y y", "x y y", "_"] {
        println!("{text:>8}: {}", recognizer.accepts(&Word::parse(text)?)?);
    }
    Ok(())
}
