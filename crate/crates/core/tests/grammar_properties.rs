mod common;

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;

use hypword::grammar::disjoint_rename;
use hypword::grammar::text::parse_grammar;
use hypword::grammar::Production;
use hypword::{Alphabet, Cfg, Symbol, Word};

const NONTERMINALS: [&str; 3] = ["S", "A", "B"];
const TERMINALS: [&str; 2] = ["a", "b"];
const MAX_LEN: usize = 6;

fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![
        (0..NONTERMINALS.len()).prop_map(|i| Symbol::plain(NONTERMINALS[i])),
        (0..TERMINALS.len()).prop_map(|i| Symbol::plain(TERMINALS[i])),
    ]
}

fn production() -> impl Strategy<Value = Production> {
    (0..NONTERMINALS.len(), prop::collection::vec(symbol(), 0..=3))
        .prop_map(|(lhs, rhs)| Production::new(Symbol::plain(NONTERMINALS[lhs]), rhs))
}

fn grammar() -> impl Strategy<Value = Cfg> {
    prop::collection::vec(production(), 1..=7).prop_map(|productions| {
        Cfg::new(
            Alphabet::plain("S A B").unwrap(),
            Alphabet::plain("a b").unwrap(),
            productions,
            Symbol::plain("S"),
        )
        .unwrap()
    })
}

fn corpus() -> Vec<Cfg> {
    [
        "start: S\nS -> a S b | _\n",
        "start: S\nS -> a T d\nT -> b T c | b c\n",
        "start: S\nS -> S S | l S r | _\n",
        "start: E\nE -> E p T | T\nT -> l E r | x | N\nN -> _ | N N\n",
        "start: S\nS -> A B\nA -> a A | _\nB -> b B | _ | A\n",
        "start: S\nS -> S a | a S | U\nU -> U\n",
    ]
    .iter()
    .map(|t| parse_grammar(t).unwrap())
    .collect()
}

fn recognizer_agrees(g: &Cfg, max_len: usize) -> Result<(), TestCaseError> {
    let lang = g.enumerate(max_len);
    let rec = g.recognizer();
    for w in g.terminals().words_up_to(max_len) {
        prop_assert_eq!(rec.accepts(&w).unwrap(), lang.contains(&w), "word {}", w);
    }
    Ok(())
}

#[test]
fn recognizer_matches_enumeration_on_corpus() {
    for g in corpus() {
        recognizer_agrees(&g, 7).unwrap();
    }
}

#[test]
fn epsilon_elimination_on_corpus() {
    for g in corpus() {
        let mut expected = g.enumerate(7);
        expected.remove(&Word::empty());
        let h = g.eliminate_epsilon_productions();
        assert!(!h.has_empty_productions());
        assert_eq!(h.enumerate(7), expected);
    }
}

#[test]
fn disjoint_rename_keeps_languages_and_separates_nonterminals() {
    let grammars = corpus();
    let renamed = disjoint_rename(&grammars).unwrap();
    for (i, g) in renamed.iter().enumerate() {
        assert_eq!(g.enumerate(6), grammars[i].enumerate(6));
        for h in &renamed[i + 1..] {
            assert!(g.nonterminals().iter().all(|n| !h.nonterminals().contains(n)));
        }
    }
}

#[test]
fn trim_and_min_length() {
    for g in corpus() {
        let t = g.trim();
        assert_eq!(t.enumerate(6), g.enumerate(6));
        assert_eq!(t.min_word_length(), g.min_word_length());
        let shortest = g.enumerate(6).iter().map(Word::len).min();
        assert_eq!(g.min_word_length(), shortest);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn random_recognizer_matches_enumeration(g in grammar()) {
        recognizer_agrees(&g, MAX_LEN)?;
    }

    #[test]
    fn random_epsilon_elimination(g in grammar()) {
        let mut expected = g.enumerate(MAX_LEN);
        expected.remove(&Word::empty());
        let h = g.eliminate_epsilon_productions();
        prop_assert!(!h.has_empty_productions());
        prop_assert_eq!(h.enumerate(MAX_LEN), expected);
    }

    #[test]
    fn reversal_mirrors_the_language(g in grammar()) {
        let mirrored: BTreeSet<Word> = g.enumerate(MAX_LEN).iter().map(Word::reversed).collect();
        prop_assert_eq!(g.reverse_productions().enumerate(MAX_LEN), mirrored);
    }

    #[test]
    fn relabeling_maps_the_language(g in grammar(), swap in any::<bool>()) {
        let (x, y) = if swap { ("b", "a") } else { ("p", "q") };
        let map: HashMap<Symbol, Symbol> = [
            (Symbol::plain("a"), Symbol::plain(x)),
            (Symbol::plain("b"), Symbol::plain(y)),
        ]
        .into_iter()
        .collect();
        let image: BTreeSet<Word> = g
            .enumerate(MAX_LEN)
            .iter()
            .map(|w| w.iter().map(|s| map[s].clone()).collect())
            .collect();
        prop_assert_eq!(g.relabel_terminals(&map).unwrap().enumerate(MAX_LEN), image);
    }

    #[test]
    fn text_round_trip(g in grammar()) {
        let text = g.to_text();
        let back = parse_grammar(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn min_length_is_the_shortest_word(g in grammar()) {
        let shortest = g.enumerate(MAX_LEN).iter().map(Word::len).min();
        match g.min_word_length() {
            Some(n) if n <= MAX_LEN => prop_assert_eq!(Some(n), shortest),
            Some(_) => prop_assert_eq!(shortest, None),
            None => prop_assert_eq!(shortest, None),
        }
    }
}
