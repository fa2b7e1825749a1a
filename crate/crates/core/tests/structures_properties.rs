mod common;

use std::collections::BTreeSet;

use hypword::automata::{Dfa, Nfa};
use hypword::structures::{
    adjust_identity_rep, adversarial_corpus, build_q_relation, example_monoid,
    free_group_rank_one, unwitnessed_bound, validate_cross_section, GeneratorMap,
    WordHypStructure,
};
use hypword::automata::text::parse_nfa;
use hypword::{build_theta, Alphabet, Symbol, Word};

use common::{chars, data, w, x_squared};

fn marked(u: &Word, v: &Word, rev_w: &Word) -> Word {
    let mut out = u.clone();
    out.push(Symbol::marker1());
    out = out.concat(v);
    out.push(Symbol::marker2());
    out.concat(rev_w)
}

#[test]
fn q_relation_rewrites_each_factor() {
    let m = GeneratorMap::parse("b -> x y\nc -> y\n", true).unwrap();
    let q = build_q_relation(&m);
    let words = m.source().words_up_to(2);
    let outputs = m.target().words_up_to(2);
    for u in &words {
        for v in &words {
            for x in &words {
                let input = marked(u, v, &x.reversed());
                let (mu, mv, mx) = (m.apply(u).unwrap(), m.apply(v).unwrap(), m.apply(x).unwrap().reversed());
                assert!(q.relates(&input, &marked(&mu, &mv, &mx)).unwrap(), "{input}");
                assert!(!q.relates(&input, &marked(&mx, &mv, &mu)).unwrap() || mu == mx);
                for y in &outputs {
                    let expected = *y == mv;
                    assert_eq!(q.relates(&input, &marked(&mu, y, &mx)).unwrap(), expected, "{input} {y}");
                }
            }
        }
    }
    let pairs = q.pairs_up_to(3, 5);
    assert!(pairs.iter().all(|(i, o)| {
        let parts = |x: &Word| x.iter().filter(|s| s.is_marker()).cloned().collect::<Vec<_>>();
        parts(i) == vec![Symbol::marker1(), Symbol::marker2()] && parts(i) == parts(o)
    }));
}

#[test]
fn q_relation_needs_both_markers() {
    let m = GeneratorMap::parse("b -> x\n", true).unwrap();
    let q = build_q_relation(&m);
    assert!(q.relates(&w("b #1 b #2 b"), &w("x #1 x #2 x")).unwrap());
    assert!(!q.relates(&w("b #1 b b"), &w("x #1 x x")).unwrap());
    assert!(!q.relates(&w("b #2 b #1"), &w("x #2 x #1")).unwrap());
}

#[test]
fn structure_table_agrees_with_compiled_grammar() {
    let s = example_monoid(1);
    let theta = build_theta(&s).unwrap();
    let st = WordHypStructure::from_system(&s);
    let short = s.alphabet().words_up_to(2);
    let long = s.alphabet().words_up_to(3);
    for u in &short {
        for v in &short {
            for x in &long {
                assert_eq!(st.ml_member(u, v, x).unwrap(), theta.mtable_member(u, v, x).unwrap(), "{u} {v} {x}");
            }
        }
    }
}

#[test]
fn table_only_admits_representatives() {
    let st = WordHypStructure::new(
        parse_nfa(&std::fs::read_to_string(data("structures/x-squared-reps.aut")).unwrap()).unwrap(),
        std::sync::Arc::new(|u: &Word, v: &Word| x_squared().equal_in_monoid(u, v)),
        hypword::Homomorphism::identity(&Alphabet::plain("x").unwrap()),
    )
    .unwrap();
    assert!(st.ml_member(&chars("x"), &chars("x"), &Word::empty()).unwrap());
    assert!(!st.ml_member(&chars("xx"), &Word::empty(), &Word::empty()).unwrap());
    assert_eq!(st.representative_groups(6).unwrap(), vec![vec![Word::empty()], vec![chars("x")]]);
}

#[test]
fn identity_representative_can_be_replaced() {
    let reps = Nfa::from_words(Alphabet::plain("x").unwrap(), &[Word::empty(), chars("x")]).unwrap();
    let adjusted = adjust_identity_rep(&reps, &chars("xx")).unwrap();
    assert_eq!(adjusted.enumerate(4), BTreeSet::from([chars("x"), chars("xx")]));
    assert!(adjust_identity_rep(&reps, &Word::empty()).is_err());
}

#[test]
fn map_files_round_trip() {
    for name in ["maps/b-to-x.map", "maps/b-to-xy.map", "maps/x-to-yyy.map"] {
        let m = GeneratorMap::parse(&std::fs::read_to_string(data(name)).unwrap(), true).unwrap();
        assert_eq!(GeneratorMap::parse(&m.to_text(), true).unwrap(), m);
    }
    assert!(GeneratorMap::parse("b -> _\n", true).is_err());
    assert!(GeneratorMap::parse("b -> _\n", false).is_ok());
    assert!(GeneratorMap::parse("b -> x\nb -> y\n", false).is_err());
}

#[test]
fn shortlex_normal_forms_form_a_cross_section() {
    let s = free_group_rank_one();
    let irreducible = Nfa::from_words(
        s.alphabet().clone(),
        &s.alphabet()
            .words_up_to(6)
            .into_iter()
            .filter(|u| s.is_irreducible(u).unwrap())
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let r = validate_cross_section(&Dfa::from_nfa(&irreducible), &s, 6).unwrap();
    assert!(!r.has_collision());
    assert!(r.unwitnessed.is_empty());
}

#[test]
fn missing_elements_are_unwitnessed() {
    let s = x_squared();
    let only_empty = Dfa::from_nfa(&Nfa::from_words(s.alphabet().clone(), &[Word::empty()]).unwrap());
    let r = validate_cross_section(&only_empty, &s, 2).unwrap();
    assert!(!r.has_collision());
    assert_eq!(r.unwitnessed, vec![chars("x")]);
    assert_eq!(unwitnessed_bound(0), 0);
    assert_eq!(unwitnessed_bound(2), 1);
    assert_eq!(unwitnessed_bound(8), 4);
}

#[test]
fn candidate_files_match_the_corpus() {
    for c in adversarial_corpus() {
        let text = std::fs::read_to_string(data(&format!("candidates/{}.aut", c.name))).unwrap();
        let from_file = Dfa::from_nfa(&parse_nfa(&text).unwrap());
        assert_eq!(from_file.enumerate(8), c.dfa.enumerate(8), "{}", c.name);
    }
}
