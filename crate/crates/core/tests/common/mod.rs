#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use hypword::rewriting::MonadicCfSystem;
use hypword::structures::{example_monoid, free_group_rank_one};
use hypword::{Alphabet, Word};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

pub fn chars(s: &str) -> Word {
    Word::from_chars(s)
}

/// The two shipped confluent systems.
pub fn confluent_systems() -> Vec<(&'static str, MonadicCfSystem)> {
    vec![("example42", example_monoid(1)), ("free-group", free_group_rank_one())]
}

pub fn non_confluent() -> MonadicCfSystem {
    MonadicCfSystem::finite(
        Alphabet::plain("a").unwrap(),
        &[(chars("aa"), None), (chars("aaa"), None)],
    )
    .unwrap()
}

pub fn x_squared() -> MonadicCfSystem {
    MonadicCfSystem::finite(Alphabet::plain("x").unwrap(), &[(chars("xx"), None)]).unwrap()
}

/// Normal form of every word up to `max_len`.
pub fn normal_forms(s: &MonadicCfSystem, max_len: usize) -> HashMap<Word, Word> {
    s.alphabet()
        .words_up_to(max_len)
        .into_iter()
        .map(|u| {
            let nf = s.normal_form(&u).unwrap();
            (u, nf)
        })
        .collect()
}
