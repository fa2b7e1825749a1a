//! Automaton and transducer file formats.
//!
//! ```text
//! states: q0 q1
//! alphabet: a b
//! initial: q0
//! accepting: q1
//! trans: q0 a q1
//! trans: q1 _ q0        ; `_` is an ε-move
//! ```
//!
//! Transducers use `input:` and `output:` instead of `alphabet:`, and
//! label moves `in/out`, where `out` is a comma-separated list of symbols
//! and either side may be `_`:
//!
//! ```text
//! trans: q0 b/x,y q0
//! ```

use std::collections::HashMap;

use super::{Move, Nfa, Transducer};
use crate::error::{Error, Result};
use crate::grammar::text::{symbol_at, tokenize, Token};
use crate::word::{Alphabet, Symbol, Word, EMPTY_TOKEN};

struct Header {
    states: Vec<String>,
    index: HashMap<String, usize>,
    initial: Vec<usize>,
    accepting: Vec<usize>,
    alphabets: HashMap<&'static str, Alphabet>,
    /// (line, tokens after `trans:`)
    moves: Vec<(usize, Vec<(String, usize)>)>,
}

fn parse_sections(text: &str, alphabet_keys: &[&'static str]) -> Result<Header> {
    let mut states: Option<Vec<String>> = None;
    let mut initial_raw: Option<(usize, Vec<(String, usize)>)> = None;
    let mut accepting_raw: Option<(usize, Vec<(String, usize)>)> = None;
    let mut alphabets: HashMap<&'static str, Alphabet> = HashMap::new();
    let mut moves = Vec::new();
    let owned = |toks: &[Token<'_>]| -> Vec<(String, usize)> {
        toks.iter().map(|t| (t.text.to_string(), t.column)).collect()
    };
    for (offset, line) in text.lines().enumerate() {
        let ln = offset + 1;
        let (tokens, _) = tokenize(line);
        let Some(first) = tokens.first() else {
            continue;
        };
        let rest = &tokens[1..];
        match first.text {
            "states:" => {
                if states.is_some() {
                    return Err(Error::syntax(ln, first.column, "duplicate `states:` line"));
                }
                states = Some(rest.iter().map(|t| t.text.to_string()).collect());
            }
            "initial:" => initial_raw = Some((ln, owned(rest))),
            "accepting:" => accepting_raw = Some((ln, owned(rest))),
            "trans:" => moves.push((ln, owned(rest))),
            key => {
                let name = key.strip_suffix(':');
                match name.and_then(|n| alphabet_keys.iter().find(|k| **k == n)) {
                    Some(k) => {
                        let mut a = Alphabet::new();
                        for t in rest {
                            if !a.insert(symbol_at(t, ln)?) {
                                return Err(Error::syntax(ln, t.column, "duplicate alphabet symbol"));
                            }
                        }
                        alphabets.insert(k, a);
                    }
                    None => {
                        return Err(Error::syntax(
                            ln,
                            first.column,
                            format!("unexpected `{}`", first.text),
                        ))
                    }
                }
            }
        }
    }
    let states = states.ok_or_else(|| Error::syntax(1, 1, "missing `states:` line"))?;
    let mut index = HashMap::new();
    for (i, s) in states.iter().enumerate() {
        if index.insert(s.clone(), i).is_some() {
            return Err(Error::syntax(1, 1, format!("duplicate state `{s}`")));
        }
    }
    for k in alphabet_keys {
        if !alphabets.contains_key(k) {
            return Err(Error::syntax(1, 1, format!("missing `{k}:` line")));
        }
    }
    let lookup = |raw: Option<(usize, Vec<(String, usize)>)>, key: &str| -> Result<Vec<usize>> {
        let (ln, toks) = raw.ok_or_else(|| Error::syntax(1, 1, format!("missing `{key}:` line")))?;
        toks.iter()
            .map(|(t, col)| {
                index
                    .get(t)
                    .copied()
                    .ok_or_else(|| Error::syntax(ln, *col, format!("unknown state `{t}`")))
            })
            .collect()
    };
    let initial = lookup(initial_raw, "initial")?;
    let accepting = lookup(accepting_raw, "accepting")?;
    Ok(Header {
        states,
        index,
        initial,
        accepting,
        alphabets,
        moves,
    })
}

fn state_at(h: &Header, name: &(String, usize), ln: usize) -> Result<usize> {
    h.index
        .get(&name.0)
        .copied()
        .ok_or_else(|| Error::syntax(ln, name.1, format!("unknown state `{}`", name.0)))
}

fn symbol_or_empty(text: &str, ln: usize, col: usize) -> Result<Option<Symbol>> {
    if text == EMPTY_TOKEN {
        return Ok(None);
    }
    Symbol::parse_token(text)
        .map(Some)
        .map_err(|e| Error::syntax(ln, col, e.to_string()))
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let h = parse_sections(text, &["alphabet"])?;
    let mut edges = Vec::new();
    for (ln, toks) in &h.moves {
        if toks.len() != 3 {
            return Err(Error::syntax(*ln, 1, "expected `trans: <state> <symbol|_> <state>`"));
        }
        let p = state_at(&h, &toks[0], *ln)?;
        let x = symbol_or_empty(&toks[1].0, *ln, toks[1].1)?;
        let q = state_at(&h, &toks[2], *ln)?;
        edges.push((p, x, q));
    }
    let alphabet = h.alphabets["alphabet"].clone();
    Nfa::with_names(h.states, alphabet, edges, h.initial, h.accepting)
        .map_err(|e| Error::syntax(1, 1, e.to_string()))
}

pub fn parse_transducer(text: &str) -> Result<Transducer> {
    let h = parse_sections(text, &["input", "output"])?;
    let mut moves = Vec::new();
    for (ln, toks) in &h.moves {
        if toks.len() != 3 {
            return Err(Error::syntax(*ln, 1, "expected `trans: <state> <in>/<out> <state>`"));
        }
        let (label, col) = (&toks[1].0, toks[1].1);
        let (inp, out) = label
            .split_once('/')
            .ok_or_else(|| Error::syntax(*ln, col, "a transducer label reads `in/out`"))?;
        let input = symbol_or_empty(inp, *ln, col)?;
        let output = if out == EMPTY_TOKEN {
            Word::empty()
        } else {
            out.split(',')
                .map(|t| Symbol::parse_token(t).map_err(|e| Error::syntax(*ln, col, e.to_string())))
                .collect::<Result<Word>>()?
        };
        moves.push(Move {
            from: state_at(&h, &toks[0], *ln)?,
            input,
            output,
            to: state_at(&h, &toks[2], *ln)?,
        });
    }
    Transducer::with_names(
        h.states,
        h.alphabets["input"].clone(),
        h.alphabets["output"].clone(),
        moves,
        h.initial,
        h.accepting,
    )
    .map_err(|e| Error::syntax(1, 1, e.to_string()))
}

fn list(names: &[String], set: impl IntoIterator<Item = usize>) -> String {
    set.into_iter().map(|q| format!(" {}", names[q])).collect()
}

fn opt_symbol(x: &Option<Symbol>) -> String {
    x.as_ref().map_or_else(|| EMPTY_TOKEN.to_string(), Symbol::to_string)
}

impl Nfa {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "states:{}\nalphabet:{}\ninitial:{}\naccepting:{}\n",
            list(self.states(), 0..self.num_states()),
            self.alphabet().iter().map(|s| format!(" {s}")).collect::<String>(),
            list(self.states(), self.initial().iter().copied()),
            list(self.states(), self.accepting().iter().copied()),
        );
        for (p, x, q) in self.transitions() {
            out.push_str(&format!(
                "trans: {} {} {}\n",
                self.states()[*p],
                opt_symbol(x),
                self.states()[*q]
            ));
        }
        out
    }
}

impl Transducer {
    pub fn to_text(&self) -> String {
        let alpha = |a: &Alphabet| a.iter().map(|s| format!(" {s}")).collect::<String>();
        let mut out = format!(
            "states:{}\ninput:{}\noutput:{}\ninitial:{}\naccepting:{}\n",
            list(self.states(), 0..self.num_states()),
            alpha(self.input_alphabet()),
            alpha(self.output_alphabet()),
            list(self.states(), self.initial().iter().copied()),
            list(self.states(), self.accepting().iter().copied()),
        );
        for m in self.moves() {
            let output = if m.output.is_empty() {
                EMPTY_TOKEN.to_string()
            } else {
                m.output
                    .iter()
                    .map(Symbol::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out.push_str(&format!(
                "trans: {} {}/{} {}\n",
                self.states()[m.from],
                opt_symbol(&m.input),
                output,
                self.states()[m.to]
            ));
        }
        out
    }
}
