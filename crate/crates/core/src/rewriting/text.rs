//! Rewriting-system file format.
//!
//! ```text
//! alphabet: a b c d
//! rhs eps:
//! start: S
//! S -> a T d
//! T -> b T c | b c
//! ```
//!
//! Each `rhs <letter>:` or `rhs eps:` line opens a block holding one
//! grammar in the grammar file format. Parsed systems are validated.

use super::{rhs_name, MonadicCfSystem, Rhs};
use crate::error::{Error, Result};
use crate::grammar::text::{parse_grammar_at, symbol_at, tokenize};
use crate::word::{Alphabet, Symbol, EPS_NAME};

struct Block {
    rhs: Rhs,
    first_line: usize,
    body: String,
}

pub fn parse_system(text: &str) -> Result<MonadicCfSystem> {
    let mut alphabet: Option<Alphabet> = None;
    let mut blocks: Vec<Block> = Vec::new();
    for (offset, line) in text.lines().enumerate() {
        let ln = offset + 1;
        let (tokens, _) = tokenize(line);
        let Some(first) = tokens.first() else {
            if let Some(b) = blocks.last_mut() {
                b.body.push('\n');
            }
            continue;
        };
        if first.text == "alphabet:" {
            if alphabet.is_some() || !blocks.is_empty() {
                return Err(Error::syntax(ln, first.column, "`alphabet:` must appear once, before any `rhs` block"));
            }
            let mut a = Alphabet::new();
            for t in &tokens[1..] {
                let s = symbol_at(t, ln)?;
                if !s.is_plain() || s.name() == EPS_NAME {
                    return Err(Error::syntax(ln, t.column, format!("`{}` cannot be a letter", t.text)));
                }
                if !a.insert(s) {
                    return Err(Error::syntax(ln, t.column, format!("duplicate letter `{}`", t.text)));
                }
            }
            alphabet = Some(a);
            continue;
        }
        if first.text == "rhs" && tokens.len() == 2 && tokens[1].text.ends_with(':') {
            let Some(a) = &alphabet else {
                return Err(Error::syntax(1, 1, "missing `alphabet:` line"));
            };
            let tok = &tokens[1];
            let name = &tok.text[..tok.text.len() - 1];
            let rhs = if name == EPS_NAME {
                None
            } else {
                let s = Symbol::parse_token(name).map_err(|e| Error::syntax(ln, tok.column, e.to_string()))?;
                if !a.contains(&s) {
                    return Err(Error::syntax(ln, tok.column, format!("`{name}` is not in the alphabet")));
                }
                Some(s)
            };
            if blocks.iter().any(|b| b.rhs == rhs) {
                return Err(Error::syntax(ln, tok.column, format!("duplicate block `rhs {name}:`")));
            }
            blocks.push(Block {
                rhs,
                first_line: ln + 1,
                body: String::new(),
            });
            continue;
        }
        match blocks.last_mut() {
            Some(b) => {
                b.body.push_str(line);
                b.body.push('\n');
            }
            None if alphabet.is_none() => return Err(Error::syntax(1, 1, "missing `alphabet:` line")),
            None => {
                return Err(Error::syntax(ln, first.column, "expected `rhs <letter>:` or `rhs eps:`"))
            }
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::syntax(1, 1, "missing `alphabet:` line"))?;
    let mut families = Vec::new();
    for b in blocks {
        let g = parse_grammar_at(&b.body, b.first_line)?.grammar;
        if let Some(s) = g.terminals().iter().find(|s| !alphabet.contains(s)) {
            return Err(Error::Validation {
                family: rhs_name(&b.rhs),
                reason: format!("terminal `{s}` is not in the alphabet"),
            });
        }
        families.push((b.rhs, g));
    }
    let system = MonadicCfSystem::new(alphabet, families)?;
    system.validate().into_result()?;
    Ok(system)
}

impl MonadicCfSystem {
    /// Renders the system in the file format, families in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet:{}\n", self.alphabet().iter().map(|s| format!(" {s}")).collect::<String>());
        for (rhs, g) in self.families() {
            out.push_str(&format!("rhs {}:\n", rhs_name(rhs)));
            out.push_str(&g.to_text());
        }
        out
    }
}
