//! Grammar file format.
//!
//! ```text
//! ; comments run from `;` to the end of the line
//! start: S
//! nonterminals: S T          ; optional
//! terminals: a b c d         ; optional
//! S -> a T d
//! T -> b T c | b c
//! E -> _                     ; `_` is the empty right-hand side
//! ```
//!
//! Without a `nonterminals:` line, a token is a nonterminal when it is the
//! start symbol, appears on a left-hand side, or is an unquoted token
//! beginning with an uppercase letter. Everything else is a terminal;
//! quote a token (`"X"`) to force a terminal. Without a `terminals:` line
//! the terminal alphabet is every terminal used, in order of appearance.

use super::{Cfg, Production};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word, EMPTY_TOKEN};

/// A token with its 1-based column.
#[derive(Debug, Clone)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Splits a line into whitespace-separated tokens and the trailing comment
/// (text after an unquoted `;`, trimmed).
pub(crate) fn tokenize(line: &str) -> (Vec<Token<'_>>, Option<&str>) {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let mut in_quotes = false;
    let mut comment = None;
    let col = |byte: usize| line[..byte].chars().count() + 1;
    for (i, c) in line.char_indices() {
        if in_quotes {
            if c == '"' {
                in_quotes = false;
            }
            continue;
        }
        if c == ';' {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &line[s..i],
                    column: col(s),
                });
            }
            comment = Some(line[i + 1..].trim());
            break;
        }
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &line[s..i],
                    column: col(s),
                });
            }
        } else {
            if start.is_none() {
                start = Some(i);
            }
            if c == '"' {
                in_quotes = true;
            }
        }
    }
    if comment.is_none() {
        if let Some(s) = start {
            tokens.push(Token {
                text: &line[s..],
                column: col(s),
            });
        }
    }
    (tokens, comment)
}

pub(crate) fn symbol_at(tok: &Token<'_>, line: usize) -> Result<Symbol> {
    Symbol::parse_token(tok.text).map_err(|e| Error::syntax(line, tok.column, e.to_string()))
}

fn looks_like_nonterminal(text: &str) -> bool {
    text.chars().next().is_some_and(|c| c.is_uppercase())
}

/// A parsed grammar along with the trailing comment of each production's
/// line (shared by alternatives on one line).
#[derive(Debug, Clone)]
pub struct ParsedGrammar {
    pub grammar: Cfg,
    pub comments: Vec<Option<String>>,
}

pub fn parse_grammar(text: &str) -> Result<Cfg> {
    parse_grammar_with_comments(text).map(|p| p.grammar)
}

/// Parses a grammar whose lines are numbered from `first_line`. Used for
/// grammars embedded in larger files.
pub(crate) fn parse_grammar_at(text: &str, first_line: usize) -> Result<ParsedGrammar> {
    struct RawProd {
        line: usize,
        column: usize,
        lhs: Symbol,
        lhs_token: String,
        rhs: Vec<(Symbol, bool)>,
        comment: Option<String>,
    }

    let mut start: Option<Symbol> = None;
    let mut declared_nts: Option<Alphabet> = None;
    let mut declared_ts: Option<Alphabet> = None;
    let mut raw: Vec<RawProd> = Vec::new();
    let mut last_line = first_line;

    for (offset, line) in text.lines().enumerate() {
        let ln = first_line + offset;
        last_line = ln;
        let (tokens, comment) = tokenize(line);
        let Some(first) = tokens.first() else {
            continue;
        };
        let header = |name: &str| first.text == name;
        if header("start:") {
            if tokens.len() != 2 {
                return Err(Error::syntax(ln, first.column, "`start:` takes exactly one symbol"));
            }
            if start.is_some() {
                return Err(Error::syntax(ln, first.column, "duplicate `start:` line"));
            }
            start = Some(symbol_at(&tokens[1], ln)?);
            continue;
        }
        if header("nonterminals:") || header("terminals:") {
            let mut a = Alphabet::new();
            for t in &tokens[1..] {
                if !a.insert(symbol_at(t, ln)?) {
                    return Err(Error::syntax(ln, t.column, format!("duplicate symbol `{}`", t.text)));
                }
            }
            let slot = if header("terminals:") {
                &mut declared_ts
            } else {
                &mut declared_nts
            };
            if slot.replace(a).is_some() {
                return Err(Error::syntax(ln, first.column, format!("duplicate `{}` line", first.text)));
            }
            continue;
        }
        if tokens.len() < 3 || tokens[1].text != "->" {
            return Err(Error::syntax(
                ln,
                first.column,
                "expected `start:`, `nonterminals:`, `terminals:` or a production `X -> ...`",
            ));
        }
        if first.text.starts_with('"') {
            return Err(Error::syntax(ln, first.column, "a quoted token cannot be a left-hand side"));
        }
        let lhs = symbol_at(first, ln)?;
        let mut alternatives: Vec<Vec<&Token<'_>>> = vec![Vec::new()];
        for t in &tokens[2..] {
            if t.text == "|" {
                alternatives.push(Vec::new());
            } else {
                alternatives.last_mut().expect("nonempty").push(t);
            }
        }
        for alt in alternatives {
            let rhs = if alt.len() == 1 && alt[0].text == EMPTY_TOKEN {
                Vec::new()
            } else if alt.is_empty() {
                return Err(Error::syntax(ln, first.column, "empty alternative; write `_` for ε"));
            } else {
                alt.iter()
                    .map(|t| {
                        if t.text == EMPTY_TOKEN {
                            return Err(Error::syntax(ln, t.column, "`_` must stand alone"));
                        }
                        if t.text == "->" {
                            return Err(Error::syntax(ln, t.column, "unexpected `->`; quote it to use it as a terminal"));
                        }
                        let quoted = t.text.starts_with('"');
                        Ok((symbol_at(t, ln)?, !quoted && looks_like_nonterminal(t.text)))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            raw.push(RawProd {
                line: ln,
                column: first.column,
                lhs: lhs.clone(),
                lhs_token: first.text.to_string(),
                rhs,
                comment: comment.map(str::to_string),
            });
        }
    }

    let start = start.ok_or_else(|| Error::syntax(first_line, 1, "missing `start:` line"))?;

    let nonterminals = match declared_nts {
        Some(n) => {
            if !n.contains(&start) {
                return Err(Error::syntax(first_line, 1, format!("start symbol `{start}` is not declared")));
            }
            for p in &raw {
                if !n.contains(&p.lhs) {
                    return Err(Error::syntax(
                        p.line,
                        p.column,
                        format!("`{}` is not a declared nonterminal", p.lhs_token),
                    ));
                }
            }
            n
        }
        None => {
            let mut n = Alphabet::new();
            n.insert(start.clone());
            for p in &raw {
                n.insert(p.lhs.clone());
            }
            for p in &raw {
                for (s, upper) in &p.rhs {
                    if *upper {
                        n.insert(s.clone());
                    }
                }
            }
            n
        }
    };

    let terminals = match declared_ts {
        Some(t) => t,
        None => raw
            .iter()
            .flat_map(|p| p.rhs.iter().map(|(s, _)| s))
            .filter(|s| !nonterminals.contains(s))
            .cloned()
            .collect(),
    };

    let comments = raw.iter().map(|p| p.comment.clone()).collect();
    let productions = raw
        .into_iter()
        .map(|p| Production::new(p.lhs, p.rhs.into_iter().map(|(s, _)| s).collect()))
        .collect();
    let grammar = Cfg::new(nonterminals, terminals, productions, start)
        .map_err(|e| Error::syntax(last_line, 1, e.to_string()))?;
    Ok(ParsedGrammar { grammar, comments })
}

pub fn parse_grammar_with_comments(text: &str) -> Result<ParsedGrammar> {
    parse_grammar_at(text, 1)
}

/// Token for a grammar symbol. Plain terminals that would read back as
/// nonterminals are quoted.
pub(crate) fn grammar_token(g: &Cfg, s: &Symbol) -> String {
    if s.is_plain() && !g.is_nonterminal(s) && looks_like_nonterminal(s.name()) {
        s.quoted_token()
    } else {
        s.to_string()
    }
}

pub(crate) fn production_line(g: &Cfg, p: &Production) -> String {
    let rhs = if p.rhs.is_empty() {
        EMPTY_TOKEN.to_string()
    } else {
        p.rhs
            .iter()
            .map(|s| grammar_token(g, s))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("{} -> {}", grammar_token(g, &p.lhs), rhs)
}

impl Cfg {
    /// Header lines (`start:`, `nonterminals:`, `terminals:`).
    pub(crate) fn header_text(&self) -> String {
        let list = |a: &Alphabet| {
            a.iter()
                .map(|s| format!(" {}", grammar_token(self, s)))
                .collect::<String>()
        };
        format!(
            "start: {}\nnonterminals:{}\nterminals:{}\n",
            grammar_token(self, self.start()),
            list(self.nonterminals()),
            list(self.terminals()),
        )
    }

    /// Renders the grammar in the file format, one production per line.
    pub fn to_text(&self) -> String {
        let mut out = self.header_text();
        for p in self.productions() {
            out.push_str(&production_line(self, p));
            out.push('\n');
        }
        out
    }
}

/// Renders a word the way the grammar file would write it.
pub fn form_text(g: &Cfg, w: &Word) -> String {
    if w.is_empty() {
        return EMPTY_TOKEN.into();
    }
    w.iter().map(|s| grammar_token(g, s)).collect::<Vec<_>>().join(" ")
}
