//! The `hypword` command line.
//!
//! Boolean verbs exit 0 for true and 1 for false, `cross-section` exits 3
//! when it finds a collision, and every error exits 2. Output is fully
//! deterministic.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::automata::text::parse_nfa;
use crate::automata::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::grammar::text::parse_grammar;
use crate::rewriting::text::parse_system;
use crate::rewriting::{ConfluenceReport, MonadicCfSystem};
use crate::structures::{
    change_generators, example_monoid, validate_cross_section, Equality, GeneratorMap,
    WordHypStructure,
};
use crate::theta::{build_theta, parse_theta, ThetaGrammar};
use crate::word::{Homomorphism, Word};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_COLLISION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hypword",
    version,
    about = "Word problems and equality grammars for context-free monadic rewriting systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of a word.
    Reduce { system: PathBuf, word: String },
    /// Decide whether two words are equal in the monoid.
    Equal { system: PathBuf, u: String, v: String },
    /// Compile the equality grammar of a system.
    Compile {
        system: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide `u #2 v^rev` membership (u = v) with the equality grammar.
    MemberK { grammar: PathBuf, u: String, v: String },
    /// Decide `u #1 v #2 w^rev` membership (uv = w) with the equality grammar.
    MemberMul {
        grammar: PathBuf,
        u: String,
        v: String,
        w: String,
    },
    /// Check that every word up to a length has one irreducible descendant.
    CheckConfluence {
        system: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Search a candidate cross-section automaton for collisions.
    CrossSection {
        system: PathBuf,
        automaton: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Push a representative automaton through a generator map.
    ChangeGens {
        structure: PathBuf,
        map: PathBuf,
        /// System deciding equality over the target letters; without it the
        /// target monoid is free.
        #[arg(long)]
        target_system: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Print the built-in four-letter example system.
    Example42 {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
        alpha_min: u8,
    },
    /// List the words of a grammar or automaton up to a length.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Trim a grammar before enumerating.
        #[arg(long)]
        trim: bool,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// A check result: status, canonically ordered witnesses and counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub status: Status,
    pub witnesses: Vec<String>,
    pub counts: Vec<(&'static str, usize)>,
}

impl Report {
    pub fn render(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        };
        let mut out = format!("status: {status}\n");
        for (k, v) in &self.counts {
            let _ = writeln!(out, "{k}: {v}");
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "witness: {w}");
        }
        out
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<MonadicCfSystem> {
    parse_system(&read(path)?)
}

fn first_keyword(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split(';').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

/// A system file (first keyword `alphabet:`) is compiled on the fly;
/// anything else is read as a compiled grammar.
fn load_theta(path: &Path) -> Result<ThetaGrammar> {
    let text = read(path)?;
    if first_keyword(&text) == Some("alphabet:") {
        build_theta(&parse_system(&text)?)
    } else {
        parse_theta(&text)
    }
}

fn word(text: &str) -> Result<Word> {
    Word::parse(text)
}

fn boolean(b: bool) -> (i32, String) {
    if b {
        (EXIT_TRUE, "true\n".into())
    } else {
        (EXIT_FALSE, "false\n".into())
    }
}

fn words_block(words: impl IntoIterator<Item = Word>) -> String {
    words.into_iter().map(|w| format!("{w}\n")).collect()
}

/// Executes a parsed command, returning the exit code and standard output.
pub fn execute(command: &Command) -> Result<(i32, String)> {
    match command {
        Command::Reduce { system, word: w } => {
            let s = load_system(system)?;
            Ok((EXIT_TRUE, format!("{}\n", s.normal_form(&word(w)?)?)))
        }
        Command::Equal { system, u, v } => {
            let s = load_system(system)?;
            Ok(boolean(s.equal_in_monoid(&word(u)?, &word(v)?)?))
        }
        Command::Compile { system, output } => {
            let text = build_theta(&load_system(system)?)?.to_text();
            match output {
                Some(path) => {
                    fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    Ok((EXIT_TRUE, String::new()))
                }
                None => Ok((EXIT_TRUE, text)),
            }
        }
        Command::MemberK { grammar, u, v } => {
            let t = load_theta(grammar)?;
            Ok(boolean(t.k_member(&word(u)?, &word(v)?)?))
        }
        Command::MemberMul { grammar, u, v, w } => {
            let t = load_theta(grammar)?;
            Ok(boolean(t.mtable_member(&word(u)?, &word(v)?, &word(w)?)?))
        }
        Command::CheckConfluence { system, max_len } => {
            let report = match load_system(system)?.check_confluence_bounded(*max_len)? {
                ConfluenceReport::Pass { words_checked, .. } => Report {
                    status: Status::Pass,
                    witnesses: Vec::new(),
                    counts: vec![("max-len", *max_len), ("words-checked", words_checked)],
                },
                ConfluenceReport::Witness { word, descendants } => Report {
                    status: Status::Fail,
                    witnesses: vec![format!(
                        "{word} -> {}",
                        descendants.iter().map(Word::to_string).collect::<Vec<_>>().join(" | ")
                    )],
                    counts: vec![("max-len", *max_len), ("descendants", descendants.len())],
                },
            };
            let code = if report.status == Status::Pass { EXIT_TRUE } else { EXIT_FALSE };
            Ok((code, report.render()))
        }
        Command::CrossSection {
            system,
            automaton,
            max_len,
        } => {
            let s = load_system(system)?;
            let dfa = Dfa::from_nfa(&parse_nfa(&read(automaton)?)?);
            let r = validate_cross_section(&dfa, &s, *max_len)?;
            let status = if r.has_collision() {
                Status::Fail
            } else if r.unwitnessed.is_empty() {
                Status::Pass
            } else {
                Status::Inconclusive
            };
            let mut witnesses: Vec<String> = r
                .collisions
                .iter()
                .map(|c| format!("{} ~ {} = {}", c.first, c.second, c.normal_form))
                .collect();
            witnesses.extend(r.unwitnessed.iter().map(|w| format!("unwitnessed {w}")));
            let report = Report {
                status,
                witnesses,
                counts: vec![
                    ("max-len", *max_len),
                    ("words-checked", r.words_checked),
                    ("collisions", r.collisions.len()),
                    ("unwitnessed", r.unwitnessed.len()),
                ],
            };
            let code = if r.has_collision() { EXIT_COLLISION } else { EXIT_TRUE };
            Ok((code, report.render()))
        }
        Command::ChangeGens {
            structure,
            map,
            target_system,
            max_len,
        } => {
            let reps = parse_nfa(&read(structure)?)?;
            let m = GeneratorMap::parse(&read(map)?, false)?;
            let free: Equality = Arc::new(|u: &Word, v: &Word| Ok(u == v));
            let source = WordHypStructure::new(reps.clone(), free.clone(), Homomorphism::identity(reps.alphabet()))?;
            let equality = match target_system {
                Some(path) => {
                    let s = load_system(path)?;
                    if !m.target().is_subset(s.alphabet()) {
                        return Err(Error::Domain("map images use letters outside the target system".into()));
                    }
                    Arc::new(move |u: &Word, v: &Word| s.equal_in_monoid(u, v)) as Equality
                }
                None => free,
            };
            let changed = change_generators(&source, &m, equality)?;
            let groups = changed.representative_groups(*max_len)?;
            let repeated: Vec<&Vec<Word>> = groups.iter().filter(|g| g.len() > 1).collect();
            let report = Report {
                status: if repeated.is_empty() { Status::Pass } else { Status::Fail },
                witnesses: repeated
                    .iter()
                    .map(|g| g.iter().map(Word::to_string).collect::<Vec<_>>().join(" ~ "))
                    .collect(),
                counts: vec![
                    ("max-len", *max_len),
                    ("representatives", groups.iter().map(Vec::len).sum()),
                    ("elements", groups.len()),
                ],
            };
            Ok((EXIT_TRUE, format!("{}{}", changed.reps().trim().to_text(), report.render())))
        }
        Command::Example42 { alpha_min } => Ok((EXIT_TRUE, example_monoid(*alpha_min as usize).to_text())),
        Command::Enumerate { file, max_len, trim } => {
            let text = read(file)?;
            let words = if first_keyword(&text) == Some("states:") {
                let nfa: Nfa = parse_nfa(&text)?;
                nfa.enumerate(*max_len)
            } else {
                let g = parse_grammar(&text)?;
                let g = if *trim { g.trim() } else { g };
                g.enumerate(*max_len)
            };
            Ok((EXIT_TRUE, words_block(words)))
        }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_TRUE,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
