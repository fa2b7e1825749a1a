//! Word problems, equality grammars and word-hyperbolic structures for
//! monoids presented by confluent context-free monadic rewriting systems.
//!
//! The pieces, bottom-up:
//!
//! * [`word`]: symbols, alphabets, words and homomorphisms;
//! * [`grammar`]: context-free grammars, transformations and an Earley
//!   recognizer;
//! * [`automata`]: finite automata and finite transducers;
//! * [`rewriting`]: rule systems, normal forms, bounded confluence checks;
//! * [`theta`]: the grammar of all pairs of equal words;
//! * [`structures`]: representative languages, change of generators and
//!   cross-section validation;
//! * [`cli`]: the `hypword` command line.

pub mod automata;
pub mod cli;
pub mod error;
pub mod grammar;
pub mod rewriting;
pub mod structures;
pub mod theta;
pub mod word;

pub use error::{Error, Result};
pub use grammar::Cfg;
pub use word::{Alphabet, Annotation, Flavor, Homomorphism, Symbol, Word};
pub use rewriting::{MonadicCfSystem, Strategy};
pub use theta::{build_theta, ThetaGrammar};
