//! Regular languages and rational relations.

mod dfa;
mod nfa;
pub mod text;
mod transducer;

pub use dfa::Dfa;
pub use nfa::{Nfa, NfaEdge};
pub use transducer::{Move, Transducer};
