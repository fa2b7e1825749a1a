use std::collections::{BTreeSet, HashMap, VecDeque};

use super::Nfa;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// A deterministic automaton: one initial state, no ε-moves, at most one
/// move per state and letter. Missing moves reject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    states: Vec<String>,
    alphabet: Alphabet,
    /// `delta[q][i]` is the move from `q` on the `i`-th alphabet letter.
    delta: Vec<Vec<Option<usize>>>,
    initial: usize,
    accepting: BTreeSet<usize>,
}

impl Dfa {
    pub fn new(
        num_states: usize,
        alphabet: Alphabet,
        transitions: Vec<(usize, Symbol, usize)>,
        initial: usize,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let invalid = |message: String| Error::Invalid {
            what: "deterministic automaton",
            message,
        };
        if initial >= num_states {
            return Err(invalid(format!("initial state {initial} out of range")));
        }
        let mut delta = vec![vec![None; alphabet.len()]; num_states];
        for (p, s, q) in transitions {
            if p >= num_states || q >= num_states {
                return Err(invalid(format!("transition {p} -> {q} out of range")));
            }
            let i = alphabet.position(&s).ok_or_else(|| Error::ForeignSymbol {
                symbol: s.clone(),
                context: "automaton",
            })?;
            if delta[p][i].replace(q).is_some_and(|old| old != q) {
                return Err(invalid(format!("state {p} has two moves on `{s}`")));
            }
        }
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(q) = accepting.iter().find(|&&q| q >= num_states) {
            return Err(invalid(format!("accepting state {q} out of range")));
        }
        Ok(Dfa {
            states: (0..num_states).map(|i| format!("q{i}")).collect(),
            alphabet,
            delta,
            initial,
            accepting,
        })
    }

    /// Subset construction over ε-closed state sets. Only reachable,
    /// nonempty subsets become states, so the result may be incomplete.
    pub fn from_nfa(nfa: &Nfa) -> Dfa {
        let adj = nfa.adjacency();
        let start = Nfa::closure(&adj, nfa.initial().iter().copied());
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut queue = VecDeque::from([0usize]);
        let mut edges = Vec::new();
        while let Some(i) = queue.pop_front() {
            for s in nfa.alphabet() {
                let next = Nfa::step(&adj, &subsets[i], s);
                if next.is_empty() {
                    continue;
                }
                let j = *index.entry(next.clone()).or_insert_with(|| {
                    subsets.push(next);
                    queue.push_back(subsets.len() - 1);
                    subsets.len() - 1
                });
                edges.push((i, s.clone(), j));
            }
        }
        let accepting: Vec<usize> = subsets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|q| nfa.accepting().contains(q)))
            .map(|(i, _)| i)
            .collect();
        Dfa::new(subsets.len(), nfa.alphabet().clone(), edges, 0, accepting).expect("valid")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn next(&self, q: usize, s: &Symbol) -> Option<usize> {
        self.alphabet.position(s).and_then(|i| self.delta[q][i])
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        self.alphabet.check_word(w, "automaton")?;
        let mut q = self.initial;
        for s in w {
            match self.next(q, s) {
                Some(r) => q = r,
                None => return Ok(false),
            }
        }
        Ok(self.accepting.contains(&q))
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut edges = Vec::new();
        for (q, row) in self.delta.iter().enumerate() {
            for (i, r) in row.iter().enumerate() {
                if let Some(r) = r {
                    edges.push((q, Some(self.alphabet.symbols()[i].clone()), *r));
                }
            }
        }
        Nfa::with_names(
            self.states.clone(),
            self.alphabet.clone(),
            edges,
            [self.initial],
            self.accepting.iter().copied(),
        )
        .expect("valid")
    }

    /// All accepted words of length at most `maxlen`.
    pub fn enumerate(&self, maxlen: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        let mut layer = vec![(Word::empty(), self.initial)];
        for len in 0..=maxlen {
            for (w, q) in &layer {
                if self.accepting.contains(q) {
                    out.insert(w.clone());
                }
            }
            if len == maxlen {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &layer {
                for (i, s) in self.alphabet.iter().enumerate() {
                    if let Some(r) = self.delta[*q][i] {
                        let mut v = w.clone();
                        v.push(s.clone());
                        next.push((v, r));
                    }
                }
            }
            layer = next;
        }
        out
    }
}
