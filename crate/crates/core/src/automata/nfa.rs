use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// One NFA move; `None` is an ε-move.
pub type NfaEdge = (usize, Option<Symbol>, usize);

/// A nondeterministic finite automaton with ε-moves. States are indices
/// `0..states.len()` and carry a display name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    states: Vec<String>,
    alphabet: Alphabet,
    transitions: Vec<NfaEdge>,
    initial: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

impl Nfa {
    /// An automaton with `num_states` states named `q0, q1, ...`.
    pub fn new(
        num_states: usize,
        alphabet: Alphabet,
        transitions: Vec<NfaEdge>,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        Self::with_names(numbered(num_states), alphabet, transitions, initial, accepting)
    }

    pub fn with_names(
        states: Vec<String>,
        alphabet: Alphabet,
        transitions: Vec<NfaEdge>,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = states.len();
        let invalid = |message: String| Error::Invalid {
            what: "automaton",
            message,
        };
        let initial: BTreeSet<usize> = initial.into_iter().collect();
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(q) = initial.iter().chain(&accepting).find(|&&q| q >= n) {
            return Err(invalid(format!("state {q} out of range")));
        }
        for (p, x, q) in &transitions {
            if *p >= n || *q >= n {
                return Err(invalid(format!("transition {p} -> {q} out of range")));
            }
            if let Some(s) = x {
                if !alphabet.contains(s) {
                    return Err(Error::ForeignSymbol {
                        symbol: s.clone(),
                        context: "automaton",
                    });
                }
            }
        }
        Ok(Nfa {
            states,
            alphabet,
            transitions,
            initial,
            accepting,
        })
    }

    /// Recognizes nothing.
    pub fn empty(alphabet: Alphabet) -> Self {
        Nfa::new(1, alphabet, Vec::new(), [0], []).expect("valid")
    }

    /// Recognizes `A*`.
    pub fn universal(alphabet: Alphabet) -> Self {
        let loops = alphabet.iter().map(|s| (0, Some(s.clone()), 0)).collect();
        Nfa::new(1, alphabet, loops, [0], [0]).expect("valid")
    }

    /// Recognizes exactly `{w}`.
    pub fn literal(alphabet: Alphabet, w: &Word) -> Result<Self> {
        alphabet.check_word(w, "automaton")?;
        let edges = w
            .iter()
            .enumerate()
            .map(|(i, s)| (i, Some(s.clone()), i + 1))
            .collect();
        Nfa::new(w.len() + 1, alphabet, edges, [0], [w.len()])
    }

    /// Recognizes a finite set of words.
    pub fn from_words<'a>(alphabet: Alphabet, words: impl IntoIterator<Item = &'a Word>) -> Result<Self> {
        let mut out = Nfa::empty(alphabet.clone());
        for w in words {
            out = out.union(&Nfa::literal(alphabet.clone(), w)?);
        }
        Ok(out)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[NfaEdge] {
        &self.transitions
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    /// Same automaton over a larger alphabet.
    pub fn widen_alphabet(&self, alphabet: &Alphabet) -> Result<Nfa> {
        if !self.alphabet.is_subset(alphabet) {
            return Err(Error::Domain("widened alphabet must contain the old one".into()));
        }
        Ok(Nfa {
            alphabet: alphabet.clone(),
            ..self.clone()
        })
    }

    /// Disjoint union of the state sets of `self` and `other`; returns the
    /// combined parts and the offset of `other`'s states.
    fn juxtapose(&self, other: &Nfa) -> (Vec<String>, Vec<NfaEdge>, usize) {
        let off = self.num_states();
        let mut edges = self.transitions.clone();
        edges.extend(
            other
                .transitions
                .iter()
                .map(|(p, x, q)| (p + off, x.clone(), q + off)),
        );
        (numbered(off + other.num_states()), edges, off)
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        let alphabet = self.alphabet.union(&other.alphabet);
        let (states, edges, off) = self.juxtapose(other);
        let initial = self
            .initial
            .iter()
            .copied()
            .chain(other.initial.iter().map(|q| q + off));
        let accepting = self
            .accepting
            .iter()
            .copied()
            .chain(other.accepting.iter().map(|q| q + off));
        Nfa::with_names(states, alphabet, edges, initial, accepting).expect("valid")
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        let alphabet = self.alphabet.union(&other.alphabet);
        let (states, mut edges, off) = self.juxtapose(other);
        for &f in &self.accepting {
            for &i in &other.initial {
                edges.push((f, None, i + off));
            }
        }
        let accepting: Vec<usize> = other.accepting.iter().map(|q| q + off).collect();
        Nfa::with_names(states, alphabet, edges, self.initial.clone(), accepting).expect("valid")
    }

    pub fn star(&self) -> Nfa {
        let n = self.num_states();
        let mut edges = self.transitions.clone();
        for &i in &self.initial {
            edges.push((n, None, i));
        }
        for &f in &self.accepting {
            edges.push((f, None, n));
        }
        Nfa::new(n + 1, self.alphabet.clone(), edges, [n], [n]).expect("valid")
    }

    /// `L − {ε}`: each state is split by whether a letter has been read.
    pub fn without_empty_word(&self) -> Nfa {
        let n = self.num_states();
        let fresh = |q: usize| q;
        let moved = |q: usize| q + n;
        let mut edges = Vec::new();
        for (p, x, q) in &self.transitions {
            match x {
                None => {
                    edges.push((fresh(*p), None, fresh(*q)));
                    edges.push((moved(*p), None, moved(*q)));
                }
                Some(_) => {
                    edges.push((fresh(*p), x.clone(), moved(*q)));
                    edges.push((moved(*p), x.clone(), moved(*q)));
                }
            }
        }
        let initial: Vec<usize> = self.initial.iter().map(|&q| fresh(q)).collect();
        let accepting: Vec<usize> = self.accepting.iter().map(|&q| moved(q)).collect();
        Nfa::new(2 * n, self.alphabet.clone(), edges, initial, accepting).expect("valid")
    }

    /// Adjacency: for each state, its outgoing moves.
    pub(crate) fn adjacency(&self) -> Vec<Vec<(Option<Symbol>, usize)>> {
        let mut adj = vec![Vec::new(); self.num_states()];
        for (p, x, q) in &self.transitions {
            adj[*p].push((x.clone(), *q));
        }
        adj
    }

    pub(crate) fn closure(
        adj: &[Vec<(Option<Symbol>, usize)>],
        set: impl IntoIterator<Item = usize>,
    ) -> BTreeSet<usize> {
        let mut out: BTreeSet<usize> = BTreeSet::new();
        let mut stack: Vec<usize> = Vec::new();
        for q in set {
            if out.insert(q) {
                stack.push(q);
            }
        }
        while let Some(q) = stack.pop() {
            for (x, r) in &adj[q] {
                if x.is_none() && out.insert(*r) {
                    stack.push(*r);
                }
            }
        }
        out
    }

    pub(crate) fn step(
        adj: &[Vec<(Option<Symbol>, usize)>],
        set: &BTreeSet<usize>,
        s: &Symbol,
    ) -> BTreeSet<usize> {
        let moved = set.iter().flat_map(|&q| {
            adj[q]
                .iter()
                .filter(move |(x, _)| x.as_ref() == Some(s))
                .map(|(_, r)| *r)
        });
        Self::closure(adj, moved.collect::<Vec<_>>())
    }

    /// Whether some accepting run reads `w`.
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        self.alphabet.check_word(w, "automaton")?;
        let adj = self.adjacency();
        let mut current = Self::closure(&adj, self.initial.iter().copied());
        for s in w {
            if current.is_empty() {
                return Ok(false);
            }
            current = Self::step(&adj, &current, s);
        }
        Ok(current.iter().any(|q| self.accepting.contains(q)))
    }

    /// All accepted words of length at most `maxlen`.
    pub fn enumerate(&self, maxlen: usize) -> BTreeSet<Word> {
        let adj = self.adjacency();
        let mut out = BTreeSet::new();
        let mut layer: BTreeMap<Word, BTreeSet<usize>> = BTreeMap::new();
        let start = Self::closure(&adj, self.initial.iter().copied());
        if !start.is_empty() {
            layer.insert(Word::empty(), start);
        }
        for len in 0..=maxlen {
            for (w, set) in &layer {
                if set.iter().any(|q| self.accepting.contains(q)) {
                    out.insert(w.clone());
                }
            }
            if len == maxlen {
                break;
            }
            let mut next = BTreeMap::new();
            for (w, set) in &layer {
                for s in &self.alphabet {
                    let moved = Self::step(&adj, set, s);
                    if !moved.is_empty() {
                        let mut v = w.clone();
                        v.push(s.clone());
                        next.insert(v, moved);
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// States reachable from an initial state and co-reachable to an
    /// accepting one, renumbered; the language is unchanged.
    pub fn trim(&self) -> Nfa {
        let n = self.num_states();
        let mut fwd = vec![false; n];
        let mut queue: VecDeque<usize> = self.initial.iter().copied().collect();
        for &q in &self.initial {
            fwd[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for (p, _, r) in &self.transitions {
                if *p == q && !fwd[*r] {
                    fwd[*r] = true;
                    queue.push_back(*r);
                }
            }
        }
        let mut bwd = vec![false; n];
        let mut queue: VecDeque<usize> = self.accepting.iter().copied().collect();
        for &q in &self.accepting {
            bwd[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for (p, _, r) in &self.transitions {
                if *r == q && !bwd[*p] {
                    bwd[*p] = true;
                    queue.push_back(*p);
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&q| fwd[q] && bwd[q]).collect();
        if keep.is_empty() {
            return Nfa::empty(self.alphabet.clone());
        }
        let mut index = vec![usize::MAX; n];
        for (i, &q) in keep.iter().enumerate() {
            index[q] = i;
        }
        let edges = self
            .transitions
            .iter()
            .filter(|(p, _, r)| index[*p] != usize::MAX && index[*r] != usize::MAX)
            .map(|(p, x, r)| (index[*p], x.clone(), index[*r]))
            .collect();
        let pick = |set: &BTreeSet<usize>| -> Vec<usize> {
            set.iter()
                .filter(|&&q| index[q] != usize::MAX)
                .map(|&q| index[q])
                .collect()
        };
        Nfa::new(
            keep.len(),
            self.alphabet.clone(),
            edges,
            pick(&self.initial),
            pick(&self.accepting),
        )
        .expect("valid")
    }
}
