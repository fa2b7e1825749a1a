//! Finite transducers realizing rational relations.
//!
//! Every move reads at most one input letter and writes a finite output
//! word. Relations are closed under concatenation, star and reversal, and
//! the image of a regular language is computed by a product with an NFA.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::Nfa;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub from: usize,
    pub input: Option<Symbol>,
    pub output: Word,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transducer {
    states: Vec<String>,
    input: Alphabet,
    output: Alphabet,
    moves: Vec<Move>,
    initial: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

impl Transducer {
    pub fn new(
        num_states: usize,
        input: Alphabet,
        output: Alphabet,
        moves: Vec<Move>,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        Self::with_names(numbered(num_states), input, output, moves, initial, accepting)
    }

    pub fn with_names(
        states: Vec<String>,
        input: Alphabet,
        output: Alphabet,
        moves: Vec<Move>,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = states.len();
        let invalid = |message: String| Error::Invalid {
            what: "transducer",
            message,
        };
        let initial: BTreeSet<usize> = initial.into_iter().collect();
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(q) = initial.iter().chain(&accepting).find(|&&q| q >= n) {
            return Err(invalid(format!("state {q} out of range")));
        }
        for m in &moves {
            if m.from >= n || m.to >= n {
                return Err(invalid(format!("move {} -> {} out of range", m.from, m.to)));
            }
            if let Some(s) = &m.input {
                if !input.contains(s) {
                    return Err(Error::ForeignSymbol {
                        symbol: s.clone(),
                        context: "transducer input",
                    });
                }
            }
            output.check_word(&m.output, "transducer output")?;
        }
        Ok(Transducer {
            states,
            input,
            output,
            moves,
            initial,
            accepting,
        })
    }

    /// The finite relation `{(x_i, w_i)}`: one move per pair between a
    /// single initial and a single accepting state.
    pub fn from_pairs(
        input: Alphabet,
        output: Alphabet,
        pairs: impl IntoIterator<Item = (Option<Symbol>, Word)>,
    ) -> Result<Self> {
        let moves = pairs
            .into_iter()
            .map(|(x, w)| Move {
                from: 0,
                input: x,
                output: w,
                to: 1,
            })
            .collect();
        Transducer::new(2, input, output, moves, [0], [1])
    }

    /// The one-pair relation `{(s, s)}`.
    pub fn singleton(s: &Symbol) -> Self {
        let a = Alphabet::from_iter([s.clone()]);
        Transducer::from_pairs(a.clone(), a, [(Some(s.clone()), Word::new(vec![s.clone()]))])
            .expect("valid")
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    fn epsilon_move(from: usize, to: usize) -> Move {
        Move {
            from,
            input: None,
            output: Word::empty(),
            to,
        }
    }

    /// Reflexive-transitive concatenation closure of the relation.
    pub fn star(&self) -> Transducer {
        let hub = self.num_states();
        let mut moves = self.moves.clone();
        moves.extend(self.initial.iter().map(|&i| Self::epsilon_move(hub, i)));
        moves.extend(self.accepting.iter().map(|&f| Self::epsilon_move(f, hub)));
        Transducer::new(
            hub + 1,
            self.input.clone(),
            self.output.clone(),
            moves,
            [hub],
            [hub],
        )
        .expect("valid")
    }

    /// Factorwise concatenation `{(u_1⋯u_k, v_1⋯v_k)}`. Alphabets are
    /// merged; the empty list gives `{(ε, ε)}`.
    pub fn concat(parts: &[Transducer]) -> Transducer {
        let Some((first, rest)) = parts.split_first() else {
            return Transducer::new(1, Alphabet::new(), Alphabet::new(), Vec::new(), [0], [0])
                .expect("valid");
        };
        let mut acc = first.clone();
        for t in rest {
            let off = acc.num_states();
            let mut moves = acc.moves.clone();
            moves.extend(t.moves.iter().map(|m| Move {
                from: m.from + off,
                to: m.to + off,
                ..m.clone()
            }));
            for &f in &acc.accepting {
                for &i in &t.initial {
                    moves.push(Self::epsilon_move(f, i + off));
                }
            }
            acc = Transducer::new(
                off + t.num_states(),
                acc.input.union(&t.input),
                acc.output.union(&t.output),
                moves,
                acc.initial.clone(),
                t.accepting.iter().map(|q| q + off).collect::<Vec<_>>(),
            )
            .expect("valid");
        }
        acc
    }

    /// `{(u^rev, v^rev) : (u, v) related}`.
    pub fn reverse(&self) -> Transducer {
        let moves = self
            .moves
            .iter()
            .map(|m| Move {
                from: m.to,
                input: m.input.clone(),
                output: m.output.reversed(),
                to: m.from,
            })
            .collect();
        Transducer::with_names(
            self.states.clone(),
            self.input.clone(),
            self.output.clone(),
            moves,
            self.accepting.clone(),
            self.initial.clone(),
        )
        .expect("valid")
    }

    /// Whether `(u, v)` is in the relation, by search over
    /// (state, input position, output position).
    pub fn relates(&self, u: &Word, v: &Word) -> Result<bool> {
        self.input.check_word(u, "transducer input")?;
        self.output.check_word(v, "transducer output")?;
        let (u, v) = (u.letters(), v.letters());
        let mut seen: HashSet<(usize, usize, usize)> = HashSet::new();
        let mut queue: VecDeque<(usize, usize, usize)> =
            self.initial.iter().map(|&q| (q, 0, 0)).collect();
        seen.extend(queue.iter().copied());
        let mut out_moves: HashMap<usize, Vec<&Move>> = HashMap::new();
        for m in &self.moves {
            out_moves.entry(m.from).or_default().push(m);
        }
        while let Some((q, i, j)) = queue.pop_front() {
            if i == u.len() && j == v.len() && self.accepting.contains(&q) {
                return Ok(true);
            }
            for m in out_moves.get(&q).into_iter().flatten() {
                let i2 = match &m.input {
                    None => i,
                    Some(s) if i < u.len() && u[i] == *s => i + 1,
                    Some(_) => continue,
                };
                let out = m.output.letters();
                if !v[j..].starts_with(out) {
                    continue;
                }
                let next = (m.to, i2, j + out.len());
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        Ok(false)
    }

    /// An NFA for the image `{v : (u, v) related, u ∈ L(nfa)}`. May
    /// contain ε-moves.
    pub fn image(&self, nfa: &Nfa) -> Result<Nfa> {
        if let Some(s) = nfa.alphabet().iter().find(|s| !self.input.contains(s)) {
            return Err(Error::ForeignSymbol {
                symbol: s.clone(),
                context: "transducer input",
            });
        }
        let adj = nfa.adjacency();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut queue = VecDeque::new();
        let intern = |p: (usize, usize),
                          index: &mut HashMap<(usize, usize), usize>,
                          pairs: &mut Vec<(usize, usize)>,
                          queue: &mut VecDeque<usize>| {
            *index.entry(p).or_insert_with(|| {
                pairs.push(p);
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            })
        };
        let mut initial = Vec::new();
        for &p in &self.initial {
            for &q in nfa.initial() {
                initial.push(intern((p, q), &mut index, &mut pairs, &mut queue));
            }
        }
        // (from, output word, to) over product states; expanded below.
        let mut raw: Vec<(usize, Word, usize)> = Vec::new();
        while let Some(k) = queue.pop_front() {
            let (p, q) = pairs[k];
            for (x, q2) in &adj[q] {
                if x.is_none() {
                    let t = intern((p, *q2), &mut index, &mut pairs, &mut queue);
                    raw.push((k, Word::empty(), t));
                }
            }
            for m in self.moves.iter().filter(|m| m.from == p) {
                match &m.input {
                    None => {
                        let t = intern((m.to, q), &mut index, &mut pairs, &mut queue);
                        raw.push((k, m.output.clone(), t));
                    }
                    Some(s) => {
                        for (x, q2) in &adj[q] {
                            if x.as_ref() == Some(s) {
                                let t = intern((m.to, *q2), &mut index, &mut pairs, &mut queue);
                                raw.push((k, m.output.clone(), t));
                            }
                        }
                    }
                }
            }
        }
        let accepting: Vec<usize> = pairs
            .iter()
            .enumerate()
            .filter(|(_, (p, q))| self.accepting.contains(p) && nfa.accepting().contains(q))
            .map(|(k, _)| k)
            .collect();
        let mut states = pairs.len();
        let mut edges = Vec::new();
        for (from, out, to) in raw {
            let letters = out.letters();
            match letters.len() {
                0 => edges.push((from, None, to)),
                1 => edges.push((from, Some(letters[0].clone()), to)),
                len => {
                    let mut cur = from;
                    for (i, s) in letters.iter().enumerate() {
                        let next = if i + 1 == len {
                            to
                        } else {
                            states += 1;
                            states - 1
                        };
                        edges.push((cur, Some(s.clone()), next));
                        cur = next;
                    }
                }
            }
        }
        Nfa::new(states, self.output.clone(), edges, initial, accepting)
    }

    /// All related pairs with `|u| <= max_in` and `|v| <= max_out`, by
    /// brute force over input words. Intended for tests and small checks.
    pub fn pairs_up_to(&self, max_in: usize, max_out: usize) -> BTreeSet<(Word, Word)> {
        let mut out = BTreeSet::new();
        let outputs = self.output.words_up_to(max_out);
        for u in self.input.words_up_to(max_in) {
            for v in &outputs {
                if self.relates(&u, v).expect("alphabets match") {
                    out.insert((u.clone(), v.clone()));
                }
            }
        }
        out
    }
}
