//! Chart recognizer for arbitrary context-free grammars.
//!
//! This is Earley's algorithm with the Aycock–Horspool treatment of
//! nullable nonterminals: when the predictor meets a nullable nonterminal it
//! also steps over it, so empty productions, unit cycles and left recursion
//! all need no preprocessing of the grammar.
//!
//! The recognizer parses against a *goal*, a sequence of grammar symbols
//! held in a virtual production outside the grammar. With the goal `[S]` it
//! decides membership; with any other sentential form it decides
//! derivability from that form. One pass reports acceptance of every prefix
//! of the input, which is what redex search wants.

use std::collections::{HashMap, HashSet};

use super::Cfg;
use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Sym {
    T(u32),
    N(u32),
}

#[derive(Debug, Clone)]
struct Prod {
    lhs: u32,
    rhs: Vec<Sym>,
}

/// The virtual production holding the goal form.
const GOAL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Item {
    prod: u32,
    dot: u32,
    origin: u32,
}

#[derive(Default)]
struct ItemSet {
    items: Vec<Item>,
    seen: HashSet<Item>,
    /// Items whose next symbol is the keyed nonterminal.
    waiting: HashMap<u32, Vec<Item>>,
}

impl ItemSet {
    fn add(&mut self, item: Item, next: Option<Sym>) {
        if self.seen.insert(item) {
            self.items.push(item);
            if let Some(Sym::N(b)) = next {
                self.waiting.entry(b).or_default().push(item);
            }
        }
    }
}

/// A grammar compiled to integer symbols, ready for repeated queries.
#[derive(Debug, Clone)]
pub struct Recognizer {
    terminals: HashMap<Symbol, u32>,
    nonterminals: HashMap<Symbol, u32>,
    prods: Vec<Prod>,
    by_lhs: Vec<Vec<u32>>,
    nullable: Vec<bool>,
    start: u32,
}

impl Recognizer {
    pub fn new(g: &Cfg) -> Self {
        let terminals: HashMap<Symbol, u32> = g
            .terminals()
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        let nonterminals: HashMap<Symbol, u32> = g
            .nonterminals()
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        let encode = |s: &Symbol| match nonterminals.get(s) {
            Some(&n) => Sym::N(n),
            None => Sym::T(terminals[s]),
        };
        let prods: Vec<Prod> = g
            .productions()
            .iter()
            .map(|p| Prod {
                lhs: nonterminals[&p.lhs],
                rhs: p.rhs.iter().map(encode).collect(),
            })
            .collect();
        let mut by_lhs = vec![Vec::new(); nonterminals.len()];
        for (i, p) in prods.iter().enumerate() {
            by_lhs[p.lhs as usize].push(i as u32);
        }
        let nullable = nullable_set(nonterminals.len(), &prods);
        Recognizer {
            start: nonterminals[g.start()],
            terminals,
            nonterminals,
            prods,
            by_lhs,
            nullable,
        }
    }

    pub(crate) fn encode_word(&self, w: &Word) -> Result<Vec<u32>> {
        w.iter()
            .map(|s| {
                self.terminals
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::ForeignSymbol {
                        symbol: s.clone(),
                        context: "grammar terminal",
                    })
            })
            .collect()
    }

    pub(crate) fn encode_form(&self, form: &Word) -> Result<Vec<Sym>> {
        form.iter()
            .map(|s| {
                if let Some(&n) = self.nonterminals.get(s) {
                    Ok(Sym::N(n))
                } else if let Some(&t) = self.terminals.get(s) {
                    Ok(Sym::T(t))
                } else {
                    Err(Error::ForeignSymbol {
                        symbol: s.clone(),
                        context: "grammar",
                    })
                }
            })
            .collect()
    }

    /// Whether the start symbol derives `w`.
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        let input = self.encode_word(w)?;
        Ok(self.accepted_prefixes(&[Sym::N(self.start)], &input)[input.len()])
    }

    /// Whether the sentential form `form` derives the terminal word `w`.
    pub fn derives(&self, form: &Word, w: &Word) -> Result<bool> {
        let goal = self.encode_form(form)?;
        let input = self.encode_word(w)?;
        Ok(self.accepted_prefixes(&goal, &input)[input.len()])
    }

    /// Lengths `k` such that the start symbol derives `w[..k]`.
    pub fn accepted_prefix_lengths(&self, w: &[Symbol]) -> Result<Vec<usize>> {
        let input = self.encode_word(&Word::new(w.to_vec()))?;
        let acc = self.accepted_prefixes(&[Sym::N(self.start)], &input);
        Ok((0..acc.len()).filter(|&k| acc[k]).collect())
    }

    fn rhs<'a>(&'a self, prod: u32, goal: &'a [Sym]) -> &'a [Sym] {
        if prod == GOAL {
            goal
        } else {
            &self.prods[prod as usize].rhs
        }
    }

    /// `out[k]` is true iff `goal ⇒* input[..k]`.
    pub(crate) fn accepted_prefixes(&self, goal: &[Sym], input: &[u32]) -> Vec<bool> {
        let n = input.len();
        let mut accepted = vec![false; n + 1];
        let mut sets: Vec<ItemSet> = (0..=n).map(|_| ItemSet::default()).collect();
        let first = Item {
            prod: GOAL,
            dot: 0,
            origin: 0,
        };
        sets[0].add(first, goal.first().copied());

        for i in 0..=n {
            let mut j = 0;
            while j < sets[i].items.len() {
                let item = sets[i].items[j];
                j += 1;
                let rhs = self.rhs(item.prod, goal);
                let dot = item.dot as usize;
                if dot < rhs.len() {
                    match rhs[dot] {
                        Sym::N(b) => {
                            for &p in &self.by_lhs[b as usize] {
                                let first = self.prods[p as usize].rhs.first().copied();
                                sets[i].add(
                                    Item {
                                        prod: p,
                                        dot: 0,
                                        origin: i as u32,
                                    },
                                    first,
                                );
                            }
                            if self.nullable[b as usize] {
                                let next = rhs.get(dot + 1).copied();
                                sets[i].add(Item { dot: item.dot + 1, ..item }, next);
                            }
                        }
                        Sym::T(t) => {
                            if i < n && input[i] == t {
                                let next = rhs.get(dot + 1).copied();
                                sets[i + 1].add(Item { dot: item.dot + 1, ..item }, next);
                            }
                        }
                    }
                } else if item.prod == GOAL {
                    accepted[i] = true;
                } else {
                    let lhs = self.prods[item.prod as usize].lhs;
                    let origin = item.origin as usize;
                    let parents: Vec<Item> = sets[origin]
                        .waiting
                        .get(&lhs)
                        .cloned()
                        .unwrap_or_default();
                    for parent in parents {
                        let prhs = self.rhs(parent.prod, goal);
                        let next = prhs.get(parent.dot as usize + 1).copied();
                        sets[i].add(
                            Item {
                                dot: parent.dot + 1,
                                ..parent
                            },
                            next,
                        );
                    }
                }
            }
            if i < n && sets[i + 1].items.is_empty() {
                break;
            }
        }
        accepted
    }
}

fn nullable_set(count: usize, prods: &[Prod]) -> Vec<bool> {
    let mut nullable = vec![false; count];
    let mut changed = true;
    while changed {
        changed = false;
        for p in prods {
            if !nullable[p.lhs as usize]
                && p.rhs.iter().all(|s| match s {
                    Sym::N(n) => nullable[*n as usize],
                    Sym::T(_) => false,
                })
            {
                nullable[p.lhs as usize] = true;
                changed = true;
            }
        }
    }
    nullable
}
