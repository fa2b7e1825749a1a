//! Context-free grammars and the transformations used to assemble the
//! equality grammar: empty-production elimination, terminal relabeling,
//! production reversal and disjoint renaming, plus membership and
//! derivability queries.

mod earley;
pub mod text;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

pub use earley::Recognizer;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: Symbol,
    pub rhs: Vec<Symbol>,
}

impl Production {
    pub fn new(lhs: Symbol, rhs: Vec<Symbol>) -> Self {
        Production { lhs, rhs }
    }
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, Word::new(self.rhs.clone()))
    }
}

/// A context-free grammar `(N, T, P, S)`.
///
/// Productions are kept in insertion order. Repeated productions are
/// allowed; they never change the language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    nonterminals: Alphabet,
    terminals: Alphabet,
    productions: Vec<Production>,
    start: Symbol,
}

impl Cfg {
    pub fn new(
        nonterminals: Alphabet,
        terminals: Alphabet,
        productions: Vec<Production>,
        start: Symbol,
    ) -> Result<Self> {
        let invalid = |message: String| Error::Invalid {
            what: "grammar",
            message,
        };
        if let Some(s) = nonterminals.iter().find(|s| terminals.contains(s)) {
            return Err(invalid(format!("`{s}` is both a terminal and a nonterminal")));
        }
        if !nonterminals.contains(&start) {
            return Err(invalid(format!("start symbol `{start}` is not a nonterminal")));
        }
        for p in &productions {
            if !nonterminals.contains(&p.lhs) {
                return Err(invalid(format!("left-hand side `{}` is not a nonterminal", p.lhs)));
            }
            if let Some(s) = p
                .rhs
                .iter()
                .find(|s| !nonterminals.contains(s) && !terminals.contains(s))
            {
                return Err(invalid(format!("`{s}` in `{p}` is not a grammar symbol")));
            }
        }
        Ok(Cfg {
            nonterminals,
            terminals,
            productions,
            start,
        })
    }

    /// The grammar `S` with no productions over `terminals`.
    pub fn empty_language(start: Symbol, terminals: Alphabet) -> Result<Self> {
        Cfg::new(Alphabet::from_iter([start.clone()]), terminals, Vec::new(), start)
    }

    pub fn nonterminals(&self) -> &Alphabet {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn is_nonterminal(&self, s: &Symbol) -> bool {
        self.nonterminals.contains(s)
    }

    pub fn has_empty_productions(&self) -> bool {
        self.productions.iter().any(|p| p.rhs.is_empty())
    }

    pub fn nullable(&self) -> HashSet<Symbol> {
        let mut nullable = HashSet::new();
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                if !nullable.contains(&p.lhs) && p.rhs.iter().all(|s| nullable.contains(s)) {
                    nullable.insert(p.lhs.clone());
                    changed = true;
                }
            }
        }
        nullable
    }

    /// An equivalent grammar for `L(self) − {ε}` without empty right-hand
    /// sides: every production is replaced by all its variants that drop
    /// some nullable occurrences. The start symbol is kept even when it
    /// loses all its productions.
    pub fn eliminate_epsilon_productions(&self) -> Cfg {
        let nullable = self.nullable();
        let mut seen = HashSet::new();
        let mut productions = Vec::new();
        for p in &self.productions {
            let mut variants: Vec<Vec<Symbol>> = vec![Vec::new()];
            for s in &p.rhs {
                let keep: Vec<Vec<Symbol>> = variants
                    .iter()
                    .map(|v| {
                        let mut v = v.clone();
                        v.push(s.clone());
                        v
                    })
                    .collect();
                if nullable.contains(s) {
                    variants.extend(keep);
                } else {
                    variants = keep;
                }
            }
            for rhs in variants {
                if rhs.is_empty() || rhs == [p.lhs.clone()] {
                    continue;
                }
                let q = Production::new(p.lhs.clone(), rhs);
                if seen.insert(q.clone()) {
                    productions.push(q);
                }
            }
        }
        Cfg {
            productions,
            ..self.clone()
        }
    }

    /// Renames terminals letterwise. `map` must be total and injective on
    /// the terminal alphabet, and its images must avoid the nonterminals.
    pub fn relabel_terminals(&self, map: &HashMap<Symbol, Symbol>) -> Result<Cfg> {
        let mut terminals = Alphabet::new();
        for t in &self.terminals {
            let img = map
                .get(t)
                .ok_or_else(|| Error::Domain(format!("relabeling map has no image for `{t}`")))?;
            if !terminals.insert(img.clone()) {
                return Err(Error::Domain(format!(
                    "relabeling map is not injective: `{img}` is hit twice"
                )));
            }
        }
        let relabel = |s: &Symbol| {
            if self.terminals.contains(s) {
                map[s].clone()
            } else {
                s.clone()
            }
        };
        let productions = self
            .productions
            .iter()
            .map(|p| Production::new(p.lhs.clone(), p.rhs.iter().map(relabel).collect()))
            .collect();
        Cfg::new(
            self.nonterminals.clone(),
            terminals,
            productions,
            self.start.clone(),
        )
    }

    /// Every right-hand side reversed; the language becomes its mirror image.
    pub fn reverse_productions(&self) -> Cfg {
        let productions = self
            .productions
            .iter()
            .map(|p| Production::new(p.lhs.clone(), p.rhs.iter().rev().cloned().collect()))
            .collect();
        Cfg {
            productions,
            ..self.clone()
        }
    }

    /// Appends `suffix` to the name of every nonterminal.
    pub fn rename_nonterminals(&self, suffix: &str) -> Result<Cfg> {
        let rename: HashMap<Symbol, Symbol> = self
            .nonterminals
            .iter()
            .map(|s| (s.clone(), s.with_name(&format!("{}{suffix}", s.name()))))
            .collect();
        let map = |s: &Symbol| rename.get(s).cloned().unwrap_or_else(|| s.clone());
        Cfg::new(
            self.nonterminals.iter().map(map).collect(),
            self.terminals.clone(),
            self.productions
                .iter()
                .map(|p| Production::new(map(&p.lhs), p.rhs.iter().map(map).collect()))
                .collect(),
            map(&self.start),
        )
    }

    /// Length of a shortest word in the language; `None` when the language
    /// is empty.
    pub fn min_word_length(&self) -> Option<usize> {
        self.min_lengths().get(&self.start).copied()
    }

    /// Shortest derivable terminal length per productive nonterminal.
    fn min_lengths(&self) -> HashMap<Symbol, usize> {
        let mut best: HashMap<Symbol, usize> = HashMap::new();
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                let mut total = Some(0usize);
                for s in &p.rhs {
                    let len = if self.terminals.contains(s) {
                        Some(1)
                    } else {
                        best.get(s).copied()
                    };
                    total = total.zip(len).map(|(a, b)| a + b);
                }
                if let Some(t) = total {
                    if best.get(&p.lhs).is_none_or(|&old| t < old) {
                        best.insert(p.lhs.clone(), t);
                        changed = true;
                    }
                }
            }
        }
        best
    }

    /// Drops unproductive nonterminals, then unreachable ones. The start
    /// symbol always survives.
    pub fn trim(&self) -> Cfg {
        let productive = self.min_lengths();
        let ok = |s: &Symbol| self.terminals.contains(s) || productive.contains_key(s);
        let prods: Vec<&Production> = self
            .productions
            .iter()
            .filter(|p| ok(&p.lhs) && p.rhs.iter().all(ok))
            .collect();
        let mut reachable: HashSet<Symbol> = HashSet::from([self.start.clone()]);
        let mut changed = true;
        while changed {
            changed = false;
            for p in &prods {
                if reachable.contains(&p.lhs) {
                    for s in &p.rhs {
                        if self.nonterminals.contains(s) && reachable.insert(s.clone()) {
                            changed = true;
                        }
                    }
                }
            }
        }
        Cfg {
            nonterminals: self
                .nonterminals
                .iter()
                .filter(|s| reachable.contains(*s))
                .cloned()
                .collect(),
            terminals: self.terminals.clone(),
            productions: prods
                .into_iter()
                .filter(|p| reachable.contains(&p.lhs))
                .cloned()
                .collect(),
            start: self.start.clone(),
        }
    }

    pub fn recognizer(&self) -> Recognizer {
        Recognizer::new(self)
    }

    /// Membership of a terminal word.
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        self.terminals.check_word(w, "grammar terminal")?;
        self.recognizer().accepts(w)
    }

    /// Whether `form ⇒* w`, decided by recognizing `w` in the grammar
    /// extended with a fresh start production `S' → form`.
    pub fn derives(&self, form: &Word, w: &Word) -> Result<bool> {
        let combined = self.nonterminals.union(&self.terminals);
        combined.check_word(form, "grammar")?;
        self.terminals.check_word(w, "grammar terminal")?;
        let fresh = self.fresh_nonterminal("S'");
        let mut nonterminals = self.nonterminals.clone();
        nonterminals.insert(fresh.clone());
        let mut productions = self.productions.clone();
        productions.push(Production::new(fresh.clone(), form.letters().to_vec()));
        Cfg::new(nonterminals, self.terminals.clone(), productions, fresh)?.accepts(w)
    }

    fn fresh_nonterminal(&self, base: &str) -> Symbol {
        let mut name = base.to_string();
        loop {
            let s = Symbol::plain(&name);
            if !self.nonterminals.contains(&s) && !self.terminals.contains(&s) {
                return s;
            }
            name.push('\'');
        }
    }

    /// Every word of the language of length at most `maxlen`.
    ///
    /// Computed as a least fixpoint of length-bounded word sets, one set per
    /// nonterminal, so it shares nothing with the chart recognizer and can
    /// serve as its oracle.
    pub fn enumerate(&self, maxlen: usize) -> BTreeSet<Word> {
        let mut lang: HashMap<Symbol, HashSet<Word>> = self
            .nonterminals
            .iter()
            .map(|s| (s.clone(), HashSet::new()))
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                let mut partial: HashSet<Word> = HashSet::from([Word::empty()]);
                for s in &p.rhs {
                    let mut next = HashSet::new();
                    if self.terminals.contains(s) {
                        for w in &partial {
                            if w.len() < maxlen {
                                let mut v = w.clone();
                                v.push(s.clone());
                                next.insert(v);
                            }
                        }
                    } else {
                        for w in &partial {
                            for x in &lang[s] {
                                if w.len() + x.len() <= maxlen {
                                    next.insert(w.concat(x));
                                }
                            }
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                let target = lang.get_mut(&p.lhs).expect("lhs is a nonterminal");
                for w in partial {
                    if target.insert(w) {
                        changed = true;
                    }
                }
            }
        }
        lang.remove(&self.start)
            .unwrap_or_default()
            .into_iter()
            .collect()
    }
}

/// Makes the nonterminal alphabets pairwise disjoint by suffixing every
/// nonterminal of the `k`-th grammar with `#k`.
pub fn disjoint_rename(grammars: &[Cfg]) -> Result<Vec<Cfg>> {
    grammars
        .iter()
        .enumerate()
        .map(|(k, g)| g.rename_nonterminals(&format!("#{k}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> Cfg {
        text::parse_grammar(text).unwrap()
    }

    fn words(list: &[&str]) -> BTreeSet<Word> {
        list.iter().map(|s| Word::from_chars(s)).collect()
    }

    const ANBN0: &str = "start: S\nS -> a S b | _";
    const ANBN: &str = "start: S\nS -> a S b | a b";
    const EXAMPLE_LHS: &str = "start: S\nS -> a T d\nT -> b T c | b c";

    #[test]
    fn epsilon_elimination_removes_only_the_empty_word() {
        let before = g(ANBN0);
        let after = before.eliminate_epsilon_productions();
        assert!(!after.has_empty_productions());
        let mut expected = before.enumerate(8);
        assert!(expected.remove(&Word::empty()));
        assert_eq!(after.enumerate(8), expected);
        assert_eq!(after.enumerate(8), words(&["ab", "aabb", "aaabbb", "aaaabbbb"]));
    }

    #[test]
    fn epsilon_elimination_fixed_point_and_degenerate() {
        let plain = g(ANBN);
        assert_eq!(plain.eliminate_epsilon_productions().enumerate(8), plain.enumerate(8));
        let only_eps = g("start: S\nS -> _");
        let out = only_eps.eliminate_epsilon_productions();
        assert!(out.enumerate(4).is_empty());
        assert_eq!(out.start(), &Symbol::plain("S"));
    }

    #[test]
    fn epsilon_elimination_with_nested_nullables() {
        let before = g("start: S\nS -> A B c | S S\nA -> a | _\nB -> A A | b");
        let after = before.eliminate_epsilon_productions();
        let mut expected = before.enumerate(7);
        expected.remove(&Word::empty());
        assert_eq!(after.enumerate(7), expected);
    }

    #[test]
    fn relabeling() {
        let base = g("start: S\nS -> a b");
        let map: HashMap<Symbol, Symbol> = ["a", "b"]
            .iter()
            .map(|n| {
                let s = Symbol::plain(n);
                (s.clone(), Symbol::dollar(&s))
            })
            .collect();
        let out = base.relabel_terminals(&map).unwrap();
        assert_eq!(
            out.enumerate(4),
            BTreeSet::from([Word::parse("$a $b").unwrap()])
        );
        let id: HashMap<Symbol, Symbol> =
            base.terminals().iter().map(|s| (s.clone(), s.clone())).collect();
        assert_eq!(base.relabel_terminals(&id).unwrap(), base);

        let partial = HashMap::from([(Symbol::plain("a"), Symbol::plain("x"))]);
        assert!(matches!(base.relabel_terminals(&partial), Err(Error::Domain(_))));
        let clash = HashMap::from([
            (Symbol::plain("a"), Symbol::plain("x")),
            (Symbol::plain("b"), Symbol::plain("x")),
        ]);
        assert!(matches!(base.relabel_terminals(&clash), Err(Error::Domain(_))));
    }

    #[test]
    fn relabeled_example_lhs_grammar() {
        let base = g(EXAMPLE_LHS);
        let map: HashMap<Symbol, Symbol> = base
            .terminals()
            .iter()
            .map(|s| (s.clone(), Symbol::dollar(s)))
            .collect();
        let out = base.relabel_terminals(&map).unwrap();
        assert!(out.accepts(&Word::parse("$a $b $c $d").unwrap()).unwrap());
    }

    #[test]
    fn reversal() {
        assert_eq!(g("start: S\nS -> a b").reverse_productions().enumerate(4), words(&["ba"]));
        assert_eq!(
            g(ANBN).reverse_productions().enumerate(8),
            words(&["ba", "bbaa", "bbbaaa", "bbbbaaaa"])
        );
        let pal = g("start: S\nS -> a S a | b S b | a | b | _");
        assert_eq!(pal.reverse_productions().enumerate(7), pal.enumerate(7));
    }

    #[test]
    fn renaming_makes_nonterminals_disjoint() {
        let one = g("start: S\nS -> a");
        let out = disjoint_rename(&[one.clone(), one.clone()]).unwrap();
        assert_eq!(out[0].nonterminals(), &Alphabet::from_iter([Symbol::plain("S#0")]));
        assert_eq!(out[1].nonterminals(), &Alphabet::from_iter([Symbol::plain("S#1")]));
        assert_eq!(out[0].enumerate(3), words(&["a"]));
        assert_eq!(out[1].enumerate(3), words(&["a"]));
        let single = disjoint_rename(std::slice::from_ref(&one)).unwrap();
        assert_eq!(single[0].enumerate(3), one.enumerate(3));
    }

    #[test]
    fn renaming_three_grammars_sharing_a_nonterminal() {
        let gs = [
            g("start: S\nS -> T T\nT -> a | b"),
            g("start: S\nS -> a T\nT -> b T | _"),
            g("start: T\nT -> a T b | c"),
        ];
        let out = disjoint_rename(&gs).unwrap();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(out[i].nonterminals().iter().all(|s| !out[j].is_nonterminal(s)));
            }
            assert_eq!(out[i].enumerate(6), gs[i].enumerate(6));
        }
    }

    #[test]
    fn min_word_lengths() {
        assert_eq!(g("start: S\nS -> a b").min_word_length(), Some(2));
        assert_eq!(g(EXAMPLE_LHS).min_word_length(), Some(4));
        assert_eq!(g("start: S\nS -> a S").min_word_length(), None);
    }

    #[test]
    fn membership_on_the_example_lhs_grammar() {
        let lhs = g(EXAMPLE_LHS);
        assert!(lhs.accepts(&Word::from_chars("abbccd")).unwrap());
        assert!(lhs.accepts(&Word::from_chars("abcd")).unwrap());
        assert!(!lhs.accepts(&Word::from_chars("abccd")).unwrap());
        assert!(matches!(
            lhs.accepts(&Word::from_chars("abxd")),
            Err(Error::ForeignSymbol { .. })
        ));
        assert_eq!(lhs.enumerate(6), words(&["abcd", "abbccd"]));
    }

    #[test]
    fn enumeration_boundaries() {
        assert_eq!(g("start: S\nS -> a b").enumerate(5), words(&["ab"]));
        assert_eq!(g(ANBN0).enumerate(0), words(&[""]));
        assert!(g(ANBN).enumerate(0).is_empty());
    }

    #[test]
    fn recognizer_handles_cycles_and_left_recursion() {
        let gram = g("start: S\nS -> S S | S | a | _\n");
        let rec = gram.recognizer();
        for n in 0..6 {
            assert!(rec.accepts(&Word::from_chars(&"a".repeat(n))).unwrap());
        }
        let left = g("start: E\nE -> E p T | T\nT -> x | l E r");
        assert!(left.accepts(&Word::from_chars("xpxplxpxr")).unwrap());
        assert!(!left.accepts(&Word::from_chars("xpp")).unwrap());
    }

    #[test]
    fn derivation_from_sentential_forms() {
        let lhs = g(EXAMPLE_LHS);
        for w in lhs.terminals().words_up_to(6) {
            assert_eq!(
                lhs.derives(&Word::parse("S").unwrap(), &w).unwrap(),
                lhs.accepts(&w).unwrap()
            );
        }
        assert!(lhs.derives(&Word::parse("a T d").unwrap(), &Word::from_chars("abbccd")).unwrap());
        assert!(lhs.derives(&Word::parse("T T").unwrap(), &Word::from_chars("bcbbcc")).unwrap());
        assert!(lhs.derives(&Word::empty(), &Word::empty()).unwrap());
        assert!(!lhs.derives(&Word::empty(), &Word::from_chars("a")).unwrap());
        assert!(lhs.derives(&Word::parse("X").unwrap(), &Word::empty()).is_err());
    }

    #[test]
    fn trimming() {
        let gram = g("start: S\nS -> a | U | b R\nU -> U a\nR -> b\nX -> a");
        let t = gram.trim();
        assert_eq!(t.nonterminals(), &Alphabet::from_iter([Symbol::plain("S"), Symbol::plain("R")]));
        assert_eq!(t.enumerate(4), gram.enumerate(4));
    }

    #[test]
    fn min_length_matches_enumeration() {
        for text in [ANBN, ANBN0, EXAMPLE_LHS, "start: S\nS -> S a | b b b"] {
            let gram = g(text);
            let shortest = gram.enumerate(10).into_iter().next().map(|w| w.len());
            assert_eq!(gram.min_word_length(), shortest);
        }
    }
}
