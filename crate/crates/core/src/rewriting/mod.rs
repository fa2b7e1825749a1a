//! Monadic rewriting systems whose rule families are context-free.
//!
//! A [`MonadicCfSystem`] over an alphabet `A` attaches to each right-hand
//! side `r ∈ A ∪ {ε}` a grammar whose language is the set of left-hand
//! sides rewriting to `r`. Reduction scans factors with a chart parser;
//! [`MonadicCfSystem::irreducible_descendants`] explores every reduction
//! path and serves as an independent equality oracle.

pub mod text;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::grammar::{Cfg, Production, Recognizer};
use crate::word::{Alphabet, Symbol, Word, EPS_NAME};

/// The right-hand side of a rule family: a letter, or `None` for ε.
pub type Rhs = Option<Symbol>;

/// Display name of a right-hand side (`eps` for the empty word).
pub fn rhs_name(r: &Rhs) -> String {
    r.as_ref().map_or_else(|| EPS_NAME.to_string(), Symbol::to_string)
}

#[derive(Debug, Clone)]
struct Family {
    rhs: Rhs,
    grammar: Cfg,
    recognizer: Recognizer,
}

/// A monadic rewriting system with context-free rule families.
///
/// Families are stored in alphabet order with ε last; absent families
/// have no rules. The system is immutable and may be shared across
/// threads.
#[derive(Debug, Clone)]
pub struct MonadicCfSystem {
    alphabet: Alphabet,
    families: Vec<Family>,
}

impl PartialEq for MonadicCfSystem {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.families.len() == other.families.len()
            && self
                .families
                .iter()
                .zip(&other.families)
                .all(|(x, y)| x.rhs == y.rhs && x.grammar == y.grammar)
    }
}

impl Eq for MonadicCfSystem {}

/// One rewriting step `x ℓ y ⇒ x r y` with `ℓ = w[position..position + length]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleApplication {
    pub position: usize,
    pub length: usize,
    pub rhs: Rhs,
}

impl RuleApplication {
    pub fn apply(&self, w: &Word) -> Word {
        let letters = w.letters();
        let mut out = letters[..self.position].to_vec();
        out.extend(self.rhs.iter().cloned());
        out.extend_from_slice(&letters[self.position + self.length..]);
        Word::new(out)
    }
}

/// A family that breaks the length-reducing requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyViolation {
    pub family: String,
    /// Shortest left-hand side; `None` when the family is empty.
    pub min_length: Option<usize>,
    pub required: usize,
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.min_length {
            Some(0) => write!(f, "family `{}` accepts the empty word", self.family),
            Some(n) => write!(
                f,
                "family `{}` has a left-hand side of length {n}, needs at least {}",
                self.family, self.required
            ),
            None => write!(f, "family `{}` is empty", self.family),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<FamilyViolation>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::Validation {
                reason: v.to_string(),
                family: v.family,
            }),
        }
    }
}

/// Which redex [`MonadicCfSystem::normal_form_with`] contracts at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostShortest,
    RightmostShortest,
    /// Uniform choice among all redexes, from a seeded generator.
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfluenceReport {
    /// Every word up to the bound has exactly one irreducible descendant.
    Pass { max_len: usize, words_checked: usize },
    /// The shortlex-first word with several irreducible descendants.
    Witness {
        word: Word,
        descendants: BTreeSet<Word>,
    },
}

impl ConfluenceReport {
    pub fn passes(&self) -> bool {
        matches!(self, ConfluenceReport::Pass { .. })
    }
}

impl MonadicCfSystem {
    /// Builds a system. Letters must be plain and may not be named `eps`;
    /// every family grammar must use only alphabet letters as terminals and
    /// each right-hand side may appear once.
    ///
    /// The length-reducing requirement is not checked here; see
    /// [`validate`](Self::validate).
    pub fn new(alphabet: Alphabet, families: impl IntoIterator<Item = (Rhs, Cfg)>) -> Result<Self> {
        if let Some(s) = alphabet.iter().find(|s| !s.is_plain() || s.name() == EPS_NAME) {
            return Err(Error::Domain(format!(
                "`{s}` cannot be a letter of a rewriting alphabet"
            )));
        }
        let mut seen: HashSet<Rhs> = HashSet::new();
        let mut out = Vec::new();
        for (rhs, grammar) in families {
            if let Some(r) = &rhs {
                if !alphabet.contains(r) {
                    return Err(Error::ForeignSymbol {
                        symbol: r.clone(),
                        context: "rewriting",
                    });
                }
            }
            if !seen.insert(rhs.clone()) {
                return Err(Error::Domain(format!(
                    "duplicate rule family `{}`",
                    rhs_name(&rhs)
                )));
            }
            if let Some(s) = grammar.terminals().iter().find(|s| !alphabet.contains(s)) {
                return Err(Error::ForeignSymbol {
                    symbol: s.clone(),
                    context: "rewriting",
                });
            }
            let recognizer = grammar.recognizer();
            out.push(Family {
                rhs,
                grammar,
                recognizer,
            });
        }
        out.sort_by_key(|f| {
            f.rhs
                .as_ref()
                .map_or(usize::MAX, |r| alphabet.position(r).expect("checked"))
        });
        Ok(MonadicCfSystem {
            alphabet,
            families: out,
        })
    }

    /// A system with finitely many rules `ℓ → r`.
    pub fn finite(alphabet: Alphabet, rules: &[(Word, Rhs)]) -> Result<Self> {
        let mut start_name = String::from("S");
        while alphabet.contains(&Symbol::plain(&start_name)) {
            start_name.push('\'');
        }
        let start = Symbol::plain(&start_name);
        let mut grouped: Vec<(Rhs, Vec<Production>)> = Vec::new();
        for (lhs, rhs) in rules {
            alphabet.check_word(lhs, "rewriting")?;
            let prod = Production::new(start.clone(), lhs.letters().to_vec());
            match grouped.iter_mut().find(|(r, _)| r == rhs) {
                Some((_, prods)) => prods.push(prod),
                None => grouped.push((rhs.clone(), vec![prod])),
            }
        }
        let families = grouped
            .into_iter()
            .map(|(rhs, prods)| {
                let terminals: Alphabet = prods.iter().flat_map(|p| p.rhs.iter().cloned()).collect();
                let grammar = Cfg::new(Alphabet::from_iter([start.clone()]), terminals, prods, start.clone())?;
                Ok((rhs, grammar))
            })
            .collect::<Result<Vec<_>>>()?;
        MonadicCfSystem::new(alphabet, families)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Rule families in canonical order (alphabet order, ε last).
    pub fn families(&self) -> impl Iterator<Item = (&Rhs, &Cfg)> {
        self.families.iter().map(|f| (&f.rhs, &f.grammar))
    }

    /// The family grammar for `rhs`, if present.
    pub fn family(&self, rhs: &Rhs) -> Option<&Cfg> {
        self.families.iter().find(|f| &f.rhs == rhs).map(|f| &f.grammar)
    }

    /// Checks that every family is length-reducing: left-hand sides of
    /// length at least 2 for a letter and at least 1 for ε. Empty families
    /// are allowed.
    pub fn validate(&self) -> ValidationReport {
        let violations = self
            .families
            .iter()
            .filter_map(|f| {
                let required = if f.rhs.is_some() { 2 } else { 1 };
                let min = f.grammar.min_word_length();
                match min {
                    Some(n) if n < required => Some(FamilyViolation {
                        family: rhs_name(&f.rhs),
                        min_length: Some(n),
                        required,
                    }),
                    _ => None,
                }
            })
            .collect();
        ValidationReport { violations }
    }

    fn check(&self, w: &Word) -> Result<()> {
        self.alphabet.check_word(w, "rewriting")
    }

    /// Lengths `k ≥ 1` with `w[i..i + k]` in the family's language.
    fn redex_lengths(&self, f: &Family, letters: &[Symbol], i: usize) -> Vec<usize> {
        let terminals = f.grammar.terminals();
        let end = letters[i..]
            .iter()
            .position(|s| !terminals.contains(s))
            .map_or(letters.len(), |p| i + p);
        f.recognizer
            .accepted_prefix_lengths(&letters[i..end])
            .expect("factor restricted to grammar terminals")
            .into_iter()
            .filter(|&k| k > 0)
            .collect()
    }

    /// The shortest redex starting at `i`, ties broken by family order.
    fn shortest_at(&self, letters: &[Symbol], i: usize) -> Option<RuleApplication> {
        self.families
            .iter()
            .filter_map(|f| {
                self.redex_lengths(f, letters, i)
                    .first()
                    .map(|&k| RuleApplication {
                        position: i,
                        length: k,
                        rhs: f.rhs.clone(),
                    })
            })
            .min_by_key(|r| r.length)
    }

    /// The leftmost, then shortest, redex of `w`.
    pub fn find_redex(&self, w: &Word) -> Result<Option<RuleApplication>> {
        self.check(w)?;
        Ok((0..w.len()).find_map(|i| self.shortest_at(w.letters(), i)))
    }

    /// Every redex of `w`, ordered by position, then length, then family.
    pub fn all_redexes(&self, w: &Word) -> Result<Vec<RuleApplication>> {
        self.check(w)?;
        let mut out = Vec::new();
        for i in 0..w.len() {
            let mut here = Vec::new();
            for f in &self.families {
                for k in self.redex_lengths(f, w.letters(), i) {
                    here.push(RuleApplication {
                        position: i,
                        length: k,
                        rhs: f.rhs.clone(),
                    });
                }
            }
            here.sort_by_key(|r| r.length);
            out.extend(here);
        }
        Ok(out)
    }

    pub fn is_irreducible(&self, w: &Word) -> Result<bool> {
        Ok(self.find_redex(w)?.is_none())
    }

    /// One step with the leftmost-shortest redex; `None` if irreducible.
    pub fn reduce_once(&self, w: &Word) -> Result<Option<Word>> {
        Ok(self.find_redex(w)?.map(|r| r.apply(w)))
    }

    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        self.normal_form_with(w, Strategy::LeftmostShortest)
    }

    /// Reduces to an irreducible word using the given redex choice.
    /// Errors if the system is not length-reducing.
    pub fn normal_form_with(&self, w: &Word, strategy: Strategy) -> Result<Word> {
        self.validate().into_result()?;
        self.check(w)?;
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
            _ => None,
        };
        let mut current = w.clone();
        loop {
            let step = match strategy {
                Strategy::LeftmostShortest => self.find_redex(&current)?,
                Strategy::RightmostShortest => {
                    (0..current.len()).rev().find_map(|i| self.shortest_at(current.letters(), i))
                }
                Strategy::Random(_) => {
                    let all = self.all_redexes(&current)?;
                    if all.is_empty() {
                        None
                    } else {
                        let k = rng.as_mut().expect("seeded").gen_range(0..all.len());
                        Some(all[k].clone())
                    }
                }
            };
            match step {
                Some(r) => current = r.apply(&current),
                None => return Ok(current),
            }
        }
    }

    pub fn equal_in_monoid(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// All irreducible words reachable from `w` along any reduction path,
    /// by breadth-first search. Fails once more than `cap` distinct words
    /// have been visited.
    pub fn irreducible_descendants(&self, w: &Word, cap: usize) -> Result<BTreeSet<Word>> {
        self.validate().into_result()?;
        self.check(w)?;
        let mut seen: BTreeSet<Word> = BTreeSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        let mut out = BTreeSet::new();
        while let Some(x) = queue.pop_front() {
            let redexes = self.all_redexes(&x)?;
            if redexes.is_empty() {
                out.insert(x);
                continue;
            }
            for r in redexes {
                let y = r.apply(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }

    /// Checks that every word of length at most `max_len` has exactly one
    /// irreducible descendant. Descendant sets are shared between words
    /// through a memo table keyed by word, so each word is expanded once.
    pub fn check_confluence_bounded(&self, max_len: usize) -> Result<ConfluenceReport> {
        self.validate().into_result()?;
        let mut memo: HashMap<Word, BTreeSet<Word>> = HashMap::new();
        let words = self.alphabet.words_up_to(max_len);
        for w in &words {
            let d = self.descendants_memo(w, &mut memo)?;
            if d.len() > 1 {
                return Ok(ConfluenceReport::Witness {
                    word: w.clone(),
                    descendants: d,
                });
            }
        }
        Ok(ConfluenceReport::Pass {
            max_len,
            words_checked: words.len(),
        })
    }

    fn descendants_memo(
        &self,
        w: &Word,
        memo: &mut HashMap<Word, BTreeSet<Word>>,
    ) -> Result<BTreeSet<Word>> {
        if let Some(d) = memo.get(w) {
            return Ok(d.clone());
        }
        let redexes = self.all_redexes(w)?;
        let mut out = BTreeSet::new();
        if redexes.is_empty() {
            out.insert(w.clone());
        } else {
            for r in redexes {
                out.extend(self.descendants_memo(&r.apply(w), memo)?);
            }
        }
        memo.insert(w.clone(), out.clone());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::text::parse_grammar;

    fn w(s: &str) -> Word {
        Word::from_chars(s)
    }

    fn example() -> MonadicCfSystem {
        let g = parse_grammar("start: S\nS -> a T d\nT -> b T c | b c\n").unwrap();
        MonadicCfSystem::new(Alphabet::plain("a b c d").unwrap(), [(None, g)]).unwrap()
    }

    fn free_group() -> MonadicCfSystem {
        let a = Alphabet::plain("a a'").unwrap();
        MonadicCfSystem::finite(
            a,
            &[
                (Word::parse("a a'").unwrap(), None),
                (Word::parse("a' a").unwrap(), None),
            ],
        )
        .unwrap()
    }

    fn aa_aaa() -> MonadicCfSystem {
        MonadicCfSystem::finite(Alphabet::plain("a").unwrap(), &[(w("aa"), None), (w("aaa"), None)])
            .unwrap()
    }

    #[test]
    fn validation() {
        assert!(example().validate().passes());
        let a = Alphabet::plain("a").unwrap();
        let bad = MonadicCfSystem::finite(a.clone(), &[(w("a"), Some(Symbol::plain("a")))]).unwrap();
        let report = bad.validate();
        assert_eq!(report.violations[0].min_length, Some(1));
        assert_eq!(report.violations[0].family, "a");
        let g = parse_grammar("start: S\nS -> a S | _\n").unwrap();
        let eps = MonadicCfSystem::new(a, [(None, g)]).unwrap();
        assert!(matches!(
            eps.validate().into_result(),
            Err(Error::Validation { family, .. }) if family == "eps"
        ));
        assert!(eps.normal_form(&w("a")).is_err());
    }

    #[test]
    fn redexes() {
        let s = example();
        let r = s.find_redex(&w("aabcdd")).unwrap().unwrap();
        assert_eq!((r.position, r.length, r.rhs), (1, 4, None));
        assert_eq!(s.find_redex(&w("ab")).unwrap(), None);
        let r = s.find_redex(&w("abcdabcd")).unwrap().unwrap();
        assert_eq!((r.position, r.length), (0, 4));
        assert_eq!(s.reduce_once(&w("aabcdd")).unwrap(), Some(w("ad")));
        assert_eq!(s.reduce_once(&w("abcd")).unwrap(), Some(w("")));
        assert_eq!(s.reduce_once(&w("ad")).unwrap(), None);
        assert!(s.find_redex(&w("ax")).is_err());
    }

    #[test]
    fn normal_forms() {
        let s = example();
        assert_eq!(s.normal_form(&w("abcabcdd")).unwrap(), w(""));
        assert_eq!(s.normal_form(&w("ab")).unwrap(), w("ab"));
        assert_eq!(s.normal_form(&w("abbccd")).unwrap(), w(""));
        assert!(s.equal_in_monoid(&w("abcd"), &w("")).unwrap());
        assert!(!s.equal_in_monoid(&w("ab"), &w("abcd")).unwrap());
        let f = free_group();
        assert_eq!(
            f.normal_form(&Word::parse("a a' a").unwrap()).unwrap(),
            Word::parse("a").unwrap()
        );
    }

    #[test]
    fn descendants() {
        let s = example();
        assert_eq!(s.irreducible_descendants(&w("abcabcdd"), 100).unwrap(), BTreeSet::from([w("")]));
        assert_eq!(
            aa_aaa().irreducible_descendants(&w("aaa"), 100).unwrap(),
            BTreeSet::from([w(""), w("a")])
        );
        assert_eq!(s.irreducible_descendants(&w("dcba"), 100).unwrap(), BTreeSet::from([w("dcba")]));
        assert!(matches!(
            aa_aaa().irreducible_descendants(&w("aaaaaaaa"), 3),
            Err(Error::CapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn confluence() {
        assert!(example().check_confluence_bounded(6).unwrap().passes());
        match aa_aaa().check_confluence_bounded(3).unwrap() {
            ConfluenceReport::Witness { word, descendants } => {
                assert_eq!(word, w("aaa"));
                assert_eq!(descendants.len(), 2);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        let single = MonadicCfSystem::finite(Alphabet::plain("a b").unwrap(), &[(w("ab"), None)])
            .unwrap();
        assert!(single.check_confluence_bounded(6).unwrap().passes());
    }

    #[test]
    fn strategies_agree_on_example() {
        let s = example();
        for u in s.alphabet().words_up_to(6) {
            let nf = s.normal_form(&u).unwrap();
            assert_eq!(s.normal_form_with(&u, Strategy::RightmostShortest).unwrap(), nf);
            assert_eq!(s.normal_form_with(&u, Strategy::Random(7)).unwrap(), nf);
        }
    }
}
