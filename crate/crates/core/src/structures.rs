//! Representative languages with a multiplication-table membership test,
//! change of generators through rational relations, the shipped example
//! systems, and a bounded search for cross-section collisions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::automata::{Dfa, Nfa, Transducer};
use crate::error::{Error, Result};
use crate::grammar::text::parse_grammar;
use crate::rewriting::MonadicCfSystem;
use crate::word::{Alphabet, Homomorphism, Symbol, Word};

/// Decides whether two words over a structure's alphabet name the same
/// monoid element.
pub type Equality = Arc<dyn Fn(&Word, &Word) -> Result<bool> + Send + Sync>;

/// Number of letters by which a representative may exceed the element it
/// names before [`validate_cross_section`] stops looking for it.
pub const UNWITNESSED_SLACK: usize = 4;

/// A regular language of representatives together with an equality test.
#[derive(Clone)]
pub struct WordHypStructure {
    alphabet: Alphabet,
    reps: Nfa,
    equality: Equality,
    interpretation: Homomorphism,
}

impl fmt::Debug for WordHypStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordHypStructure")
            .field("alphabet", &self.alphabet)
            .field("reps", &self.reps)
            .field("interpretation", &self.interpretation)
            .finish_non_exhaustive()
    }
}

impl WordHypStructure {
    /// `interpretation` maps each letter of `reps`' alphabet to a word of
    /// some base system; use [`Homomorphism::identity`] when there is none.
    pub fn new(reps: Nfa, equality: Equality, interpretation: Homomorphism) -> Result<Self> {
        if interpretation.domain() != reps.alphabet() {
            return Err(Error::Domain(
                "interpretation must be defined on the representatives' alphabet".into(),
            ));
        }
        Ok(WordHypStructure {
            alphabet: reps.alphabet().clone(),
            reps,
            equality,
            interpretation,
        })
    }

    /// All of `A*` as representatives, compared by normal form.
    pub fn from_system(system: &MonadicCfSystem) -> Self {
        let alphabet = system.alphabet().clone();
        let s = system.clone();
        WordHypStructure {
            reps: Nfa::universal(alphabet.clone()),
            equality: Arc::new(move |u, v| s.equal_in_monoid(u, v)),
            interpretation: Homomorphism::identity(&alphabet),
            alphabet,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn reps(&self) -> &Nfa {
        &self.reps
    }

    pub fn interpretation(&self) -> &Homomorphism {
        &self.interpretation
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        (self.equality)(u, v)
    }

    /// Whether `u #1 v #2 w^rev` is in the multiplication table: all three
    /// words are representatives and `uv = w`.
    pub fn ml_member(&self, u: &Word, v: &Word, w: &Word) -> Result<bool> {
        for x in [u, v, w] {
            if !self.reps.accepts(x)? {
                return Ok(false);
            }
        }
        self.equal(&u.concat(v), w)
    }

    /// Representatives of length at most `max_len`, grouped by the
    /// element they name. Groups and their members are in shortlex order.
    pub fn representative_groups(&self, max_len: usize) -> Result<Vec<Vec<Word>>> {
        let mut groups: Vec<Vec<Word>> = Vec::new();
        for w in self.reps.enumerate(max_len) {
            let mut placed = false;
            for g in &mut groups {
                if self.equal(&g[0], &w)? {
                    g.push(w.clone());
                    placed = true;
                    break;
                }
            }
            if !placed {
                groups.push(vec![w]);
            }
        }
        Ok(groups)
    }
}

/// A substitution `b ↦ u_b` from generators `B` to words over `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    map: Homomorphism,
    semigroup: bool,
}

impl GeneratorMap {
    /// With `semigroup` set, every image must be nonempty.
    pub fn new(
        source: Alphabet,
        target: Alphabet,
        images: impl IntoIterator<Item = (Symbol, Word)>,
        semigroup: bool,
    ) -> Result<Self> {
        let map = Homomorphism::new(source, target, images)?;
        if semigroup {
            if let Some(b) = map.domain().iter().find(|b| map.image(b).is_some_and(Word::is_empty)) {
                return Err(Error::Domain(format!(
                    "`{b}` maps to the empty word, which a semigroup map forbids"
                )));
            }
        }
        Ok(GeneratorMap { map, semigroup })
    }

    pub fn source(&self) -> &Alphabet {
        self.map.domain()
    }

    pub fn target(&self) -> &Alphabet {
        self.map.codomain()
    }

    pub fn image(&self, b: &Symbol) -> Option<&Word> {
        self.map.image(b)
    }

    pub fn is_semigroup(&self) -> bool {
        self.semigroup
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.map.apply(w)
    }

    /// Parses lines `b -> x y` (`_` for the empty image), with an optional
    /// `target: x y` line fixing the target alphabet. Comments start with `;`.
    pub fn parse(text: &str, semigroup: bool) -> Result<Self> {
        let mut source = Alphabet::new();
        let mut target: Option<Alphabet> = None;
        let mut used = Alphabet::new();
        let mut images = Vec::new();
        for (offset, raw) in text.lines().enumerate() {
            let ln = offset + 1;
            let line = raw.split(';').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("target:") {
                let letters = rest
                    .split_whitespace()
                    .map(Symbol::parse_token)
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::syntax(ln, 1, e.to_string()))?;
                target = Some(letters.into_iter().collect());
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::syntax(ln, 1, "expected `b -> word`"))?;
            let b = Symbol::parse_token(lhs.trim()).map_err(|e| Error::syntax(ln, 1, e.to_string()))?;
            let w = Word::parse(rhs).map_err(|e| Error::syntax(ln, 1, e.to_string()))?;
            if !source.insert(b.clone()) {
                return Err(Error::syntax(ln, 1, format!("`{b}` has two images")));
            }
            for s in &w {
                used.insert(s.clone());
            }
            images.push((b, w));
        }
        GeneratorMap::new(source, target.unwrap_or(used), images, semigroup)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "target:{}\n",
            self.target().iter().map(|s| format!(" {s}")).collect::<String>()
        );
        for b in self.source() {
            out.push_str(&format!("{b} -> {}\n", self.image(b).expect("total")));
        }
        out
    }
}

/// `{ (b, u_b) : b ∈ B }*`, the letterwise substitution as a relation.
pub fn build_p_relation(m: &GeneratorMap) -> Transducer {
    Transducer::from_pairs(
        m.source().clone(),
        m.target().clone(),
        m.source().iter().map(|b| (Some(b.clone()), m.image(b).expect("total").clone())),
    )
    .expect("images lie over the target")
    .star()
}

/// Rewrites each factor of `u #1 v #2 w` independently: `u` and `v` by
/// the substitution, `w` by its mirror image.
pub fn build_q_relation(m: &GeneratorMap) -> Transducer {
    let p = build_p_relation(m);
    Transducer::concat(&[
        p.clone(),
        Transducer::singleton(&Symbol::marker1()),
        p.clone(),
        Transducer::singleton(&Symbol::marker2()),
        p.reverse(),
    ])
}

/// The structure over `A` whose representatives are the images of `s`'s
/// representatives under the substitution. `equality` must decide the
/// monoid's word problem over `A`.
pub fn change_generators(
    s: &WordHypStructure,
    m: &GeneratorMap,
    equality: Equality,
) -> Result<WordHypStructure> {
    if s.alphabet() != m.source() {
        return Err(Error::Domain(
            "generator map must be defined on the structure's alphabet".into(),
        ));
    }
    let reps = build_p_relation(m).image(s.reps())?;
    let interpretation = Homomorphism::identity(m.target());
    WordHypStructure::new(reps, equality, interpretation)
}

/// `(L − {ε}) ∪ {e}` for a nonempty word `e`.
pub fn adjust_identity_rep(reps: &Nfa, e: &Word) -> Result<Nfa> {
    if e.is_empty() {
        return Err(Error::Domain("the identity representative must be nonempty".into()));
    }
    Ok(reps.without_empty_word().union(&Nfa::literal(reps.alphabet().clone(), e)?))
}

/// The system over `{a, b, c, d}` with rules `a b^k c^k d → ε` for every
/// `k ≥ alpha_min`.
pub fn example_monoid(alpha_min: usize) -> MonadicCfSystem {
    let mut text = String::from("start: S\nterminals: a b c d\nS -> a T d\nT -> b T c");
    match alpha_min {
        0 => text.push_str(" | b c\nS -> a d\n"),
        k => {
            text.push_str(" | ");
            text.push_str(&vec!["b"; k].join(" "));
            text.push(' ');
            text.push_str(&vec!["c"; k].join(" "));
            text.push('\n');
        }
    }
    let g = parse_grammar(&text).expect("valid grammar");
    MonadicCfSystem::new(Alphabet::plain("a b c d").expect("valid"), [(None, g)]).expect("valid")
}

/// The free group of rank one as a monoid: letters `a`, `a'` with
/// `a a' → ε` and `a' a → ε`.
pub fn free_group_rank_one() -> MonadicCfSystem {
    let alphabet = Alphabet::plain("a a'").expect("valid");
    let rules = [
        (Word::parse("a a'").expect("valid"), None),
        (Word::parse("a' a").expect("valid"), None),
    ];
    MonadicCfSystem::finite(alphabet, &rules).expect("valid")
}

/// Two distinct candidate words with the same normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub first: Word,
    pub second: Word,
    pub normal_form: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossSectionReport {
    pub max_len: usize,
    pub words_checked: usize,
    /// For each element named twice, the shortlex-least candidate paired
    /// with every other candidate naming it.
    pub collisions: Vec<Collision>,
    /// Irreducible words (up to the slack-adjusted bound) that no
    /// enumerated candidate names. Inconclusive rather than a failure.
    pub unwitnessed: Vec<Word>,
}

impl CrossSectionReport {
    pub fn has_collision(&self) -> bool {
        !self.collisions.is_empty()
    }
}

/// Length bound for the unwitnessed check: `max_len − 4`, but never
/// below 1 when `max_len ≥ 1`, so single letters are always checked.
pub fn unwitnessed_bound(max_len: usize) -> usize {
    max_len.saturating_sub(UNWITNESSED_SLACK).max(max_len.min(1))
}

/// Groups the candidate's words of length at most `max_len` by normal
/// form and reports collisions and unrepresented elements.
pub fn validate_cross_section(
    candidate: &Dfa,
    system: &MonadicCfSystem,
    max_len: usize,
) -> Result<CrossSectionReport> {
    if !candidate.alphabet().is_subset(system.alphabet()) {
        return Err(Error::Domain(
            "candidate automaton uses letters outside the system's alphabet".into(),
        ));
    }
    let words = candidate.enumerate(max_len);
    let mut groups: BTreeMap<Word, Vec<Word>> = BTreeMap::new();
    for w in &words {
        groups.entry(system.normal_form(w)?).or_default().push(w.clone());
    }
    let mut collisions = Vec::new();
    for (nf, members) in &groups {
        for other in &members[1..] {
            collisions.push(Collision {
                first: members[0].clone(),
                second: other.clone(),
                normal_form: nf.clone(),
            });
        }
    }
    collisions.sort_by(|x, y| (&x.normal_form, &x.second).cmp(&(&y.normal_form, &y.second)));
    let mut unwitnessed = Vec::new();
    for w in system.alphabet().words_up_to(unwitnessed_bound(max_len)) {
        if !groups.contains_key(&w) && system.is_irreducible(&w)? {
            unwitnessed.push(w);
        }
    }
    Ok(CrossSectionReport {
        max_len,
        words_checked: words.len(),
        collisions,
        unwitnessed,
    })
}

/// A named candidate cross-section.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub name: &'static str,
    pub dfa: Dfa,
}

fn sym(s: &str) -> Symbol {
    Symbol::plain(s)
}

/// Automaton accepting the words over `{a, b, c, d}` that avoid `pattern`
/// as a factor, built from the pattern's prefix automaton. With `sink`,
/// the rejected continuation goes to an explicit dead state.
fn avoiding(pattern: &str, sink: bool) -> Dfa {
    let alphabet = Alphabet::plain("a b c d").expect("valid");
    let p: Vec<char> = pattern.chars().collect();
    let n = p.len();
    let dead = n;
    let mut edges = Vec::new();
    for q in 0..n {
        for s in alphabet.iter() {
            let c = s.name().chars().next().expect("nonempty");
            let mut seen: Vec<char> = p[..q].to_vec();
            seen.push(c);
            let next = (0..=seen.len())
                .rev()
                .find(|&k| k <= n && seen[seen.len() - k..] == p[..k])
                .expect("k = 0 always matches");
            if next == n {
                if sink {
                    edges.push((q, s.clone(), dead));
                }
            } else {
                edges.push((q, s.clone(), next));
            }
        }
    }
    if sink {
        for s in alphabet.iter() {
            edges.push((dead, s.clone(), dead));
        }
    }
    let states = if sink { n + 1 } else { n };
    Dfa::new(states, alphabet, edges, 0, 0..n).expect("valid")
}

/// Hand-picked candidate cross-sections for [`example_monoid`], each of
/// which names some element twice within length 8.
pub fn adversarial_corpus() -> Vec<Candidate> {
    let abcd = Alphabet::plain("a b c d").expect("valid");
    let system = example_monoid(1);
    let everything = Dfa::new(1, abcd.clone(), abcd.iter().map(|s| (0, s.clone(), 0)).collect(), 0, [0])
        .expect("valid");
    let ab_c_d = Nfa::new(
        4,
        abcd.clone(),
        vec![
            (0, Some(sym("a")), 1),
            (1, Some(sym("b")), 1),
            (1, None, 2),
            (2, Some(sym("c")), 2),
            (2, Some(sym("d")), 3),
        ],
        [0],
        [3],
    )
    .expect("valid");
    let short_irreducibles: BTreeSet<Word> = abcd
        .words_up_to(3)
        .into_iter()
        .filter(|w| system.is_irreducible(w).expect("over the alphabet"))
        .collect();
    let mixed = ab_c_d.union(&Nfa::from_words(abcd.clone(), &short_irreducibles).expect("valid"));
    vec![
        Candidate {
            name: "all-words",
            dfa: everything,
        },
        Candidate {
            name: "abc-ladder-or-short-irreducible",
            dfa: Dfa::from_nfa(&mixed),
        },
        Candidate {
            name: "avoid-abcd",
            dfa: avoiding("abcd", false),
        },
        Candidate {
            name: "avoid-bcd-with-sink",
            dfa: avoiding("bcd", true),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_chars(s)
    }

    fn map(pairs: &[(&str, &str)]) -> GeneratorMap {
        let source: Alphabet = pairs.iter().map(|(b, _)| sym(b)).collect();
        let target: Alphabet = pairs.iter().flat_map(|(_, u)| w(u).into_letters()).collect();
        GeneratorMap::new(source, target, pairs.iter().map(|(b, u)| (sym(b), w(u))), true).unwrap()
    }

    #[test]
    fn ml_membership() {
        let s = WordHypStructure::from_system(&example_monoid(1));
        assert!(s.ml_member(&w("a"), &w("bcd"), &w("")).unwrap());
        assert!(s.ml_member(&w("a"), &w("b"), &w("ab")).unwrap());
        let a = Alphabet::plain("a").unwrap();
        let only_empty = WordHypStructure::new(
            Nfa::literal(a.clone(), &w("")).unwrap(),
            Arc::new(|u: &Word, v: &Word| Ok(u == v)),
            Homomorphism::identity(&a),
        )
        .unwrap();
        assert!(only_empty.ml_member(&w(""), &w(""), &w("")).unwrap());
        assert!(!only_empty.ml_member(&w("a"), &w(""), &w("a")).unwrap());
    }

    #[test]
    fn p_and_q_relations() {
        let p = build_p_relation(&map(&[("b", "x")]));
        assert!(p.relates(&w("bb"), &w("xx")).unwrap());
        assert!(p.relates(&w(""), &w("")).unwrap());
        let p2 = build_p_relation(&map(&[("b", "xy")]));
        assert!(p2.relates(&w("b"), &w("xy")).unwrap());
        assert!(!p2.relates(&w("b"), &w("x")).unwrap());
        let q = build_q_relation(&map(&[("b", "x")]));
        let parse = |s: &str| Word::parse(s).unwrap();
        assert!(q.relates(&parse("b #1 b #2 b"), &parse("x #1 x #2 x")).unwrap());
        assert!(q.relates(&parse("#1 #2"), &parse("#1 #2")).unwrap());
        assert!(!q.relates(&parse("b #1 b #2 b"), &parse("x #1 x #2 x x")).unwrap());
    }

    #[test]
    fn change_of_generators_keeps_uniqueness() {
        let b = Alphabet::plain("b").unwrap();
        let free = WordHypStructure::new(
            Nfa::universal(b.clone()),
            Arc::new(|u: &Word, v: &Word| Ok(u == v)),
            Homomorphism::identity(&b),
        )
        .unwrap();
        let m = map(&[("b", "xy")]);
        let changed = change_generators(&free, &m, Arc::new(|u: &Word, v: &Word| Ok(u == v))).unwrap();
        let expected: BTreeSet<Word> = (0..=4).map(|n| w(&"xy".repeat(n))).collect();
        assert_eq!(changed.reps().enumerate(8), expected);
        assert!(changed.representative_groups(8).unwrap().iter().all(|g| g.len() == 1));
        let wrong = map(&[("c", "x")]);
        assert!(change_generators(&free, &wrong, Arc::new(|u: &Word, v: &Word| Ok(u == v))).is_err());
    }

    #[test]
    fn identity_adjustment() {
        let x = Alphabet::plain("x").unwrap();
        let adjusted = adjust_identity_rep(&Nfa::universal(x.clone()), &w("xx")).unwrap();
        let expected: BTreeSet<Word> = (1..=6).map(|n| w(&"x".repeat(n))).collect();
        assert_eq!(adjusted.enumerate(6), expected);
        let e = Alphabet::plain("e").unwrap();
        let only = adjust_identity_rep(&Nfa::literal(e, &w("")).unwrap(), &w("e")).unwrap();
        assert_eq!(only.enumerate(4), BTreeSet::from([w("e")]));
        assert!(adjust_identity_rep(&Nfa::universal(x), &w("")).is_err());
    }

    #[test]
    fn example_system() {
        let s = example_monoid(1);
        assert!(s.validate().passes());
        assert_eq!(s.normal_form(&w("abbccd")).unwrap(), w(""));
        assert_eq!(s.normal_form(&w("ad")).unwrap(), w("ad"));
        let s0 = example_monoid(0);
        assert_eq!(s0.normal_form(&w("ad")).unwrap(), w(""));
        let s2 = example_monoid(2);
        assert_eq!(s2.normal_form(&w("abcd")).unwrap(), w("abcd"));
        assert_eq!(s2.normal_form(&w("abbccd")).unwrap(), w(""));
    }

    #[test]
    fn cross_sections() {
        let s = example_monoid(1);
        let corpus = adversarial_corpus();
        let r = validate_cross_section(&corpus[0].dfa, &s, 4).unwrap();
        assert!(r.collisions.contains(&Collision {
            first: w(""),
            second: w("abcd"),
            normal_form: w(""),
        }));
        let a = Alphabet::plain("a b c d").unwrap();
        let only_empty = Dfa::new(1, a, vec![], 0, [0]).unwrap();
        let r = validate_cross_section(&only_empty, &s, 2).unwrap();
        assert!(r.unwitnessed.contains(&w("a")));
        assert!(!r.has_collision());
        let xx = MonadicCfSystem::finite(Alphabet::plain("x").unwrap(), &[(w("xx"), None)]).unwrap();
        let nfs = Dfa::new(2, Alphabet::plain("x").unwrap(), vec![(0, sym("x"), 1)], 0, [0, 1]).unwrap();
        let r = validate_cross_section(&nfs, &xx, 6).unwrap();
        assert!(r.collisions.is_empty() && r.unwitnessed.is_empty());
    }

    #[test]
    fn avoiding_automata() {
        let a = avoiding("abcd", false);
        assert_eq!(a.num_states(), 4);
        assert!(!a.accepts(&w("aabcd")).unwrap());
        assert!(a.accepts(&w("abcabd")).unwrap());
        let b = avoiding("bcd", true);
        assert_eq!(b.num_states(), 4);
        assert!(!b.accepts(&w("abcda")).unwrap());
        assert!(b.accepts(&w("abbccd")).unwrap());
    }
}
