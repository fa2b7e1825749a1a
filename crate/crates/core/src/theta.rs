//! The equality grammar of a context-free monadic rewriting system.
//!
//! For a system `(A, R)` the grammar built here generates
//! `K = { u #2 v^rev : u, v ∈ A*, u = v in the monoid }`. It combines
//!
//! * a mirror grammar for `{ $p #2 ~p^rev }` (with `$eps #2 ~eps` for the
//!   empty word),
//! * for each right-hand side `r`, the rule family annotated with `$`
//!   and, reversed, with `~`,
//! * insertion productions `$r → $r $eps | $eps $r` (and the `~` mirror),
//! * start productions `$r → O'_r`, `~r → O''_r`,
//! * end productions `$r → r`, `~r → r` (erasing for `r = ε`).
//!
//! The annotated letters are nonterminals of the combined grammar.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grammar::text::{parse_grammar_with_comments, production_line};
use crate::grammar::{disjoint_rename, Cfg, Production, Recognizer};
use crate::rewriting::{rhs_name, MonadicCfSystem, Rhs};
use crate::word::{Alphabet, Annotation, Homomorphism, Symbol, Word, EPS_NAME};

/// Which construction step contributed a production.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ThetaFamily {
    Delta,
    GammaPrime(Rhs),
    GammaTilde(Rhs),
    Insertion,
    Start(Rhs),
    End(Rhs),
}

impl ThetaFamily {
    fn rank(&self) -> u8 {
        match self {
            ThetaFamily::Delta => 0,
            ThetaFamily::GammaPrime(_) => 1,
            ThetaFamily::GammaTilde(_) => 2,
            ThetaFamily::Insertion => 3,
            ThetaFamily::Start(_) => 4,
            ThetaFamily::End(_) => 5,
        }
    }

    fn rhs(&self) -> Option<&Rhs> {
        match self {
            ThetaFamily::GammaPrime(r)
            | ThetaFamily::GammaTilde(r)
            | ThetaFamily::Start(r)
            | ThetaFamily::End(r) => Some(r),
            ThetaFamily::Delta | ThetaFamily::Insertion => None,
        }
    }

    /// Parses a tag as written by [`fmt::Display`], e.g. `gamma-prime eps`.
    pub fn parse(tag: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut parts = tag.split_whitespace();
        let head = parts.next().unwrap_or("");
        let arg = parts.next();
        if parts.next().is_some() {
            return Err(Error::Domain(format!("unknown production tag `{tag}`")));
        }
        let rhs = || -> Result<Rhs> {
            match arg {
                Some(EPS_NAME) => Ok(None),
                Some(name) => {
                    let s = Symbol::parse_token(name)?;
                    if !alphabet.contains(&s) {
                        return Err(Error::Domain(format!("tag `{tag}` names a foreign letter")));
                    }
                    Ok(Some(s))
                }
                None => Err(Error::Domain(format!("tag `{tag}` needs a letter or `eps`"))),
            }
        };
        match (head, arg) {
            ("delta", None) => Ok(ThetaFamily::Delta),
            ("insertion", None) => Ok(ThetaFamily::Insertion),
            ("gamma-prime", _) => Ok(ThetaFamily::GammaPrime(rhs()?)),
            ("gamma-tilde", _) => Ok(ThetaFamily::GammaTilde(rhs()?)),
            ("start", _) => Ok(ThetaFamily::Start(rhs()?)),
            ("end", _) => Ok(ThetaFamily::End(rhs()?)),
            _ => Err(Error::Domain(format!("unknown production tag `{tag}`"))),
        }
    }
}

impl fmt::Display for ThetaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaFamily::Delta => f.write_str("delta"),
            ThetaFamily::Insertion => f.write_str("insertion"),
            ThetaFamily::GammaPrime(r) => write!(f, "gamma-prime {}", rhs_name(r)),
            ThetaFamily::GammaTilde(r) => write!(f, "gamma-tilde {}", rhs_name(r)),
            ThetaFamily::Start(r) => write!(f, "start {}", rhs_name(r)),
            ThetaFamily::End(r) => write!(f, "end {}", rhs_name(r)),
        }
    }
}

/// The compiled equality grammar with per-production provenance.
///
/// Productions are stored in canonical order: by family, then by their
/// textual form.
#[derive(Debug, Clone)]
pub struct ThetaGrammar {
    grammar: Cfg,
    provenance: Vec<ThetaFamily>,
    alphabet: Alphabet,
    recognizer: Recognizer,
}

impl PartialEq for ThetaGrammar {
    fn eq(&self, other: &Self) -> bool {
        self.grammar == other.grammar
            && self.provenance == other.provenance
            && self.alphabet == other.alphabet
    }
}

impl Eq for ThetaGrammar {}

fn annotate_terminals(g: &Cfg, a: Annotation) -> Result<Cfg> {
    if g.has_empty_productions() {
        return Err(Error::Precondition(
            "grammar has empty productions; eliminate them first".into(),
        ));
    }
    let map: HashMap<Symbol, Symbol> = g
        .terminals()
        .iter()
        .map(|s| {
            if !s.is_plain() {
                return Err(Error::Domain(format!("terminal `{s}` is already annotated")));
            }
            let t = match a {
                Annotation::Dollar => Symbol::dollar(s),
                Annotation::Tilde => Symbol::tilde(s),
            };
            Ok((s.clone(), t))
        })
        .collect::<Result<_>>()?;
    g.relabel_terminals(&map)
}

/// Relabels each terminal `x` to `$x`: `w ∈ L(g)` iff `$w ∈ L(result)`.
pub fn build_gamma_prime(g: &Cfg) -> Result<Cfg> {
    annotate_terminals(g, Annotation::Dollar)
}

/// Reverses every production and relabels `x` to `~x`:
/// `w ∈ L(g)` iff `~(w^rev) ∈ L(result)`.
pub fn build_gamma_tilde(g: &Cfg) -> Result<Cfg> {
    annotate_terminals(&g.reverse_productions(), Annotation::Tilde)
}

/// The mirror grammar for `{ $p #2 ~p^rev : p ∈ A⁺ } ∪ { $eps #2 ~eps }`,
/// with start symbol `O` and one auxiliary nonterminal `I`.
pub fn build_delta(alphabet: &Alphabet) -> Cfg {
    let o = Symbol::plain("O");
    let i = Symbol::plain("I");
    let mut prods = Vec::new();
    for a in alphabet {
        prods.push(Production::new(o.clone(), vec![Symbol::dollar(a), i.clone(), Symbol::tilde(a)]));
    }
    for a in alphabet {
        prods.push(Production::new(i.clone(), vec![Symbol::dollar(a), i.clone(), Symbol::tilde(a)]));
    }
    prods.push(Production::new(i.clone(), vec![Symbol::marker2()]));
    prods.push(Production::new(
        o.clone(),
        vec![Symbol::dollar_empty(), Symbol::marker2(), Symbol::tilde_empty()],
    ));
    let mut terminals = alphabet.annotated(Annotation::Dollar);
    terminals.insert(Symbol::dollar_empty());
    for s in &alphabet.annotated(Annotation::Tilde) {
        terminals.insert(s.clone());
    }
    terminals.insert(Symbol::tilde_empty());
    terminals.insert(Symbol::marker2());
    Cfg::new(Alphabet::from_iter([o.clone(), i]), terminals, prods, o).expect("valid")
}

fn annotated(r: &Rhs, a: Annotation) -> Symbol {
    match (r, a) {
        (Some(s), Annotation::Dollar) => Symbol::dollar(s),
        (Some(s), Annotation::Tilde) => Symbol::tilde(s),
        (None, a) => Symbol::annotated_empty(a),
    }
}

/// Compiles the equality grammar of a validated system.
pub fn build_theta(system: &MonadicCfSystem) -> Result<ThetaGrammar> {
    system.validate().into_result()?;
    let alphabet = system.alphabet().clone();
    let rhss: Vec<Rhs> = alphabet.iter().cloned().map(Some).chain([None]).collect();

    let mut parts = vec![build_delta(&alphabet)];
    let mut primes = Vec::new();
    let mut tildes = Vec::new();
    for r in &rhss {
        let g = match system.family(r) {
            Some(g) => g.eliminate_epsilon_productions(),
            None => Cfg::empty_language(Symbol::plain("S"), Alphabet::new())?,
        };
        primes.push(build_gamma_prime(&g)?);
        tildes.push(build_gamma_tilde(&g)?);
    }
    parts.extend(primes);
    parts.extend(tildes);
    let renamed = disjoint_rename(&parts)?;
    let n = rhss.len();
    let (delta, rest) = renamed.split_first().expect("nonempty");
    let (primes, tildes) = rest.split_at(n);

    let mut tagged: Vec<(ThetaFamily, Production)> = Vec::new();
    tagged.extend(delta.productions().iter().map(|p| (ThetaFamily::Delta, p.clone())));
    for (r, g) in rhss.iter().zip(primes) {
        tagged.extend(g.productions().iter().map(|p| (ThetaFamily::GammaPrime(r.clone()), p.clone())));
    }
    for (r, g) in rhss.iter().zip(tildes) {
        tagged.extend(g.productions().iter().map(|p| (ThetaFamily::GammaTilde(r.clone()), p.clone())));
    }
    for a in [Annotation::Dollar, Annotation::Tilde] {
        let e = Symbol::annotated_empty(a);
        for r in &rhss {
            let x = annotated(r, a);
            tagged.push((ThetaFamily::Insertion, Production::new(x.clone(), vec![x.clone(), e.clone()])));
            tagged.push((ThetaFamily::Insertion, Production::new(x.clone(), vec![e.clone(), x])));
        }
    }
    for (r, (gp, gt)) in rhss.iter().zip(primes.iter().zip(tildes)) {
        tagged.push((
            ThetaFamily::Start(r.clone()),
            Production::new(annotated(r, Annotation::Dollar), vec![gp.start().clone()]),
        ));
        tagged.push((
            ThetaFamily::Start(r.clone()),
            Production::new(annotated(r, Annotation::Tilde), vec![gt.start().clone()]),
        ));
    }
    for r in &rhss {
        for a in [Annotation::Dollar, Annotation::Tilde] {
            tagged.push((
                ThetaFamily::End(r.clone()),
                Production::new(annotated(r, a), r.iter().cloned().collect()),
            ));
        }
    }

    let mut nonterminals: Alphabet = delta.nonterminals().iter().cloned().collect();
    for a in [Annotation::Dollar, Annotation::Tilde] {
        for r in &rhss {
            nonterminals.insert(annotated(r, a));
        }
    }
    for g in primes.iter().chain(tildes) {
        for s in g.nonterminals() {
            nonterminals.insert(s.clone());
        }
    }
    let mut terminals = alphabet.clone();
    terminals.insert(Symbol::marker2());

    let start = delta.start().clone();
    let unsorted = Cfg::new(nonterminals.clone(), terminals.clone(), Vec::new(), start.clone())?;
    let rhs_index = |r: &Rhs| r.as_ref().map_or(n, |s| alphabet.position(s).expect("letter"));
    let mut keyed: Vec<(ThetaFamily, String, Production)> = tagged
        .into_iter()
        .map(|(f, p)| (f, production_line(&unsorted, &p), p))
        .collect();
    keyed.sort_by(|(f1, l1, _), (f2, l2, _)| {
        f1.rank()
            .cmp(&f2.rank())
            .then_with(|| match (f1.rhs(), f2.rhs()) {
                (Some(r1), Some(r2)) => rhs_index(r1).cmp(&rhs_index(r2)),
                _ => Ordering::Equal,
            })
            .then_with(|| l1.cmp(l2))
    });
    let provenance = keyed.iter().map(|(f, _, _)| f.clone()).collect();
    let productions = keyed.into_iter().map(|(_, _, p)| p).collect();
    let grammar = Cfg::new(nonterminals, terminals, productions, start)?;
    Ok(ThetaGrammar::from_parts(grammar, provenance, alphabet))
}

impl ThetaGrammar {
    fn from_parts(grammar: Cfg, provenance: Vec<ThetaFamily>, alphabet: Alphabet) -> Self {
        let recognizer = grammar.recognizer();
        ThetaGrammar {
            grammar,
            provenance,
            alphabet,
            recognizer,
        }
    }

    pub fn grammar(&self) -> &Cfg {
        &self.grammar
    }

    /// The letters of the underlying rewriting system.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Family of each production, parallel to `grammar().productions()`.
    pub fn provenance(&self) -> &[ThetaFamily] {
        &self.provenance
    }

    /// Productions contributed by `family`.
    pub fn family_productions<'a>(
        &'a self,
        family: &'a ThetaFamily,
    ) -> impl Iterator<Item = &'a Production> + 'a {
        self.grammar
            .productions()
            .iter()
            .zip(&self.provenance)
            .filter(move |(_, f)| *f == family)
            .map(|(p, _)| p)
    }

    /// Whether `u #2 v^rev` is generated, i.e. whether `u` and `v` name the
    /// same monoid element.
    pub fn k_member(&self, u: &Word, v: &Word) -> Result<bool> {
        self.alphabet.check_word(u, "system")?;
        self.alphabet.check_word(v, "system")?;
        let mut letters = u.letters().to_vec();
        letters.push(Symbol::marker2());
        letters.extend(v.reversed().into_letters());
        self.recognizer.accepts(&Word::new(letters))
    }

    /// Whether `u #1 v #2 w^rev` lies in the multiplication table, i.e.
    /// whether `uv = w` in the monoid.
    pub fn mtable_member(&self, u: &Word, v: &Word, w: &Word) -> Result<bool> {
        self.alphabet.check_word(v, "system")?;
        self.k_member(&u.concat(v), w)
    }

    /// Multiplication-table membership of a whole word over
    /// `A ∪ {#1, #2}`: the word must have the shape `x #1 y #2 z` and its
    /// image with `#1` erased must be generated by the grammar.
    pub fn mtable_word_member(&self, word: &Word) -> Result<bool> {
        let phi = Homomorphism::erase_first_marker(&self.alphabet);
        let image = phi.apply(word)?;
        let (m1, m2) = (Symbol::marker1(), Symbol::marker2());
        let shape = word.count(&m1) == 1
            && word.count(&m2) == 1
            && word.iter().position(|s| *s == m1) < word.iter().position(|s| *s == m2);
        Ok(shape && self.recognizer.accepts(&image)?)
    }

    /// Whether the sentential form `form` derives the terminal word `w`.
    pub fn derives(&self, form: &Word, w: &Word) -> Result<bool> {
        self.recognizer.derives(form, w)
    }

    /// Renders the grammar with a trailing `; <family>` comment on every
    /// production.
    pub fn to_text(&self) -> String {
        let mut out = self.grammar.header_text();
        for (p, f) in self.grammar.productions().iter().zip(&self.provenance) {
            out.push_str(&format!("{} ; {f}\n", production_line(&self.grammar, p)));
        }
        out
    }
}

/// Parses a grammar written by [`ThetaGrammar::to_text`]. Every production
/// must carry a family comment.
pub fn parse_theta(text: &str) -> Result<ThetaGrammar> {
    let parsed = parse_grammar_with_comments(text)?;
    let g = parsed.grammar;
    let marker = Symbol::marker2();
    if !g.terminals().contains(&marker) {
        return Err(Error::Domain("an equality grammar has `#2` among its terminals".into()));
    }
    let alphabet: Alphabet = g.terminals().iter().filter(|s| **s != marker).cloned().collect();
    let provenance = parsed
        .comments
        .iter()
        .zip(g.productions())
        .map(|(c, p)| match c {
            Some(tag) => ThetaFamily::parse(tag, &alphabet),
            None => Err(Error::Domain(format!("production `{p}` has no family tag"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ThetaGrammar::from_parts(g, provenance, alphabet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::text::parse_grammar;
    use std::collections::BTreeSet;

    const EXAMPLE_LHS: &str = "start: S\nS -> a T d\nT -> b T c | b c\n";

    fn example() -> MonadicCfSystem {
        MonadicCfSystem::new(Alphabet::plain("a b c d").unwrap(), [(None, parse_grammar(EXAMPLE_LHS).unwrap())])
            .unwrap()
    }

    fn p(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn gamma_prime_and_tilde() {
        let g = parse_grammar(EXAMPLE_LHS).unwrap();
        assert!(build_gamma_prime(&g).unwrap().accepts(&p("$a $b $c $d")).unwrap());
        assert!(build_gamma_tilde(&g).unwrap().accepts(&p("~d ~c ~b ~a")).unwrap());
        let xy = parse_grammar("start: S\nS -> x y\n").unwrap();
        assert_eq!(build_gamma_prime(&xy).unwrap().enumerate(4), BTreeSet::from([p("$x $y")]));
        assert_eq!(build_gamma_tilde(&xy).unwrap().enumerate(4), BTreeSet::from([p("~y ~x")]));
        let eps = parse_grammar("start: S\nS -> x | _\n").unwrap();
        assert!(matches!(build_gamma_prime(&eps), Err(Error::Precondition(_))));
    }

    #[test]
    fn delta_language() {
        let d = build_delta(&Alphabet::plain("a b").unwrap());
        assert!(d.accepts(&p("$a $b #2 ~b ~a")).unwrap());
        assert!(d.accepts(&p("$eps #2 ~eps")).unwrap());
        assert!(!d.accepts(&p("$a #2 ~b")).unwrap());
        assert!(!d.accepts(&p("#2")).unwrap());
    }

    #[test]
    fn family_counts() {
        let t = build_theta(&example()).unwrap();
        let count = |f: ThetaFamily| t.family_productions(&f).count();
        assert_eq!(t.grammar().productions().len(), 56);
        assert_eq!(count(ThetaFamily::Delta), 10);
        assert_eq!(count(ThetaFamily::Insertion), 20);
        assert_eq!(count(ThetaFamily::GammaPrime(None)), 3);
        assert_eq!(count(ThetaFamily::GammaTilde(None)), 3);
        assert_eq!(count(ThetaFamily::GammaPrime(Some(Symbol::plain("a")))), 0);
        assert_eq!(t.grammar().start().name(), "O#0");
    }

    #[test]
    fn membership() {
        let t = build_theta(&example()).unwrap();
        let w = Word::from_chars;
        assert!(t.k_member(&w("abcd"), &w("")).unwrap());
        assert!(t.k_member(&w("ab"), &w("abcdab")).unwrap());
        assert!(!t.k_member(&w("ab"), &w("a")).unwrap());
        assert!(t.mtable_member(&w("a"), &w("bcd"), &w("")).unwrap());
        assert!(!t.mtable_member(&w("a"), &w("b"), &w("")).unwrap());
        assert!(t.mtable_word_member(&p("a #1 b c d #2")).unwrap());
        assert!(!t.mtable_word_member(&p("a b c d #2")).unwrap());
        assert!(t.derives(&p("$a"), &w("a")).unwrap());
        assert!(t.k_member(&w("ax"), &w("")).is_err());
    }

    #[test]
    fn text_round_trip() {
        let t = build_theta(&example()).unwrap();
        let text = t.to_text();
        assert!(text.contains("$eps -> _ ; end eps\n"), "{text}");
        let back = parse_theta(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_text(), text);
        let untagged = text.replacen(" ; delta", "", 1);
        assert!(parse_theta(&untagged).is_err());
    }
}
