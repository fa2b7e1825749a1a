//! Symbols, alphabets and words.
//!
//! Every symbol carries a [`Flavor`] alongside its name, so the annotated
//! copies `$a` and `~a` of a letter `a` can never be confused with `a`
//! itself even though they share a name. The textual form of a symbol is
//!
//! | flavor   | text            |
//! |----------|-----------------|
//! | plain    | `a`             |
//! | dollar   | `$a` (`$eps`)   |
//! | tilde    | `~a` (`~eps`)   |
//! | marker   | `#1`, `#2`      |
//!
//! and a word is a whitespace-separated list of symbol tokens, with `_`
//! standing for the empty word.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Name used by the annotated copies of the empty word, `$eps` and `~eps`.
pub const EPS_NAME: &str = "eps";

/// Token denoting the empty word.
pub const EMPTY_TOKEN: &str = "_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Plain,
    Dollar,
    Tilde,
    Marker,
}

/// The two annotations a plain word can receive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Annotation {
    Dollar,
    Tilde,
}

impl From<Annotation> for Flavor {
    fn from(a: Annotation) -> Self {
        match a {
            Annotation::Dollar => Flavor::Dollar,
            Annotation::Tilde => Flavor::Tilde,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    name: Arc<str>,
    flavor: Flavor,
}

impl Symbol {
    fn new(name: &str, flavor: Flavor) -> Self {
        Symbol {
            name: Arc::from(name),
            flavor,
        }
    }

    /// A plain letter. Panics if `name` is empty or contains whitespace.
    pub fn plain(name: &str) -> Self {
        Self::try_plain(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_plain(name: &str) -> Result<Self> {
        check_name(name)?;
        Ok(Self::new(name, Flavor::Plain))
    }

    /// The annotation `$a` of the plain letter `a`.
    pub fn dollar(of: &Symbol) -> Self {
        Self::annotated(of, Annotation::Dollar)
    }

    /// The annotation `~a` of the plain letter `a`.
    pub fn tilde(of: &Symbol) -> Self {
        Self::annotated(of, Annotation::Tilde)
    }

    fn annotated(of: &Symbol, a: Annotation) -> Self {
        debug_assert!(of.is_plain(), "only plain letters are annotated");
        Symbol {
            name: of.name.clone(),
            flavor: a.into(),
        }
    }

    /// `$eps` or `~eps`, the one-letter annotation of the empty word.
    pub fn annotated_empty(a: Annotation) -> Self {
        Self::new(EPS_NAME, a.into())
    }

    pub fn dollar_empty() -> Self {
        Self::annotated_empty(Annotation::Dollar)
    }

    pub fn tilde_empty() -> Self {
        Self::annotated_empty(Annotation::Tilde)
    }

    /// The first multiplication-table marker `#1`.
    pub fn marker1() -> Self {
        Self::new("1", Flavor::Marker)
    }

    /// The second multiplication-table marker `#2`.
    pub fn marker2() -> Self {
        Self::new("2", Flavor::Marker)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_plain(&self) -> bool {
        self.flavor == Flavor::Plain
    }

    pub fn is_marker(&self) -> bool {
        self.flavor == Flavor::Marker
    }

    /// True for `$eps` and `~eps`.
    pub fn is_annotated_empty(&self) -> bool {
        matches!(self.flavor, Flavor::Dollar | Flavor::Tilde) && &*self.name == EPS_NAME
    }

    /// Same name, different flavor. Used when a plain grammar symbol is
    /// renamed.
    pub(crate) fn with_name(&self, name: &str) -> Self {
        Self::new(name, self.flavor)
    }

    /// Parses one symbol token. `#1`, `#2` are markers; `$x` and `~x` are
    /// annotations; `"x"` is a quoted plain symbol; anything else is plain.
    pub fn parse_token(token: &str) -> Result<Self> {
        if token.is_empty() {
            return Err(Error::Domain("empty symbol token".into()));
        }
        if token == EMPTY_TOKEN {
            return Err(Error::Domain("`_` denotes the empty word, not a symbol".into()));
        }
        match token {
            "#1" => return Ok(Self::marker1()),
            "#2" => return Ok(Self::marker2()),
            _ => {}
        }
        if let Some(rest) = token.strip_prefix('$') {
            check_name(rest)?;
            return Ok(Self::new(rest, Flavor::Dollar));
        }
        if let Some(rest) = token.strip_prefix('~') {
            check_name(rest)?;
            return Ok(Self::new(rest, Flavor::Tilde));
        }
        if let Some(inner) = token.strip_prefix('"') {
            let inner = inner
                .strip_suffix('"')
                .ok_or_else(|| Error::Domain(format!("unterminated quoted token `{token}`")))?;
            return Self::try_plain(inner);
        }
        if token.starts_with('#') {
            return Err(Error::Domain(format!(
                "`{token}` is not a marker; only #1 and #2 exist"
            )));
        }
        Self::try_plain(token)
    }

    /// True when the plain name would not read back as itself unquoted.
    fn needs_quotes(&self) -> bool {
        self.name.starts_with(['$', '~', '"', '#']) || &*self.name == EMPTY_TOKEN
    }

    /// Textual token with forced quoting of plain names, for grammar files
    /// where an unquoted uppercase token would read as a nonterminal.
    pub(crate) fn quoted_token(&self) -> String {
        if self.is_plain() {
            format!("\"{}\"", self.name)
        } else {
            self.to_string()
        }
    }
}

fn check_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::Domain("symbol names must be nonempty".into()));
    }
    if name.chars().any(|c| c.is_whitespace() || c.is_control()) {
        return Err(Error::Domain(format!(
            "symbol name `{name}` contains whitespace or control characters"
        )));
    }
    if name.contains('"') {
        return Err(Error::Domain(format!("symbol name `{name}` contains a quote")));
    }
    Ok(())
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flavor {
            Flavor::Plain if self.needs_quotes() => write!(f, "\"{}\"", self.name),
            Flavor::Plain => f.write_str(&self.name),
            Flavor::Dollar => write!(f, "${}", self.name),
            Flavor::Tilde => write!(f, "~{}", self.name),
            Flavor::Marker => write!(f, "#{}", self.name),
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite ordered set of symbols. Insertion order is the canonical order.
#[derive(Clone, Default)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an alphabet, rejecting duplicates.
    pub fn from_symbols(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let mut a = Alphabet::new();
        for s in symbols {
            if !a.insert(s.clone()) {
                return Err(Error::Domain(format!("duplicate symbol `{s}` in alphabet")));
            }
        }
        Ok(a)
    }

    /// Plain letters from a whitespace-separated list, e.g. `"a b c d"`.
    pub fn plain(names: &str) -> Result<Self> {
        Self::from_symbols(
            names
                .split_whitespace()
                .map(Symbol::try_plain)
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Inserts `s` unless already present; returns whether it was new.
    pub fn insert(&mut self, s: Symbol) -> bool {
        if self.index.contains_key(&s) {
            return false;
        }
        self.index.insert(s.clone(), self.symbols.len());
        self.symbols.push(s);
        true
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.index.contains_key(s)
    }

    pub fn position(&self, s: &Symbol) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.symbols.iter()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Union, keeping `self`'s order and appending new symbols of `other`.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut out = self.clone();
        for s in other {
            out.insert(s.clone());
        }
        out
    }

    pub fn is_subset(&self, other: &Alphabet) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// The annotated alphabet `$_A` or `~_A` (without the empty annotation).
    pub fn annotated(&self, a: Annotation) -> Alphabet {
        let mut out = Alphabet::new();
        for s in self {
            out.insert(Symbol::annotated(s, a));
        }
        out
    }

    /// Errors with [`Error::ForeignSymbol`] unless every letter of `w` is
    /// in this alphabet.
    pub fn check_word(&self, w: &Word, context: &'static str) -> Result<()> {
        match w.iter().find(|s| !self.contains(s)) {
            Some(s) => Err(Error::ForeignSymbol {
                symbol: s.clone(),
                context,
            }),
            None => Ok(()),
        }
    }

    /// All words over this alphabet of length at most `maxlen`, in shortlex
    /// order.
    pub fn words_up_to(&self, maxlen: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..maxlen {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for s in self {
                    let mut v = w.clone();
                    v.push(s.clone());
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.symbols).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.symbols {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a Alphabet {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.symbols.iter()
    }
}

impl FromIterator<Symbol> for Alphabet {
    /// Collects, silently dropping repeated symbols.
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        let mut a = Alphabet::new();
        for s in iter {
            a.insert(s);
        }
        a
    }
}

/// A finite, possibly empty, sequence of symbols.
///
/// Words are ordered shortlex: shorter words first, then lexicographically
/// by symbol.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Symbol>) -> Self {
        Word(letters)
    }

    /// Parses the token syntax: whitespace-separated symbols, `_` for ε.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Domain(
                "a word needs at least one token; write `_` for the empty word".into(),
            ));
        }
        if tokens == [EMPTY_TOKEN] {
            return Ok(Word::empty());
        }
        tokens
            .into_iter()
            .map(Symbol::parse_token)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Plain word with one letter per `char`, e.g. `Word::from_chars("abcd")`.
    pub fn from_chars(text: &str) -> Self {
        Word(text.chars().map(|c| Symbol::plain(&c.to_string())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn into_letters(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The factor `self[start..end]`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// `w^rev`.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    /// Letterwise annotation `$w` / `~w`. The empty word annotates to the
    /// single letter `$eps` / `~eps`.
    pub fn annotate(&self, a: Annotation) -> Result<Word> {
        if let Some(s) = self.0.iter().find(|s| !s.is_plain()) {
            return Err(Error::Domain(format!(
                "cannot annotate `{s}`: only plain letters are annotated"
            )));
        }
        if self.is_empty() {
            return Ok(Word(vec![Symbol::annotated_empty(a)]));
        }
        Ok(Word(self.0.iter().map(|s| Symbol::annotated(s, a)).collect()))
    }

    /// Number of occurrences of `s`.
    pub fn count(&self, s: &Symbol) -> usize {
        self.0.iter().filter(|x| *x == s).count()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(EMPTY_TOKEN);
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// An alphabet homomorphism, given by one image word per domain letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Word>,
}

impl Homomorphism {
    /// `images` must give exactly one image per domain letter, each over
    /// `codomain`.
    pub fn new(
        domain: Alphabet,
        codomain: Alphabet,
        images: impl IntoIterator<Item = (Symbol, Word)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<Word>> = vec![None; domain.len()];
        for (s, w) in images {
            let i = domain.position(&s).ok_or_else(|| Error::ForeignSymbol {
                symbol: s.clone(),
                context: "homomorphism domain",
            })?;
            codomain.check_word(&w, "homomorphism codomain")?;
            if slots[i].replace(w).is_some() {
                return Err(Error::Domain(format!("`{s}` has two images")));
            }
        }
        let images = slots
            .into_iter()
            .zip(domain.iter())
            .map(|(w, s)| w.ok_or_else(|| Error::Domain(format!("`{s}` has no image"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Homomorphism {
            domain,
            codomain,
            images,
        })
    }

    /// The identity on `alphabet`.
    pub fn identity(alphabet: &Alphabet) -> Self {
        Homomorphism {
            domain: alphabet.clone(),
            codomain: alphabet.clone(),
            images: alphabet.iter().map(|s| Word::new(vec![s.clone()])).collect(),
        }
    }

    /// The marker-erasing map over `A ∪ {#1, #2}`: `#1 ↦ ε`, `#2 ↦ #2`,
    /// `a ↦ a`.
    pub fn erase_first_marker(alphabet: &Alphabet) -> Self {
        let mut domain = alphabet.clone();
        domain.insert(Symbol::marker1());
        domain.insert(Symbol::marker2());
        let mut codomain = alphabet.clone();
        codomain.insert(Symbol::marker2());
        let images = domain
            .iter()
            .map(|s| {
                if *s == Symbol::marker1() {
                    Word::empty()
                } else {
                    Word::new(vec![s.clone()])
                }
            })
            .collect();
        Homomorphism {
            domain,
            codomain,
            images,
        }
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn image(&self, s: &Symbol) -> Option<&Word> {
        self.domain.position(s).map(|i| &self.images[i])
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for s in w {
            let img = self.image(s).ok_or_else(|| Error::ForeignSymbol {
                symbol: s.clone(),
                context: "homomorphism domain",
            })?;
            out.extend(img.iter().cloned());
        }
        Ok(Word(out))
    }
}
