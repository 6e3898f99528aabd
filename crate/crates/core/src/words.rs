//! Symbols, alphabets and finite/lasso words.

use crate::error::{AutError, Result};
use std::fmt;
use std::sync::Arc;

/// A single input symbol. The token is non-empty text without whitespace;
/// `eps` is reserved for ε-edges of forgetful automata and is not a symbol.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(token: &str) -> Result<Symbol> {
        if token.is_empty() || token.contains(char::is_whitespace) || token == "eps" {
            return Err(AutError::UnknownSymbol(token.to_string()));
        }
        Ok(Symbol(Arc::from(token)))
    }

    pub fn token(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Internal index of a symbol within its alphabet.
pub type SymId = usize;

/// An ordered, duplicate-free set of symbols. Iteration order is the declared
/// order and drives shortlex enumeration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    pub fn new(symbols: Vec<Symbol>) -> Result<Alphabet> {
        if symbols.is_empty() {
            return Err(AutError::BadHeader {
                line: 0,
                msg: "alphabet must not be empty".into(),
            });
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(AutError::DuplicateEdge {
                    state: 0,
                    symbol: s.token().to_string(),
                });
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn from_tokens(tokens: &[&str]) -> Result<Alphabet> {
        Alphabet::new(tokens.iter().map(|t| Symbol::new(t)).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, id: SymId) -> &Symbol {
        &self.symbols[id]
    }

    pub fn id_of(&self, token: &str) -> Option<SymId> {
        self.symbols.iter().position(|s| s.token() == token)
    }

    /// True when every token is a single character, enabling the compact
    /// word syntax `bbab`.
    pub fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.token().chars().count() == 1)
    }

    /// Converts a finite word into internal symbol ids.
    pub fn word_ids(&self, word: &FiniteWord) -> Result<Vec<SymId>> {
        word.letters()
            .iter()
            .map(|s| {
                self.id_of(s.token())
                    .ok_or_else(|| AutError::UnknownSymbol(s.token().to_string()))
            })
            .collect()
    }

    /// Renders an id-word in the alphabet's word syntax.
    pub fn render_ids(&self, ids: &[SymId]) -> String {
        if self.single_char() {
            ids.iter().map(|&i| self.symbols[i].token()).collect()
        } else {
            ids.iter()
                .map(|&i| self.symbols[i].token())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Parses a word in compact (single-char alphabets) or comma-separated
    /// syntax into symbol ids.
    pub fn parse_word(&self, text: &str) -> Result<Vec<SymId>> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if self.single_char() && !text.contains(',') {
            text.chars()
                .map(|c| {
                    self.id_of(&c.to_string())
                        .ok_or_else(|| AutError::UnknownSymbol(c.to_string()))
                })
                .collect()
        } else {
            text.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    self.id_of(t.trim())
                        .ok_or_else(|| AutError::UnknownSymbol(t.trim().to_string()))
                })
                .collect()
        }
    }

    pub fn word_from_ids(&self, ids: &[SymId]) -> FiniteWord {
        FiniteWord::new(ids.iter().map(|&i| self.symbols[i].clone()).collect())
    }
}

/// A finite word over some alphabet.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FiniteWord(Vec<Symbol>);

impl FiniteWord {
    pub fn new(letters: Vec<Symbol>) -> FiniteWord {
        FiniteWord(letters)
    }

    pub fn empty() -> FiniteWord {
        FiniteWord(Vec::new())
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A lasso word `u(v)^ω`: a finite spoke `u` and a non-empty period `v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LassoWord {
    pub spoke: FiniteWord,
    pub period: FiniteWord,
}

impl LassoWord {
    pub fn new(spoke: FiniteWord, period: FiniteWord) -> Result<LassoWord> {
        if period.is_empty() {
            return Err(AutError::BadHeader {
                line: 0,
                msg: "lasso period must be non-empty".into(),
            });
        }
        Ok(LassoWord { spoke, period })
    }

    /// Parses the CLI syntax `SPOKE;PERIOD` against an alphabet.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<LassoWord> {
        let (u, v) = text.split_once(';').ok_or_else(|| AutError::BadHeader {
            line: 0,
            msg: format!("word '{text}' must have the form SPOKE;PERIOD"),
        })?;
        let spoke = alphabet.word_from_ids(&alphabet.parse_word(u)?);
        let period = alphabet.word_from_ids(&alphabet.parse_word(v)?);
        LassoWord::new(spoke, period)
    }
}

/// Reduces a period to its primitive root: the shortest `v0` with `v = v0^k`.
pub fn primitive_root(period: &[SymId]) -> Vec<SymId> {
    let n = period.len();
    for len in 1..=n {
        if n % len == 0 && period.chunks(len).all(|c| c == &period[..len]) {
            return period[..len].to_vec();
        }
    }
    period.to_vec()
}

/// Canonicalizes a lasso representation: primitive period, then repeatedly
/// folds the spoke's last letter into the period while it matches the
/// period's last letter (rotating the period right by one each time).
pub fn canonicalize(spoke: &[SymId], period: &[SymId]) -> (Vec<SymId>, Vec<SymId>) {
    let mut v = primitive_root(period);
    let mut u = spoke.to_vec();
    while let Some(&last) = u.last() {
        if last == *v.last().expect("non-empty period") {
            u.pop();
            v.rotate_right(1);
        } else {
            break;
        }
    }
    (u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_tokens(&["a", "b"]).unwrap()
    }

    #[test]
    fn canonical_form_folds_spoke() {
        let al = ab();
        let u = al.parse_word("bb").unwrap();
        let v = al.parse_word("ab").unwrap();
        let (cu, cv) = canonicalize(&u, &v);
        assert_eq!(al.render_ids(&cu), "b");
        assert_eq!(al.render_ids(&cv), "ba");
    }

    #[test]
    fn primitive_root_of_square() {
        let al = ab();
        let v = al.parse_word("abab").unwrap();
        assert_eq!(al.render_ids(&primitive_root(&v)), "ab");
    }

    #[test]
    fn word_syntax() {
        let al = ab();
        assert_eq!(al.parse_word("bbab").unwrap(), vec![1, 1, 0, 1]);
        assert!(al.parse_word("bxb").is_err());

        let multi = Alphabet::from_tokens(&["rg", "rn", "ng", "nn"]).unwrap();
        assert_eq!(multi.parse_word("rn,nn,ng").unwrap(), vec![1, 3, 2]);
        assert_eq!(multi.render_ids(&[1, 3, 2]), "rn,nn,ng");
        assert!(Symbol::new("eps").is_err());
    }

    #[test]
    fn lasso_requires_period() {
        let al = ab();
        assert!(LassoWord::parse(&al, "ab;").is_err());
        let w = LassoWord::parse(&al, ";ab").unwrap();
        assert!(w.spoke.is_empty());
        assert_eq!(w.period.len(), 2);
    }
}
