//! Morphisms over small finite alphabets and their iterative fixed points.
//!
//! Symbols are stored as indices into an [`Alphabet`]; the alphabet keeps the
//! display character for each index, so `{0,1}`, `{+,-}` and letter alphabets
//! all go through the same engine.

use std::collections::HashSet;

use crate::error::{Error, Result};

pub type Symbol = u8;
pub type Word = Vec<Symbol>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::invalid("alphabet must be nonempty"));
        }
        if symbols.len() > Symbol::MAX as usize + 1 {
            return Err(Error::invalid("alphabet has more than 256 symbols"));
        }
        let mut seen = HashSet::new();
        for &c in &symbols {
            if !seen.insert(c) {
                return Err(Error::invalid(format!(
                    "duplicate symbol '{c}' in alphabet"
                )));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn binary() -> Self {
        Alphabet {
            symbols: vec!['0', '1'],
        }
    }

    /// `+` is symbol 0, `-` is symbol 1.
    pub fn signs() -> Self {
        Alphabet {
            symbols: vec!['+', '-'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, c: char) -> Option<Symbol> {
        self.symbols
            .iter()
            .position(|&s| s == c)
            .map(|i| i as Symbol)
    }

    pub fn char_of(&self, s: Symbol) -> Option<char> {
        self.symbols.get(s as usize).copied()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.chars()
            .enumerate()
            .map(|(i, c)| {
                self.index_of(c).ok_or_else(|| {
                    Error::invalid(format!(
                        "character '{c}' at position {i} is not in the alphabet"
                    ))
                })
            })
            .collect()
    }

    /// Renders a word; letters outside the alphabet show as `?`.
    pub fn render(&self, w: &[Symbol]) -> String {
        w.iter().map(|&s| self.char_of(s).unwrap_or('?')).collect()
    }

    pub fn check_word(&self, w: &[Symbol]) -> Result<()> {
        match w.iter().position(|&s| s as usize >= self.len()) {
            Some(position) => Err(Error::LetterOutsideAlphabet {
                letter: w[position] as usize,
                position,
                alphabet_len: self.len(),
            }),
            None => Ok(()),
        }
    }
}

/// A non-erasing morphism: every symbol maps to a nonempty word over the
/// same alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Alphabet,
    rules: Vec<Word>,
}

impl Morphism {
    /// `rules[i]` is the image of symbol `i`.
    pub fn new(alphabet: Alphabet, rules: Vec<Word>) -> Result<Self> {
        if rules.len() != alphabet.len() {
            return Err(Error::invalid(format!(
                "{} rules given for an alphabet of {} symbols",
                rules.len(),
                alphabet.len()
            )));
        }
        for (i, image) in rules.iter().enumerate() {
            let c = alphabet.symbols[i];
            if image.is_empty() {
                return Err(Error::invalid(format!("rule for '{c}' is erasing")));
            }
            alphabet.check_word(image)?;
        }
        Ok(Morphism { alphabet, rules })
    }

    /// Builds from `(symbol, image)` pairs; the alphabet is the list of
    /// left-hand sides in order.
    pub fn from_pairs(pairs: &[(char, &str)]) -> Result<Self> {
        let alphabet = Alphabet::new(pairs.iter().map(|&(c, _)| c).collect())?;
        let rules = pairs
            .iter()
            .map(|&(_, img)| alphabet.parse_word(img))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(alphabet, rules)
    }

    /// Parses `"0->01,1->10"`. The symbol is the single character before
    /// `->`, so `"-->-+"` maps `-` to `-+`.
    pub fn parse(literal: &str) -> Result<Self> {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for (index, rule) in literal.split(',').enumerate() {
            let bad = |reason: &str| Error::MorphismParse {
                index,
                rule: rule.to_string(),
                reason: reason.to_string(),
            };
            let rule_trim = rule.trim();
            let mut chars = rule_trim.chars();
            let sym = chars.next().ok_or_else(|| bad("empty rule"))?;
            let rest = chars.as_str();
            let image = rest
                .strip_prefix("->")
                .ok_or_else(|| bad("expected 'symbol->image'"))?;
            if image.is_empty() {
                return Err(bad("empty image"));
            }
            if lhs.contains(&sym) {
                return Err(bad("symbol defined twice"));
            }
            lhs.push(sym);
            rhs.push(image.to_string());
        }
        let alphabet = Alphabet::new(lhs.clone())?;
        let mut rules = Vec::with_capacity(rhs.len());
        for (index, image) in rhs.iter().enumerate() {
            let word = alphabet
                .parse_word(image)
                .map_err(|_| Error::MorphismParse {
                    index,
                    rule: format!("{}->{}", lhs[index], image),
                    reason: "image uses a symbol with no rule".to_string(),
                })?;
            rules.push(word);
        }
        Morphism::new(alphabet, rules)
    }

    /// `0 -> 01, 1 -> 10`.
    pub fn thue_morse() -> Self {
        Morphism {
            alphabet: Alphabet::binary(),
            rules: vec![vec![0, 1], vec![1, 0]],
        }
    }

    /// `+ -> +-, - -> -+` over [`Alphabet::signs`].
    pub fn thue_morse_signs() -> Self {
        Morphism {
            alphabet: Alphabet::signs(),
            rules: vec![vec![0, 1], vec![1, 0]],
        }
    }

    /// `- -> -+, + -> --` over [`Alphabet::signs`].
    pub fn period_doubling() -> Self {
        Morphism {
            alphabet: Alphabet::signs(),
            rules: vec![vec![1, 1], vec![1, 0]],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, s: Symbol) -> Option<&[Symbol]> {
        self.rules.get(s as usize).map(Vec::as_slice)
    }

    pub fn apply(&self, w: &[Symbol]) -> Result<Word> {
        self.alphabet.check_word(w)?;
        let len = w.iter().map(|&s| self.rules[s as usize].len()).sum();
        let mut out = Vec::with_capacity(len);
        for &s in w {
            out.extend_from_slice(&self.rules[s as usize]);
        }
        Ok(out)
    }

    pub fn is_prolongable(&self, s: Symbol) -> bool {
        match self.image(s) {
            Some(img) => img.len() >= 2 && img[0] == s,
            None => false,
        }
    }

    /// First `len` letters of the fixed point starting with `s`.
    pub fn fixed_point_prefix(&self, s: Symbol, len: usize) -> Result<Word> {
        if !self.is_prolongable(s) {
            let c = self.alphabet.char_of(s).unwrap_or('?');
            return Err(Error::NotProlongable(c));
        }
        if len == 0 {
            return Err(Error::invalid("prefix length must be positive"));
        }
        // The fixed point is rule(w[0]) rule(w[1]) ...; since w[0] = s and
        // |rule(s)| >= 2 the read cursor never catches up with the end.
        let mut w: Word = self.rules[s as usize].clone();
        let mut cursor = 1;
        while w.len() < len {
            let next = w[cursor];
            w.extend_from_slice(&self.rules[next as usize]);
            cursor += 1;
        }
        w.truncate(len);
        Ok(w)
    }
}
