//! Reduced words in the free group F₂ = ⟨a, b⟩.
//!
//! A [`Word`] is a list of syllables `g^e` with adjacent generators distinct.
//! Every constructor reduces, so a `Word` value is always freely reduced.

mod cyclic;
mod good;
mod parse;
mod report;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use cyclic::{cyclic_match, cyclic_reduce, rotate, CyclicMatch};
pub use good::{good_product, is_good, primitive_exponents, NotInCanonicalForm, PrimitiveExponents};
pub use parse::{parse_word, ParseError, ParseErrorKind};
pub use report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::A => Gen::B,
            Gen::B => Gen::A,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: i64,
}

impl Syllable {
    pub fn new(gen: Gen, exp: i64) -> Self {
        Syllable { gen, exp }
    }
}

// Order by generator, then |exp|, then negative before positive. This is the
// order the enumerators in downstream crates rely on.
impl Ord for Syllable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gen
            .cmp(&other.gen)
            .then(self.exp.unsigned_abs().cmp(&other.exp.unsigned_abs()))
            .then(self.exp.cmp(&other.exp))
    }
}

impl PartialOrd for Syllable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syl: Vec<Syllable>,
}

/// Push one syllable onto a reduced stack, merging or cancelling with the top.
fn push_reduced(stack: &mut Vec<Syllable>, s: Syllable) {
    if s.exp == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.gen == s.gen => {
            let e = top
                .exp
                .checked_add(s.exp)
                .expect("word exponent overflowed i64");
            if e == 0 {
                stack.pop();
            } else {
                top.exp = e;
            }
        }
        _ => stack.push(s),
    }
}

impl Word {
    pub fn identity() -> Word {
        Word { syl: Vec::new() }
    }

    pub fn a() -> Word {
        Word::power(Gen::A, 1)
    }

    pub fn b() -> Word {
        Word::power(Gen::B, 1)
    }

    pub fn power(gen: Gen, exp: i64) -> Word {
        Word::from_syllables([Syllable::new(gen, exp)])
    }

    /// Build a word from any syllable list, reducing as it goes.
    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(it: I) -> Word {
        let mut stack = Vec::new();
        for s in it {
            push_reduced(&mut stack, s);
        }
        Word { syl: stack }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syl
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syl.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syl.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.syl.is_empty()
    }

    /// Total number of letters, Σ|e|.
    pub fn letter_len(&self) -> u64 {
        self.syl.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syl: self
                .syl
                .iter()
                .rev()
                .map(|s| Syllable::new(s.gen, -s.exp))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut stack = self.syl.clone();
        for &s in &other.syl {
            push_reduced(&mut stack, s);
        }
        Word { syl: stack }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// w(x, y): every `a^e` becomes `x^e`, every `b^e` becomes `y^e`.
    pub fn substitute(&self, x: &Word, y: &Word) -> Word {
        let mut stack = Vec::new();
        for s in &self.syl {
            let img = match s.gen {
                Gen::A => x,
                Gen::B => y,
            };
            let piece = img.pow(s.exp);
            for &t in &piece.syl {
                push_reduced(&mut stack, t);
            }
        }
        Word { syl: stack }
    }

    pub fn exponents_of(&self, gen: Gen) -> Vec<i64> {
        self.syl.iter().filter(|s| s.gen == gen).map(|s| s.exp).collect()
    }

    /// Number of syllables on generator `gen`.
    pub fn count_of(&self, gen: Gen) -> usize {
        self.syl.iter().filter(|s| s.gen == gen).count()
    }

    /// Exponent sum on generator `gen` (the abelianization coordinate).
    pub fn exponent_sum(&self, gen: Gen) -> i64 {
        self.syl.iter().filter(|s| s.gen == gen).map(|s| s.exp).sum()
    }
}

pub fn multiply(u: &Word, v: &Word) -> Word {
    u.mul(v)
}

pub fn invert(w: &Word) -> Word {
    w.inverse()
}

pub fn substitute(w: &Word, x: &Word, y: &Word) -> Word {
    w.substitute(x, y)
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.syl
            .len()
            .cmp(&other.syl.len())
            .then_with(|| self.syl.cmp(&other.syl))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syl.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exp == 1 {
                write!(f, "{}", s.gen.letter())?;
            } else {
                write!(f, "{}^{}", s.gen.letter(), s.exp)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_word(&s).map_err(serde::de::Error::custom)
    }
}

/// Parse helper for tests and examples; panics on malformed input.
pub fn w(text: &str) -> Word {
    parse_word(text).unwrap_or_else(|e| panic!("bad word {text:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        assert!(w("").is_identity());
        assert!(w("aA").is_identity());
        let x = w("Abba");
        assert_eq!(x.len(), 3);
        assert_eq!(x.to_string(), "a^-1 b^2 a");
    }

    #[test]
    fn multiply_and_invert() {
        assert!(multiply(&w("a"), &w("A")).is_identity());
        assert_eq!(invert(&w("Abb")), w("BBa"));
        assert!(multiply(&w("Ab"), &w("Ba")).is_identity());
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(substitute(&w("ab"), &w("a"), &w("b")), w("ab"));
        assert_eq!(substitute(&w("aa"), &w("b"), &w("b")), w("bb"));
        let r = substitute(&w("Aba"), &w("Aba"), &w("b"));
        assert_eq!(r, w("ABa b Aba"));
        assert_eq!(r.len(), 7);
    }

    #[test]
    fn power_and_letter_len() {
        assert_eq!(w("ab").pow(-2), w("BABA"));
        assert_eq!(w("a^3 B^2").letter_len(), 5);
        assert_eq!(w("a^3 B^2 a").exponent_sum(Gen::A), 4);
    }

    #[test]
    fn ordering_is_length_first() {
        assert!(w("Aba") < w("Ab a b^-1 a"));
        assert!(w("Aba") < w("Ab^2a"));
        assert!(w("a") < w("Ba"));
    }
}
