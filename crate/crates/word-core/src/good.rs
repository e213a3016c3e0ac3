use serde::Serialize;
use thiserror::Error;

use crate::{Gen, Syllable, Word};

/// Every a-syllable is `a^{±1}`, the signs alternate, and the word starts and
/// ends with an a-syllable. `a` and `a⁻¹` are good; the identity is not.
pub fn is_good(w: &Word) -> bool {
    let s = w.syllables();
    let (Some(first), Some(last)) = (s.first(), s.last()) else {
        return false;
    };
    if first.gen != Gen::A || last.gen != Gen::A {
        return false;
    }
    let mut prev = 0i64;
    for x in s.iter().filter(|x| x.gen == Gen::A) {
        if x.exp.abs() != 1 || x.exp == prev {
            return false;
        }
        prev = x.exp;
    }
    true
}

/// w1 ∗ w2 = w1(w2, b).
pub fn good_product(w1: &Word, w2: &Word) -> Word {
    w1.substitute(w2, &Word::b())
}

/// The exponents v₀, v₁, …, v_w of `b^{v₀} a⁻¹ b^{v₁} ⋯ a⁻¹ b^{v_w}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimitiveExponents {
    pub leading_b_exponent: i64,
    pub body: Vec<i64>,
}

impl PrimitiveExponents {
    pub fn to_word(&self) -> Word {
        let mut syl = vec![Syllable::new(Gen::B, self.leading_b_exponent)];
        for &v in &self.body {
            syl.push(Syllable::new(Gen::A, -1));
            syl.push(Syllable::new(Gen::B, v));
        }
        Word::from_syllables(syl)
    }

    /// Number of a⁻¹ syllables.
    pub fn a_count(&self) -> usize {
        self.body.len()
    }

    pub fn b_sum(&self) -> i64 {
        self.leading_b_exponent + self.body.iter().sum::<i64>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syllable {index} is a^{exponent}, not a^-1")]
pub struct NotInCanonicalForm {
    pub index: usize,
    pub exponent: i64,
}

pub fn primitive_exponents(w: &Word) -> Result<PrimitiveExponents, NotInCanonicalForm> {
    let s = w.syllables();
    for (index, x) in s.iter().enumerate() {
        if x.gen == Gen::A && x.exp != -1 {
            return Err(NotInCanonicalForm { index, exponent: x.exp });
        }
    }
    let mut it = s.iter().peekable();
    let mut leading = 0;
    if let Some(x) = it.peek() {
        if x.gen == Gen::B {
            leading = x.exp;
            it.next();
        }
    }
    let mut body = Vec::new();
    while let Some(_a) = it.next() {
        match it.peek() {
            Some(x) if x.gen == Gen::B => {
                body.push(x.exp);
                it.next();
            }
            _ => body.push(0),
        }
    }
    Ok(PrimitiveExponents { leading_b_exponent: leading, body })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::w;

    #[test]
    fn goodness() {
        assert!(is_good(&w("Aba")));
        assert!(!is_good(&w("aba")));
        assert!(is_good(&w("aBAbba")));
        assert!(is_good(&w("a")));
        assert!(is_good(&w("A")));
        assert!(!is_good(&w("")));
        assert!(!is_good(&w("Ab")));
        assert!(!is_good(&w("a^2")));
    }

    #[test]
    fn good_products() {
        let x = w("Abab");
        assert_eq!(good_product(&w("a"), &x), x);
        assert_eq!(good_product(&w("abA"), &w("Aba")), w("Abab ABa"));
        assert_eq!(good_product(&w("Aba"), &w("Aba")), w("ABab Aba"));
    }

    #[test]
    fn exponents() {
        let p = primitive_exponents(&w("Abb")).unwrap();
        assert_eq!((p.leading_b_exponent, p.body.clone()), (0, vec![2]));
        let p = primitive_exponents(&w("AbAbb")).unwrap();
        assert_eq!(p.body, vec![1, 2]);
        assert!(primitive_exponents(&w("aab")).is_err());
        let p = primitive_exponents(&w("bA")).unwrap();
        assert_eq!((p.leading_b_exponent, p.body.clone()), (1, vec![0]));
        assert_eq!(p.to_word(), w("bA"));
    }
}
