use word_core::{cyclic_reduce, rotate, Gen, Word};

use crate::fraction::{are_neighbors, mediant, Fraction};
use crate::FareyError;

/// The rotation of the cyclic reduction of `w` that starts with an
/// a-syllable and has the lexicographically smallest b-exponent sequence.
/// Words without a-syllables are returned cyclically reduced.
pub fn canonical_rotation(w: &Word) -> Word {
    let c = cyclic_reduce(w);
    let mut best: Option<(Vec<i64>, Word)> = None;
    for (k, s) in c.syllables().iter().enumerate() {
        if s.gen != Gen::A {
            continue;
        }
        let r = rotate(&c, k);
        let key = r.exponents_of(Gen::B);
        let better = match &best {
            None => true,
            Some((bk, bw)) => (&key, &r) < (bk, bw),
        };
        if better {
            best = Some((key, r));
        }
    }
    best.map(|(_, r)| r).unwrap_or(c)
}

pub fn farey_word(f: Fraction) -> Word {
    if f == Fraction::ZERO {
        return Word::b();
    }
    if f == Fraction::INFINITY {
        return Word::power(Gen::A, -1);
    }
    let (mut lo, mut lo_w) = (Fraction::ZERO, Word::b());
    let (mut hi, mut hi_w) = (Fraction::INFINITY, Word::power(Gen::A, -1));
    loop {
        let m = mediant(lo, hi).expect("descent keeps neighbours inside [0,1]");
        let m_w = canonical_rotation(&lo_w.mul(&hi_w));
        if m == f {
            return m_w;
        }
        if f < m {
            hi = m;
            hi_w = m_w;
        } else {
            lo = m;
            lo_w = m_w;
        }
    }
}

/// W_f +_F W_g for neighbours f, g: concatenate the smaller slope first and
/// rotate to canonical form.
pub fn farey_add(f: Fraction, g: Fraction) -> Result<Word, FareyError> {
    if !are_neighbors(f, g) {
        return Err(FareyError::NotNeighbors(f.to_string(), g.to_string()));
    }
    mediant(f, g)?;
    let (lo, hi) = if f < g { (f, g) } else { (g, f) };
    Ok(canonical_rotation(&farey_word(lo).mul(&farey_word(hi))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use word_core::w;

    fn fr(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    #[test]
    fn small_words() {
        assert_eq!(farey_word(fr("0/1")), w("b"));
        assert_eq!(farey_word(fr("1/1")), w("Ab"));
        assert_eq!(farey_word(fr("1/2")), w("Abb"));
        assert_eq!(farey_word(fr("2/3")), w("Ab Abb"));
        assert_eq!(farey_word(fr("2/3")).to_string(), "a^-1 b a^-1 b^2");
        assert_eq!(farey_word(Fraction::INFINITY), w("A"));
    }

    #[test]
    fn addition() {
        assert_eq!(farey_add(fr("0/1"), Fraction::INFINITY).unwrap(), farey_word(fr("1/1")));
        assert_eq!(farey_add(fr("1/2"), fr("1/1")).unwrap(), farey_word(fr("2/3")));
        assert_eq!(farey_add(fr("1/3"), fr("1/2")).unwrap(), farey_word(fr("2/5")));
        assert!(farey_add(fr("1/3"), fr("1/1")).is_err());
        assert!(farey_add(fr("1/1"), Fraction::INFINITY).is_err());
    }
}
