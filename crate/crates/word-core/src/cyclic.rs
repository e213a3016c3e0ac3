use serde::Serialize;

use crate::{Syllable, Word};

/// Conjugate `w` to a cyclically reduced word: first and last syllables end
/// up on different generators (or the word has at most one syllable).
pub fn cyclic_reduce(w: &Word) -> Word {
    let mut syl: Vec<Syllable> = w.syllables().to_vec();
    let mut start = 0;
    while syl.len() - start >= 2 && syl[start].gen == syl[syl.len() - 1].gen {
        let last = syl.pop().unwrap();
        let e = syl[start].exp + last.exp;
        if e == 0 {
            start += 1;
        } else {
            syl[start].exp = e;
        }
    }
    Word::from_syllables(syl.drain(start..))
}

/// Rotate a cyclically reduced word left by `k` syllables.
pub fn rotate(w: &Word, k: usize) -> Word {
    let s = w.syllables();
    if s.is_empty() {
        return w.clone();
    }
    let k = k % s.len();
    Word::from_syllables(s[k..].iter().chain(s[..k].iter()).copied())
}

/// How one word was carried onto another: optionally invert, cyclically
/// reduce, then rotate left by `rotation` syllables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CyclicMatch {
    pub inverted: bool,
    pub rotation: usize,
}

/// Decide whether `u` and `v` are conjugate (or, with `allow_inverse`,
/// whether `v` is conjugate to `u` or to `u⁻¹`).
pub fn cyclic_match(u: &Word, v: &Word, allow_inverse: bool) -> Option<CyclicMatch> {
    let cv = cyclic_reduce(v);
    let cu = cyclic_reduce(u);
    let candidates: &[bool] = if allow_inverse { &[false, true] } else { &[false] };
    for &inverted in candidates {
        let x = if inverted { cu.inverse() } else { cu.clone() };
        if x.len() != cv.len() {
            continue;
        }
        if x.is_identity() {
            return Some(CyclicMatch { inverted, rotation: 0 });
        }
        for k in 0..x.len() {
            if rotate(&x, k) == cv {
                return Some(CyclicMatch { inverted, rotation: k });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::w;

    #[test]
    fn reduce_merges_ends() {
        assert_eq!(cyclic_reduce(&w("aaBA")), w("aB"));
        assert_eq!(cyclic_reduce(&w("abA")), w("b"));
        assert_eq!(cyclic_reduce(&w("b a^-1 b")), w("b^2 a^-1"));
        assert!(cyclic_reduce(&w("abAB")).len() == 4);
    }

    #[test]
    fn matches() {
        let m = cyclic_match(&w("Ab Abb"), &w("bAbA b"), false).unwrap();
        assert!(!m.inverted);
        assert!(cyclic_match(&w("b"), &w("B"), false).is_none());
        let m = cyclic_match(&w("b"), &w("B"), true).unwrap();
        assert!(m.inverted);
        assert!(cyclic_match(&w("ab"), &w("aB"), true).is_none());
    }
}
