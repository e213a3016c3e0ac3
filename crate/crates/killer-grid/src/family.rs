use word_core::{Gen, Syllable, Word};

/// Good words with at least one b-syllable, at most `max_syllables`
/// syllables and |b-exponents| ≤ `max_b_exponent`, in `Word` order
/// (syllable length, then syllables lexicographically).
pub fn good_word_family(max_syllables: usize, max_b_exponent: i64) -> Vec<Word> {
    let mut out = Vec::new();
    let bs: Vec<i64> = (1..=max_b_exponent).flat_map(|e| [e, -e]).collect();
    let mut k = 1;
    while 2 * k + 1 <= max_syllables {
        let total = bs.len().pow(k as u32);
        for start in [1i64, -1] {
            for code in 0..total {
                let mut syl = vec![Syllable::new(Gen::A, start)];
                let mut sign = start;
                let mut c = code;
                for _ in 0..k {
                    syl.push(Syllable::new(Gen::B, bs[c % bs.len()]));
                    c /= bs.len();
                    sign = -sign;
                    syl.push(Syllable::new(Gen::A, sign));
                }
                out.push(Word::from_syllables(syl));
            }
        }
        k += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use word_core::{is_good, w};

    #[test]
    fn sizes_and_order() {
        let fam = good_word_family(9, 2);
        assert_eq!(fam.len(), 680);
        assert!(fam.iter().all(is_good));
        assert!(fam.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(fam[0], w("A B a"));
        assert_eq!(good_word_family(3, 1).len(), 4);
        assert!(good_word_family(2, 2).is_empty());
    }
}
