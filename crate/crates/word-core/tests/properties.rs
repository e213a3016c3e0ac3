use proptest::prelude::*;
use word_core::*;

fn letters_of(w: &Word) -> Vec<(Gen, i64)> {
    let mut out = Vec::new();
    for s in w.syllables() {
        for _ in 0..s.exp.abs() {
            out.push((s.gen, s.exp.signum()));
        }
    }
    out
}

// Oracle: expand into letters, cancel the adjacent inverse pair picked by
// `pick` until none is left.
fn naive_reduce(mut letters: Vec<(Gen, i64)>, mut pick: impl FnMut(usize) -> usize) -> Vec<(Gen, i64)> {
    loop {
        let spots: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&i| letters[i].0 == letters[i + 1].0 && letters[i].1 == -letters[i + 1].1)
            .collect();
        if spots.is_empty() {
            return letters;
        }
        let i = spots[pick(spots.len()) % spots.len()];
        letters.drain(i..i + 2);
    }
}

fn syllable() -> impl Strategy<Value = Syllable> {
    (prop_oneof![Just(Gen::A), Just(Gen::B)], -3i64..=3).prop_map(|(g, e)| Syllable::new(g, e))
}

fn raw_list(max: usize) -> impl Strategy<Value = Vec<Syllable>> {
    prop::collection::vec(syllable(), 0..max)
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    raw_list(max).prop_map(Word::from_syllables)
}

fn good_word(max_a: usize, max_b: i64) -> impl Strategy<Value = Word> {
    (
        any::<bool>(),
        prop::collection::vec((1..=max_b, any::<bool>()), 0..max_a),
    )
        .prop_map(|(start_neg, bs)| {
            let mut sign = if start_neg { -1 } else { 1 };
            let mut syl = vec![Syllable::new(Gen::A, sign)];
            for (m, neg) in bs {
                syl.push(Syllable::new(Gen::B, if neg { -m } else { m }));
                sign = -sign;
                syl.push(Syllable::new(Gen::A, sign));
            }
            Word::from_syllables(syl)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reduction_is_confluent(list in raw_list(50), picks in prop::collection::vec(any::<usize>(), 200)) {
        let w = Word::from_syllables(list.clone());
        let letters: Vec<(Gen, i64)> = list
            .iter()
            .flat_map(|s| std::iter::repeat((s.gen, s.exp.signum())).take(s.exp.unsigned_abs() as usize))
            .collect();
        let first = naive_reduce(letters.clone(), |_| 0);
        let mut picks = picks.into_iter().cycle();
        let random = naive_reduce(letters, |_| picks.next().unwrap());
        prop_assert_eq!(&first, &letters_of(&w));
        prop_assert_eq!(&random, &letters_of(&w));
        for pair in w.syllables().windows(2) {
            prop_assert_ne!(pair[0].gen, pair[1].gen);
        }
    }

    #[test]
    fn group_laws(u in word(12), v in word(12), x in word(12)) {
        prop_assert_eq!(u.mul(&v).mul(&x), u.mul(&v.mul(&x)));
        prop_assert_eq!(u.mul(&v).inverse(), v.inverse().mul(&u.inverse()));
        prop_assert!(u.mul(&u.inverse()).is_identity());
    }

    #[test]
    fn substitution_is_a_homomorphism(u in word(8), v in word(8), x in word(4), y in word(4)) {
        let lhs = u.mul(&v).substitute(&x, &y);
        let rhs = u.substitute(&x, &y).mul(&v.substitute(&x, &y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn format_parse_round_trip(u in word(20)) {
        let text = format_word(&u);
        prop_assert_eq!(parse_word(&text).unwrap(), u);
    }

    #[test]
    fn primitive_exponents_round_trip(v0 in -3i64..=3, body in prop::collection::vec(-3i64..=3, 0..8)) {
        let w = PrimitiveExponents { leading_b_exponent: v0, body }.to_word();
        if let Ok(p) = primitive_exponents(&w) {
            prop_assert_eq!(p.to_word(), w);
        }
    }

    #[test]
    fn cyclic_reduce_is_conjugate(u in word(12), c in word(6)) {
        let conj = c.mul(&u).mul(&c.inverse());
        prop_assert!(cyclic_match(&u, &conj, false).is_some());
        let r = cyclic_reduce(&u);
        let s = r.syllables();
        if s.len() >= 2 {
            prop_assert_ne!(s[0].gen, s[s.len() - 1].gen);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn good_words_closed_under_good_product(w1 in good_word(8, 5), w2 in good_word(8, 5)) {
        prop_assert!(is_good(&w1) && is_good(&w2));
        prop_assert!(is_good(&good_product(&w1, &w2)));
    }
}
