//! The `verify-paper` battery. Each check reports how many cases it ran and
//! how many failed; `size` scales every range.

use discreteness_engine::corpus::{jorgensen_corpus, modular_corpus, schottky_corpus};
use discreteness_engine::{EngineConfig, Verdict};
use farey_combinatorics::{
    are_neighbors, cf_expand, farey_add, farey_word, gilman_keen_cases, lr_sequence, mediant, verify_gilman_keen,
    verify_gilman_keen_pair, verify_good_is_farey_in_conjugates, verify_prop1, verify_prop2, Fraction, GkConvention,
};
use killer_grid::{find_killer, good_word_family, ParamBox, PolyCache, SearchConfig};
use serde::Serialize;
use serde_json::json;
use trace_algebra::{
    beta, gamma, gm_value, good_gamma_polynomial_checked, interpolate_gm, rat, sample_pair, GmReading, Interval, Mat2,
    Rational,
};
use word_core::{is_good, Gen, Word};

use crate::conventions::{gm_determination, gm_calibration_pairs, Conventions};
use crate::table::grid;
use crate::Output;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for comparison; does not affect the exit status.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub cases: usize,
    pub failures: usize,
    pub detail: String,
    pub first_failure: Option<String>,
}

struct Tally {
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: 0, first: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn check(self, name: &'static str, detail: String) -> Check {
        let status = if self.failures == 0 && self.cases > 0 { Status::Pass } else { Status::Fail };
        Check { name, status, cases: self.cases, failures: self.failures, detail, first_failure: self.first }
    }
}

fn fractions(max_q: u64) -> Vec<Fraction> {
    let mut out = Vec::new();
    for q in 1..=max_q {
        for p in 0..=q {
            if let Ok(f) = Fraction::new(p, q) {
                out.push(f);
            }
        }
    }
    out
}

fn farey_constraints(size: usize) -> Check {
    let mut t = Tally::new();
    for f in fractions(10 * size as u64) {
        let w = farey_word(f);
        let a = w.exponents_of(Gen::A);
        let ok = a.len() as u64 == f.p() && a.iter().all(|&e| e == -1) && w.exponent_sum(Gen::B) == f.q() as i64;
        t.record(ok, || format!("{f}: {w}"));
    }
    t.check("farey_constraints", "a-syllables = p, a-exponents -1, b-exponent sum = q".into())
}

fn farey_addition(size: usize) -> Check {
    let mut t = Tally::new();
    let fs = fractions(5 * size as u64);
    for (i, f) in fs.iter().enumerate() {
        for g in &fs[i + 1..] {
            if !are_neighbors(*f, *g) {
                continue;
            }
            let (Ok(sum), Ok(m)) = (farey_add(*f, *g), mediant(*f, *g)) else { continue };
            t.record(sum == farey_word(m), || format!("{f} + {g}"));
        }
    }
    t.check("farey_addition", "W_f +_F W_g equals the word of the mediant".into())
}

fn lr_cf(size: usize) -> Check {
    let mut t = Tally::new();
    for f in fractions(20 * size as u64) {
        if f.p() == 0 {
            continue;
        }
        let ok = match (lr_sequence(f), cf_expand(f)) {
            (Ok(lr), Ok(cf)) => lr.counts() == cf.digits,
            _ => false,
        };
        t.record(ok, || f.to_string());
    }
    t.check("lr_cf_agreement", "Stern-Brocot run lengths equal continued fraction digits".into())
}

fn gilman_keen(size: usize, gk: &GkConvention) -> Check {
    let mut t = Tally::new();
    for s in gilman_keen_cases(size, size as u64) {
        let ok = matches!(verify_gilman_keen(&s, gk), Ok(r) if r.holds);
        t.record(ok, || s.to_string());
    }
    t.check(
        "gilman_keen",
        format!("offset {} trailing {} {}", gk.digit_offset, gk.trailing_fibonacci, gk.normalization.name()),
    )
}

fn prop1(size: usize, trailing: bool) -> Check {
    let all = gilman_keen_cases(size, size as u64);
    let mut t = Tally::new();
    let mut pair_ok = 0;
    for s1 in &all {
        for s2 in &all {
            if s1.counts.len() + s2.counts.len() > size + 1 {
                continue;
            }
            let Ok(r) = verify_prop1(s1, s2, trailing) else { continue };
            pair_ok += (r.inputs["pair_substitution_holds"] == "true") as usize;
            t.record(r.holds, || {
                format!("{s1} {s2}: W = {} but W2 * W1 = {}", r.witness_words["w"], r.witness_words["good_product"])
            });
        }
    }
    let n = t.cases;
    t.check("prop1_good_product", format!("W(s1 s2) = D2(C1, D1) holds in {pair_ok}/{n}"))
}

fn prop2(size: usize) -> Check {
    let mut t = Tally::new();
    let m = size as u64 + 1;
    for len in 1..=m as u32 {
        for code in 0..m.pow(len) {
            let v: Vec<u64> = (0..len).map(|i| code / m.pow(i) % m + 1).collect();
            let ok = matches!(verify_prop2(&v), Ok(r) if r.holds);
            t.record(ok, || format!("{v:?}"));
        }
    }
    t.check("prop2_farey_times_a", format!("exponent vectors of length and entries up to {m}"))
}

fn good_words_in_conjugates(size: usize) -> [Check; 2] {
    let words = good_word_family(2 * size + 1, 2);
    let mut literal = Tally::new();
    let mut swapped = Tally::new();
    for w in &words {
        let Ok(r) = verify_good_is_farey_in_conjugates(w) else { continue };
        literal.record(r.holds, || w.to_string());
        // rebuild from C = a^e b a^-e, D = b
        let eps = w.syllables()[0].exp;
        let c = Word::from_syllables([
            word_core::Syllable::new(Gen::A, eps),
            word_core::Syllable::new(Gen::B, 1),
            word_core::Syllable::new(Gen::A, -eps),
        ]);
        let mut back = r.witness_words["swapped_rewrite"].substitute(&c, &Word::b());
        if r.inputs["swapped_trailing_a"] == "true" {
            back = back.mul(&Word::power(Gen::A, eps));
        }
        swapped.record(back == *w, || w.to_string());
    }
    let mut lit = literal.check("good_word_farey_in_a_bab", "rewrite over C = a, D = b a b^-1".into());
    lit.status = if lit.failures == 0 { Status::Pass } else { Status::Info };
    [lit, swapped.check("good_word_in_swapped_conjugates", "rewrite over C = a^e b a^-e, D = b".into())]
}

fn sample_points(k: i64) -> (Rational, Rational) {
    (rat(k % 7 - 3, 1) + rat(1, k + 2), rat(k / 4 + 2, 1) + rat(1, 3))
}

fn alt_a1(g: &Rational, b: &Rational) -> Rational {
    // the other matrix has trace a1 + (1 + c)/a1 with c = -γ/β
    let one_c = rat(1, 1) - g / b;
    if one_c == rat(6, 1) {
        rat(5, 1)
    } else {
        rat(3, 1)
    }
}

fn gm_words() -> Vec<Word> {
    let fam = good_word_family(9, 2);
    let step = fam.len() / 10;
    (0..10).map(|i| fam[i * step].clone()).collect()
}

fn gm_independence(reading: GmReading) -> [Check; 2] {
    let mut t = Tally::new();
    let mut literal_dependent = 0;
    let words = gm_words();
    for w in &words {
        let mut dependent = false;
        for k in 0..20 {
            let (g, mu) = sample_points(k);
            let b = trace_algebra::beta_of_mu(&mu);
            let other = if reading == GmReading::GammaHG { GmReading::GammaFH } else { GmReading::GammaHG };
            for (r, lit) in [(reading, false), (other, true)] {
                let (f1, g1) = sample_pair(&g, &mu, &rat(2, 1), r);
                let (f2, g2) = sample_pair(&g, &mu, &alt_a1(&g, &b), r);
                let same = gm_value(w, &f1, &g1, r) == gm_value(w, &f2, &g2, r);
                if lit {
                    dependent |= !same;
                } else {
                    t.record(same, || format!("{w} at gamma {g}"));
                }
            }
        }
        literal_dependent += dependent as usize;
    }
    let n = words.len();
    let main = t.check("gm_independence", format!("reading {}; 10 words, 20 points each", reading.name()));
    let other = Check {
        name: "gm_independence_other_reading",
        status: Status::Info,
        cases: n,
        failures: literal_dependent,
        detail: "words whose value under the other reading depends on the varied trace".into(),
        first_failure: None,
    };
    [main, other]
}

fn interpolation(size: usize, reading: GmReading) -> Check {
    let mut t = Tally::new();
    for w in good_word_family(2 * size + 1, 2).iter().step_by(7).chain([&Word::a()]) {
        let ok = good_gamma_polynomial_checked(w, reading, 1).is_ok();
        t.record(ok, || w.to_string());
    }
    t.check("p_w_interpolation", "interpolation with held-out points agrees with the symbolic route".into())
}

fn composition(reading: GmReading) -> Check {
    let (rows, chosen) = gm_determination(&gm_calibration_pairs());
    let mut t = Tally::new();
    for r in &rows {
        t.record(r.holding == vec![reading], || format!("{} * {}: {:?}", r.w1, r.w2, r.holding));
    }
    t.check(
        "composition_identity",
        format!("determined reading {}", chosen.map(|c| c.name()).unwrap_or("none")),
    )
}

fn engine_corpus(size: usize, gk: &GkConvention) -> [Check; 3] {
    let cfg = EngineConfig::default();
    let n = 10 * size;
    let mut schottky = Tally::new();
    let mut gk_t = Tally::new();
    for c in schottky_corpus(n, 1) {
        let res = discreteness_engine::run(&c.input.0, &c.input.1, &cfg);
        let ok = matches!(&res, Ok((Verdict::Discrete { .. }, _)));
        schottky.record(ok, || format!("{:?}", res.as_ref().map(|r| r.0.name())));
        if let Ok((Verdict::Discrete { .. }, t)) = &res {
            if t.steps.is_empty() {
                continue;
            }
            let conv = GkConvention { trailing_fibonacci: t.trailing_fibonacci, ..*gk };
            let ok = matches!(verify_gilman_keen_pair(&t.f_sequence, &t.final_pair_words, &conv), Ok(r) if r.holds);
            gk_t.record(ok, || t.f_sequence.to_string());
        }
    }
    let mut jor = Tally::new();
    for (f, g) in jorgensen_corpus(n, 2) {
        let res = discreteness_engine::run(&f, &g, &cfg);
        jor.record(matches!(&res, Ok((Verdict::NotDiscrete { .. }, _))), || format!("{:?}", res.map(|r| r.0.name())));
    }
    [
        schottky.check("schottky_corpus_discrete", format!("{n} ping-pong certified pairs")),
        jor.check("jorgensen_corpus_not_discrete", format!("{n} Jørgensen-violating pairs")),
        gk_t.check("engine_gilman_keen", "F-sequence of each discrete run against its final pair".into()),
    ]
}

fn params(f: &Mat2<Rational>, g: &Mat2<Rational>) -> [(Rational, Rational); 2] {
    let gm = gamma(f, g);
    [(gm.clone(), beta(g)), (gm, beta(f))]
}

fn killer_soundness(size: usize) -> Check {
    let mut points = vec![(rat(1, 1), rat(0, 1))];
    for t in 1..=3 {
        points.push((rat(t * t, 1), rat(0, 1)));
    }
    for c in schottky_corpus(5 * size, 3) {
        points.extend(params(&c.input.0, &c.input.1));
    }
    for (f, g) in modular_corpus(5 * size, 4) {
        points.extend(params(&f, &g));
    }
    let cfg = SearchConfig::default();
    let cache = PolyCache::new(cfg.max_syllables, cfg.max_b_exponent);
    let r = rat(1, 64);
    let mut t = Tally::new();
    for (g, b) in &points {
        let boxes = [
            ParamBox::new(Interval::new(g - &r, g + &r), Interval::new(b - &r, b + &r)),
            ParamBox::new(Interval::new(g.clone(), g + &r), Interval::new(b.clone(), b + &r)),
        ];
        for bx in boxes {
            let (k, _) = find_killer(&bx, &cfg, &cache);
            t.record(k.is_none(), || format!("{bx} killed by {}", k.as_ref().map(|c| c.word.to_string()).unwrap_or_default()));
        }
    }
    t.check("killer_grid_soundness", format!("boxes around {} discrete parameter points", points.len()))
}

pub fn checks(size: usize, conv: &Conventions) -> Vec<Check> {
    let size = size.max(1);
    let gk = conv.gk();
    let mut out = vec![
        farey_constraints(size),
        farey_addition(size),
        lr_cf(size),
        gilman_keen(size, &gk),
        prop1(size, conv.trailing_fibonacci),
        prop2(size),
    ];
    out.extend(good_words_in_conjugates(size));
    out.extend(gm_independence(conv.gm_reading));
    out.push(interpolation(size, conv.gm_reading));
    out.push(composition(conv.gm_reading));
    out.extend(engine_corpus(size, &gk));
    out.push(killer_soundness(size));
    // interpolation under the other reading, for the record
    let wrong = if conv.gm_reading == GmReading::GammaHG { GmReading::GammaFH } else { GmReading::GammaHG };
    let fails = gm_words().iter().filter(|w| is_good(w) && interpolate_gm(w, wrong, 1).is_err()).count();
    out.push(Check {
        name: "p_w_other_reading",
        status: Status::Info,
        cases: 10,
        failures: fails,
        detail: format!("words with no polynomial under {}", wrong.name()),
        first_failure: None,
    });
    out
}

pub fn run(size: usize, conv: &Conventions) -> Output {
    let checks = checks(size, conv);
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![
                c.name.to_string(),
                format!("{:?}", c.status).to_lowercase(),
                c.cases.to_string(),
                c.failures.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    let mut text = grid(&["check", "status", "cases", "failures", "detail"], &rows);
    for c in checks.iter().filter(|c| c.status == Status::Fail) {
        if let Some(f) = &c.first_failure {
            text.push_str(&format!("first failure in {}: {f}\n", c.name));
        }
    }
    text.push_str(&format!("{passed} passed, {failed} failed\n"));
    let json = json!({"size": size, "conventions": conv, "checks": checks, "passed": passed, "failed": failed});
    Output { json, text, ok: failed == 0 }
}
