//! Pairs with independently known answers, for tests and acceptance runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trace_algebra::{gamma, rat, Mat2, Rational, RealScalar};

/// Isometric circle of M = [[a, b], [c, d]]: centre −d/c, radius 1/|c|.
fn isometric_circle(m: &Mat2<Rational>) -> Option<(Rational, Rational)> {
    if m.c == rat(0, 1) {
        return None;
    }
    Some((-m.d.clone() / m.c.clone(), rat(1, 1) / m.c.abs()))
}

/// Ford ping-pong: if the isometric circles of F, F⁻¹, G, G⁻¹ bound four
/// pairwise disjoint closed discs, ⟨F, G⟩ is a Schottky group, hence free
/// and discrete.
pub fn ping_pong_certified(f: &Mat2<Rational>, g: &Mat2<Rational>) -> bool {
    let mut discs = Vec::new();
    for m in [f.clone(), f.inverse(), g.clone(), g.inverse()] {
        match isometric_circle(&m) {
            Some(d) => discs.push(d),
            None => return false,
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let (ci, ri) = &discs[i];
            let (cj, rj) = &discs[j];
            let dist = (ci.clone() - cj.clone()).abs();
            if dist <= ri.clone() + rj.clone() {
                return false;
            }
        }
    }
    true
}

fn below(mix: &mut ChaCha8Rng, n: i64) -> i64 {
    mix.gen_range(0..n)
}

/// Random Nielsen moves; the generated group does not change.
fn scramble(f: &Mat2<Rational>, g: &Mat2<Rational>, mix: &mut ChaCha8Rng, moves: usize) -> (Mat2<Rational>, Mat2<Rational>) {
    let (mut f, mut g) = (f.clone(), g.clone());
    for _ in 0..moves {
        match mix.gen_range(0..5) {
            0 => f = f.mul(&g),
            1 => g = g.mul(&f),
            2 => f = f.mul(&g.inverse()),
            3 => g = g.mul(&f.inverse()),
            _ => std::mem::swap(&mut f, &mut g),
        }
    }
    (f, g)
}

fn hyperbolic(m: &Mat2<Rational>) -> bool {
    m.trace().abs() > rat(2, 1)
}

fn translate(m: &Mat2<Rational>, t: &Rational) -> Mat2<Rational> {
    let tm = Mat2::new(rat(1, 1), t.clone(), rat(0, 1), rat(1, 1));
    tm.mul(m).mul(&tm.inverse())
}

/// A pair certified by [`ping_pong_certified`], given to the engine after
/// a few Nielsen moves.
#[derive(Debug, Clone)]
pub struct CertifiedPair {
    pub certified: (Mat2<Rational>, Mat2<Rational>),
    pub input: (Mat2<Rational>, Mat2<Rational>),
}

/// Schottky pairs with disjoint axes (γ > 0).
pub fn schottky_corpus(n: usize, seed: u64) -> Vec<CertifiedPair> {
    let mut mix = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < n && tries < 100 * n {
        tries += 1;
        let a = rat(below(&mut mix, 7) + 2, below(&mut mix, 3) + 1);
        let d = rat(below(&mut mix, 7) + 2, below(&mut mix, 3) + 1);
        // [[a, ad − 1], [1, d]]: circles of radius 1 at −d and a
        let f = Mat2::new(a.clone(), a.clone() * d.clone() - rat(1, 1), rat(1, 1), d);
        let k = rat(below(&mut mix, 4) + 1, 1);
        let a2 = rat(below(&mut mix, 9) + 2, 1);
        let d2 = rat(below(&mut mix, 9) + 2, 1);
        let m = Mat2::new(a2.clone(), (a2 * d2.clone() - rat(1, 1)) / k.clone(), k, d2);
        let shift = rat(below(&mut mix, 40) - 20, 1) + rat(1, below(&mut mix, 5) + 2);
        let g = translate(&m, &shift);
        if !ping_pong_certified(&f, &g) || !(gamma(&f, &g) > rat(0, 1)) {
            continue;
        }
        let moves = below(&mut mix, 6) as usize + 1;
        let input = scramble(&f, &g, &mut mix, moves);
        if !hyperbolic(&input.0) || !hyperbolic(&input.1) {
            continue;
        }
        out.push(CertifiedPair { certified: (f, g), input });
    }
    out
}

/// Non-elementary pairs with |β(F)| + |γ| < 1 for F = diag(11/10, 10/11),
/// scrambled by Nielsen moves.
pub fn jorgensen_corpus(n: usize, seed: u64) -> Vec<(Mat2<Rational>, Mat2<Rational>)> {
    let mut mix = ChaCha8Rng::seed_from_u64(seed);
    let f = Mat2::new(rat(11, 10), rat(0, 1), rat(0, 1), rat(10, 11));
    let bf = trace_algebra::beta(&f);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < n && tries < 100 * n {
        tries += 1;
        let gv = rat(below(&mut mix, 90) + 1, 100);
        if !(bf.clone() + gv.clone() < rat(1, 1)) {
            continue;
        }
        let a1 = rat(below(&mut mix, 5) + 2, 1);
        let c = -gv.clone() / bf.clone();
        let g = Mat2::new(a1.clone(), rat(1, 1), c.clone(), (rat(1, 1) + c) / a1);
        if !hyperbolic(&g) {
            continue;
        }
        let moves = below(&mut mix, 4) as usize;
        let input = scramble(&f, &g, &mut mix, moves);
        if !hyperbolic(&input.0) || !hyperbolic(&input.1) || gamma(&input.0, &input.1) != gv {
            continue;
        }
        out.push(input);
    }
    out
}

/// Hyperbolic pairs in the level-2 congruence subgroup, which is discrete
/// and torsion free (apart from −I).
pub fn modular_corpus(n: usize, seed: u64) -> Vec<(Mat2<Rational>, Mat2<Rational>)> {
    let mut mix = ChaCha8Rng::seed_from_u64(seed);
    let gens = [
        Mat2::<Rational>::from_i64(1, 2, 0, 1),
        Mat2::<Rational>::from_i64(1, 0, 2, 1),
        Mat2::<Rational>::from_i64(1, -2, 0, 1),
        Mat2::<Rational>::from_i64(1, 0, -2, 1),
    ];
    let random_elt = |mix: &mut ChaCha8Rng| {
        let mut m = Mat2::identity();
        for _ in 0..mix.gen_range(2..6) {
            m = m.mul(&gens[mix.gen_range(0..4)]);
        }
        m
    };
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < n && tries < 200 * n {
        tries += 1;
        let f = random_elt(&mut mix);
        let g = random_elt(&mut mix);
        if hyperbolic(&f) && hyperbolic(&g) && gamma(&f, &g) > rat(0, 1) {
            out.push((f, g));
        }
    }
    out
}
