use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use word_core::{good_product, is_good, CheckReport, Word};

use crate::fricke::{gm_polynomial_symbolic, GmReading};
use crate::mat2::{evaluate_word, gamma, Mat2};
use crate::poly::GammaBetaPoly;
use crate::scalar::{format_rational, rat, Rational};
use crate::TraceError;

/// One sample where two evaluations that should agree did not.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvidenceRow {
    pub check: String,
    pub gamma: String,
    pub beta: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub word: String,
    pub reading: GmReading,
    pub rows: Vec<EvidenceRow>,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word {:?} under {}", self.word, self.reading.name())?;
        writeln!(f, "{:<12} {:>10} {:>10} {:>16} {:>16}", "check", "gamma", "beta", "expected", "got")?;
        for r in self.rows.iter().take(12) {
            writeln!(f, "{:<12} {:>10} {:>10} {:>16} {:>16}", r.check, r.gamma, r.beta, r.expected, r.got)?;
        }
        if self.rows.len() > 12 {
            writeln!(f, "... {} more rows", self.rows.len() - 12)?;
        }
        Ok(())
    }
}

/// A pair with the given γ and β, where β belongs to the generator the reading
/// keeps fixed. The other generator is [[a1, 1], [c, (1+c)/a1]], whose trace
/// moves with a1 while (γ, β) stay put.
pub fn sample_pair(gamma_v: &Rational, mu: &Rational, a1: &Rational, reading: GmReading) -> (Mat2<Rational>, Mat2<Rational>) {
    let one = Rational::one();
    let d = mu.clone() - one.clone() / mu.clone();
    let beta = d.clone() * d;
    let diag = Mat2::new(mu.clone(), Rational::zero(), Rational::zero(), one.clone() / mu.clone());
    let c = -gamma_v.clone() / beta;
    let other = Mat2::new(a1.clone(), one.clone(), c.clone(), (one + c) / a1.clone());
    match reading {
        GmReading::GammaHG => (other, diag),
        GmReading::GammaFH => (diag, other),
    }
}

/// β of μ, the diagonal entry used by [`sample_pair`].
pub fn beta_of_mu(mu: &Rational) -> Rational {
    let d = mu.clone() - Rational::one() / mu.clone();
    d.clone() * d
}

/// The value the reading assigns to w at the pair (F, G).
pub fn gm_value(w: &Word, f: &Mat2<Rational>, g: &Mat2<Rational>, reading: GmReading) -> Rational {
    let h = evaluate_word(w, f, g).expect("exact arithmetic does not overflow");
    match reading {
        GmReading::GammaHG => gamma(&h, g),
        GmReading::GammaFH => gamma(f, &h),
    }
}

/// (deg γ, deg β) bounds for P_W, from the letter length ℓ: ⌊(2ℓ+2)/3⌋ and ℓ+1.
pub fn degree_bounds(w: &Word, margin: u32) -> (u32, u32) {
    let l = w.letter_len() as u32;
    ((2 * l + 2) / 3 + margin, l + 1 + margin)
}

/// Monomial coefficients of the interpolant through (nodes, vals).
fn interp_1d(nodes: &[Rational], vals: &[Rational]) -> Vec<Rational> {
    let n = nodes.len();
    let mut dd = vals.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (nodes[i].clone() - nodes[i - k].clone());
        }
    }
    // Horner expansion of the Newton form.
    let mut coef = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        for i in (1..n).rev() {
            coef[i] = coef[i - 1].clone() - nodes[k].clone() * coef[i].clone();
        }
        coef[0] = dd[k].clone() - nodes[k].clone() * coef[0].clone();
    }
    coef
}

fn alt_a1(gamma_v: &Rational, beta: &Rational) -> Rational {
    let c = -gamma_v.clone() / beta.clone();
    // trace coincides with a1 = 2 exactly when 1 + c = 2·a1
    if Rational::one() + c == rat(6, 1) {
        rat(5, 1)
    } else {
        rat(3, 1)
    }
}

/// P_W by exact interpolation, with trace-independence and held-out checks.
pub fn interpolate_gm(w: &Word, reading: GmReading, margin: u32) -> Result<GammaBetaPoly, TraceError> {
    let (dg, db) = degree_bounds(w, margin);
    let gnodes: Vec<Rational> = (0..=dg as i64).map(|i| rat(i - (dg as i64) / 2, 1)).collect();
    let mus: Vec<Rational> = (0..=db as i64).map(|j| rat(j + 2, 1)).collect();
    let bnodes: Vec<Rational> = mus.iter().map(beta_of_mu).collect();
    let two = rat(2, 1);
    let mut rows = Vec::new();
    let mut grid = vec![vec![Rational::zero(); bnodes.len()]; gnodes.len()];
    for (i, g) in gnodes.iter().enumerate() {
        for (j, mu) in mus.iter().enumerate() {
            let (f1, g1) = sample_pair(g, mu, &two, reading);
            let v1 = gm_value(w, &f1, &g1, reading);
            let (f2, g2) = sample_pair(g, mu, &alt_a1(g, &bnodes[j]), reading);
            let v2 = gm_value(w, &f2, &g2, reading);
            if v1 != v2 {
                rows.push(EvidenceRow {
                    check: "trace-indep".into(),
                    gamma: format_rational(g),
                    beta: format_rational(&bnodes[j]),
                    expected: format_rational(&v1),
                    got: format_rational(&v2),
                });
            }
            grid[i][j] = v1;
        }
    }
    let evidence = |rows| TraceError::InterpolationInconsistent {
        evidence: Box::new(Evidence { word: w.to_string(), reading, rows }),
    };
    if !rows.is_empty() {
        return Err(evidence(rows));
    }
    // γ first, then β for each γ-coefficient.
    let by_col: Vec<Vec<Rational>> = (0..bnodes.len())
        .map(|j| {
            let col: Vec<Rational> = grid.iter().map(|r| r[j].clone()).collect();
            interp_1d(&gnodes, &col)
        })
        .collect();
    let mut poly = GammaBetaPoly::zero();
    for gi in 0..gnodes.len() {
        let vals: Vec<Rational> = by_col.iter().map(|c| c[gi].clone()).collect();
        let cb = interp_1d(&bnodes, &vals);
        for (bj, cf) in cb.into_iter().enumerate() {
            if cf.is_zero() {
                continue;
            }
            if !cf.is_integer() {
                rows.push(EvidenceRow {
                    check: "integrality".into(),
                    gamma: format!("gamma^{gi}"),
                    beta: format!("beta^{bj}"),
                    expected: "integer".into(),
                    got: format_rational(&cf),
                });
                continue;
            }
            poly.add_term([gi as u32, bj as u32], cf.to_integer());
        }
    }
    if !rows.is_empty() {
        return Err(evidence(rows));
    }
    let half = rat(1, 2);
    for i in 0..6 {
        for j in 0..6 {
            let g = rat(i - 3, 1) + half.clone();
            let mu = rat(j + 2, 1) + half.clone();
            let b = beta_of_mu(&mu);
            let (f, gg) = sample_pair(&g, &mu, &alt_a1(&g, &b), reading);
            let direct = gm_value(w, &f, &gg, reading);
            let fit = poly.horner(&g, &b);
            if direct != fit {
                rows.push(EvidenceRow {
                    check: "held-out".into(),
                    gamma: format_rational(&g),
                    beta: format_rational(&b),
                    expected: format_rational(&direct),
                    got: format_rational(&fit),
                });
            }
        }
    }
    if !rows.is_empty() {
        return Err(evidence(rows));
    }
    Ok(poly)
}

/// The Gehring–Martin polynomial of a good word.
pub fn good_gamma_polynomial(w: &Word, reading: GmReading, margin: u32) -> Result<GammaBetaPoly, TraceError> {
    if !is_good(w) {
        return Err(TraceError::NotGood(w.to_string()));
    }
    interpolate_gm(w, reading, margin)
}

/// Both routes to P_W; they must agree.
pub fn good_gamma_polynomial_checked(w: &Word, reading: GmReading, margin: u32) -> Result<GammaBetaPoly, TraceError> {
    let p = good_gamma_polynomial(w, reading, margin)?;
    let s = gm_polynomial_symbolic(w, reading)?;
    if p != s {
        return Err(TraceError::RoutesDisagree { word: w.to_string(), interpolated: p.to_string(), symbolic: s.to_string() });
    }
    Ok(p)
}

/// P_{W1 * W2} against P_{W1}(P_{W2}(γ, β), β), symbolically and at 50 points.
pub fn check_composition(w1: &Word, w2: &Word, reading: GmReading) -> Result<CheckReport, TraceError> {
    let prod = good_product(w1, w2);
    let p1 = good_gamma_polynomial(w1, reading, 1)?;
    let p2 = good_gamma_polynomial(w2, reading, 1)?;
    let lhs = good_gamma_polynomial(&prod, reading, 1)?;
    let rhs = p1.compose(&p2);
    let symbolic = lhs == rhs;
    let mut mismatches = 0;
    for k in 0..50i64 {
        let g = rat(k % 10 - 5, 1) + rat(1, k / 10 + 3);
        let mu = rat(k / 10 + 2, 1) + rat(1, 7);
        let (f, gg) = sample_pair(&g, &mu, &rat(2, 1), reading);
        let direct = gm_value(&prod, &f, &gg, reading);
        if direct != rhs.horner(&g, &beta_of_mu(&mu)) {
            mismatches += 1;
        }
    }
    let mut report = CheckReport::new("composition")
        .input("reading", reading.name())
        .input("lhs", lhs.to_string())
        .input("rhs", rhs.to_string())
        .input("symbolic_equal", symbolic.to_string())
        .input("pointwise_mismatches", mismatches.to_string())
        .witness("w1", w1)
        .witness("w2", w2)
        .witness("product", &prod);
    report.holds = symbolic && mismatches == 0;
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct ReadingRow {
    pub reading: GmReading,
    pub words: usize,
    pub polynomial_ok: usize,
    pub pairs: usize,
    pub composition_ok: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReadingDetermination {
    pub rows: Vec<ReadingRow>,
    pub chosen: Option<GmReading>,
}

/// Try each reading on the words (polynomial existence) and on all ordered
/// pairs (composition); the chosen reading is the first that passes all.
pub fn determine_gm_reading(words: &[Word]) -> ReadingDetermination {
    let mut rows = Vec::new();
    for reading in GmReading::ALL {
        let mut row = ReadingRow { reading, words: words.len(), polynomial_ok: 0, pairs: 0, composition_ok: 0, first_failure: None };
        for w in words {
            match good_gamma_polynomial(w, reading, 1) {
                Ok(_) => row.polynomial_ok += 1,
                Err(_) => {
                    row.first_failure.get_or_insert_with(|| format!("polynomial for {w}"));
                }
            }
        }
        for w1 in words {
            for w2 in words {
                row.pairs += 1;
                match check_composition(w1, w2, reading) {
                    Ok(r) if r.holds => row.composition_ok += 1,
                    _ => {
                        row.first_failure.get_or_insert_with(|| format!("composition ({w1}) * ({w2})"));
                    }
                }
            }
        }
        rows.push(row);
    }
    let chosen = rows
        .iter()
        .find(|r| r.polynomial_ok == r.words && r.composition_ok == r.pairs)
        .map(|r| r.reading);
    ReadingDetermination { rows, chosen }
}

#[cfg(test)]
mod tests {
    use super::*;
    use word_core::w;

    #[test]
    fn newton_to_monomial() {
        let nodes: Vec<Rational> = (0..4).map(|i| rat(i, 1)).collect();
        let vals: Vec<Rational> = nodes.iter().map(|t| t.clone() * t.clone() * t.clone() - rat(2, 1) * t.clone() + rat(1, 1)).collect();
        assert_eq!(interp_1d(&nodes, &vals), vec![rat(1, 1), rat(-2, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn sampler_hits_parameters() {
        for reading in GmReading::ALL {
            let (f, g) = sample_pair(&rat(-3, 2), &rat(5, 2), &rat(2, 1), reading);
            assert_eq!(gamma(&f, &g), rat(-3, 2));
            let fixed = if reading == GmReading::GammaHG { &g } else { &f };
            assert_eq!(crate::mat2::beta(fixed), beta_of_mu(&rat(5, 2)));
        }
    }

    #[test]
    fn small_polynomials() {
        let g = GammaBetaPoly::var(0);
        let b = GammaBetaPoly::var(1);
        assert_eq!(good_gamma_polynomial(&w("a"), GmReading::GammaHG, 1).unwrap(), g);
        assert!(good_gamma_polynomial(&w("a"), GmReading::GammaFH, 1).unwrap().is_zero());
        assert_eq!(good_gamma_polynomial(&w("Aba"), GmReading::GammaFH, 1).unwrap(), g);
        assert_eq!(good_gamma_polynomial(&w("Aba"), GmReading::GammaHG, 1).unwrap(), g.mul(&g.sub(&b)));
        assert!(matches!(good_gamma_polynomial(&w("ab"), GmReading::GammaHG, 1), Err(TraceError::NotGood(_))));
    }
}
