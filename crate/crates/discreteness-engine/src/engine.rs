use std::fmt::Display;

use farey_combinatorics::{fseq_from_steps, FSequence, StepKind};
use serde::Serialize;
use trace_algebra::{beta, gamma, geodesic_length, Mat2, RealScalar};
use word_core::Word;

use crate::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EngineConfig {
    pub max_steps: usize,
    /// Elliptic elements of order ≤ q_max are treated as torsion.
    pub q_max: u32,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_steps: 10_000, q_max: 64 }
    }
}

/// Current generators together with their words in the normalized start pair.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorPair<S> {
    pub f: Mat2<S>,
    pub g: Mat2<S>,
    pub wf: Word,
    pub wg: Word,
}

/// Moves applied to the input pair to reach the normalized start pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub swapped: bool,
    pub negated_f: bool,
    pub negated_g: bool,
    pub inverted_g: bool,
    /// Normalized generators as words in the input pair.
    pub start_words: (Word, Word),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepRecord {
    pub kind: StepKind,
    /// G was replaced by G⁻¹ before the step so that |tr F⁻¹G| ≤ |tr FG|.
    pub inverted_g: bool,
    /// (|tr F|, |tr G|, |tr F⁻¹G|)
    pub traces_before: [f64; 3],
    pub traces_after: [f64; 3],
    /// Syllable lengths of (F, G) as words.
    pub lengths_before: [usize; 2],
    pub lengths_after: [usize; 2],
    /// max(|tr F|, |tr G|) strictly decreased, compared in the scalar type.
    pub decreased: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmTrace {
    pub normalization: Normalization,
    pub steps: Vec<StepRecord>,
    pub f_sequence: FSequence,
    /// Whether the last step taken was Fibonacci.
    pub trailing_fibonacci: bool,
    /// G was inverted after the last step, while checking for a further one.
    pub final_inverted_g: bool,
    pub final_pair_words: (Word, Word),
}

impl AlgorithmTrace {
    pub fn kinds(&self) -> Vec<StepKind> {
        self.steps.iter().map(|s| s.kind).collect()
    }
}

/// Words are in the input generators, `a` = F and `b` = G.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// |β(gen)| + |γ| < 1 for a generator of a non-elementary pair.
    Jorgensen { generator: Word, beta: String, gamma: String, sum: String },
    /// An elliptic element whose trace is not 2cos(πp/q) for any q ≤ q_max.
    IrrationalElliptic { word: Word, trace: String, q_max: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Discrete { shortest_geodesics: [f64; 3] },
    NotDiscrete { certificate: Certificate },
    Inconclusive { reason: String, steps_used: usize },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Discrete { .. } => "discrete",
            Verdict::NotDiscrete { .. } => "not_discrete",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepStop<S> {
    NoImprovingStep,
    EllipticEncountered { trace: S, word: Word },
    ParabolicEncountered { word: Word },
}

fn two<S: RealScalar>() -> S {
    S::from_i64(2)
}

fn abs_trace<S: RealScalar>(m: &Mat2<S>) -> S {
    m.trace().abs()
}

fn is_hyperbolic<S: RealScalar>(m: &Mat2<S>) -> bool {
    abs_trace(m) > two()
}

fn positive<S: RealScalar>(m: Mat2<S>) -> (Mat2<S>, bool) {
    if m.trace() < S::zero() {
        (m.neg(), true)
    } else {
        (m, false)
    }
}

fn traces<S: RealScalar>(p: &GeneratorPair<S>) -> [f64; 3] {
    [
        abs_trace(&p.f).to_f64(),
        abs_trace(&p.g).to_f64(),
        abs_trace(&p.f.inverse().mul(&p.g)).to_f64(),
    ]
}

// G ↦ G⁻¹ when that makes F⁻¹G the smaller of the two products.
fn orient<S: RealScalar>(p: &mut GeneratorPair<S>) -> bool {
    let down = abs_trace(&p.f.inverse().mul(&p.g));
    let up = abs_trace(&p.f.mul(&p.g));
    if down > up {
        p.g = p.g.inverse();
        p.wg = p.wg.inverse();
        true
    } else {
        false
    }
}

/// Swap so |tr F| ≥ |tr G|, make both traces positive, then orient G.
pub fn normalize_pair<S: RealScalar>(f: &Mat2<S>, g: &Mat2<S>) -> Result<(GeneratorPair<S>, Normalization), EngineError> {
    if !is_hyperbolic(f) || !is_hyperbolic(g) {
        return Err(EngineError::NotHyperbolicInput(format!(
            "traces {} and {}",
            f.trace().to_f64(),
            g.trace().to_f64()
        )));
    }
    let swapped = abs_trace(g) > abs_trace(f);
    let (f, g, wf, wg) = if swapped {
        (g.clone(), f.clone(), Word::b(), Word::a())
    } else {
        (f.clone(), g.clone(), Word::a(), Word::b())
    };
    let (f, negated_f) = positive(f);
    let (g, negated_g) = positive(g);
    let mut p = GeneratorPair { f, g, wf, wg };
    let inverted_g = orient(&mut p);
    let norm = Normalization { swapped, negated_f, negated_g, inverted_g, start_words: (p.wf.clone(), p.wg.clone()) };
    Ok((GeneratorPair { f: p.f, g: p.g, wf: Word::a(), wg: Word::b() }, norm))
}

/// One replacement on an oriented pair.
///
/// With H = F⁻¹G: Linear gives (H⁻¹, G) when |tr H| ≥ |tr G|, Fibonacci gives
/// (G⁻¹, H) otherwise; either way the result stays trace-ordered.
pub fn step<S: RealScalar>(p: &GeneratorPair<S>) -> Result<(GeneratorPair<S>, StepKind), StepStop<S>> {
    let h = p.f.inverse().mul(&p.g);
    let wh = p.wf.inverse().mul(&p.wg);
    let th = abs_trace(&h);
    if th >= abs_trace(&p.f) {
        return Err(StepStop::NoImprovingStep);
    }
    if th < two() {
        return Err(StepStop::EllipticEncountered { trace: h.trace(), word: wh });
    }
    if th == two() {
        return Err(StepStop::ParabolicEncountered { word: wh });
    }
    let (next, kind) = if th >= abs_trace(&p.g) {
        (GeneratorPair { f: h.inverse(), g: p.g.clone(), wf: wh.inverse(), wg: p.wg.clone() }, StepKind::Linear)
    } else {
        (GeneratorPair { f: p.g.inverse(), g: h, wf: p.wg.inverse(), wg: wh }, StepKind::Fibonacci)
    };
    let (f, _) = positive(next.f);
    let (g, _) = positive(next.g);
    Ok((GeneratorPair { f, g, ..next }, kind))
}

/// (|β(F)| + |γ(F, G)|, sum < 1).
pub fn jorgensen_test<S: RealScalar>(f: &Mat2<S>, g: &Mat2<S>) -> (S, bool) {
    let s = beta(f).abs().add(&gamma(f, g).abs());
    let violated = s < S::one();
    (s, violated)
}

/// Smallest n ≤ q_max with Mⁿ = ±I for a matrix of trace t, via the
/// Chebyshev recurrence U₀ = 1, U₁ = t, U_{k+1} = t·U_k − U_{k−1}:
/// Mⁿ = ±I exactly when U_{n−1}(t/2) = 0.
pub fn finite_order<S: RealScalar>(t: &S, q_max: u32) -> Option<u32> {
    let is_zero = |u: &S| {
        if S::is_exact() {
            *u == S::zero()
        } else {
            u.abs().to_f64() < 1e-9
        }
    };
    let (mut prev, mut cur) = (S::one(), t.clone());
    if is_zero(&cur) {
        return Some(2);
    }
    for n in 3..=q_max {
        let next = t.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
        if is_zero(&cur) {
            return Some(n);
        }
    }
    None
}

// γ is invariant under the replacement moves, so the caller passes the value
// computed once from the input pair instead of recomputing it from large entries.
fn jorgensen_certificate<S: RealScalar + Display>(p: &GeneratorPair<S>, gm: &S) -> Option<Certificate> {
    for (m, w) in [(&p.f, &p.wf), (&p.g, &p.wg)] {
        let sum = beta(m).abs().add(&gm.abs());
        if sum < S::one() {
            return Some(Certificate::Jorgensen {
                generator: w.clone(),
                beta: beta(m).to_string(),
                gamma: gm.to_string(),
                sum: sum.to_string(),
            });
        }
    }
    None
}

/// Run the replacement procedure from (F, G).
pub fn run<S: RealScalar + Display>(
    f: &Mat2<S>,
    g: &Mat2<S>,
    cfg: &EngineConfig,
) -> Result<(Verdict, AlgorithmTrace), EngineError> {
    let gm = gamma(f, g);
    if !(gm > S::zero()) {
        return Err(EngineError::OutOfScope(format!("gamma = {gm} is not positive")));
    }
    let (mut p, normalization) = normalize_pair(f, g)?;
    let mut steps = Vec::new();
    let mut final_inverted_g = false;
    let finish = |steps: Vec<StepRecord>, p: &GeneratorPair<S>, normalization: Normalization, final_inverted_g: bool| {
        let kinds: Vec<StepKind> = steps.iter().map(|s: &StepRecord| s.kind).collect();
        let (f_sequence, trailing) = fseq_from_steps(&kinds);
        AlgorithmTrace {
            normalization,
            steps,
            f_sequence,
            trailing_fibonacci: trailing,
            final_inverted_g,
            final_pair_words: (p.wf.clone(), p.wg.clone()),
        }
    };
    let verdict = loop {
        if let Some(certificate) = jorgensen_certificate(&p, &gm) {
            break Verdict::NotDiscrete { certificate };
        }
        if steps.len() >= cfg.max_steps {
            break Verdict::Inconclusive { reason: "step budget exhausted".into(), steps_used: steps.len() };
        }
        let inverted_g = orient(&mut p);
        let before = traces(&p);
        let lengths_before = [p.wf.len(), p.wg.len()];
        let max_before = abs_trace(&p.f);
        let outcome = step(&p);
        if outcome.is_err() {
            final_inverted_g = inverted_g;
        }
        match outcome {
            Ok((next, kind)) => {
                let decreased = abs_trace(&next.f) < max_before;
                p = next;
                steps.push(StepRecord {
                    kind,
                    inverted_g,
                    traces_before: before,
                    traces_after: traces(&p),
                    lengths_before,
                    lengths_after: [p.wf.len(), p.wg.len()],
                    decreased,
                });
                if !decreased {
                    // exact arithmetic cannot get here; float rounding can
                    break Verdict::Inconclusive { reason: "trace failed to decrease".into(), steps_used: steps.len() };
                }
            }
            Err(StepStop::NoImprovingStep) => {
                let h = p.f.inverse().mul(&p.g);
                let hyperbolic = [&p.f, &p.g, &h].into_iter().all(is_hyperbolic);
                if hyperbolic && gm > S::zero() {
                    let mut lens = [before[0], before[1], before[2]].map(|t| geodesic_length(t).unwrap_or(0.0));
                    lens.sort_by(|a, b| a.total_cmp(b));
                    break Verdict::Discrete { shortest_geodesics: lens };
                }
                break Verdict::Inconclusive {
                    reason: "stopping triple is not all hyperbolic".into(),
                    steps_used: steps.len(),
                };
            }
            Err(StepStop::EllipticEncountered { trace, word }) => match finite_order(&trace, cfg.q_max) {
                Some(n) => {
                    break Verdict::Inconclusive {
                        reason: format!("elliptic element {word} of order {n}"),
                        steps_used: steps.len(),
                    }
                }
                None => {
                    break Verdict::NotDiscrete {
                        certificate: Certificate::IrrationalElliptic { word, trace: trace.to_string(), q_max: cfg.q_max },
                    }
                }
            },
            Err(StepStop::ParabolicEncountered { word }) => {
                break Verdict::Inconclusive { reason: format!("parabolic element {word}"), steps_used: steps.len() };
            }
        }
    };
    let (x, y) = &normalization.start_words;
    let verdict = match verdict {
        Verdict::NotDiscrete { certificate: Certificate::Jorgensen { generator, beta, gamma, sum } } => Verdict::NotDiscrete {
            certificate: Certificate::Jorgensen { generator: generator.substitute(x, y), beta, gamma, sum },
        },
        Verdict::NotDiscrete { certificate: Certificate::IrrationalElliptic { word, trace, q_max } } => Verdict::NotDiscrete {
            certificate: Certificate::IrrationalElliptic { word: word.substitute(x, y), trace, q_max },
        },
        v => v,
    };
    Ok((verdict, finish(steps, &p, normalization, final_inverted_g)))
}
