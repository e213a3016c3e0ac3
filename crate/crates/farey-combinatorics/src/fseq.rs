use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use word_core::{primitive_exponents, PrimitiveExponents, Word};

use crate::fraction::{join, parse_list};
use crate::words::canonical_rotation;
use crate::FareyError;

/// Run lengths of linear steps between Fibonacci steps. Zero entries after
/// the first are allowed: two Fibonacci steps in a row give a zero run.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FSequence {
    pub counts: Vec<u64>,
}

impl FSequence {
    pub fn new(counts: Vec<u64>) -> Self {
        FSequence { counts }
    }

    pub fn concat(&self, other: &FSequence) -> FSequence {
        FSequence { counts: self.counts.iter().chain(&other.counts).copied().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

impl fmt::Display for FSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(&self.counts))
    }
}

impl FromStr for FSequence {
    type Err = FareyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(FSequence { counts: parse_list(s, '{', '}', "F-sequence")? })
    }
}

impl Serialize for FSequence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    Linear,
    Fibonacci,
}

/// Linear: (A, B) ↦ ((A⁻¹B)⁻¹, B). Fibonacci: (A, B) ↦ (B⁻¹, A⁻¹B).
pub fn apply_step(pair: &(Word, Word), kind: StepKind) -> (Word, Word) {
    let (a, b) = pair;
    let h = a.inverse().mul(b);
    match kind {
        StepKind::Linear => (h.inverse(), b.clone()),
        StepKind::Fibonacci => (b.inverse(), h),
    }
}

/// Step kinds replayed by an F-sequence: nᵢ linear steps, then a Fibonacci
/// step after every group except possibly the last.
pub fn fseq_steps(s: &FSequence, trailing_fibonacci: bool) -> Vec<StepKind> {
    let mut out = Vec::new();
    for (i, &n) in s.counts.iter().enumerate() {
        out.extend(std::iter::repeat(StepKind::Linear).take(n as usize));
        if i + 1 < s.counts.len() || trailing_fibonacci {
            out.push(StepKind::Fibonacci);
        }
    }
    out
}

/// Inverse of [`fseq_steps`]: the sequence and whether it ends in a
/// Fibonacci step.
pub fn fseq_from_steps(kinds: &[StepKind]) -> (FSequence, bool) {
    if kinds.is_empty() {
        return (FSequence::default(), false);
    }
    let mut counts = vec![0u64];
    for k in kinds {
        match k {
            StepKind::Linear => *counts.last_mut().unwrap() += 1,
            StepKind::Fibonacci => counts.push(0),
        }
    }
    let trailing = kinds.last() == Some(&StepKind::Fibonacci);
    if trailing {
        counts.pop();
    }
    (FSequence { counts }, trailing)
}

pub fn fseq_to_pair(s: &FSequence, trailing_fibonacci: bool) -> (Word, Word) {
    let mut pair = (Word::a(), Word::b());
    for k in fseq_steps(s, trailing_fibonacci) {
        pair = apply_step(&pair, k);
    }
    pair
}

/// True when the most recently created generator sits in the second slot,
/// i.e. the last replayed step is a Fibonacci step.
pub(crate) fn newest_is_second(s: &FSequence, trailing_fibonacci: bool) -> bool {
    fseq_steps(s, trailing_fibonacci).last() != Some(&StepKind::Linear)
}

/// Continued-fraction digits attached to an F-sequence. A run closed by a
/// Fibonacci step contributes n + offset; a final open run contributes n and
/// is dropped when empty.
pub fn gk_digits(s: &FSequence, trailing_fibonacci: bool, offset: u64) -> Vec<u64> {
    let k = s.counts.len();
    let mut digits = Vec::with_capacity(k);
    for (i, &n) in s.counts.iter().enumerate() {
        let closed = i + 1 < k || trailing_fibonacci;
        if closed {
            digits.push(n + offset);
        } else if n > 0 {
            digits.push(n);
        }
    }
    digits
}

/// Primitive exponents of the newest algorithm word, after the first of:
/// as is, inverted, rotated, rotated and inverted, that is in canonical form.
pub fn fseq_to_primitive_exponents(
    s: &FSequence,
    trailing_fibonacci: bool,
) -> (PrimitiveExponents, &'static str) {
    let (c, d) = fseq_to_pair(s, trailing_fibonacci);
    let w = if newest_is_second(s, trailing_fibonacci) { d } else { c };
    let tries = [
        ("identity", w.clone()),
        ("inverse", w.inverse()),
        ("rotation", canonical_rotation(&w)),
        ("rotation+inverse", canonical_rotation(&w.inverse())),
    ];
    for (how, x) in tries {
        if let Ok(p) = primitive_exponents(&x) {
            return (p, how);
        }
    }
    // algorithm words are primitive, so one of the forms above always applies
    unreachable!("algorithm word {w} has no canonical rotation")
}
