//! Continued fractions, Farey fractions and Farey words, F-sequences, and
//! checks that tie the algorithm words of an F-sequence to Farey words.

mod checks;
mod fraction;
mod fseq;
mod words;

pub use checks::{
    calibrate_gilman_keen, gilman_keen_cases, rewrite_in_conjugates, verify_gilman_keen,
    verify_gilman_keen_pair,
    verify_good_is_farey_in_conjugates, verify_prop1, verify_prop2, CalibrationRow,
    ConjugateRewrite, GkCalibration, GkConvention, GkNormalization, MatchRecord,
};
pub use fraction::{
    are_neighbors, cf_expand, cf_value, lr_sequence, mediant, ContinuedFraction, Dir, Fraction,
    LRSequence,
};
pub use fseq::{
    apply_step, fseq_from_steps, fseq_steps, fseq_to_pair, fseq_to_primitive_exponents,
    gk_digits, FSequence, StepKind,
};
pub use words::{canonical_rotation, farey_add, farey_word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("fraction {0} must lie in (0, 1]")]
    ZeroOrOutOfRange(String),
    #[error("{0} and {1} are not Farey neighbors")]
    NotNeighbors(String, String),
    #[error("mediant {0} lies outside [0, 1]")]
    MediantOutOfRange(String),
    #[error("invalid fraction {0}/{1}")]
    InvalidFraction(u64, u64),
    #[error("continued fraction digits must be positive")]
    ZeroDigit,
    #[error("cannot parse {what} from {text:?}")]
    Parse { what: &'static str, text: String },
    #[error("word is not good: {0}")]
    NotGood(String),
    #[error("empty F-sequence")]
    EmptySequence,
}
