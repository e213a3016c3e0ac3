//! SL(2) matrices over exact rationals, floats and intervals; Fricke trace
//! polynomials; the γ/β parameters and Gehring–Martin polynomials of good words.

mod fricke;
mod gm;
mod interval;
mod mat2;
mod poly;
mod realize;
mod scalar;

pub use fricke::{commutator_trace, fricke_polynomial, gm_polynomial_symbolic, GmReading};
pub use gm::{
    beta_of_mu, check_composition, degree_bounds, determine_gm_reading, gm_value, good_gamma_polynomial,
    good_gamma_polynomial_checked, interpolate_gm, sample_pair, Evidence, EvidenceRow, ReadingDetermination, ReadingRow,
};
pub use interval::{Bound, Interval};
pub use mat2::{
    beta, classify, classify_complex, evaluate_word, gamma, geodesic_length, parse_matrix, Classification, Mat2,
};
pub use poly::{GammaBetaPoly, Poly, TracePolynomial, VarNames};
pub use realize::realize;
pub use scalar::{format_rational, parse_rational, rat, Rational, RealScalar, Scalar};

/// A point in (γ, β) parameter space.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ParamPoint<S> {
    pub gamma: S,
    pub beta: S,
}

impl<S: Scalar> ParamPoint<S> {
    /// γ = 0 is the reducible locus.
    pub fn is_degenerate(&self) -> bool {
        self.gamma == S::zero()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error("scalar overflow while evaluating a word")]
    Overflow,
    #[error("trace {0} is not hyperbolic")]
    NotHyperbolic(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("determinant is {0}, not 1")]
    Determinant(String),
    #[error("gamma = 0 gives a reducible pair")]
    DegenerateParameters,
    #[error("required square root is not representable in this scalar type")]
    NoExactRoot,
    #[error("realization failed its own check: {0}")]
    Realization(String),
    #[error("{0:?} is not a good word")]
    NotGood(String),
    #[error("commutator trace of {0:?} is not a function of gamma and beta")]
    NotGammaBetaFunction(String),
    #[error("interpolation inconsistent:\n{evidence}")]
    InterpolationInconsistent { evidence: Box<Evidence> },
    #[error("interpolated and symbolic polynomials differ for {word:?}: {interpolated} vs {symbolic}")]
    RoutesDisagree { word: String, interpolated: String, symbolic: String },
}
