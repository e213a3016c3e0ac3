use crate::mat2::{beta, gamma, Mat2};
use crate::scalar::RealScalar;
use crate::TraceError;

fn close<S: RealScalar>(a: &S, b: &S) -> bool {
    if S::is_exact() {
        return a == b;
    }
    let d = a.sub(b).abs().to_f64();
    d <= 1e-9 * (1.0 + b.abs().to_f64())
}

/// Triangular pair with β(F) = beta_f, β(G) = beta_g and γ(F, G) = gamma_v.
///
/// F = [[s, 1], [0, 1/s]], G = [[u, 0], [r, 1/u]]. Then
/// γ = r² + r·(s − 1/s)(u − 1/u), so r = (−δ_f δ_g + √(β_f β_g + 4γ)) / 2
/// with δ = √β. Elliptic generators (β < 0) have no real triangular form and
/// are rejected as `NoExactRoot`.
pub fn realize<S: RealScalar>(beta_f: &S, beta_g: &S, gamma_v: &S) -> Result<(Mat2<S>, Mat2<S>), TraceError> {
    if *gamma_v == S::zero() {
        return Err(TraceError::DegenerateParameters);
    }
    let two = S::from_i64(2);
    let four = S::from_i64(4);
    let root = |v: &S| v.sqrt_checked().ok_or(TraceError::NoExactRoot);
    let diag = |b: &S| -> Result<(S, S), TraceError> {
        let t = root(&b.add(&four))?;
        let d = root(b)?;
        Ok((t.add(&d).div(&two), d))
    };
    let (s, df) = diag(beta_f)?;
    let (u, dg) = diag(beta_g)?;
    let disc = beta_f.mul(beta_g).add(&four.mul(gamma_v));
    let r = root(&disc)?.sub(&df.mul(&dg)).div(&two);
    let f = Mat2::new(s.clone(), S::one(), S::zero(), S::one().div(&s));
    let g = Mat2::new(u.clone(), S::zero(), r, S::one().div(&u));
    if !(close(&beta(&f), beta_f) && close(&beta(&g), beta_g) && close(&gamma(&f, &g), gamma_v)) {
        return Err(TraceError::Realization(format!(
            "re-evaluated ({}, {}, {})",
            beta(&f).to_f64(),
            beta(&g).to_f64(),
            gamma(&f, &g).to_f64()
        )));
    }
    Ok((f, g))
}
