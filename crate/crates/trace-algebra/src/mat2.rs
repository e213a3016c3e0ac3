use num_complex::Complex64;
use serde::Serialize;
use word_core::{Gen, Word};

use crate::scalar::{parse_rational, RealScalar, Rational, Scalar};
use crate::TraceError;

/// [[a, b], [c, d]] with ad − bc = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(S::from_i64(a), S::from_i64(b), S::from_i64(c), S::from_i64(d))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inverse(&self) -> Self {
        Mat2 { a: self.d.clone(), b: self.b.neg(), c: self.c.neg(), d: self.a.clone() }
    }

    pub fn neg(&self) -> Self {
        Mat2 { a: self.a.neg(), b: self.b.neg(), c: self.c.neg(), d: self.d.neg() }
    }

    pub fn trace(&self) -> S {
        self.a.add(&self.d)
    }

    pub fn det(&self) -> S {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Mat2::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// Product with `a^e ↦ F^e`, `b^e ↦ G^e`.
pub fn evaluate_word<S: Scalar>(w: &Word, f: &Mat2<S>, g: &Mat2<S>) -> Result<Mat2<S>, TraceError> {
    let mut acc = Mat2::identity();
    for s in w.syllables() {
        let m = match s.gen {
            Gen::A => f,
            Gen::B => g,
        };
        acc = acc.mul(&m.pow(s.exp));
        if !acc.is_finite() {
            return Err(TraceError::Overflow);
        }
    }
    Ok(acc)
}

/// γ(F, G) = tr[F, G] − 2.
pub fn gamma<S: Scalar>(f: &Mat2<S>, g: &Mat2<S>) -> S {
    let comm = f.mul(g).mul(&f.inverse()).mul(&g.inverse());
    comm.trace().sub(&S::from_i64(2))
}

/// β(F) = tr²F − 4.
pub fn beta<S: Scalar>(f: &Mat2<S>) -> S {
    let t = f.trace();
    t.mul(&t).sub(&S::from_i64(4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Identity,
    Parabolic,
    Elliptic,
    Hyperbolic,
    Loxodromic,
}

pub fn classify<S: RealScalar>(f: &Mat2<S>) -> Classification {
    let one = S::one();
    let zero = S::zero();
    let plus_i = f.a == one && f.d == one && f.b == zero && f.c == zero;
    let minus_i = f.a == one.neg() && f.d == one.neg() && f.b == zero && f.c == zero;
    if plus_i || minus_i {
        return Classification::Identity;
    }
    let t2 = f.trace().mul(&f.trace());
    let four = S::from_i64(4);
    if t2 == four {
        Classification::Parabolic
    } else if t2 < four {
        Classification::Elliptic
    } else {
        Classification::Hyperbolic
    }
}

/// Classification for complex matrices, with a relative tolerance on the
/// imaginary part of the trace and on |t² − 4|.
pub fn classify_complex(f: &Mat2<Complex64>, tol: f64) -> Classification {
    let near = |x: Complex64, y: f64| (x - y).norm() <= tol;
    if near(f.b, 0.0) && near(f.c, 0.0) && ((near(f.a, 1.0) && near(f.d, 1.0)) || (near(f.a, -1.0) && near(f.d, -1.0))) {
        return Classification::Identity;
    }
    let t = f.trace();
    if t.im.abs() > tol * (1.0 + t.re.abs()) {
        return Classification::Loxodromic;
    }
    let t2 = t.re * t.re;
    if (t2 - 4.0).abs() <= tol * 4.0 {
        Classification::Parabolic
    } else if t2 < 4.0 {
        Classification::Elliptic
    } else {
        Classification::Hyperbolic
    }
}

/// T with |t| = 2 cosh(T/2).
pub fn geodesic_length(t: f64) -> Result<f64, TraceError> {
    let u = t.abs() / 2.0;
    if !(u > 1.0) {
        return Err(TraceError::NotHyperbolic(t.to_string()));
    }
    Ok(2.0 * u.acosh())
}

/// Parse `a,b;c,d` with rational entries; the determinant must be exactly 1.
pub fn parse_matrix(text: &str) -> Result<Mat2<Rational>, TraceError> {
    let bad = || TraceError::Parse(text.to_string());
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != 2 {
        return Err(bad());
    }
    let mut e = Vec::new();
    for r in rows {
        for x in r.split(',') {
            e.push(parse_rational(x).ok_or_else(bad)?);
        }
    }
    if e.len() != 4 {
        return Err(bad());
    }
    let m = Mat2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone());
    if m.det() != <Rational as Scalar>::one() {
        return Err(TraceError::Determinant(text.to_string()));
    }
    Ok(m)
}

impl<S: Scalar> Mat2<S> {
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat2<T> {
        Mat2 { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use word_core::w;

    type Q = Rational;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2<Q> {
        Mat2::from_i64(a, b, c, d)
    }

    #[test]
    fn words() {
        let f = m(1, 1, 0, 1);
        let g = m(1, 0, 1, 1);
        assert_eq!(evaluate_word(&w(""), &f, &g).unwrap(), Mat2::identity());
        assert_eq!(evaluate_word(&w("a"), &f, &g).unwrap(), f);
        assert_eq!(evaluate_word(&w("ab"), &f, &g).unwrap(), m(2, 1, 1, 1));
        assert_eq!(evaluate_word(&w("a^-3"), &f, &g).unwrap(), m(1, -3, 0, 1));
    }

    #[test]
    fn parameters() {
        let f = m(1, 1, 0, 1);
        let g = m(1, 0, 1, 1);
        assert_eq!(gamma(&f, &g), rat(1, 1));
        assert_eq!(beta(&f), rat(0, 1));
        let i = m(1, 0, 0, 1);
        assert_eq!(beta(&i), rat(0, 1));
        assert_eq!(gamma(&i, &g), rat(0, 1));
        let d1 = Mat2::new(rat(2, 1), rat(0, 1), rat(0, 1), rat(1, 2));
        let d2 = Mat2::new(rat(3, 1), rat(0, 1), rat(0, 1), rat(1, 3));
        assert_eq!(gamma(&d1, &d2), rat(0, 1));
    }

    #[test]
    fn classes() {
        assert_eq!(classify(&m(1, 1, 0, 1)), Classification::Parabolic);
        assert_eq!(classify(&m(2, 1, 1, 1)), Classification::Hyperbolic);
        assert_eq!(classify(&m(0, 1, -1, 0)), Classification::Elliptic);
        assert_eq!(classify(&m(-1, 0, 0, -1)), Classification::Identity);
        let z = Complex64::new(1.0, 1.0);
        let lox = Mat2::new(z, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), z.inv());
        assert_eq!(classify_complex(&lox, 1e-12), Classification::Loxodromic);
    }

    #[test]
    fn lengths() {
        assert!(geodesic_length(2.0).is_err());
        assert!(geodesic_length(-1.5).is_err());
        let t = 2.0 * (0.5f64).cosh();
        assert!((geodesic_length(t).unwrap() - 1.0).abs() < 1e-14);
        assert!((geodesic_length(3.0).unwrap() - 1.9248473002384139).abs() < 1e-12);
        assert_eq!(geodesic_length(-3.0).unwrap(), geodesic_length(3.0).unwrap());
    }

    #[test]
    fn matrix_text() {
        let f = parse_matrix("3,0;0,1/3").unwrap();
        assert_eq!(f.d, rat(1, 3));
        assert!(matches!(parse_matrix("1,1;1,1"), Err(TraceError::Determinant(_))));
        assert!(parse_matrix("1,2,3").is_err());
    }
}
