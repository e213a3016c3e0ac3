use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::interval::{Bound, Interval};

pub type Rational = BigRational;

/// Ring operations shared by every scalar the matrices and polynomials use.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// False once a bounded-precision value has overflowed.
    fn is_finite(&self) -> bool {
        true
    }
}

/// Totally ordered scalars: exact rationals and floats.
pub trait RealScalar: Scalar + PartialOrd {
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn from_rational(q: &Rational) -> Self;
    /// Square root when it is representable in this scalar type.
    fn sqrt_checked(&self) -> Option<Self>;
    /// Division by a nonzero value.
    fn div(&self, o: &Self) -> Self;
    /// Whether arithmetic is exact, so results can be compared with `==`.
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl RealScalar for Rational {
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn sqrt_checked(&self) -> Option<Self> {
        let n = isqrt_exact(self.numer())?;
        let d = isqrt_exact(self.denom())?;
        Some(Rational::new(n, d))
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl RealScalar for f64 {
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_bigint(n: &BigInt) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::INFINITY), 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl<B: Bound> Scalar for Interval<B> {
    fn zero() -> Self {
        Interval::point(B::zero())
    }
    fn one() -> Self {
        Interval::point(B::from_i64_lo(1))
    }
    fn from_i64(n: i64) -> Self {
        Interval::new(B::from_i64_lo(n), B::from_i64_hi(n))
    }
    fn from_bigint(n: &BigInt) -> Self {
        Interval::new(B::from_bigint_lo(n), B::from_bigint_hi(n))
    }
    fn add(&self, o: &Self) -> Self {
        Interval::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Interval::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Interval::mul(self, o)
    }
    fn neg(&self) -> Self {
        Interval::neg(self)
    }
    fn is_finite(&self) -> bool {
        self.lo().is_finite_bound() && self.hi().is_finite_bound()
    }
}

/// Parse `p/q`, an integer, or a decimal like `-0.25` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rational::new(n, d);
        return Some(if neg { -v } else { v });
    }
    t.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// `p/q` text, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("1/3"), Some(rat(1, 3)));
        assert_eq!(parse_rational("-0.25"), Some(rat(-1, 4)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rat(-2, 6)), "-1/3");
    }

    #[test]
    fn exact_roots() {
        assert_eq!(rat(9, 4).sqrt_checked(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).sqrt_checked(), None);
        assert_eq!(rat(-1, 1).sqrt_checked(), None);
    }
}
