use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::scalar::Rational;

/// Endpoint arithmetic with directed rounding. Exact types round trivially.
pub trait Bound: Clone + Debug + PartialOrd + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_i64_lo(n: i64) -> Self;
    fn from_i64_hi(n: i64) -> Self;
    fn from_bigint_lo(n: &BigInt) -> Self;
    fn from_bigint_hi(n: &BigInt) -> Self;
    fn add_lo(&self, o: &Self) -> Self;
    fn add_hi(&self, o: &Self) -> Self;
    fn mul_lo(&self, o: &Self) -> Self;
    fn mul_hi(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn is_finite_bound(&self) -> bool;
}

impl Bound for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_i64_lo(n: i64) -> Self {
        let x = n as f64;
        if (x as i128) > n as i128 { x.next_down() } else { x }
    }
    fn from_i64_hi(n: i64) -> Self {
        let x = n as f64;
        if (x as i128) < n as i128 { x.next_up() } else { x }
    }
    fn from_bigint_lo(n: &BigInt) -> Self {
        n.to_f64().map(|x| x.next_down()).unwrap_or(f64::NEG_INFINITY)
    }
    fn from_bigint_hi(n: &BigInt) -> Self {
        n.to_f64().map(|x| x.next_up()).unwrap_or(f64::INFINITY)
    }
    fn add_lo(&self, o: &Self) -> Self {
        (self + o).next_down()
    }
    fn add_hi(&self, o: &Self) -> Self {
        (self + o).next_up()
    }
    fn mul_lo(&self, o: &Self) -> Self {
        let p = self * o;
        if p == 0.0 && (*self == 0.0 || *o == 0.0) { 0.0 } else { p.next_down() }
    }
    fn mul_hi(&self, o: &Self) -> Self {
        let p = self * o;
        if p == 0.0 && (*self == 0.0 || *o == 0.0) { 0.0 } else { p.next_up() }
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_finite_bound(&self) -> bool {
        self.is_finite()
    }
}

impl Bound for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn from_i64_lo(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn from_i64_hi(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn from_bigint_lo(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
    fn from_bigint_hi(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
    fn add_lo(&self, o: &Self) -> Self {
        self + o
    }
    fn add_hi(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_lo(&self, o: &Self) -> Self {
        self * o
    }
    fn mul_hi(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_finite_bound(&self) -> bool {
        true
    }
}

/// Closed interval [lo, hi], lo ≤ hi.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interval<B> {
    lo: B,
    hi: B,
}

fn min2<B: PartialOrd + Clone>(a: &B, b: &B) -> B {
    if b < a { b.clone() } else { a.clone() }
}

fn max2<B: PartialOrd + Clone>(a: &B, b: &B) -> B {
    if b > a { b.clone() } else { a.clone() }
}

impl<B: Bound> Interval<B> {
    pub fn new(lo: B, hi: B) -> Self {
        assert!(lo <= hi, "empty interval {lo:?} > {hi:?}");
        Interval { lo, hi }
    }

    pub fn point(x: B) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &B {
        &self.lo
    }

    pub fn hi(&self) -> &B {
        &self.hi
    }

    pub fn contains(&self, x: &B) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&B::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval { lo: self.lo.add_lo(&o.lo), hi: self.hi.add_hi(&o.hi) }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: self.hi.negate(), hi: self.lo.negate() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo = pairs[0].0.mul_lo(pairs[0].1);
        let mut hi = pairs[0].0.mul_hi(pairs[0].1);
        for (x, y) in &pairs[1..] {
            lo = min2(&lo, &x.mul_lo(y));
            hi = max2(&hi, &x.mul_hi(y));
        }
        Interval { lo, hi }
    }

    /// {|x| : x ∈ self}.
    pub fn abs(&self) -> Self {
        let z = B::zero();
        if self.lo >= z {
            self.clone()
        } else if self.hi <= z {
            self.neg()
        } else {
            Interval { lo: z, hi: max2(&self.lo.negate(), &self.hi) }
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, o: &Self) -> Self {
        Interval { lo: min2(&self.lo, &o.lo), hi: max2(&self.hi, &o.hi) }
    }

    pub fn map_bounds<C: Bound>(&self, lo: impl Fn(&B) -> C, hi: impl Fn(&B) -> C) -> Interval<C> {
        Interval::new(lo(&self.lo), hi(&self.hi))
    }
}

impl Interval<f64> {
    /// Float enclosure of an exact rational interval.
    pub fn enclose(x: &Interval<Rational>) -> Interval<f64> {
        x.map_bounds(
            |q| q.to_f64().map(|v| v.next_down()).unwrap_or(f64::NEG_INFINITY),
            |q| q.to_f64().map(|v| v.next_up()).unwrap_or(f64::INFINITY),
        )
    }

    pub fn enclose_point(q: &Rational) -> Interval<f64> {
        Interval::enclose(&Interval::point(q.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn arithmetic_encloses() {
        let x = Interval::new(-1.0, 2.0);
        let y = Interval::new(3.0, 4.0);
        let p = x.mul(&y);
        assert!(p.contains(&-4.0) && p.contains(&8.0));
        assert_eq!(x.abs().lo(), &0.0);
        let third = Interval::enclose_point(&rat(1, 3));
        let one = third.add(&third).add(&third);
        assert!(one.contains(&1.0));
    }

    #[test]
    fn exact_bounds() {
        let x = Interval::new(rat(-1, 2), rat(1, 3));
        let sq = x.mul(&x);
        assert_eq!(sq.lo(), &rat(-1, 6));
        assert_eq!(sq.hi(), &rat(1, 4));
        assert_eq!(x.abs().hi(), &rat(1, 2));
    }
}
