use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::scalar::Scalar;

/// Integer polynomial in N variables, stored sparsely without zero terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<[u32; N], BigInt>,
}

/// Polynomial in x = tr A, y = tr B, z = tr AB.
pub type TracePolynomial = Poly<3>;
/// Polynomial in γ and β.
pub type GammaBetaPoly = Poly<2>;

pub trait VarNames {
    const NAMES: &'static [&'static str];
}

impl VarNames for Poly<3> {
    const NAMES: &'static [&'static str] = &["x", "y", "z"];
}

impl VarNames for Poly<2> {
    const NAMES: &'static [&'static str] = &["gamma", "beta"];
}

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Poly::zero();
        p.add_term([0; N], c.into());
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        let mut p = Poly::zero();
        p.add_term(e, BigInt::one());
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = ([u32; N], BigInt)>) -> Self {
        let mut p = Poly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: [u32; N], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32; N]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Highest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, -c);
        }
        p
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn mul_var(&self, i: usize) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = *e;
                    e[i] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for k in 0..N {
                    e[k] += e2[k];
                }
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::constant(1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Terms in graded-lex order, highest first.
    pub fn sorted_terms(&self) -> Vec<([u32; N], BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    /// Plain monomial-by-monomial evaluation.
    pub fn eval<S: Scalar>(&self, vals: &[S; N]) -> S {
        let mut total = S::zero();
        for (e, c) in &self.terms {
            let mut t = S::from_bigint(c);
            for k in 0..N {
                for _ in 0..e[k] {
                    t = t.mul(&vals[k]);
                }
            }
            total = total.add(&t);
        }
        total
    }
}

impl Poly<2> {
    /// Nested Horner evaluation: outer in γ, inner in β.
    pub fn horner<S: Scalar>(&self, g: &S, b: &S) -> S {
        let dg = self.degree_in(0);
        let mut by_gamma: Vec<Vec<(u32, &BigInt)>> = vec![Vec::new(); dg as usize + 1];
        for (e, c) in &self.terms {
            by_gamma[e[0] as usize].push((e[1], c));
        }
        let mut acc = S::zero();
        for row in by_gamma.iter().rev() {
            let db = row.iter().map(|r| r.0).max().unwrap_or(0);
            let mut coeffs = vec![None; db as usize + 1];
            for (j, c) in row {
                coeffs[*j as usize] = Some(*c);
            }
            let mut inner = S::zero();
            for c in coeffs.iter().rev() {
                inner = inner.mul(b);
                if let Some(c) = c {
                    inner = inner.add(&S::from_bigint(c));
                }
            }
            acc = acc.mul(g).add(&inner);
        }
        acc
    }

    /// self(q(γ, β), β).
    pub fn compose(&self, q: &Poly<2>) -> Poly<2> {
        let mut out = Poly::zero();
        let beta = Poly::<2>::var(1);
        for (e, c) in &self.terms {
            let t = q.pow(e[0]).mul(&beta.pow(e[1])).scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Exact division by γ, if every term carries a factor γ.
    pub fn div_gamma(&self) -> Option<Poly<2>> {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[0] == 0 {
                return None;
            }
            out.add_term([e[0] - 1, e[1]], c.clone());
        }
        Some(out)
    }
}

impl<const N: usize> fmt::Display for Poly<N>
where
    Poly<N>: VarNames,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = <Poly<N> as VarNames>::NAMES;
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for k in 0..N {
                match e[k] {
                    0 => {}
                    1 => factors.push(names[k].to_string()),
                    p => factors.push(format!("{}^{}", names[k], p)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Coef<'a>(&'a BigInt);

impl Serialize for Coef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Term<'a, const N: usize> {
    exp: Vec<u32>,
    coef: Coef<'a>,
}

impl<const N: usize> Serialize for Poly<N>
where
    Poly<N>: VarNames,
{
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let sorted = self.sorted_terms();
        let terms: Vec<Term<'_, N>> = sorted
            .iter()
            .map(|(e, c)| Term { exp: e.to_vec(), coef: Coef(c) })
            .collect();
        let mut st = s.serialize_struct("Poly", 2)?;
        st.serialize_field("vars", <Poly<N> as VarNames>::NAMES)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn display_order() {
        let x = TracePolynomial::var(0);
        let p = x.mul(&x).sub(&TracePolynomial::constant(2));
        assert_eq!(p.to_string(), "x^2 - 2");
        let g = GammaBetaPoly::var(0);
        let b = GammaBetaPoly::var(1);
        let q = g.mul(&g).sub(&g.mul(&b)).scale(&BigInt::from(-3));
        assert_eq!(q.to_string(), "-3*gamma^2 + 3*gamma*beta");
        assert_eq!(GammaBetaPoly::zero().to_string(), "0");
    }

    #[test]
    fn horner_matches_eval() {
        let g = GammaBetaPoly::var(0);
        let b = GammaBetaPoly::var(1);
        let p = g.pow(3).add(&g.mul(&b.pow(2)).scale(&BigInt::from(5))).sub(&b).add(&GammaBetaPoly::constant(7));
        let v = [rat(2, 3), rat(-5, 7)];
        assert_eq!(p.horner(&v[0], &v[1]), p.eval::<Rational>(&v));
    }

    #[test]
    fn composition() {
        let g = GammaBetaPoly::var(0);
        let b = GammaBetaPoly::var(1);
        let p = g.mul(&g.sub(&b));
        let lhs = p.compose(&g);
        assert_eq!(lhs, p);
        let pp = p.compose(&p);
        let v = [rat(3, 2), rat(1, 5)];
        let inner = p.eval::<Rational>(&v);
        assert_eq!(pp.eval::<Rational>(&v), p.eval::<Rational>(&[inner, v[1].clone()]));
        assert_eq!(p.div_gamma(), Some(g.sub(&b)));
        assert_eq!(b.div_gamma(), None);
    }
}
