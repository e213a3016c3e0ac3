use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::FareyError;

/// p/q in lowest terms with 0 ≤ p ≤ q, q ≥ 1, or the formal point 1/0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: u64,
    q: u64,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { p: 0, q: 1 };
    pub const ONE: Fraction = Fraction { p: 1, q: 1 };
    pub const INFINITY: Fraction = Fraction { p: 1, q: 0 };

    pub fn new(p: u64, q: u64) -> Result<Fraction, FareyError> {
        let ok = p.gcd(&q) == 1 && ((q >= 1 && p <= q) || (p == 1 && q == 0));
        if ok {
            Ok(Fraction { p, q })
        } else {
            Err(FareyError::InvalidFraction(p, q))
        }
    }

    /// Any p/q with 0 ≤ p/q ≤ 1, reduced to lowest terms.
    pub fn reduced(p: u64, q: u64) -> Result<Fraction, FareyError> {
        let g = p.gcd(&q);
        if g == 0 {
            return Err(FareyError::InvalidFraction(p, q));
        }
        Fraction::new(p / g, q / g)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p as u128 * other.q as u128).cmp(&(other.p as u128 * self.q as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = FareyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FareyError::Parse { what: "fraction", text: s.to_string() };
        let (a, b) = s.trim().split_once('/').ok_or_else(bad)?;
        let p = a.trim().parse().map_err(|_| bad())?;
        let q = b.trim().parse().map_err(|_| bad())?;
        Fraction::new(p, q)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Digits [a₀, …, a_k] of p/q = 1/(a₀ + 1/(a₁ + ⋯)).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    pub digits: Vec<u64>,
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join(&self.digits))
    }
}

impl FromStr for ContinuedFraction {
    type Err = FareyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = parse_list(s, '[', ']', "continued fraction")?;
        Ok(ContinuedFraction { digits })
    }
}

impl Serialize for ContinuedFraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) fn join(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn parse_list(
    s: &str,
    open: char,
    close: char,
    what: &'static str,
) -> Result<Vec<u64>, FareyError> {
    let bad = || FareyError::Parse { what, text: s.to_string() };
    let inner = s
        .trim()
        .strip_prefix(open)
        .and_then(|t| t.strip_suffix(close))
        .ok_or_else(bad)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

pub fn cf_expand(f: Fraction) -> Result<ContinuedFraction, FareyError> {
    if f.p == 0 || f.q == 0 {
        return Err(FareyError::ZeroOrOutOfRange(f.to_string()));
    }
    // expansion of p/q is the ordinary expansion of q/p
    let (mut num, mut den) = (f.q, f.p);
    let mut digits = Vec::new();
    while den != 0 {
        digits.push(num / den);
        let r = num % den;
        num = den;
        den = r;
    }
    Ok(ContinuedFraction { digits })
}

/// Value of any list of positive digits. The empty list is 0/1.
pub fn cf_value(cf: &ContinuedFraction) -> Result<Fraction, FareyError> {
    let (mut n, mut m) = (0u64, 1u64);
    for &d in cf.digits.iter().rev() {
        if d == 0 {
            return Err(FareyError::ZeroDigit);
        }
        // 1/(d + n/m) = m/(d m + n)
        let next = d * m + n;
        n = m;
        m = next;
    }
    Fraction::reduced(n, m)
}

pub fn are_neighbors(f: Fraction, g: Fraction) -> bool {
    let a = f.p as i128 * g.q as i128;
    let b = g.p as i128 * f.q as i128;
    (a - b).abs() == 1
}

pub fn mediant(f: Fraction, g: Fraction) -> Result<Fraction, FareyError> {
    if !are_neighbors(f, g) {
        return Err(FareyError::NotNeighbors(f.to_string(), g.to_string()));
    }
    let (p, q) = (f.p + g.p, f.q + g.q);
    Fraction::new(p, q).map_err(|_| FareyError::MediantOutOfRange(format!("{p}/{q}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Dir {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LRSequence {
    pub runs: Vec<(Dir, u64)>,
}

impl LRSequence {
    pub fn counts(&self) -> Vec<u64> {
        self.runs.iter().map(|r| r.1).collect()
    }
}

impl fmt::Display for LRSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|(d, n)| format!("{:?}^{}", d, n))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn lr_sequence(f: Fraction) -> Result<LRSequence, FareyError> {
    let cf = cf_expand(f)?;
    let runs = cf
        .digits
        .iter()
        .enumerate()
        .map(|(i, &n)| (if i % 2 == 0 { Dir::L } else { Dir::R }, n))
        .collect();
    Ok(LRSequence { runs })
}
