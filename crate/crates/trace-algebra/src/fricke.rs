use num_bigint::BigInt;
use word_core::{Gen, Word};

use crate::poly::{GammaBetaPoly, TracePolynomial};
use crate::TraceError;

/// Element c0·I + c1·A + c2·B + c3·AB of the trace algebra over ℤ[x, y, z].
#[derive(Debug, Clone, PartialEq)]
struct Element([TracePolynomial; 4]);

fn c(n: i64) -> TracePolynomial {
    TracePolynomial::constant(n)
}

fn x() -> TracePolynomial {
    TracePolynomial::var(0)
}

fn y() -> TracePolynomial {
    TracePolynomial::var(1)
}

fn z() -> TracePolynomial {
    TracePolynomial::var(2)
}

impl Element {
    fn one() -> Self {
        Element([c(1), TracePolynomial::zero(), TracePolynomial::zero(), TracePolynomial::zero()])
    }

    fn scale(&self, p: &TracePolynomial) -> Self {
        let [a, b, cc, d] = &self.0;
        Element([a.mul(p), b.mul(p), cc.mul(p), d.mul(p)])
    }

    fn sub(&self, o: &Self) -> Self {
        Element([
            self.0[0].sub(&o.0[0]),
            self.0[1].sub(&o.0[1]),
            self.0[2].sub(&o.0[2]),
            self.0[3].sub(&o.0[3]),
        ])
    }

    // I·A = A, A·A = xA − 1, B·A = −AB + xB + yA + (z − xy), AB·A = zA + B − y.
    fn times_a(&self) -> Self {
        let [c0, c1, c2, c3] = &self.0;
        let k0 = c1.scale(&BigInt::from(-1)).add(&c2.mul(&z().sub(&x().mul(&y())))).sub(&c3.mul(&y()));
        let k1 = c0.add(&c1.mul(&x())).add(&c2.mul(&y())).add(&c3.mul(&z()));
        let k2 = c2.mul(&x()).add(c3);
        let k3 = c2.scale(&BigInt::from(-1));
        Element([k0, k1, k2, k3])
    }

    // I·B = B, A·B = AB, B·B = yB − 1, AB·B = yAB − A.
    fn times_b(&self) -> Self {
        let [c0, c1, c2, c3] = &self.0;
        let k0 = c2.scale(&BigInt::from(-1));
        let k1 = c3.scale(&BigInt::from(-1));
        let k2 = c0.add(&c2.mul(&y()));
        let k3 = c1.add(&c3.mul(&y()));
        Element([k0, k1, k2, k3])
    }

    fn times_letter(&self, gen: Gen, positive: bool) -> Self {
        let (fwd, tr) = match gen {
            Gen::A => (self.times_a(), x()),
            Gen::B => (self.times_b(), y()),
        };
        if positive {
            fwd
        } else {
            // g⁻¹ = tr(g)·I − g
            self.scale(&tr).sub(&fwd)
        }
    }

    fn trace(&self) -> TracePolynomial {
        let [c0, c1, c2, c3] = &self.0;
        c0.scale(&BigInt::from(2)).add(&c1.mul(&x())).add(&c2.mul(&y())).add(&c3.mul(&z()))
    }
}

/// Polynomial p with p(tr F, tr G, tr FG) = tr w(F, G) for every SL(2) pair.
pub fn fricke_polynomial(w: &Word) -> TracePolynomial {
    let mut e = Element::one();
    for s in w.syllables() {
        for _ in 0..s.exp.unsigned_abs() {
            e = e.times_letter(s.gen, s.exp > 0);
        }
    }
    e.trace()
}

/// x² + y² + z² − xyz − 2.
pub fn commutator_trace() -> TracePolynomial {
    fricke_polynomial(&word_core::w("abAB"))
}

/// Which pair the γ-value of a good word is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum GmReading {
    /// γ(f, h) with β = β(f).
    #[serde(rename = "gamma_f_h")]
    GammaFH,
    /// γ(h, g) with β = β(g).
    #[serde(rename = "gamma_h_g")]
    GammaHG,
}

impl GmReading {
    pub const ALL: [GmReading; 2] = [GmReading::GammaFH, GmReading::GammaHG];

    pub fn name(self) -> &'static str {
        match self {
            GmReading::GammaFH => "gamma_f_h",
            GmReading::GammaHG => "gamma_h_g",
        }
    }

    /// The commutator word whose trace minus 2 gives the reading's value.
    pub fn commutator_word(self, w: &Word) -> Word {
        let (u, v) = match self {
            GmReading::GammaFH => (Word::a(), w.clone()),
            GmReading::GammaHG => (w.clone(), Word::b()),
        };
        u.mul(&v).mul(&u.inverse()).mul(&v.inverse())
    }
}

impl std::str::FromStr for GmReading {
    type Err = TraceError;
    fn from_str(s: &str) -> Result<Self, TraceError> {
        match s {
            "gamma_f_h" | "fh" => Ok(GmReading::GammaFH),
            "gamma_h_g" | "hg" => Ok(GmReading::GammaHG),
            _ => Err(TraceError::Parse(format!("unknown reading {s:?}"))),
        }
    }
}

/// P_W read off the Fricke polynomial of the commutator.
///
/// The free trace variable (x for γ(h, g), y for γ(f, h)) is set to 0, which
/// is harmless exactly when the value depends on (γ, β) alone. The remaining
/// two variables must then occur in even powers only.
pub fn gm_polynomial_symbolic(w: &Word, reading: GmReading) -> Result<GammaBetaPoly, TraceError> {
    let p = fricke_polynomial(&reading.commutator_word(w));
    // (free, kept) variable indices; z is always kept.
    let (free, kept) = match reading {
        GmReading::GammaHG => (0, 1),
        GmReading::GammaFH => (1, 0),
    };
    let g = GammaBetaPoly::var(0);
    let b = GammaBetaPoly::var(1);
    let kept_sq = b.add(&GammaBetaPoly::constant(4));
    let z_sq = g.sub(&b);
    let mut out = GammaBetaPoly::constant(-2);
    for (e, coef) in p.terms() {
        if e[free] != 0 {
            continue;
        }
        if e[kept] % 2 != 0 || e[2] % 2 != 0 {
            return Err(TraceError::NotGammaBetaFunction(w.to_string()));
        }
        let t = kept_sq.pow(e[kept] / 2).mul(&z_sq.pow(e[2] / 2)).scale(coef);
        out = out.add(&t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use word_core::w;

    #[test]
    fn small_words() {
        assert_eq!(fricke_polynomial(&w("aa")).to_string(), "x^2 - 2");
        assert_eq!(fricke_polynomial(&w("ab")).to_string(), "z");
        assert_eq!(fricke_polynomial(&w("")).to_string(), "2");
        assert_eq!(fricke_polynomial(&w("A")).to_string(), "x");
        assert_eq!(fricke_polynomial(&w("aB")).to_string(), "x*y - z");
        assert_eq!(commutator_trace().to_string(), "-x*y*z + x^2 + y^2 + z^2 - 2");
    }

    #[test]
    fn symbolic_gm() {
        let g = GammaBetaPoly::var(0);
        let b = GammaBetaPoly::var(1);
        assert_eq!(gm_polynomial_symbolic(&w("a"), GmReading::GammaHG).unwrap(), g);
        assert_eq!(gm_polynomial_symbolic(&w("Aba"), GmReading::GammaHG).unwrap(), g.mul(&g.sub(&b)));
        assert_eq!(gm_polynomial_symbolic(&w("Aba"), GmReading::GammaFH).unwrap(), g);
        assert!(gm_polynomial_symbolic(&w("a"), GmReading::GammaFH).unwrap().is_zero());
    }
}
