use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use trace_algebra::{
    format_rational, gm_polynomial_symbolic, good_gamma_polynomial_checked, parse_rational, rat, Bound,
    GammaBetaPoly, GmReading, Interval, Rational, TraceError,
};
use word_core::Word;

use crate::family::good_word_family;

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("bad range {0:?}, expected lo:hi")]
    Parse(String),
    #[error("certificate for {cell} does not re-verify: {reason}")]
    Reverify { cell: String, reason: String },
    #[error(transparent)]
    Trace(#[from] TraceError),
}

/// Closed rectangle γ × β with rational endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamBox {
    pub gamma: Interval<Rational>,
    pub beta: Interval<Rational>,
}

impl ParamBox {
    pub fn new(gamma: Interval<Rational>, beta: Interval<Rational>) -> Self {
        ParamBox { gamma, beta }
    }

    pub fn point(g: Rational, b: Rational) -> Self {
        ParamBox { gamma: Interval::point(g), beta: Interval::point(b) }
    }

    /// Quadrants, in the order (γ low, β low), (γ low, β high), (γ high, β low), (γ high, β high).
    pub fn split(&self) -> [ParamBox; 4] {
        let two = rat(2, 1);
        let gm = (self.gamma.lo() + self.gamma.hi()) / two.clone();
        let bm = (self.beta.lo() + self.beta.hi()) / two;
        let gl = Interval::new(self.gamma.lo().clone(), gm.clone());
        let gh = Interval::new(gm, self.gamma.hi().clone());
        let bl = Interval::new(self.beta.lo().clone(), bm.clone());
        let bh = Interval::new(bm, self.beta.hi().clone());
        [
            ParamBox::new(gl.clone(), bl.clone()),
            ParamBox::new(gl, bh.clone()),
            ParamBox::new(gh.clone(), bl),
            ParamBox::new(gh, bh),
        ]
    }

    pub fn area(&self) -> Rational {
        (self.gamma.hi() - self.gamma.lo()) * (self.beta.hi() - self.beta.lo())
    }

    pub fn contains(&self, g: &Rational, b: &Rational) -> bool {
        self.gamma.contains(g) && self.beta.contains(b)
    }

    /// The interiors meet.
    pub fn overlaps(&self, o: &ParamBox) -> bool {
        let open = |a: &Interval<Rational>, b: &Interval<Rational>| a.lo() < b.hi() && b.lo() < a.hi();
        open(&self.gamma, &o.gamma) && open(&self.beta, &o.beta)
    }

    fn float(&self) -> (Interval<f64>, Interval<f64>) {
        (Interval::enclose(&self.gamma), Interval::enclose(&self.beta))
    }
}

impl std::fmt::Display for ParamBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "gamma [{}, {}] x beta [{}, {}]",
            format_rational(self.gamma.lo()),
            format_rational(self.gamma.hi()),
            format_rational(self.beta.lo()),
            format_rational(self.beta.hi())
        )
    }
}

impl Serialize for ParamBox {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pair = |i: &Interval<Rational>| [format_rational(i.lo()), format_rational(i.hi())];
        let mut st = s.serialize_struct("ParamBox", 2)?;
        st.serialize_field("gamma", &pair(&self.gamma))?;
        st.serialize_field("beta", &pair(&self.beta))?;
        st.end()
    }
}

/// Parse `lo:hi` with rational or decimal endpoints.
pub fn parse_range(text: &str) -> Result<Interval<Rational>, SearchError> {
    let bad = || SearchError::Parse(text.to_string());
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo = parse_rational(lo).ok_or_else(bad)?;
    let hi = parse_rational(hi).ok_or_else(bad)?;
    if lo > hi {
        return Err(bad());
    }
    Ok(Interval::new(lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    /// f64 intervals with outward rounding.
    Float,
    /// Exact rational intervals.
    Exact,
}

fn eval_in<B: Bound>(p: &GammaBetaPoly, g: &Interval<B>, b: &Interval<B>) -> Interval<B> {
    p.horner(g, b)
}

/// Exact enclosure of p over the box.
pub fn interval_eval_exact(p: &GammaBetaPoly, b: &ParamBox) -> Interval<Rational> {
    eval_in(p, &b.gamma, &b.beta)
}

/// Enclosure of p over the box, as f64 bounds.
pub fn interval_eval(p: &GammaBetaPoly, b: &ParamBox, mode: EvalMode) -> Interval<f64> {
    match mode {
        EvalMode::Float => {
            let (g, bt) = b.float();
            eval_in(p, &g, &bt)
        }
        EvalMode::Exact => Interval::enclose(&interval_eval_exact(p, b)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Guard {
    /// sup(|β| + |γ|) < 1: the pair (f, g) itself violates Jørgensen.
    Base { sum: [f64; 2] },
    /// P_W/γ and P_W − β do not vanish on the box, so (g, W(f, g)) has no
    /// common fixed point and is not of dihedral type.
    Cofactor { cofactor: [f64; 2], dihedral: [f64; 2] },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KillerCertificate {
    pub word: Word,
    pub poly: GammaBetaPoly,
    /// Enclosure of |β| + |P_W(γ, β)| over the box.
    pub jorgensen_interval: [f64; 2],
    pub guard: Guard,
    #[serde(rename = "box")]
    pub cell: ParamBox,
}

/// P_W and its two guard polynomials.
#[derive(Debug, Clone)]
pub struct WordPolys {
    pub p: GammaBetaPoly,
    pub cofactor: Option<GammaBetaPoly>,
    pub dihedral: GammaBetaPoly,
}

impl WordPolys {
    fn new(p: GammaBetaPoly) -> Self {
        let cofactor = p.div_gamma();
        let dihedral = p.sub(&GammaBetaPoly::var(1));
        WordPolys { p, cofactor, dihedral }
    }
}

/// Family words with lazily computed polynomials, shared between cells.
pub struct PolyCache {
    words: Vec<Word>,
    polys: Vec<OnceLock<Arc<WordPolys>>>,
}

impl PolyCache {
    pub fn new(max_syllables: usize, max_b_exponent: i64) -> Self {
        let words = good_word_family(max_syllables, max_b_exponent);
        let polys = words.iter().map(|_| OnceLock::new()).collect();
        PolyCache { words, polys }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn get(&self, i: usize) -> Arc<WordPolys> {
        self.polys[i]
            .get_or_init(|| {
                let p = gm_polynomial_symbolic(&self.words[i], GmReading::GammaHG)
                    .expect("good words give functions of gamma and beta");
                Arc::new(WordPolys::new(p))
            })
            .clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub max_syllables: usize,
    pub max_b_exponent: i64,
    pub mode: EvalMode,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_syllables: 9, max_b_exponent: 2, mode: EvalMode::Float }
    }
}

fn below_one<B: Bound>(x: &Interval<B>) -> bool {
    *x.hi() < B::from_i64_lo(1)
}

fn bounds(x: &Interval<f64>) -> [f64; 2] {
    [*x.lo(), *x.hi()]
}

fn check_word<B: Bound>(
    polys: &WordPolys,
    g: &Interval<B>,
    b: &Interval<B>,
    to_f: impl Fn(&Interval<B>) -> Interval<f64>,
) -> Option<([f64; 2], Guard)> {
    let beta_abs = b.abs();
    let sum = beta_abs.add(&eval_in(&polys.p, g, b).abs());
    if !below_one(&sum) {
        return None;
    }
    let base = beta_abs.add(&g.abs());
    if below_one(&base) {
        return Some((bounds(&to_f(&sum)), Guard::Base { sum: bounds(&to_f(&base)) }));
    }
    let q = eval_in(polys.cofactor.as_ref()?, g, b);
    let d = eval_in(&polys.dihedral, g, b);
    if q.contains_zero() || d.contains_zero() {
        return None;
    }
    Some((bounds(&to_f(&sum)), Guard::Cofactor { cofactor: bounds(&to_f(&q)), dihedral: bounds(&to_f(&d)) }))
}

/// First family word certifying the box, with the number of words tried.
pub fn find_killer(cell: &ParamBox, cfg: &SearchConfig, cache: &PolyCache) -> (Option<KillerCertificate>, usize) {
    let (gf, bf) = cell.float();
    for i in 0..cache.words().len() {
        if cache.words()[i].len() > cfg.max_syllables {
            break;
        }
        let polys = cache.get(i);
        let hit = match cfg.mode {
            EvalMode::Float => check_word(&polys, &gf, &bf, |x| x.clone()),
            EvalMode::Exact => check_word(&polys, &cell.gamma, &cell.beta, Interval::enclose),
        };
        if let Some((sum, guard)) = hit {
            let cert = KillerCertificate {
                word: cache.words()[i].clone(),
                poly: polys.p.clone(),
                jorgensen_interval: sum,
                guard,
                cell: cell.clone(),
            };
            return (Some(cert), i + 1);
        }
    }
    (None, cache.words().iter().take_while(|w| w.len() <= cfg.max_syllables).count())
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellStatus {
    Killed(Box<KillerCertificate>),
    Surviving,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellReport {
    pub cell: ParamBox,
    pub depth: usize,
    pub status: CellStatus,
}

impl CellReport {
    pub fn is_killed(&self) -> bool {
        matches!(self.status, CellStatus::Killed(_))
    }
}

impl Serialize for CellReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CellReport", 4)?;
        st.serialize_field("box", &self.cell)?;
        st.serialize_field("depth", &self.depth)?;
        match &self.status {
            CellStatus::Killed(c) => {
                st.serialize_field("status", "killed")?;
                st.serialize_field("certificate", c)?;
            }
            CellStatus::Surviving => {
                st.serialize_field("status", "surviving")?;
                st.skip_field("certificate")?;
            }
        }
        st.end()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GridStats {
    pub cells_examined: usize,
    pub words_tried: usize,
    pub killed: usize,
    pub surviving: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    pub region: ParamBox,
    pub cells: Vec<CellReport>,
    pub depth_reached: usize,
    pub config: SearchConfig,
    pub stats: GridStats,
}

impl GridReport {
    pub fn killed(&self) -> impl Iterator<Item = &CellReport> {
        self.cells.iter().filter(|c| c.is_killed())
    }

    pub fn surviving(&self) -> impl Iterator<Item = &CellReport> {
        self.cells.iter().filter(|c| !c.is_killed())
    }
}

/// Quadtree search: cells without a certificate split until `max_depth`.
pub fn grid_search(region: &ParamBox, max_depth: usize, cfg: &SearchConfig) -> GridReport {
    let cache = PolyCache::new(cfg.max_syllables, cfg.max_b_exponent);
    grid_search_with(region, max_depth, cfg, &cache)
}

pub fn grid_search_with(region: &ParamBox, max_depth: usize, cfg: &SearchConfig, cache: &PolyCache) -> GridReport {
    let mut level = vec![region.clone()];
    let mut cells = Vec::new();
    let mut stats = GridStats::default();
    let mut depth_reached = 0;
    for depth in 0..=max_depth {
        if level.is_empty() {
            break;
        }
        depth_reached = depth;
        let results: Vec<(ParamBox, Option<KillerCertificate>, usize)> = level
            .par_iter()
            .map(|c| {
                let (cert, tried) = find_killer(c, cfg, cache);
                (c.clone(), cert, tried)
            })
            .collect();
        let mut next = Vec::new();
        for (c, cert, tried) in results {
            stats.cells_examined += 1;
            stats.words_tried += tried;
            match cert {
                Some(k) => cells.push(CellReport { cell: c, depth, status: CellStatus::Killed(Box::new(k)) }),
                None if depth < max_depth => next.extend(c.split()),
                None => cells.push(CellReport { cell: c, depth, status: CellStatus::Surviving }),
            }
        }
        level = next;
    }
    cells.sort_by(|x, y| {
        x.cell
            .gamma
            .lo()
            .cmp(y.cell.gamma.lo())
            .then_with(|| x.cell.beta.lo().cmp(y.cell.beta.lo()))
            .then_with(|| x.depth.cmp(&y.depth))
    });
    stats.killed = cells.iter().filter(|c| c.is_killed()).count();
    stats.surviving = cells.len() - stats.killed;
    GridReport { region: region.clone(), cells, depth_reached, config: *cfg, stats }
}

/// Re-check every certificate from scratch: P_W by interpolation and by the
/// symbolic route, then exact rational interval evaluation of the sum and guard.
pub fn reverify(report: &GridReport) -> Result<usize, SearchError> {
    let mut polys: std::collections::BTreeMap<Word, WordPolys> = std::collections::BTreeMap::new();
    let mut n = 0;
    for c in report.killed() {
        let CellStatus::Killed(cert) = &c.status else { unreachable!() };
        let fail = |reason: String| SearchError::Reverify { cell: c.cell.to_string(), reason };
        if !polys.contains_key(&cert.word) {
            let p = good_gamma_polynomial_checked(&cert.word, GmReading::GammaHG, 1)?;
            polys.insert(cert.word.clone(), WordPolys::new(p));
        }
        let wp = &polys[&cert.word];
        if wp.p != cert.poly {
            return Err(fail(format!("polynomial differs: {} vs {}", wp.p, cert.poly)));
        }
        if cert.cell != c.cell {
            return Err(fail("certificate box differs from cell".into()));
        }
        let exact = check_word(wp, &c.cell.gamma, &c.cell.beta, Interval::enclose);
        let Some((sum, _)) = exact else {
            return Err(fail(format!("exact evaluation does not certify {}", cert.word)));
        };
        // the exact enclosure must sit inside the reported float enclosure
        if sum[0] < cert.jorgensen_interval[0] - 1e-12 || sum[1] > cert.jorgensen_interval[1] + 1e-12 {
            return Err(fail(format!("exact enclosure {sum:?} outside {:?}", cert.jorgensen_interval)));
        }
        n += 1;
    }
    Ok(n)
}
