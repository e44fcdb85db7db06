use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{GeneratingSet, LatticePoint};
use crate::convexgeom;

/// Norms whose restriction to Z^d gives a length function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormSpec {
    L1,
    L2,
    LInf,
    /// Minkowski gauge of `conv(S)`.
    Gauge(GeneratingSet),
}

impl NormSpec {
    pub fn name(&self) -> String {
        match self {
            NormSpec::L1 => "l1".into(),
            NormSpec::L2 => "l2".into(),
            NormSpec::LInf => "linf".into(),
            NormSpec::Gauge(s) => format!("gauge{:?}", s.elements()),
        }
    }

    /// Evaluates the norm on a real vector. Gauges are evaluated as the
    /// maximum over facet functionals.
    pub fn eval(&self, v: &[f64]) -> f64 {
        match self {
            NormSpec::L1 => v.iter().map(|c| c.abs()).sum(),
            NormSpec::L2 => v.iter().map(|c| c * c).sum::<f64>().sqrt(),
            NormSpec::LInf => v.iter().fold(0.0, |m, c| m.max(c.abs())),
            NormSpec::Gauge(s) => {
                let facets = convexgeom::facet_functionals_f64(s);
                gauge_from_facets(&facets, v)
            }
        }
    }
}

fn gauge_from_facets(facets: &[Vec<f64>], v: &[f64]) -> f64 {
    facets
        .iter()
        .map(|f| f.iter().zip(v).map(|(a, b)| a * b).sum::<f64>())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthKind {
    Word(GeneratingSet),
    NormRestriction(NormSpec),
    /// `|x|^beta` with the Euclidean norm, `0 < beta <= 1`.
    Beta(f64),
    /// Finite table; points outside the table have infinite length.
    Custom(BTreeMap<LatticePoint, f64>),
}

/// Breadth-first distances from the origin on a dense box.
struct WordBall {
    radius: u32,
    half: Vec<i64>,
    strides: Vec<usize>,
    dist: Vec<u32>,
}

impl WordBall {
    fn build(gens: &GeneratingSet, radius: u32) -> Self {
        let dim = gens.dim();
        let span: Vec<i64> = (0..dim)
            .map(|i| gens.elements().iter().map(|s| s.0[i].abs()).max().unwrap_or(1))
            .collect();
        let half: Vec<i64> = span.iter().map(|m| m * radius as i64).collect();
        let mut strides = vec![1usize; dim];
        for i in (0..dim.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (2 * half[i + 1] + 1) as usize;
        }
        let size = strides[0] * (2 * half[0] + 1) as usize;
        let mut dist = vec![u32::MAX; size];
        let offsets: Vec<isize> = gens
            .elements()
            .iter()
            .map(|s| s.0.iter().zip(&strides).map(|(&c, &st)| c as isize * st as isize).sum())
            .collect();
        let origin: usize = half.iter().zip(&strides).map(|(&h, &st)| h as usize * st).sum();
        dist[origin] = 0;
        let mut frontier = vec![origin];
        for r in 0..radius {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for &idx in &frontier {
                for &off in &offsets {
                    let j = (idx as isize + off) as usize;
                    if dist[j] == u32::MAX {
                        dist[j] = r + 1;
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        WordBall { radius, half, strides, dist }
    }

    fn index(&self, x: &LatticePoint) -> Option<usize> {
        let mut idx = 0usize;
        for ((&c, &h), &st) in x.0.iter().zip(&self.half).zip(&self.strides) {
            if c.abs() > h {
                return None;
            }
            idx += (c + h) as usize * st;
        }
        Some(idx)
    }

    fn lookup(&self, x: &LatticePoint) -> Option<u32> {
        self.index(x).map(|i| self.dist[i]).filter(|&d| d != u32::MAX)
    }

    fn points_within(&self, r: u32) -> Vec<(LatticePoint, u32)> {
        let dim = self.half.len();
        let mut out = Vec::new();
        for (idx, &d) in self.dist.iter().enumerate() {
            if d <= r {
                let coords = (0..dim)
                    .map(|i| ((idx / self.strides[i]) % (2 * self.half[i] + 1) as usize) as i64 - self.half[i])
                    .collect();
                out.push((LatticePoint(coords), d));
            }
        }
        out
    }
}

/// A length function on Z^d with a memo table.
///
/// The memo is behind a lock, so a shared oracle may be queried from several
/// threads. Word lengths are exact integers stored in `f64`.
pub struct LengthOracle {
    dim: usize,
    kind: LengthKind,
    span: Vec<i64>,
    gauge_facets: Vec<Vec<f64>>,
    ball: RwLock<Option<WordBall>>,
    cache: RwLock<HashMap<LatticePoint, f64>>,
}

impl Clone for LengthOracle {
    fn clone(&self) -> Self {
        LengthOracle::from_kind(self.dim, self.kind.clone())
    }
}

impl std::fmt::Debug for LengthOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LengthOracle").field("dim", &self.dim).field("kind", &self.label()).finish()
    }
}

impl LengthOracle {
    fn from_kind(dim: usize, kind: LengthKind) -> Self {
        let span = match &kind {
            LengthKind::Word(s) => (0..dim)
                .map(|i| s.elements().iter().map(|e| e.0[i].abs()).max().unwrap_or(1))
                .collect(),
            _ => vec![1; dim],
        };
        let gauge_facets = match &kind {
            LengthKind::NormRestriction(NormSpec::Gauge(s)) => convexgeom::facet_functionals_f64(s),
            _ => Vec::new(),
        };
        LengthOracle {
            dim,
            kind,
            span,
            gauge_facets,
            ball: RwLock::new(None),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn word(s: &GeneratingSet) -> Self {
        Self::from_kind(s.dim(), LengthKind::Word(s.clone()))
    }

    pub fn norm(dim: usize, spec: NormSpec) -> Self {
        Self::from_kind(dim, LengthKind::NormRestriction(spec))
    }

    /// `|n|^beta` on Z (or `‖x‖₂^beta` on Z^d).
    pub fn beta(dim: usize, beta: f64) -> Self {
        assert!(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
        Self::from_kind(dim, LengthKind::Beta(beta))
    }

    pub fn custom(dim: usize, table: BTreeMap<LatticePoint, f64>) -> Self {
        Self::from_kind(dim, LengthKind::Custom(table))
    }

    /// The standard word length on Z^d, i.e. the ℓ¹ norm.
    pub fn standard(dim: usize) -> Self {
        Self::word(&GeneratingSet::standard(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &LengthKind {
        &self.kind
    }

    pub fn generating_set(&self) -> Option<&GeneratingSet> {
        match &self.kind {
            LengthKind::Word(s) => Some(s),
            _ => None,
        }
    }

    /// Integer-valued oracles allow exact comparison of phi values.
    pub fn is_integral(&self) -> bool {
        matches!(self.kind, LengthKind::Word(_))
    }

    /// Proper means closed balls are finite. Custom tables are not
    /// classified and are flagged as `false`.
    pub fn is_proper(&self) -> bool {
        !matches!(self.kind, LengthKind::Custom(_))
    }

    pub fn label(&self) -> String {
        match &self.kind {
            LengthKind::Word(s) => format!("word{:?}", s.elements()),
            LengthKind::NormRestriction(n) => n.name(),
            LengthKind::Beta(b) => format!("beta({b})"),
            LengthKind::Custom(t) => format!("custom({} entries)", t.len()),
        }
    }

    pub fn length(&self, x: &LatticePoint) -> f64 {
        debug_assert_eq!(x.dim(), self.dim);
        match &self.kind {
            LengthKind::Word(_) => self.word_length(x) as f64,
            LengthKind::NormRestriction(NormSpec::L1) => x.l1() as f64,
            LengthKind::NormRestriction(NormSpec::LInf) => x.linf() as f64,
            LengthKind::Custom(t) => {
                if x.is_zero() {
                    0.0
                } else {
                    t.get(x).copied().unwrap_or(f64::INFINITY)
                }
            }
            _ => {
                if let Some(&v) = self.cache.read().unwrap().get(x) {
                    return v;
                }
                let v = match &self.kind {
                    LengthKind::NormRestriction(NormSpec::L2) => x.l2(),
                    LengthKind::NormRestriction(NormSpec::Gauge(_)) => {
                        gauge_from_facets(&self.gauge_facets, &x.as_f64())
                    }
                    LengthKind::Beta(b) => x.l2().powf(*b),
                    _ => unreachable!(),
                };
                self.cache.write().unwrap().insert(x.clone(), v);
                v
            }
        }
    }

    /// Exact gauge value for gauge oracles (as a rational).
    pub fn exact_gauge(&self, x: &LatticePoint) -> Option<num_rational::Rational64> {
        match &self.kind {
            LengthKind::NormRestriction(NormSpec::Gauge(s)) => {
                Some(convexgeom::gauge_norm(s, &convexgeom::RationalVector::from_point(x)))
            }
            _ => None,
        }
    }

    fn word_lower_bound(&self, x: &LatticePoint) -> u32 {
        x.0.iter()
            .zip(&self.span)
            .map(|(&c, &m)| ((c.abs() + m - 1) / m) as u32)
            .max()
            .unwrap_or(0)
    }

    /// Word length of `x`; grows the breadth-first ball on demand.
    ///
    /// Panics when called on a non-word oracle.
    pub fn word_length(&self, x: &LatticePoint) -> u32 {
        let LengthKind::Word(gens) = &self.kind else {
            panic!("word_length on a non-word oracle");
        };
        loop {
            let need = {
                let guard = self.ball.read().unwrap();
                match guard.as_ref() {
                    Some(b) => match b.lookup(x) {
                        Some(d) => return d,
                        None => (b.radius * 2).max(self.word_lower_bound(x) + 1),
                    },
                    None => 16u32.max(self.word_lower_bound(x) + 1),
                }
            };
            let mut guard = self.ball.write().unwrap();
            if guard.as_ref().is_none_or(|b| b.radius < need) {
                *guard = Some(WordBall::build(gens, need));
            }
        }
    }

    /// All points with `ℓ(x) <= r`, sorted lexicographically.
    pub fn ball(&self, r: f64) -> Vec<LatticePoint> {
        match &self.kind {
            LengthKind::Word(_) => {
                let r = r.floor().max(0.0) as u32;
                word_ball_entries(self, r).into_iter().map(|(p, _)| p).collect()
            }
            LengthKind::Custom(t) => {
                let mut v: Vec<_> = t.iter().filter(|(_, &l)| l <= r).map(|(p, _)| p.clone()).collect();
                v.push(LatticePoint::zero(self.dim));
                v.sort();
                v.dedup();
                v
            }
            _ => {
                // Every supported norm dominates ‖x‖∞ / max-span; beta dominates via r^(1/beta).
                let box_r = match &self.kind {
                    LengthKind::Beta(b) => r.max(0.0).powf(1.0 / b).floor() as i64,
                    LengthKind::NormRestriction(NormSpec::Gauge(s)) => {
                        let m = s.elements().iter().map(|e| e.linf()).max().unwrap_or(1);
                        (r * m as f64).floor() as i64
                    }
                    _ => r.floor() as i64,
                };
                LatticePoint::cube(self.dim, box_r.max(0))
                    .into_iter()
                    .filter(|x| self.length(x) <= r + 1e-12)
                    .collect()
            }
        }
    }

    /// Smallest length of a nonzero point in the ball of radius `r`.
    pub fn min_positive(&self, r: f64) -> f64 {
        self.ball(r)
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| self.length(x))
            .fold(f64::INFINITY, f64::min)
    }
}

fn word_ball_entries(oracle: &LengthOracle, r: u32) -> Vec<(LatticePoint, u32)> {
    // Make sure the ball covers radius r, then enumerate.
    let far = LatticePoint(
        oracle.span.iter().enumerate().map(|(i, &m)| if i == 0 { m * r as i64 } else { 0 }).collect(),
    );
    oracle.word_length(&far);
    let guard = oracle.ball.read().unwrap();
    let mut v = guard.as_ref().expect("ball built").points_within(r);
    v.sort();
    v
}

/// Word lengths of every point with `ℓ(x) <= radius`, by breadth-first
/// search on the Cayley graph.
pub fn word_length_ball(s: &GeneratingSet, radius: u32) -> BTreeMap<LatticePoint, u32> {
    let b = WordBall::build(s, radius);
    b.points_within(radius).into_iter().collect()
}

/// Writes a length table as CSV with columns `x0,..,x{d-1},length`.
pub fn length_table_csv(table: &BTreeMap<LatticePoint, f64>, dim: usize) -> String {
    let mut out = String::new();
    let header: Vec<String> = (0..dim).map(|i| format!("x{i}")).chain(["length".to_string()]).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for (p, l) in table {
        let row: Vec<String> = p.0.iter().map(|c| c.to_string()).chain([fmt_num(*l)]).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub(crate) fn fmt_num(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Rational to f64 helper shared by callers comparing against word lengths.
pub(crate) fn rat_f64(r: &num_rational::Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
