//! The free group on `a, b` with its word length, and its boundary of
//! infinite reduced words.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::horoboundary::{GroupMetric, RaySample};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'a' => Ok(Letter::A),
            'A' => Ok(Letter::AInv),
            'b' => Ok(Letter::B),
            'B' => Ok(Letter::BInv),
            _ => Err(Error::Parse(format!("unknown letter {c:?}"))),
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord(Vec::new())
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        ReducedWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        ReducedWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn multiply(&self, other: &ReducedWord) -> ReducedWord {
        ReducedWord::reduce(self.0.iter().chain(&other.0).copied())
    }

    pub fn random<R: Rng>(len: usize, rng: &mut R) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(len);
        while out.len() < len {
            let l = Letter::ALL[rng.random_range(0..4)];
            if out.last() != Some(&l.inverse()) {
                out.push(l);
            }
        }
        ReducedWord(out)
    }
}

pub fn multiply(u: &ReducedWord, v: &ReducedWord) -> ReducedWord {
    u.multiply(v)
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.to_char()))
    }
}

impl FromStr for ReducedWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s.chars().map(Letter::from_char).collect::<Result<Vec<_>>>()?;
        Ok(ReducedWord::reduce(letters))
    }
}

impl TryFrom<String> for ReducedWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ReducedWord> for String {
    fn from(w: ReducedWord) -> String {
        w.to_string()
    }
}

/// The infinite reduced word `head · cycle^∞`, kept in canonical form: the
/// cycle is primitive and the head is as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BoundaryWord {
    head: Vec<Letter>,
    cycle: Vec<Letter>,
}

fn is_reduced(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[1] != p[0].inverse())
}

impl BoundaryWord {
    pub fn new(head: &[Letter], cycle: &[Letter]) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Parse("cycle must be nonempty".into()));
        }
        if !is_reduced(head) || !is_reduced(cycle) || cycle[0] == cycle[cycle.len() - 1].inverse() {
            return Err(Error::Parse("infinite word is not reduced".into()));
        }
        if head.last().is_some_and(|&h| h == cycle[0].inverse()) {
            return Err(Error::Parse("head and cycle cancel".into()));
        }
        let mut w = BoundaryWord { head: head.to_vec(), cycle: cycle.to_vec() };
        w.canonicalize();
        Ok(w)
    }

    pub fn periodic(cycle: &[Letter]) -> Result<Self> {
        BoundaryWord::new(&[], cycle)
    }

    fn canonicalize(&mut self) {
        let n = self.cycle.len();
        if let Some(p) = (1..=n).find(|&p| n % p == 0 && (0..n).all(|i| self.cycle[i] == self.cycle[i % p])) {
            self.cycle.truncate(p);
        }
        while self.head.last() == self.cycle.last() && !self.head.is_empty() {
            self.head.pop();
            self.cycle.rotate_right(1);
        }
    }

    pub fn head(&self) -> &[Letter] {
        &self.head
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    pub fn letter(&self, i: usize) -> Letter {
        if i < self.head.len() {
            self.head[i]
        } else {
            self.cycle[(i - self.head.len()) % self.cycle.len()]
        }
    }

    pub fn first(&self) -> Letter {
        self.letter(0)
    }

    pub fn prefix(&self, n: usize) -> ReducedWord {
        ReducedWord((0..n).map(|i| self.letter(i)).collect())
    }

    /// Drops the first letter.
    fn tail(&self) -> BoundaryWord {
        let mut w = self.clone();
        if w.head.is_empty() {
            w.cycle.rotate_left(1);
        } else {
            w.head.remove(0);
        }
        w
    }

    /// `u · w`, reduced.
    pub fn left_multiply(&self, u: &ReducedWord) -> BoundaryWord {
        let mut u = u.0.clone();
        let mut w = self.clone();
        while u.last().is_some_and(|&l| l == w.first().inverse()) {
            u.pop();
            w = w.tail();
        }
        u.extend_from_slice(&w.head);
        let mut out = BoundaryWord { head: u, cycle: w.cycle };
        out.canonicalize();
        out
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let head = ReducedWord::random(rng.random_range(0..6), rng);
            let cycle = ReducedWord::random(rng.random_range(1..5), rng);
            if let Ok(w) = BoundaryWord::new(&head.0, &cycle.0) {
                return w;
            }
        }
    }
}

impl fmt::Display for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[Letter]| v.iter().map(|l| l.to_char()).collect::<String>();
        write!(f, "{}|{}", s(&self.head), s(&self.cycle))
    }
}

impl FromStr for BoundaryWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (h, c) = s.split_once('|').ok_or_else(|| Error::Parse(format!("expected head|cycle, got {s:?}")))?;
        let parse = |t: &str| t.chars().map(Letter::from_char).collect::<Result<Vec<_>>>();
        BoundaryWord::new(&parse(h)?, &parse(c)?)
    }
}

impl TryFrom<String> for BoundaryWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BoundaryWord> for String {
    fn from(w: BoundaryWord) -> String {
        w.to_string()
    }
}

/// The free group with word length for `{a^±1, b^±1}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeGroup;

impl GroupMetric for FreeGroup {
    type Elem = ReducedWord;

    fn identity(&self) -> ReducedWord {
        ReducedWord::identity()
    }

    fn length(&self, x: &ReducedWord) -> f64 {
        x.len() as f64
    }

    fn compose(&self, x: &ReducedWord, y: &ReducedWord) -> ReducedWord {
        x.multiply(y)
    }

    fn inverse(&self, x: &ReducedWord) -> ReducedWord {
        x.inverse()
    }

    fn is_integral(&self) -> bool {
        true
    }
}

/// `φ_x(w)`, from `φ_s(w) = ±1` (as `w` starts with `s` or not) and
/// `φ_{ys}(w) = φ_y(w) + φ_s(y⁻¹w)`.
pub fn phi_boundary(x: &ReducedWord, w: &BoundaryWord) -> i64 {
    let mut total = 0;
    let mut y = ReducedWord::identity();
    for &s in &x.0 {
        let moved = w.left_multiply(&y.inverse());
        total += if moved.first() == s { 1 } else { -1 };
        y = y.multiply(&ReducedWord(vec![s]));
    }
    total
}

/// `ℓ(p) - ℓ(x⁻¹p)` for the length-`n` prefix `p` of `w`.
pub fn prefix_limit(x: &ReducedWord, w: &BoundaryWord, n: usize) -> i64 {
    let p = w.prefix(n);
    p.len() as i64 - x.inverse().multiply(&p).len() as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub x: ReducedWord,
    pub letter: char,
    pub values: (i64, i64),
}

/// The longest common prefix `x` of `v` and `w` and the letter `s` that `x⁻¹v`
/// starts with: `φ_s(x⁻¹v) = 1` while `φ_s(x⁻¹w) = -1`.
pub fn separate(v: &BoundaryWord, w: &BoundaryWord) -> Result<Separation> {
    if v == w {
        return Err(Error::NoSeparation);
    }
    let bound = v.head.len().max(w.head.len()) + v.cycle.len() * w.cycle.len() + 1;
    let i = (0..bound).find(|&i| v.letter(i) != w.letter(i)).ok_or(Error::NoSeparation)?;
    let x = v.prefix(i);
    let s = ReducedWord(vec![v.letter(i)]);
    let xi = x.inverse();
    let values = (phi_boundary(&s, &v.left_multiply(&xi)), phi_boundary(&s, &w.left_multiply(&xi)));
    Ok(Separation { x, letter: v.letter(i).to_char(), values })
}

/// The geodesic `e, w₁, w₁w₂, …` up to `n` letters.
pub fn prefix_ray(w: &BoundaryWord, n: usize) -> RaySample<ReducedWord> {
    RaySample::new((0..=n).map(|k| k as f64).collect(), (0..=n).map(|k| w.prefix(k)).collect(), format!("prefixes of {w}"))
}
