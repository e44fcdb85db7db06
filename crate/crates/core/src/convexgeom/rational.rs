use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;

/// A vector of exact rationals, used for support functionals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational64>);

impl RationalVector {
    pub fn zero(dim: usize) -> Self {
        RationalVector(vec![Rational64::zero(); dim])
    }

    pub fn from_point(x: &LatticePoint) -> Self {
        RationalVector(x.0.iter().map(|&c| Rational64::from_integer(c)).collect())
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&c| Rational64::from_integer(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `⟨self, x⟩` for a lattice point.
    pub fn apply(&self, x: &LatticePoint) -> Rational64 {
        self.0
            .iter()
            .zip(&x.0)
            .fold(Rational64::zero(), |acc, (a, &b)| acc + a * Rational64::from_integer(b))
    }

    pub fn dot(&self, other: &RationalVector) -> Rational64 {
        self.0.iter().zip(&other.0).fold(Rational64::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(crate::lattice::rat_f64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: Rational64) -> Self {
        RationalVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }

    pub fn parse(items: &[String]) -> Result<Self> {
        items
            .iter()
            .map(|s| s.trim().parse::<Rational64>().map_err(|e| Error::Parse(format!("{s}: {e}"))))
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_strings())
    }
}

impl Serialize for RationalVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        RationalVector::parse(&v).map_err(serde::de::Error::custom)
    }
}

/// Solves the square system `rows · σ = rhs` exactly; `None` if singular.
pub(crate) fn solve(rows: &[Vec<Rational64>], rhs: &[Rational64]) -> Option<Vec<Rational64>> {
    let n = rows.len();
    let mut a: Vec<Vec<Rational64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(*b);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for j in col..=n {
            a[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in col..=n {
                    let t = a[col][j];
                    a[r][j] -= f * t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n]).collect())
}

/// Rank over Q of a set of lattice points.
pub(crate) fn rank(points: &[LatticePoint]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let d = first.dim();
    let mut a: Vec<Vec<Rational64>> = points
        .iter()
        .map(|p| p.0.iter().map(|&c| Rational64::from_integer(c)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..d {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, piv);
        let p = a[rank][col];
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col] / p;
                for j in col..d {
                    let t = a[rank][j];
                    a[r][j] -= f * t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) fn rat_abs(r: Rational64) -> Rational64 {
    r.abs()
}

pub(crate) fn one() -> Rational64 {
    Rational64::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;

    #[test]
    fn strings_round_trip() {
        let v = RationalVector(vec![Rational64::new(1, 2), Rational64::from_integer(-3)]);
        assert_eq!(v.to_strings(), vec!["1/2", "-3"]);
        assert_eq!(RationalVector::parse(&v.to_strings()).unwrap(), v);
    }

    #[test]
    fn solve_and_rank() {
        let r = |a: i64| Rational64::from_integer(a);
        let sol = solve(&[vec![r(2), r(0)], vec![r(0), r(4)]], &[r(1), r(1)]).unwrap();
        assert_eq!(sol, vec![Rational64::new(1, 2), Rational64::new(1, 4)]);
        assert!(solve(&[vec![r(1), r(1)], vec![r(2), r(2)]], &[r(1), r(1)]).is_none());
        assert_eq!(rank(&[pt(&[1, 1]), pt(&[2, 2])]), 1);
        assert_eq!(rank(&[pt(&[1, 1]), pt(&[2, 3])]), 2);
    }
}
