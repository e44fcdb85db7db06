use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::LatticePoint;
use crate::error::{Error, Result};

/// A finitely supported complex function on Z^d. Zero values are never
/// stored.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CoefficientFunction {
    values: BTreeMap<LatticePoint, Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    point: Vec<i64>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct RawCoefficients {
    support: Vec<RawEntry>,
}

impl CoefficientFunction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn delta(x: LatticePoint) -> Self {
        let mut f = Self::new();
        f.set(x, Complex64::new(1.0, 0.0));
        f
    }

    pub fn from_pairs<I: IntoIterator<Item = (LatticePoint, Complex64)>>(pairs: I) -> Self {
        let mut f = Self::new();
        for (p, v) in pairs {
            f.add_at(p, v);
        }
        f
    }

    pub fn get(&self, x: &LatticePoint) -> Complex64 {
        self.values.get(x).copied().unwrap_or_default()
    }

    pub fn set(&mut self, x: LatticePoint, v: Complex64) {
        if v == Complex64::new(0.0, 0.0) {
            self.values.remove(&x);
        } else {
            self.values.insert(x, v);
        }
    }

    pub fn add_at(&mut self, x: LatticePoint, v: Complex64) {
        let cur = self.get(&x);
        self.set(x, cur + v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &Complex64)> {
        self.values.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.values.keys()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest ‖x‖∞ over the support.
    pub fn support_radius(&self) -> i64 {
        self.values.keys().map(|p| p.linf()).max().unwrap_or(0)
    }

    pub fn map<F: Fn(&LatticePoint, Complex64) -> Complex64>(&self, f: F) -> Self {
        Self::from_pairs(self.values.iter().map(|(p, &v)| (p.clone(), f(p, v))))
    }

    pub fn abs(&self) -> Self {
        self.map(|_, v| Complex64::new(v.norm(), 0.0))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawCoefficients = serde_json::from_str(s)?;
        let dim = raw.support.first().map(|e| e.point.len());
        let mut f = Self::new();
        for e in raw.support {
            if Some(e.point.len()) != dim {
                return Err(Error::Parse("support points of differing dimension".into()));
            }
            f.add_at(LatticePoint(e.point), Complex64::new(e.re, e.im));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        let raw = RawCoefficients {
            support: self
                .values
                .iter()
                .map(|(p, v)| RawEntry { point: p.0.clone(), re: v.re, im: v.im })
                .collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }
}

impl Serialize for CoefficientFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawCoefficients {
            support: self
                .values
                .iter()
                .map(|(p, v)| RawEntry { point: p.0.clone(), re: v.re, im: v.im })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoefficientFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCoefficients::deserialize(d)?;
        Ok(Self::from_pairs(
            raw.support.into_iter().map(|e| (LatticePoint(e.point), Complex64::new(e.re, e.im))),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;

    #[test]
    fn zero_values_are_dropped() {
        let mut f = CoefficientFunction::delta(pt(&[1]));
        f.add_at(pt(&[1]), Complex64::new(-1.0, 0.0));
        assert!(f.is_empty());
        assert_eq!(f.get(&pt(&[5])), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn json_round_trip() {
        let f = CoefficientFunction::from_pairs([
            (pt(&[0, 1]), Complex64::new(1.5, -2.0)),
            (pt(&[-1, 0]), Complex64::new(0.0, 1.0)),
        ]);
        let j = f.to_json();
        assert!(j.starts_with(r#"{"support":[{"point":[-1,0],"re":0.0,"im":1.0}"#));
        assert_eq!(CoefficientFunction::from_json(&j).unwrap(), f);
    }
}
