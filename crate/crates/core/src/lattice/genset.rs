use serde::{Deserialize, Serialize};

use super::{LatticePoint, Sublattice};
use crate::error::{Error, Result};

/// A finite symmetric generating set `S = -S` of Z^d with `0 ∉ S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratingSet {
    dim: usize,
    elements: Vec<LatticePoint>,
}

#[derive(Deserialize)]
struct RawGeneratingSet {
    dim: usize,
    elements: Vec<Vec<i64>>,
}

impl GeneratingSet {
    /// Validates symmetry, absence of zero, and that S generates Z^d.
    pub fn new(dim: usize, elements: Vec<LatticePoint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidGeneratingSet("dimension must be positive".into()));
        }
        let mut elements = elements;
        for e in &elements {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: e.dim() });
            }
            if e.is_zero() {
                return Err(Error::InvalidGeneratingSet("0 is not allowed in S".into()));
            }
        }
        elements.sort();
        elements.dedup();
        for e in &elements {
            if elements.binary_search(&-e).is_err() {
                return Err(Error::InvalidGeneratingSet(format!("S is not symmetric: {e} present, -{e} missing")));
            }
        }
        let lat = Sublattice::generated_by(dim, &elements);
        if lat.index() != Some(1) {
            return Err(Error::GenerationFailure {
                dim,
                index: lat.index().map_or("infinite".into(), |i| i.to_string()),
            });
        }
        Ok(GeneratingSet { dim, elements })
    }

    /// Builds `S = H ∪ -H` from a half set.
    pub fn symmetric(dim: usize, half: &[LatticePoint]) -> Result<Self> {
        let mut all = half.to_vec();
        all.extend(half.iter().map(|x| -x));
        Self::new(dim, all)
    }

    /// Convenience constructor for dimension one: `{±a, ±b, ...}`.
    pub fn integers(gens: &[i64]) -> Result<Self> {
        Self::symmetric(1, &gens.iter().map(|&g| LatticePoint(vec![g])).collect::<Vec<_>>())
    }

    /// The standard generators `{±e_1, ..., ±e_d}`.
    pub fn standard(dim: usize) -> Self {
        let half: Vec<_> = (0..dim).map(|i| LatticePoint::unit(dim, i)).collect();
        Self::symmetric(dim, &half).expect("standard basis generates")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[LatticePoint] {
        &self.elements
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// One representative from each pair `{s, -s}` (the lexicographically
    /// larger one).
    pub fn half(&self) -> Vec<LatticePoint> {
        self.elements.iter().filter(|s| **s > -*s).cloned().collect()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawGeneratingSet = serde_json::from_str(s)?;
        Self::new(raw.dim, raw.elements.into_iter().map(LatticePoint).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

impl<'de> Deserialize<'de> for GeneratingSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGeneratingSet::deserialize(d)?;
        GeneratingSet::new(raw.dim, raw.elements.into_iter().map(LatticePoint).collect())
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;

    #[test]
    fn rejects_asymmetric_and_zero() {
        assert!(GeneratingSet::new(1, vec![pt(&[1])]).is_err());
        assert!(GeneratingSet::new(1, vec![pt(&[0]), pt(&[1]), pt(&[-1])]).is_err());
    }

    #[test]
    fn rejects_non_generating() {
        let err = GeneratingSet::integers(&[2, 4]).unwrap_err();
        assert!(matches!(err, Error::GenerationFailure { .. }));
        assert!(GeneratingSet::symmetric(2, &[pt(&[1, 1]), pt(&[1, -1])]).is_err());
        assert!(GeneratingSet::integers(&[3, 8]).is_ok());
    }

    #[test]
    fn json_shape() {
        let s = GeneratingSet::integers(&[1, 2]).unwrap();
        let j = s.to_json();
        assert_eq!(j, r#"{"dim":1,"elements":[[-2],[-1],[1],[2]]}"#);
        assert_eq!(GeneratingSet::from_json(&j).unwrap(), s);
    }
}
