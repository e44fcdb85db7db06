use std::collections::BTreeMap;

use serde::Serialize;

use super::{GroupMetric, RaySample};
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;

/// Finite surrogate for a boundary point `b`: the values `φ_y(b)` for `y` in
/// a finite window.
#[derive(Clone, Debug, PartialEq)]
pub struct HorofunctionWindow<E: Ord> {
    pub values: BTreeMap<E, f64>,
    pub stabilized: BTreeMap<E, bool>,
    pub source: String,
    /// Exact (integer) comparison applies.
    pub integral: bool,
    /// Every sequence `t ↦ φ_y(γ(t))` was nondecreasing on the sample.
    pub monotone: bool,
}

#[derive(Serialize)]
struct WindowEntry<'a, E> {
    point: &'a E,
    value: f64,
    stabilized: bool,
}

impl<E: Ord + Clone> HorofunctionWindow<E> {
    pub fn window(&self) -> impl Iterator<Item = &E> {
        self.values.keys()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, y: &E) -> Option<f64> {
        self.values.get(y).copied()
    }

    pub fn all_stabilized(&self) -> bool {
        self.stabilized.values().all(|&s| s)
    }

    fn eq_val(&self, a: f64, b: f64) -> bool {
        if self.integral {
            a == b
        } else {
            (a - b).abs() <= 1e-9
        }
    }

    /// Compares on the common window. `None` when the windows are disjoint.
    pub fn agrees_with(&self, other: &Self) -> Option<bool> {
        let mut any = false;
        for (y, &v) in &self.values {
            if let Some(&w) = other.values.get(y) {
                any = true;
                if !self.eq_val(v, w) {
                    return Some(false);
                }
            }
        }
        any.then_some(true)
    }

    /// A point of the common window where the two windows differ.
    pub fn separating_point(&self, other: &Self) -> Option<E> {
        self.values
            .iter()
            .find(|(y, &v)| other.values.get(*y).is_some_and(|&w| !self.eq_val(v, w)))
            .map(|(y, _)| y.clone())
    }

    pub fn to_json_value(&self) -> serde_json::Value
    where
        E: Serialize,
    {
        let entries: Vec<_> = self
            .values
            .iter()
            .map(|(p, &v)| WindowEntry { point: p, value: v, stabilized: self.stabilized[p] })
            .collect();
        serde_json::json!({
            "source": self.source,
            "monotone": self.monotone,
            "entries": entries,
        })
    }
}

/// Final values of `φ_y(γ(t))` for `y ∈ W`, with a stabilization flag for
/// each `y`: the value must be constant over the last `run_length` samples.
pub fn ray_limit_window<M: GroupMetric>(
    metric: &M,
    ray: &RaySample<M::Elem>,
    window: &[M::Elem],
    run_length: usize,
) -> Result<HorofunctionWindow<M::Elem>> {
    let needed = run_length + 1;
    if ray.len() < needed {
        return Err(Error::InsufficientSample { len: ray.len(), needed });
    }
    let lengths: Vec<f64> = ray.points.iter().map(|x| metric.length(x)).collect();
    let mut values = BTreeMap::new();
    let mut stabilized = BTreeMap::new();
    let mut monotone = true;
    for y in window {
        let yinv = metric.inverse(y);
        let seq: Vec<f64> = ray
            .points
            .iter()
            .zip(&lengths)
            .map(|(x, &lx)| lx - metric.length(&metric.compose(&yinv, x)))
            .collect();
        let last = *seq.last().expect("nonempty");
        let stable = seq[seq.len() - needed..].iter().all(|&v| metric.values_equal(v, last));
        if seq.windows(2).any(|w| w[1] < w[0] - 1e-12) {
            monotone = false;
        }
        values.insert(y.clone(), last);
        stabilized.insert(y.clone(), stable);
    }
    Ok(HorofunctionWindow {
        values,
        stabilized,
        source: ray.label.clone(),
        integral: metric.is_integral(),
        monotone,
    })
}

/// Window of the translate `α_z(b)`: `φ_y(α_z b) = φ_{y-z}(b) - φ_{-z}(b)`,
/// defined where both `y - z` and `-z` lie in the window of `b`.
pub fn translate_window(b: &HorofunctionWindow<LatticePoint>, z: &LatticePoint) -> Result<HorofunctionWindow<LatticePoint>> {
    let mz = -z;
    let (Some(&base), Some(&base_stable)) = (b.values.get(&mz), b.stabilized.get(&mz)) else {
        return Err(Error::WindowExhausted);
    };
    let mut values = BTreeMap::new();
    let mut stabilized = BTreeMap::new();
    for (w, &v) in &b.values {
        let y = w + z;
        values.insert(y.clone(), v - base);
        stabilized.insert(y, b.stabilized[w] && base_stable);
    }
    if values.is_empty() {
        return Err(Error::WindowExhausted);
    }
    Ok(HorofunctionWindow {
        values,
        stabilized,
        source: format!("{} translated by {z}", b.source),
        integral: b.integral,
        monotone: b.monotone,
    })
}
