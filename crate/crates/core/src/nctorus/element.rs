use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Cocycle;
use crate::convexgeom::RationalVector;
use crate::error::{Error, Result};
use crate::lattice::{rat_f64, CoefficientFunction, LatticePoint};

/// A finitely supported element of the twisted group algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraElement {
    pub coeffs: CoefficientFunction,
    pub cocycle: Cocycle,
}

impl AlgebraElement {
    pub fn new(coeffs: CoefficientFunction, cocycle: Cocycle) -> Self {
        AlgebraElement { coeffs, cocycle }
    }

    pub fn delta(x: LatticePoint, cocycle: Cocycle) -> Self {
        AlgebraElement { coeffs: CoefficientFunction::delta(x), cocycle }
    }

    /// Coefficients uniform in `[-1/2, 1/2]^2` on the box of the given
    /// radius, each point kept with probability 3/4.
    pub fn random<R: Rng>(cocycle: &Cocycle, radius: i64, rng: &mut R) -> Self {
        let mut coeffs = CoefficientFunction::new();
        for x in LatticePoint::cube(cocycle.dim(), radius) {
            if rng.random::<f64>() < 0.75 {
                coeffs.set(x, Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            }
        }
        AlgebraElement { coeffs, cocycle: cocycle.clone() }
    }

    pub fn dim(&self) -> usize {
        self.cocycle.dim()
    }

    pub fn get(&self, x: &LatticePoint) -> Complex64 {
        self.coeffs.get(x)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn with(&self, coeffs: CoefficientFunction) -> Self {
        AlgebraElement { coeffs, cocycle: self.cocycle.clone() }
    }

    /// `(f * g)(x) = Σ_y f(y) g(x - y) c(y, x - y)`.
    pub fn convolve(&self, g: &AlgebraElement) -> Result<AlgebraElement> {
        if self.cocycle != g.cocycle {
            return Err(Error::CocycleMismatch);
        }
        let mut out = CoefficientFunction::new();
        for (y, &a) in self.coeffs.iter() {
            for (z, &b) in g.coeffs.iter() {
                out.add_at(y + z, a * b * self.cocycle.eval(y, z));
            }
        }
        Ok(self.with(out))
    }

    /// `f*(x) = conj(f(-x))`, using `c(x, -x) = 1`.
    pub fn involution(&self) -> AlgebraElement {
        self.with(CoefficientFunction::from_pairs(self.coeffs.iter().map(|(x, v)| (-x, v.conj()))))
    }

    /// Coefficients `x ↦ σ(x) f(x)`.
    pub fn x_sigma(&self, sigma: &RationalVector) -> Result<AlgebraElement> {
        if sigma.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: sigma.dim() });
        }
        Ok(self.with(self.coeffs.map(|x, v| v * rat_f64(&sigma.apply(x)))))
    }

    /// Coefficients `x ↦ σ(x) f(x)` for a real functional.
    pub fn x_functional(&self, tau: &[f64]) -> AlgebraElement {
        self.with(self.coeffs.map(|x, v| v * x.dot(tau)))
    }

    /// The dual action: `m ↦ exp(2πi⟨m, p⟩) f(m)` for `p ∈ [0,1)^d`.
    pub fn dual_action(&self, p: &[f64]) -> AlgebraElement {
        self.with(self.coeffs.map(|m, v| v * Complex64::from_polar(1.0, 2.0 * PI * m.dot(p))))
    }

    pub fn scale(&self, a: Complex64) -> AlgebraElement {
        self.with(self.coeffs.map(|_, v| v * a))
    }

    pub fn add(&self, g: &AlgebraElement) -> Result<AlgebraElement> {
        if self.cocycle != g.cocycle {
            return Err(Error::CocycleMismatch);
        }
        let mut out = self.coeffs.clone();
        for (x, &v) in g.coeffs.iter() {
            out.add_at(x.clone(), v);
        }
        Ok(self.with(out))
    }

    /// `Σ_k f(k) e^{i⟨k, t⟩}`.
    pub fn fourier(&self, t: &[f64]) -> Complex64 {
        self.coeffs.iter().map(|(k, &v)| v * Complex64::from_polar(1.0, k.dot(t))).sum()
    }

    pub fn l1(&self) -> f64 {
        self.coeffs.iter().map(|(_, v)| v.norm()).sum()
    }

    pub fn l2(&self) -> f64 {
        self.coeffs.iter().map(|(_, v)| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_distance(&self, g: &AlgebraElement) -> f64 {
        let keys = self.coeffs.support().chain(g.coeffs.support());
        keys.map(|x| (self.get(x) - g.get(x)).norm()).fold(0.0, f64::max)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let e: AlgebraElement = serde_json::from_str(s)?;
        if e.coeffs.iter().any(|(x, _)| x.dim() != e.dim()) {
            return Err(Error::DimensionMismatch {
                expected: e.dim(),
                found: e.coeffs.iter().map(|(x, _)| x.dim()).find(|&d| d != e.dim()).unwrap_or(0),
            });
        }
        Ok(e)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("element serializes")
    }
}
