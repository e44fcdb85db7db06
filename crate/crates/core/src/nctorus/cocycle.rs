use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;

/// The bicharacter `c(x, y) = exp(iπ⟨x, Θy⟩)` for a real antisymmetric `Θ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CocycleJson", into = "CocycleJson")]
pub struct Cocycle {
    theta: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct CocycleJson {
    theta: Vec<Vec<f64>>,
}

impl TryFrom<CocycleJson> for Cocycle {
    type Error = Error;
    fn try_from(j: CocycleJson) -> Result<Self> {
        Cocycle::new(j.theta)
    }
}

impl From<Cocycle> for CocycleJson {
    fn from(c: Cocycle) -> Self {
        CocycleJson { theta: c.theta }
    }
}

impl Cocycle {
    pub fn new(theta: Vec<Vec<f64>>) -> Result<Self> {
        let d = theta.len();
        if theta.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidCocycle("theta must be square".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if (theta[i][j] + theta[j][i]).abs() > 1e-15 {
                    return Err(Error::InvalidCocycle(format!("theta not antisymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Cocycle { theta })
    }

    pub fn trivial(dim: usize) -> Self {
        Cocycle { theta: vec![vec![0.0; dim]; dim] }
    }

    /// `θ` on each coordinate pair `(2k, 2k+1)`; an odd last coordinate stays
    /// untwisted.
    pub fn block(dim: usize, theta: f64) -> Self {
        let mut m = vec![vec![0.0; dim]; dim];
        for k in (0..dim.saturating_sub(1)).step_by(2) {
            m[k][k + 1] = theta;
            m[k + 1][k] = -theta;
        }
        Cocycle { theta: m }
    }

    pub fn dim(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self) -> &[Vec<f64>] {
        &self.theta
    }

    pub fn is_trivial(&self) -> bool {
        self.theta.iter().flatten().all(|&v| v == 0.0)
    }

    /// `⟨x, Θy⟩`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> f64 {
        let mut s = 0.0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s += xi as f64 * self.theta[i][j] * yj as f64;
            }
        }
        s
    }

    /// `⟨x, Θy⟩ mod 2`. Each product `θ_ij · x_i y_j` is split exactly into a
    /// rounded part and its error, and the rounded part is reduced before
    /// summing, so large lattice points keep full phase accuracy.
    pub fn pairing_mod2(&self, x: &[i64], y: &[i64]) -> f64 {
        let mut s = 0.0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                let t = self.theta[i][j];
                if t == 0.0 || yj == 0 {
                    continue;
                }
                let n = (xi * yj) as f64;
                let hi = t * n;
                let lo = t.mul_add(n, -hi);
                s += hi.rem_euclid(2.0) + lo;
            }
        }
        s.rem_euclid(2.0)
    }

    pub fn eval(&self, x: &LatticePoint, y: &LatticePoint) -> Complex64 {
        self.eval_raw(&x.0, &y.0)
    }

    pub(crate) fn eval_raw(&self, x: &[i64], y: &[i64]) -> Complex64 {
        if self.is_trivial() {
            return Complex64::new(1.0, 0.0);
        }
        Complex64::from_polar(1.0, PI * self.pairing_mod2(x, y))
    }

    /// Largest deviation from the 2-cocycle identity
    /// `c(y,z)c(x,y+z) = c(x,y)c(x+y,z)`.
    pub fn identity_residual(&self, x: &LatticePoint, y: &LatticePoint, z: &LatticePoint) -> f64 {
        let lhs = self.eval(y, z) * self.eval(x, &(y + z));
        let rhs = self.eval(x, y) * self.eval(&(x + y), z);
        (lhs - rhs).norm()
    }
}
