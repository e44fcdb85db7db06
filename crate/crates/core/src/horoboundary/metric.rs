use std::fmt::Debug;

use crate::lattice::{LatticePoint, LengthOracle};

/// A group with a left-invariant length, `ρ(x, y) = ℓ(x⁻¹y)`.
pub trait GroupMetric {
    type Elem: Clone + Eq + Ord + Debug;

    fn identity(&self) -> Self::Elem;
    fn length(&self, x: &Self::Elem) -> f64;
    fn compose(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inverse(&self, x: &Self::Elem) -> Self::Elem;
    /// Integer-valued lengths allow exact comparisons.
    fn is_integral(&self) -> bool;

    fn distance(&self, x: &Self::Elem, y: &Self::Elem) -> f64 {
        self.length(&self.compose(&self.inverse(x), y))
    }

    /// `φ_y(x) = ℓ(x) - ℓ(y⁻¹x)`.
    fn phi(&self, y: &Self::Elem, x: &Self::Elem) -> f64 {
        self.length(x) - self.length(&self.compose(&self.inverse(y), x))
    }

    fn values_equal(&self, a: f64, b: f64) -> bool {
        if self.is_integral() {
            a == b
        } else {
            (a - b).abs() <= 1e-9
        }
    }
}

impl GroupMetric for LengthOracle {
    type Elem = LatticePoint;

    fn identity(&self) -> LatticePoint {
        LatticePoint::zero(self.dim())
    }

    fn length(&self, x: &LatticePoint) -> f64 {
        LengthOracle::length(self, x)
    }

    fn compose(&self, x: &LatticePoint, y: &LatticePoint) -> LatticePoint {
        x + y
    }

    fn inverse(&self, x: &LatticePoint) -> LatticePoint {
        -x
    }

    fn is_integral(&self) -> bool {
        LengthOracle::is_integral(self)
    }

    fn distance(&self, x: &LatticePoint, y: &LatticePoint) -> f64 {
        LengthOracle::length(self, &(y - x))
    }

    fn phi(&self, y: &LatticePoint, x: &LatticePoint) -> f64 {
        crate::lattice::phi(self, y, x)
    }
}

/// The sum length `ℓ(x, y) = ℓ_X(x) + ℓ_Y(y)` on `Z^{d1} × Z^{d2}`.
pub struct SumMetric<'a> {
    pub left: &'a LengthOracle,
    pub right: &'a LengthOracle,
}

impl SumMetric<'_> {
    pub fn split(&self, x: &LatticePoint) -> (LatticePoint, LatticePoint) {
        let d1 = self.left.dim();
        (LatticePoint(x.0[..d1].to_vec()), LatticePoint(x.0[d1..].to_vec()))
    }
}

pub fn join(a: &LatticePoint, b: &LatticePoint) -> LatticePoint {
    LatticePoint(a.0.iter().chain(&b.0).copied().collect())
}

impl GroupMetric for SumMetric<'_> {
    type Elem = LatticePoint;

    fn identity(&self) -> LatticePoint {
        LatticePoint::zero(self.left.dim() + self.right.dim())
    }

    fn length(&self, x: &LatticePoint) -> f64 {
        let (a, b) = self.split(x);
        self.left.length(&a) + self.right.length(&b)
    }

    fn compose(&self, x: &LatticePoint, y: &LatticePoint) -> LatticePoint {
        x + y
    }

    fn inverse(&self, x: &LatticePoint) -> LatticePoint {
        -x
    }

    fn is_integral(&self) -> bool {
        self.left.is_integral() && self.right.is_integral()
    }
}
