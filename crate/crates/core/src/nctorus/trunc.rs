use num_complex::Complex64;

use super::{AlgebraElement, SparseMatrix};
use crate::lattice::{LatticePoint, LengthOracle};

/// The box `center + [-R, R]^d` with a fixed enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxIndex {
    pub center: LatticePoint,
    pub radius: i64,
}

impl BoxIndex {
    pub fn centered(dim: usize, radius: i64) -> Self {
        BoxIndex { center: LatticePoint::zero(dim), radius }
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn side(&self) -> usize {
        (2 * self.radius + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.side().pow(self.dim() as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, x: &[i64]) -> Option<usize> {
        let mut i = 0usize;
        for (a, c) in x.iter().zip(&self.center.0) {
            let off = a - c + self.radius;
            if off < 0 || off > 2 * self.radius {
                return None;
            }
            i = i * self.side() + off as usize;
        }
        Some(i)
    }

    pub fn point(&self, mut i: usize) -> LatticePoint {
        let side = self.side();
        let mut v = vec![0i64; self.dim()];
        for k in (0..self.dim()).rev() {
            v[k] = (i % side) as i64 - self.radius + self.center.0[k];
            i /= side;
        }
        LatticePoint(v)
    }

    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// Carries a vector on `self` over to `other`, dropping what falls out.
    pub fn transfer(&self, v: &[Complex64], other: &BoxIndex) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); other.len()];
        for (i, &a) in v.iter().enumerate() {
            if a != Complex64::new(0.0, 0.0) {
                if let Some(j) = other.index(&self.point(i).0) {
                    out[j] = a;
                }
            }
        }
        out
    }
}

/// The regular representation of an element compressed to a box.
#[derive(Clone, Debug)]
pub struct TruncatedRep {
    pub bx: BoxIndex,
    pub matrix: SparseMatrix,
}

impl TruncatedRep {
    pub fn box_radius(&self) -> i64 {
        self.bx.radius
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<Complex64> {
        self.matrix.to_dense()
    }
}

/// Matrix with entries `w(x, z) f(x - z) c(x - z, z)` on the box.
fn build<W: Fn(usize, usize) -> f64>(f: &AlgebraElement, bx: &BoxIndex, weight: W) -> SparseMatrix {
    let support: Vec<(&LatticePoint, Complex64)> = f.coeffs.iter().map(|(s, &v)| (s, v)).collect();
    let n = bx.len();
    let mut rows = Vec::with_capacity(n);
    let mut z = vec![0i64; bx.dim()];
    for i in 0..n {
        let x = bx.point(i);
        let mut row = Vec::with_capacity(support.len());
        for (s, v) in &support {
            for k in 0..z.len() {
                z[k] = x.0[k] - s.0[k];
            }
            if let Some(j) = bx.index(&z) {
                let w = weight(i, j);
                if w != 0.0 {
                    row.push((j, *v * f.cocycle.eval_raw(&s.0, &z) * w));
                }
            }
        }
        row.sort_by_key(|e| e.0);
        rows.push(row);
    }
    SparseMatrix::from_rows(n, rows)
}

/// `π_f` compressed to `[-R, R]^d`: `M[x, z] = f(x - z) c(x - z, z)`.
pub fn truncated_pi(f: &AlgebraElement, radius: i64) -> TruncatedRep {
    let bx = BoxIndex::centered(f.dim(), radius);
    TruncatedRep { matrix: build(f, &bx, |_, _| 1.0), bx }
}

/// `π_f` compressed to an arbitrary box.
pub fn truncated_pi_on(f: &AlgebraElement, bx: &BoxIndex) -> TruncatedRep {
    TruncatedRep { matrix: build(f, bx, |_, _| 1.0), bx: bx.clone() }
}

/// `[M_ℓ, π_f]` compressed to the box: entries `(ℓ(x) - ℓ(z)) f(x - z) c(x - z, z)`.
pub fn truncated_commutator(f: &AlgebraElement, l: &LengthOracle, bx: &BoxIndex) -> TruncatedRep {
    let lengths: Vec<f64> = bx.points().map(|p| l.length(&p)).collect();
    TruncatedRep { matrix: build(f, bx, |i, j| lengths[i] - lengths[j]), bx: bx.clone() }
}

/// The radius-`r` matrix is the compression of the radius-`r2` matrix.
pub fn compression_consistent(f: &AlgebraElement, r: i64, r2: i64) -> bool {
    let small = truncated_pi(f, r);
    let big = truncated_pi(f, r2);
    (0..small.bx.len()).all(|i| {
        let bi = big.bx.index(&small.bx.point(i).0).expect("nested boxes");
        (0..small.bx.len()).all(|j| {
            let bj = big.bx.index(&small.bx.point(j).0).expect("nested boxes");
            (small.matrix.get(i, j) - big.matrix.get(bi, bj)).norm() < 1e-15
        })
    })
}
