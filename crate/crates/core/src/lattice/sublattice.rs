//! Integer row-echelon (Hermite) bases for subgroups of Z^d.
//!
//! The basis rows are in row-style Hermite normal form: each row has a
//! positive pivot strictly to the right of the previous row's pivot, and the
//! entries above a pivot are reduced into `[0, pivot)`.

use super::LatticePoint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    dim: usize,
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl Sublattice {
    /// The subgroup generated by `gens`.
    pub fn generated_by(dim: usize, gens: &[LatticePoint]) -> Self {
        let mut m: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| g.0.iter().map(|&c| c as i128).collect())
            .collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..dim {
            // Euclid on column `col` across rows top..
            loop {
                let nz: Vec<usize> = (top..m.len()).filter(|&r| m[r][col] != 0).collect();
                if nz.len() <= 1 {
                    if let Some(&r) = nz.first() {
                        m.swap(top, r);
                    }
                    break;
                }
                let (r0, r1) = (nz[0], nz[1]);
                let (a, b) = (m[r0][col], m[r1][col]);
                let (g, x, y) = ext_gcd(a, b);
                let (p, q) = (a / g, b / g);
                let new0: Vec<i128> = (0..dim).map(|j| x * m[r0][j] + y * m[r1][j]).collect();
                let new1: Vec<i128> = (0..dim).map(|j| -q * m[r0][j] + p * m[r1][j]).collect();
                m[r0] = new0;
                m[r1] = new1;
            }
            if top < m.len() && m[top][col] != 0 {
                if m[top][col] < 0 {
                    for v in m[top].iter_mut() {
                        *v = -*v;
                    }
                }
                pivots.push(col);
                top += 1;
            }
        }
        m.truncate(top);
        for (i, &pc) in pivots.iter().enumerate() {
            let piv = m[i][pc];
            for k in 0..i {
                let f = m[k][pc].div_euclid(piv);
                if f != 0 {
                    for j in 0..dim {
                        m[k][j] -= f * m[i][j];
                    }
                }
            }
        }
        rows.extend(m);
        Sublattice { dim, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<LatticePoint> {
        self.rows
            .iter()
            .map(|r| LatticePoint(r.iter().map(|&c| c as i64).collect()))
            .collect()
    }

    /// `[Z^d : self]`, or `None` when the rank is deficient.
    pub fn index(&self) -> Option<u64> {
        if self.rank() < self.dim {
            return None;
        }
        Some(
            self.pivots
                .iter()
                .enumerate()
                .map(|(i, &c)| self.rows[i][c] as u64)
                .product(),
        )
    }

    fn reduce(&self, x: &LatticePoint) -> Vec<i128> {
        let mut v: Vec<i128> = x.0.iter().map(|&c| c as i128).collect();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = v[pc].div_euclid(self.rows[i][pc]);
            if f != 0 {
                for j in 0..self.dim {
                    v[j] -= f * self.rows[i][j];
                }
            }
        }
        v
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        self.reduce(x).iter().all(|&c| c == 0)
    }

    /// Canonical representative of the coset `x + self`. Two points lie in
    /// the same coset iff their canonical representatives agree.
    pub fn canonical(&self, x: &LatticePoint) -> LatticePoint {
        LatticePoint(self.reduce(x).into_iter().map(|c| c as i64).collect())
    }
}
