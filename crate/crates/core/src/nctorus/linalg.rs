use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Something with a matrix-vector product and its adjoint.
pub trait LinearOperator {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn apply(&self, v: &[Complex64], out: &mut [Complex64]);
    fn apply_adjoint(&self, v: &[Complex64], out: &mut [Complex64]);

    /// Largest Euclidean column norm, a lower bound on the operator norm.
    fn max_column_norm(&self) -> f64;
}

/// Compressed sparse rows.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<Complex64>,
}

impl SparseMatrix {
    /// Builds from per-row entry lists.
    pub fn from_rows(n_cols: usize, rows: Vec<Vec<(usize, Complex64)>>) -> Self {
        let mut m = SparseMatrix { n_rows: rows.len(), n_cols, row_ptr: vec![0], ..Default::default() };
        for r in rows {
            for (c, v) in r {
                if v != Complex64::new(0.0, 0.0) {
                    m.col_idx.push(c);
                    m.values.push(v);
                }
            }
            m.row_ptr.push(m.col_idx.len());
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        (self.row_ptr[r]..self.row_ptr[r + 1])
            .find(|&k| self.col_idx[k] == c)
            .map(|k| self.values[k])
            .unwrap_or_default()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut d = DMatrix::zeros(self.n_rows, self.n_cols);
        for r in 0..self.n_rows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                d[(r, self.col_idx[k])] += self.values[k];
            }
        }
        d
    }
}

impl LinearOperator for SparseMatrix {
    fn rows(&self) -> usize {
        self.n_rows
    }

    fn cols(&self) -> usize {
        self.n_cols
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        for (r, o) in out.iter_mut().enumerate() {
            let mut s = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                s += self.values[k] * v[self.col_idx[k]];
            }
            *o = s;
        }
    }

    fn apply_adjoint(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        for (r, &vr) in v.iter().enumerate() {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                out[self.col_idx[k]] += self.values[k].conj() * vr;
            }
        }
    }

    fn max_column_norm(&self) -> f64 {
        let mut acc = vec![0.0; self.n_cols];
        for (k, v) in self.values.iter().enumerate() {
            acc[self.col_idx[k]] += v.norm_sqr();
        }
        acc.into_iter().fold(0.0, f64::max).sqrt()
    }
}

impl LinearOperator for DMatrix<Complex64> {
    fn rows(&self) -> usize {
        self.nrows()
    }

    fn cols(&self) -> usize {
        self.ncols()
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        let r = self * DVector::from_column_slice(v);
        out.copy_from_slice(r.as_slice());
    }

    fn apply_adjoint(&self, v: &[Complex64], out: &mut [Complex64]) {
        let r = self.adjoint() * DVector::from_column_slice(v);
        out.copy_from_slice(r.as_slice());
    }

    fn max_column_norm(&self) -> f64 {
        self.column_iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    DenseSvd,
    PowerIteration,
    Lanczos,
}

/// Largest singular value together with a unit vector nearly attaining it.
#[derive(Clone, Debug)]
pub struct NormResult {
    pub value: f64,
    pub vector: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(a: &mut [Complex64]) -> f64 {
    let n = norm(a);
    if n > 0.0 {
        a.iter_mut().for_each(|x| *x /= n);
    }
    n
}

fn random_start(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
    normalize(&mut v);
    v
}

fn start_vector(n: usize, warm: Option<&[Complex64]>) -> Vec<Complex64> {
    let mut v = random_start(n, 0x5eed);
    if let Some(w) = warm.filter(|w| w.len() == n && norm(w) > 0.0) {
        // mostly the warm vector, with a little of everything else
        let s = 1e-3;
        for (a, b) in v.iter_mut().zip(w) {
            *a = *b + *a * s;
        }
        normalize(&mut v);
    }
    v
}

/// `‖Av‖` for unit `v`.
fn rayleigh<A: LinearOperator + ?Sized>(a: &A, v: &[Complex64]) -> f64 {
    let mut w = vec![Complex64::new(0.0, 0.0); a.rows()];
    a.apply(v, &mut w);
    norm(&w)
}

pub fn dense_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Power iteration on `A*A`; `converged` is false when the cap is hit first.
pub fn power_iteration<A: LinearOperator + ?Sized>(a: &A, tol: f64, max_iter: usize, warm: Option<&[Complex64]>) -> NormResult {
    let n = a.cols();
    let mut v = start_vector(n, warm);
    let mut w = vec![Complex64::new(0.0, 0.0); a.rows()];
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    let mut prev = 0.0;
    for it in 1..=max_iter {
        a.apply(&v, &mut w);
        let sigma = norm(&w);
        a.apply_adjoint(&w, &mut u);
        if normalize(&mut u) == 0.0 {
            return NormResult { value: 0.0, vector: v, iterations: it, converged: true };
        }
        std::mem::swap(&mut u, &mut v);
        if (sigma - prev).abs() <= tol * sigma.max(1e-300) {
            return NormResult { value: sigma, vector: v, iterations: it, converged: true };
        }
        prev = sigma;
    }
    NormResult { value: prev, vector: v, iterations: max_iter, converged: false }
}

/// Lanczos on `A*A` with full reorthogonalization. The returned value is a
/// Ritz value, hence a lower bound for the norm.
pub fn lanczos<A: LinearOperator + ?Sized>(a: &A, tol: f64, max_iter: usize, warm: Option<&[Complex64]>) -> NormResult {
    let n = a.cols();
    if n == 0 {
        return NormResult { value: 0.0, vector: vec![], iterations: 0, converged: true };
    }
    let k_max = max_iter.min(n);
    let mut q: Vec<Vec<Complex64>> = vec![start_vector(n, warm)];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut tmp = vec![Complex64::new(0.0, 0.0); a.rows()];
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    let mut prev = 0.0;
    let mut best = (0.0, q[0].clone());
    let mut converged = false;
    for j in 0..k_max {
        a.apply(&q[j], &mut tmp);
        a.apply_adjoint(&tmp, &mut w);
        let aj = dot(&q[j], &w).re;
        alpha.push(aj);
        for _ in 0..2 {
            for qi in &q {
                let h = dot(qi, &w);
                w.iter_mut().zip(qi).for_each(|(x, y)| *x -= h * y);
            }
        }
        let bj = norm(&w);
        let check = j + 1 == k_max || bj <= 1e-14 * aj.abs().max(1e-300) || (j + 1) % 4 == 0;
        if check {
            let (theta, y) = top_eig(&alpha, &beta);
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            for (c, qi) in y.iter().zip(&q) {
                v.iter_mut().zip(qi).for_each(|(x, z)| *x += *c * z);
            }
            normalize(&mut v);
            let sigma = theta.max(0.0).sqrt();
            if sigma >= best.0 {
                best = (sigma, v);
            }
            if (sigma - prev).abs() <= tol * sigma.max(1e-300) || bj <= 1e-14 * aj.abs().max(1e-300) {
                converged = true;
                break;
            }
            prev = sigma;
        }
        if j + 1 == k_max {
            break;
        }
        beta.push(bj);
        q.push(w.iter().map(|x| x / bj).collect());
    }
    let (value, vector) = best;
    // the Ritz vector gives a direct lower bound as well
    let direct = rayleigh(a, &vector);
    NormResult { value: value.max(direct), vector, iterations: alpha.len(), converged }
}

/// Largest eigenpair of the symmetric tridiagonal matrix.
fn top_eig(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let k = alpha.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = t.symmetric_eigen();
    let (i, &theta) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    (theta, eig.eigenvectors.column(i).iter().copied().collect())
}

/// Largest singular value by the chosen method. Power iteration that fails to
/// converge falls back to the dense SVD.
pub fn op_norm(m: &DMatrix<Complex64>, method: NormMethod, tol: f64) -> f64 {
    match method {
        NormMethod::DenseSvd => dense_norm(m),
        NormMethod::PowerIteration => {
            let r = power_iteration(m, tol, 100_000, None);
            if r.converged {
                r.value
            } else {
                log::warn!("power iteration did not converge in {} steps; using dense SVD", r.iterations);
                dense_norm(m)
            }
        }
        NormMethod::Lanczos => lanczos(m, tol, m.ncols(), None).value,
    }
}

/// Norm estimate for a large operator: the best of the Lanczos Ritz value,
/// the warm vector's Rayleigh value and the largest column norm. Every
/// candidate is a lower bound.
pub fn estimate_norm<A: LinearOperator + ?Sized>(a: &A, tol: f64, max_iter: usize, warm: Option<&[Complex64]>) -> NormResult {
    let mut r = lanczos(a, tol, max_iter, warm);
    if let Some(w) = warm.filter(|w| w.len() == a.cols()) {
        let mut w = w.to_vec();
        if normalize(&mut w) > 0.0 {
            let v = rayleigh(a, &w);
            if v > r.value {
                r.value = v;
                r.vector = w;
            }
        }
    }
    r.value = r.value.max(a.max_column_norm());
    r
}

/// Random complex matrix with entries uniform in the unit square.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> DMatrix<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}
