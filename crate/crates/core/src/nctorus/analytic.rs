use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{a_norm, l_ell, AlgebraElement, Cocycle, Truncation};
use crate::error::{Error, Result};
use crate::lattice::{pt, CoefficientFunction, LatticePoint, LengthOracle};

const HEAD_TERMS: u64 = 1 << 16;

/// Upper bound for `m(h) = ‖ℓ_β^{-1} g‖₂` with `g(n) = e^{int} - e^{ins}`,
/// `h = |t - s|`: the first terms summed exactly, the rest bounded by
/// integrals.
pub fn holder_modulus(beta: f64, h: f64) -> Result<f64> {
    if !(beta > 0.5 && beta <= 1.0) {
        return Err(Error::OutOfRegime(beta));
    }
    let hp = (h / (2.0 * PI)).abs();
    if hp == 0.0 {
        return Ok(0.0);
    }
    let n_head = HEAD_TERMS as f64;
    let mut head = 0.0;
    for n in 1..=HEAD_TERMS {
        let nf = n as f64;
        head += (PI * nf * hp).sin().powi(2) / nf.powf(2.0 * beta);
    }
    // sin² ≤ (πnh)² up to K = 1/(πh), sin² ≤ 1 beyond
    let k = 1.0 / (PI * hp);
    let p = 3.0 - 2.0 * beta;
    let near = if k > n_head { PI * PI * hp * hp * ((k + 1.0).powf(p) - n_head.powf(p)) / p } else { 0.0 };
    let far = n_head.max(k.floor()).powf(1.0 - 2.0 * beta) / (2.0 * beta - 1.0);
    Ok((8.0 * (head + near + far)).sqrt())
}

/// `sup_{n ≠ 0} ℓ_β(n) / ω(n)` over `1 ≤ |n| ≤ 4096`.
pub fn weight_ratio(beta: f64, omega: &LengthOracle) -> f64 {
    (1..=4096i64)
        .flat_map(|n| [n, -n])
        .map(|n| (n.abs() as f64).powf(beta) / omega.length(&pt(&[n])))
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolderReport {
    pub s: f64,
    pub t: f64,
    pub lhs: f64,
    pub modulus: f64,
    pub weight_ratio: f64,
    pub l_omega: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `|f̂(t) - f̂(s)| ≤ m(s,t) ‖ℓ_β/ω‖_∞ L_ω(f)` in dimension one.
pub fn holder_check(f: &AlgebraElement, beta: f64, omega: &LengthOracle, s: f64, t: f64, trunc: &Truncation) -> Result<HolderReport> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: f.dim() });
    }
    holder_modulus(beta, 0.0)?;
    holder_bound(f, beta, weight_ratio(beta, omega), l_ell(f, omega, trunc).value, s, t)
}

/// [`holder_check`] with the weight ratio and `L_ω(f)` already known.
pub fn holder_bound(f: &AlgebraElement, beta: f64, weight_ratio: f64, l_omega: f64, s: f64, t: f64) -> Result<HolderReport> {
    let modulus = holder_modulus(beta, t - s)?;
    let lhs = (f.fourier(&[t]) - f.fourier(&[s])).norm();
    let rhs = modulus * weight_ratio * l_omega;
    Ok(HolderReport { s, t, lhs, modulus, weight_ratio, l_omega, rhs, pass: lhs <= rhs * (1.0 + 1e-12) + 1e-14 })
}

/// Largest `δ` found with `m(h) ≤ eps` for all sampled `h ≤ δ`: bisection,
/// then a check on a 64-point grid, halving `δ` until the grid passes.
pub fn holder_delta(beta: f64, eps: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0, PI);
    if holder_modulus(beta, hi)? <= eps {
        lo = hi;
    } else {
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            if holder_modulus(beta, mid)? <= eps {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let mut delta = lo;
    loop {
        let mut ok = true;
        for i in 1..=64 {
            if holder_modulus(beta, delta * i as f64 / 64.0)? > eps {
                ok = false;
                break;
            }
        }
        if ok || delta == 0.0 {
            return Ok(delta);
        }
        delta *= 0.5;
    }
}

/// `max_{lo ≤ n ≤ hi} |φ_p(n)|`.
pub fn phi_sup(l: &LengthOracle, p: i64, lo: i64, hi: i64) -> f64 {
    (lo..=hi).map(|n| crate::lattice::phi(l, &pt(&[p]), &pt(&[n])).abs()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusProbe {
    /// Largest sampled `‖f‖ / L(f)`, with both sides truncated estimates.
    pub estimate: f64,
    /// Largest `‖f‖_trunc / ‖ℓf‖₁`, a certified lower bound on the best constant.
    pub certified: f64,
    pub best: CoefficientFunction,
    pub samples: usize,
    /// `ℓ(x) ≥ 1/(2k)` for every nonzero `x` of the sampled ball.
    pub consistent: bool,
}

fn random_element(radius: i64, rng: &mut ChaCha8Rng, c: &Cocycle) -> AlgebraElement {
    let mut f = AlgebraElement::random(c, radius, rng);
    f.coeffs.set(LatticePoint::zero(c.dim()), Complex64::new(0.0, 0.0));
    f
}

/// Samples `f` with `f(0) = 0`, every `δ_x` of the ball among them, and
/// improves the best ratio `‖f‖ / L(f)` by coordinate ascent.
pub fn radius_probe(l: &LengthOracle, c: &Cocycle, support_radius: i64, n_samples: usize, seed: u64, trunc: &Truncation) -> RadiusProbe {
    let dim = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<AlgebraElement> = LatticePoint::cube(dim, support_radius)
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(|x| AlgebraElement::delta(x, c.clone()))
        .collect();
    for _ in 0..n_samples {
        candidates.push(random_element(support_radius, &mut rng, c));
    }
    let ratio = |f: &AlgebraElement| -> (f64, f64) {
        let a = a_norm(f, trunc).value;
        let le = l_ell(f, l, trunc).value;
        let upper = super::weighted_norms(f, l).0;
        (if le > 0.0 { a / le } else { 0.0 }, if upper > 0.0 { a / upper } else { 0.0 })
    };
    let mut best = (0.0, candidates[0].clone());
    let mut certified: f64 = 0.0;
    for f in &candidates {
        let (r, cert) = ratio(f);
        certified = certified.max(cert);
        if r > best.0 {
            best = (r, f.clone());
        }
    }
    let support: Vec<LatticePoint> = LatticePoint::cube(dim, support_radius).into_iter().filter(|x| !x.is_zero()).collect();
    let mut step = 0.5;
    for _ in 0..3 {
        for x in &support {
            for dir in [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)] {
                let mut g = best.1.clone();
                g.coeffs.add_at(x.clone(), dir * step);
                if g.is_zero() {
                    continue;
                }
                let (r, cert) = ratio(&g);
                certified = certified.max(cert);
                if r > best.0 {
                    best = (r, g);
                }
            }
        }
        step *= 0.5;
    }
    let k = best.0;
    let consistent = support.iter().all(|x| l.length(x) >= 1.0 / (2.0 * k));
    RadiusProbe { estimate: k, certified, best: best.1.coeffs, samples: candidates.len(), consistent }
}
