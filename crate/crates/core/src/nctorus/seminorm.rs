use num_complex::Complex64;
use num_traits::Signed;
use serde::Serialize;

use super::trunc::{truncated_commutator, truncated_pi_on, BoxIndex};
use super::{estimate_norm, AlgebraElement};
use crate::convexgeom::{facets, Face};
use crate::error::{Error, Result};
use crate::horoboundary::{default_window, orbit, BusemannRecord};
use crate::lattice::{rat_f64, GeneratingSet, LatticePoint, LengthKind, LengthOracle, NormSpec};

/// Doubling schedule for box radii, from `r_start` up to `r_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Truncation {
    pub r_start: i64,
    pub r_max: i64,
    /// Stop once the relative increment between consecutive radii drops
    /// below this. Zero runs the whole schedule.
    pub tol: f64,
    pub lanczos_iter: usize,
    /// Relative change of the Ritz value at which Lanczos stops.
    pub lanczos_tol: f64,
}

impl Truncation {
    pub fn for_dim(dim: usize) -> Self {
        let r_max = match dim {
            1 => 256,
            2 => 48,
            _ => 8,
        };
        Truncation { r_start: 8, r_max, tol: 1e-3, lanczos_iter: 200, lanczos_tol: 1e-10 }
    }

    pub fn fixed(r: i64) -> Self {
        Truncation { r_start: r, r_max: r, tol: 0.0, lanczos_iter: 200, lanczos_tol: 1e-10 }
    }

    pub fn radii(&self, min_radius: i64) -> Vec<i64> {
        let top = self.r_max.max(min_radius);
        let mut r = self.r_start.max(min_radius).min(top);
        let mut out = Vec::new();
        while r < top {
            out.push(r);
            r *= 2;
        }
        out.push(top);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeminormEstimate {
    pub value: f64,
    pub lower_companion: f64,
    pub upper_companion: f64,
    pub trace: Vec<(i64, f64)>,
    pub converged: bool,
    pub tol: f64,
}

impl SeminormEstimate {
    pub fn sandwiched(&self, rel: f64) -> bool {
        self.lower_companion <= self.value * (1.0 + 1e-12) + 1e-12 && self.value <= self.upper_companion * (1.0 + rel) + 1e-12
    }

    pub fn trace_monotone(&self) -> bool {
        self.trace.windows(2).all(|w| w[1].1 >= w[0].1)
    }
}

struct Probe {
    bx_at: Box<dyn Fn(i64) -> BoxIndex>,
    warm: Option<(BoxIndex, Vec<Complex64>)>,
}

/// Runs the schedule, taking at each radius the largest estimate over the
/// probes, with a running maximum so the trace is nondecreasing.
fn run_schedule<B>(
    trunc: &Truncation,
    min_radius: i64,
    probes: &mut [Probe],
    build: B,
    lower: f64,
    upper: f64,
) -> SeminormEstimate
where
    B: Fn(&BoxIndex) -> super::SparseMatrix,
{
    let mut trace = Vec::new();
    let mut value: f64 = 0.0;
    let mut converged = false;
    for r in trunc.radii(min_radius) {
        let mut best: f64 = 0.0;
        for p in probes.iter_mut() {
            let bx = (p.bx_at)(r);
            let m = build(&bx);
            let warm = p.warm.as_ref().map(|(old, v)| old.transfer(v, &bx));
            let res = estimate_norm(&m, trunc.lanczos_tol, trunc.lanczos_iter, warm.as_deref());
            best = best.max(res.value);
            p.warm = Some((bx, res.vector));
        }
        let prev = value;
        value = value.max(best);
        trace.push((r, value));
        if trace.len() >= 2 && trunc.tol > 0.0 && value - prev <= trunc.tol * value {
            converged = true;
            break;
        }
    }
    SeminormEstimate { value, lower_companion: lower, upper_companion: upper, trace, converged, tol: trunc.tol }
}

fn centered_probe(dim: usize) -> Probe {
    Probe { bx_at: Box::new(move |r| BoxIndex::centered(dim, r)), warm: None }
}

/// Truncated estimate of the reduced norm `‖π_f‖`.
pub fn a_norm(f: &AlgebraElement, trunc: &Truncation) -> SeminormEstimate {
    if f.is_zero() {
        return SeminormEstimate { value: 0.0, lower_companion: 0.0, upper_companion: 0.0, trace: vec![], converged: true, tol: trunc.tol };
    }
    let mut probes = [centered_probe(f.dim())];
    run_schedule(trunc, f.coeffs.support_radius(), &mut probes, |bx| truncated_pi_on(f, bx).matrix, f.l2(), f.l1())
}

/// Generating set whose hull is the unit ball of the length's polytope, when
/// the length has one.
pub fn polytope_set(l: &LengthOracle) -> Option<GeneratingSet> {
    match l.kind() {
        LengthKind::Word(s) => Some(s.clone()),
        LengthKind::NormRestriction(NormSpec::Gauge(s)) => Some(s.clone()),
        LengthKind::NormRestriction(NormSpec::L1) => Some(GeneratingSet::standard(l.dim())),
        LengthKind::NormRestriction(NormSpec::LInf) => {
            let pts: Vec<LatticePoint> = LatticePoint::cube(l.dim(), 1).into_iter().filter(|p| !p.is_zero()).collect();
            GeneratingSet::new(l.dim(), pts).ok()
        }
        _ => None,
    }
}

/// Center `λ z_F` such that the radius-`r` box around it lies in the cone
/// where the facet functional is the largest.
fn cone_center(face: &Face, all: &[Face], r: i64, word: bool) -> LatticePoint {
    let d = face.dim();
    let sig = |g: &Face, x: &[f64]| -> f64 { g.sigma.to_f64().iter().zip(x).map(|(a, b)| a * b).sum() };
    let corners: Vec<Vec<f64>> = (0..1usize << d)
        .map(|m| (0..d).map(|k| if m >> k & 1 == 1 { r as f64 } else { -r as f64 }).collect())
        .collect();
    let mut lambda = 1i64;
    loop {
        let c = face.z_f.scale(lambda).as_f64();
        let ok = corners.iter().all(|b| {
            let x: Vec<f64> = c.iter().zip(b).map(|(p, q)| p + q).collect();
            let top = sig(face, &x);
            all.iter().all(|g| sig(g, &x) <= top + 1e-12)
        });
        if ok {
            let lambda = if word { 2 * lambda + r } else { lambda };
            return face.z_f.scale(lambda);
        }
        lambda *= 2;
    }
}

/// `‖ℓf‖_p` for `p = 1, 2`.
pub fn weighted_norms(f: &AlgebraElement, l: &LengthOracle) -> (f64, f64) {
    let w: Vec<f64> = f.coeffs.iter().map(|(x, v)| l.length(x) * v.norm()).collect();
    (w.iter().sum(), w.iter().map(|a| a * a).sum::<f64>().sqrt())
}

/// Truncated estimate of `L_ℓ(f) = ‖[M_ℓ, π_f]‖`.
///
/// Besides the centered boxes, boxes deep inside each facet cone of the
/// length's polytope are probed. All compressions give lower bounds.
pub fn l_ell(f: &AlgebraElement, l: &LengthOracle, trunc: &Truncation) -> SeminormEstimate {
    let (upper, lower) = weighted_norms(f, l);
    if f.is_zero() {
        return SeminormEstimate { value: 0.0, lower_companion: 0.0, upper_companion: 0.0, trace: vec![], converged: true, tol: trunc.tol };
    }
    let dim = f.dim();
    let mut probes = vec![centered_probe(dim)];
    let top = trunc.r_max.max(f.coeffs.support_radius());
    let word = matches!(l.kind(), LengthKind::Word(_));
    if let Some(s) = polytope_set(l) {
        if let Ok(fs) = facets(&s) {
            for face in &fs {
                let c = cone_center(face, &fs, top, word);
                probes.push(Probe { bx_at: Box::new(move |r| BoxIndex { center: c.clone(), radius: r }), warm: None });
            }
        }
    }
    run_schedule(trunc, f.coeffs.support_radius(), &mut probes, |bx| truncated_commutator(f, l, bx).matrix, lower, upper)
}

/// `max_F ‖X_{σ_F} f‖` over the given faces.
pub fn df_norm(f: &AlgebraElement, faces: &[Face], trunc: &Truncation) -> Result<f64> {
    if faces.is_empty() {
        return Err(Error::NoFacets);
    }
    let mut best: f64 = 0.0;
    for face in faces {
        best = best.max(a_norm(&f.x_sigma(&face.sigma)?, trunc).value);
    }
    Ok(best)
}

/// `sup_t |Σ f(k) e^{i⟨k,t⟩}|` over a uniform grid on the torus.
pub fn fourier_sup(f: &AlgebraElement, points_per_dim: usize) -> f64 {
    let d = f.dim();
    let step = 2.0 * std::f64::consts::PI / points_per_dim as f64;
    let total = points_per_dim.pow(d as u32);
    let mut t = vec![0.0; d];
    let mut best: f64 = 0.0;
    for mut i in 0..total {
        for tk in t.iter_mut() {
            *tk = (i % points_per_dim) as f64 * step;
            i /= points_per_dim;
        }
        best = best.max(f.fourier(&t).norm());
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CosetConstant {
    pub q: LatticePoint,
    pub sigma_q: String,
    /// `φ_q` across the orbit.
    pub psi: Vec<f64>,
    pub m1: f64,
    pub m2: f64,
    pub k_q: f64,
    /// Same, with `(|σ(q) - m1| + |σ(q) - m2|) / |m1 - m2|`.
    pub k_q_corrected: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceConstant {
    pub face: Vec<LatticePoint>,
    pub k_f: f64,
    pub k_f_corrected: f64,
    pub cosets: Vec<CosetConstant>,
}

fn best_pair<F: Fn(f64, f64) -> f64>(vals: &[f64], cost: F) -> (f64, f64, f64) {
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for (i, &a) in vals.iter().enumerate() {
        for &b in &vals[i + 1..] {
            let k = cost(a, b);
            if k < best.0 {
                best = (k, a, b);
            }
        }
    }
    best
}

/// Constants `k_q` for each coset representative and `k_F = 1 + Σ_{q≠0} |σ(q)| k_q`,
/// where `k_q` minimizes `(|m1| + |m2|) / |m1 - m2|` over distinct values of
/// `φ_q` on the orbit.
pub fn k_constants(record: &BusemannRecord) -> Result<FaceConstant> {
    let face = &record.face;
    if !record.orbit_complete {
        return Err(Error::Precondition("orbit is not complete".into()));
    }
    let mut cosets = Vec::new();
    let mut k_f = 1.0;
    let mut k_c = 1.0;
    for q in face.coset_reps.iter().filter(|q| !q.is_zero()) {
        let mut psi = Vec::new();
        for w in &record.orbit {
            psi.push(w.get(q).ok_or_else(|| Error::Precondition(format!("window misses {q}")))?);
        }
        let mut vals = psi.clone();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        if vals.len() < 2 {
            return Err(Error::ConstantPsi(q.0.clone()));
        }
        let sq = face.sigma_at(q);
        let s = rat_f64(&sq);
        let (k_q, m1, m2) = best_pair(&vals, |a, b| (a.abs() + b.abs()) / (a - b).abs());
        let (k_qc, _, _) = best_pair(&vals, |a, b| ((s - a).abs() + (s - b).abs()) / (a - b).abs());
        k_f += rat_f64(&sq.abs()) * k_q;
        k_c += k_qc;
        cosets.push(CosetConstant { q: q.clone(), sigma_q: sq.to_string(), psi, m1, m2, k_q, k_q_corrected: k_qc });
    }
    Ok(FaceConstant { face: face.members.clone(), k_f, k_f_corrected: k_c, cosets })
}

/// `max_F k_F` over the facets of a word length, with the per-facet data.
pub fn word_constant(l: &LengthOracle) -> Result<(f64, Vec<FaceConstant>)> {
    let s = match l.kind() {
        LengthKind::Word(s) => s.clone(),
        _ => return Err(Error::Precondition("word length expected".into())),
    };
    let mut out = Vec::new();
    for face in facets(&s)? {
        let w = default_window(&face, l);
        let run = crate::horoboundary::default_run_length(&face, l, &w);
        out.push(k_constants(&orbit(l, &face, &w, run)?)?);
    }
    let k = out.iter().map(|c| c.k_f).fold(0.0, f64::max);
    Ok((k, out))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub length: String,
    pub df_norm: f64,
    pub l_ell: f64,
    pub k: f64,
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Checks `‖df‖ ≤ k L_ℓ(f)` with `k = 1` for norm restrictions and the
/// supplied constant for word lengths.
pub fn main_inequality_check(f: &AlgebraElement, l: &LengthOracle, k: f64, trunc: &Truncation, tol: f64) -> Result<InequalityReport> {
    let s = polytope_set(l).ok_or(Error::NoFacets)?;
    let fs = facets(&s)?;
    let k = if matches!(l.kind(), LengthKind::Word(_)) { k } else { 1.0 };
    let df = df_norm(f, &fs, trunc)?;
    let le = l_ell(f, l, trunc).value;
    let bound = k * le;
    Ok(InequalityReport {
        length: l.label(),
        df_norm: df,
        l_ell: le,
        k,
        bound,
        slack: bound - df,
        pass: df <= bound * (1.0 + tol) + 1e-12,
    })
}
