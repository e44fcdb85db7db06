use num_rational::Rational64;
use serde::Serialize;

use super::{ray_limit_window, translate_window, HorofunctionWindow, RaySample};
use crate::convexgeom::Face;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LengthOracle};

/// Ray through the face: `γ(|F|n + j) = n·z_F + s_1 + … + s_j`, shifted by
/// `shift`. Sampled at `0..=horizon` and once more at `2·horizon`.
pub fn face_ray(face: &Face, horizon: usize, shift: &LatticePoint) -> RaySample<LatticePoint> {
    let k = face.members.len();
    let at = |j: usize| {
        let mut x = shift + &face.z_f.scale((j / k) as i64);
        for s in &face.members[..j % k] {
            x = &x + s;
        }
        x
    };
    let mut steps: Vec<usize> = (0..=horizon).collect();
    steps.push(2 * horizon.max(1));
    let domain = steps.iter().map(|&j| j as f64).collect();
    let points = steps.iter().map(|&j| at(j)).collect();
    let label = if shift.is_zero() {
        format!("face ray {:?}", face.members)
    } else {
        format!("face ray {:?} shifted by {shift}", face.members)
    };
    RaySample::new(domain, points, label)
}

/// `16·|F|·(1 + max ℓ(y))` over the window.
pub fn default_run_length(face: &Face, l: &LengthOracle, window: &[LatticePoint]) -> usize {
    let m = window.iter().map(|y| l.length(y)).fold(0.0, f64::max);
    16 * face.members.len() * (1 + m.ceil() as usize)
}

/// Word ball of radius `3 + diam(Q)`.
pub fn default_window(face: &Face, l: &LengthOracle) -> Vec<LatticePoint> {
    let q = &face.coset_reps;
    let diam = q
        .iter()
        .flat_map(|a| q.iter().map(move |b| l.length(&(a - b))))
        .fold(0.0, f64::max);
    l.ball(3.0 + diam)
}

fn require_word(l: &LengthOracle, face: &Face) -> Result<()> {
    match l.generating_set() {
        Some(s) if l.is_integral() && face.members.iter().all(|m| s.contains(m)) => Ok(()),
        _ => Err(Error::Precondition("face rays need the word length of the set owning the face".into())),
    }
}

/// Window of `b_F` along the face ray. Every stabilized value at a point of
/// `G_F` is checked against the support functional.
pub fn busemann_from_face(
    l: &LengthOracle,
    face: &Face,
    window: &[LatticePoint],
    run_length: usize,
) -> Result<HorofunctionWindow<LatticePoint>> {
    shifted_busemann(l, face, &LatticePoint::zero(face.dim()), window, run_length)
}

fn shifted_busemann(
    l: &LengthOracle,
    face: &Face,
    shift: &LatticePoint,
    window: &[LatticePoint],
    run_length: usize,
) -> Result<HorofunctionWindow<LatticePoint>> {
    require_word(l, face)?;
    let ray = face_ray(face, 2 * run_length, shift);
    let w = ray_limit_window(l, &ray, window, run_length)?;
    if !w.all_stabilized() {
        log::warn!("{}: {} window entries did not stabilize", ray.label, w.stabilized.values().filter(|s| !**s).count());
    }
    if shift.is_zero() {
        check_sigma(face, &w)?;
    }
    Ok(w)
}

fn check_sigma(face: &Face, w: &HorofunctionWindow<LatticePoint>) -> Result<()> {
    let g = face.subgroup();
    for (u, &v) in &w.values {
        if !w.stabilized[u] || !g.contains(u) {
            continue;
        }
        let expected = face.sigma_at(u);
        if v.fract() != 0.0 || Rational64::from_integer(v as i64) != expected {
            return Err(Error::BusemannMismatch { point: u.0.clone(), found: v.to_string(), expected: expected.to_string() });
        }
    }
    Ok(())
}

/// `b_F` together with its translates by coset representatives.
#[derive(Clone, Debug)]
pub struct BusemannRecord {
    pub face: Face,
    pub window: HorofunctionWindow<LatticePoint>,
    pub orbit: Vec<HorofunctionWindow<LatticePoint>>,
    /// Coset representative producing each orbit element.
    pub orbit_reps: Vec<LatticePoint>,
    pub orbit_complete: bool,
}

#[derive(Serialize)]
struct RecordJson<'a> {
    face: serde_json::Value,
    orbit_size: usize,
    orbit_complete: bool,
    orbit_reps: &'a [LatticePoint],
    orbit: Vec<serde_json::Value>,
}

impl BusemannRecord {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(RecordJson {
            face: self.face.to_json_value(),
            orbit_size: self.orbit.len(),
            orbit_complete: self.orbit_complete,
            orbit_reps: &self.orbit_reps,
            orbit: self.orbit.iter().map(|w| w.to_json_value()).collect(),
        })
        .expect("record serializes")
    }
}

/// Orbit of `b_F` under translation, one window per coset of `G_F`.
///
/// Each translate is computed along the shifted ray and cross-checked against
/// the translated window of `b_F` where both are defined.
pub fn orbit(l: &LengthOracle, face: &Face, window: &[LatticePoint], run_length: usize) -> Result<BusemannRecord> {
    if !face.is_facet {
        return Err(Error::Precondition("orbit needs a facet".into()));
    }
    let base = busemann_from_face(l, face, window, run_length)?;
    let mut orbit: Vec<HorofunctionWindow<LatticePoint>> = Vec::new();
    let mut reps = Vec::new();
    let mut separated = true;
    for q in &face.coset_reps {
        let w = shifted_busemann(l, face, q, window, run_length)?;
        if let Ok(t) = translate_window(&base, q) {
            if t.all_stabilized() && w.all_stabilized() && t.agrees_with(&w) == Some(false) {
                return Err(Error::Precondition(format!("translate by {q} disagrees with the shifted ray")));
            }
        }
        if orbit.iter().any(|o| o.agrees_with(&w) != Some(false)) {
            separated = false;
            continue;
        }
        orbit.push(w);
        reps.push(q.clone());
    }
    let stabilized = orbit.iter().all(|w| w.all_stabilized());
    let fixed = orbit.iter().all(|w| {
        face.members.iter().all(|s| translate_window(w, s).map(|t| t.agrees_with(w) != Some(false)).unwrap_or(false))
    });
    let orbit_complete = separated && stabilized && fixed && Some(orbit.len() as u64) == face.index;
    Ok(BusemannRecord { face: face.clone(), window: base, orbit, orbit_reps: reps, orbit_complete })
}

/// Evaluates `φ_y(b_F)` at arbitrary `y` by running the face ray far enough.
pub struct BusemannPoint<'a> {
    l: &'a LengthOracle,
    face: &'a Face,
}

impl<'a> BusemannPoint<'a> {
    pub fn new(l: &'a LengthOracle, face: &'a Face) -> Result<Self> {
        require_word(l, face)?;
        Ok(BusemannPoint { l, face })
    }

    /// Values at `ys`, with their common stabilization flag.
    pub fn values(&self, ys: &[LatticePoint]) -> Result<(Vec<f64>, bool)> {
        let run = default_run_length(self.face, self.l, ys);
        let w = busemann_from_face(self.l, self.face, ys, run)?;
        Ok((ys.iter().map(|y| w.values[y]).collect(), w.all_stabilized()))
    }
}

/// Finds `s ∈ S \ F` with `φ_{-s}(b_F) ∈ {0, -1}` and
/// `φ_y(α_s b_F) = φ_y(b_F) + 1 - φ_{-s}(b_F)`, so that `φ_y` is not constant
/// on the orbit of `b_F`.
pub fn nonconstancy_check(l: &LengthOracle, face: &Face, y: &LatticePoint) -> Result<LatticePoint> {
    if face.subgroup().contains(y) {
        return Err(Error::Precondition(format!("{y} lies in the face subgroup")));
    }
    let b = BusemannPoint::new(l, face)?;
    let s = l.generating_set().expect("word length");
    let others: Vec<&LatticePoint> = s.elements().iter().filter(|x| !face.contains(x)).collect();
    let mut ys = vec![y.clone()];
    for x in &others {
        ys.push(-*x);
        ys.push(y - *x);
    }
    ys.sort();
    ys.dedup();
    let (vals, stable) = b.values(&ys)?;
    if !stable {
        log::warn!("nonconstancy check at {y}: window did not stabilize");
    }
    let at = |p: &LatticePoint| vals[ys.binary_search(p).expect("in window")];
    let phi_y = at(y);
    for x in others {
        let minus = at(&-x);
        let moved = at(&(y - x)) - minus;
        if (minus == 0.0 || minus == -1.0) && moved == phi_y + 1.0 - minus {
            return Ok(x.clone());
        }
    }
    Err(Error::NoWitness(y.0.clone()))
}
