use std::collections::BTreeSet;

use serde::Serialize;

use super::busemann::{default_run_length, face_ray};
use super::{ray_limit_window, GroupMetric, HorofunctionWindow, RaySample, SumMetric};
use crate::convexgeom::enumerate_faces;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LengthOracle, NormSpec};

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub face: Vec<LatticePoint>,
    pub shift: LatticePoint,
    pub window: HorofunctionWindow<LatticePoint>,
}

/// Distinct windows reached by face rays and their translates. Only a lower
/// bound on the boundary.
#[derive(Clone, Debug)]
pub struct Census {
    pub entries: Vec<CensusEntry>,
    pub lower_bound: bool,
}

impl Census {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn windows(&self) -> impl Iterator<Item = &HorofunctionWindow<LatticePoint>> {
        self.entries.iter().map(|e| &e.window)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry<'a> {
            face: &'a [LatticePoint],
            shift: &'a LatticePoint,
            window: serde_json::Value,
        }
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|e| Entry { face: &e.face, shift: &e.shift, window: e.window.to_json_value() })
            .collect();
        serde_json::json!({
            "lower_bound": self.lower_bound,
            "count": self.entries.len(),
            "windows": entries,
        })
    }
}

/// Windows of every face ray, translated by every point of the word ball of
/// radius `r` and by the coset representatives of each facet. Duplicates
/// (exact equality on the window) are dropped.
pub fn boundary_census(
    l: &LengthOracle,
    r: u32,
    window: &[LatticePoint],
    run_length: Option<usize>,
) -> Result<Census> {
    let s = l
        .generating_set()
        .filter(|_| l.is_integral())
        .ok_or_else(|| Error::Precondition("census needs a word length".into()))?;
    let faces = enumerate_faces(s)?;
    let ball = l.ball(r as f64);
    let mut entries: Vec<CensusEntry> = Vec::new();
    for face in &faces {
        let run = run_length.unwrap_or_else(|| default_run_length(face, l, window));
        let mut shifts: BTreeSet<LatticePoint> = ball.iter().cloned().collect();
        shifts.extend(face.coset_reps.iter().cloned());
        for shift in shifts {
            let ray = face_ray(face, 2 * run, &shift);
            let w = ray_limit_window(l, &ray, window, run)?;
            if entries.iter().any(|e| e.window.values == w.values) {
                continue;
            }
            entries.push(CensusEntry { face: face.members.clone(), shift, window: w });
        }
    }
    Ok(Census { entries, lower_bound: true })
}

/// Checks `φ_{(u,v)}(x,y) = φ_u(x) + φ_v(y)` exactly for the product length
/// against the sum of the factor lengths, for `u, v` in the factor windows
/// and `(x,y)` among `points`.
pub fn product_split_check(
    product: &LengthOracle,
    left: &LengthOracle,
    right: &LengthOracle,
    window_left: &[LatticePoint],
    window_right: &[LatticePoint],
    points: &[LatticePoint],
) -> bool {
    let sum = SumMetric { left, right };
    let exact = product.is_integral() && left.is_integral() && right.is_integral();
    let eq = |a: f64, b: f64| if exact { a == b } else { (a - b).abs() <= 1e-9 };
    for p in points {
        let (x, y) = sum.split(p);
        for u in window_left {
            let fu = left.phi(u, &x);
            for v in window_right {
                let uv = super::join(u, v);
                let want = fu + right.phi(v, &y);
                if !eq(product.phi(&uv, p), want) || !eq(sum.phi(&uv, p), want) {
                    return false;
                }
            }
        }
    }
    true
}

/// `(V_r g)(x) = sup { |g(x) - g(y)| : ρ(y, x) ≤ r }` over the finite ball.
pub fn variation<G>(l: &LengthOracle, g: G, r: f64, x: &LatticePoint) -> Result<f64>
where
    G: Fn(&LatticePoint) -> Option<f64>,
{
    let gx = g(x).ok_or_else(|| Error::InsufficientData(x.0.clone()))?;
    let mut best: f64 = 0.0;
    for z in l.ball(r) {
        let y = x + &z;
        let gy = g(&y).ok_or_else(|| Error::InsufficientData(y.0.clone()))?;
        best = best.max((gx - gy).abs());
    }
    Ok(best)
}

fn line_distance(norm: &NormSpec, x: &[f64], v: &[f64]) -> (f64, f64) {
    let at = |t: f64| {
        let d: Vec<f64> = x.iter().zip(v).map(|(a, b)| a - t * b).collect();
        norm.eval(&d)
    };
    if let NormSpec::L2 = norm {
        let vv: f64 = v.iter().map(|a| a * a).sum();
        let t = x.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() / vv;
        return (t, at(t));
    }
    let scale: f64 = x.iter().map(|a| a.abs()).sum::<f64>();
    let (mut lo, mut hi) = (0.0, 2.0 * norm.eval(x) + scale + 1.0);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if at(m1) <= at(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let t = 0.5 * (lo + hi);
    (t, at(t))
}

/// Lattice points `x_k` and times `t_k` with `‖x_k - t_k v‖ < 1/k`, found by
/// scanning rounded multiples of `v` and their neighbours.
pub fn lattice_approx_ray(norm: &NormSpec, v: &[f64], k_max: usize, search_radius: i64) -> Result<RaySample<LatticePoint>> {
    let nv = norm.eval(v);
    if (nv - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition(format!("direction has norm {nv}, expected 1")));
    }
    let d = v.len();
    let vmax = v.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let dir: Vec<f64> = v.iter().map(|a| a / vmax).collect();
    let mut domain = vec![0.0];
    let mut points = vec![LatticePoint::zero(d)];
    let mut m = 0i64;
    for k in 1..=k_max {
        let tol = 1.0 / k as f64;
        let t_prev = *domain.last().expect("nonempty");
        let found = loop {
            m += 1;
            if m > search_radius {
                return Err(Error::SearchBudget { radius: search_radius, k });
            }
            let centre: Vec<i64> = dir.iter().map(|a| (a * m as f64).round() as i64).collect();
            let mut best: Option<(f64, f64, LatticePoint)> = None;
            for off in LatticePoint::cube(d, 1) {
                let x = &LatticePoint(centre.clone()) + &off;
                let (t, err) = line_distance(norm, &x.as_f64(), v);
                if err < tol && t > t_prev && best.as_ref().is_none_or(|b| err < b.1) {
                    best = Some((t, err, x));
                }
            }
            if let Some(b) = best {
                break b;
            }
        };
        domain.push(found.0);
        points.push(found.2);
    }
    Ok(RaySample::new(domain, points, format!("lattice approximation of {v:?} under {}", norm.name())))
}

/// CSV of `φ_y(γ(t))` along a ray, one column per `y`.
pub fn phi_trace_csv<M: GroupMetric<Elem = LatticePoint>>(metric: &M, ray: &RaySample<LatticePoint>, ys: &[LatticePoint]) -> String {
    let mut out = String::from("t");
    for y in ys {
        out.push_str(&format!(",phi{}", y.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("_")));
    }
    out.push('\n');
    for (t, x) in ray.domain.iter().zip(&ray.points) {
        out.push_str(&crate::lattice::fmt_num(*t));
        for y in ys {
            out.push(',');
            out.push_str(&crate::lattice::fmt_num(metric.phi(y, x)));
        }
        out.push('\n');
    }
    out
}
