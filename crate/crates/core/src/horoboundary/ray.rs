use serde::Serialize;

use super::GroupMetric;

/// A finite sample of a ray `γ : T -> X` with `0 ∈ T`.
#[derive(Clone, Debug, PartialEq)]
pub struct RaySample<E> {
    pub domain: Vec<f64>,
    pub points: Vec<E>,
    pub label: String,
}

impl<E: Clone> RaySample<E> {
    pub fn new(domain: Vec<f64>, points: Vec<E>, label: impl Into<String>) -> Self {
        assert_eq!(domain.len(), points.len(), "domain and points must match");
        assert!(!domain.is_empty() && domain[0] == 0.0, "domain must start at 0");
        assert!(domain.windows(2).all(|w| w[0] < w[1]), "domain must be strictly increasing");
        RaySample { domain, points, label: label.into() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Applies `f` to every point, keeping the domain.
    pub fn map_points<F: Fn(&E) -> E>(&self, f: F, label: impl Into<String>) -> Self {
        RaySample { domain: self.domain.clone(), points: self.points.iter().map(f).collect(), label: label.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RayClass {
    None,
    WeaklyGeodesic,
    AlmostGeodesic,
    Geodesic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayVerdict {
    pub class: RayClass,
    /// Violations of the consequences of almost-geodesicity (distance to the
    /// base point, pairwise distances, and the triangle slack), if any.
    pub violations: Vec<String>,
}

/// Tolerances for [`classify_ray`]. Weak geodesicity is tested against the
/// finite `probes` set in place of all of X.
#[derive(Clone, Debug)]
pub struct RayCheck<E> {
    pub eps: f64,
    pub threshold: f64,
    pub probes: Vec<E>,
}

fn exact_eq(a: f64, b: f64, integral: bool) -> bool {
    if integral {
        a == b
    } else {
        (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
    }
}

/// Strongest class (geodesic, almost geodesic, weakly geodesic) whose
/// defining inequalities hold on the sampled domain.
pub fn classify_ray<M: GroupMetric>(metric: &M, ray: &RaySample<M::Elem>, check: &RayCheck<M::Elem>) -> RayVerdict {
    let n = ray.len();
    let t = &ray.domain;
    let p = &ray.points;
    let integral = metric.is_integral() && t.iter().all(|v| v.fract() == 0.0);
    let base: Vec<f64> = p.iter().map(|x| metric.distance(x, &p[0])).collect();

    let geodesic = (0..n).all(|i| (i + 1..n).all(|j| exact_eq(metric.distance(&p[i], &p[j]), t[j] - t[i], integral)));
    if geodesic {
        return RayVerdict { class: RayClass::Geodesic, violations: Vec::new() };
    }

    let tail: Vec<usize> = (0..n).filter(|&i| t[i] >= check.threshold).collect();
    let eps = check.eps;
    let mut almost = tail.len() >= 2;
    let mut violations = Vec::new();
    'outer: for (a, &i) in tail.iter().enumerate() {
        for &j in &tail[a..] {
            // j is t (larger), i is s
            let d = metric.distance(&p[j], &p[i]);
            if (d + base[i] - t[j]).abs() >= eps {
                almost = false;
                break 'outer;
            }
        }
    }
    if almost {
        for (a, &i) in tail.iter().enumerate() {
            for &j in &tail[a..] {
                let d = metric.distance(&p[j], &p[i]);
                if (base[j] - t[j]).abs() >= eps {
                    violations.push(format!("base distance at t={}", t[j]));
                }
                if (d - (t[j] - t[i])).abs() >= 2.0 * eps {
                    violations.push(format!("pair distance at (t,s)=({},{})", t[j], t[i]));
                }
                if d >= base[j] - base[i] + 2.0 * eps {
                    violations.push(format!("triangle slack at (t,s)=({},{})", t[j], t[i]));
                }
            }
        }
        return RayVerdict { class: RayClass::AlmostGeodesic, violations };
    }

    let mut weak = !tail.is_empty() && tail.iter().all(|&i| (base[i] - t[i]).abs() < eps);
    if weak {
        'probe: for y in &check.probes {
            let dy: Vec<f64> = tail.iter().map(|&i| metric.distance(&p[i], y)).collect();
            for a in 0..tail.len() {
                for b in 0..tail.len() {
                    let (ti, si) = (tail[a], tail[b]);
                    if (dy[a] - dy[b] - (t[ti] - t[si])).abs() >= eps {
                        weak = false;
                        break 'probe;
                    }
                }
            }
        }
    }
    RayVerdict {
        class: if weak { RayClass::WeaklyGeodesic } else { RayClass::None },
        violations,
    }
}
