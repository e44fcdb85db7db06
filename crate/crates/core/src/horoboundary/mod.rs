//! Horofunction windows, ray classification, Busemann points of faces and
//! their orbits under translation.

mod busemann;
mod census;
mod metric;
mod ray;
mod window;

pub use busemann::{
    busemann_from_face, default_run_length, default_window, face_ray, nonconstancy_check, orbit, BusemannPoint,
    BusemannRecord,
};
pub use census::{
    boundary_census, lattice_approx_ray, phi_trace_csv, product_split_check, variation, Census, CensusEntry,
};
pub use metric::{join, GroupMetric, SumMetric};
pub use ray::{classify_ray, RayCheck, RayClass, RaySample, RayVerdict};
pub use window::{ray_limit_window, translate_window, HorofunctionWindow};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexgeom::{facets, Face};
    use crate::lattice::{pt, GeneratingSet, LatticePoint, LengthOracle, NormSpec};

    fn line(lo: i64, hi: i64) -> Vec<LatticePoint> {
        (lo..=hi).map(|k| pt(&[k])).collect()
    }

    fn int_ray(step: i64, n: usize) -> RaySample<LatticePoint> {
        RaySample::new((0..=n).map(|k| k as f64).collect(), (0..=n).map(|k| pt(&[step * k as i64])).collect(), "test")
    }

    fn facet_with(s: &GeneratingSet, members: &[LatticePoint]) -> Face {
        facets(s).unwrap().into_iter().find(|f| f.members == members).unwrap()
    }

    fn one_two() -> (GeneratingSet, LengthOracle) {
        let s = GeneratingSet::integers(&[1, 2]).unwrap();
        let l = LengthOracle::word(&s);
        (s, l)
    }

    #[test]
    fn classify_examples() {
        let std = LengthOracle::standard(1);
        let check = RayCheck { eps: 0.5, threshold: 0.0, probes: line(-3, 3) };
        assert_eq!(classify_ray(&std, &int_ray(1, 20), &check).class, RayClass::Geodesic);
        let (_, l) = one_two();
        let ray = RaySample::new((0..=20).map(|k| k as f64).collect(), (0..=20).map(|k| pt(&[2 * k])).collect(), "2n");
        assert_eq!(classify_ray(&l, &ray, &check).class, RayClass::Geodesic);
    }

    #[test]
    fn beta_ray_is_weak_not_almost() {
        let beta = 0.4;
        let l = LengthOracle::beta(1, beta);
        let ns: Vec<i64> = (0..=2000).step_by(20).collect();
        let ray = RaySample::new(ns.iter().map(|&n| (n as f64).powf(beta)).collect(), ns.iter().map(|&n| pt(&[n])).collect(), "beta");
        let check = RayCheck { eps: 0.1, threshold: 10.0, probes: line(-5, 5) };
        assert_eq!(classify_ray(&l, &ray, &check).class, RayClass::WeaklyGeodesic);
    }

    #[test]
    fn limit_window_standard_and_parity() {
        let std = LengthOracle::standard(1);
        let w = ray_limit_window(&std, &int_ray(1, 40), &line(-5, 5), 10).unwrap();
        for k in -5..=5 {
            assert_eq!(w.values[&pt(&[k])], k as f64);
        }
        assert!(w.all_stabilized() && w.monotone);

        let (_, l) = one_two();
        let w = ray_limit_window(&l, &int_ray(2, 40), &line(-6, 6), 10).unwrap();
        for k in -6..=6i64 {
            let want = if k % 2 == 0 { k / 2 } else { (k - 1).div_euclid(2) };
            assert_eq!(w.values[&pt(&[k])], want as f64, "k={k}");
        }
        assert_eq!(w.values[&pt(&[0])], 0.0);
    }

    #[test]
    fn short_sample_is_rejected() {
        let std = LengthOracle::standard(1);
        assert!(matches!(
            ray_limit_window(&std, &int_ray(1, 3), &line(-1, 1), 10),
            Err(crate::Error::InsufficientSample { .. })
        ));
    }

    #[test]
    fn busemann_examples() {
        let (s, l) = one_two();
        let f = facet_with(&s, &[pt(&[2])]);
        let w = busemann_from_face(&l, &f, &line(-6, 6), 32).unwrap();
        assert_eq!(w.values[&pt(&[1])], 0.0);
        assert_eq!(w.values[&pt(&[2])], 1.0);
        assert_eq!(w.values[&pt(&[-1])], -1.0);

        let s1 = GeneratingSet::integers(&[1]).unwrap();
        let l1 = LengthOracle::word(&s1);
        let f1 = facet_with(&s1, &[pt(&[1])]);
        let w1 = busemann_from_face(&l1, &f1, &line(-8, 8), 32).unwrap();
        assert!(w1.values.iter().all(|(y, &v)| v == y.0[0] as f64));

        let s2 = GeneratingSet::standard(2);
        let l2 = LengthOracle::word(&s2);
        let f2 = facet_with(&s2, &[pt(&[0, 1]), pt(&[1, 0])]);
        let win = LatticePoint::cube(2, 3);
        let w2 = busemann_from_face(&l2, &f2, &win, default_run_length(&f2, &l2, &win)).unwrap();
        assert!(w2.all_stabilized());
        assert!(w2.values.iter().all(|(y, &v)| v == (y.0[0] + y.0[1]) as f64));
    }

    #[test]
    fn translate_examples() {
        let (s, l) = one_two();
        let f = facet_with(&s, &[pt(&[2])]);
        let b = busemann_from_face(&l, &f, &line(-8, 8), 32).unwrap();
        let same = translate_window(&b, &pt(&[0])).unwrap();
        assert_eq!(same.values, b.values);
        let odd = translate_window(&b, &pt(&[1])).unwrap();
        assert_eq!(odd.values[&pt(&[1])], 1.0);
        let two = translate_window(&b, &pt(&[2])).unwrap();
        assert_eq!(two.agrees_with(&b), Some(true));
        assert!(matches!(translate_window(&b, &pt(&[100])), Err(crate::Error::WindowExhausted)));
    }

    #[test]
    fn translates_compose_additively() {
        let (s, l) = one_two();
        let f = facet_with(&s, &[pt(&[2])]);
        let b = busemann_from_face(&l, &f, &line(-10, 10), 32).unwrap();
        let ab = translate_window(&translate_window(&b, &pt(&[1])).unwrap(), &pt(&[2])).unwrap();
        let direct = translate_window(&b, &pt(&[3])).unwrap();
        assert_eq!(ab.agrees_with(&direct), Some(true));
    }

    #[test]
    fn orbit_sizes() {
        let (s, l) = one_two();
        let f = facet_with(&s, &[pt(&[2])]);
        let rec = orbit(&l, &f, &default_window(&f, &l), 32).unwrap();
        assert_eq!(rec.orbit.len(), 2);
        assert!(rec.orbit_complete);

        let s1 = GeneratingSet::integers(&[1]).unwrap();
        let l1 = LengthOracle::word(&s1);
        let f1 = facet_with(&s1, &[pt(&[1])]);
        assert_eq!(orbit(&l1, &f1, &line(-4, 4), 16).unwrap().orbit.len(), 1);

        let s2 = GeneratingSet::standard(2);
        let l2 = LengthOracle::word(&s2);
        let f2 = facet_with(&s2, &[pt(&[0, 1]), pt(&[1, 0])]);
        let win = default_window(&f2, &l2);
        let rec = orbit(&l2, &f2, &win, default_run_length(&f2, &l2, &win)).unwrap();
        assert_eq!(rec.orbit.len(), 1);
        assert!(rec.orbit_complete);
    }

    #[test]
    fn nonconstancy_examples() {
        let (s, l) = one_two();
        let f = facet_with(&s, &[pt(&[2])]);
        let w = nonconstancy_check(&l, &f, &pt(&[1])).unwrap();
        assert!(w == pt(&[1]) || w == pt(&[-1]));
        assert!(matches!(nonconstancy_check(&l, &f, &pt(&[4])), Err(crate::Error::Precondition(_))));

        let s38 = GeneratingSet::integers(&[3, 8]).unwrap();
        let l38 = LengthOracle::word(&s38);
        let f8 = facet_with(&s38, &[pt(&[8])]);
        assert!(nonconstancy_check(&l38, &f8, &pt(&[3])).is_ok());
    }

    #[test]
    fn census_counts() {
        let s1 = GeneratingSet::integers(&[1]).unwrap();
        assert_eq!(boundary_census(&LengthOracle::word(&s1), 0, &line(-20, 20), None).unwrap().len(), 2);
        let (_, l) = one_two();
        let c = boundary_census(&l, 2, &line(-20, 20), None).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.lower_bound);
    }

    #[test]
    fn census_l1_windows_split() {
        let s = GeneratingSet::standard(2);
        let l = LengthOracle::word(&s);
        let win = LatticePoint::cube(2, 3);
        let c = boundary_census(&l, 1, &win, None).unwrap();
        assert!(c.len() > 4);
        for w in c.windows() {
            for y in &win {
                let (p, q) = (y.0[0], y.0[1]);
                assert_eq!(w.values[y], w.values[&pt(&[p, 0])] + w.values[&pt(&[0, q])]);
            }
        }
    }

    #[test]
    fn product_split() {
        let std = LengthOracle::standard(1);
        let l1 = LengthOracle::norm(2, NormSpec::L1);
        let pts = LatticePoint::cube(2, 6);
        assert!(product_split_check(&l1, &std, &std, &line(-4, 4), &line(-4, 4), &pts));
        assert!(product_split_check(&l1, &std, &std, &line(0, 0), &line(0, 0), &pts));
        let a = LengthOracle::word(&GeneratingSet::integers(&[2, 3]).unwrap());
        let b = LengthOracle::word(&GeneratingSet::integers(&[1, 5]).unwrap());
        let mut table = std::collections::BTreeMap::new();
        for p in LatticePoint::cube(2, 14) {
            table.insert(p.clone(), a.length(&pt(&[p.0[0]])) + b.length(&pt(&[p.0[1]])));
        }
        let sum = LengthOracle::custom(2, table);
        assert!(product_split_check(&sum, &a, &b, &line(-3, 3), &line(-3, 3), &LatticePoint::cube(2, 5)));
    }

    #[test]
    fn variation_examples() {
        let (_, l) = one_two();
        let phi1 = |x: &LatticePoint| Some(l.phi(&pt(&[1]), x));
        for k in 1..30 {
            assert!(variation(&l, phi1, 2.0, &pt(&[k])).unwrap() >= 1.0);
        }
        assert_eq!(variation(&l, |_| Some(3.0), 2.0, &pt(&[0])).unwrap(), 0.0);
        let std = LengthOracle::standard(1);
        for k in -20..20 {
            assert!(variation(&std, |x| Some(std.phi(&pt(&[3]), x)), 1.0, &pt(&[k])).unwrap() <= 2.0);
        }
        let partial = |x: &LatticePoint| (x.0[0] < 5).then_some(0.0);
        assert!(matches!(variation(&std, partial, 1.0, &pt(&[4])), Err(crate::Error::InsufficientData(_))));
    }

    #[test]
    fn approx_rays() {
        let ray = lattice_approx_ray(&NormSpec::L1, &[0.5, 0.5], 6, 100).unwrap();
        for k in 1..=6 {
            assert!((ray.domain[k] - 2.0 * k as f64).abs() < 1e-9);
            assert_eq!(ray.points[k], pt(&[k as i64, k as i64]));
        }
        let e1 = lattice_approx_ray(&NormSpec::L2, &[1.0, 0.0], 5, 100).unwrap();
        assert_eq!(e1.points[3], pt(&[3, 0]));

        let g = (1.0 + 5f64.sqrt()) / 2.0;
        let n = (1.0 + g * g).sqrt();
        let v = [1.0 / n, g / n];
        let ray = lattice_approx_ray(&NormSpec::L2, &v, 8, 10_000).unwrap();
        for k in 1..ray.len() {
            let x = ray.points[k].as_f64();
            let t = ray.domain[k];
            let err = ((x[0] - t * v[0]).powi(2) + (x[1] - t * v[1]).powi(2)).sqrt();
            assert!(err < 1.0 / k as f64);
        }
        let l2 = LengthOracle::norm(2, NormSpec::L2);
        let check = RayCheck { eps: 0.5, threshold: ray.domain[3], probes: vec![] };
        assert!(classify_ray(&l2, &ray, &check).class >= RayClass::AlmostGeodesic);
        assert!(matches!(lattice_approx_ray(&NormSpec::L2, &v, 8, 5), Err(crate::Error::SearchBudget { .. })));
    }

    #[test]
    fn trace_csv_layout() {
        let std = LengthOracle::standard(1);
        let csv = phi_trace_csv(&std, &int_ray(1, 2), &[pt(&[1]), pt(&[-1])]);
        assert_eq!(csv, "t,phi1,phi-1\n0,-1,-1\n1,1,-1\n2,1,-1\n");
    }
}
