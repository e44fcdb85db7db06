use horolat::convexgeom::{facets, gauge_norm, support_bound_check, RationalVector};
use horolat::horoboundary::{default_run_length, default_window, orbit};
use horolat::lattice::{phi, pt, CoefficientFunction, GeneratingSet, LatticePoint, LengthOracle};
use horolat::nctorus::{a_norm, l_ell, weighted_norms, AlgebraElement, Cocycle, Truncation};
use num_complex::Complex64;
use proptest::prelude::*;

fn gens_1d() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(1i64..9, 1..4).prop_map(|s| s.into_iter().collect::<Vec<_>>()).prop_filter("coprime", |v| v.iter().fold(0, |g, &a| gcd(g, a)) == 1)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn element(pairs: Vec<(i64, i64, f64, f64)>, c: Cocycle) -> AlgebraElement {
    AlgebraElement::new(CoefficientFunction::from_pairs(pairs.into_iter().map(|(a, b, re, im)| (pt(&[a, b]), Complex64::new(re, im)))), c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn word_length_is_a_length(g in gens_1d(), x in -40i64..40, y in -40i64..40) {
        let l = LengthOracle::word(&GeneratingSet::integers(&g).unwrap());
        let (px, py) = (pt(&[x]), pt(&[y]));
        prop_assert_eq!(l.length(&px), l.length(&pt(&[-x])));
        prop_assert!(l.length(&pt(&[x + y])) <= l.length(&px) + l.length(&py));
        prop_assert!(phi(&l, &py, &px).abs() <= l.length(&py));
    }

    #[test]
    fn gauge_below_word_length(x in -6i64..6, y in -6i64..6) {
        let s = GeneratingSet::new(2, vec![pt(&[1, 0]), pt(&[-1, 0]), pt(&[0, 1]), pt(&[0, -1]), pt(&[1, 1]), pt(&[-1, -1])]).unwrap();
        let l = LengthOracle::word(&s);
        let p = pt(&[x, y]);
        let g = gauge_norm(&s, &RationalVector::from_point(&p));
        prop_assert!(*g.numer() as f64 / *g.denom() as f64 <= l.length(&p) + 1e-12);
    }

    #[test]
    fn seminorms_between_weighted_norms(pairs in prop::collection::vec((-2i64..3, -2i64..3, -1.0f64..1.0, -1.0f64..1.0), 1..5), theta in 0.0f64..1.0) {
        let f = element(pairs, Cocycle::block(2, theta));
        prop_assume!(!f.is_zero());
        let t = Truncation::fixed(6);
        let a = a_norm(&f, &t).value;
        prop_assert!(a <= f.l1() * (1.0 + 1e-9) + 1e-12);
        prop_assert!(a >= f.l2() * (1.0 - 1e-9) - 1e-12);
        let l = LengthOracle::standard(2);
        let (upper, _) = weighted_norms(&f, &l);
        prop_assert!(l_ell(&f, &l, &t).value <= upper * (1.0 + 1e-9) + 1e-12);
    }
}

#[test]
fn facet_functionals_bounded_by_lengths() {
    for g in [&[1i64, 2][..], &[3, 8], &[2, 5, 7]] {
        let s = GeneratingSet::integers(g).unwrap();
        let l = LengthOracle::word(&s);
        for face in facets(&s).unwrap() {
            assert!(support_bound_check(&face, &l, 30.0), "{g:?}");
        }
    }
}

#[test]
fn orbit_size_matches_index_on_the_line() {
    let s = GeneratingSet::integers(&[3, 8]).unwrap();
    let l = LengthOracle::word(&s);
    for face in facets(&s).unwrap() {
        let w = default_window(&face, &l);
        let n = default_run_length(&face, &l, &w);
        let rec = orbit(&l, &face, &w, n).unwrap();
        assert!(rec.orbit_complete);
        assert_eq!(Some(rec.orbit.len() as u64), face.index);
    }
}

#[test]
fn cube_enumeration_size() {
    assert_eq!(LatticePoint::cube(2, 3).len(), 49);
    assert_eq!(LatticePoint::cube(1, 5).len(), 11);
}
