use num_complex::Complex64;

use super::*;
use crate::convexgeom::facets;
use crate::lattice::{pt, CoefficientFunction, GeneratingSet, LengthOracle, NormSpec};

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn elem(pairs: &[(i64, f64)]) -> AlgebraElement {
    AlgebraElement::new(CoefficientFunction::from_pairs(pairs.iter().map(|&(k, v)| (pt(&[k]), re(v)))), Cocycle::trivial(1))
}

fn small() -> Truncation {
    Truncation { r_start: 8, r_max: 64, tol: 0.0, lanczos_iter: 200, lanczos_tol: 1e-10 }
}

#[test]
fn a_norm_examples() {
    let t = small();
    let d = AlgebraElement::delta(pt(&[3, -1]), Cocycle::block(2, 0.4));
    assert!((a_norm(&d, &Truncation::fixed(6)).value - 1.0).abs() < 1e-12);
    // Toeplitz truncations approach the symbol supremum from below
    let a = a_norm(&elem(&[(1, 1.0), (-1, 1.0)]), &t);
    assert!(a.value <= 2.0 + 1e-12 && a.value > 2.0 - 1e-2, "{a:?}");
    assert!(a.trace_monotone());
    let b = a_norm(&elem(&[(0, 1.0), (1, 1.0)]), &t);
    assert!(b.value <= 2.0 + 1e-12 && b.value > 2.0 - 1e-2);
    assert!((fourier_sup(&elem(&[(0, 1.0), (1, 1.0)]), 4096) - 2.0).abs() < 1e-9);
}

#[test]
fn l_ell_examples() {
    let t = small();
    let std = LengthOracle::standard(1);
    let d = AlgebraElement::delta(pt(&[4]), Cocycle::trivial(1));
    assert!((l_ell(&d, &std, &t).value - 4.0).abs() < 1e-12);
    let zero = AlgebraElement::delta(pt(&[0]), Cocycle::trivial(1));
    assert_eq!(l_ell(&zero, &std, &t).value, 0.0);
    let e = l_ell(&elem(&[(1, 1.0), (-1, 1.0)]), &std, &t);
    assert!(e.value <= 2.0 + 1e-12 && e.value > 2.0 - 1e-2, "{e:?}");
    assert!(e.trace_monotone());
    assert!(e.sandwiched(1e-9));
}

#[test]
fn df_norm_examples() {
    let t = small();
    let s1 = GeneratingSet::standard(1);
    let fs = facets(&s1).unwrap();
    let f = elem(&[(1, 1.0), (-1, 1.0)]);
    let v = df_norm(&f, &fs, &t).unwrap();
    assert!(v <= 2.0 + 1e-12 && v > 2.0 - 1e-2);
    assert_eq!(df_norm(&elem(&[(0, 1.0)]), &fs, &t).unwrap(), 0.0);
    assert!(matches!(df_norm(&f, &[], &t), Err(crate::Error::NoFacets)));
    let s2 = GeneratingSet::standard(2);
    let e1 = AlgebraElement::delta(pt(&[1, 0]), Cocycle::block(2, 0.3));
    assert!((df_norm(&e1, &facets(&s2).unwrap(), &Truncation::fixed(4)).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn k_constant_examples() {
    let l = LengthOracle::word(&GeneratingSet::integers(&[1, 2]).unwrap());
    let (k, per) = word_constant(&l).unwrap();
    assert_eq!(k, 1.5);
    let c = &per[0].cosets[0];
    assert_eq!(c.k_q, 1.0);
    assert_eq!(per[0].k_f_corrected, 2.0);
    let l1 = LengthOracle::word(&GeneratingSet::integers(&[1]).unwrap());
    assert_eq!(word_constant(&l1).unwrap().0, 1.0);
}

#[test]
fn main_inequality_on_deltas() {
    let t = Truncation::fixed(6);
    let l = LengthOracle::norm(2, NormSpec::L1);
    for y in [pt(&[1, 2]), pt(&[-3, 1]), pt(&[0, 0])] {
        let f = AlgebraElement::delta(y, Cocycle::block(2, 0.3));
        let r = main_inequality_check(&f, &l, 1.0, &t, 1e-9).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn dual_action_invariance() {
    let c = Cocycle::block(2, 0.618);
    let f = AlgebraElement::new(
        CoefficientFunction::from_pairs([(pt(&[1, 0]), re(1.0)), (pt(&[0, -1]), Complex64::new(0.3, 0.7)), (pt(&[1, 1]), re(-0.5))]),
        c,
    );
    let g = f.dual_action(&[0.27, 0.81]);
    let l = LengthOracle::word(&GeneratingSet::standard(2));
    let t = Truncation::fixed(8);
    assert!((l_ell(&f, &l, &t).value - l_ell(&g, &l, &t).value).abs() < 1e-6);
    assert!((a_norm(&f, &t).value - a_norm(&g, &t).value).abs() < 1e-6);
}

#[test]
fn holder_examples() {
    let std = LengthOracle::standard(1);
    let t = Truncation::fixed(16);
    let d0 = elem(&[(0, 1.0)]);
    let r = holder_check(&d0, 1.0, &std, 0.0, 1.0, &t).unwrap();
    assert_eq!(r.lhs, 0.0);
    let d1 = elem(&[(1, 1.0)]);
    let r = holder_check(&d1, 1.0, &std, 0.0, std::f64::consts::PI / 8.0, &t).unwrap();
    assert!(r.pass && r.lhs > 0.0, "{r:?}");
    let r = holder_check(&d1, 1.0, &std, 0.4, 0.4, &t).unwrap();
    assert_eq!((r.lhs, r.modulus), (0.0, 0.0));
    assert!(matches!(holder_modulus(0.5, 0.1), Err(crate::Error::OutOfRegime(_))));
}

#[test]
fn holder_modulus_matches_long_sum() {
    // independent oracle: direct sum to 10^7 terms plus a crude tail
    let beta = 0.8;
    let h = 0.3;
    let mut direct = 0.0;
    for n in 1..=10_000_000u64 {
        let nf = n as f64;
        direct += 8.0 * (nf * h / 2.0).sin().powi(2) / nf.powf(2.0 * beta);
    }
    let m = holder_modulus(beta, h).unwrap();
    assert!(m >= direct.sqrt());
    assert!(m <= direct.sqrt() * 1.05);
}

#[test]
fn holder_delta_grid() {
    let d = holder_delta(0.8, 0.05).unwrap();
    assert!(d > 0.0);
    for i in 1..=10 {
        assert!(holder_modulus(0.8, d * i as f64 / 10.0).unwrap() <= 0.05);
    }
}

#[test]
fn beta_collapse() {
    let l = LengthOracle::beta(1, 0.4);
    for p in 1..=5 {
        assert!(phi_sup(&l, p, 10_000, 20_000) <= 0.1);
    }
}

#[test]
fn radius_probe_band() {
    let l = LengthOracle::standard(1);
    let t = Truncation { r_start: 8, r_max: 16, tol: 0.0, lanczos_iter: 100, lanczos_tol: 1e-10 };
    let p = radius_probe(&l, &Cocycle::trivial(1), 2, 4, 11, &t);
    assert!(p.estimate >= 0.5 && p.estimate <= std::f64::consts::PI, "{p:?}");
    assert!(p.certified <= p.estimate + 1e-12);
    assert!(p.consistent);
    let again = radius_probe(&l, &Cocycle::trivial(1), 2, 4, 11, &t);
    assert_eq!(p, again);
}

#[test]
fn convolution_laws() {
    let c = Cocycle::block(2, 0.618);
    let mk = |pairs: &[([i64; 2], Complex64)]| AlgebraElement::new(CoefficientFunction::from_pairs(pairs.iter().map(|(x, v)| (pt(x), *v))), c.clone());
    let f = mk(&[([1, 0], re(1.0)), ([2, -1], Complex64::new(0.0, 1.0))]);
    let g = mk(&[([0, 1], re(2.0)), ([-1, -1], Complex64::new(1.0, 1.0))]);
    let h = mk(&[([3, 2], re(-1.0)), ([0, 0], re(0.5))]);
    let lhs = f.convolve(&g).unwrap().convolve(&h).unwrap();
    let rhs = f.convolve(&g.convolve(&h).unwrap()).unwrap();
    assert!(lhs.max_distance(&rhs) < 1e-12);
    let star = f.convolve(&g).unwrap().involution();
    let other = g.involution().convolve(&f.involution()).unwrap();
    assert!(star.max_distance(&other) < 1e-12);
    assert_eq!(f.involution().involution(), f);
}

#[test]
fn c_star_identity_proxy() {
    let c = Cocycle::block(2, 0.3);
    let f = AlgebraElement::new(
        CoefficientFunction::from_pairs([(pt(&[1, 0]), re(1.0)), (pt(&[0, 1]), Complex64::new(0.0, 0.5))]),
        c,
    );
    let t = Truncation::fixed(24);
    let a = a_norm(&f, &t).value;
    let b = a_norm(&f.involution().convolve(&f).unwrap(), &t).value;
    assert!((b - a * a).abs() < 2e-2, "{a} {b}");
}

#[test]
fn order_lipnorm_bound() {
    let l = LengthOracle::standard(2);
    let f = AlgebraElement::new(
        CoefficientFunction::from_pairs([(pt(&[1, 0]), re(1.0)), (pt(&[-1, 2]), re(0.5)), (pt(&[0, -1]), Complex64::new(0.0, 2.0))]),
        Cocycle::block(2, 0.3),
    );
    let a = a_norm(&f, &Truncation::fixed(12)).value;
    assert!(a <= crate::lattice::order_lipnorm(&f.coeffs, &l) + 1e-12);
}
