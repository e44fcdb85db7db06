//! Lattice points, generating sets, length functions and the bounded
//! differences `φ_y(x) = ℓ(x) - ℓ(x - y)`.

mod coeff;
mod genset;
mod length;
mod point;
mod sublattice;

pub use coeff::CoefficientFunction;
pub use genset::GeneratingSet;
pub use length::{length_table_csv, word_length_ball, LengthKind, LengthOracle, NormSpec};
pub(crate) use length::{fmt_num, rat_f64};
pub use point::{pt, LatticePoint};
pub use sublattice::Sublattice;

/// `φ_y(x) = ℓ(x) - ℓ(x - y)`.
pub fn phi(l: &LengthOracle, y: &LatticePoint, x: &LatticePoint) -> f64 {
    l.length(x) - l.length(&(x - y))
}

/// Supremum of `|φ_y|` over a ball, with the radius that was searched.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslationBound {
    pub value: f64,
    pub radius: f64,
    /// The maximizer found; for length functions the bound is exact once
    /// `|φ_y(x)| = ℓ(y)` is attained.
    pub argmax: LatticePoint,
    pub certified: bool,
}

pub fn translation_bound(l: &LengthOracle, y: &LatticePoint, radius: f64) -> TranslationBound {
    let mut best = (0.0, LatticePoint::zero(l.dim()));
    for x in l.ball(radius) {
        let v = phi(l, y, &x).abs();
        if v > best.0 {
            best = (v, x);
        }
    }
    let ly = l.length(y);
    TranslationBound {
        value: best.0,
        radius,
        argmax: best.1,
        certified: (best.0 - ly).abs() <= 1e-12 * ly.max(1.0),
    }
}

/// Checks `φ_{y+z}(x) = φ_y(x) + φ_z(x - y)` over the ball of radius `r`.
/// Exact for integral oracles, within `1e-12` otherwise.
pub fn cocycle_identity_check(l: &LengthOracle, y: &LatticePoint, z: &LatticePoint, r: f64) -> bool {
    let yz = y + z;
    l.ball(r).iter().all(|x| {
        let lhs = phi(l, &yz, x);
        let rhs = phi(l, y, x) + phi(l, z, &(x - y));
        if l.is_integral() {
            lhs == rhs
        } else {
            (lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs())
        }
    })
}

/// `‖f‖_{p,k} = (Σ (|f(x)| (1 + ℓ(x))^k)^p)^(1/p)`.
pub fn pk_norm(f: &CoefficientFunction, p: f64, k: f64, l: &LengthOracle) -> f64 {
    assert!(p >= 1.0 && k >= 0.0);
    f.iter()
        .map(|(x, v)| (v.norm() * (1.0 + l.length(x)).powf(k)).powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

/// `Σ ω(x) |f(x)|`, the ℓ¹-type seminorm built from an order-compatible norm.
pub fn order_lipnorm(f: &CoefficientFunction, omega: &LengthOracle) -> f64 {
    f.iter().map(|(x, v)| omega.length(x) * v.norm()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn word_ball_examples() {
        let s = GeneratingSet::integers(&[1]).unwrap();
        let t = word_length_ball(&s, 5);
        for n in -5..=5 {
            assert_eq!(t[&pt(&[n])], n.unsigned_abs() as u32);
        }
        assert_eq!(t.len(), 11);

        let s = GeneratingSet::integers(&[1, 2]).unwrap();
        let t = word_length_ball(&s, 4);
        assert_eq!(t[&pt(&[7])], 4);
        assert_eq!(t[&pt(&[6])], 3);
        assert_eq!(t[&pt(&[0])], 0);
        assert!(t.keys().all(|p| t[&-p] == t[p]));
    }

    /// Exhaustive oracle: all sums of at most three generators.
    #[test]
    fn word_ball_three_eight_against_enumeration() {
        let gens = [3i64, -3, 8, -8];
        let mut best = std::collections::BTreeMap::new();
        best.insert(0i64, 0u32);
        let mut layer = vec![0i64];
        for k in 1..=3u32 {
            let mut next = vec![];
            for &x in &layer {
                for g in gens {
                    next.push(x + g);
                }
            }
            for &x in &next {
                best.entry(x).or_insert(k);
            }
            layer = next;
        }
        let s = GeneratingSet::integers(&[3, 8]).unwrap();
        let t = word_length_ball(&s, 3);
        assert_eq!(best[&5], 2);
        assert_eq!(t[&pt(&[5])], 2);
        for (x, l) in best {
            assert_eq!(t[&pt(&[x])], l, "x = {x}");
        }
    }

    #[test]
    fn length_examples() {
        let l1 = LengthOracle::norm(2, NormSpec::L1);
        assert_eq!(l1.length(&pt(&[3, -4])), 7.0);
        let b = LengthOracle::beta(1, 0.5);
        assert!((b.length(&pt(&[9])) - 3.0).abs() < 1e-15);
        let w = LengthOracle::word(&GeneratingSet::integers(&[1, 2]).unwrap());
        assert_eq!(w.length(&pt(&[-5])), 3.0);
        // far query grows the ball
        assert_eq!(w.length(&pt(&[1001])), 501.0);
    }

    #[test]
    fn gauge_oracle_matches_l1() {
        let g = LengthOracle::norm(2, NormSpec::Gauge(GeneratingSet::standard(2)));
        for x in LatticePoint::cube(2, 3) {
            assert!((g.length(&x) - x.l1() as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_for_one_two() {
        let w = LengthOracle::word(&GeneratingSet::integers(&[1, 2]).unwrap());
        let r = 30i64;
        for n in -2 * r..=2 * r {
            let expected = (n.abs() + 1) / 2;
            assert_eq!(w.length(&pt(&[n])), expected as f64);
        }
    }

    #[test]
    fn phi_examples() {
        let z = LengthOracle::standard(1);
        assert_eq!(phi(&z, &pt(&[3]), &pt(&[5])), 3.0);
        let w = LengthOracle::word(&GeneratingSet::integers(&[1, 2]).unwrap());
        assert_eq!(phi(&w, &pt(&[1]), &pt(&[6])), 0.0);
        for y in [pt(&[4]), pt(&[-3])] {
            assert_eq!(phi(&w, &y, &y), w.length(&y));
        }
    }

    #[test]
    fn translation_bound_examples() {
        let z = LengthOracle::standard(1);
        let tb = translation_bound(&z, &pt(&[4]), 10.0);
        assert_eq!(tb.value, 4.0);
        assert!(tb.certified);
        let b = LengthOracle::beta(1, 0.5);
        let tb = translation_bound(&b, &pt(&[1]), 100.0);
        assert!((tb.value - 1.0).abs() < 1e-12);
        assert_eq!(translation_bound(&z, &pt(&[0]), 5.0).value, 0.0);
    }

    #[test]
    fn translation_bound_nondecreasing_in_radius() {
        let l = LengthOracle::norm(2, NormSpec::L2);
        let y = pt(&[2, 1]);
        let mut prev = 0.0;
        for r in 1..8 {
            let v = translation_bound(&l, &y, r as f64).value;
            assert!(v >= prev);
            assert!(v <= l.length(&y) + 1e-12);
            prev = v;
        }
    }

    #[test]
    fn cocycle_identity_examples() {
        assert!(cocycle_identity_check(&LengthOracle::standard(1), &pt(&[2]), &pt(&[3]), 10.0));
        let w = LengthOracle::word(&GeneratingSet::integers(&[1, 2]).unwrap());
        assert!(cocycle_identity_check(&w, &pt(&[1]), &pt(&[1]), 10.0));
        let l1 = LengthOracle::norm(2, NormSpec::L1);
        assert!(cocycle_identity_check(&l1, &pt(&[1, 0]), &pt(&[0, 1]), 5.0));
        let l2 = LengthOracle::norm(2, NormSpec::L2);
        assert!(cocycle_identity_check(&l2, &pt(&[2, -1]), &pt(&[1, 3]), 6.0));
    }

    #[test]
    fn pk_norm_examples() {
        let z = LengthOracle::standard(1);
        let d0 = CoefficientFunction::delta(pt(&[0]));
        assert_eq!(pk_norm(&d0, 2.0, 3.0, &z), 1.0);
        assert_eq!(pk_norm(&d0, 1.0, 0.0, &z), 1.0);
        let d1 = CoefficientFunction::delta(pt(&[1]));
        assert!((pk_norm(&d1, 2.0, 3.0, &z) - 8.0).abs() < 1e-12);
        let f = CoefficientFunction::from_pairs([(pt(&[1]), c(1.0)), (pt(&[2]), c(1.0))]);
        assert!((pk_norm(&f, 1.0, 1.0, &z) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn order_lipnorm_examples() {
        let z = LengthOracle::standard(1);
        let f = CoefficientFunction::from_pairs([(pt(&[1]), c(1.0)), (pt(&[-1]), c(1.0))]);
        assert_eq!(order_lipnorm(&f, &z), 2.0);
        assert_eq!(order_lipnorm(&CoefficientFunction::delta(pt(&[0])), &z), 0.0);
        let w = LengthOracle::word(&GeneratingSet::integers(&[1, 2]).unwrap());
        let f = CoefficientFunction::from_pairs([(pt(&[5]), c(3.0))]);
        assert_eq!(order_lipnorm(&f, &w), 9.0);
    }

    #[test]
    fn length_table_csv_layout() {
        let mut t = std::collections::BTreeMap::new();
        t.insert(pt(&[0, 1]), 1.0);
        t.insert(pt(&[0, 0]), 0.0);
        assert_eq!(length_table_csv(&t, 2), "x0,x1,length\n0,0,0\n0,1,1\n");
    }
}
