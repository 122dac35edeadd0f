use std::cmp::Ordering;

use proptest::prelude::*;

use leja_lab::flip2d::{classify, decompose, FlipContext};
use leja_lab::lebesgue::{disk_leja_context, lebesgue_2d};
use leja_lab::leja1d::{disk_leja_point, DyadicAngle, NodeSequence1D, CompactDescriptor};
use leja_lab::numeration::{block_size, compare, index_to_multi, multi_to_index, successor};
use leja_lab::vdm::{intertwine, vdm_direct, vdm_telescoped, LogComplex};
use leja_lab::Complex64;

fn unit(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

// pairwise distinct angles, well separated
fn distinct_angles(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..std::f64::consts::TAU, len).prop_filter("separated", |v| {
        v.iter().enumerate().all(|(i, a)| {
            v[..i]
                .iter()
                .all(|b| (unit(*a) - unit(*b)).norm() > 1e-2)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn numeration_is_a_bijection(s in 1usize..6, n in 1u64..200_000) {
        let k = index_to_multi(s, n).unwrap();
        prop_assert_eq!(multi_to_index(&k).unwrap(), n);
        let next = successor(&k);
        prop_assert_eq!(multi_to_index(&next).unwrap(), n + 1);
        prop_assert_eq!(compare(&k, &next).unwrap(), Ordering::Less);
        let d = k.degree();
        prop_assert!(n <= block_size(s, d).unwrap());
        if d > 0 {
            prop_assert!(n > block_size(s, d - 1).unwrap());
        }
    }

    #[test]
    fn decomposition_invariants(n in 1usize..100_000) {
        let dm = decompose(n).unwrap();
        let below = if dm.d == 0 { 0 } else { block_size(2, dm.d - 1).unwrap() as usize };
        prop_assert!(below < n && n <= block_size(2, dm.d).unwrap() as usize);
        prop_assert_eq!(dm.m, n - below - 1);
    }

    #[test]
    fn classification_is_total(d in 0usize..40, m_frac in 0.0f64..1.0, p in 0usize..41, q in 0usize..41) {
        let m = ((d as f64) * m_frac).round() as usize;
        let inside = p + q < d || (p + q == d && p <= m);
        prop_assert_eq!(classify(p, q, d, m).is_ok(), inside);
    }

    #[test]
    fn leja_points_fill_dyadic_levels(level in 0u32..12) {
        let count = 1u64 << level;
        let mut nums: Vec<u64> = (0..count)
            .map(|k| {
                let a = disk_leja_point(k);
                // angle pi * num / 2^l in units of pi / 2^level
                a.numerator() << (level - a.level())
            })
            .collect();
        nums.sort_unstable();
        // the first 2^level points are exactly the 2^level-th roots of unity
        let expect: Vec<u64> = (0..count).map(|j| 2 * j).collect();
        prop_assert_eq!(nums, expect);
    }

    #[test]
    fn flips_interpolate_for_arbitrary_distinct_nodes(
        etas in distinct_angles(6),
        thetas in distinct_angles(6),
        n in 1usize..=21,
        zt in 0.0f64..6.3, wt in 0.0f64..6.3, r in 0.0f64..1.0,
    ) {
        let e: Vec<Complex64> = etas.iter().map(|&t| unit(t)).collect();
        let th: Vec<Complex64> = thetas.iter().map(|&t| unit(t)).collect();
        let ctx = FlipContext::new(&e, &th, n).unwrap();
        for (i, a) in ctx.nodes().iter().enumerate() {
            let at = ctx.eval_all(e[a.p], th[a.q]);
            for (j, v) in at.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!((v - expect).norm() < 1e-8, "{} {} {}", i, j, v);
            }
        }
        let (z, w) = (unit(zt) * r, unit(wt));
        let sum: Complex64 = ctx.eval_all(z, w).iter().sum();
        prop_assert!((sum - 1.0).norm() < 1e-8);
    }

    #[test]
    fn telescoped_vandermonde_matches_direct(
        a in distinct_angles(5),
        b in distinct_angles(5),
        c in distinct_angles(5),
        s in 2usize..=3,
        n in 1usize..=12,
    ) {
        let comps: Vec<NodeSequence1D> = [a, b, c][..s]
            .iter()
            .map(|v| NodeSequence1D::new(v.iter().map(|&t| unit(t)).collect(), CompactDescriptor::UnitDisk).unwrap())
            .collect();
        let Ok(pts) = intertwine(&comps, n) else { return Ok(()) };
        let direct = vdm_direct(&pts).unwrap();
        let tele = vdm_telescoped(&comps, n).unwrap();
        prop_assert!(tele.close_to(&direct, 1e-9, 1e-8), "{:?} vs {:?}", tele, direct);
    }

    #[test]
    fn log_complex_round_trip(re in -1e3f64..1e3, im in -1e3f64..1e3, re2 in -1e3f64..1e3, im2 in 1e-3f64..1e3) {
        let (x, y) = (Complex64::new(re, im), Complex64::new(re2, im2));
        let p = LogComplex::from_complex(x).mul(LogComplex::from_complex(y));
        let back = p.div(LogComplex::from_complex(y)).unwrap().to_complex().unwrap();
        prop_assert!((back - x).norm() <= 1e-12 * x.norm().max(1.0));
    }

    #[test]
    fn dyadic_angles_add_exactly(p1 in 0u64..1024, l1 in 0u32..10, p2 in 0u64..1024, l2 in 0u32..10) {
        let (a, b) = (DyadicAngle::new(p1, l1).unwrap(), DyadicAngle::new(p2, l2).unwrap());
        let sum = a.add(&b);
        let expect = (a.over_pi() + b.over_pi()).rem_euclid(2.0);
        prop_assert!((sum.over_pi() - expect).abs() < 1e-12);
        prop_assert_eq!(sum, b.add(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn lebesgue_constant_dominates_every_flip(n in 1usize..=21) {
        let r = lebesgue_2d(&disk_leja_context(n).unwrap(), 64).unwrap();
        prop_assert!(r.lambda >= 1.0 - 1e-12);
        for s in &r.per_node_sup {
            prop_assert!(r.lambda >= s.sup);
        }
    }
}
