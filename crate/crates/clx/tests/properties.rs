//! Property tests for the functional identities and bornology axioms.

use proptest::prelude::*;

use clx::bornology::{
    check_stable_under_lip_selection, probe_family, Bornology, ProbeBudget,
};
use clx::enlargement::{hits_pointwise, in_enlargement};
use clx::functionals::{distance, excess, gap, hausdorff, uniform_gap};
use clx::geoset::{GeoSet, Primitive};
use clx::radius::RadiusFunction;
use clx::space::{Point, Space};

fn arb_point2() -> impl Strategy<Value = (f64, f64)> {
    (-100.0..100.0f64, -100.0..100.0f64)
}

fn arb_cloud2(max_len: usize) -> impl Strategy<Value = GeoSet> {
    prop::collection::vec(arb_point2(), 1..max_len).prop_map(|rows| GeoSet::cloud2(&rows))
}

/// Clouds and segments mixed.
fn arb_geoset2() -> impl Strategy<Value = GeoSet> {
    prop::collection::vec((arb_point2(), arb_point2(), any::<bool>()), 1..5).prop_map(|prims| {
        let space = Space::euclidean(2).unwrap();
        let prims: Vec<Primitive> = prims
            .into_iter()
            .map(|((ax, ay), (bx, by), is_seg)| {
                if is_seg && (ax, ay) != (bx, by) {
                    Primitive::Segment(Point::xy(ax, ay), Point::xy(bx, by))
                } else {
                    Primitive::Point(Point::xy(ax, ay))
                }
            })
            .collect();
        GeoSet::new(space, prims).unwrap()
    })
}

proptest! {
    #[test]
    fn distance_is_one_lipschitz(a in arb_geoset2(), x in arb_point2(), y in arb_point2()) {
        let px = Point::xy(x.0, x.1);
        let py = Point::xy(y.0, y.1);
        let dx = distance(&px, &a).unwrap();
        let dy = distance(&py, &a).unwrap();
        let dxy = ((x.0 - y.0).powi(2) + (x.1 - y.1).powi(2)).sqrt();
        prop_assert!((dx - dy).abs() <= dxy + 1e-9);
    }

    #[test]
    fn gap_is_symmetric_and_a_lower_bound(s in arb_geoset2(), a in arb_geoset2()) {
        let g1 = gap(&s, &a).unwrap();
        let g2 = gap(&a, &s).unwrap();
        prop_assert!((g1 - g2).abs() <= 1e-9);
        // the gap is dominated by every sampled pair distance
        let ss = s.dense_sample(1.0).unwrap();
        for x in ss.points() {
            prop_assert!(g1 <= distance(x, &a).unwrap() + 1e-9);
        }
    }

    #[test]
    fn union_laws_for_point_clouds(s1 in arb_cloud2(5), s2 in arb_cloud2(5), c in arb_cloud2(5)) {
        let u = s1.union(&s2).unwrap();
        let g = gap(&u, &c).unwrap();
        prop_assert_eq!(g, gap(&s1, &c).unwrap().min(gap(&s2, &c).unwrap()));
        let e = excess(&u, &c, 1.0).unwrap().value;
        prop_assert_eq!(e, excess(&s1, &c, 1.0).unwrap().value.max(excess(&s2, &c, 1.0).unwrap().value));
    }

    #[test]
    fn excess_triangle_for_point_clouds(s in arb_cloud2(5), b in arb_cloud2(5), a in arb_geoset2()) {
        let e_sa = excess(&s, &a, 1.0).unwrap().value;
        let e_sb = excess(&s, &b, 1.0).unwrap().value;
        let e_ba = excess(&b, &a, 1.0).unwrap().value;
        prop_assert!(e_sa <= e_sb + e_ba + 1e-9);
    }

    #[test]
    fn closed_duality_is_exact_for_clouds(a in arb_cloud2(6), b in arb_cloud2(6), eps in 0.1..50.0f64) {
        let e = excess(&a, &b, 1.0).unwrap().value;
        let all_inside = a
            .points()
            .all(|x| in_enlargement(x, &b, eps, true).unwrap());
        prop_assert_eq!(e <= eps, all_inside);
        // the open direction: strict containment forces excess <= eps
        let strictly_inside = a
            .points()
            .all(|x| in_enlargement(x, &b, eps, false).unwrap());
        if strictly_inside {
            prop_assert!(e <= eps);
        }
    }

    #[test]
    fn hausdorff_is_max_of_excesses(a in arb_geoset2(), b in arb_geoset2()) {
        let h = hausdorff(&a, &b, 0.5).unwrap();
        let e1 = excess(&a, &b, 0.5).unwrap().value;
        let e2 = excess(&b, &a, 0.5).unwrap().value;
        prop_assert_eq!(h, e1.max(e2));
        prop_assert_eq!(h, hausdorff(&b, &a, 0.5).unwrap());
        // self-distance is exactly zero for clouds; sampled segment points
        // sit on the segment only up to rounding
        let self_h = hausdorff(&a, &a, 0.5).unwrap();
        if a.is_point_cloud() {
            prop_assert_eq!(self_h, 0.0);
        } else {
            prop_assert!(self_h < 1e-9);
        }
    }

    #[test]
    fn entourage_deficit_below_hausdorff(a in arb_cloud2(6), b in arb_cloud2(6), s in arb_cloud2(6)) {
        let u = uniform_gap(&a, &b, &s).unwrap();
        let h = hausdorff(&a, &b, 1.0).unwrap();
        prop_assert!(u <= h + 1e-9);
    }

    #[test]
    fn constant_hit_matches_strict_excess(a in arb_geoset2(), c in arb_cloud2(6), r in 0.5..80.0f64) {
        let f = RadiusFunction::constant(r).unwrap();
        let rep = hits_pointwise(&a, &c, &f).unwrap();
        let e = excess(&c, &a, 1.0).unwrap().value;
        prop_assert_eq!(rep.holds, e < r);
    }

    #[test]
    fn text_format_round_trips_bit_exactly(a in arb_geoset2()) {
        let b = GeoSet::from_text(&a.to_text(), "prop").unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn builtin_bornologies_contain_singletons_and_unions(p in arb_point2(), q in arb_point2()) {
        let s1 = GeoSet::cloud2(&[p]);
        let s2 = GeoSet::cloud2(&[q]);
        let u = s1.union(&s2).unwrap();
        for b in [Bornology::Finite, Bornology::Bounded, Bornology::All, Bornology::StripBase { axis: 0 }] {
            prop_assert!(b.contains(&s1));
            prop_assert!(b.contains(&s2));
            prop_assert!(b.contains(&u));
        }
    }
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(u, v)| u + t * (v - u)).collect()
}

fn norm_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v) * (u - v))
        .sum::<f64>()
        .sqrt()
}

proptest! {
    /// Sampled-pair oracle for the segment kernels: the computed distance is
    /// realized by feasible points, so it can never undershoot; dominating
    /// every sampled pair certifies it does not overshoot either.
    #[test]
    fn gap_dominates_no_sampled_pair(
        a1 in arb_point2(), b1 in arb_point2(),
        a2 in arb_point2(), b2 in arb_point2(),
    ) {
        prop_assume!(a1 != b1 && a2 != b2);
        let s = GeoSet::segment2(a1, b1);
        let t = GeoSet::segment2(a2, b2);
        let d = gap(&s, &t).unwrap();
        let (a1v, b1v) = (vec![a1.0, a1.1], vec![b1.0, b1.1]);
        let (a2v, b2v) = (vec![a2.0, a2.1], vec![b2.0, b2.1]);
        let k = 60;
        for i in 0..=k {
            let p = lerp(&a1v, &b1v, i as f64 / k as f64);
            for j in 0..=k {
                let q = lerp(&a2v, &b2v, j as f64 / k as f64);
                prop_assert!(d <= norm_diff(&p, &q) + 1e-9);
            }
        }
    }

    #[test]
    fn point_distance_dominates_no_sampled_foot(
        x in arb_point2(), a in arb_point2(), b in arb_point2(),
    ) {
        prop_assume!(a != b);
        let seg = GeoSet::segment2(a, b);
        let d = distance(&Point::xy(x.0, x.1), &seg).unwrap();
        let (av, bv) = (vec![a.0, a.1], vec![b.0, b.1]);
        let xv = vec![x.0, x.1];
        for i in 0..=500 {
            let p = lerp(&av, &bv, i as f64 / 500.0);
            prop_assert!(d <= norm_diff(&xv, &p) + 1e-9);
        }
    }

    /// Clipping is an exact intersection: clipped samples lie both in the
    /// region and on the original set, and original samples inside the
    /// region stay close to the clipped set.
    #[test]
    fn clip_is_an_intersection(a in arb_geoset2(), r in 1.0..80.0f64) {
        let region = clx::geoset::Region::ball(vec![0.0, 0.0], r);
        match clx::geoset::clip(&a, &region).unwrap() {
            Some(clipped) => {
                let sample = clipped.dense_sample(0.05).unwrap();
                for p in sample.points() {
                    let c = p.coords().unwrap();
                    prop_assert!(norm_diff(c, &[0.0, 0.0]) <= r + 1e-9);
                    prop_assert!(distance(p, &a).unwrap() <= 1e-9);
                }
                let back = a.dense_sample(0.05).unwrap();
                for p in back.points() {
                    let c = p.coords().unwrap();
                    if norm_diff(c, &[0.0, 0.0]) <= r - 1e-9 {
                        prop_assert!(distance(p, &clipped).unwrap() <= 1e-9);
                    }
                }
            }
            None => {
                // an empty intersection means every sample is outside
                let back = a.dense_sample(0.05).unwrap();
                for p in back.points() {
                    let c = p.coords().unwrap();
                    prop_assert!(norm_diff(c, &[0.0, 0.0]) > r - 1e-6);
                }
            }
        }
    }
}

#[test]
fn stability_reports_are_deterministic_in_the_seed() {
    let b = Bornology::Bounded;
    let space = Space::euclidean(2).unwrap();
    let budget = ProbeBudget {
        count: 6,
        extent: 12.0,
        density: 1.0,
    };
    let probes_a = probe_family(&b, &space, budget, 5).unwrap();
    let probes_b = probe_family(&b, &space, budget, 5).unwrap();
    assert_eq!(probes_a, probes_b);
    let f = RadiusFunction::constant(1.0).unwrap();
    let r1 = check_stable_under_lip_selection(&b, &probes_a, std::slice::from_ref(&f), &[], 9);
    let r2 = check_stable_under_lip_selection(&b, &probes_b, std::slice::from_ref(&f), &[], 9);
    assert_eq!(r1, r2);
}

/// The bounded bornology must pass the Lip-selection stability check at any
/// trial count.
#[test]
fn bounded_is_stable_under_lip_selections_at_scale() {
    let b = Bornology::Bounded;
    let space = Space::euclidean(2).unwrap();
    let budget = ProbeBudget {
        count: 40,
        extent: 25.0,
        density: 1.0,
    };
    let probes = probe_family(&b, &space, budget, 17).unwrap();
    let anchor = GeoSet::cloud2(&[(0.0, 0.0)]);
    let fns = vec![
        RadiusFunction::constant(2.0).unwrap(),
        RadiusFunction::affine_dist(anchor, 1.0, 2.0).unwrap(),
        RadiusFunction::affine_coord(0, 0.5, 30.0),
    ];
    let rep = check_stable_under_lip_selection(&b, &probes, &fns, &[], 23);
    assert!(rep.trials > 0);
    assert!(rep.all_passed());
}
