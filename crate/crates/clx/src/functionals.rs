//! The geometric set functionals: distance, gap, excess, Hausdorff and the
//! entourage deficit (uniform gap).
//!
//! Distances to a `GeoSet` are exact: point-to-point directly, point-to-
//! segment by clamped projection, segment-to-segment by convex quadratic
//! minimization over the parameter square. Only the excess of a set with
//! segment primitives on the *left* is sampled, and then it carries a
//! certified error bound from the 1-Lipschitzness of `d(·, A)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geoset::{GeoSet, Primitive};
use crate::space::{dot, euclidean_distance, Point, Space};

/// d(x, A) = min over primitives of the exact point-to-primitive distance.
/// Zero iff x lies on some primitive.
pub fn distance(x: &Point, a: &GeoSet) -> Result<f64> {
    x.validate_in(a.space())?;
    let mut best = f64::INFINITY;
    for p in a.primitives() {
        let d = match (p, x) {
            (Primitive::Point(y), _) => crate::space::point_distance(a.space(), x, y)?,
            (Primitive::Segment(pa, pb), Point::Coords(c)) => {
                point_segment_distance(c, pa.coords().unwrap(), pb.coords().unwrap())
            }
            (Primitive::Segment(..), Point::Index(_)) => {
                return Err(Error::SpaceMismatch(
                    "index point against a segment primitive".into(),
                ))
            }
        };
        best = best.min(d);
    }
    Ok(best)
}

/// D(s, a) = inf of pairwise distances; exact over primitive pairs.
pub fn gap(s: &GeoSet, a: &GeoSet) -> Result<f64> {
    s.same_space(a)?;
    let mut best = f64::INFINITY;
    for p in s.primitives() {
        for q in a.primitives() {
            best = best.min(primitive_distance(s.space(), p, q)?);
        }
    }
    Ok(best)
}

/// An excess value together with a certified sampling error bound: the true
/// supremum lies in `[value, value + error_bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExcessValue {
    pub value: f64,
    pub error_bound: f64,
}

/// e(s, a) = sup over x in s of d(x, a). Exact (error bound zero) when `s`
/// is a point cloud; segment primitives of `s` are sampled at spacing
/// `sample_step`, which bounds the underestimate because d(·, a) is
/// 1-Lipschitz.
pub fn excess(s: &GeoSet, a: &GeoSet, sample_step: f64) -> Result<ExcessValue> {
    s.same_space(a)?;
    if s.has_segments() && !(sample_step > 0.0) {
        return Err(Error::InvalidInput(format!(
            "sample step must be positive when the left argument has segments, got {sample_step}"
        )));
    }
    let mut sup = f64::NEG_INFINITY;
    let mut sampled = false;
    for p in s.primitives() {
        match p {
            Primitive::Point(x) => sup = sup.max(distance(x, a)?),
            Primitive::Segment(pa, pb) => {
                sampled = true;
                let (ca, cb) = (pa.coords().unwrap(), pb.coords().unwrap());
                let len = euclidean_distance(ca, cb);
                let k = (len / sample_step).ceil().max(1.0) as usize;
                for i in 0..=k {
                    let t = i as f64 / k as f64;
                    let pt: Vec<f64> =
                        ca.iter().zip(cb).map(|(u, v)| u + t * (v - u)).collect();
                    sup = sup.max(distance(&Point::Coords(pt), a)?);
                }
            }
        }
    }
    Ok(ExcessValue {
        value: sup,
        error_bound: if sampled { sample_step } else { 0.0 },
    })
}

/// Relative default sampling: step = 1e-3 of the longest segment of `s`.
pub fn excess_default(s: &GeoSet, a: &GeoSet) -> Result<ExcessValue> {
    let step = if s.has_segments() {
        (s.max_segment_length() * 1e-3).max(f64::MIN_POSITIVE)
    } else {
        1.0
    };
    excess(s, a, step)
}

/// max(e(a,b), e(b,a)); symmetric, zero iff the sets agree up to sampling.
pub fn hausdorff(a: &GeoSet, b: &GeoSet, sample_step: f64) -> Result<f64> {
    let e1 = excess(a, b, sample_step)?.value;
    let e2 = excess(b, a, sample_step)?.value;
    Ok(e1.max(e2))
}

/// sup over x in the point probe of |d(x,a) − d(x,b)|: the deficit of the
/// entourage with base set `probe`.
pub fn uniform_gap(a: &GeoSet, b: &GeoSet, probe: &GeoSet) -> Result<f64> {
    a.same_space(b)?;
    a.same_space(probe)?;
    probe.require_point_cloud("entourage probe")?;
    let mut sup: f64 = 0.0;
    for x in probe.points() {
        sup = sup.max((distance(x, a)? - distance(x, b)?).abs());
    }
    Ok(sup)
}

fn primitive_distance(space: &Space, p: &Primitive, q: &Primitive) -> Result<f64> {
    match (p, q) {
        (Primitive::Point(x), Primitive::Point(y)) => {
            crate::space::point_distance(space, x, y)
        }
        (Primitive::Point(x), Primitive::Segment(a, b))
        | (Primitive::Segment(a, b), Primitive::Point(x)) => {
            let c = x.coords().ok_or_else(|| {
                Error::SpaceMismatch("index point against a segment primitive".into())
            })?;
            Ok(point_segment_distance(
                c,
                a.coords().unwrap(),
                b.coords().unwrap(),
            ))
        }
        (Primitive::Segment(a1, b1), Primitive::Segment(a2, b2)) => {
            Ok(segment_segment_distance(
                a1.coords().unwrap(),
                b1.coords().unwrap(),
                a2.coords().unwrap(),
                b2.coords().unwrap(),
            ))
        }
    }
}

/// Distance from a point to a closed segment via clamped projection.
pub(crate) fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let d: Vec<f64> = a.iter().zip(b).map(|(u, v)| v - u).collect();
    let l2 = dot(&d, &d);
    if l2 == 0.0 {
        return euclidean_distance(p, a);
    }
    let pa: Vec<f64> = p.iter().zip(a).map(|(u, v)| u - v).collect();
    let t = (dot(&pa, &d) / l2).clamp(0.0, 1.0);
    let foot: Vec<f64> = a.iter().zip(&d).map(|(u, dd)| u + t * dd).collect();
    euclidean_distance(p, &foot)
}

/// Closest distance between two closed segments. Minimizes the convex
/// quadratic |p1 + s·d1 − (p2 + t·d2)|² over the unit square, with the
/// usual clamping case analysis; exact including parallel segments.
pub(crate) fn segment_segment_distance(p1: &[f64], q1: &[f64], p2: &[f64], q2: &[f64]) -> f64 {
    let d1: Vec<f64> = p1.iter().zip(q1).map(|(u, v)| v - u).collect();
    let d2: Vec<f64> = p2.iter().zip(q2).map(|(u, v)| v - u).collect();
    let r: Vec<f64> = p1.iter().zip(p2).map(|(u, v)| u - v).collect();
    let a = dot(&d1, &d1);
    let e = dot(&d2, &d2);
    let f = dot(&d2, &r);

    let (s, t);
    if a == 0.0 && e == 0.0 {
        return euclidean_distance(p1, p2);
    }
    if a == 0.0 {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot(&d1, &r);
        if e == 0.0 {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot(&d1, &d2);
            let denom = a * e - b * b;
            let mut s_ = if denom != 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t_ = (b * s_ + f) / e;
            if t_ < 0.0 {
                t_ = 0.0;
                s_ = (-c / a).clamp(0.0, 1.0);
            } else if t_ > 1.0 {
                t_ = 1.0;
                s_ = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s_;
            t = t_;
        }
    }
    let c1: Vec<f64> = p1.iter().zip(&d1).map(|(u, d)| u + s * d).collect();
    let c2: Vec<f64> = p2.iter().zip(&d2).map(|(u, d)| u + t * d).collect();
    euclidean_distance(&c1, &c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geoset::GeoSet;

    const SQRT32: f64 = 5.656854249492381; // interior foot at (4,4)
    const TWO_OVER_SQRT5: f64 = 0.8944271909999159; // |2*0-2|/sqrt(5)
    const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn distance_to_diagonal_segment() {
        let a = GeoSet::segment2((0.0, 0.0), (20.0, 20.0));
        let d = distance(&Point::xy(0.0, 8.0), &a).unwrap();
        assert!((d - SQRT32).abs() < 1e-12);
    }

    #[test]
    fn distance_of_member_point_is_zero() {
        let a = GeoSet::segment2((0.0, 0.0), (20.0, 20.0));
        assert_eq!(distance(&Point::xy(5.0, 5.0), &a).unwrap(), 0.0);
        let b = GeoSet::cloud2(&[(3.0, 4.0)]);
        assert_eq!(distance(&Point::xy(3.0, 4.0), &b).unwrap(), 0.0);
    }

    #[test]
    fn distance_to_steep_segment() {
        // line y = 2x, foot at x = 0.8 interior
        let a = GeoSet::segment2((0.0, 0.0), (1.0, 2.0));
        let d = distance(&Point::xy(0.0, 2.0), &a).unwrap();
        assert!((d - TWO_OVER_SQRT5).abs() < 1e-12);
    }

    #[test]
    fn distance_space_mismatch_rejected() {
        let a = GeoSet::cloud2(&[(0.0, 0.0)]);
        let x = Point::Coords(vec![0.0, 0.0, 0.0]);
        assert!(distance(&x, &a).is_err());
    }

    #[test]
    fn gap_zero_on_common_point() {
        let s = GeoSet::cloud2(&[(1.0, 1.0), (9.0, 0.0)]);
        let a = GeoSet::segment2((0.0, 0.0), (5.0, 5.0));
        assert_eq!(gap(&s, &a).unwrap(), 0.0);
    }

    #[test]
    fn gap_of_axis_points_to_diagonal() {
        let pts: Vec<(f64, f64)> = (1..=50).map(|n| (n as f64, 0.0)).collect();
        let s = GeoSet::cloud2(&pts);
        let a = GeoSet::segment2((0.0, 0.0), (100.0, 100.0));
        let g = gap(&s, &a).unwrap();
        assert!((g - INV_SQRT2).abs() < 1e-12);
    }

    #[test]
    fn gap_union_law_on_singletons() {
        let s1 = GeoSet::cloud2(&[(0.0, 0.0)]);
        let s2 = GeoSet::cloud2(&[(3.0, 0.0)]);
        let c = GeoSet::cloud2(&[(1.0, 0.0)]);
        let u = s1.union(&s2).unwrap();
        assert_eq!(gap(&u, &c).unwrap(), 1.0);
        assert_eq!(
            gap(&u, &c).unwrap(),
            gap(&s1, &c).unwrap().min(gap(&s2, &c).unwrap())
        );
    }

    #[test]
    fn excess_of_set_against_itself_is_zero() {
        let a = GeoSet::cloud2(&[(0.0, 0.0), (2.0, 3.0)]);
        let e = excess(&a, &a, 1.0).unwrap();
        assert_eq!(e.value, 0.0);
        assert_eq!(e.error_bound, 0.0);
    }

    #[test]
    fn excess_of_axis_points_is_exact_max() {
        let pts: Vec<(f64, f64)> = (1..=8).map(|n| (0.0, n as f64)).collect();
        let s = GeoSet::cloud2(&pts);
        let a = GeoSet::segment2((0.0, 0.0), (100.0, 100.0));
        let e = excess(&s, &a, 1.0).unwrap();
        assert!((e.value - 8.0 * INV_SQRT2).abs() < 1e-12);
        assert_eq!(e.error_bound, 0.0);
    }

    #[test]
    fn excess_of_segment_is_sampled_with_bound() {
        let s = GeoSet::segment2((0.0, 0.0), (1.0, 0.0));
        let a = GeoSet::cloud2(&[(0.0, 0.0)]);
        let e = excess(&s, &a, 0.001).unwrap();
        // analytic sup is 1, attained at the sampled endpoint
        assert!(e.value >= 0.999 && e.value <= 1.0);
        assert_eq!(e.error_bound, 0.001);
    }

    #[test]
    fn excess_rejects_nonpositive_step_with_segments() {
        let s = GeoSet::segment2((0.0, 0.0), (1.0, 0.0));
        let a = GeoSet::cloud2(&[(0.0, 0.0)]);
        assert!(excess(&s, &a, 0.0).is_err());
    }

    #[test]
    fn hausdorff_matches_closed_forms() {
        let a = GeoSet::cloud2(&[(0.0, 0.0)]);
        assert_eq!(hausdorff(&a, &a, 1.0).unwrap(), 0.0);
        let b = GeoSet::cloud2(&[(3.0, 4.0)]);
        assert_eq!(hausdorff(&a, &b, 1.0).unwrap(), 5.0);
        let c = GeoSet::cloud2(&[(0.0, 0.0), (10.0, 0.0)]);
        // e(c,a) = 10, e(a,c) = 0
        assert_eq!(hausdorff(&c, &a, 1.0).unwrap(), 10.0);
    }

    #[test]
    fn uniform_gap_cases() {
        let a = GeoSet::cloud2(&[(0.0, 0.0)]);
        let b = GeoSet::cloud2(&[(1.0, 0.0)]);
        let s = GeoSet::cloud2(&[(-5.0, 0.0)]);
        assert_eq!(uniform_gap(&a, &a, &s).unwrap(), 0.0);
        assert_eq!(uniform_gap(&a, &b, &s).unwrap(), 1.0);

        let b2 = GeoSet::cloud2(&[(0.0, 0.0), (100.0, 0.0)]);
        let s2 = GeoSet::cloud2(&[(60.0, 0.0)]);
        assert_eq!(uniform_gap(&a, &b2, &s2).unwrap(), 20.0);
    }

    #[test]
    fn uniform_gap_rejects_segment_probe() {
        let a = GeoSet::cloud2(&[(0.0, 0.0)]);
        let s = GeoSet::segment2((0.0, 0.0), (1.0, 0.0));
        assert!(uniform_gap(&a, &a, &s).is_err());
    }

    #[test]
    fn segment_segment_parallel_and_crossing() {
        // parallel horizontal segments one unit apart
        let d = segment_segment_distance(
            &[0.0, 0.0],
            &[10.0, 0.0],
            &[0.0, 1.0],
            &[10.0, 1.0],
        );
        assert!((d - 1.0).abs() < 1e-12);
        // crossing segments have distance zero
        let d = segment_segment_distance(
            &[-1.0, -1.0],
            &[1.0, 1.0],
            &[-1.0, 1.0],
            &[1.0, -1.0],
        );
        assert!(d.abs() < 1e-12);
        // skew in 3d
        let d = segment_segment_distance(
            &[0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[0.0, 0.0, 2.0],
            &[0.0, 1.0, 2.0],
        );
        assert!((d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gap_between_disjoint_segments() {
        let s = GeoSet::segment2((0.0, 2.0), (10.0, 2.0));
        let a = GeoSet::segment2((0.0, 0.0), (10.0, 0.0));
        assert!((gap(&s, &a).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn functionals_in_a_matrix_space() {
        use crate::geoset::Primitive;
        use crate::space::Space;

        let space = Space::distance_matrix(vec![
            vec![0.0, 1.0, 2.0, 2.5],
            vec![1.0, 0.0, 1.5, 2.0],
            vec![2.0, 1.5, 0.0, 1.0],
            vec![2.5, 2.0, 1.0, 0.0],
        ])
        .unwrap();
        let mk = |idx: &[usize]| {
            GeoSet::new(
                space.clone(),
                idx.iter().map(|&i| Primitive::Point(Point::Index(i))).collect(),
            )
            .unwrap()
        };
        let s = mk(&[0, 1]);
        let a = mk(&[2, 3]);
        assert_eq!(gap(&s, &a).unwrap(), 1.5);
        // e(s,a): d(#0,{2,3}) = 2, d(#1,{2,3}) = 1.5
        let e = excess(&s, &a, 1.0).unwrap();
        assert_eq!(e.value, 2.0);
        assert_eq!(e.error_bound, 0.0);
        assert_eq!(hausdorff(&s, &a, 1.0).unwrap(), 2.0);
        let probe = mk(&[1]);
        // |d(#1,s) - d(#1,a)| = |0 - 1.5|
        assert_eq!(uniform_gap(&s, &a, &probe).unwrap(), 1.5);
    }
}
