//! Finitely represented nonempty closed sets.
//!
//! A `GeoSet` is a nonempty finite union of points and closed segments in a
//! metric space. Finite unions of compact primitives are automatically
//! closed and nonempty, so a `GeoSet` is a faithful computational stand-in
//! for a member of the hyperspace of nonempty closed sets.
//!
//! The text format, used by the CLI and fixtures, is line-oriented:
//!
//! ```text
//! space euclidean 2
//! P 0 0
//! S 0 0 20 20
//! ```
//!
//! For matrix spaces the header `space matrix n` is followed by the `n`
//! matrix rows, then the primitives (`P <index>`). Numbers round-trip
//! bit-exactly because printing uses the shortest representation.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{euclidean_distance, Point, Space};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Primitive {
    Point(Point),
    /// A closed segment with distinct endpoints; Euclidean spaces only.
    Segment(Point, Point),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeoSet {
    space: Space,
    primitives: Vec<Primitive>,
}

impl GeoSet {
    pub fn new(space: Space, primitives: Vec<Primitive>) -> Result<GeoSet> {
        if primitives.is_empty() {
            return Err(Error::InvalidInput("a GeoSet must be nonempty".into()));
        }
        for p in &primitives {
            match p {
                Primitive::Point(x) => x.validate_in(&space)?,
                Primitive::Segment(a, b) => {
                    if !space.is_euclidean() {
                        return Err(Error::InvalidInput(
                            "segments are only supported in Euclidean spaces".into(),
                        ));
                    }
                    a.validate_in(&space)?;
                    b.validate_in(&space)?;
                    if a == b {
                        return Err(Error::InvalidInput(format!(
                            "segment endpoints must be distinct, got {a} twice"
                        )));
                    }
                }
            }
        }
        Ok(GeoSet { space, primitives })
    }

    /// A point cloud from coordinate rows in a Euclidean space.
    pub fn cloud(space: Space, rows: Vec<Vec<f64>>) -> Result<GeoSet> {
        let prims = rows
            .into_iter()
            .map(|r| Primitive::Point(Point::Coords(r)))
            .collect();
        GeoSet::new(space, prims)
    }

    /// Convenience for 2D point clouds.
    pub fn cloud2(rows: &[(f64, f64)]) -> GeoSet {
        let space = Space::euclidean(2).expect("dimension 2");
        GeoSet::cloud(space, rows.iter().map(|&(x, y)| vec![x, y]).collect())
            .expect("nonempty 2D cloud")
    }

    /// Convenience for a single 2D segment.
    pub fn segment2(a: (f64, f64), b: (f64, f64)) -> GeoSet {
        let space = Space::euclidean(2).expect("dimension 2");
        GeoSet::new(
            space,
            vec![Primitive::Segment(Point::xy(a.0, a.1), Point::xy(b.0, b.1))],
        )
        .expect("valid segment")
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn same_space(&self, other: &GeoSet) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                "operands live in different spaces".into(),
            ));
        }
        Ok(())
    }

    pub fn is_point_cloud(&self) -> bool {
        self.primitives
            .iter()
            .all(|p| matches!(p, Primitive::Point(_)))
    }

    pub fn has_segments(&self) -> bool {
        !self.is_point_cloud()
    }

    /// Iterates the point primitives, skipping segments. Callers that need
    /// every primitive check `is_point_cloud` or sample first.
    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.primitives.iter().filter_map(|p| match p {
            Primitive::Point(x) => Some(x),
            Primitive::Segment(..) => None,
        })
    }

    pub fn require_point_cloud(&self, role: &str) -> Result<()> {
        if self.has_segments() {
            return Err(Error::InvalidInput(format!(
                "{role} must be a finite point cloud, found a segment"
            )));
        }
        Ok(())
    }

    /// Union of two sets over the same space.
    pub fn union(&self, other: &GeoSet) -> Result<GeoSet> {
        self.same_space(other)?;
        let mut prims = self.primitives.clone();
        prims.extend(other.primitives.iter().cloned());
        GeoSet::new(self.space.clone(), prims)
    }

    /// An `h`-dense point sample of the set: every point of the set is
    /// within `h` of a sample point. Point primitives are kept verbatim;
    /// segments are sampled endpoint-inclusive at spacing <= h.
    pub fn dense_sample(&self, h: f64) -> Result<GeoSet> {
        if self.is_point_cloud() {
            return Ok(self.clone());
        }
        if h <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "sample step must be positive, got {h}"
            )));
        }
        let mut prims = Vec::new();
        for p in &self.primitives {
            match p {
                Primitive::Point(x) => prims.push(Primitive::Point(x.clone())),
                Primitive::Segment(a, b) => {
                    let (ca, cb) = (a.coords().unwrap(), b.coords().unwrap());
                    let len = euclidean_distance(ca, cb);
                    let k = (len / h).ceil().max(1.0) as usize;
                    for i in 0..=k {
                        let t = i as f64 / k as f64;
                        let pt: Vec<f64> = ca
                            .iter()
                            .zip(cb)
                            .map(|(u, v)| u + t * (v - u))
                            .collect();
                        prims.push(Primitive::Point(Point::Coords(pt)));
                    }
                }
            }
        }
        GeoSet::new(self.space.clone(), prims)
    }

    /// Longest segment length, used for relative sampling defaults.
    pub fn max_segment_length(&self) -> f64 {
        self.primitives
            .iter()
            .filter_map(|p| match p {
                Primitive::Segment(a, b) => {
                    Some(euclidean_distance(a.coords().unwrap(), b.coords().unwrap()))
                }
                Primitive::Point(_) => None,
            })
            .fold(0.0, f64::max)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.space {
            Space::Euclidean { dimension } => {
                writeln!(out, "space euclidean {dimension}").unwrap();
            }
            Space::DistanceMatrix { entries } => {
                writeln!(out, "space matrix {}", entries.len()).unwrap();
                for row in entries {
                    let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                    writeln!(out, "{}", cells.join(" ")).unwrap();
                }
            }
        }
        for p in &self.primitives {
            match p {
                Primitive::Point(Point::Coords(c)) => {
                    let cells: Vec<String> = c.iter().map(|v| format!("{v}")).collect();
                    writeln!(out, "P {}", cells.join(" ")).unwrap();
                }
                Primitive::Point(Point::Index(i)) => {
                    writeln!(out, "P {i}").unwrap();
                }
                Primitive::Segment(a, b) => {
                    let (ca, cb) = (a.coords().unwrap(), b.coords().unwrap());
                    let cells: Vec<String> =
                        ca.iter().chain(cb).map(|v| format!("{v}")).collect();
                    writeln!(out, "S {}", cells.join(" ")).unwrap();
                }
            }
        }
        out
    }

    pub fn from_text(text: &str, path: &str) -> Result<GeoSet> {
        let err = |line: usize, msg: String| Error::Parse {
            path: path.to_string(),
            line,
            msg,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines
            .next()
            .ok_or_else(|| err(1, "empty geoset file".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        let space = match head.as_slice() {
            ["space", "euclidean", k] => {
                let dim: usize = k
                    .parse()
                    .map_err(|_| err(hline, format!("bad dimension {k}")))?;
                Space::euclidean(dim).map_err(|e| err(hline, e.to_string()))?
            }
            ["space", "matrix", n] => {
                let n: usize = n
                    .parse()
                    .map_err(|_| err(hline, format!("bad matrix size {n}")))?;
                let mut entries = Vec::with_capacity(n);
                for _ in 0..n {
                    let (rline, row) = lines
                        .next()
                        .ok_or_else(|| err(hline, "matrix rows missing".into()))?;
                    let vals: Vec<f64> = row
                        .split_whitespace()
                        .map(|t| {
                            t.parse::<f64>()
                                .map_err(|_| err(rline, format!("bad number {t}")))
                        })
                        .collect::<Result<_>>()?;
                    entries.push(vals);
                }
                Space::distance_matrix(entries).map_err(|e| err(hline, e.to_string()))?
            }
            _ => {
                return Err(err(
                    hline,
                    format!("expected `space euclidean k` or `space matrix n`, got `{header}`"),
                ))
            }
        };

        let mut prims = Vec::new();
        for (lno, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let parse_nums = |ts: &[&str]| -> Result<Vec<f64>> {
                ts.iter()
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| err(lno, format!("bad number {t}")))
                    })
                    .collect()
            };
            match toks.split_first() {
                Some((&"P", rest)) => match &space {
                    Space::Euclidean { dimension } => {
                        let nums = parse_nums(rest)?;
                        if nums.len() != *dimension {
                            return Err(err(
                                lno,
                                format!("point has {} coords, expected {dimension}", nums.len()),
                            ));
                        }
                        prims.push(Primitive::Point(Point::Coords(nums)));
                    }
                    Space::DistanceMatrix { .. } => {
                        if rest.len() != 1 {
                            return Err(err(lno, "matrix point takes one index".into()));
                        }
                        let i: usize = rest[0]
                            .parse()
                            .map_err(|_| err(lno, format!("bad index {}", rest[0])))?;
                        prims.push(Primitive::Point(Point::Index(i)));
                    }
                },
                Some((&"S", rest)) => {
                    let dim = space.dimension().ok_or_else(|| {
                        err(lno, "segments are not allowed in matrix spaces".into())
                    })?;
                    let nums = parse_nums(rest)?;
                    if nums.len() != 2 * dim {
                        return Err(err(
                            lno,
                            format!("segment needs {} numbers, got {}", 2 * dim, nums.len()),
                        ));
                    }
                    let (a, b) = nums.split_at(dim);
                    prims.push(Primitive::Segment(
                        Point::Coords(a.to_vec()),
                        Point::Coords(b.to_vec()),
                    ));
                }
                _ => return Err(err(lno, format!("unknown primitive line `{line}`"))),
            }
        }
        GeoSet::new(space, prims).map_err(|e| err(0, e.to_string()))
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn read_file(path: &Path) -> Result<GeoSet> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        GeoSet::from_text(&text, &path.display().to_string())
    }
}

/// A closed region used for truncation (the `A ∩ S` of bornological
/// convergence) and as a probe shape. Euclidean spaces only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Region {
    Ball { center: Vec<f64>, radius: f64 },
    Box { min: Vec<f64>, max: Vec<f64> },
}

impl Region {
    pub fn ball(center: Vec<f64>, radius: f64) -> Region {
        Region::Ball { center, radius }
    }

    pub fn bbox(min: Vec<f64>, max: Vec<f64>) -> Region {
        Region::Box { min, max }
    }

    pub fn contains_coords(&self, p: &[f64]) -> bool {
        match self {
            Region::Ball { center, radius } => euclidean_distance(center, p) <= *radius,
            Region::Box { min, max } => p
                .iter()
                .zip(min.iter().zip(max))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi),
        }
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        p.coords().map(|c| self.contains_coords(c)).unwrap_or(false)
    }

    /// Both regions are convex, so a segment lies inside iff its endpoints do.
    pub fn contains_segment(&self, a: &[f64], b: &[f64]) -> bool {
        self.contains_coords(a) && self.contains_coords(b)
    }

    /// Whether the `eps`-fattening of `inner` is contained in `self`.
    /// Conservative exact tests for ball/box combinations.
    pub fn contains_fattened(&self, inner: &Region, eps: f64) -> bool {
        match (self, inner) {
            (Region::Ball { center: c2, radius: r2 }, Region::Ball { center: c1, radius: r1 }) => {
                euclidean_distance(c1, c2) + r1 + eps <= *r2
            }
            (Region::Box { min, max }, Region::Ball { center, radius }) => center
                .iter()
                .zip(min.iter().zip(max))
                .all(|(c, (lo, hi))| c - radius - eps >= *lo && c + radius + eps <= *hi),
            (Region::Ball { center, radius }, Region::Box { min, max }) => {
                // farthest box corner from the ball center
                let far: f64 = min
                    .iter()
                    .zip(max)
                    .zip(center)
                    .map(|((lo, hi), c)| (lo - c).abs().max((hi - c).abs()).powi(2))
                    .sum::<f64>()
                    .sqrt();
                far + eps <= *radius
            }
            (Region::Box { min: m2, max: x2 }, Region::Box { min: m1, max: x1 }) => m1
                .iter()
                .zip(x1)
                .zip(m2.iter().zip(x2))
                .all(|((lo1, hi1), (lo2, hi2))| lo1 - eps >= *lo2 && hi1 + eps <= *hi2),
        }
    }

    /// A deterministic sample of the region boundary-and-interior, used by
    /// witness verifiers. `per_axis` controls density.
    pub fn grid_sample(&self, per_axis: usize) -> Vec<Vec<f64>> {
        let k = per_axis.max(2);
        match self {
            Region::Box { min, max } => {
                let dim = min.len();
                let mut pts = vec![vec![]];
                for d in 0..dim {
                    let mut next = Vec::new();
                    for base in &pts {
                        for i in 0..k {
                            let t = i as f64 / (k - 1) as f64;
                            let mut p = base.clone();
                            p.push(min[d] + t * (max[d] - min[d]));
                            next.push(p);
                        }
                    }
                    pts = next;
                }
                pts
            }
            Region::Ball { center, radius } => {
                // sample the bounding box and keep interior points, plus rays
                let dim = center.len();
                let min: Vec<f64> = center.iter().map(|c| c - radius).collect();
                let max: Vec<f64> = center.iter().map(|c| c + radius).collect();
                let mut pts: Vec<Vec<f64>> = Region::Box { min, max }
                    .grid_sample(per_axis)
                    .into_iter()
                    .filter(|p| self.contains_coords(p))
                    .collect();
                // axis-aligned boundary points
                for d in 0..dim {
                    for sgn in [-1.0, 1.0] {
                        let mut p = center.clone();
                        p[d] += sgn * radius;
                        pts.push(p);
                    }
                }
                pts
            }
        }
    }
}

/// Exact intersection of a set with a closed region. Points are kept or
/// dropped; segments are clipped to subsegments (degenerate intersections
/// become points). Returns `None` when the intersection is empty.
pub fn clip(a: &GeoSet, region: &Region) -> Result<Option<GeoSet>> {
    if !a.space().is_euclidean() {
        return Err(Error::InvalidInput(
            "clip requires a Euclidean space".into(),
        ));
    }
    let mut prims = Vec::new();
    for p in a.primitives() {
        match p {
            Primitive::Point(x) => {
                if region.contains_point(x) {
                    prims.push(Primitive::Point(x.clone()));
                }
            }
            Primitive::Segment(pa, pb) => {
                let (ca, cb) = (pa.coords().unwrap(), pb.coords().unwrap());
                if let Some((t0, t1)) = clip_segment_params(ca, cb, region) {
                    let lerp = |t: f64| -> Vec<f64> {
                        ca.iter().zip(cb).map(|(u, v)| u + t * (v - u)).collect()
                    };
                    // keep original endpoint coordinates when untouched
                    let q0 = if t0 == 0.0 { ca.to_vec() } else { lerp(t0) };
                    let q1 = if t1 == 1.0 { cb.to_vec() } else { lerp(t1) };
                    if q0 == q1 {
                        prims.push(Primitive::Point(Point::Coords(q0)));
                    } else {
                        prims.push(Primitive::Segment(
                            Point::Coords(q0),
                            Point::Coords(q1),
                        ));
                    }
                }
            }
        }
    }
    if prims.is_empty() {
        Ok(None)
    } else {
        Ok(Some(GeoSet::new(a.space().clone(), prims)?))
    }
}

/// Parameter interval of a segment inside a closed region, if nonempty.
fn clip_segment_params(a: &[f64], b: &[f64], region: &Region) -> Option<(f64, f64)> {
    match region {
        Region::Box { min, max } => {
            // Liang-Barsky slab clipping
            let mut t0: f64 = 0.0;
            let mut t1: f64 = 1.0;
            for d in 0..a.len() {
                let dir = b[d] - a[d];
                if dir == 0.0 {
                    if a[d] < min[d] || a[d] > max[d] {
                        return None;
                    }
                    continue;
                }
                let mut lo = (min[d] - a[d]) / dir;
                let mut hi = (max[d] - a[d]) / dir;
                if lo > hi {
                    std::mem::swap(&mut lo, &mut hi);
                }
                t0 = t0.max(lo);
                t1 = t1.min(hi);
                if t0 > t1 {
                    return None;
                }
            }
            Some((t0, t1))
        }
        Region::Ball { center, radius } => {
            // |a + t(b-a) - c|^2 <= r^2: quadratic in t
            let d: Vec<f64> = a.iter().zip(b).map(|(u, v)| v - u).collect();
            let m: Vec<f64> = a.iter().zip(center).map(|(u, c)| u - c).collect();
            let qa = crate::space::dot(&d, &d);
            let qb = 2.0 * crate::space::dot(&m, &d);
            let qc = crate::space::dot(&m, &m) - radius * radius;
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                return None;
            }
            let sq = disc.sqrt();
            let lo = ((-qb - sq) / (2.0 * qa)).max(0.0);
            let hi = ((-qb + sq) / (2.0 * qa)).min(1.0);
            if lo > hi {
                None
            } else {
                Some((lo, hi))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_geoset_rejected() {
        let space = Space::euclidean(2).unwrap();
        assert!(GeoSet::new(space, vec![]).is_err());
    }

    #[test]
    fn degenerate_segment_rejected() {
        let space = Space::euclidean(2).unwrap();
        let p = Point::xy(1.0, 1.0);
        assert!(GeoSet::new(space, vec![Primitive::Segment(p.clone(), p)]).is_err());
    }

    #[test]
    fn segment_in_matrix_space_rejected() {
        let space = Space::distance_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let seg = Primitive::Segment(Point::xy(0.0, 0.0), Point::xy(1.0, 0.0));
        assert!(GeoSet::new(space, vec![seg]).is_err());
    }

    #[test]
    fn clip_ball_keeps_whole_set() {
        let a = GeoSet::cloud2(&[(0.0, 0.0), (1.0, 1.0)]);
        let r = Region::ball(vec![0.0, 0.0], 10.0);
        let c = clip(&a, &r).unwrap().unwrap();
        assert_eq!(c, a);
    }

    #[test]
    fn clip_segment_to_ball_solves_parameter() {
        // ray of slope one clipped at radius 5*sqrt(2) ends at (5,5)
        let a = GeoSet::segment2((0.0, 0.0), (10.0, 10.0));
        let r = Region::ball(vec![0.0, 0.0], 2.0_f64.sqrt() * 5.0);
        let c = clip(&a, &r).unwrap().unwrap();
        match &c.primitives()[0] {
            Primitive::Segment(p, q) => {
                assert_eq!(p.coords().unwrap(), &[0.0, 0.0]);
                let qc = q.coords().unwrap();
                assert!((qc[0] - 5.0).abs() < 1e-12 && (qc[1] - 5.0).abs() < 1e-12);
            }
            _ => panic!("expected a segment"),
        }
    }

    #[test]
    fn clip_outside_box_is_empty() {
        let a = GeoSet::cloud2(&[(9.0, 9.0)]);
        let r = Region::bbox(vec![0.0, 0.0], vec![1.0, 1.0]);
        assert!(clip(&a, &r).unwrap().is_none());
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let a = GeoSet::new(
            Space::euclidean(2).unwrap(),
            vec![
                Primitive::Point(Point::xy(0.1, -2.5e-17)),
                Primitive::Segment(Point::xy(1.0 / 3.0, 2.0), Point::xy(4.0, 5.0)),
            ],
        )
        .unwrap();
        let text = a.to_text();
        let b = GeoSet::from_text(&text, "mem").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn matrix_round_trip() {
        let space = Space::distance_matrix(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.5],
            vec![2.0, 1.5, 0.0],
        ])
        .unwrap();
        let a = GeoSet::new(
            space,
            vec![
                Primitive::Point(Point::Index(0)),
                Primitive::Point(Point::Index(2)),
            ],
        )
        .unwrap();
        let b = GeoSet::from_text(&a.to_text(), "mem").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_error_names_line() {
        let text = "space euclidean 2\nP 0 0\nQ 1 2\n";
        match GeoSet::from_text(text, "bad.geoset") {
            Err(Error::Parse { path, line, .. }) => {
                assert_eq!(path, "bad.geoset");
                assert_eq!(line, 3);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
