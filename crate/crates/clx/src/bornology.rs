//! Bornologies by generating data: membership on representable sets, probe
//! generation and empirical stability checks.
//!
//! A bornology is a hereditary family, stable under finite unions, that
//! covers the space. Built-in variants carry their own decision rule for
//! representable sets (finite primitive unions). The stability checkers are
//! empirical: a pass is "no counterexample found in N trials", a fail
//! carries a concrete counterexample. Where a refutation hinges on the
//! unbounded part of a base member (strips extend to infinity along the
//! free axis, anchor sets are unbounded discrete patterns), the checker
//! reasons about the declared tail of the member and reports the escape
//! pattern explicitly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::distance;
use crate::geoset::{GeoSet, Primitive, Region};
use crate::radius::{require_positive_on, RadiusFunction};
use crate::selection::select;
use crate::space::{Point, Space};

/// A bornology on a metric space, as generating data.
///
/// `AnchorBase` takes a truncated representation of an unbounded discrete
/// anchor set S0; its base members are the sets S0 ∪ F with F finite. The
/// stability checkers treat the anchor pattern as unbounded. `StripBase`
/// members are subsets of vertical strips `|x_axis| <= m`, represented for
/// probing by upper-half truncations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Bornology {
    /// F(X): all nonempty finite subsets.
    Finite,
    /// B_d(X): all nonempty d-bounded subsets.
    Bounded,
    /// P0(X): all nonempty subsets.
    All,
    /// Base {S : S ⊆ [-m,m] x R x ...} on the named axis.
    StripBase { axis: usize },
    /// Base {S0 ∪ F : F finite} for a (conceptually unbounded) anchor S0.
    AnchorBase { anchor: GeoSet },
    /// Subsets of the union of a fixed finite list of regions.
    CustomBase { regions: Vec<Region> },
}

impl Bornology {
    /// Decides membership for a representable set.
    ///
    /// Every `GeoSet` is compact, hence bounded and of finite strip width,
    /// so `Bounded`, `All` and `StripBase` answer true on all inputs; the
    /// discriminating variants are `Finite` and `AnchorBase` (segments are
    /// infinite point sets) and `CustomBase` (containment in the regions).
    pub fn contains(&self, s: &GeoSet) -> bool {
        match self {
            Bornology::Finite => s.is_point_cloud(),
            Bornology::Bounded => true,
            Bornology::All => true,
            Bornology::StripBase { .. } => true,
            Bornology::AnchorBase { .. } => s.is_point_cloud(),
            Bornology::CustomBase { regions } => s.primitives().iter().all(|p| match p {
                Primitive::Point(x) => regions.iter().any(|r| r.contains_point(x)),
                Primitive::Segment(a, b) => {
                    let (ca, cb) = (a.coords().unwrap(), b.coords().unwrap());
                    // exact only when a single convex region holds the whole
                    // segment; crossing unions are approximated by sampling
                    regions.iter().any(|r| r.contains_segment(ca, cb))
                        || sampled_in_union(ca, cb, regions, 64)
                }
            }),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Bornology::Finite => "finite".into(),
            Bornology::Bounded => "bounded".into(),
            Bornology::All => "all".into(),
            Bornology::StripBase { axis } => format!("strip(axis {axis})"),
            Bornology::AnchorBase { anchor } => {
                format!("anchor({} points)", anchor.primitives().len())
            }
            Bornology::CustomBase { regions } => format!("custom({} regions)", regions.len()),
        }
    }
}

fn sampled_in_union(a: &[f64], b: &[f64], regions: &[Region], steps: usize) -> bool {
    (0..=steps).all(|i| {
        let t = i as f64 / steps as f64;
        let p: Vec<f64> = a.iter().zip(b).map(|(u, v)| u + t * (v - u)).collect();
        regions.iter().any(|r| r.contains_coords(&p))
    })
}

/// What infinite base member a probe truncates; drives the tail reasoning
/// of the stability checkers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MemberKind {
    /// A finite cloud; the member is the probe itself.
    FiniteCloud,
    /// A bounded set (cloud or region); the member is bounded.
    BoundedSet,
    /// An upper-half strip `|x_axis| <= half_width`, unbounded upward along
    /// each free axis.
    Strip { axis: usize, half_width: f64 },
    /// A truncation of an unbounded discrete anchor pattern.
    AnchorTail,
    /// A subset of the custom base regions.
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ProbeSet {
    /// A finite point cloud, usable wherever distance functionals are
    /// evaluated pointwise.
    Points(GeoSet),
    /// A closed region, usable for exact truncation.
    Region(Region),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub id: String,
    pub set: ProbeSet,
    pub member: MemberKind,
}

impl Probe {
    pub fn points(id: impl Into<String>, points: GeoSet, member: MemberKind) -> Probe {
        Probe {
            id: id.into(),
            set: ProbeSet::Points(points),
            member,
        }
    }

    pub fn region(id: impl Into<String>, region: Region, member: MemberKind) -> Probe {
        Probe {
            id: id.into(),
            set: ProbeSet::Region(region),
            member,
        }
    }

    pub fn as_points(&self) -> Option<&GeoSet> {
        match &self.set {
            ProbeSet::Points(g) => Some(g),
            ProbeSet::Region(_) => None,
        }
    }

    pub fn as_region(&self) -> Option<&Region> {
        match &self.set {
            ProbeSet::Region(r) => Some(r),
            ProbeSet::Points(_) => None,
        }
    }
}

/// Budget for probe generation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeBudget {
    /// Number of probes to generate.
    pub count: usize,
    /// Spatial extent of the largest probe.
    pub extent: f64,
    /// Points per unit extent-ish; controls cloud sizes.
    pub density: f64,
}

/// A deterministic family of representative members of the bornology, each
/// tagged with its role and the member it truncates. Supplies the
/// "for each S in the bornology" quantifier at desk scale.
pub fn probe_family(b: &Bornology, space: &Space, budget: ProbeBudget, seed: u64) -> Result<Vec<Probe>> {
    if budget.count == 0 {
        return Err(Error::InvalidInput("probe budget must be positive".into()));
    }
    let dim = space
        .dimension()
        .ok_or_else(|| Error::InvalidInput("probe generation needs a Euclidean space".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probes = Vec::new();
    let cloud_size = ((budget.density * 8.0).round() as usize).clamp(2, 64);

    let random_cloud = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| -> GeoSet {
        let rows: Vec<Vec<f64>> = (0..cloud_size)
            .map(|_| (0..dim).map(|_| rng.gen_range(lo..hi)).collect())
            .collect();
        GeoSet::cloud(space.clone(), rows).expect("nonempty cloud")
    };

    match b {
        Bornology::Finite => {
            for k in 0..budget.count {
                let c = random_cloud(&mut rng, -budget.extent, budget.extent);
                probes.push(Probe::points(format!("finite_cloud_{k}"), c, MemberKind::FiniteCloud));
            }
        }
        Bornology::Bounded | Bornology::All => {
            // the first probe is always the full ball of the budget extent
            probes.push(Probe::region(
                "ball_full",
                Region::ball(vec![0.0; dim], budget.extent),
                MemberKind::BoundedSet,
            ));
            let mut k = 0;
            while probes.len() < budget.count {
                if k % 2 == 0 {
                    let r = budget.extent * ((k / 2 + 1) as f64)
                        / ((budget.count / 2 + 1) as f64);
                    probes.push(Probe::region(
                        format!("ball_r{k}"),
                        Region::ball(vec![0.0; dim], r),
                        MemberKind::BoundedSet,
                    ));
                } else {
                    let c = random_cloud(&mut rng, -budget.extent, budget.extent);
                    probes.push(Probe::points(
                        format!("bounded_cloud_{k}"),
                        c,
                        MemberKind::BoundedSet,
                    ));
                }
                k += 1;
            }
            if matches!(b, Bornology::All) {
                probes.push(Probe::region(
                    "ball_large",
                    Region::ball(vec![0.0; dim], 2.0 * budget.extent),
                    MemberKind::BoundedSet,
                ));
            }
        }
        Bornology::StripBase { axis } => {
            // the axis line of the strip, sampled at integer heights
            let free_axis = if *axis == 0 && dim > 1 { 1 } else { 0 };
            let n = (budget.extent.floor() as usize).max(1);
            let rows: Vec<Vec<f64>> = (1..=n)
                .map(|m| {
                    let mut p = vec![0.0; dim];
                    p[free_axis] = m as f64;
                    p
                })
                .collect();
            probes.push(Probe::points(
                "strip_axis_line",
                GeoSet::cloud(space.clone(), rows).expect("axis line"),
                MemberKind::Strip {
                    axis: *axis,
                    half_width: 1.0,
                },
            ));
            let mut k = 0;
            while probes.len() < budget.count {
                let m = (k + 1) as f64;
                if k % 2 == 0 {
                    // strip-ball region of width m
                    let mut min = vec![0.0; dim];
                    let mut max = vec![budget.extent; dim];
                    min[*axis] = -m;
                    max[*axis] = m;
                    probes.push(Probe::region(
                        format!("strip_box_m{m}"),
                        Region::bbox(min, max),
                        MemberKind::Strip {
                            axis: *axis,
                            half_width: m,
                        },
                    ));
                } else {
                    let mut c = random_cloud(&mut rng, 0.0, budget.extent);
                    // clamp the strip axis into [-m, m]
                    let rows: Vec<Vec<f64>> = c
                        .points()
                        .map(|p| {
                            let mut v = p.coords().unwrap().to_vec();
                            v[*axis] = v[*axis].rem_euclid(2.0 * m) - m;
                            v
                        })
                        .collect();
                    c = GeoSet::cloud(space.clone(), rows).expect("strip cloud");
                    probes.push(Probe::points(
                        format!("strip_cloud_m{m}"),
                        c,
                        MemberKind::Strip {
                            axis: *axis,
                            half_width: m,
                        },
                    ));
                }
                k += 1;
            }
        }
        Bornology::AnchorBase { anchor } => {
            anchor.require_point_cloud("anchor set")?;
            // truncations of the anchor at growing extents
            let truncate = |extent: f64| -> Option<GeoSet> {
                let rows: Vec<Vec<f64>> = anchor
                    .points()
                    .filter(|p| {
                        p.coords()
                            .map(|c| c.iter().all(|v| v.abs() <= extent))
                            .unwrap_or(false)
                    })
                    .map(|p| p.coords().unwrap().to_vec())
                    .collect();
                if rows.is_empty() {
                    None
                } else {
                    Some(GeoSet::cloud(space.clone(), rows).expect("anchor truncation"))
                }
            };
            if let Some(t) = truncate(budget.extent) {
                probes.push(Probe::points("anchor_full", t, MemberKind::AnchorTail));
            }
            let mut k = 0;
            while probes.len() < budget.count {
                let frac = (k + 1) as f64 / (budget.count as f64);
                if k % 2 == 0 {
                    if let Some(t) = truncate(budget.extent * frac) {
                        probes.push(Probe::points(
                            format!("anchor_trunc_{k}"),
                            t,
                            MemberKind::AnchorTail,
                        ));
                    }
                } else if let Some(t) = truncate(budget.extent) {
                    // anchor plus a random finite addition
                    let extra = random_cloud(&mut rng, 0.0, budget.extent);
                    let u = t.union(&extra).expect("anchor union");
                    probes.push(Probe::points(
                        format!("anchor_plus_finite_{k}"),
                        u,
                        MemberKind::AnchorTail,
                    ));
                }
                k += 1;
                if k > budget.count * 4 {
                    break;
                }
            }
        }
        Bornology::CustomBase { regions } => {
            for (k, r) in regions.iter().enumerate().take(budget.count) {
                probes.push(Probe::region(format!("custom_region_{k}"), r.clone(), MemberKind::Custom));
                let rows: Vec<Vec<f64>> = r
                    .grid_sample(4)
                    .into_iter()
                    .take(cloud_size)
                    .collect();
                if !rows.is_empty() {
                    probes.push(Probe::points(
                        format!("custom_cloud_{k}"),
                        GeoSet::cloud(space.clone(), rows).expect("region sample"),
                        MemberKind::Custom,
                    ));
                }
            }
        }
    }
    Ok(probes)
}

/// Outcome of an empirical stability check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub property: String,
    pub trials: usize,
    pub passed: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub probe_id: String,
    /// The enlargement radius or radius function of the failing trial.
    pub parameter: String,
    /// Text rendering of the produced set or escape pattern.
    pub produced: String,
    pub reason: String,
}

impl StabilityReport {
    fn new(property: &str) -> StabilityReport {
        StabilityReport {
            property: property.to_string(),
            trials: 0,
            passed: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, pass: bool, ce: impl FnOnce() -> Counterexample) {
        self.trials += 1;
        if pass {
            self.passed += 1;
        } else if self.counterexample.is_none() {
            self.counterexample = Some(ce());
        }
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

/// Growth of a radius function along an unbounded tail ray of a member.
enum RayGrowth {
    /// Pointwise divergence to +infinity along the ray (certified by the
    /// structure of the function).
    Diverges,
    /// A finite upper bound valid on the whole ray.
    BoundedBy(f64),
}

/// The ray `start + t * e_axis`, t >= 0.
struct TailRay {
    start: Vec<f64>,
    axis: usize,
}

fn ray_growth(f: &RadiusFunction, ray: &TailRay) -> RayGrowth {
    match f {
        RadiusFunction::Const(c) => RayGrowth::BoundedBy(*c),
        RadiusFunction::AffineCoord { axis, slope, offset } => {
            if *axis == ray.axis && *slope > 0.0 {
                RayGrowth::Diverges
            } else {
                // constant along the ray, or decreasing from the start value
                RayGrowth::BoundedBy(slope * ray.start[*axis] + offset)
            }
        }
        RadiusFunction::AffineDist { slope, offset, .. } => {
            if *slope > 0.0 {
                RayGrowth::Diverges
            } else {
                RayGrowth::BoundedBy(*offset)
            }
        }
        RadiusFunction::MaxOf(children) => {
            let mut bound = f64::NEG_INFINITY;
            for c in children {
                match ray_growth(c, ray) {
                    RayGrowth::Diverges => return RayGrowth::Diverges,
                    RayGrowth::BoundedBy(b) => bound = bound.max(b),
                }
            }
            RayGrowth::BoundedBy(bound)
        }
        RadiusFunction::MinOf(children) => {
            // min diverges only when every child does; otherwise any finite
            // child bound is an upper bound
            let mut bound = f64::INFINITY;
            let mut all_diverge = true;
            for c in children {
                match ray_growth(c, ray) {
                    RayGrowth::Diverges => {}
                    RayGrowth::BoundedBy(b) => {
                        all_diverge = false;
                        bound = bound.min(b);
                    }
                }
            }
            if all_diverge {
                RayGrowth::Diverges
            } else {
                RayGrowth::BoundedBy(bound)
            }
        }
    }
}

// One ray per free axis suffices for the boundedness decision: a Lipschitz
// radius differs from its value on the ray by at most L * half_width across
// the strip cross-section, so it is bounded on the member iff bounded on
// the ray, and diverges on the member iff it diverges on the ray.
fn strip_tail_rays(axis: usize, dim: usize) -> Vec<TailRay> {
    (0..dim)
        .filter(|j| *j != axis)
        .map(|j| TailRay {
            start: vec![0.0; dim],
            axis: j,
        })
        .collect()
}

/// A few escape witnesses along a diverging tail: member points whose
/// enlargement radius keeps growing.
fn escape_ladder(f: &RadiusFunction, ray: &TailRay) -> Vec<(Vec<f64>, f64)> {
    [1.0_f64, 16.0, 256.0, 4096.0]
        .iter()
        .filter_map(|t| {
            let mut p = ray.start.clone();
            p[ray.axis] += t;
            f.eval(&Point::Coords(p.clone())).ok().map(|r| (p, r))
        })
        .collect()
}

fn format_ladder(ladder: &[(Vec<f64>, f64)]) -> String {
    ladder
        .iter()
        .map(|(p, r)| format!("{} r={r:.3}", Point::Coords(p.clone())))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Whether the probe space is Euclidean (enlargements of nonempty sets in a
/// Euclidean space contain a continuum; in a finite matrix space they stay
/// finite).
fn probe_space_euclidean(p: &Probe) -> bool {
    match &p.set {
        ProbeSet::Points(g) => g.space().is_euclidean(),
        ProbeSet::Region(_) => true,
    }
}

/// Checks stability under constant enlargements: for each probe S and ε,
/// whether B(S, ε) stays in the bornology.
pub fn check_stable_under_enlargement(
    b: &Bornology,
    probes: &[Probe],
    eps_grid: &[f64],
) -> StabilityReport {
    let mut report = StabilityReport::new("stable_under_enlargement");
    for probe in probes {
        for &eps in eps_grid {
            let (pass, produced, reason) = enlargement_trial(b, probe, eps);
            report.record(pass, || Counterexample {
                probe_id: probe.id.clone(),
                parameter: format!("eps={eps}"),
                produced,
                reason,
            });
        }
    }
    report
}

fn enlargement_trial(b: &Bornology, probe: &Probe, eps: f64) -> (bool, String, String) {
    match b {
        Bornology::Finite => {
            if probe_space_euclidean(probe) {
                // the enlargement contains a whole segment near any member
                // point, and segments are not finite point sets
                let witness = probe
                    .as_points()
                    .and_then(|g| g.points().next().cloned());
                let produced = match witness {
                    Some(Point::Coords(c)) => {
                        let mut end = c.clone();
                        end[0] += eps / 2.0;
                        let seg = GeoSet::new(
                            Space::euclidean(c.len()).unwrap(),
                            vec![Primitive::Segment(
                                Point::Coords(c.clone()),
                                Point::Coords(end),
                            )],
                        )
                        .unwrap();
                        debug_assert!(!b.contains(&seg));
                        format!("segment {} inside the enlargement", seg.to_text().trim())
                    }
                    _ => "a segment inside the enlargement".to_string(),
                };
                (
                    false,
                    produced,
                    "the enlargement of a nonempty set contains a continuum, \
                     which is not a finite point set"
                        .into(),
                )
            } else {
                (true, String::new(), String::new())
            }
        }
        Bornology::Bounded | Bornology::All => (true, String::new(), String::new()),
        Bornology::StripBase { .. } => {
            // B(strip_m, eps) fits in the strip of half-width m + eps
            (true, String::new(), String::new())
        }
        Bornology::AnchorBase { anchor } => match probe.member {
            MemberKind::AnchorTail => {
                let displaced = displaced_anchor_cloud(anchor, probe, eps / 2.0);
                let count = displaced.as_ref().map(|d| d.primitives().len()).unwrap_or(0);
                (
                    false,
                    displaced
                        .map(|d| format!("displaced tail sample ({count} points): {}",
                            preview_cloud(&d, 4)))
                        .unwrap_or_default(),
                    "every point of the unbounded anchor pattern admits an \
                     off-anchor point inside its enlargement, so the residual \
                     off the anchor is infinite"
                        .into(),
                )
            }
            _ => (true, String::new(), String::new()),
        },
        Bornology::CustomBase { regions } => {
            if let Some(r) = probe.as_region() {
                let ok = regions.iter().any(|outer| outer.contains_fattened(r, eps));
                (
                    ok,
                    format!("fattening of {}", probe.id),
                    "no base region contains the fattened probe".into(),
                )
            } else {
                // point cloud: every fattened point must fit some region
                let ok = probe.as_points().is_some_and(|g| {
                    g.points().all(|p| {
                        regions.iter().any(|outer| {
                            outer.contains_fattened(
                                &Region::ball(p.coords().unwrap().to_vec(), 0.0),
                                eps,
                            )
                        })
                    })
                });
                (
                    ok,
                    format!("fattening of {}", probe.id),
                    "a fattened member point escapes every base region".into(),
                )
            }
        }
    }
}

/// Checks stability under Lipschitz (functional) enlargements.
pub fn check_stable_under_lipschitz_enlargement(
    b: &Bornology,
    probes: &[Probe],
    radius_fns: &[RadiusFunction],
) -> StabilityReport {
    let mut report = StabilityReport::new("stable_under_lipschitz_enlargement");
    for probe in probes {
        for f in radius_fns {
            // positivity on the evaluation domain; pairs outside Z+ are not
            // in the quantifier and are skipped rather than counted
            if let Some(g) = probe.as_points() {
                match require_positive_on(f, g) {
                    Ok(rep) if !rep.all_positive => continue,
                    Err(_) => continue,
                    _ => {}
                }
            }
            let (pass, produced, reason) = lipschitz_trial(b, probe, f);
            report.record(pass, || Counterexample {
                probe_id: probe.id.clone(),
                parameter: f.describe(),
                produced,
                reason,
            });
        }
    }
    report
}

fn lipschitz_trial(b: &Bornology, probe: &Probe, f: &RadiusFunction) -> (bool, String, String) {
    match b {
        Bornology::Finite => {
            if probe_space_euclidean(probe) {
                (
                    false,
                    "a continuum inside the functional enlargement".into(),
                    "functional enlargements with positive radii contain \
                     continua, which are not finite point sets"
                        .into(),
                )
            } else {
                (true, String::new(), String::new())
            }
        }
        Bornology::Bounded | Bornology::All => {
            // a Lipschitz function is bounded on a bounded member, so the
            // enlargement stays bounded
            (true, String::new(), String::new())
        }
        Bornology::StripBase { axis } => {
            let dim = probe
                .as_points()
                .and_then(|g| g.space().dimension())
                .or_else(|| probe.as_region().map(|r| match r {
                    Region::Ball { center, .. } => center.len(),
                    Region::Box { min, .. } => min.len(),
                }))
                .unwrap_or(2);
            for ray in strip_tail_rays(*axis, dim) {
                match ray_growth(f, &ray) {
                    RayGrowth::Diverges => {
                        let ladder = escape_ladder(f, &ray);
                        return (
                            false,
                            format!(
                                "strip fattened along axis {axis} beyond every \
                                 half-width; escape ladder: {}",
                                format_ladder(&ladder)
                            ),
                            format!(
                                "the enlargement radius grows without bound \
                                 along the free axis {} of the strip member",
                                ray.axis
                            ),
                        );
                    }
                    RayGrowth::BoundedBy(_) => {}
                }
            }
            (true, String::new(), String::new())
        }
        Bornology::AnchorBase { anchor } => match probe.member {
            MemberKind::AnchorTail => {
                let displaced = anchor_displacement_radius(anchor, f);
                (
                    false,
                    displaced,
                    "positive radii at every anchor point admit off-anchor \
                     points, so the functional enlargement has infinite \
                     residual off the anchor"
                        .into(),
                )
            }
            _ => (true, String::new(), String::new()),
        },
        Bornology::CustomBase { regions } => {
            // bound f on the probe via its Lipschitz constant and fall back
            // to the constant-enlargement test
            let bound = probe_radius_bound(probe, f);
            match bound {
                Some(eps) => enlargement_trial(&Bornology::CustomBase { regions: regions.clone() }, probe, eps),
                None => (
                    false,
                    "unbounded radius over the probe".into(),
                    "could not bound the radius function on the probe".into(),
                ),
            }
        }
    }
}

fn probe_radius_bound(probe: &Probe, f: &RadiusFunction) -> Option<f64> {
    let g = probe.as_points()?;
    let mut sup = f64::NEG_INFINITY;
    for x in g.points() {
        sup = sup.max(f.eval(x).ok()?);
    }
    Some(sup)
}

fn displaced_anchor_cloud(anchor: &GeoSet, probe: &Probe, delta: f64) -> Option<GeoSet> {
    let pts = probe.as_points()?;
    let dim = pts.space().dimension()?;
    let rows: Vec<Vec<f64>> = pts
        .points()
        .filter_map(|p| {
            let c = p.coords()?;
            // displace along the axis where the point vanishes, or axis 0
            let axis = (0..dim).find(|&i| c[i] == 0.0).unwrap_or(0);
            let mut v = c.to_vec();
            v[axis] += delta;
            // keep only genuine displacements off the anchor
            let off = distance(&Point::Coords(v.clone()), anchor).ok()? > 0.0;
            off.then_some(v)
        })
        .collect();
    if rows.is_empty() {
        None
    } else {
        GeoSet::cloud(pts.space().clone(), rows).ok()
    }
}

fn anchor_displacement_radius(anchor: &GeoSet, f: &RadiusFunction) -> String {
    let sample: Vec<String> = anchor
        .points()
        .take(3)
        .filter_map(|p| {
            let r = f.eval(p).ok()?;
            Some(format!("{p} r={r:.3}"))
        })
        .collect();
    format!("displacements of the anchor tail, radii: {}", sample.join("; "))
}

fn preview_cloud(g: &GeoSet, k: usize) -> String {
    let mut parts: Vec<String> = g.points().take(k).map(|p| p.to_string()).collect();
    if g.primitives().len() > k {
        parts.push("...".into());
    }
    parts.join(" ")
}

/// Checks stability under constant selections: draws selections of each
/// probe with constant radii and tests membership; for members with an
/// unbounded tail an adversarial displacement rule is also examined.
pub fn check_stable_under_constant_selection(
    b: &Bornology,
    probes: &[Probe],
    eps_grid: &[f64],
    pools: &[GeoSet],
    seed: u64,
) -> StabilityReport {
    let mut report = StabilityReport::new("stable_under_constant_selection");
    let mut trial_seed = seed;
    for probe in probes {
        for &eps in eps_grid {
            let Ok(f) = RadiusFunction::constant(eps) else { continue };
            trial_seed = trial_seed.wrapping_add(1);
            let (pass, produced, reason) =
                selection_trial(b, probe, &f, pools, trial_seed);
            report.record(pass, || Counterexample {
                probe_id: probe.id.clone(),
                parameter: format!("eps={eps}"),
                produced,
                reason,
            });
        }
    }
    report
}

/// Checks stability under Lip-selections (positive Lipschitz radii).
pub fn check_stable_under_lip_selection(
    b: &Bornology,
    probes: &[Probe],
    radius_fns: &[RadiusFunction],
    pools: &[GeoSet],
    seed: u64,
) -> StabilityReport {
    let mut report = StabilityReport::new("stable_under_lip_selection");
    let mut trial_seed = seed;
    for probe in probes {
        for f in radius_fns {
            if let Some(g) = probe.as_points() {
                match require_positive_on(f, g) {
                    Ok(rep) if !rep.all_positive => continue,
                    Err(_) => continue,
                    _ => {}
                }
            }
            trial_seed = trial_seed.wrapping_add(1);
            let (pass, produced, reason) = selection_trial(b, probe, f, pools, trial_seed);
            report.record(pass, || Counterexample {
                probe_id: probe.id.clone(),
                parameter: f.describe(),
                produced,
                reason,
            });
        }
    }
    report
}

fn selection_trial(
    b: &Bornology,
    probe: &Probe,
    f: &RadiusFunction,
    pools: &[GeoSet],
    seed: u64,
) -> (bool, String, String) {
    // draw a concrete selection of the truncated probe when possible; the
    // probe itself always works as a candidate pool
    let drawn = probe.as_points().map(|g| {
        let mut candidates = g.clone();
        for pool in pools {
            if pool.space() == g.space() {
                if let Ok(u) = candidates.union(pool) {
                    candidates = u;
                }
            }
        }
        select(g, f, &candidates, seed)
    });
    if let Some(Ok(sel)) = &drawn {
        if !b.contains(sel) {
            return (
                false,
                format!("drawn selection: {}", preview_cloud(sel, 4)),
                "a drawn selection of the truncated member leaves the bornology".into(),
            );
        }
    }

    // tail reasoning for members with an infinite part
    match (&probe.member, b) {
        (MemberKind::AnchorTail, Bornology::AnchorBase { anchor }) => {
            // adversarial rule: displace every anchor point off the anchor
            // by half its radius
            let delta = probe
                .as_points()
                .and_then(|g| g.points().next().and_then(|p| f.eval(p).ok()))
                .unwrap_or(1.0)
                / 2.0;
            match displaced_anchor_cloud(anchor, probe, delta) {
                Some(d) => (
                    false,
                    format!(
                        "selection displacing the anchor off-pattern: {}",
                        preview_cloud(&d, 4)
                    ),
                    "a selection may displace every point of the unbounded \
                     anchor pattern off the anchor, leaving an infinite \
                     residual"
                        .into(),
                ),
                None => (true, String::new(), String::new()),
            }
        }
        (MemberKind::Strip { axis, .. }, Bornology::StripBase { .. }) => {
            let dim = probe
                .as_points()
                .and_then(|g| g.space().dimension())
                .unwrap_or(2);
            for ray in strip_tail_rays(*axis, dim) {
                if let RayGrowth::Diverges = ray_growth(f, &ray) {
                    let ladder = escape_ladder(f, &ray);
                    return (
                        false,
                        format!(
                            "selection displacing tail points along axis {axis} \
                             by their radii: {}",
                            format_ladder(&ladder)
                        ),
                        "a Lip-selection may displace strip tail points along \
                         the bounded axis by radii growing without bound"
                            .into(),
                    );
                }
            }
            (true, String::new(), String::new())
        }
        _ => (true, String::new(), String::new()),
    }
}

/// One entry of a strict-inclusion witness: a bornology member `set` with
/// radii `0 < alpha < eps`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionWitness {
    pub set: GeoSet,
    pub alpha: f64,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrictInclusionCheck {
    pub holds: bool,
    /// A grid point violating one of the two sampled inclusions.
    pub violation: Option<(Point, String)>,
    pub grid_points_checked: usize,
}

/// Verifies a strict-inclusion witness chain on grids: every sample point
/// of `a_sample` lies in some open alpha-enlargement, and every point of
/// each eps-shell sample satisfies the target predicate. The middle
/// inclusion is automatic from alpha < eps. This is a witness verifier, not
/// a search; grid checks are sound up to the supplied density.
pub fn strictly_included(
    a_sample: &GeoSet,
    c_test: &dyn Fn(&Point) -> bool,
    witness: &[InclusionWitness],
    shell_samples: &[GeoSet],
) -> Result<StrictInclusionCheck> {
    if witness.is_empty() {
        return Err(Error::InvalidInput("empty strict-inclusion witness list".into()));
    }
    if shell_samples.len() != witness.len() {
        return Err(Error::InvalidInput(format!(
            "{} shell samples for {} witness entries",
            shell_samples.len(),
            witness.len()
        )));
    }
    for w in witness {
        if !(0.0 < w.alpha && w.alpha < w.eps) {
            return Err(Error::InvalidInput(format!(
                "witness radii must satisfy 0 < alpha < eps, got alpha={} eps={}",
                w.alpha, w.eps
            )));
        }
    }
    a_sample.require_point_cloud("inclusion sample of A")?;
    let mut checked = 0;

    for x in a_sample.points() {
        checked += 1;
        let covered = witness
            .iter()
            .map(|w| distance(x, &w.set).map(|d| d < w.alpha))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .any(|b| b);
        if !covered {
            return Ok(StrictInclusionCheck {
                holds: false,
                violation: Some((x.clone(), "A-sample point outside every alpha-enlargement".into())),
                grid_points_checked: checked,
            });
        }
    }

    for (w, shell) in witness.iter().zip(shell_samples) {
        shell.require_point_cloud("eps-shell sample")?;
        for x in shell.points() {
            checked += 1;
            // only shell points genuinely inside the eps-enlargement matter
            if distance(x, &w.set)? >= w.eps {
                continue;
            }
            if !c_test(x) {
                return Ok(StrictInclusionCheck {
                    holds: false,
                    violation: Some((x.clone(), "eps-shell point escapes the target set".into())),
                    grid_points_checked: checked,
                });
            }
        }
    }
    Ok(StrictInclusionCheck {
        holds: true,
        violation: None,
        grid_points_checked: checked,
    })
}

/// Exhaustive witness search over a caller-supplied finite candidate pool:
/// tries each pool entry alone and then the whole pool as a witness list,
/// returning the first verified witness. The existential over the bornology
/// is unbounded in general; callers choose the candidates.
pub fn strictly_included_search(
    a_sample: &GeoSet,
    c_test: &dyn Fn(&Point) -> bool,
    pool: &[InclusionWitness],
    rays_per_point: usize,
) -> Result<Option<Vec<InclusionWitness>>> {
    if pool.is_empty() {
        return Err(Error::InvalidInput("empty candidate pool".into()));
    }
    let shells: Vec<GeoSet> = pool
        .iter()
        .map(|w| enlargement_shell_sample(&w.set, w.eps, rays_per_point))
        .collect::<Result<_>>()?;
    for (w, shell) in pool.iter().zip(&shells) {
        let check = strictly_included(
            a_sample,
            c_test,
            std::slice::from_ref(w),
            std::slice::from_ref(shell),
        )?;
        if check.holds {
            return Ok(Some(vec![w.clone()]));
        }
    }
    let check = strictly_included(a_sample, c_test, pool, &shells)?;
    if check.holds {
        return Ok(Some(pool.to_vec()));
    }
    Ok(None)
}

/// A deterministic sample of the eps-enlargement of a point cloud: ring
/// points at a ladder of radii up to eps around each member point.
/// Directions span the first two coordinate axes, which is exhaustive in
/// the plane and a planar slice in higher dimensions.
pub fn enlargement_shell_sample(s: &GeoSet, eps: f64, rays_per_point: usize) -> Result<GeoSet> {
    s.require_point_cloud("shell base")?;
    let dim = s
        .space()
        .dimension()
        .ok_or_else(|| Error::InvalidInput("shell sampling needs a Euclidean space".into()))?;
    let mut rows = Vec::new();
    let radii = [0.25, 0.5, 0.75, 0.95, 0.999];
    for p in s.points() {
        let c = p.coords().unwrap();
        rows.push(c.to_vec());
        for k in 0..rays_per_point.max(1) {
            // deterministic directions on the first two axes
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (rays_per_point.max(1) as f64);
            let mut dir = vec![0.0; dim];
            dir[0] = theta.cos();
            if dim > 1 {
                dir[1] = theta.sin();
            }
            for r in radii {
                let row: Vec<f64> = c.iter().zip(&dir).map(|(u, d)| u + eps * r * d).collect();
                rows.push(row);
            }
        }
    }
    GeoSet::cloud(s.space().clone(), rows)
}

/// Spot-checks the bornology axioms (hereditary under representable
/// subsets, stable under union, covers singletons) on the given probes.
pub fn check_axioms(b: &Bornology, probes: &[Probe]) -> Vec<String> {
    let mut violations = Vec::new();
    let clouds: Vec<&GeoSet> = probes.iter().filter_map(|p| p.as_points()).collect();
    for g in &clouds {
        if !b.contains(g) {
            continue;
        }
        // hereditary: the first-point subset stays in
        if let Some(first) = g.points().next() {
            let single = GeoSet::new(
                g.space().clone(),
                vec![Primitive::Point(first.clone())],
            )
            .expect("singleton");
            if !b.contains(&single) {
                violations.push(format!("hereditary fails on a singleton of {}", preview_cloud(g, 1)));
            }
        }
    }
    for pair in clouds.windows(2) {
        if b.contains(pair[0]) && b.contains(pair[1]) && pair[0].space() == pair[1].space() {
            if let Ok(u) = pair[0].union(pair[1]) {
                if !b.contains(&u) {
                    violations.push("union stability fails on a probe pair".into());
                }
            }
        }
    }
    violations
}
