//! f-selections: for each point x of a set, choose a point within f(x).
//!
//! The draw is deterministic given the seed. When a candidate coincides with
//! x itself it is preferred, so a set is always a valid selection of itself.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geoset::GeoSet;
use crate::radius::{require_positive_on, RadiusFunction};
use crate::space::{point_distance, Point};

/// Draws an f-selection of the point cloud `s` from the candidate cloud:
/// for each x in s, a candidate y with d(x, y) < f(x). Errors when some x
/// has no candidate in range, naming x.
pub fn select(
    s: &GeoSet,
    f: &RadiusFunction,
    candidates: &GeoSet,
    seed: u64,
) -> Result<GeoSet> {
    s.require_point_cloud("selection source")?;
    candidates.require_point_cloud("selection candidates")?;
    s.same_space(candidates)?;
    let pos = require_positive_on(f, s)?;
    if let Some((p, v)) = pos.counterexample {
        return Err(Error::NonPositiveRadius {
            at: p.to_string(),
            value: v,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<&Point> = candidates.points().collect();
    let mut chosen: Vec<Point> = Vec::new();
    for x in s.points() {
        let radius = f.eval(x)?;
        let mut eligible: Vec<&Point> = Vec::new();
        let mut identity: Option<&Point> = None;
        for y in &pool {
            let d = point_distance(s.space(), x, y)?;
            if d < radius {
                if d == 0.0 && identity.is_none() {
                    identity = Some(y);
                }
                eligible.push(y);
            }
        }
        let pick = match identity {
            Some(y) => y,
            None => {
                if eligible.is_empty() {
                    return Err(Error::NoCandidateInRange {
                        point: x.to_string(),
                        radius,
                    });
                }
                eligible[rng.gen_range(0..eligible.len())]
            }
        };
        if !chosen.contains(pick) {
            chosen.push(pick.clone());
        }
    }
    GeoSet::new(
        s.space().clone(),
        chosen
            .into_iter()
            .map(crate::geoset::Primitive::Point)
            .collect(),
    )
}

/// Verifies that `assignment[i]` is within f of `sources[i]` pairwise, so
/// that the assigned cloud is a valid f-selection of the source cloud.
pub fn verify_selection_pairs(
    sources: &GeoSet,
    assignment: &GeoSet,
    f: &RadiusFunction,
) -> Result<bool> {
    sources.require_point_cloud("selection source")?;
    assignment.require_point_cloud("selection assignment")?;
    sources.same_space(assignment)?;
    let xs: Vec<&Point> = sources.points().collect();
    let ys: Vec<&Point> = assignment.points().collect();
    if xs.len() != ys.len() {
        return Err(Error::InvalidInput(format!(
            "assignment has {} points for {} sources",
            ys.len(),
            xs.len()
        )));
    }
    for (x, y) in xs.iter().zip(&ys) {
        if !(point_distance(sources.space(), x, y)? < f.eval(x)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
