//! Enlargement membership and pointwise-hit predicates.
//!
//! Enlargements are predicates, never materialized sets: only membership is
//! ever needed by the convergence criteria. The definition uses the strict
//! comparison `d(x,A) < ε`; a closed variant (`<=`) is exposed because the
//! excess/enlargement duality and boundary cases need it. Ties at exactly ε
//! are resolved by the flag, never by a hidden tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::distance;
use crate::geoset::GeoSet;
use crate::radius::{require_positive_on, RadiusFunction};
use crate::space::{point_distance, Point};

/// Membership in the ε-enlargement of `a`: strict (`d < ε`, the open
/// enlargement of the definition) unless `closed` is set (`d <= ε`).
pub fn in_enlargement(x: &Point, a: &GeoSet, eps: f64, closed: bool) -> Result<bool> {
    if !(eps > 0.0) {
        return Err(Error::InvalidInput(format!(
            "enlargement radius must be positive, got {eps}"
        )));
    }
    let d = distance(x, a)?;
    Ok(if closed { d <= eps } else { d < eps })
}

/// Result of a functional-enlargement membership test. `inside = true` is
/// certain; `inside = false` is certain only up to the density of the
/// witness grid when `a` has segment primitives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalHit {
    pub inside: bool,
    /// The grid point witnessing membership, when inside.
    pub witness: Option<Point>,
}

/// Membership in the pointwise enlargement `∪_{a} B(a, f(a))`, decided over
/// a finite witness grid of `a`-points. For a point cloud the grid is the
/// set itself and the answer is exact.
pub fn in_functional_enlargement(
    x: &Point,
    a: &GeoSet,
    f: &RadiusFunction,
    witness_grid: &GeoSet,
) -> Result<FunctionalHit> {
    witness_grid.require_point_cloud("witness grid")?;
    a.same_space(witness_grid)?;
    let pos = require_positive_on(f, witness_grid)?;
    if let Some((p, v)) = pos.counterexample {
        return Err(Error::NonPositiveRadius {
            at: p.to_string(),
            value: v,
        });
    }
    for g in witness_grid.points() {
        let d = point_distance(a.space(), x, g)?;
        if d < f.eval(g)? {
            return Ok(FunctionalHit {
                inside: true,
                witness: Some(g.clone()),
            });
        }
    }
    Ok(FunctionalHit {
        inside: false,
        witness: None,
    })
}

/// A violation of a pointwise hit: the probe point, its distance to the set
/// and the radius it failed to beat.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HitWitness {
    pub point: Point,
    pub dist: f64,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HitReport {
    pub holds: bool,
    /// A violating probe point when the hit fails.
    pub witness: Option<HitWitness>,
}

/// Whether `a` hits the f-enlargement of the point cloud `c` pointwise:
/// d(x, a) < f(x) for every x in c. Exact, since distances to `a` are exact.
pub fn hits_pointwise(a: &GeoSet, c: &GeoSet, f: &RadiusFunction) -> Result<HitReport> {
    c.require_point_cloud("hit probe")?;
    a.same_space(c)?;
    let pos = require_positive_on(f, c)?;
    if let Some((p, v)) = pos.counterexample {
        return Err(Error::NonPositiveRadius {
            at: p.to_string(),
            value: v,
        });
    }
    for x in c.points() {
        let d = distance(x, a)?;
        let r = f.eval(x)?;
        if !(d < r) {
            return Ok(HitReport {
                holds: false,
                witness: Some(HitWitness {
                    point: x.clone(),
                    dist: d,
                    radius: r,
                }),
            });
        }
    }
    Ok(HitReport {
        holds: true,
        witness: None,
    })
}

/// Whether `a` misses the functional enlargement of the point cloud `c`
/// entirely: d(x, a) >= f(x) for every x in c. The complement predicate of
/// the miss-type convergence criteria; exact for point probes.
pub fn misses_enlargement(a: &GeoSet, c: &GeoSet, f: &RadiusFunction) -> Result<HitReport> {
    c.require_point_cloud("miss probe")?;
    a.same_space(c)?;
    let pos = require_positive_on(f, c)?;
    if let Some((p, v)) = pos.counterexample {
        return Err(Error::NonPositiveRadius {
            at: p.to_string(),
            value: v,
        });
    }
    for x in c.points() {
        let d = distance(x, a)?;
        let r = f.eval(x)?;
        if d < r {
            // a point of the enlargement meets `a`: the miss fails here
            return Ok(HitReport {
                holds: false,
                witness: Some(HitWitness {
                    point: x.clone(),
                    dist: d,
                    radius: r,
                }),
            });
        }
    }
    Ok(HitReport {
        holds: true,
        witness: None,
    })
}
