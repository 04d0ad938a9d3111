//! Symbolic positive Lipschitz radius functions.
//!
//! These realize the function classes used by functional enlargements and
//! selections: a `RadiusFunction` carries enough structure to evaluate
//! exactly, to report a Lipschitz constant, and to reason about growth along
//! an unbounded tail of a set (needed by the bornology stability checkers).
//!
//! Positivity is not a construction invariant: it is checked on the
//! evaluation domain where the function is actually used, via
//! [`require_positive_on`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::distance;
use crate::geoset::GeoSet;
use crate::space::Point;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RadiusFunction {
    /// x ↦ c with c > 0.
    Const(f64),
    /// x ↦ slope · d(x, anchor) + offset, slope >= 0.
    AffineDist {
        anchor: GeoSet,
        slope: f64,
        offset: f64,
    },
    /// x ↦ slope · x_axis + offset (Euclidean spaces only).
    AffineCoord {
        axis: usize,
        slope: f64,
        offset: f64,
    },
    MaxOf(Vec<RadiusFunction>),
    MinOf(Vec<RadiusFunction>),
}

impl RadiusFunction {
    pub fn constant(c: f64) -> Result<RadiusFunction> {
        if !(c > 0.0) {
            return Err(Error::InvalidInput(format!(
                "constant radius must be positive, got {c}"
            )));
        }
        Ok(RadiusFunction::Const(c))
    }

    pub fn affine_dist(anchor: GeoSet, slope: f64, offset: f64) -> Result<RadiusFunction> {
        if slope < 0.0 {
            return Err(Error::InvalidInput(format!(
                "distance slope must be nonnegative, got {slope}"
            )));
        }
        Ok(RadiusFunction::AffineDist {
            anchor,
            slope,
            offset,
        })
    }

    pub fn affine_coord(axis: usize, slope: f64, offset: f64) -> RadiusFunction {
        RadiusFunction::AffineCoord {
            axis,
            slope,
            offset,
        }
    }

    pub fn max_of(children: Vec<RadiusFunction>) -> Result<RadiusFunction> {
        if children.is_empty() {
            return Err(Error::InvalidInput("MaxOf needs at least one child".into()));
        }
        Ok(RadiusFunction::MaxOf(children))
    }

    pub fn min_of(children: Vec<RadiusFunction>) -> Result<RadiusFunction> {
        if children.is_empty() {
            return Err(Error::InvalidInput("MinOf needs at least one child".into()));
        }
        Ok(RadiusFunction::MinOf(children))
    }

    pub fn eval(&self, x: &Point) -> Result<f64> {
        match self {
            RadiusFunction::Const(c) => Ok(*c),
            RadiusFunction::AffineDist {
                anchor,
                slope,
                offset,
            } => Ok(slope * distance(x, anchor)? + offset),
            RadiusFunction::AffineCoord {
                axis,
                slope,
                offset,
            } => {
                let coords = x.coords().ok_or_else(|| {
                    Error::InvalidInput("AffineCoord needs a coordinate point".into())
                })?;
                if *axis >= coords.len() {
                    return Err(Error::InvalidInput(format!(
                        "axis {axis} out of range for dimension {}",
                        coords.len()
                    )));
                }
                Ok(slope * coords[*axis] + offset)
            }
            RadiusFunction::MaxOf(children) => {
                let mut acc = f64::NEG_INFINITY;
                for c in children {
                    acc = acc.max(c.eval(x)?);
                }
                Ok(acc)
            }
            RadiusFunction::MinOf(children) => {
                let mut acc = f64::INFINITY;
                for c in children {
                    acc = acc.min(c.eval(x)?);
                }
                Ok(acc)
            }
        }
    }

    /// A valid Lipschitz constant. Distance functionals are 1-Lipschitz, so
    /// `slope · d(·, anchor)` is slope-Lipschitz; max/min do not increase
    /// the constant.
    pub fn lipschitz_constant(&self) -> f64 {
        match self {
            RadiusFunction::Const(_) => 0.0,
            RadiusFunction::AffineDist { slope, .. } => *slope,
            RadiusFunction::AffineCoord { slope, .. } => slope.abs(),
            RadiusFunction::MaxOf(children) | RadiusFunction::MinOf(children) => children
                .iter()
                .map(|c| c.lipschitz_constant())
                .fold(0.0, f64::max),
        }
    }

    /// Shift by a constant: used to build `g = f + delta` pairs with a
    /// guaranteed positive margin. The constant distributes over max/min.
    pub fn shifted(&self, delta: f64) -> RadiusFunction {
        self.plus_const(delta)
    }

    fn plus_const(&self, delta: f64) -> RadiusFunction {
        match self {
            RadiusFunction::Const(c) => RadiusFunction::Const(c + delta),
            RadiusFunction::AffineDist {
                anchor,
                slope,
                offset,
            } => RadiusFunction::AffineDist {
                anchor: anchor.clone(),
                slope: *slope,
                offset: offset + delta,
            },
            RadiusFunction::AffineCoord {
                axis,
                slope,
                offset,
            } => RadiusFunction::AffineCoord {
                axis: *axis,
                slope: *slope,
                offset: offset + delta,
            },
            RadiusFunction::MaxOf(children) => {
                RadiusFunction::MaxOf(children.iter().map(|c| c.plus_const(delta)).collect())
            }
            RadiusFunction::MinOf(children) => {
                RadiusFunction::MinOf(children.iter().map(|c| c.plus_const(delta)).collect())
            }
        }
    }

    /// Short printable description for reports and witnesses.
    pub fn describe(&self) -> String {
        match self {
            RadiusFunction::Const(c) => format!("const({c})"),
            RadiusFunction::AffineDist { slope, offset, .. } => {
                format!("{slope}*d(x,anchor)+{offset}")
            }
            RadiusFunction::AffineCoord {
                axis,
                slope,
                offset,
            } => format!("{slope}*x[{axis}]+{offset}"),
            RadiusFunction::MaxOf(children) => {
                let parts: Vec<String> = children.iter().map(|c| c.describe()).collect();
                format!("max({})", parts.join(", "))
            }
            RadiusFunction::MinOf(children) => {
                let parts: Vec<String> = children.iter().map(|c| c.describe()).collect();
                format!("min({})", parts.join(", "))
            }
        }
    }
}

/// Outcome of a positivity check on a finite evaluation domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub all_positive: bool,
    /// A violating point and its value, when positivity fails.
    pub counterexample: Option<(Point, f64)>,
}

/// Checks f(x) > 0 for every point of the cloud `c`.
pub fn require_positive_on(f: &RadiusFunction, c: &GeoSet) -> Result<PositivityReport> {
    c.require_point_cloud("positivity domain")?;
    for x in c.points() {
        let v = f.eval(x)?;
        if !(v > 0.0) {
            return Ok(PositivityReport {
                all_positive: false,
                counterexample: Some((x.clone(), v)),
            });
        }
    }
    Ok(PositivityReport {
        all_positive: true,
        counterexample: None,
    })
}

/// inf over x in `s` of g(x) − f(x). Callers test positivity of the margin.
pub fn lipschitz_margin(f: &RadiusFunction, g: &RadiusFunction, s: &GeoSet) -> Result<f64> {
    s.require_point_cloud("margin domain")?;
    let mut inf = f64::INFINITY;
    for x in s.points() {
        inf = inf.min(g.eval(x)? - f.eval(x)?);
    }
    Ok(inf)
}
