//! Metric spaces and points.
//!
//! Two kinds of spaces are supported: Euclidean space of any dimension with
//! the 2-norm, and finite metric spaces given by an explicit distance matrix.
//! Matrix spaces admit only point primitives (there is no geodesic structure
//! to support segments).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A metric space: either Euclidean `ℝ^k` with the 2-norm, or a finite
/// space with an explicit distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Space {
    Euclidean { dimension: usize },
    DistanceMatrix { entries: Vec<Vec<f64>> },
}

impl Space {
    pub fn euclidean(dimension: usize) -> Result<Space> {
        if dimension == 0 {
            return Err(Error::InvalidInput("euclidean dimension must be >= 1".into()));
        }
        Ok(Space::Euclidean { dimension })
    }

    /// Validates symmetry, zero diagonal, nonnegativity and the triangle
    /// inequality before accepting the matrix.
    pub fn distance_matrix(entries: Vec<Vec<f64>>) -> Result<Space> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidInput("distance matrix must be nonempty".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "distance matrix row {i} has length {} (expected {n})",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "distance matrix entry ({i},{j}) = {v} is not a nonnegative real"
                    )));
                }
                if i == j && v != 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "distance matrix diagonal entry ({i},{i}) = {v} must be zero"
                    )));
                }
                if entries[j][i] != v {
                    return Err(Error::InvalidInput(format!(
                        "distance matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if entries[i][j] > entries[i][k] + entries[k][j] {
                        return Err(Error::InvalidInput(format!(
                            "triangle inequality fails: d({i},{j}) > d({i},{k}) + d({k},{j})"
                        )));
                    }
                }
            }
        }
        Ok(Space::DistanceMatrix { entries })
    }

    pub fn dimension(&self) -> Option<usize> {
        match self {
            Space::Euclidean { dimension } => Some(*dimension),
            Space::DistanceMatrix { .. } => None,
        }
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            Space::Euclidean { .. } => None,
            Space::DistanceMatrix { entries } => Some(entries.len()),
        }
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self, Space::Euclidean { .. })
    }
}

/// A point of a space: coordinates in the Euclidean case, an index into the
/// matrix in the finite case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Point {
    Coords(Vec<f64>),
    Index(usize),
}

impl Point {
    pub fn xy(x: f64, y: f64) -> Point {
        Point::Coords(vec![x, y])
    }

    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            Point::Coords(c) => Some(c),
            Point::Index(_) => None,
        }
    }

    /// Checks that the point belongs to the space (dimension or index range).
    pub fn validate_in(&self, space: &Space) -> Result<()> {
        match (self, space) {
            (Point::Coords(c), Space::Euclidean { dimension }) => {
                if c.len() != *dimension {
                    return Err(Error::SpaceMismatch(format!(
                        "point has {} coordinates, space has dimension {dimension}",
                        c.len()
                    )));
                }
                if c.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidInput(format!("nonfinite coordinate in {self}")));
                }
                Ok(())
            }
            (Point::Index(i), Space::DistanceMatrix { entries }) => {
                if *i >= entries.len() {
                    return Err(Error::SpaceMismatch(format!(
                        "point index {i} out of range for matrix of size {}",
                        entries.len()
                    )));
                }
                Ok(())
            }
            (Point::Coords(_), Space::DistanceMatrix { .. }) => Err(Error::SpaceMismatch(
                "coordinate point used in a distance-matrix space".into(),
            )),
            (Point::Index(_), Space::Euclidean { .. }) => Err(Error::SpaceMismatch(
                "index point used in a Euclidean space".into(),
            )),
        }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Coords(c) => {
                write!(f, "(")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
            Point::Index(i) => write!(f, "#{i}"),
        }
    }
}

/// Distance between two points of the same space.
pub fn point_distance(space: &Space, x: &Point, y: &Point) -> Result<f64> {
    match (space, x, y) {
        (Space::Euclidean { .. }, Point::Coords(a), Point::Coords(b)) => {
            if a.len() != b.len() {
                return Err(Error::SpaceMismatch("points of different dimension".into()));
            }
            Ok(euclidean_distance(a, b))
        }
        (Space::DistanceMatrix { entries }, Point::Index(i), Point::Index(j)) => {
            if *i >= entries.len() || *j >= entries.len() {
                return Err(Error::SpaceMismatch("point index out of range".into()));
            }
            Ok(entries[*i][*j])
        }
        _ => Err(Error::SpaceMismatch(
            "point kind does not match the space".into(),
        )),
    }
}

pub(crate) fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}
