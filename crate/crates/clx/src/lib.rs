//! Geometric set functionals and hyperspace convergence over finitely
//! represented closed sets.
//!
//! `clx` works with nonempty finite unions of points and closed segments as
//! computational stand-ins for nonempty closed sets. On top of the exact
//! distance/gap/excess kernels it provides:
//!
//! * enlargement membership and pointwise-hit predicates, including
//!   functional enlargements with positive Lipschitz radius functions;
//! * bornologies given by generating data, with probe generators and
//!   empirical stability checkers (enlargements, Lipschitz enlargements,
//!   constant and Lip-selections);
//! * three-valued classification of set sequences against the convergence
//!   modes induced by distance functionals, truncations and gap/excess
//!   functionals, with per-cell deficit traces and witnesses;
//! * exact generators for the standard counterexample fixtures.
//!
//! See the `examples/` directory for runnable entry points per capability,
//! and the `clx` binary for the scenario runner.

// predicates deliberately use `!(x < y)` so that a NaN counts as a
// violation instead of silently passing a threshold
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bornology;
pub mod convergence;
pub mod enlargement;
pub mod error;
pub mod fixtures;
pub mod functionals;
pub mod geoset;
pub mod radius;
pub mod report;
pub mod scenario;
pub mod selection;
pub mod space;

pub use error::{Error, Result};
pub use functionals::{distance, excess, excess_default, gap, hausdorff, uniform_gap, ExcessValue};
pub use geoset::{clip, GeoSet, Primitive, Region};
pub use radius::{lipschitz_margin, require_positive_on, RadiusFunction};
pub use space::{Point, Space};
