//! Data depth functions, depth-trimmed regions, and the Hausdorff-metric
//! machinery needed to study how empirical depths and regions converge.
//!
//! The crate is organized around five pieces:
//!
//! - [`measures`]: 1-D mixture measures with exact CDFs and d-dimensional
//!   weighted point clouds, with seeded sampling.
//! - [`depths`]: Mahalanobis, asymmetric Mahalanobis, halfspace (Tukey) and
//!   zonoid depths, plus weighted-mean region support functions.
//! - [`regions`]: depth-trimmed regions as exact intervals in 1-D and
//!   halfplane-intersection polygons in 2-D.
//! - [`hausdorff`]: Hausdorff distances between intervals, convex polygons
//!   and finite point sets, with an explicit undefined-on-empty status.
//! - [`convergence`] and [`counterexamples`]: diagnostics for pointwise,
//!   uniform and region-wise convergence along a sequence of measures, and
//!   four closed-form mixture families whose convergence behaviour is known
//!   exactly and is verified claim by claim.

pub mod convergence;
pub mod counterexamples;
pub mod depths;
pub mod hausdorff;
pub mod measures;
pub mod regions;

pub use measures::{Component1D, EmpiricalMeasure, Measure1D, MeasureError, MomentSummary};

// nalgebra types appear in the public API (covariance matrices)
pub use nalgebra;
