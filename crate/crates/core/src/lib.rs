//! Inflection-point estimation for convex/concave sampled data.
//!
//! The estimators work purely on chord geometry: the extremum-surface
//! estimator (ESE) looks for the abscissae where the left and right chords
//! enclose extremal signed area with the data, and the extremum-distance
//! estimator (EDE) looks for the points farthest below and above the chord
//! joining the first and last samples. Both have bisection-style iterative
//! refinements ([`refine::bese`], [`refine::bede`]).
//!
//! All estimators assume the convex-then-concave orientation; use
//! [`estimators::orient`] to bring concave-then-convex data into it.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chord;
pub mod cubic;
pub mod error;
pub mod estimators;
pub mod harness;
pub mod io;
pub mod model;
pub mod refine;
pub mod solver;

pub use chord::{ChordLine, SurfaceProfiles};
pub use cubic::CubicCoefficients;
pub use error::{Error, Result};
pub use estimators::{EdeReport, EseReport, Shape, TheoreticalPoints};
pub use model::{CurveSpec, Family, NoiseKind, NoiseSpec, SampledCurve, SymmetryClass};
pub use refine::{IterationTrace, RefineOptions, StopReason};
