//! Rigorous upper bounds, combinatorial lower bounds, and (for small-step
//! quarter-plane models) exact growth constants for counting sequences of
//! lattice walks restricted to an orthant.
//!
//! The pieces fit together like this:
//!
//! * [`stepset`] defines the models: finite multisets of integer step
//!   vectors, their drift, inventory and covariance, and the essentiality
//!   test that decides whether every orthant constraint genuinely binds.
//! * [`halfplane`] bounds a quarter-plane model by half-plane models: the
//!   projected unidimensional inventory chi(u) is convex with a unique
//!   positive critical point, the growth constant of a half-plane model is
//!   |A| or chi(tau) by drift sign, and minimizing over bounding angles
//!   either lands on the interior critical point of the full inventory or on
//!   an endpoint of [0, pi/2].
//! * [`smallsteps`] evaluates the closed forms for two-dimensional
//!   small-step models, classifies by drift and covariance, and enumerates
//!   the canonical census of 79 non-isomorphic essential models.
//! * [`enumeration`] produces exact arbitrary-precision counts by dynamic
//!   programming; these are supermultiplicative, so every n-th root is a
//!   rigorous floor under any claimed upper bound.
//! * [`bounds`] assembles shuffle, rotation and excursion lower bounds with
//!   the upper bounds into a per-model ledger that resolves when the gap
//!   closes.
//! * [`orthant`] generalizes the half-plane machinery to bounding
//!   hyperplanes in any dimension.
//!
//! All operations are pure functions of their inputs and safe to call
//! concurrently on shared models.

pub mod bounds;
pub mod enumeration;
mod error;
pub mod format;
pub mod halfplane;
pub mod orthant;
mod solve;
pub mod smallsteps;
pub mod stepset;

pub use error::{Error, Result};
pub use halfplane::{best_upper_bound, critical_point, growth_at_angle, theta_sweep};
pub use smallsteps::{enumerate_small_models, fr_classify, fr_values};
pub use stepset::{Drift, Step, StepSet};
