//! Finite exhausters of positively homogeneous functions.
//!
//! A positively homogeneous function `h` can be written as a sup-of-min
//! (lower exhauster) or inf-of-max (upper exhauster) of linear functions
//! indexed by a family of convex sets. This crate represents such families
//! with balls and polyhedra, and removes redundant members using the set
//! order relations `≼m1` / `≼m2` (defined through the Minkowski difference and
//! a cone) and the sharp-set covering test of the unconstrained case.
//!
//! Layout:
//! - [`vector`], [`lp`]: dense vectors and a small two-phase simplex solver.
//! - [`body`]: convex sets, support functions, Minkowski difference.
//! - [`cone`]: polyhedral cones, duals, contingent cones.
//! - [`order`]: the set order relations and minimal/maximal subfamilies.
//! - [`exhauster`]: evaluation, reduction, optimality conditions, verification.

pub mod body;
pub mod cone;
mod error;
pub mod exhauster;
mod hull;
pub mod lp;
pub mod order;
pub mod tolerance;
pub mod vector;

pub use body::{Body, Halfspace};
pub use cone::Cone;
pub use error::{Error, Result};
pub use exhauster::{
    CoverVerdict, Exhauster, GapReport, Kind, Lemma41, OptimalityReport, ReductionReport,
};
pub use lp::{LinearConstraint, LpOutcome, OptSense, Sense};
pub use order::{FamilyIndexSet, OrderCheck};
pub use vector::Vector;
