//! `dcakit-core` implements the difference-of-convex algorithm (DCA) for
//! problems of the form
//!
//! ```text
//! minimize f(x) = g(x) - h(x)   subject to x ∈ C
//! ```
//!
//! where `g` and `h` are proper closed convex functions described by value and
//! subdifferential oracles, together with the machinery needed to study how the
//! iteration behaves:
//!
//! * [`model`]: convex oracles, subdifferential sets, constraint sets and the
//!   [`DcProblem`](model::DcProblem) container.
//! * [`subsolver`]: the convex subproblem `argmin { g(x) - <y, x> : x ∈ C }`,
//!   solved in closed form, by 1-D bracketing + bisection, or by projected
//!   gradient in several dimensions.
//! * [`engine`]: the DCA loop with full trace recording. Breakdowns are
//!   reported as trace statuses, never as panics.
//! * [`diagnostics`]: runtime checks of the descent inequalities, the
//!   `O(1/sqrt(N))` bound, DC criticality, Łojasiewicz exponent estimation and
//!   the H1-H3 / residual-relation checks.
//! * [`rates`]: recurrence-based rate classification, extremal sequence
//!   generation and empirical rate fitting.
//! * [`zoo`]: ready-made problems, including the classic counterexamples.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![warn(missing_debug_implementations)]
// NaN must fail range checks, so `!(x > 0.0)` is deliberate
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod diagnostics;
pub mod engine;
pub mod functions;
pub mod model;
pub mod rates;
mod stats;
pub mod subsolver;
pub mod zoo;

pub use diagnostics::{CheckOutcome, CheckResult, DiagnosticReport, KlModel, LojasiewiczFit, Tolerance};
pub use engine::{run_dca, IterRecord, RunConfig, Status, StepRecord, Trace};
pub use model::{
    ConstraintSet, ConvexOracle, DcProblem, Interval, Point, Region, SelectionRule, SubdiffSet,
};
pub use rates::{RateHypothesis, RateVerdict};
pub use subsolver::{SubproblemResult, SubproblemStatus, SubsolverConfig, TieBreak};
pub use zoo::{zoo_build, ExpectedBehavior, ZooEntry};

/// Euclidean norm.
pub(crate) fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|c| c * c).sum())
}

/// Euclidean distance between two points of equal dimension.
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}
