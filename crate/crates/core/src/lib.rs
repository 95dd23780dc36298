//! Alpha-convex envelopes of boundary data on strictly convex planar domains.
//!
//! For `alpha` in `[0, 1]` a function is alpha-convex when it lies below the
//! one-dimensional solutions of `alpha v'' + (1 - alpha) |v'|^2 = 0` on every
//! chord. `alpha = 1` is ordinary convexity and `alpha = 0` quasiconvexity.
//! The crate computes the largest such function below given boundary data on
//! a grid, and provides the checks and references used to validate it.

pub mod analysis;
pub mod envelope;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod lattice;
pub mod oracles;
pub mod scalar;

pub use analysis::{
    c1_diagnostic, check_alpha_convex, check_composition, compare_fields, gradient,
    lipschitz_estimate, support_hyperplane, AlphaHyperplane, FieldComparison, GradientJump,
    TouchCertificate, ViolationReport,
};
pub use envelope::{
    alpha_sweep, init_field, residual, solve_envelope, sweep, EnvelopeProblem, EnvelopeResult,
    Field, Mode, Schedule, SolverSettings, SweepOrder,
};
pub use error::{Error, Result};
pub use geometry::{parse_datum, BoundaryDatum, Point, Shape, StrictlyConvexDomain};
pub use lattice::{
    build_arms, build_directions, build_grid, build_stencil, ArmTable, DirectionSet, Grid,
};
pub use oracles::{
    convex_envelope_oracle, fixed_point_oracle, quasiconvex_envelope_oracle, BoundarySampling,
};
pub use scalar::{
    chord_consistency, chord_derivative, chord_value, eta_solution, eta_value, make_alpha,
    maximal_interval, ode_residual, Alpha, ChordSolution, EtaSolution, MaximalInterval,
};
