//! Central numeric tolerances and budgets. Every threshold used by more than
//! one module lives here so the values can be audited in one place.

/// Target |Psi(lambda) - 1| for the secular root.
pub const SECULAR_TOL: f64 = 1e-12;

/// Power-iteration residual scale: converged when ||Mx - rho x||_inf <= tol * ||M||_inf.
pub const EIGEN_TOL: f64 = 1e-12;

/// Allowed spread between the secular and eigensolver routes for the same graph.
/// Both routes are independently accurate to ~1e-12; 1e-8 leaves four orders of
/// headroom so a failure means a real bug, not float noise.
pub const AGREEMENT_TOL: f64 = 1e-8;

/// Two rho values within this absolute distance are treated as tied when
/// collecting minimizer sets. The smallest true structural gap observed at
/// n = 11 is ~2e-5, four orders above this.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Refuse exhaustive enumeration beyond this many candidates unless overridden.
pub const DEFAULT_CAP: f64 = 1e8;

/// Default walk-count truncation depth; keeps counts far below u128 range for
/// the max degrees seen at desk scale.
pub const DEFAULT_WALK_DEPTH: usize = 20;

/// Iteration budget for the eigensolver and the secular bisection.
pub const MAX_ITERATIONS: u64 = 1_000_000;

/// Bisection shrinks the bracket to this width before Newton polish.
pub const BISECTION_WIDTH: f64 = 1e-13;

/// Newton polish steps after bisection; each is one derivative estimate.
pub const NEWTON_POLISH_STEPS: usize = 3;
