//! Tolerances and numerical guards used across the crate.
//!
//! Every threshold that the verification suites assert against is defined
//! here, with a short note on where the number comes from, so no check
//! carries an ad-hoc magic constant.

/// Absolute tolerance for identities that are exact up to a handful of
/// rounding operations (metric coefficients from embeddings, rotation
/// equivariance, embedding identity of exported rows).
///
/// The quantities involved stay O(10) on the tested grids, so a few ULPs
/// are well below 1e-12.
pub const METRIC_ABS: f64 = 1e-12;

/// Unit-speed defect |<y',y'> -/+ 1| with the analytic velocity.
///
/// The scalar square is a difference of squares of O(10..100) terms;
/// cancellation leaves roughly eps * x'^2 of noise, bounded by the
/// parameter ranges of the randomized suites (see `verify`).
pub const UNIT_SPEED_ANALYTIC: f64 = 1e-9;

/// Unit-speed defect with a central-difference velocity (step
/// [`VELOCITY_FD_STEP`]): truncation O(h^2) plus rounding O(eps/h) on
/// O(10) components comes to ~1e-8; 1e-5 leaves margin.
pub const UNIT_SPEED_FD: f64 = 1e-5;

/// Step for the central-difference velocity cross-check.
pub const VELOCITY_FD_STEP: f64 = 1e-6;

/// |measured meridian angle - construction angle| along a loxodrome.
///
/// acosh amplifies ratio noise by 1/sinh(angle) near 0; the suites keep
/// angles >= 0.05 so the amplified error stays below 1e-9.
pub const CONSTANT_ANGLE: f64 = 1e-9;

/// |<y', meridian tangent> -/+ u'| along a loxodrome.
pub const MERIDIAN_PRODUCT: f64 = 1e-10;

/// Euler-Lagrange residual bound for closed-form geodesics (analytic
/// derivatives). The two residual terms cancel algebraically; what is
/// left is rounding at the scale of the individual terms.
pub const EL_RESIDUAL: f64 = 1e-6;

/// Relative defect of the conserved quantity u^2 v' against its
/// construction value along closed-form geodesics.
pub const CLAIRAUT_REL: f64 = 1e-8;

/// Relative drift of u^2 v' per unit time for the RK4 oracle at step
/// [`RK4_REFERENCE_STEP`]. RK4 global error is O(h^4) ~ 1e-12 here.
pub const CONSERVED_DRIFT_PER_TIME: f64 = 1e-8;

/// First-integral defect |u'^2 - (c1 u^2 + c^2)/u^2| along closed forms.
pub const FIRST_INTEGRAL: f64 = 1e-8;

/// (u, v) disagreement between the RK4 oracle and the closed form over a
/// unit parameter span at step [`RK4_REFERENCE_STEP`].
pub const RK4_MATCH: f64 = 1e-6;

/// Reference fixed step for the RK4 oracle.
pub const RK4_REFERENCE_STEP: f64 = 1e-3;

/// Minimum error-reduction factor required when the RK4 step is halved.
/// A 4th-order method gives 16; 12 allows rounding slack. Measured at
/// coarse steps where truncation dominates rounding.
pub const RK4_ORDER_FACTOR: f64 = 12.0;

/// Coarse step used for the order-of-convergence measurement. At the
/// reference step the truncation error (~1e-13) sits below the rounding
/// floor and the 16x ratio is unobservable; at 0.05 it dominates
/// rounding while the conserved-quantity drift stays inside
/// [`STEP_DRIFT_GUARD`].
pub const RK4_ORDER_STEP: f64 = 0.05;

/// First-derivative agreement between dual numbers and central
/// differences at step [`AD_FD_STEP`] (absolute + relative).
pub const AD_FIRST: f64 = 1e-6;

/// Second-derivative agreement (second central difference of the value);
/// rounding O(eps/h^2) ~ 2e-6 dominates, 1e-4 leaves margin.
pub const AD_SECOND: f64 = 1e-4;

/// Step for the finite-difference derivative cross-checks.
pub const AD_FD_STEP: f64 = 1e-5;

/// Relative tolerance for scalar-product preservation under the linear
/// part of a motion.
pub const MOTION_REL: f64 = 1e-12;

/// |angle(boost a, boost b) - |a - b|| for boosts of a common unit
/// space-like vector.
pub const BOOST_ADDITIVITY: f64 = 1e-10;

/// |angle(a p, b q) - angle(p, q)| for positive scalings a, b.
pub const ANGLE_SCALE_INVARIANCE: f64 = 1e-12;

/// acosh clamp width: ratios in [1 - ACOSH_CLAMP, 1) collapse to angle 0
/// instead of erroring. Rounding near the degenerate-span boundary
/// produces ratios a few ULPs below 1.
pub const ACOSH_CLAMP: f64 = 1e-12;

/// The integrator aborts once |u| falls below this guard; the metric
/// degenerates on the rotation axis and v'' = -2 u' v' / u blows up.
pub const AXIS_GUARD: f64 = 1e-9;

/// Relative drift of u^2 v' at which the integrator aborts with a
/// step-size diagnostic.
pub const STEP_DRIFT_GUARD: f64 = 1e-6;

/// Guard band subtracted from closed-form geodesic domain boundaries,
/// where the square root in u(t) degenerates.
pub const CF_DOMAIN_GUARD: f64 = 1e-6;

/// Step for the 4th-order residual stencils that cross-check analytic
/// jets. (Sampled curves differentiate their raw node grid instead.)
pub const JET_FD_STEP: f64 = 1e-4;
