//! Geometry of the pseudo-isotropic 3-space.
//!
//! The space is R^3 with the degenerate scalar product that reads
//! `x_p x_q - y_p y_q` off the top view and falls back to `z_p z_q`
//! between isotropic vectors. Its top-view geometry is the Lorentzian
//! plane, so angles are hyperbolic and rotations are boosts about the
//! z-axis.
//!
//! The crate implements, with exact derivatives throughout:
//!
//! * [`vec`](mod@vec): vectors, the scalar product, causal classes,
//!   hyperbolic angles and the motion group;
//! * [`expr`] / [`jet`]: a parser for profile functions f(u) and
//!   second-order dual numbers supplying f, f', f'';
//! * [`surface`]: rotational surfaces with space-like or time-like
//!   meridians, their embeddings and first fundamental forms;
//! * [`loxodrome`]: the four closed-form families of curves that cut
//!   every meridian at a constant hyperbolic angle;
//! * [`geodesic`]: closed-form geodesics, meridians, parallels, the
//!   Euler-Lagrange residual oracle and a fixed-step RK4 integrator;
//! * [`table`] / [`report`] / [`verify`]: data export and the
//!   numerical verification suites behind the `pi-geom verify` command.
//!
//! Everything is pure and immutable after construction; values can be
//! shared freely across threads.

pub mod curve;
pub mod expr;
pub mod geodesic;
pub mod jet;
pub mod loxodrome;
pub mod report;
pub mod surface;
pub mod table;
pub mod tol;
pub mod vec;
pub mod verify;

pub use curve::{CurveError, CurveJet, ParamCurve, Sign};
pub use expr::{eval_jet2, parse, EvalError, ExprAst, ParseError};
pub use geodesic::{
    clairaut_constant, classify_parallel, el_residual, el_residual_fd, integrate,
    meridian_geodesic, parallel_curve, GeodesicClosedForm, GeodesicError, GeodesicState,
    IntegrateError, ParallelClassification,
};
pub use jet::Jet2;
pub use loxodrome::{Loxodrome, LoxodromeError, LoxodromeKind, MeasureError};
pub use report::{CheckResult, VerificationReport};
pub use surface::{FundamentalForm, MeridianKind, RotationalSurface};
pub use table::{SampleRow, SampleTable, TableError, TableMeta};
pub use vec::{
    angle_ss, angle_st, angle_tt, rotate_z, AngleError, CausalCharacter, PiMotion, PiVec3,
};
