//! Rotational surfaces: a profile curve in an isotropic coordinate plane
//! swept by the hyperbolic rotation about the z-axis.
//!
//! Two families exist, distinguished by the causal character of the
//! meridian. With profile f and coordinates (u, v):
//!
//! ```text
//! space-like meridian:  (u cosh v, u sinh v, f(u))
//! time-like meridian:   (u sinh v, u cosh v, f(u))
//! ```
//!
//! The induced metric is independent of the profile:
//! du^2 - u^2 dv^2 for the first family, -du^2 + u^2 dv^2 for the
//! second. It degenerates on the axis u = 0.

use std::fmt;

use crate::expr::{eval_jet2, EvalError, ExprAst};
use crate::jet::Jet2;
use crate::vec::PiVec3;

/// Causal character of the meridian; selects the embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeridianKind {
    SpacelikeMeridian,
    TimelikeMeridian,
}

impl fmt::Display for MeridianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MeridianKind::SpacelikeMeridian => "spacelike-meridian",
            MeridianKind::TimelikeMeridian => "timelike-meridian",
        };
        f.write_str(s)
    }
}

/// Coefficients of the first fundamental form
/// ds^2 = E du^2 + 2 F du dv + G dv^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

/// A rotational surface: meridian kind plus profile function f(u).
#[derive(Debug, Clone, PartialEq)]
pub struct RotationalSurface {
    kind: MeridianKind,
    profile: ExprAst,
}

impl RotationalSurface {
    pub fn new(kind: MeridianKind, profile: ExprAst) -> Self {
        RotationalSurface { kind, profile }
    }

    pub fn kind(&self) -> MeridianKind {
        self.kind
    }

    pub fn profile(&self) -> &ExprAst {
        &self.profile
    }

    /// Profile value and derivatives at `u`.
    pub fn profile_jet(&self, u: f64) -> Result<Jet2, EvalError> {
        eval_jet2(&self.profile, u)
    }

    /// The embedding at (u, v).
    pub fn point(&self, u: f64, v: f64) -> Result<PiVec3, EvalError> {
        let f = self.profile_jet(u)?.value;
        let (ch, sh) = (v.cosh(), v.sinh());
        Ok(match self.kind {
            MeridianKind::SpacelikeMeridian => PiVec3::new(u * ch, u * sh, f),
            MeridianKind::TimelikeMeridian => PiVec3::new(u * sh, u * ch, f),
        })
    }

    /// Exact partial derivatives (dR/du, dR/dv) at (u, v); the profile
    /// derivative comes from the dual-number evaluator.
    pub fn partials(&self, u: f64, v: f64) -> Result<(PiVec3, PiVec3), EvalError> {
        let df = self.profile_jet(u)?.d1;
        let (ch, sh) = (v.cosh(), v.sinh());
        Ok(match self.kind {
            MeridianKind::SpacelikeMeridian => (
                PiVec3::new(ch, sh, df),
                PiVec3::new(u * sh, u * ch, 0.0),
            ),
            MeridianKind::TimelikeMeridian => (
                PiVec3::new(sh, ch, df),
                PiVec3::new(u * ch, u * sh, 0.0),
            ),
        })
    }

    /// Tangent of the meridian through (u, v), i.e. dR/du.
    ///
    /// Its scalar square is +1 on surfaces with space-like meridian and
    /// -1 on surfaces with time-like meridian, for every (u, v).
    pub fn meridian_tangent(&self, u: f64, v: f64) -> Result<PiVec3, EvalError> {
        Ok(self.partials(u, v)?.0)
    }

    /// First fundamental form at radius `u`: (1, 0, -u^2) for a
    /// space-like meridian, (-1, 0, u^2) for a time-like one. The
    /// profile does not enter.
    pub fn fundamental_form(&self, u: f64) -> FundamentalForm {
        match self.kind {
            MeridianKind::SpacelikeMeridian => FundamentalForm { e: 1.0, f: 0.0, g: -u * u },
            MeridianKind::TimelikeMeridian => FundamentalForm { e: -1.0, f: 0.0, g: u * u },
        }
    }
}
