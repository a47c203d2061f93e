//! The four closed-form loxodrome families on rotational surfaces.
//!
//! A loxodrome cuts every meridian of its surface at a constant
//! hyperbolic angle. Unit-speed solutions exist in closed form, one
//! family per combination of curve character and meridian character:
//!
//! | kind | curve      | meridian   | u(t)              | v(t)                  |
//! |------|------------|------------|-------------------|-----------------------|
//! | SS   | space-like | space-like | ±t cosh θ         | ±tanh θ ln\|t\|       |
//! | TS   | time-like  | space-like | ±t sinh η         | ±coth η ln\|t\|       |
//! | ST   | space-like | time-like  | ±t sinh η         | ±coth η ln\|t\|       |
//! | TT   | time-like  | time-like  | -t cosh φ         | ±tanh φ ln\|t\|       |
//!
//! The two ± branches are independent `sign_u`, `sign_v` parameters
//! (except TT, whose u-branch is fixed); the verification suite checks
//! unit speed and the constant angle for every combination instead of
//! hard-coding a coupling. TS and ST need a strictly positive angle
//! because coth is singular at 0; the parameter domain must not contain
//! t = 0 because of ln|t|.

use thiserror::Error;

use crate::curve::{CurveError, CurveJet, ParamCurve, Sign};
use crate::expr::ExprAst;
use crate::surface::{MeridianKind, RotationalSurface};
use crate::vec::{angle_ss, angle_st, angle_tt, AngleError, PiVec3};

/// Family selector: curve character x meridian character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LoxodromeKind {
    /// Space-like curve on a surface with space-like meridian.
    SS,
    /// Time-like curve on a surface with space-like meridian.
    TS,
    /// Space-like curve on a surface with time-like meridian.
    ST,
    /// Time-like curve on a surface with time-like meridian.
    TT,
}

impl LoxodromeKind {
    /// The surface family the loxodrome lives on.
    pub fn surface_kind(self) -> MeridianKind {
        match self {
            LoxodromeKind::SS | LoxodromeKind::TS => MeridianKind::SpacelikeMeridian,
            LoxodromeKind::ST | LoxodromeKind::TT => MeridianKind::TimelikeMeridian,
        }
    }

    /// Scalar square of the unit-speed velocity: +1 for space-like
    /// curves (SS, ST), -1 for time-like ones (TS, TT).
    pub fn speed_square(self) -> f64 {
        match self {
            LoxodromeKind::SS | LoxodromeKind::ST => 1.0,
            LoxodromeKind::TS | LoxodromeKind::TT => -1.0,
        }
    }

    /// TS and ST take the angle through coth, so 0 is excluded.
    pub fn requires_positive_angle(self) -> bool {
        matches!(self, LoxodromeKind::TS | LoxodromeKind::ST)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LoxodromeKind::SS => "ss",
            LoxodromeKind::TS => "ts",
            LoxodromeKind::ST => "st",
            LoxodromeKind::TT => "tt",
        }
    }
}

/// Construction failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoxodromeError {
    #[error("angle must be finite and nonnegative, got {0}")]
    InvalidAngle(f64),
    #[error("kinds TS and ST need a strictly positive angle (coth is singular at 0)")]
    ZeroAngleNeedsTanh,
    #[error("t-domain ({0}, {1}) must not contain 0 (ln|t| singularity)")]
    DomainContainsZero(f64, f64),
    #[error("t-domain ({0}, {1}) is empty or not finite")]
    InvalidDomain(f64, f64),
    #[error("the TT family fixes u(t) = -t cosh(angle); sign_u must be -1")]
    SignUFixedForTT,
}

/// Failures while measuring the meridian angle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Angle(#[from] AngleError),
}

/// A closed-form loxodrome.
#[derive(Debug, Clone)]
pub struct Loxodrome {
    kind: LoxodromeKind,
    angle: f64,
    sign_u: Sign,
    sign_v: Sign,
    surface: RotationalSurface,
    t_domain: (f64, f64),
}

impl Loxodrome {
    /// Builds a loxodrome of the given family.
    ///
    /// `angle` is the constant meridian angle (theta, eta or phi
    /// depending on the family). For TT pass `sign_u = Sign::Minus`;
    /// the family has no u-branch to choose.
    pub fn new(
        kind: LoxodromeKind,
        angle: f64,
        sign_u: Sign,
        sign_v: Sign,
        profile: ExprAst,
        t_domain: (f64, f64),
    ) -> Result<Loxodrome, LoxodromeError> {
        if !angle.is_finite() || angle < 0.0 {
            return Err(LoxodromeError::InvalidAngle(angle));
        }
        if angle == 0.0 && kind.requires_positive_angle() {
            return Err(LoxodromeError::ZeroAngleNeedsTanh);
        }
        let (lo, hi) = t_domain;
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(LoxodromeError::InvalidDomain(lo, hi));
        }
        if lo <= 0.0 && hi >= 0.0 {
            return Err(LoxodromeError::DomainContainsZero(lo, hi));
        }
        if kind == LoxodromeKind::TT && sign_u == Sign::Plus {
            return Err(LoxodromeError::SignUFixedForTT);
        }
        let surface = RotationalSurface::new(kind.surface_kind(), profile);
        Ok(Loxodrome { kind, angle, sign_u, sign_v, surface, t_domain })
    }

    pub fn kind(&self) -> LoxodromeKind {
        self.kind
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn sign_u(&self) -> Sign {
        self.sign_u
    }

    pub fn sign_v(&self) -> Sign {
        self.sign_v
    }

    pub fn surface(&self) -> &RotationalSurface {
        &self.surface
    }

    pub fn t_domain(&self) -> (f64, f64) {
        self.t_domain
    }

    /// The slopes of the coordinate map: u(t) = a t, v(t) = b ln|t|.
    fn factors(&self) -> (f64, f64) {
        let (su, sv) = (self.sign_u.as_f64(), self.sign_v.as_f64());
        match self.kind {
            LoxodromeKind::SS => (su * self.angle.cosh(), sv * self.angle.tanh()),
            LoxodromeKind::TS | LoxodromeKind::ST => {
                (su * self.angle.sinh(), sv / self.angle.tanh())
            }
            LoxodromeKind::TT => (-self.angle.cosh(), sv * self.angle.tanh()),
        }
    }

    fn check_domain(&self, t: f64) -> Result<(), CurveError> {
        let (lo, hi) = self.t_domain;
        if t < lo || t > hi || t == 0.0 || !t.is_finite() {
            Err(CurveError::OutsideDomain { t, lo, hi })
        } else {
            Ok(())
        }
    }

    /// Surface coordinates (u, v) at `t`.
    pub fn coordinates(&self, t: f64) -> Result<(f64, f64), CurveError> {
        self.check_domain(t)?;
        let (a, b) = self.factors();
        Ok((a * t, b * t.abs().ln()))
    }

    /// Coordinates with first and second derivatives.
    pub fn coordinate_jet(&self, t: f64) -> Result<CurveJet, CurveError> {
        self.check_domain(t)?;
        let (a, b) = self.factors();
        Ok(CurveJet {
            u: a * t,
            v: b * t.abs().ln(),
            du: a,
            dv: b / t,
            ddu: 0.0,
            ddv: -b / (t * t),
        })
    }

    /// The curve point in 3-space.
    pub fn embed(&self, t: f64) -> Result<PiVec3, CurveError> {
        let (u, v) = self.coordinates(t)?;
        Ok(self.surface.point(u, v)?)
    }

    /// Analytic velocity of the embedded curve via the chain rule,
    /// du * dR/du + dv * dR/dv. Its scalar square is
    /// [`LoxodromeKind::speed_square`] for every admissible t.
    pub fn velocity(&self, t: f64) -> Result<PiVec3, CurveError> {
        let j = self.coordinate_jet(t)?;
        let (ru, rv) = self.surface.partials(j.u, j.v)?;
        Ok(ru * j.du + rv * j.dv)
    }

    /// Central-difference velocity of the embedding, the cross-check for
    /// the analytic chain rule.
    pub fn velocity_fd(&self, t: f64, h: f64) -> Result<PiVec3, CurveError> {
        let fwd = self.embed(t + h)?;
        let bwd = self.embed(t - h)?;
        Ok((fwd - bwd) * (0.5 / h))
    }

    /// Measures the hyperbolic angle between the velocity and the
    /// meridian tangent at the foot point. For a correct construction
    /// this equals [`Loxodrome::angle`] at every t; it is the module's
    /// central oracle.
    pub fn measure_meridian_angle(&self, t: f64) -> Result<f64, MeasureError> {
        let j = self.coordinate_jet(t)?;
        let velocity = self.velocity(t)?;
        let tangent = self.surface.meridian_tangent(j.u, j.v).map_err(CurveError::from)?;
        let angle = match self.kind {
            LoxodromeKind::SS => angle_ss(&velocity, &tangent)?,
            LoxodromeKind::TS | LoxodromeKind::ST => angle_st(&velocity, &tangent)?,
            LoxodromeKind::TT => angle_tt(&velocity, &tangent)?,
        };
        Ok(angle)
    }

    /// A [`ParamCurve`] view, for the residual oracles.
    pub fn to_curve(&self) -> ParamCurve {
        let (a, b) = self.factors();
        ParamCurve::analytic(
            self.surface.clone(),
            self.t_domain,
            Box::new(move |t| CurveJet {
                u: a * t,
                v: b * t.abs().ln(),
                du: a,
                dv: b / t,
                ddu: 0.0,
                ddv: -b / (t * t),
            }),
        )
    }
}
