//! Geodesics of rotational surfaces: closed-form solutions, the
//! Euler-Lagrange residual oracle, the conserved quantity u^2 v', and an
//! independent Runge-Kutta integrator.
//!
//! Both meridian families induce the same geodesic system in the
//! parameter plane,
//!
//! ```text
//! u'' = -u v'^2,          d/dt (u^2 v') = 0,
//! ```
//!
//! so geodesy depends only on (u, v): the profile never enters. The
//! general solution with non-zero angular constant c is
//!
//! ```text
//! u(t) = +/- sqrt((c1 t + c2)^2 - c^2) / sqrt(c1)
//! v(t) = 1/2 ln |(c1 t + c2 - c) / (c1 t + c2 + c)| + c5
//! ```
//!
//! restricted here to c1 > 0, where the first integral
//! u'^2 = (c1 u^2 + c^2) / u^2 holds as written. Meridians u = a t + b
//! (v constant, a != 0) are the c = 0 geodesics; parallels u = const are
//! never geodesics unless they degenerate to a point.

use thiserror::Error;

use crate::curve::{CurveError, CurveJet, ParamCurve, SampledData, Sign};
use crate::expr::ExprAst;
use crate::jet::Jet2;
use crate::surface::{MeridianKind, RotationalSurface};
use crate::tol;

/// Phase-space point of the geodesic system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicState {
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
}

impl GeodesicState {
    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite() && self.du.is_finite() && self.dv.is_finite()
    }
}

/// Construction failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeodesicError {
    #[error("c must be finite and non-zero, got {0}")]
    InvalidC(f64),
    #[error("c1 must be finite and strictly positive, got {0}")]
    InvalidC1(f64),
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("seed t = {seed} lies where (c1 t + c2)^2 <= c^2; u(t) is undefined there")]
    SeedOutsideDomain { seed: f64 },
    #[error("meridian slope must be finite and non-zero, got {0}")]
    InvalidSlope(f64),
    #[error("radius u0 must be finite and non-zero (the metric degenerates on the axis), got {0}")]
    InvalidRadius(f64),
}

/// The closed-form geodesic family with non-zero angular constant.
#[derive(Debug, Clone)]
pub struct GeodesicClosedForm {
    c: f64,
    c1: f64,
    c2: f64,
    c5: f64,
    sign_u: Sign,
    surface: RotationalSurface,
    t_domain: (f64, f64),
}

impl GeodesicClosedForm {
    /// Builds the closed form and derives its parameter domain: the
    /// maximal interval with (c1 t + c2)^2 > c^2 that contains `seed_t`,
    /// shrunk by [`tol::CF_DOMAIN_GUARD`] at the finite boundary.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        c: f64,
        c1: f64,
        c2: f64,
        c5: f64,
        sign_u: Sign,
        kind: MeridianKind,
        profile: ExprAst,
        seed_t: f64,
    ) -> Result<GeodesicClosedForm, GeodesicError> {
        if !c.is_finite() || c == 0.0 {
            return Err(GeodesicError::InvalidC(c));
        }
        if !c1.is_finite() || c1 <= 0.0 {
            return Err(GeodesicError::InvalidC1(c1));
        }
        for (name, value) in [("c2", c2), ("c5", c5), ("seed t", seed_t)] {
            if !value.is_finite() {
                return Err(GeodesicError::NotFinite { name, value });
            }
        }
        // roots of (c1 t + c2)^2 = c^2; the solution lives outside them
        let t_lo_root = (-c.abs() - c2) / c1;
        let t_hi_root = (c.abs() - c2) / c1;
        let t_domain = if seed_t > t_hi_root + tol::CF_DOMAIN_GUARD {
            (t_hi_root + tol::CF_DOMAIN_GUARD, f64::INFINITY)
        } else if seed_t < t_lo_root - tol::CF_DOMAIN_GUARD {
            (f64::NEG_INFINITY, t_lo_root - tol::CF_DOMAIN_GUARD)
        } else {
            return Err(GeodesicError::SeedOutsideDomain { seed: seed_t });
        };
        let surface = RotationalSurface::new(kind, profile);
        Ok(GeodesicClosedForm { c, c1, c2, c5, sign_u, surface, t_domain })
    }

    /// The angular constant; u^2 v' equals this along the curve.
    pub fn clairaut(&self) -> f64 {
        self.c
    }

    pub fn params(&self) -> (f64, f64, f64, f64) {
        (self.c, self.c1, self.c2, self.c5)
    }

    pub fn sign_u(&self) -> Sign {
        self.sign_u
    }

    pub fn surface(&self) -> &RotationalSurface {
        &self.surface
    }

    pub fn t_domain(&self) -> (f64, f64) {
        self.t_domain
    }

    fn check_domain(&self, t: f64) -> Result<(), CurveError> {
        let (lo, hi) = self.t_domain;
        if !t.is_finite() || t < lo || t > hi {
            return Err(CurveError::OutsideDomain { t, lo, hi });
        }
        Ok(())
    }

    fn jet_unchecked(c: f64, c1: f64, c2: f64, c5: f64, sign_u: Sign, t: f64) -> CurveJet {
        let w = Jet2::variable(t) * c1 + c2;
        let disc = w * w - c * c;
        let uj = disc.sqrt() * (sign_u.as_f64() / c1.sqrt());
        // c1 t + (c2 - c) = w - c and c1 t + (c2 + c) = w + c
        let vj = ((w - c).ln_abs() - (w + c).ln_abs()) * 0.5 + c5;
        CurveJet { u: uj.value, v: vj.value, du: uj.d1, dv: vj.d1, ddu: uj.d2, ddv: vj.d2 }
    }

    /// Coordinates and derivatives at `t`.
    pub fn coordinate_jet(&self, t: f64) -> Result<CurveJet, CurveError> {
        self.check_domain(t)?;
        Ok(Self::jet_unchecked(self.c, self.c1, self.c2, self.c5, self.sign_u, t))
    }

    /// Coordinates (u, v) at `t`.
    pub fn coordinates(&self, t: f64) -> Result<(f64, f64), CurveError> {
        let j = self.coordinate_jet(t)?;
        Ok((j.u, j.v))
    }

    /// Phase state at `t`, e.g. to seed the numerical integrator.
    pub fn state_at(&self, t: f64) -> Result<GeodesicState, CurveError> {
        let j = self.coordinate_jet(t)?;
        Ok(GeodesicState { u: j.u, v: j.v, du: j.du, dv: j.dv })
    }

    /// Defect of the first integral u'^2 - (c1 u^2 + c^2) / u^2 at `t`.
    pub fn first_integral_defect(&self, t: f64) -> Result<f64, CurveError> {
        let j = self.coordinate_jet(t)?;
        Ok(j.du * j.du - (self.c1 * j.u * j.u + self.c * self.c) / (j.u * j.u))
    }

    /// A [`ParamCurve`] view with analytic derivatives.
    pub fn to_curve(&self) -> ParamCurve {
        let (c, c1, c2, c5, sign_u) = (self.c, self.c1, self.c2, self.c5, self.sign_u);
        ParamCurve::analytic(
            self.surface.clone(),
            self.t_domain,
            Box::new(move |t| Self::jet_unchecked(c, c1, c2, c5, sign_u, t)),
        )
    }
}

/// The meridian geodesic u = slope * t + intercept, v = v0. Affine u is
/// what makes a meridian a geodesic; both residuals vanish identically.
pub fn meridian_geodesic(
    slope: f64,
    intercept: f64,
    v0: f64,
    kind: MeridianKind,
    profile: ExprAst,
) -> Result<ParamCurve, GeodesicError> {
    if !slope.is_finite() || slope == 0.0 {
        return Err(GeodesicError::InvalidSlope(slope));
    }
    for (name, value) in [("intercept", intercept), ("v0", v0)] {
        if !value.is_finite() {
            return Err(GeodesicError::NotFinite { name, value });
        }
    }
    let surface = RotationalSurface::new(kind, profile);
    Ok(ParamCurve::analytic(
        surface,
        (f64::NEG_INFINITY, f64::INFINITY),
        Box::new(move |t| CurveJet {
            u: slope * t + intercept,
            v: v0,
            du: slope,
            dv: 0.0,
            ddu: 0.0,
            ddv: 0.0,
        }),
    ))
}

/// The parallel u = u0 traversed at a constant rate, v = v0 + rate * t.
/// Not a geodesic unless the rate vanishes; useful as a negative control
/// for the residual oracle (r1 = u0 * rate^2).
pub fn parallel_curve(
    u0: f64,
    rate: f64,
    v0: f64,
    kind: MeridianKind,
    profile: ExprAst,
) -> Result<ParamCurve, GeodesicError> {
    if !u0.is_finite() || u0 == 0.0 {
        return Err(GeodesicError::InvalidRadius(u0));
    }
    for (name, value) in [("rate", rate), ("v0", v0)] {
        if !value.is_finite() {
            return Err(GeodesicError::NotFinite { name, value });
        }
    }
    let surface = RotationalSurface::new(kind, profile);
    Ok(ParamCurve::analytic(
        surface,
        (f64::NEG_INFINITY, f64::INFINITY),
        Box::new(move |t| CurveJet {
            u: u0,
            v: v0 + rate * t,
            du: 0.0,
            dv: rate,
            ddu: 0.0,
            ddv: 0.0,
        }),
    ))
}

/// Verdict on whether the parallel u = u0 can be a geodesic.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelClassification {
    pub u0: f64,
    pub is_geodesic: bool,
    /// Residual (r1, r2) of the unit-rate parametrization (u0, t).
    pub unit_rate_residual: (f64, f64),
    pub explanation: String,
}

/// Classifies the parallel u = u0. The first geodesic equation forces
/// u0 v'^2 = 0, so v' must vanish identically and the "curve" degenerates
/// to a point: no non-degenerate parallel is a geodesic.
pub fn classify_parallel(u0: f64) -> Result<ParallelClassification, GeodesicError> {
    if !u0.is_finite() || u0 == 0.0 {
        return Err(GeodesicError::InvalidRadius(u0));
    }
    Ok(ParallelClassification {
        u0,
        is_geodesic: false,
        unit_rate_residual: (u0, 0.0),
        explanation: format!(
            "a parallel u = {u0} satisfies the geodesic system only if v'(t) = 0 \
             identically, which collapses the curve to a point; read pointwise, \
             v'(t0) = 0 at an instant only makes the residual vanish there. The \
             unit-rate parametrization (u, v) = ({u0}, t) leaves r1 = {u0}."
        ),
    })
}

fn residual_from_jet(j: &CurveJet) -> (f64, f64) {
    let r1 = j.ddu + j.u * j.dv * j.dv;
    let r2 = 2.0 * j.u * j.du * j.dv + j.u * j.u * j.ddv;
    (r1, r2)
}

/// Euler-Lagrange residuals (r1, r2) = (u'' + u v'^2, d/dt(u^2 v')) of a
/// curve at `t`; both vanish along geodesics. The same formula serves
/// both meridian kinds. Analytic curves are differentiated exactly.
/// Sampled curves use 4th-order stencils over the raw node values
/// (evaluated at the node nearest to `t`), which keeps interpolation
/// noise out of the oracle.
pub fn el_residual(curve: &ParamCurve, t: f64) -> Result<(f64, f64), CurveError> {
    if let Some(data) = curve.sampled_data() {
        el_residual_nodes(data, t)
    } else {
        Ok(residual_from_jet(&curve.jet(t)?))
    }
}

/// 5-point stencil over the node grid of a sampled curve, centered at
/// the interior node nearest to `t` with locally uniform spacing (the
/// final partial step is skipped).
fn el_residual_nodes(data: &SampledData, t: f64) -> Result<(f64, f64), CurveError> {
    let times = &data.times;
    let n = times.len();
    if n < 5 {
        return Err(CurveError::StencilOutOfDomain { t, half_width: f64::NAN });
    }
    let (lo, hi) = (times[0], times[n - 1]);
    if !t.is_finite() || t < lo || t > hi {
        return Err(CurveError::OutsideDomain { t, lo, hi });
    }
    let mut k = match times.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
        Ok(i) => i,
        Err(0) => 0,
        Err(i) if i >= n => n - 1,
        Err(i) => {
            if (t - times[i - 1]).abs() <= (times[i] - t).abs() {
                i - 1
            } else {
                i
            }
        }
    };
    k = k.clamp(2, n - 3);
    let uniform = |k: usize| {
        let h = times[k - 1] - times[k - 2];
        (0..4).all(|j| ((times[k - 1 + j] - times[k - 2 + j]) - h).abs() <= 1e-9 * h)
    };
    while k > 2 && !uniform(k) {
        k -= 1;
    }
    if !uniform(k) {
        return Err(CurveError::StencilOutOfDomain { t, half_width: f64::NAN });
    }
    let h = times[k - 1] - times[k - 2];
    let window = |ys: &[f64]| [ys[k - 2], ys[k - 1], ys[k], ys[k + 1], ys[k + 2]];
    let us = window(&data.u);
    let vs = window(&data.v);
    let d1 = |y: &[f64; 5]| (-y[4] + 8.0 * y[3] - 8.0 * y[1] + y[0]) / (12.0 * h);
    let d2 = |y: &[f64; 5]| {
        (-y[4] + 16.0 * y[3] - 30.0 * y[2] + 16.0 * y[1] - y[0]) / (12.0 * h * h)
    };
    let j = CurveJet {
        u: us[2],
        v: vs[2],
        du: d1(&us),
        dv: d1(&vs),
        ddu: d2(&us),
        ddv: d2(&vs),
    };
    Ok(residual_from_jet(&j))
}

/// Residuals by a 4th-order central stencil of width `h` over the
/// coordinate map; the cross-check for the analytic jets. (On sampled
/// curves the stencil reads interpolated coordinates; prefer
/// [`el_residual`], which works on the raw nodes.)
pub fn el_residual_fd(curve: &ParamCurve, t: f64, h: f64) -> Result<(f64, f64), CurveError> {
    let (lo, hi) = curve.t_domain();
    if t - 2.0 * h < lo || t + 2.0 * h > hi {
        return Err(CurveError::StencilOutOfDomain { t, half_width: 2.0 * h });
    }
    let mut us = [0.0; 5];
    let mut vs = [0.0; 5];
    for (i, k) in (-2..=2).enumerate() {
        let (u, v) = curve.coords(t + k as f64 * h)?;
        us[i] = u;
        vs[i] = v;
    }
    let d1 = |y: &[f64; 5]| (-y[4] + 8.0 * y[3] - 8.0 * y[1] + y[0]) / (12.0 * h);
    let d2 = |y: &[f64; 5]| {
        (-y[4] + 16.0 * y[3] - 30.0 * y[2] + 16.0 * y[1] - y[0]) / (12.0 * h * h)
    };
    let j = CurveJet {
        u: us[2],
        v: vs[2],
        du: d1(&us),
        dv: d1(&vs),
        ddu: d2(&us),
        ddv: d2(&vs),
    };
    Ok(residual_from_jet(&j))
}

/// The conserved quantity u^2 v' at `t`; constant along geodesics and
/// equal to the angular constant c of the closed form.
pub fn clairaut_constant(curve: &ParamCurve, t: f64) -> Result<f64, CurveError> {
    let j = curve.jet(t)?;
    Ok(j.u * j.u * j.dv)
}

/// Integration failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrateError {
    #[error("initial state must be finite with u != 0")]
    InvalidState,
    #[error("step must be finite and positive, got {0}")]
    InvalidStep(f64),
    #[error("t-span ({0}, {1}) must be finite with t0 < t1")]
    InvalidSpan(f64, f64),
    #[error("|u| = {u:e} fell below the axis guard {guard:e} near t = {t}; the system is singular on the rotation axis")]
    AxisCrossing { t: f64, u: f64, guard: f64 },
    #[error("conserved quantity u^2 v' drifted by {drift:e} (relative) at t = {t}; reduce the step from {step}")]
    StepTooLarge { t: f64, drift: f64, step: f64 },
    #[error("span/step = {0:.0} exceeds the node cap of {1}; raise the step")]
    TooManySteps(f64, usize),
}

const MAX_NODES: usize = 20_000_000;

type Phase = [f64; 4];

fn rhs(s: Phase) -> Option<Phase> {
    let [u, _v, du, dv] = s;
    if u.abs() < tol::AXIS_GUARD {
        return None;
    }
    // second equation expanded: v'' = -2 u' v' / u
    Some([du, dv, -u * dv * dv, -2.0 * du * dv / u])
}

fn rk4_step(s: Phase, h: f64) -> Option<Phase> {
    let shift = |s: Phase, k: Phase, f: f64| {
        [s[0] + f * k[0], s[1] + f * k[1], s[2] + f * k[2], s[3] + f * k[3]]
    };
    let k1 = rhs(s)?;
    let k2 = rhs(shift(s, k1, 0.5 * h))?;
    let k3 = rhs(shift(s, k2, 0.5 * h))?;
    let k4 = rhs(shift(s, k3, h))?;
    Some([
        s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        s[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        s[3] + h / 6.0 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3]),
    ])
}

/// Classical fixed-step RK4 on the first-order system
/// (u, v, u', v')' = (u', v', -u v'^2, -2 u' v' / u).
///
/// Aborts with [`IntegrateError::AxisCrossing`] once |u| falls below the
/// axis guard and with [`IntegrateError::StepTooLarge`] once the
/// conserved quantity u^2 v' drifts beyond [`tol::STEP_DRIFT_GUARD`]
/// relative. The fixed step keeps runs bit-reproducible; there is no
/// adaptive control.
pub fn integrate(
    kind: MeridianKind,
    profile: ExprAst,
    s0: GeodesicState,
    t_span: (f64, f64),
    step: f64,
) -> Result<ParamCurve, IntegrateError> {
    if !s0.is_finite() || s0.u == 0.0 {
        return Err(IntegrateError::InvalidState);
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(IntegrateError::InvalidStep(step));
    }
    let (t0, t1) = t_span;
    if !t0.is_finite() || !t1.is_finite() || t0 >= t1 {
        return Err(IntegrateError::InvalidSpan(t0, t1));
    }
    if s0.u.abs() < tol::AXIS_GUARD {
        return Err(IntegrateError::AxisCrossing { t: t0, u: s0.u, guard: tol::AXIS_GUARD });
    }
    let span = t1 - t0;
    if span / step > MAX_NODES as f64 {
        return Err(IntegrateError::TooManySteps(span / step, MAX_NODES));
    }

    let j0 = s0.u * s0.u * s0.dv;
    let mut state: Phase = [s0.u, s0.v, s0.du, s0.dv];
    let n_whole = (span / step).floor() as usize;

    let cap = n_whole + 2;
    let mut data = SampledData {
        times: Vec::with_capacity(cap),
        u: Vec::with_capacity(cap),
        v: Vec::with_capacity(cap),
        du: Vec::with_capacity(cap),
        dv: Vec::with_capacity(cap),
    };
    fn push(d: &mut SampledData, t: f64, s: &Phase) {
        d.times.push(t);
        d.u.push(s[0]);
        d.v.push(s[1]);
        d.du.push(s[2]);
        d.dv.push(s[3]);
    }
    push(&mut data, t0, &state);

    let mut t_prev = t0;
    for k in 1.. {
        // node times come from k * step, not accumulation, so rounding
        // does not drift; the last node is pinned to t1
        let t_next = if k <= n_whole { (t0 + k as f64 * step).min(t1) } else { t1 };
        let h = t_next - t_prev;
        if h <= 0.0 {
            break;
        }
        state = rk4_step(state, h).ok_or(IntegrateError::AxisCrossing {
            t: t_next,
            u: state[0],
            guard: tol::AXIS_GUARD,
        })?;
        if state[0].abs() < tol::AXIS_GUARD {
            return Err(IntegrateError::AxisCrossing {
                t: t_next,
                u: state[0],
                guard: tol::AXIS_GUARD,
            });
        }
        let j = state[0] * state[0] * state[3];
        let drift = if j0 == 0.0 { j.abs() } else { (j - j0).abs() / j0.abs() };
        if drift > tol::STEP_DRIFT_GUARD {
            return Err(IntegrateError::StepTooLarge { t: t_next, drift, step });
        }
        push(&mut data, t_next, &state);
        t_prev = t_next;
        if t_next >= t1 {
            break;
        }
    }
    Ok(ParamCurve::sampled(RotationalSurface::new(kind, profile), data))
}
