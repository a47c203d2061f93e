//! Parameter-plane curves t -> (u(t), v(t)) on a rotational surface.
//!
//! A [`ParamCurve`] pairs a surface with either an analytic backing
//! (closed-form coordinates with exact derivatives) or a sampled backing
//! (a dense table of states from the numerical integrator, evaluated
//! between nodes by cubic Hermite interpolation). The residual and
//! conserved-quantity oracles in `geodesic` work on this type without
//! knowing which construction produced the curve.

use std::fmt;

use thiserror::Error;

use crate::expr::EvalError;
use crate::surface::RotationalSurface;
use crate::vec::PiVec3;

/// A formula branch selector, exposed wherever the coordinate maps carry
/// an independent +/-.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+1" | "1" | "+" | "plus" => Ok(Sign::Plus),
            "-1" | "-" | "minus" => Ok(Sign::Minus),
            other => Err(format!("expected +1 or -1, got `{other}`")),
        }
    }
}

/// Coordinates and their first two parameter derivatives at one t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub ddu: f64,
    pub ddv: f64,
}

/// Evaluation failures of curve operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("t = {t} outside the curve domain ({lo}, {hi})")]
    OutsideDomain { t: f64, lo: f64, hi: f64 },
    #[error("stencil of half-width {half_width} around t = {t} leaves the curve domain")]
    StencilOutOfDomain { t: f64, half_width: f64 },
    #[error("profile evaluation failed: {0}")]
    Profile(#[from] EvalError),
}

type JetFn = Box<dyn Fn(f64) -> CurveJet + Send + Sync>;

/// Dense samples of an integrated trajectory: strictly increasing times
/// with the full phase state at each node.
pub(crate) struct SampledData {
    pub times: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub du: Vec<f64>,
    pub dv: Vec<f64>,
}

impl SampledData {
    /// Cubic Hermite evaluation of one channel between bracketing nodes.
    /// Values and slopes are exact at the nodes; the interpolation error
    /// between them is O(h^4) for step h, and the second derivative of
    /// the cubic is O(h^2) accurate.
    fn hermite(&self, ys: &[f64], dys: &[f64], k: usize, t: f64) -> (f64, f64, f64) {
        let (t0, t1) = (self.times[k], self.times[k + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let (y0, y1, m0, m1) = (ys[k], ys[k + 1], dys[k] * h, dys[k + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let value = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * m1;
        let d1 = ((6.0 * s2 - 6.0 * s) * y0
            + (3.0 * s2 - 4.0 * s + 1.0) * m0
            + (-6.0 * s2 + 6.0 * s) * y1
            + (3.0 * s2 - 2.0 * s) * m1)
            / h;
        let d2 = ((12.0 * s - 6.0) * y0
            + (6.0 * s - 4.0) * m0
            + (-12.0 * s + 6.0) * y1
            + (6.0 * s - 2.0) * m1)
            / (h * h);
        (value, d1, d2)
    }

    fn bracket(&self, t: f64) -> usize {
        match self.times.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(k) => k.min(self.times.len() - 2),
            Err(k) => k.saturating_sub(1).min(self.times.len() - 2),
        }
    }

    fn jet(&self, t: f64) -> CurveJet {
        let k = self.bracket(t);
        let (u, du, ddu) = self.hermite(&self.u, &self.du, k, t);
        let (v, dv, ddv) = self.hermite(&self.v, &self.dv, k, t);
        CurveJet { u, v, du, dv, ddu, ddv }
    }
}

enum Backing {
    Analytic(JetFn),
    Sampled(SampledData),
}

/// A curve on a rotational surface, evaluable in the parameter plane and
/// through the embedding.
pub struct ParamCurve {
    surface: RotationalSurface,
    t_domain: (f64, f64),
    backing: Backing,
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamCurve")
            .field("surface", &self.surface)
            .field("t_domain", &self.t_domain)
            .field(
                "backing",
                &match &self.backing {
                    Backing::Analytic(_) => "analytic".to_owned(),
                    Backing::Sampled(d) => format!("sampled ({} nodes)", d.times.len()),
                },
            )
            .finish()
    }
}

impl ParamCurve {
    pub(crate) fn analytic(
        surface: RotationalSurface,
        t_domain: (f64, f64),
        jet: JetFn,
    ) -> ParamCurve {
        ParamCurve { surface, t_domain, backing: Backing::Analytic(jet) }
    }

    pub(crate) fn sampled(surface: RotationalSurface, data: SampledData) -> ParamCurve {
        let t_domain = (data.times[0], *data.times.last().unwrap());
        ParamCurve { surface, t_domain, backing: Backing::Sampled(data) }
    }

    pub fn surface(&self) -> &RotationalSurface {
        &self.surface
    }

    pub fn t_domain(&self) -> (f64, f64) {
        self.t_domain
    }

    /// True when derivatives come from closed-form expressions rather
    /// than interpolation.
    pub fn is_analytic(&self) -> bool {
        matches!(self.backing, Backing::Analytic(_))
    }

    /// Node times of a sampled backing, if any.
    pub fn sample_times(&self) -> Option<&[f64]> {
        self.sampled_data().map(|d| d.times.as_slice())
    }

    pub(crate) fn sampled_data(&self) -> Option<&SampledData> {
        match &self.backing {
            Backing::Sampled(d) => Some(d),
            Backing::Analytic(_) => None,
        }
    }

    fn check_domain(&self, t: f64) -> Result<(), CurveError> {
        let (lo, hi) = self.t_domain;
        if t < lo || t > hi || !t.is_finite() {
            Err(CurveError::OutsideDomain { t, lo, hi })
        } else {
            Ok(())
        }
    }

    /// Coordinates and derivatives at `t`.
    pub fn jet(&self, t: f64) -> Result<CurveJet, CurveError> {
        self.check_domain(t)?;
        Ok(match &self.backing {
            Backing::Analytic(f) => f(t),
            Backing::Sampled(d) => d.jet(t),
        })
    }

    /// Coordinates (u, v) at `t`.
    pub fn coords(&self, t: f64) -> Result<(f64, f64), CurveError> {
        let j = self.jet(t)?;
        Ok((j.u, j.v))
    }

    /// The curve point in 3-space: surface embedding at (u(t), v(t)).
    pub fn embed(&self, t: f64) -> Result<PiVec3, CurveError> {
        let (u, v) = self.coords(t)?;
        Ok(self.surface.point(u, v)?)
    }

    /// Velocity of the embedded curve, du * dR/du + dv * dR/dv.
    pub fn embed_velocity(&self, t: f64) -> Result<PiVec3, CurveError> {
        let j = self.jet(t)?;
        let (ru, rv) = self.surface.partials(j.u, j.v)?;
        Ok(ru * j.du + rv * j.dv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::surface::MeridianKind;

    fn line_curve() -> ParamCurve {
        let s = RotationalSurface::new(MeridianKind::SpacelikeMeridian, parse("u^2").unwrap());
        ParamCurve::analytic(
            s,
            (0.0, 10.0),
            Box::new(|t| CurveJet { u: 2.0 * t + 1.0, v: 0.5, du: 2.0, dv: 0.0, ddu: 0.0, ddv: 0.0 }),
        )
    }

    #[test]
    fn analytic_evaluation_and_domain() {
        let c = line_curve();
        assert_eq!(c.coords(1.0).unwrap(), (3.0, 0.5));
        assert!(matches!(c.coords(-0.5), Err(CurveError::OutsideDomain { .. })));
        assert!(c.is_analytic());
    }

    #[test]
    fn embedding_matches_surface_point() {
        let c = line_curve();
        let p = c.embed(2.0).unwrap();
        let q = c.surface().point(5.0, 0.5).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn hermite_reproduces_a_cubic_exactly() {
        // u(t) = t^3 - t with nodes at integers: the interpolant is the
        // same cubic piecewise, so values, slopes and curvatures match.
        let times: Vec<f64> = (0..=10).map(|k| k as f64 * 0.5).collect();
        let u: Vec<f64> = times.iter().map(|t| t * t * t - t).collect();
        let du: Vec<f64> = times.iter().map(|t| 3.0 * t * t - 1.0).collect();
        let n = times.len();
        let data = SampledData {
            times: times.clone(),
            u,
            du,
            v: vec![0.0; n],
            dv: vec![0.0; n],
        };
        let s = RotationalSurface::new(MeridianKind::SpacelikeMeridian, parse("u").unwrap());
        let c = ParamCurve::sampled(s, data);
        for t in [0.1, 0.77, 2.34, 4.9] {
            let j = c.jet(t).unwrap();
            assert!((j.u - (t * t * t - t)).abs() < 1e-12, "value at {t}");
            assert!((j.du - (3.0 * t * t - 1.0)).abs() < 1e-11, "slope at {t}");
            assert!((j.ddu - 6.0 * t).abs() < 1e-10, "curvature at {t}");
        }
        // exact at the nodes as well
        let j = c.jet(1.5).unwrap();
        assert_eq!(j.u, 1.5_f64 * 1.5 * 1.5 - 1.5);
    }

    #[test]
    fn sign_parsing() {
        assert_eq!("+1".parse::<Sign>().unwrap(), Sign::Plus);
        assert_eq!("-1".parse::<Sign>().unwrap(), Sign::Minus);
        assert!("0".parse::<Sign>().is_err());
    }

    #[test]
    fn curves_are_shareable_across_threads() {
        const fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<ParamCurve>();
        assert_send_sync::<RotationalSurface>();
        assert_send_sync::<crate::loxodrome::Loxodrome>();
        assert_send_sync::<crate::geodesic::GeodesicClosedForm>();

        let c = std::sync::Arc::new(line_curve());
        let handles: Vec<_> = (0..4)
            .map(|i| {
                let c = std::sync::Arc::clone(&c);
                std::thread::spawn(move || c.coords(0.5 + i as f64).unwrap())
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }
}
