//! Vectors of the pseudo-isotropic 3-space, their degenerate scalar
//! product, causal classification, hyperbolic angles and motions.
//!
//! The primary metric lives on the (x, y) top-view plane with signature
//! (+, -); the z-direction is invisible to it. Between two isotropic
//! vectors (both with vanishing top view) a secondary product on the
//! z-components takes over. On the top view the space behaves like the
//! Lorentzian plane, which is where the hyperbolic angle formulas come
//! from.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::tol;

/// A vector of the pseudo-isotropic 3-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Causal class of a vector.
///
/// Isotropic vectors (vanishing top view) form a class of their own; the
/// space-/time-/light-like trichotomy applies to non-isotropic vectors
/// through the sign of the scalar square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalCharacter {
    Isotropic,
    Spacelike,
    Timelike,
    Lightlike,
}

impl fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CausalCharacter::Isotropic => "isotropic",
            CausalCharacter::Spacelike => "space-like",
            CausalCharacter::Timelike => "time-like",
            CausalCharacter::Lightlike => "light-like",
        };
        f.write_str(s)
    }
}

impl PiVec3 {
    pub const ZERO: PiVec3 = PiVec3 { x: 0.0, y: 0.0, z: 0.0 };

    /// Builds a vector from finite components.
    ///
    /// Panics on NaN or infinity; every other constructor in the crate
    /// funnels through domain checks before reaching this point.
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        assert!(
            x.is_finite() && y.is_finite() && z.is_finite(),
            "PiVec3 components must be finite, got ({x}, {y}, {z})"
        );
        PiVec3 { x, y, z }
    }

    /// True when the top view vanishes exactly (x = 0 and y = 0).
    ///
    /// The test is set-theoretic, not metric: constructors do not snap
    /// near-zero components, so only exact zeros qualify.
    pub fn is_isotropic(&self) -> bool {
        self.x == 0.0 && self.y == 0.0
    }

    /// Projection onto the (x, y) plane: (x, y, z) -> (x, y, 0).
    pub fn top_view(&self) -> PiVec3 {
        PiVec3 { x: self.x, y: self.y, z: 0.0 }
    }

    /// The degenerate scalar product.
    ///
    /// Returns z_p * z_q when both arguments are isotropic and
    /// x_p * x_q - y_p * y_q otherwise. In particular the product is 0
    /// whenever exactly one argument is isotropic.
    pub fn scalar_product(&self, other: &PiVec3) -> f64 {
        if self.is_isotropic() && other.is_isotropic() {
            self.z * other.z
        } else {
            self.x * other.x - self.y * other.y
        }
    }

    /// Scalar square, `self.scalar_product(self)`.
    pub fn scalar_square(&self) -> f64 {
        self.scalar_product(self)
    }

    /// Causal classification. The zero vector counts as isotropic.
    pub fn causal_character(&self) -> CausalCharacter {
        if self.is_isotropic() {
            return CausalCharacter::Isotropic;
        }
        let s = self.scalar_square();
        if s > 0.0 {
            CausalCharacter::Spacelike
        } else if s < 0.0 {
            CausalCharacter::Timelike
        } else {
            CausalCharacter::Lightlike
        }
    }

    /// Norm: sqrt(|<p,p>|) for non-isotropic vectors, |z| for isotropic
    /// ones (the secondary product supplies the isotropic branch).
    /// Light-like vectors have norm 0.
    pub fn norm(&self) -> f64 {
        if self.is_isotropic() {
            self.z.abs()
        } else {
            self.scalar_square().abs().sqrt()
        }
    }
}

impl Add for PiVec3 {
    type Output = PiVec3;
    fn add(self, rhs: PiVec3) -> PiVec3 {
        PiVec3 { x: self.x + rhs.x, y: self.y + rhs.y, z: self.z + rhs.z }
    }
}

impl Sub for PiVec3 {
    type Output = PiVec3;
    fn sub(self, rhs: PiVec3) -> PiVec3 {
        PiVec3 { x: self.x - rhs.x, y: self.y - rhs.y, z: self.z - rhs.z }
    }
}

impl Neg for PiVec3 {
    type Output = PiVec3;
    fn neg(self) -> PiVec3 {
        PiVec3 { x: -self.x, y: -self.y, z: -self.z }
    }
}

impl Mul<f64> for PiVec3 {
    type Output = PiVec3;
    fn mul(self, s: f64) -> PiVec3 {
        PiVec3 { x: self.x * s, y: self.y * s, z: self.z * s }
    }
}

impl Mul<PiVec3> for f64 {
    type Output = PiVec3;
    fn mul(self, v: PiVec3) -> PiVec3 {
        v * self
    }
}

impl fmt::Display for PiVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A motion of the space: hyperbolic rotation of the top view, a z-shear
/// and a translation,
///
/// ```text
/// x' = x cosh v + y sinh v + a
/// y' = x sinh v + y cosh v + b
/// z' = c1 x    + c2 y + z  + c
/// ```
///
/// The linear part preserves the scalar product of difference vectors and
/// maps isotropic vectors to isotropic vectors (the shear vanishes on
/// x = y = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiMotion {
    /// Hyperbolic rotation angle about the z-axis.
    pub v: f64,
    /// z-shear coefficients.
    pub c1: f64,
    pub c2: f64,
    /// Translation.
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl PiMotion {
    pub const IDENTITY: PiMotion =
        PiMotion { v: 0.0, c1: 0.0, c2: 0.0, a: 0.0, b: 0.0, c: 0.0 };

    /// Pure hyperbolic rotation about the z-axis.
    pub fn rotation(v: f64) -> PiMotion {
        PiMotion { v, ..PiMotion::IDENTITY }
    }

    /// Applies the full motion (linear part plus translation).
    pub fn apply(&self, p: PiVec3) -> PiVec3 {
        let lin = self.apply_linear(p);
        PiVec3 { x: lin.x + self.a, y: lin.y + self.b, z: lin.z + self.c }
    }

    /// Applies only the linear part (rotation and shear).
    ///
    /// This is the map that acts on difference vectors and preserves
    /// scalar products and causal characters.
    pub fn apply_linear(&self, p: PiVec3) -> PiVec3 {
        let (ch, sh) = (self.v.cosh(), self.v.sinh());
        PiVec3 {
            x: p.x * ch + p.y * sh,
            y: p.x * sh + p.y * ch,
            z: self.c1 * p.x + self.c2 * p.y + p.z,
        }
    }
}

/// Hyperbolic rotation of `p` about the z-axis by angle `v`.
pub fn rotate_z(v: f64, p: PiVec3) -> PiVec3 {
    PiMotion::rotation(v).apply(p)
}

/// Failures of the angle operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AngleError {
    /// An argument does not have the causal character the formula needs.
    /// Isotropic and light-like vectors are rejected by every angle
    /// operation (their norms vanish or the formulas are undefined).
    #[error("angle needs {expected} arguments, got a {found} vector")]
    ArgumentCausalMismatch { expected: &'static str, found: CausalCharacter },
    /// |<p,q>| fell below |p||q| by more than the clamp width, so the
    /// acosh argument has no hyperbolic angle. For two space-like vectors
    /// this means the pair does not span a time-like subspace; for two
    /// time-like vectors it is a reverse-triangle violation. Inside the
    /// clamp width the ratio snaps to 1 and the angle to 0.
    #[error("|<p,q>| / (|p| |q|) = {ratio} < 1 beyond tolerance")]
    SpanNotTimelike { ratio: f64 },
}

fn product_ratio(p: &PiVec3, q: &PiVec3) -> f64 {
    p.scalar_product(q).abs() / (p.norm() * q.norm())
}

fn acosh_clamped(ratio: f64) -> Result<f64, AngleError> {
    if ratio >= 1.0 {
        Ok(ratio.acosh())
    } else if ratio >= 1.0 - tol::ACOSH_CLAMP {
        Ok(0.0)
    } else {
        Err(AngleError::SpanNotTimelike { ratio })
    }
}

fn require(p: &PiVec3, wanted: CausalCharacter, expected: &'static str) -> Result<(), AngleError> {
    let found = p.causal_character();
    if found == wanted {
        Ok(())
    } else {
        Err(AngleError::ArgumentCausalMismatch { expected, found })
    }
}

/// Hyperbolic angle between two space-like vectors,
/// acosh(|<p,q>| / (|p||q|)).
///
/// Defined when the two vectors span a time-like subspace, which on the
/// top-view plane holds automatically: the identity
/// <p,q>^2 - <p,p><q,q> = (x_p y_q - y_p x_q)^2 keeps the ratio >= 1, so
/// only rounding can push it below (handled by the clamp).
pub fn angle_ss(p: &PiVec3, q: &PiVec3) -> Result<f64, AngleError> {
    require(p, CausalCharacter::Spacelike, "space-like")?;
    require(q, CausalCharacter::Spacelike, "space-like")?;
    acosh_clamped(product_ratio(p, q))
}

/// Hyperbolic angle between a space-like and a time-like vector,
/// asinh(|<p,q>| / (|p||q|)). Order-insensitive.
pub fn angle_st(p: &PiVec3, q: &PiVec3) -> Result<f64, AngleError> {
    let (cp, cq) = (p.causal_character(), q.causal_character());
    match (cp, cq) {
        (CausalCharacter::Spacelike, CausalCharacter::Timelike)
        | (CausalCharacter::Timelike, CausalCharacter::Spacelike) => {
            Ok(product_ratio(p, q).asinh())
        }
        _ => {
            let found = if cp == CausalCharacter::Spacelike || cp == CausalCharacter::Timelike {
                cq
            } else {
                cp
            };
            Err(AngleError::ArgumentCausalMismatch {
                expected: "one space-like and one time-like",
                found,
            })
        }
    }
}

/// Hyperbolic angle between two time-like vectors,
/// acosh(|<p,q>| / (|p||q|)).
///
/// The absolute value makes the formula total over both time cones; with
/// this signature <p,q> is negative for same-cone pairs, so without it
/// the acosh argument would be negative.
pub fn angle_tt(p: &PiVec3, q: &PiVec3) -> Result<f64, AngleError> {
    require(p, CausalCharacter::Timelike, "time-like")?;
    require(q, CausalCharacter::Timelike, "time-like")?;
    acosh_clamped(product_ratio(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> PiVec3 {
        PiVec3::new(x, y, z)
    }

    #[test]
    fn scalar_product_branches() {
        assert_eq!(v(0.0, 0.0, 3.0).scalar_product(&v(0.0, 0.0, 2.0)), 6.0);
        assert_eq!(v(2.0, 1.0, 9.0).scalar_product(&v(3.0, 4.0, -5.0)), 2.0);
        // one isotropic argument falls into the top-view branch and gives 0
        assert_eq!(v(0.0, 0.0, 7.0).scalar_product(&v(1.0, 0.0, 0.0)), 0.0);
    }

    #[test]
    fn causal_classification() {
        assert_eq!(v(1.0, 0.0, 0.0).causal_character(), CausalCharacter::Spacelike);
        assert_eq!(v(0.0, 1.0, 5.0).causal_character(), CausalCharacter::Timelike);
        assert_eq!(v(1.0, 1.0, 3.0).causal_character(), CausalCharacter::Lightlike);
        assert_eq!(v(0.0, 0.0, 4.0).causal_character(), CausalCharacter::Isotropic);
        assert_eq!(PiVec3::ZERO.causal_character(), CausalCharacter::Isotropic);
    }

    #[test]
    fn norms() {
        assert_eq!(v(0.0, 1.0, 0.0).norm(), 1.0);
        assert_eq!(v(1.0, 1.0, 3.0).norm(), 0.0);
        assert_eq!(v(0.0, 0.0, -4.0).norm(), 4.0);
        assert_eq!(PiVec3::ZERO.norm(), 0.0);
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn constructor_rejects_nan() {
        let _ = PiVec3::new(f64::NAN, 0.0, 0.0);
    }

    #[test]
    fn angle_ss_examples() {
        let p = v(1.0, 0.0, 0.0);
        let boosted = v(1.0_f64.cosh(), 1.0_f64.sinh(), 0.0);
        assert!((angle_ss(&p, &boosted).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(angle_ss(&p, &p).unwrap(), 0.0);
        // z-component invisible to the top-view branch
        let q = v(2.0_f64.cosh(), 2.0_f64.sinh(), 7.0);
        assert!((angle_ss(&p, &q).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn angle_ss_rejects_wrong_characters() {
        let s = v(1.0, 0.0, 0.0);
        let t = v(0.0, 1.0, 0.0);
        let l = v(1.0, 1.0, 0.0);
        let i = v(0.0, 0.0, 2.0);
        assert!(matches!(
            angle_ss(&s, &t),
            Err(AngleError::ArgumentCausalMismatch { found: CausalCharacter::Timelike, .. })
        ));
        assert!(angle_ss(&l, &s).is_err());
        assert!(angle_ss(&i, &s).is_err());
        assert!(angle_ss(&PiVec3::ZERO, &s).is_err());
    }

    #[test]
    fn angle_st_examples() {
        let p = v(1.0, 0.0, 0.0);
        assert_eq!(angle_st(&p, &v(0.0, 1.0, 0.0)).unwrap(), 0.0);
        let q = v(1.0_f64.sinh(), 1.0_f64.cosh(), 0.0);
        assert!((angle_st(&p, &q).unwrap() - 1.0).abs() < 1e-15);
        // scale invariance of the ratio
        assert!((angle_st(&v(2.0, 0.0, 0.0), &q).unwrap() - 1.0).abs() < 1e-15);
        // order-insensitive
        assert_eq!(angle_st(&q, &p).unwrap(), angle_st(&p, &q).unwrap());
        assert!(angle_st(&p, &p).is_err());
    }

    #[test]
    fn angle_tt_examples() {
        let e = v(0.0, 1.0, 0.0);
        assert_eq!(angle_tt(&e, &e).unwrap(), 0.0);
        let b1 = v(1.0_f64.sinh(), 1.0_f64.cosh(), 0.0);
        assert!((angle_tt(&e, &b1).unwrap() - 1.0).abs() < 1e-15);
        let b3 = v(3.0_f64.sinh(), 3.0_f64.cosh(), 0.0);
        // |<b1,b3>| = cosh(3 - 1) by the hyperbolic difference identity
        let prod = b1.scalar_product(&b3).abs();
        assert!((prod - 2.0_f64.cosh()).abs() < 1e-13);
        assert!((angle_tt(&b1, &b3).unwrap() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn acosh_clamp_window() {
        assert_eq!(acosh_clamped(1.0 - 5e-13).unwrap(), 0.0);
        assert!(matches!(
            acosh_clamped(1.0 - 1e-9),
            Err(AngleError::SpanNotTimelike { .. })
        ));
    }

    #[test]
    fn motions() {
        let p = v(1.0, 2.0, 3.0);
        assert_eq!(PiMotion::IDENTITY.apply(p), p);

        let r = PiMotion::rotation(0.7).apply(v(1.0, 0.0, 0.0));
        assert_eq!(r, v(0.7_f64.cosh(), 0.7_f64.sinh(), 0.0));

        let shear = PiMotion { c1: 1.0, ..PiMotion::IDENTITY };
        assert_eq!(shear.apply(v(1.0, 0.0, 0.0)), v(1.0, 0.0, 1.0));
    }

    #[test]
    fn rotation_fixes_the_axis() {
        assert_eq!(rotate_z(0.0, v(1.0, 2.0, 3.0)), v(1.0, 2.0, 3.0));
        assert_eq!(rotate_z(1.3, v(0.0, 0.0, 5.0)), v(0.0, 0.0, 5.0));
        assert_eq!(rotate_z(1.0, v(1.0, 0.0, 0.0)), v(1.0_f64.cosh(), 1.0_f64.sinh(), 0.0));
    }

    #[test]
    fn top_view_examples() {
        assert_eq!(v(1.0, 2.0, 3.0).top_view(), v(1.0, 2.0, 0.0));
        assert_eq!(v(0.0, 0.0, 5.0).top_view(), PiVec3::ZERO);
        let p = v(0.3, -0.4, 9.0).top_view();
        assert_eq!(p.top_view(), p);
    }

    #[test]
    fn boost_additivity() {
        // distinct boosts: at coincidence acosh amplifies rounding to
        // sqrt(eps) and the angle is only ~1e-8 accurate
        let boost = |a: f64| v(a.cosh(), a.sinh(), 0.0);
        for (a, b) in [(0.3, 1.7), (2.0, 0.1), (1.0, 1.5), (0.0, 2.5)] {
            let got = angle_ss(&boost(a), &boost(b)).unwrap();
            assert!(
                (got - (a - b).abs()).abs() <= crate::tol::BOOST_ADDITIVITY,
                "boosts {a}, {b}: angle {got}"
            );
        }
    }

    #[test]
    fn linear_part_preserves_products_and_characters() {
        let motions = [
            PiMotion { v: 0.9, c1: -1.2, c2: 0.4, a: 3.0, b: -1.0, c: 2.0 },
            PiMotion { v: -1.5, c1: 0.0, c2: 2.0, a: 0.0, b: 0.0, c: -7.0 },
        ];
        let vectors = [
            v(1.0, 0.2, -3.0),
            v(0.5, 1.5, 0.0),
            v(1.0, 1.0, 2.0),   // light-like
            v(0.0, 0.0, 4.0),   // isotropic
            PiVec3::ZERO,
        ];
        for m in &motions {
            for p in &vectors {
                for q in &vectors {
                    let (ip, iq) = (m.apply_linear(*p), m.apply_linear(*q));
                    let before = p.scalar_product(q);
                    let after = ip.scalar_product(&iq);
                    let scale = before.abs().max(1.0);
                    assert!(
                        (after - before).abs() <= crate::tol::MOTION_REL * scale,
                        "{m:?} on {p}, {q}: {before} -> {after}"
                    );
                    assert_eq!(ip.causal_character(), p.causal_character());
                }
            }
        }
    }
}
