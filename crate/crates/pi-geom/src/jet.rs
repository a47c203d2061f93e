//! Second-order forward-mode dual numbers.
//!
//! A [`Jet2`] carries a value together with its first and second
//! derivative with respect to a single scalar parameter. Arithmetic and
//! the elementary functions propagate both derivatives through the chain
//! rule, so profile functions and closed-form curve coordinates get exact
//! (to rounding) derivatives without finite differences.
//!
//! The operations here are total floating-point maps; NaN/infinity from
//! domain violations propagate and are caught by the callers that own the
//! domain checks (see `expr::eval_jet2`).

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value, first and second derivative of a scalar function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet2 {
    /// A constant: derivatives vanish.
    pub fn constant(c: f64) -> Jet2 {
        Jet2 { value: c, d1: 0.0, d2: 0.0 }
    }

    /// The evaluation variable itself: derivative 1, curvature 0.
    pub fn variable(u: f64) -> Jet2 {
        Jet2 { value: u, d1: 1.0, d2: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    /// Applies a scalar function given its value and first two
    /// derivatives at `self.value`.
    fn chain(self, g: f64, dg: f64, ddg: f64) -> Jet2 {
        Jet2 {
            value: g,
            d1: dg * self.d1,
            d2: ddg * self.d1 * self.d1 + dg * self.d2,
        }
    }

    pub fn sin(self) -> Jet2 {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Jet2 {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn exp(self) -> Jet2 {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Jet2 {
        let v = self.value;
        self.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
    }

    /// ln|x|; same derivatives as ln on either side of 0.
    pub fn ln_abs(self) -> Jet2 {
        let v = self.value;
        self.chain(v.abs().ln(), 1.0 / v, -1.0 / (v * v))
    }

    pub fn sinh(self) -> Jet2 {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(self) -> Jet2 {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(c, s, c)
    }

    pub fn tanh(self) -> Jet2 {
        let t = self.value.tanh();
        let sech2 = 1.0 - t * t;
        self.chain(t, sech2, -2.0 * t * sech2)
    }

    pub fn sqrt(self) -> Jet2 {
        let r = self.value.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * r * r))
    }

    /// |x|; not differentiable at 0, where the derivatives come out NaN.
    pub fn abs(self) -> Jet2 {
        let s = if self.value > 0.0 {
            1.0
        } else if self.value < 0.0 {
            -1.0
        } else {
            f64::NAN
        };
        self.chain(self.value.abs(), s, 0.0)
    }

    /// x^c for a constant exponent, via the power rule. Negative bases
    /// work for integral exponents exactly as `f64::powf` defines them.
    pub fn powf(self, c: f64) -> Jet2 {
        if c == 0.0 {
            return Jet2::constant(1.0);
        }
        if c == 1.0 {
            return self;
        }
        let v = self.value;
        let dg = c * v.powf(c - 1.0);
        let ddg = c * (c - 1.0) * v.powf(c - 2.0);
        self.chain(v.powf(c), dg, ddg)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2 { value: self.value + rhs.value, d1: self.d1 + rhs.d1, d2: self.d2 + rhs.d2 }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2 { value: self.value - rhs.value, d1: self.d1 - rhs.d1, d2: self.d2 - rhs.d2 }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value * rhs.value,
            d1: self.d1 * rhs.value + self.value * rhs.d1,
            d2: self.d2 * rhs.value + 2.0 * self.d1 * rhs.d1 + self.value * rhs.d2,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, rhs: Jet2) -> Jet2 {
        let inv = 1.0 / rhs.value;
        let value = self.value * inv;
        // (f/g)' = (f' - (f/g) g') / g, and once more for the curvature
        let d1 = (self.d1 - value * rhs.d1) * inv;
        let d2 = (self.d2 - 2.0 * d1 * rhs.d1 - value * rhs.d2) * inv;
        Jet2 { value, d1, d2 }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 { value: -self.value, d1: -self.d1, d2: -self.d2 }
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: f64) -> Jet2 {
        Jet2 { value: self.value + rhs, ..self }
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: f64) -> Jet2 {
        Jet2 { value: self.value - rhs, ..self }
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, s: f64) -> Jet2 {
        Jet2 { value: self.value * s, d1: self.d1 * s, d2: self.d2 * s }
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    fn mul(self, j: Jet2) -> Jet2 {
        j * self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn variable_and_constant_seeds() {
        let u = Jet2::variable(2.0);
        assert_eq!(u, Jet2 { value: 2.0, d1: 1.0, d2: 0.0 });
        let c = Jet2::constant(5.0);
        assert_eq!((u * c).d1, 5.0);
    }

    #[test]
    fn quotient_rule() {
        // d/du (1 / u) = -1/u^2, d2 = 2/u^3
        let u = Jet2::variable(2.0);
        let q = Jet2::constant(1.0) / u;
        assert!(close(q.value, 0.5, 1e-15));
        assert!(close(q.d1, -0.25, 1e-15));
        assert!(close(q.d2, 0.25, 1e-15));
    }

    #[test]
    fn ln_abs_negative_side() {
        let u = Jet2::variable(-2.0);
        let l = u.ln_abs();
        assert!(close(l.value, 2.0_f64.ln(), 1e-15));
        assert!(close(l.d1, -0.5, 1e-15));
        assert!(close(l.d2, -0.25, 1e-15));
    }

    #[test]
    fn powf_linear_edge_at_zero() {
        // x^1 at x = 0 must not produce NaN from 0 * 0^{-1}
        let j = Jet2::variable(0.0).powf(1.0);
        assert_eq!(j, Jet2::variable(0.0));
        let sq = Jet2::variable(0.0).powf(2.0);
        assert_eq!((sq.value, sq.d1, sq.d2), (0.0, 0.0, 2.0));
    }

    #[test]
    fn composite_against_hand_derivatives() {
        // f(u) = u^2 sinh(u): f' = 2u sinh + u^2 cosh,
        // f'' = 2 sinh + 4u cosh + u^2 sinh
        let at = 0.7_f64;
        let u = Jet2::variable(at);
        let f = u * u * u.sinh();
        assert!(close(f.value, at * at * at.sinh(), 1e-14));
        assert!(close(f.d1, 2.0 * at * at.sinh() + at * at * at.cosh(), 1e-14));
        assert!(close(f.d2, 2.0 * at.sinh() + 4.0 * at * at.cosh() + at * at * at.sinh(), 1e-14));
    }

    #[test]
    fn abs_is_undefined_at_zero() {
        assert!(!Jet2::variable(0.0).abs().is_finite());
        assert_eq!(Jet2::variable(-3.0).abs().d1, -1.0);
    }
}
